use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("candidate {0} is not ranked")]
    CandidateNotInRanking(u8),
    #[error("candidate id {0} out of range")]
    CandidateOutOfRange(u8),
    #[error("{0} candidates exceeds the supported maximum")]
    TooManyCandidates(usize),
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("invalid election: {0}")]
    InvalidElection(String),
    #[error("elections are over different candidate sets")]
    MismatchedCandidates,
    #[error("empty voting situation")]
    EmptySituation,
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("relabeling is not a bijection on the candidate set")]
    NotABijection,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("weights must be non-increasing with w1 > wm, got {0:?}")]
    MalformedWeights(Vec<i64>),
    #[error("consensus has no forbidden-set form")]
    NotForbiddenSet,
    #[error("strategy {strategy} does not apply to {cell}")]
    StrategyNotApplicable { strategy: String, cell: String },
    #[error("search bound exceeded: {0}")]
    BoundsExceeded(String),
    #[error("every outcome has infinite score")]
    AllInfinite,
    #[error("no path between the two elections inside the supplied space")]
    Disconnected,
    #[error("this distance needs an explicit election space")]
    SpaceRequired,
    #[error("axiom does not apply: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
