//! Distance rationalization of voting rules: consensus classes, election
//! distances, the rules they induce, classical rules to compare against,
//! and checkers for the usual axioms.

pub mod axioms;
pub mod consensus;
pub mod election;
pub mod engine;
pub mod error;
pub mod metrics;
pub mod oracles;
pub mod ranking;
pub mod rule;
pub mod score;
pub mod transport;

pub use consensus::{ConsensusSpec, Size};
pub use election::{Election, VoterId, VotingSituation};
pub use engine::{Bounds, DrRule, ScoreTable, Strategy};
pub use error::{Error, Result};
pub use metrics::{ElectionDistance, Norm, RankingMetric};
pub use ranking::{Candidate, CandidateNames, Ranking};
pub use rule::{Outcome, Rule, RuleHandle};
pub use score::Score;
