//! Distance rationalized rules: the score of each outcome is the distance
//! from the election to the consensus cell of that outcome, and the rule
//! returns every outcome of minimum score.

mod brute;
mod condorcet;
mod tournament;
mod vmp;
mod voters;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::consensus::ConsensusSpec;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::{ElectionDistance, Norm, RankingMetric};
use crate::ranking::{Candidate, Ranking};
use crate::rule::{Outcome, Rule};
use crate::score::Score;

pub use brute::brute_force_score;
pub use condorcet::{condorcet_votewise_score, dodgson_score, vrr_score};
pub use tournament::tournament_cell_score;
pub use vmp::vmp_minimizer;
pub use voters::{maximin_score_via_insertion, young_score};

/// Limits for exhaustive minimization.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Voters that may be added when searching over super-elections; `None`
    /// means twice the voter count.
    pub extra_voters: Option<usize>,
    /// Hard cap on enumerated candidate elections.
    pub max_nodes: u64,
    /// Explicit search space; required for distances without a natural one.
    pub space: Option<Arc<Vec<Election>>>,
    /// Prune every branch whose partial distance exceeds this value.
    pub upper: Option<Score>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { extra_voters: None, max_nodes: 20_000_000, space: None, upper: None }
    }
}

#[derive(Clone, Debug)]
pub enum Strategy {
    Auto,
    VmpClosedForm,
    BruteForce(Bounds),
    Specialized,
}

/// Which computation produced a score.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    VmpClosedForm,
    MajoritySelection,
    CondorcetSearch,
    TournamentScan,
    InsertionCount,
    DeletionCount,
    YoungSearch,
    BruteForce { minimizers: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ScoreEntry {
    pub outcome: Ranking,
    pub score: Score,
    pub provenance: Provenance,
    pub witness: Option<Election>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScoreTable {
    pub entries: Vec<ScoreEntry>,
}

impl ScoreTable {
    pub fn get(&self, r: &Ranking) -> Option<&ScoreEntry> {
        self.entries.iter().find(|e| e.outcome == *r)
    }

    pub fn min_score(&self) -> Option<Score> {
        self.entries.iter().map(|e| e.score).min()
    }

    /// All outcomes of minimum score; an error if every score is infinite.
    pub fn winners(&self) -> Result<Outcome> {
        let best = self.min_score().ok_or(Error::AllInfinite)?;
        if !best.is_finite() {
            return Err(Error::AllInfinite);
        }
        Ok(self.entries.iter().filter(|e| e.score.ties_with(&best)).map(|e| e.outcome).collect())
    }
}

/// The cell-specific computation chosen for a (consensus, distance) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Plan {
    Vmp,
    Majority,
    Condorcet,
    Tournament,
    Insertion,
    Deletion,
    Young,
    Brute,
}

#[derive(Clone)]
pub struct DrRule {
    pub consensus: ConsensusSpec,
    pub distance: ElectionDistance,
    pub strategy: Strategy,
}

impl fmt::Debug for DrRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn integer_or_inf(norm: &Norm) -> bool {
    norm.integer_p().is_some() || *norm == Norm::Linf
}

impl DrRule {
    pub fn new(consensus: ConsensusSpec, distance: ElectionDistance) -> Self {
        DrRule { consensus, distance, strategy: Strategy::Auto }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    fn specialized_plan(&self) -> Option<Plan> {
        use ConsensusSpec as K;
        use ElectionDistance as D;
        match (&self.distance, &self.consensus) {
            (D::Votewise { .. }, K::QualifiedMajority { .. }) => Some(Plan::Majority),
            (D::Votewise { metric, norm, .. }, K::Condorcet { .. }) if integer_or_inf(norm) && condorcet::supports(metric) => {
                Some(Plan::Condorcet)
            }
            (D::Tournament { .. }, k) if k.is_anonymous() => Some(Plan::Tournament),
            (D::Insertion, K::Unanimity { .. } | K::QualifiedMajority { .. } | K::Condorcet { .. } | K::FixedExtension { .. }) => {
                Some(Plan::Insertion)
            }
            (D::Deletion, K::Unanimity { .. } | K::QualifiedMajority { .. } | K::FixedExtension { .. }) => Some(Plan::Deletion),
            (D::Deletion, K::Condorcet { .. }) => Some(Plan::Young),
            _ => None,
        }
    }

    fn vmp_applies(&self) -> bool {
        self.distance.is_votewise() && self.consensus.is_forbidden_set()
    }

    fn plan(&self) -> Result<(Plan, Bounds)> {
        let not_applicable = |s: &str| Error::StrategyNotApplicable {
            strategy: s.into(),
            cell: format!("({}, {})", self.consensus.name(), self.distance.name()),
        };
        match &self.strategy {
            Strategy::VmpClosedForm => {
                if self.vmp_applies() {
                    Ok((Plan::Vmp, Bounds::default()))
                } else {
                    Err(not_applicable("vmp"))
                }
            }
            Strategy::Specialized => {
                self.specialized_plan().map(|p| (p, Bounds::default())).ok_or_else(|| not_applicable("specialized"))
            }
            Strategy::BruteForce(b) => Ok((Plan::Brute, b.clone())),
            Strategy::Auto => {
                if self.vmp_applies() {
                    Ok((Plan::Vmp, Bounds::default()))
                } else {
                    Ok((self.specialized_plan().unwrap_or(Plan::Brute), Bounds::default()))
                }
            }
        }
    }

    /// Distance from `e` to the consensus cell of `r`, with a minimizer.
    pub fn score(&self, e: &Election, r: &Ranking) -> Result<ScoreEntry> {
        self.consensus.validate(e.m())?;
        if r.len() != self.consensus.output_size(e.m()) || !r.as_slice().iter().all(|c| e.candidates().contains(c)) {
            return Err(Error::InvalidParameter(format!("{r:?} is not an outcome for this election")));
        }
        let (plan, bounds) = self.plan()?;
        let (score, witness, provenance) = match plan {
            Plan::Vmp => {
                let (s, w) = vmp::score(&self.consensus, &self.distance, e, r)?;
                (s, w, Provenance::VmpClosedForm)
            }
            Plan::Majority => {
                let (s, w) = vmp::majority_score(&self.consensus, &self.distance, e, r)?;
                (s, w, Provenance::MajoritySelection)
            }
            Plan::Condorcet => {
                let (s, w) = condorcet::score(&self.consensus, &self.distance, e, r)?;
                (s, w, Provenance::CondorcetSearch)
            }
            Plan::Tournament => {
                let reduced = matches!(self.distance, ElectionDistance::Tournament { reduced: true });
                let (s, w) = tournament::score(&self.consensus, reduced, e, r)?;
                (s, w, Provenance::TournamentScan)
            }
            Plan::Insertion => {
                let (s, w) = voters::insertion_score(&self.consensus, e, r)?;
                (s, w, Provenance::InsertionCount)
            }
            Plan::Deletion => {
                let (s, w) = voters::deletion_score(&self.consensus, e, r)?;
                (s, w, Provenance::DeletionCount)
            }
            Plan::Young => {
                let (s, w) = voters::young(&self.consensus, e, r)?;
                (s, w, Provenance::YoungSearch)
            }
            Plan::Brute => {
                let res = brute::search(&self.consensus, &self.distance, e, r, &bounds)?;
                (res.score, res.witness, Provenance::BruteForce { minimizers: res.minimizers })
            }
        };
        Ok(ScoreEntry { outcome: *r, score, provenance, witness })
    }

    pub fn table(&self, e: &Election) -> Result<ScoreTable> {
        let entries = self
            .consensus
            .outcomes(e.candidates())
            .iter()
            .map(|r| self.score(e, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScoreTable { entries })
    }

    pub fn winners(&self, e: &Election) -> Result<Outcome> {
        self.table(e)?.winners()
    }

    /// For a 1-consensus: every s-ranking obtained by listing candidates in
    /// nondecreasing score, over all orderings of ties.
    pub fn ranked_output(&self, e: &Election, s: usize) -> Result<BTreeSet<Ranking>> {
        if self.consensus.output_size(e.m()) != 1 {
            return Err(Error::InvalidParameter("ranked output needs a 1-consensus".into()));
        }
        if s == 0 || s > e.m() {
            return Err(Error::InvalidParameter(format!("s = {s} outside 1..={}", e.m())));
        }
        let table = self.table(e)?;
        if !table.min_score().map(|x| x.is_finite()).unwrap_or(false) {
            return Err(Error::AllInfinite);
        }
        let scored: Vec<(Candidate, Score)> =
            table.entries.iter().map(|x| (x.outcome.top().expect("singleton"), x.score)).collect();
        let mut out = BTreeSet::new();
        let mut prefix = Vec::new();
        extend_orderings(&scored, s, &mut prefix, &mut out);
        Ok(out)
    }
}

fn extend_orderings(scored: &[(Candidate, Score)], s: usize, prefix: &mut Vec<Candidate>, out: &mut BTreeSet<Ranking>) {
    if prefix.len() == s {
        out.insert(Ranking::new(prefix).expect("distinct"));
        return;
    }
    let rest: Vec<&(Candidate, Score)> = scored.iter().filter(|(c, _)| !prefix.contains(c)).collect();
    let best = rest.iter().map(|(_, x)| *x).min().expect("nonempty");
    for (c, x) in rest {
        if x.ties_with(&best) {
            prefix.push(*c);
            extend_orderings(scored, s, prefix, out);
            prefix.pop();
        }
    }
}

impl Rule for DrRule {
    fn name(&self) -> String {
        format!("R({}, {})", self.consensus.name(), self.distance.name())
    }

    fn output_size(&self, m: usize) -> usize {
        self.consensus.output_size(m)
    }

    fn apply(&self, e: &Election) -> Result<Outcome> {
        self.winners(e)
    }
}

/// Votewise parameters, or an error naming the strategy.
pub(crate) fn votewise_parts(d: &ElectionDistance) -> Option<(&RankingMetric, &Norm, bool)> {
    match d {
        ElectionDistance::Votewise { metric, norm, normalized } => Some((metric, norm, *normalized)),
        _ => None,
    }
}
