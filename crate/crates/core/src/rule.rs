//! The common interface of every voting rule: oracles, distance rationalized
//! rules and ad hoc rules used in tests.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::election::Election;
use crate::error::Result;
use crate::ranking::{Candidate, Ranking};

/// Set of winning s-rankings, canonical order. Social choice rules use s = 1.
pub type Outcome = BTreeSet<Ranking>;

pub trait Rule: Send + Sync {
    fn name(&self) -> String;

    /// Length of every output ranking for an election with `m` candidates.
    fn output_size(&self, m: usize) -> usize;

    fn apply(&self, e: &Election) -> Result<Outcome>;
}

pub type RuleHandle = Arc<dyn Rule>;

impl fmt::Debug for dyn Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name())
    }
}

/// Top candidates of an outcome.
pub fn tops(outcome: &Outcome) -> BTreeSet<Candidate> {
    outcome.iter().filter_map(|r| r.top()).collect()
}

/// Singleton rankings for a set of candidates.
pub fn as_outcome(cs: impl IntoIterator<Item = Candidate>) -> Outcome {
    cs.into_iter().map(|c| Ranking::new(&[c]).expect("single candidate")).collect()
}

type RuleFn = dyn Fn(&Election) -> Result<Outcome> + Send + Sync;

/// A rule given by a closure.
#[derive(Clone)]
pub struct FnRule {
    name: String,
    size: Option<usize>,
    f: Arc<RuleFn>,
}

impl FnRule {
    /// `size` of `None` means full rankings.
    pub fn new(
        name: impl Into<String>,
        size: Option<usize>,
        f: impl Fn(&Election) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        FnRule { name: name.into(), size, f: Arc::new(f) }
    }

    pub fn handle(self) -> RuleHandle {
        Arc::new(self)
    }
}

impl Rule for FnRule {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn output_size(&self, m: usize) -> usize {
        self.size.unwrap_or(m)
    }

    fn apply(&self, e: &Election) -> Result<Outcome> {
        (self.f)(e)
    }
}
