//! The grand check: each (consensus, distance) cell against the classical
//! rule it is known to produce.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::consensus::ConsensusSpec;
use crate::election::{enumerate_up_to, seeded_situations, Election, EnumBounds};
use crate::engine::DrRule;
use crate::error::{Error, Result};
use crate::metrics::{ElectionDistance, Norm, RankingMetric};
use crate::oracles::{scoring_scores, Oracle};
use crate::ranking::{candidates, Ranking};
use crate::rule::{tops, Outcome, Rule};
use crate::score::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Compare {
    /// Winner sets of two single-winner rules.
    Winners,
    /// Sets of output rankings.
    Rankings,
    /// Top candidates of the output rankings against a winner set.
    Tops,
    /// The cell is expected to be trivial: some election is infinitely far
    /// from every consensus election.
    Trivial,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub consensus: ConsensusSpec,
    pub distance: ElectionDistance,
    /// Several oracles when a convention is open (the Copeland tie value).
    pub oracles: Vec<Oracle>,
    pub compare: Compare,
}

impl Cell {
    pub fn label(&self) -> String {
        format!("({}, {})", self.consensus.name(), self.distance.name())
    }
}

pub fn table_cells() -> Vec<Cell> {
    use ConsensusSpec as K;
    let copeland = vec![Oracle::Copeland(Ratio::new(0, 1)), Oracle::Copeland(Ratio::new(1, 2))];
    let t = ElectionDistance::Tournament { reduced: false };
    let rt = ElectionDistance::Tournament { reduced: true };
    let cell = |consensus: K, distance: &ElectionDistance, oracles: Vec<Oracle>, compare| Cell {
        consensus,
        distance: distance.clone(),
        oracles,
        compare,
    };
    use Compare::*;
    vec![
        cell(K::sunam(), &ElectionDistance::kendall(), vec![Oracle::Kemeny], Rankings),
        cell(K::wunam(), &ElectionDistance::kendall(), vec![Oracle::Borda], Winners),
        cell(K::cond(), &ElectionDistance::kendall(), vec![Oracle::Dodgson], Winners),
        cell(K::sunam(), &ElectionDistance::hamming(), vec![Oracle::Modal], Rankings),
        cell(K::wunam(), &ElectionDistance::hamming(), vec![Oracle::Plurality], Winners),
        cell(K::cond(), &ElectionDistance::hamming(), vec![Oracle::Vrr], Winners),
        cell(K::sunam(), &ElectionDistance::spearman(), vec![Oracle::Litvak], Rankings),
        cell(K::wunam(), &ElectionDistance::spearman(), vec![Oracle::Borda], Winners),
        cell(K::cond(), &ElectionDistance::spearman(), vec![Oracle::Dodgson], Winners),
        cell(K::sunam(), &t, vec![Oracle::Kemeny], Rankings),
        cell(K::wunam(), &t, vec![Oracle::Borda], Winners),
        cell(K::cond(), &t, vec![Oracle::Maximin], Winners),
        cell(K::sunam(), &rt, copeland.clone(), Tops),
        cell(K::wunam(), &rt, copeland.clone(), Winners),
        cell(K::cond(), &rt, copeland, Winners),
        cell(K::cond_m(), &rt, vec![Oracle::Slater], Rankings),
        cell(K::sunam(), &ElectionDistance::Insertion, vec![], Trivial),
        cell(K::wunam(), &ElectionDistance::Insertion, vec![], Trivial),
        cell(K::cond(), &ElectionDistance::Insertion, vec![Oracle::Maximin], Winners),
        cell(K::sunam(), &ElectionDistance::Deletion, vec![Oracle::Modal], Rankings),
        cell(K::wunam(), &ElectionDistance::Deletion, vec![Oracle::Plurality], Winners),
        cell(K::cond(), &ElectionDistance::Deletion, vec![Oracle::Young], Winners),
    ]
}

/// Election space for the check: all situations with `m` candidates and
/// 1..=`n` voters, plus `random` seeded situations with `random_m`
/// candidates and `random_n` voters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableBound {
    pub m: usize,
    pub n: usize,
    pub random: usize,
    pub random_m: usize,
    pub random_n: usize,
    pub seed: u64,
}

impl Default for TableBound {
    fn default() -> Self {
        TableBound { m: 3, n: 4, random: 200, random_m: 4, random_n: 4, seed: 0 }
    }
}

impl FromStr for TableBound {
    type Err = Error;

    /// Accepts `m<M>n<N>`, e.g. `m3n4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bound '{s}' is not of the form m<M>n<N>"));
        let rest = s.strip_prefix('m').ok_or_else(bad)?;
        let (m, n) = rest.split_once('n').ok_or_else(bad)?;
        let m: usize = m.parse().map_err(|_| bad())?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if !(2..=5).contains(&m) || n == 0 {
            return Err(bad());
        }
        Ok(TableBound { m, n, ..TableBound::default() })
    }
}

impl fmt::Display for TableBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}n{}", self.m, self.n)
    }
}

impl TableBound {
    pub fn space(&self) -> Result<Vec<Election>> {
        let eb = EnumBounds { max_candidates: self.m, max_voters: self.n };
        let mut out: Vec<Election> = enumerate_up_to(&candidates(self.m), self.n, eb)?.iter().map(|x| x.to_election()).collect();
        let sampled = seeded_situations(&candidates(self.random_m), self.random_n, self.random, self.seed)?;
        out.extend(sampled.iter().map(|x| x.to_election()));
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub election: Election,
    pub oracle: String,
    /// `None` when every outcome is infinitely far.
    pub dr: Option<Outcome>,
    pub expected: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub cell: String,
    pub oracles: Vec<String>,
    pub compare: Compare,
    pub checked: usize,
    /// Elections where every outcome is infinitely far.
    pub infinite_everywhere: usize,
    /// Oracles agreeing on every election.
    pub matching: Vec<String>,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl CellReport {
    pub fn passes(&self) -> bool {
        match self.compare {
            Compare::Trivial => self.infinite_everywhere > 0,
            _ => !self.matching.is_empty() && self.infinite_everywhere == 0,
        }
    }

    pub fn status(&self) -> &'static str {
        match (self.compare, self.passes()) {
            (Compare::Trivial, true) => "trivial",
            (Compare::Trivial, false) => "not-trivial",
            (_, true) => "match",
            (_, false) => "mismatch",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub bound: TableBound,
    pub elections: usize,
    pub cells: Vec<CellReport>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(CellReport::passes)
    }
}

fn agrees(compare: Compare, dr: &Outcome, oracle: &Outcome) -> bool {
    match compare {
        Compare::Winners | Compare::Rankings => dr == oracle,
        Compare::Tops => tops(dr) == tops(oracle),
        Compare::Trivial => true,
    }
}

pub fn check_cell(cell: &Cell, space: &[Election]) -> Result<CellReport> {
    let rule = DrRule::new(cell.consensus.clone(), cell.distance.clone());
    let rows: Vec<Result<(Option<Outcome>, Vec<Outcome>)>> = space
        .par_iter()
        .map(|e| {
            let dr = match rule.winners(e) {
                Ok(o) => Some(o),
                Err(Error::AllInfinite) => None,
                Err(x) => return Err(x),
            };
            let expected = cell.oracles.iter().map(|o| o.apply(e)).collect::<Result<Vec<_>>>()?;
            Ok((dr, expected))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let infinite_everywhere = rows.iter().filter(|r| r.0.is_none()).count();
    let mut matching = Vec::new();
    let mut mismatches = 0;
    let mut first_mismatch = None;
    for (j, oracle) in cell.oracles.iter().enumerate() {
        let bad: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].0.as_ref().map(|dr| !agrees(cell.compare, dr, &rows[i].1[j])).unwrap_or(true))
            .collect();
        if bad.is_empty() {
            matching.push(oracle.to_string());
        }
        // report against the last convention, which is the conventional one
        if j + 1 == cell.oracles.len() {
            mismatches = bad.len();
            first_mismatch = bad.first().map(|&i| Mismatch {
                election: space[i].clone(),
                oracle: oracle.to_string(),
                dr: rows[i].0.clone(),
                expected: rows[i].1[j].clone(),
            });
        }
    }
    Ok(CellReport {
        cell: cell.label(),
        oracles: cell.oracles.iter().map(|o| o.to_string()).collect(),
        compare: cell.compare,
        checked: space.len(),
        infinite_everywhere,
        matching,
        mismatches,
        first_mismatch,
    })
}

pub fn verify_table(bound: &TableBound) -> Result<TableReport> {
    let space = bound.space()?;
    let cells = table_cells().iter().map(|c| check_cell(c, &space)).collect::<Result<Vec<_>>>()?;
    Ok(TableReport { bound: bound.clone(), elections: space.len(), cells })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScoringCheck {
    pub weights: Vec<i64>,
    pub checked: usize,
    pub winners_agree: bool,
    /// DR score equals twice (n·w1 − scoring score) for every candidate.
    pub score_relation_holds: bool,
    pub first_failure: Option<Election>,
}

/// The scoring rule with weights `w` against R(WUNAM, d_w^1), winners and scores.
pub fn scoring_representation(w: &[i64], space: &[Election]) -> Result<ScoringCheck> {
    let rule = DrRule::new(ConsensusSpec::wunam(), ElectionDistance::votewise(RankingMetric::Weighted(w.to_vec()), Norm::l1()));
    let mut winners_agree = true;
    let mut score_relation_holds = true;
    let mut first_failure = None;
    let mut checked = 0;
    for e in space.iter().filter(|e| e.m() == w.len()) {
        checked += 1;
        let table = rule.table(e)?;
        let scores = scoring_scores(w, e)?;
        let best = scores.values().max().copied().unwrap_or(0);
        let oracle: BTreeSet<Ranking> = scores.iter().filter(|x| *x.1 == best).map(|x| Ranking::new(&[*x.0]).expect("one")).collect();
        let ok_w = table.winners()? == oracle;
        let ok_s = table.entries.iter().all(|entry| {
            let c = entry.outcome.top().expect("singleton");
            entry.score == Score::int(2 * (e.n() as i64 * w[0] - scores[&c]))
        });
        winners_agree &= ok_w;
        score_relation_holds &= ok_s;
        if (!ok_w || !ok_s) && first_failure.is_none() {
            first_failure = Some(e.clone());
        }
    }
    Ok(ScoringCheck { weights: w.to_vec(), checked, winners_agree, score_relation_holds, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_parsing() {
        let b: TableBound = "m3n4".parse().unwrap();
        assert_eq!((b.m, b.n), (3, 4));
        assert!("m3".parse::<TableBound>().is_err());
        assert_eq!(b.to_string(), "m3n4");
    }

    #[test]
    fn plurality_cell_small() {
        let bound = TableBound { n: 3, random: 0, ..TableBound::default() };
        let space = bound.space().unwrap();
        let cell = &table_cells()[4];
        assert_eq!(cell.oracles, vec![Oracle::Plurality]);
        let r = check_cell(cell, &space).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn insertion_unanimity_is_trivial() {
        let bound = TableBound { n: 2, random: 0, ..TableBound::default() };
        let space = bound.space().unwrap();
        let r = check_cell(&table_cells()[16], &space).unwrap();
        assert_eq!(r.status(), "trivial");
    }

    #[test]
    fn scoring_relation() {
        let space = TableBound { n: 3, random: 0, ..TableBound::default() }.space().unwrap();
        for w in [vec![1, 0, 0], vec![2, 1, 0], vec![1, 1, 0], vec![5, 2, 0]] {
            let r = scoring_representation(&w, &space).unwrap();
            assert!(r.winners_agree && r.score_relation_holds, "{r:?}");
        }
    }
}
