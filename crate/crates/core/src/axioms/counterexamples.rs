//! Known constructions where distance rationalized rules misbehave:
//! non-homogeneity of Dodgson and VRR, failure of compatible minimizers,
//! and non-uniqueness of the consensus behind a rule.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::consensus::ConsensusSpec;
use crate::election::Election;
use crate::engine::{dodgson_score, vrr_score, DrRule};
use crate::error::{Error, Result};
use crate::metrics::ElectionDistance;
use crate::ranking::{candidates, Candidate, CandidateNames, Ranking};
use crate::score::Score;

/// Candidate `x` in the Fishburn election; `a1..a7` are 0..=6.
pub const FISHBURN_X: Candidate = Candidate(7);

pub fn fishburn_names() -> CandidateNames {
    let mut v: Vec<String> = (1..=7).map(|i| format!("a{i}")).collect();
    v.push("x".into());
    CandidateNames(v)
}

/// The seven cyclic shifts of a1..a7, each with x inserted after the
/// fourth entry, every ballot cast by `k` voters.
pub fn fishburn_election(k: usize) -> Result<Election> {
    if k == 0 {
        return Err(Error::ZeroScale);
    }
    let mut ballots = Vec::new();
    for shift in 0..7u8 {
        let mut v: Vec<Candidate> = (0..7u8).map(|i| Candidate((i + shift) % 7)).collect();
        v.insert(4, FISHBURN_X);
        ballots.push(Ranking::new(&v)?);
    }
    let base = Election::from_rankings(&candidates(8), &ballots)?;
    base.scale(k)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScoreSheet {
    pub rule: String,
    pub k: usize,
    /// Candidate name, score, score divided by k.
    pub scores: Vec<(String, Score, f64)>,
    pub winners: Vec<String>,
}

impl ScoreSheet {
    pub fn score_of(&self, name: &str) -> Option<Score> {
        self.scores.iter().find(|s| s.0 == name).map(|s| s.1)
    }

    pub fn per_unit(&self, name: &str) -> Option<f64> {
        self.scores.iter().find(|s| s.0 == name).map(|s| s.2)
    }
}

fn sheet(rule: &str, k: usize, f: impl Fn(&Election, Candidate) -> Result<Score>) -> Result<ScoreSheet> {
    let e = fishburn_election(k)?;
    let names = fishburn_names();
    let scores: Vec<(Candidate, Score)> = e.candidates().iter().map(|&c| Ok((c, f(&e, c)?))).collect::<Result<_>>()?;
    let best = scores.iter().map(|s| s.1).min().expect("candidates");
    Ok(ScoreSheet {
        rule: rule.into(),
        k,
        winners: scores.iter().filter(|s| s.1 == best).map(|s| names.name(s.0)).collect(),
        scores: scores.into_iter().map(|(c, s)| (names.name(c), s, s.as_f64() / k as f64)).collect(),
    })
}

pub fn fishburn_dodgson(k: usize) -> Result<ScoreSheet> {
    sheet("dodgson", k, dodgson_score)
}

pub fn fishburn_vrr(k: usize) -> Result<ScoreSheet> {
    sheet("vrr", k, vrr_score)
}

/// Least k ≤ `k_max` at which x is the unique Dodgson winner of the scaled election.
pub fn dodgson_crossover(k_max: usize) -> Result<Option<usize>> {
    for k in 1..=k_max {
        let e = fishburn_election(k)?;
        let x = dodgson_score(&e, FISHBURN_X)?;
        let a = dodgson_score(&e, Candidate(0))?;
        // the a_i are symmetric under the cyclic shift
        if x < a {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct CmpRow {
    pub distance: String,
    pub election: String,
    pub target: String,
    pub score: Score,
}

/// E = {ab:2, ba:3}: distances from E and 3E to the Condorcet cells, under
/// Hamming and Kendall votewise distances.
pub fn cmp_failure() -> Result<Vec<CmpRow>> {
    let ab = Ranking::from_ids(&[0, 1]);
    let ba = Ranking::from_ids(&[1, 0]);
    let e = Election::from_rankings(&candidates(2), &[ab, ab, ba, ba, ba])?;
    let names = CandidateNames::default();
    let mut rows = Vec::new();
    for (label, d) in [("hamming/l1", ElectionDistance::hamming()), ("kendall/l1", ElectionDistance::kendall())] {
        let rule = DrRule::new(ConsensusSpec::cond(), d);
        for (tag, x) in [("E", e.clone()), ("3E", e.scale(3)?)] {
            for c in [Candidate(0), Candidate(1)] {
                let s = rule.score(&x, &Ranking::new(&[c])?)?.score;
                rows.push(CmpRow { distance: label.into(), election: tag.into(), target: names.name(c), score: s });
            }
        }
    }
    Ok(rows)
}

/// First-place counts of a, b, c, c'.
pub type Tops = [u32; 4];

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessRow {
    pub tops: Tops,
    pub r: Vec<String>,
    pub r_prime: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub witness: Option<UniquenessRow>,
    pub witness_election: Option<Election>,
    /// Every state where a and b share first places equally, with both rules' outputs.
    pub tied_rows: Vec<UniquenessRow>,
    pub differing_states: usize,
}

fn component(t: &Tops) -> u8 {
    if (t[2] == 0 && t[3] == 0) || t[0] == t[1] {
        0
    } else {
        1
    }
}

fn hop_distance(s: &Tops, t: &Tops) -> Option<u32> {
    (component(s) == component(t)).then(|| s.iter().zip(t).map(|(x, y)| x.abs_diff(*y)).sum::<u32>() / 2)
}

/// Argmin over choices of the distance to the cell, `cells[i]` the states with choice `i`.
fn dr_rule(states: &[Tops], cells: &[Vec<Tops>; 4]) -> Vec<BTreeSet<usize>> {
    states
        .iter()
        .map(|s| {
            let d: Vec<Option<u32>> = cells.iter().map(|cell| cell.iter().filter_map(|t| hop_distance(s, t)).min()).collect();
            let best = d.iter().flatten().min().copied();
            (0..4).filter(|&i| best.is_some() && d[i] == best).collect()
        })
        .collect()
}

/// The two-component election graph on candidates {a, b, c, c'}, worked at
/// the level of first-place counts: elections sharing first-place counts
/// are in the same component and the same cells, and the hop distance
/// between two elections of a component is the number of differing votes.
pub fn uniqueness_counterexample(n: usize) -> Result<UniquenessReport> {
    if n % 2 != 0 || !(4..=8).contains(&n) {
        return Err(Error::InvalidParameter(format!("n = {n}: need an even n in 4..=8")));
    }
    let n32 = n as u32;
    let mut states = Vec::new();
    for a in 0..=n32 {
        for b in 0..=n32 - a {
            for c in 0..=n32 - a - b {
                states.push([a, b, c, n32 - a - b - c]);
            }
        }
    }
    let mut cells: [Vec<Tops>; 4] = Default::default();
    for s in &states {
        let choice = if component(s) == 1 {
            Some(3)
        } else if s[0] == 0 && s[1] == 0 {
            Some(2)
        } else if s[2] == 0 && s[3] == 0 && s[0] != s[1] {
            Some(if s[0] > s[1] { 0 } else { 1 })
        } else {
            None
        };
        if let Some(i) = choice {
            cells[i].push(*s);
        }
    }
    let r = dr_rule(&states, &cells);
    let mut maximal: [Vec<Tops>; 4] = Default::default();
    for (s, out) in states.iter().zip(&r) {
        if out.len() == 1 {
            maximal[*out.iter().next().expect("one")].push(*s);
        }
    }
    let r_prime = dr_rule(&states, &maximal);
    let names = ["a", "b", "c", "c'"];
    let row = |i: usize| UniquenessRow {
        tops: states[i],
        r: r[i].iter().map(|&j| names[j].to_string()).collect(),
        r_prime: r_prime[i].iter().map(|&j| names[j].to_string()).collect(),
    };
    let differing: Vec<usize> = (0..states.len()).filter(|&i| r[i] != r_prime[i]).collect();
    let pick = differing.iter().copied().find(|&i| states[i][0] == states[i][1]).or(differing.first().copied());
    let witness_election = match pick {
        Some(i) => Some(tops_election(&states[i])?),
        None => None,
    };
    Ok(UniquenessReport {
        n,
        witness: pick.map(row),
        witness_election,
        tied_rows: (0..states.len()).filter(|&i| states[i][0] == states[i][1]).map(row).collect(),
        differing_states: differing.len(),
    })
}

pub fn uniqueness_names() -> CandidateNames {
    CandidateNames(["a", "b", "c", "c'"].iter().map(|s| s.to_string()).collect())
}

/// An election with the given first-place counts; each ballot lists the
/// other candidates in ascending order.
pub fn tops_election(t: &Tops) -> Result<Election> {
    let cs = candidates(4);
    let mut ballots = Vec::new();
    for (i, &k) in t.iter().enumerate() {
        let top = Ranking::new(&[Candidate(i as u8)])?;
        let full = crate::consensus::fixed_extension(&top, &cs);
        ballots.extend(std::iter::repeat(full).take(k as usize));
    }
    Election::from_rankings(&cs, &ballots)
}

/// Exact first-place counts of an election over four candidates.
pub fn tops_of(e: &Election) -> Tops {
    let mut t = [0u32; 4];
    for r in e.rankings() {
        t[r.top().expect("nonempty").index()] += 1;
    }
    t
}

/// Group outputs by the number of a-or-b first places among tied states.
pub fn tied_summary(report: &UniquenessReport) -> BTreeMap<u32, Vec<(Tops, Vec<String>, Vec<String>)>> {
    let mut out: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for row in &report.tied_rows {
        out.entry(row.tops[0] + row.tops[1]).or_default().push((row.tops, row.r.clone(), row.r_prime.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fishburn_shape() {
        let e = fishburn_election(2).unwrap();
        assert_eq!(e.n(), 14);
        assert_eq!(e.m(), 8);
        for r in e.rankings() {
            assert_eq!(r.position(FISHBURN_X), Some(4));
        }
    }

    #[test]
    fn fishburn_k1_dodgson() {
        let s = fishburn_dodgson(1).unwrap();
        assert_eq!(s.score_of("x"), Some(Score::int(7)));
        for i in 1..=7 {
            assert_eq!(s.score_of(&format!("a{i}")), Some(Score::int(6)));
        }
        assert_eq!(s.winners.len(), 7);
    }

    #[test]
    fn cmp_values() {
        let rows = cmp_failure().unwrap();
        let get = |d: &str, e: &str, t: &str| rows.iter().find(|r| r.distance == d && r.election == e && r.target == t).unwrap().score;
        for d in ["hamming/l1", "kendall/l1"] {
            assert_eq!(get(d, "E", "a"), Score::int(1));
            assert_eq!(get(d, "3E", "a"), Score::int(2));
            assert_eq!(get(d, "E", "b"), Score::zero());
        }
    }

    #[test]
    fn uniqueness_even_sizes() {
        let r6 = uniqueness_counterexample(6).unwrap();
        let w = r6.witness.unwrap();
        assert_ne!(w.r, w.r_prime);
        assert_eq!(tops_of(r6.witness_election.as_ref().unwrap()), w.tops);
        // no first places for a or b puts the election in the c cell
        let zero = r6.tied_rows.iter().find(|row| row.tops[0] == 0).unwrap();
        assert_eq!(zero.r, vec!["c".to_string()]);
        assert!(uniqueness_counterexample(5).is_err());
    }
}
