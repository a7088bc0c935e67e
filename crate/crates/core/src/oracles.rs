//! Classical rules computed directly from the ballots, kept independent of
//! the distance engine so the two can check each other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::Ratio;

use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::validate_weights;
use crate::ranking::{all_rankings, Candidate, Ranking};
use crate::rule::{as_outcome, Outcome, Rule};

const MAX_WELFARE_M: usize = 8;
const SEARCH_LIMIT: u64 = 50_000_000;

/// What an oracle returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    SocialChoice,
    Welfare,
}

#[derive(Clone, PartialEq, Eq)]
pub enum Oracle {
    Scoring(Vec<i64>),
    Plurality,
    Borda,
    Kemeny,
    Dodgson,
    Young,
    /// Points for a pairwise tie.
    Copeland(Ratio<i64>),
    Maximin,
    Slater,
    Modal,
    Vrr,
    Litvak,
}

impl Oracle {
    pub fn all_named() -> Vec<Oracle> {
        vec![
            Oracle::Plurality,
            Oracle::Borda,
            Oracle::Kemeny,
            Oracle::Dodgson,
            Oracle::Young,
            Oracle::Copeland(Ratio::new(0, 1)),
            Oracle::Copeland(Ratio::new(1, 2)),
            Oracle::Maximin,
            Oracle::Slater,
            Oracle::Modal,
            Oracle::Vrr,
            Oracle::Litvak,
        ]
    }

    pub fn arity(&self) -> Arity {
        match self {
            Oracle::Kemeny | Oracle::Slater | Oracle::Modal | Oracle::Litvak => Arity::Welfare,
            _ => Arity::SocialChoice,
        }
    }

    pub fn evaluate(&self, e: &Election) -> Result<Outcome> {
        let single = |w: BTreeSet<Candidate>| as_outcome(w);
        match self {
            Oracle::Scoring(w) => Ok(single(scoring_rule(w, e)?)),
            Oracle::Plurality => {
                let mut w = vec![0; e.m()];
                w[0] = 1;
                Ok(single(scoring_rule(&w, e)?))
            }
            Oracle::Borda => {
                let w: Vec<i64> = (0..e.m() as i64).rev().collect();
                Ok(single(scoring_rule(&w, e)?))
            }
            Oracle::Kemeny => kemeny(e),
            Oracle::Dodgson => Ok(single(dodgson(e)?)),
            Oracle::Young => Ok(single(young(e)?)),
            Oracle::Copeland(t) => Ok(single(copeland(e, *t))),
            Oracle::Maximin => Ok(single(maximin(e))),
            Oracle::Slater => slater(e),
            Oracle::Modal => Ok(modal_ranking(e)),
            Oracle::Vrr => Ok(single(vrr(e)?)),
            Oracle::Litvak => litvak(e),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::Scoring(w) => write!(f, "scoring:{}", w.iter().join(",")),
            Oracle::Plurality => write!(f, "plurality"),
            Oracle::Borda => write!(f, "borda"),
            Oracle::Kemeny => write!(f, "kemeny"),
            Oracle::Dodgson => write!(f, "dodgson"),
            Oracle::Young => write!(f, "young"),
            Oracle::Copeland(t) if *t == Ratio::new(1, 2) => write!(f, "copeland:half"),
            Oracle::Copeland(t) => write!(f, "copeland:{t}"),
            Oracle::Maximin => write!(f, "maximin"),
            Oracle::Slater => write!(f, "slater"),
            Oracle::Modal => write!(f, "modal"),
            Oracle::Vrr => write!(f, "vrr"),
            Oracle::Litvak => write!(f, "litvak"),
        }
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown rule '{s}'"));
        Ok(match s {
            "plurality" => Oracle::Plurality,
            "borda" => Oracle::Borda,
            "kemeny" => Oracle::Kemeny,
            "dodgson" => Oracle::Dodgson,
            "young" => Oracle::Young,
            "copeland" | "copeland:half" => Oracle::Copeland(Ratio::new(1, 2)),
            "copeland:0" => Oracle::Copeland(Ratio::new(0, 1)),
            "maximin" => Oracle::Maximin,
            "slater" => Oracle::Slater,
            "modal" => Oracle::Modal,
            "vrr" => Oracle::Vrr,
            "litvak" => Oracle::Litvak,
            _ => {
                let w = s.strip_prefix("scoring:").ok_or_else(bad)?;
                let w = w
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                validate_weights(&w)?;
                Oracle::Scoring(w)
            }
        })
    }
}

impl Rule for Oracle {
    fn name(&self) -> String {
        self.to_string()
    }

    fn output_size(&self, m: usize) -> usize {
        match self.arity() {
            Arity::Welfare => m,
            Arity::SocialChoice => 1,
        }
    }

    fn apply(&self, e: &Election) -> Result<Outcome> {
        self.evaluate(e)
    }
}

/// `wins[a][b]`: voters ranking a above b, indexed by candidate id.
fn pairwise(e: &Election) -> BTreeMap<(Candidate, Candidate), i64> {
    let mut out = BTreeMap::new();
    for &a in e.candidates() {
        for &b in e.candidates() {
            if a != b {
                out.insert((a, b), 0);
            }
        }
    }
    for r in e.rankings() {
        let v = r.as_slice();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                *out.get_mut(&(v[i], v[j])).expect("pair") += 1;
            }
        }
    }
    out
}

fn argmax<T: Ord + Copy>(items: impl IntoIterator<Item = (Candidate, T)>) -> BTreeSet<Candidate> {
    let v: Vec<(Candidate, T)> = items.into_iter().collect();
    let best = v.iter().map(|x| x.1).max();
    v.into_iter().filter(|x| Some(x.1) == best).map(|x| x.0).collect()
}

fn check_welfare_size(e: &Election) -> Result<()> {
    if e.m() > MAX_WELFARE_M {
        return Err(Error::BoundsExceeded(format!("{} candidates for a ranking search", e.m())));
    }
    Ok(())
}

fn argmin_rankings(e: &Election, cost: impl Fn(&Ranking) -> i64) -> Result<Outcome> {
    check_welfare_size(e)?;
    let scored: Vec<(Ranking, i64)> = all_rankings(e.candidates()).into_iter().map(|r| (r, cost(&r))).collect();
    let best = scored.iter().map(|x| x.1).min().expect("nonempty");
    Ok(scored.into_iter().filter(|x| x.1 == best).map(|x| x.0).collect())
}

/// Scores for a positional weight vector (best rank first).
pub fn scoring_scores(w: &[i64], e: &Election) -> Result<BTreeMap<Candidate, i64>> {
    validate_weights(w)?;
    if w.len() != e.m() {
        return Err(Error::MalformedWeights(w.to_vec()));
    }
    let mut s: BTreeMap<Candidate, i64> = e.candidates().iter().map(|c| (*c, 0)).collect();
    for r in e.rankings() {
        for (i, c) in r.as_slice().iter().enumerate() {
            *s.get_mut(c).expect("candidate") += w[i];
        }
    }
    Ok(s)
}

pub fn scoring_rule(w: &[i64], e: &Election) -> Result<BTreeSet<Candidate>> {
    Ok(argmax(scoring_scores(w, e)?))
}

/// Rankings minimizing the total number of pairwise disagreements with the votes.
pub fn kemeny(e: &Election) -> Result<Outcome> {
    let p = pairwise(e);
    argmin_rankings(e, |r| {
        let v = r.as_slice();
        let mut cost = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                cost += p[&(v[j], v[i])];
            }
        }
        cost
    })
}

/// Rankings minimizing the total displacement of candidates.
pub fn litvak(e: &Election) -> Result<Outcome> {
    argmin_rankings(e, |r| {
        e.rankings()
            .map(|v| {
                r.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64 - v.as_slice().iter().position(|x| x == c).expect("full") as i64).abs())
                    .sum::<i64>()
            })
            .sum()
    })
}

/// Orders minimizing the number of pairs ranked against a strict majority.
pub fn slater(e: &Election) -> Result<Outcome> {
    let p = pairwise(e);
    argmin_rankings(e, |r| {
        let v = r.as_slice();
        let mut cost = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if p[&(v[j], v[i])] > p[&(v[i], v[j])] {
                    cost += 1;
                }
            }
        }
        cost
    })
}

/// The most frequent ballots.
pub fn modal_ranking(e: &Election) -> Outcome {
    let mut counts: BTreeMap<Ranking, usize> = BTreeMap::new();
    for r in e.rankings() {
        *counts.entry(*r).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    counts.into_iter().filter(|x| x.1 == best).map(|x| x.0).collect()
}

pub fn copeland_scores(e: &Election, tie: Ratio<i64>) -> BTreeMap<Candidate, Ratio<i64>> {
    let p = pairwise(e);
    e.candidates()
        .iter()
        .map(|&a| {
            let s = e.candidates().iter().filter(|&&b| b != a).fold(Ratio::new(0, 1), |acc, &b| {
                match p[&(a, b)].cmp(&p[&(b, a)]) {
                    std::cmp::Ordering::Greater => acc + 1,
                    std::cmp::Ordering::Equal => acc + tie,
                    std::cmp::Ordering::Less => acc,
                }
            });
            (a, s)
        })
        .collect()
}

pub fn copeland(e: &Election, tie: Ratio<i64>) -> BTreeSet<Candidate> {
    argmax(copeland_scores(e, tie))
}

/// Candidates whose worst net margin is largest.
pub fn maximin(e: &Election) -> BTreeSet<Candidate> {
    let p = pairwise(e);
    argmax(e.candidates().iter().map(|&a| {
        let worst = e.candidates().iter().filter(|&&b| b != a).map(|&b| p[&(a, b)] - p[&(b, a)]).min().unwrap_or(0);
        (a, worst)
    }))
}

/// Whether `c` beats every rival by a strict majority, given ballots.
fn strict_winner<'a>(c: Candidate, cs: &[Candidate], ballots: impl Iterator<Item = &'a [Candidate]> + Clone) -> bool {
    cs.iter().filter(|&&d| d != c).all(|&d| {
        let (mut for_c, mut total) = (0, 0);
        for v in ballots.clone() {
            total += 1;
            if v.iter().position(|x| *x == c) < v.iter().position(|x| *x == d) {
                for_c += 1;
            }
        }
        2 * for_c > total
    })
}

/// Least total number of upward swaps of `c` making it a strict Condorcet
/// winner, by trying every raise amount in every vote.
pub fn dodgson_score_naive(e: &Election, c: Candidate) -> Result<u64> {
    let ballots: Vec<Vec<Candidate>> = e.rankings().map(|r| r.as_slice().to_vec()).collect();
    let ranges: Vec<usize> = ballots.iter().map(|v| v.iter().position(|x| *x == c).expect("full") + 1).collect();
    let size: f64 = ranges.iter().map(|&x| x as f64).product();
    if size > SEARCH_LIMIT as f64 {
        return Err(Error::BoundsExceeded(format!("{size:.0} raise combinations")));
    }
    let mut best: Option<u64> = None;
    for plan in ranges.iter().map(|&k| 0..k).multi_cartesian_product() {
        let cost: u64 = plan.iter().map(|&j| j as u64).sum();
        if best.map(|b| cost >= b).unwrap_or(false) {
            continue;
        }
        let moved: Vec<Vec<Candidate>> = ballots
            .iter()
            .zip(&plan)
            .map(|(v, &j)| {
                let mut v = v.clone();
                let at = v.iter().position(|x| *x == c).expect("full");
                let x = v.remove(at);
                v.insert(at - j, x);
                v
            })
            .collect();
        if strict_winner(c, e.candidates(), moved.iter().map(|v| v.as_slice())) {
            best = Some(cost);
        }
    }
    Ok(best.expect("raising c to the top everywhere works"))
}

/// Least number of voters to delete so that `c` is a strict Condorcet
/// winner of the rest, by trying every subset; `None` if impossible.
pub fn young_score_naive(e: &Election, c: Candidate) -> Result<Option<u64>> {
    let ballots: Vec<&[Candidate]> = e.rankings().map(|r| r.as_slice()).collect();
    let n = ballots.len();
    if n > 24 {
        return Err(Error::BoundsExceeded(format!("{n} voters for subset search")));
    }
    let mut best: Option<u64> = None;
    for mask in 0u32..(1u32 << n) - 1 {
        let gone = mask.count_ones() as u64;
        if best.map(|b| gone >= b).unwrap_or(false) {
            continue;
        }
        let kept = ballots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, v)| *v);
        if strict_winner(c, e.candidates(), kept) {
            best = Some(gone);
        }
    }
    Ok(best)
}

/// Least number of ballots to replace so that `c` is a strict Condorcet
/// winner, by trying every subset of replaced voters (replacements put `c` first).
pub fn vrr_score_naive(e: &Election, c: Candidate) -> Result<u64> {
    let ballots: Vec<Vec<Candidate>> = e.rankings().map(|r| r.as_slice().to_vec()).collect();
    let n = ballots.len();
    if n > 24 {
        return Err(Error::BoundsExceeded(format!("{n} voters for subset search")));
    }
    let top: Vec<Candidate> = std::iter::once(c).chain(e.candidates().iter().copied().filter(|&d| d != c)).collect();
    for size in 0..=n {
        for replaced in (0..n).combinations(size) {
            let mut next = ballots.clone();
            for i in replaced {
                next[i] = top.clone();
            }
            if strict_winner(c, e.candidates(), next.iter().map(|v| v.as_slice())) {
                return Ok(size as u64);
            }
        }
    }
    unreachable!("replacing every ballot works")
}

pub fn dodgson(e: &Election) -> Result<BTreeSet<Candidate>> {
    let scores = e.candidates().iter().map(|&c| Ok((c, std::cmp::Reverse(dodgson_score_naive(e, c)?)))).collect::<Result<Vec<_>>>()?;
    Ok(argmax(scores))
}

pub fn young(e: &Election) -> Result<BTreeSet<Candidate>> {
    let mut scores = Vec::new();
    for &c in e.candidates() {
        if let Some(s) = young_score_naive(e, c)? {
            scores.push((c, std::cmp::Reverse(s)));
        }
    }
    Ok(argmax(scores))
}

pub fn vrr(e: &Election) -> Result<BTreeSet<Candidate>> {
    let scores = e.candidates().iter().map(|&c| Ok((c, std::cmp::Reverse(vrr_score_naive(e, c)?)))).collect::<Result<Vec<_>>>()?;
    Ok(argmax(scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::VotingSituation;
    use crate::ranking::candidates;

    fn sit(m: usize, pairs: &[(&[u8], u32)]) -> Election {
        let p: Vec<(Ranking, u32)> = pairs.iter().map(|(x, k)| (Ranking::from_ids(x), *k)).collect();
        VotingSituation::from_pairs(&candidates(m), &p).unwrap().to_election()
    }

    fn set(ids: &[u8]) -> BTreeSet<Candidate> {
        ids.iter().map(|&i| Candidate(i)).collect()
    }

    #[test]
    fn scoring_examples() {
        let e = sit(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]);
        assert_eq!(scoring_rule(&[2, 1, 0], &e).unwrap(), set(&[0, 1]));
        assert_eq!(scoring_rule(&[1, 0, 0], &e).unwrap(), set(&[0]));
        let cyc = sit(3, &[(&[0, 1, 2], 1), (&[1, 2, 0], 1), (&[2, 0, 1], 1)]);
        assert_eq!(scoring_rule(&[1, 1, 0], &cyc).unwrap(), set(&[0, 1, 2]));
        assert!(scoring_rule(&[0, 0, 0], &cyc).is_err());
        assert!(scoring_rule(&[0, 1, 0], &cyc).is_err());
    }

    #[test]
    fn named_examples() {
        let e = sit(3, &[(&[0, 1, 2], 1), (&[0, 2, 1], 1), (&[1, 0, 2], 1)]);
        assert_eq!(kemeny(&e).unwrap(), [Ranking::from_ids(&[0, 1, 2])].into_iter().collect());
        let cyc = sit(3, &[(&[0, 1, 2], 1), (&[1, 2, 0], 1), (&[2, 0, 1], 1)]);
        assert_eq!(copeland(&cyc, Ratio::new(0, 1)), set(&[0, 1, 2]));
        assert_eq!(maximin(&cyc), set(&[0, 1, 2]));
        let m = sit(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]);
        assert_eq!(modal_ranking(&m), [Ranking::from_ids(&[0, 1, 2])].into_iter().collect());
        let y = sit(2, &[(&[0, 1], 2), (&[1, 0], 3)]);
        assert_eq!(young(&y).unwrap(), set(&[1]));
        assert_eq!(young_score_naive(&y, Candidate(0)).unwrap(), Some(2));
    }

    #[test]
    fn naive_scores_on_small_cases() {
        let e = sit(2, &[(&[0, 1], 2), (&[1, 0], 3)]);
        assert_eq!(dodgson_score_naive(&e, Candidate(0)).unwrap(), 1);
        assert_eq!(vrr_score_naive(&e, Candidate(0)).unwrap(), 1);
        assert_eq!(dodgson_score_naive(&e.scale(3).unwrap(), Candidate(0)).unwrap(), 2);
    }

    #[test]
    fn names_round_trip() {
        for o in Oracle::all_named() {
            assert_eq!(o.to_string().parse::<Oracle>().unwrap(), o);
        }
        assert_eq!("scoring:3,1,0".parse::<Oracle>().unwrap(), Oracle::Scoring(vec![3, 1, 0]));
        assert!("nope".parse::<Oracle>().is_err());
    }
}
