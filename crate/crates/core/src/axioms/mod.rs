//! Axiom checkers over finite election spaces, the known counterexample
//! constructions, and existence and table-equivalence replays.

pub mod counterexamples;
pub mod existence;
pub mod table;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::election::{Election, VoterId};
use crate::error::{Error, Result};
use crate::ranking::{Ranking, Relabeling};
use crate::rule::{Outcome, Rule};

/// Window of trailing multipliers that must all agree for continuity to count as stable.
pub const CONTINUITY_WINDOW: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnSpace,
    Violated,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsOnSpace => "holds-on-space",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Elections and the rule's outputs on them, enough to replay a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub elections: Vec<Election>,
    pub outcomes: Vec<Outcome>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub rule: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Number of rule-level comparisons performed.
    pub checked: usize,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSpace
    }
}

/// Runs `check` over every item in parallel and keeps the first failure in input order.
fn first_failure<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<(usize, Option<Witness>)> + Sync,
) -> Result<(usize, Option<Witness>)> {
    let results: Vec<Result<(usize, Option<Witness>)>> = items.par_iter().map(|x| check(x)).collect();
    let mut total = 0;
    for r in results {
        let (n, w) = r?;
        total += n;
        if w.is_some() {
            return Ok((total, w));
        }
    }
    Ok((total, None))
}

fn report(axiom: &str, rule: &dyn Rule, found: (usize, Option<Witness>)) -> AxiomReport {
    let verdict = if found.1.is_some() { Verdict::Violated } else { Verdict::HoldsOnSpace };
    AxiomReport { axiom: axiom.into(), rule: rule.name(), verdict, witness: found.1, checked: found.0 }
}

fn voter_bijections(voters: &[VoterId]) -> Vec<Vec<VoterId>> {
    let n = voters.len();
    if n <= 5 {
        return voters.iter().copied().permutations(n).collect();
    }
    let mut out = vec![voters.iter().rev().copied().collect::<Vec<_>>()];
    let mut rot = voters.to_vec();
    rot.rotate_left(1);
    out.push(rot);
    for i in 0..n - 1 {
        let mut s = voters.to_vec();
        s.swap(i, i + 1);
        out.push(s);
    }
    out
}

/// R(gE) = R(E) for voter bijections g (all of them for up to five voters).
pub fn check_anonymity(rule: &dyn Rule, space: &[Election]) -> Result<AxiomReport> {
    let found = first_failure(space, |e| {
        let base = rule.apply(e)?;
        let voters: Vec<VoterId> = e.voters().collect();
        let mut count = 0;
        for image in voter_bijections(&voters) {
            let g = |v: VoterId| image[voters.iter().position(|w| *w == v).expect("voter")];
            let f = e.permute_voters(g)?;
            count += 1;
            let out = rule.apply(&f)?;
            if out != base {
                return Ok((count, Some(Witness {
                    elections: vec![e.clone(), f],
                    outcomes: vec![base, out],
                    detail: "permuting voters changed the outcome".into(),
                })));
            }
        }
        Ok((count, None))
    })?;
    Ok(report("anonymity", rule, found))
}

fn relabel_outcome(o: &Outcome, sigma: &Relabeling) -> Outcome {
    o.iter().map(|r| r.relabeled(sigma)).collect()
}

/// R(σE) = σR(E) for every candidate permutation σ.
pub fn check_neutrality(rule: &dyn Rule, space: &[Election]) -> Result<AxiomReport> {
    let found = first_failure(space, |e| {
        let base = rule.apply(e)?;
        let mut count = 0;
        for sigma in Relabeling::all_on(e.candidates()) {
            let f = e.permute_candidates(&sigma)?;
            count += 1;
            let out = rule.apply(&f)?;
            let expected = relabel_outcome(&base, &sigma);
            if out != expected {
                return Ok((count, Some(Witness {
                    elections: vec![e.clone(), f],
                    outcomes: vec![base, out],
                    detail: "relabeling candidates did not relabel the outcome".into(),
                })));
            }
        }
        Ok((count, None))
    })?;
    Ok(report("neutrality", rule, found))
}

/// R(reverse E) = reverse R(E), for rules returning full rankings.
pub fn check_reversal_symmetry(rule: &dyn Rule, space: &[Election]) -> Result<AxiomReport> {
    if let Some(e) = space.iter().find(|e| rule.output_size(e.m()) != e.m()) {
        return Err(Error::InvalidParameter(format!("reversal needs full rankings, rule has size {}", rule.output_size(e.m()))));
    }
    let found = first_failure(space, |e| {
        let base = rule.apply(e)?;
        let f = e.reverse();
        let out = rule.apply(&f)?;
        let expected: Outcome = base.iter().map(Ranking::reversed).collect();
        if out != expected {
            return Ok((1, Some(Witness {
                elections: vec![e.clone(), f],
                outcomes: vec![base, out],
                detail: "reversing every vote did not reverse the outcome".into(),
            })));
        }
        Ok((1, None))
    })?;
    Ok(report("reversal-symmetry", rule, found))
}

/// R(kE) = R(E) for 2 ≤ k ≤ k_max.
pub fn check_homogeneity(rule: &dyn Rule, space: &[Election], k_max: usize) -> Result<AxiomReport> {
    if k_max < 2 {
        return Err(Error::InvalidParameter("k_max must be at least 2".into()));
    }
    let found = first_failure(space, |e| {
        let base = rule.apply(e)?;
        for k in 2..=k_max {
            let f = e.scale(k)?;
            let out = rule.apply(&f)?;
            if out != base {
                return Ok((k - 1, Some(Witness {
                    elections: vec![e.clone(), f],
                    outcomes: vec![base, out],
                    detail: format!("copying every voter {k} times changed the outcome"),
                })));
            }
        }
        Ok((k_max - 1, None))
    })?;
    Ok(report("homogeneity", rule, found))
}

/// Whenever R(E) and R(E') meet, R(E + E') is their intersection.
pub fn check_consistency(rule: &dyn Rule, pairs: &[(Election, Election)]) -> Result<AxiomReport> {
    if pairs.iter().any(|(e, f)| e.candidates() != f.candidates()) {
        return Err(Error::MismatchedCandidates);
    }
    let found = first_failure(pairs, |(e, f)| {
        let (a, b) = (rule.apply(e)?, rule.apply(f)?);
        let both: Outcome = a.intersection(&b).copied().collect();
        if both.is_empty() {
            return Ok((0, None));
        }
        let g = e.concat(f)?;
        let out = rule.apply(&g)?;
        if out != both {
            return Ok((1, Some(Witness {
                elections: vec![e.clone(), f.clone(), g],
                outcomes: vec![a, b, out],
                detail: "joint winners differ from the common winners".into(),
            })));
        }
        Ok((1, None))
    })?;
    Ok(report("consistency", rule, found))
}

/// Outcome of a single continuity probe.
#[derive(Clone, Debug, Serialize)]
pub struct ContinuityProbe {
    /// Least k with R(jE + E') = R(E) for every j in k..=k_max, if any.
    pub stable_from: Option<usize>,
    pub verdict: Verdict,
}

/// Looks for the multiplier after which a unique winner of `e` survives
/// adding `extra`. Stable only when the agreement spans the last
/// `CONTINUITY_WINDOW` multipliers.
pub fn check_continuity(rule: &dyn Rule, e: &Election, extra: &Election, k_max: usize) -> Result<ContinuityProbe> {
    let base = rule.apply(e)?;
    if base.len() != 1 {
        return Err(Error::InvalidParameter("continuity needs a unique winner on E".into()));
    }
    let mut stable_from = None;
    for k in (1..=k_max).rev() {
        let g = e.scale(k)?.concat(extra)?;
        if rule.apply(&g)? == base {
            stable_from = Some(k);
        } else {
            break;
        }
    }
    let verdict = match stable_from {
        Some(k) if k_max + 1 - k >= CONTINUITY_WINDOW.min(k_max) => Verdict::HoldsOnSpace,
        _ => Verdict::Inconclusive,
    };
    Ok(ContinuityProbe { stable_from, verdict })
}

/// Continuity over pairs; pairs where R(E) is not a singleton are skipped.
/// Inconclusive if any probe fails to stabilize within `k_max`.
pub fn check_continuity_on(rule: &dyn Rule, pairs: &[(Election, Election)], k_max: usize) -> Result<AxiomReport> {
    let found = first_failure(pairs, |(e, f)| {
        if rule.apply(e)?.len() != 1 {
            return Ok((0, None));
        }
        let probe = check_continuity(rule, e, f, k_max)?;
        if probe.verdict == Verdict::HoldsOnSpace {
            return Ok((1, None));
        }
        let g = e.scale(k_max)?.concat(f)?;
        Ok((1, Some(Witness {
            outcomes: vec![rule.apply(e)?, rule.apply(f)?, rule.apply(&g)?],
            elections: vec![e.clone(), f.clone(), g],
            detail: format!("no stable agreement up to k = {k_max} (last agreement from {:?})", probe.stable_from),
        })))
    })?;
    let verdict = if found.1.is_some() { Verdict::Inconclusive } else { Verdict::HoldsOnSpace };
    Ok(AxiomReport { axiom: "continuity".into(), rule: rule.name(), verdict, witness: found.1, checked: found.0 })
}

/// Ordered pairs from `space` sharing candidates, with at most `max_total` voters together.
pub fn pairs_of(space: &[Election], max_total: usize) -> Vec<(Election, Election)> {
    let mut out = Vec::new();
    for e in space {
        for f in space {
            if e.candidates() == f.candidates() && e.n() + f.n() <= max_total {
                out.push((e.clone(), f.clone()));
            }
        }
    }
    out
}

/// Distinct winner sets seen, for summaries.
pub fn outcome_profile(rule: &dyn Rule, space: &[Election]) -> Result<BTreeSet<Outcome>> {
    space.iter().map(|e| rule.apply(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{enumerate_up_to, all_profiles, EnumBounds};
    use crate::oracles::Oracle;
    use crate::ranking::candidates;
    use crate::rule::{as_outcome, FnRule};

    fn profiles(m: usize, n_max: usize) -> Vec<Election> {
        let cs = candidates(m);
        (1..=n_max)
            .flat_map(|n| {
                let voters: Vec<VoterId> = (0..n as u32).map(VoterId).collect();
                all_profiles(&cs, &voters).unwrap()
            })
            .collect()
    }

    fn situations(m: usize, n_max: usize) -> Vec<Election> {
        enumerate_up_to(&candidates(m), n_max, EnumBounds { max_candidates: m, max_voters: n_max })
            .unwrap()
            .iter()
            .map(|x| x.to_election())
            .collect()
    }

    #[test]
    fn dictatorship_is_not_anonymous() {
        let dict = FnRule::new("first-voter", Some(1), |e: &Election| {
            Ok(as_outcome(e.votes()[0].1.top()))
        });
        let r = check_anonymity(&dict, &profiles(3, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        let w = r.witness.unwrap();
        assert_ne!(dict.apply(&w.elections[0]).unwrap(), dict.apply(&w.elections[1]).unwrap());
        assert!(check_anonymity(&Oracle::Borda, &profiles(3, 3)).unwrap().holds());
    }

    #[test]
    fn constant_rule_is_not_neutral() {
        let fixed = FnRule::new("always-a", Some(1), |e: &Election| Ok(as_outcome([e.candidates()[0]])));
        assert_eq!(check_neutrality(&fixed, &situations(3, 2)).unwrap().verdict, Verdict::Violated);
        assert!(check_neutrality(&Oracle::Borda, &situations(3, 3)).unwrap().holds());
    }

    #[test]
    fn kemeny_and_modal_reverse() {
        let space = situations(3, 3);
        assert!(check_reversal_symmetry(&Oracle::Kemeny, &space).unwrap().holds());
        assert!(check_reversal_symmetry(&Oracle::Modal, &space).unwrap().holds());
        let lex = FnRule::new("kemeny-first", None, |e: &Election| {
            Ok(crate::oracles::kemeny(e)?.into_iter().take(1).collect())
        });
        assert_eq!(check_reversal_symmetry(&lex, &space).unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn borda_consistency_small() {
        let space = situations(3, 4);
        let pairs = pairs_of(&space, 5);
        assert!(check_consistency(&Oracle::Borda, &pairs).unwrap().holds());
    }

    #[test]
    fn plurality_continuity() {
        let e = Election::from_rankings(&candidates(2), &[Ranking::from_ids(&[0, 1]); 2]).unwrap();
        let f = Election::from_rankings(&candidates(2), &[Ranking::from_ids(&[1, 0])]).unwrap();
        let p = check_continuity(&Oracle::Plurality, &e, &f, 20).unwrap();
        assert_eq!(p.stable_from, Some(1));
        assert_eq!(p.verdict, Verdict::HoldsOnSpace);
        let jump = FnRule::new("jump", Some(1), |e: &Election| {
            Ok(as_outcome([e.candidates()[if e.n() > 30 { 1 } else { 0 }]]))
        });
        let probe = check_continuity(&jump, &e, &f, 20).unwrap();
        assert_eq!(probe.verdict, Verdict::Inconclusive);
    }
}
