//! Consensus families: partial social functions with an undisputed outcome.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::election::{Election, VotingSituation};
use crate::error::{Error, Result};
use crate::metrics::ElectionDistance;
use crate::metrics::MajorityMatrix;
use crate::ranking::{all_s_rankings, Candidate, Ranking};
use crate::rule::RuleHandle;

/// Output length of a consensus: a fixed prefix length or full rankings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Size {
    Top(usize),
    Full,
}

impl Size {
    pub fn resolve(self, m: usize) -> usize {
        match self {
            Size::Top(s) => s,
            Size::Full => m,
        }
    }
}

#[derive(Clone)]
pub enum ConsensusSpec {
    /// More than a fraction `alpha` of voters share the same top-s order.
    QualifiedMajority { alpha: Ratio<i64>, s: Size },
    /// All voters share the same top-s order.
    Unanimity { s: Size },
    /// Some candidate beats every rival with more than a fraction `alpha` of voters.
    Condorcet { alpha: Ratio<i64> },
    /// Iterated winner extraction from a 1-consensus.
    SRestriction { base: Box<ConsensusSpec>, s: Size },
    /// Every voter casts `r` followed by the remaining candidates in ascending order.
    FixedExtension { s: Size },
    /// Elections on which the rule has a single winner.
    MaxConsensus(RuleHandle),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsensusDecision {
    pub member: bool,
    pub choice: Option<Ranking>,
}

impl ConsensusDecision {
    fn of(choice: Option<Ranking>) -> Self {
        ConsensusDecision { member: choice.is_some(), choice }
    }
}

impl fmt::Debug for ConsensusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn half() -> Ratio<i64> {
    Ratio::new(1, 2)
}

fn size_name(s: Size) -> String {
    match s {
        Size::Top(k) => k.to_string(),
        Size::Full => "m".into(),
    }
}

impl ConsensusSpec {
    pub fn sunam() -> Self {
        ConsensusSpec::Unanimity { s: Size::Full }
    }

    pub fn wunam() -> Self {
        ConsensusSpec::Unanimity { s: Size::Top(1) }
    }

    pub fn maj(s: Size) -> Self {
        ConsensusSpec::QualifiedMajority { alpha: half(), s }
    }

    pub fn cond() -> Self {
        ConsensusSpec::Condorcet { alpha: half() }
    }

    pub fn cond_restricted(alpha: Ratio<i64>, s: Size) -> Self {
        ConsensusSpec::SRestriction { base: Box::new(ConsensusSpec::Condorcet { alpha }), s }
    }

    /// Condorcet restricted to full rankings.
    pub fn cond_m() -> Self {
        Self::cond_restricted(half(), Size::Full)
    }

    pub fn name(&self) -> String {
        match self {
            ConsensusSpec::Unanimity { s: Size::Full } => "sunam".into(),
            ConsensusSpec::Unanimity { s: Size::Top(1) } => "wunam".into(),
            ConsensusSpec::Unanimity { s } => format!("sunam^{}", size_name(*s)),
            ConsensusSpec::QualifiedMajority { alpha, s } if *alpha == half() => format!("maj^{}", size_name(*s)),
            ConsensusSpec::QualifiedMajority { alpha, s } => format!("qmaj:{}:{}", alpha, size_name(*s)),
            ConsensusSpec::Condorcet { alpha } if *alpha == half() => "cond".into(),
            ConsensusSpec::Condorcet { alpha } => format!("cond:{alpha}"),
            ConsensusSpec::SRestriction { base, s } => match (&**base, s) {
                (ConsensusSpec::Condorcet { alpha }, Size::Full) if *alpha == half() => "cond-m".into(),
                _ => format!("srestrict:{}:{}", base.name(), size_name(*s)),
            },
            ConsensusSpec::FixedExtension { s } => format!("fixed-extension:{}", size_name(*s)),
            ConsensusSpec::MaxConsensus(rule) => format!("kmax({})", rule.name()),
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let check_alpha = |a: &Ratio<i64>| {
            if *a < half() || *a >= Ratio::from_integer(1) {
                Err(Error::InvalidParameter(format!("alpha = {a} outside [1/2, 1)")))
            } else {
                Ok(())
            }
        };
        let check_s = |s: &Size| {
            let k = s.resolve(m);
            if k == 0 || k > m {
                Err(Error::InvalidParameter(format!("s = {k} outside 1..={m}")))
            } else {
                Ok(())
            }
        };
        match self {
            ConsensusSpec::QualifiedMajority { alpha, s } => {
                check_alpha(alpha)?;
                check_s(s)
            }
            ConsensusSpec::Unanimity { s } | ConsensusSpec::FixedExtension { s } => check_s(s),
            ConsensusSpec::Condorcet { alpha } => check_alpha(alpha),
            ConsensusSpec::SRestriction { base, s } => {
                check_s(s)?;
                if base.output_size(m) != 1 {
                    return Err(Error::InvalidParameter("s-restriction needs a 1-consensus base".into()));
                }
                base.validate(m)
            }
            ConsensusSpec::MaxConsensus(_) => Ok(()),
        }
    }

    /// Length of the consensus choice for `m` candidates.
    pub fn output_size(&self, m: usize) -> usize {
        match self {
            ConsensusSpec::QualifiedMajority { s, .. }
            | ConsensusSpec::Unanimity { s }
            | ConsensusSpec::FixedExtension { s }
            | ConsensusSpec::SRestriction { s, .. } => s.resolve(m),
            ConsensusSpec::Condorcet { .. } => 1,
            ConsensusSpec::MaxConsensus(rule) => rule.output_size(m),
        }
    }

    /// All possible outcomes for the candidate set.
    pub fn outcomes(&self, cs: &[Candidate]) -> Vec<Ranking> {
        all_s_rankings(cs, self.output_size(cs.len()))
    }

    /// True when membership depends only on the anonymized election.
    pub fn is_anonymous(&self) -> bool {
        match self {
            ConsensusSpec::MaxConsensus(_) => false,
            ConsensusSpec::SRestriction { base, .. } => base.is_anonymous(),
            _ => true,
        }
    }

    pub fn decide(&self, e: &Election) -> Result<ConsensusDecision> {
        match self {
            ConsensusSpec::MaxConsensus(rule) => {
                let out = rule.apply(e)?;
                Ok(ConsensusDecision::of(if out.len() == 1 { out.into_iter().next() } else { None }))
            }
            ConsensusSpec::SRestriction { base, s } if !base.is_anonymous() => {
                s_restriction_election(base, s.resolve(e.m()), e)
            }
            _ => Ok(ConsensusDecision::of(self.choice(&e.anonymize()))),
        }
    }

    /// Decision on an anonymous election. `MaxConsensus` evaluates its rule
    /// on the canonical election of the situation.
    pub fn choice(&self, x: &VotingSituation) -> Option<Ranking> {
        let m = x.m();
        let n = x.n() as i64;
        match self {
            ConsensusSpec::QualifiedMajority { alpha, s } => {
                let s = s.resolve(m);
                let mut counts = std::collections::BTreeMap::new();
                for (r, &k) in x.counts() {
                    *counts.entry(r.prefix(s)).or_insert(0i64) += k as i64;
                }
                counts
                    .into_iter()
                    .find(|(_, k)| exceeds(*k, n, alpha))
                    .map(|(r, _)| r)
            }
            ConsensusSpec::Unanimity { s } => {
                let s = s.resolve(m);
                let mut it = x.counts().keys().map(|r| r.prefix(s));
                let first = it.next()?;
                it.all(|p| p == first).then_some(first)
            }
            ConsensusSpec::Condorcet { alpha } => condorcet_winner(x, alpha).map(|c| Ranking::new(&[c]).expect("one")),
            ConsensusSpec::SRestriction { base, s } => s_restriction(base, s.resolve(m), x),
            ConsensusSpec::FixedExtension { s } => {
                let s = s.resolve(m);
                let mut it = x.counts().keys();
                let first = *it.next()?;
                if it.next().is_some() {
                    return None;
                }
                let head = first.prefix(s);
                (fixed_extension(&head, x.candidates()) == first).then_some(head)
            }
            ConsensusSpec::MaxConsensus(rule) => {
                let out = rule.apply(&x.to_election()).ok()?;
                if out.len() == 1 {
                    out.into_iter().next()
                } else {
                    None
                }
            }
        }
    }

    /// Cells of the form "every vote lies in an allowed set".
    pub fn is_forbidden_set(&self) -> bool {
        matches!(self, ConsensusSpec::Unanimity { .. } | ConsensusSpec::FixedExtension { .. })
    }

    /// For consensuses of forbidden-set form, the rankings a voter may cast
    /// inside cell `r`: a situation is in `K_r` iff every vote is allowed.
    pub fn allowed_rankings(&self, cs: &[Candidate], r: &Ranking) -> Option<Vec<Ranking>> {
        match self {
            ConsensusSpec::Unanimity { s } => {
                let s = s.resolve(cs.len());
                let rest: Vec<Candidate> = cs.iter().copied().filter(|c| !r.contains(*c)).collect();
                let tails = all_s_rankings(&rest, rest.len());
                Some(
                    tails
                        .into_iter()
                        .map(|t| {
                            let mut v = r.as_slice()[..s].to_vec();
                            v.extend_from_slice(t.as_slice());
                            Ranking::new(&v).expect("disjoint")
                        })
                        .collect(),
                )
            }
            ConsensusSpec::FixedExtension { .. } => Some(vec![fixed_extension(r, cs)]),
            _ => None,
        }
    }
}

fn exceeds(k: i64, n: i64, alpha: &Ratio<i64>) -> bool {
    Ratio::new(k, n) > *alpha
}

/// `r` followed by the other candidates in ascending order.
pub fn fixed_extension(r: &Ranking, cs: &[Candidate]) -> Ranking {
    let mut v = r.as_slice().to_vec();
    v.extend(cs.iter().copied().filter(|c| !r.contains(*c)));
    Ranking::new(&v).expect("valid")
}

/// The alpha-Condorcet winner, if any.
pub fn condorcet_winner(x: &VotingSituation, alpha: &Ratio<i64>) -> Option<Candidate> {
    let mm = MajorityMatrix::of_situation(x);
    let n = x.n() as i64;
    x.candidates().iter().copied().find(|&c| {
        x.candidates().iter().all(|&d| {
            if c == d {
                return true;
            }
            // supporters of c over d = (n + net) / 2
            let sup = (n + mm.net(c, d) as i64) / 2;
            exceeds(sup, n, alpha)
        })
    })
}

fn s_restriction(base: &ConsensusSpec, s: usize, x: &VotingSituation) -> Option<Ranking> {
    let mut cur = x.clone();
    let mut chosen = Vec::new();
    for step in 0..s {
        let c = base.choice(&cur)?.top()?;
        chosen.push(c);
        if step + 1 < s {
            cur = cur.delete_candidate(c).ok()?;
        }
    }
    Ranking::new(&chosen).ok()
}

fn s_restriction_election(base: &ConsensusSpec, s: usize, e: &Election) -> Result<ConsensusDecision> {
    let mut cur = e.clone();
    let mut chosen = Vec::new();
    for step in 0..s {
        let d = base.decide(&cur)?;
        let c = match d.choice.and_then(|r| r.top()) {
            Some(c) => c,
            None => return Ok(ConsensusDecision::of(None)),
        };
        chosen.push(c);
        if step + 1 < s {
            cur = cur.delete_candidate(c)?;
        }
    }
    Ok(ConsensusDecision::of(Some(Ranking::new(&chosen)?)))
}

/// Public entry for the s-restriction of a 1-consensus.
pub fn s_restriction_of(base: &ConsensusSpec, s: usize, e: &Election) -> Result<ConsensusDecision> {
    if base.output_size(e.m()) != 1 {
        return Err(Error::InvalidParameter("s-restriction needs a 1-consensus base".into()));
    }
    s_restriction_election(base, s, e)
}

/// The maximum consensus of a rule.
pub fn max_consensus(rule: RuleHandle) -> ConsensusSpec {
    ConsensusSpec::MaxConsensus(rule)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub divisible: bool,
    /// A member with `k * n` voters that is not `k` times a member.
    pub witness: Option<(VotingSituation, usize)>,
}

/// Checks that every member with a composite voter count is a scaled copy
/// of a smaller member with the same choice.
pub fn is_divisible(k: &ConsensusSpec, space: &[VotingSituation]) -> DivisibilityReport {
    for x in space {
        let choice = match k.choice(x) {
            Some(c) => c,
            None => continue,
        };
        let n = x.n();
        for f in 2..=n {
            if n % f != 0 {
                continue;
            }
            let ok = x.counts().values().all(|&c| c as usize % f == 0) && {
                let pairs: Vec<(Ranking, u32)> = x.counts().iter().map(|(r, &c)| (*r, c / f as u32)).collect();
                let y = VotingSituation::from_pairs(x.candidates(), &pairs).expect("nonempty");
                k.choice(&y) == Some(choice)
            };
            if !ok {
                return DivisibilityReport { divisible: false, witness: Some((x.clone(), f)) };
            }
        }
    }
    DivisibilityReport { divisible: true, witness: None }
}

/// Whether `d(x, y) > 0` for every pair of members with different choices.
/// Returns the first offending pair otherwise.
pub fn distinguishes_choices(
    k: &ConsensusSpec,
    d: &ElectionDistance,
    space: &[Election],
) -> Result<Option<(Election, Election)>> {
    let members: Vec<(&Election, Ranking)> = space
        .iter()
        .filter_map(|e| k.decide(e).ok().and_then(|dcs| dcs.choice).map(|c| (e, c)))
        .collect();
    for (x, cx) in &members {
        for (y, cy) in &members {
            if cx != cy && d.distance(x, y)?.is_zero() {
                return Ok(Some(((*x).clone(), (*y).clone())));
            }
        }
    }
    Ok(None)
}

pub type ConsensusHandle = Arc<ConsensusSpec>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::candidates;

    fn r(ids: &[u8]) -> Ranking {
        Ranking::from_ids(ids)
    }

    fn sit(m: usize, pairs: &[(&[u8], u32)]) -> VotingSituation {
        let p: Vec<(Ranking, u32)> = pairs.iter().map(|(x, k)| (r(x), *k)).collect();
        VotingSituation::from_pairs(&candidates(m), &p).unwrap()
    }

    #[test]
    fn decisions() {
        assert_eq!(ConsensusSpec::cond().choice(&sit(2, &[(&[0, 1], 2), (&[1, 0], 1)])), Some(r(&[0])));
        let x = sit(3, &[(&[0, 1, 2], 3), (&[1, 2, 0], 2)]);
        assert_eq!(ConsensusSpec::maj(Size::Top(1)).choice(&x), Some(r(&[0])));
        let y = sit(3, &[(&[0, 1, 2], 2), (&[0, 2, 1], 1)]);
        assert_eq!(ConsensusSpec::sunam().choice(&y), None);
        assert_eq!(ConsensusSpec::wunam().choice(&y), Some(r(&[0])));
    }

    #[test]
    fn restrictions() {
        let x = sit(3, &[(&[0, 1, 2], 3)]);
        let wr = ConsensusSpec::SRestriction { base: Box::new(ConsensusSpec::wunam()), s: Size::Top(2) };
        assert_eq!(wr.choice(&x), Some(r(&[0, 1])));
        let y = sit(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]);
        let cr = ConsensusSpec::cond_restricted(half(), Size::Top(2));
        assert_eq!(cr.choice(&y), Some(r(&[0, 1])));
    }

    #[test]
    fn fixed_extension_cells() {
        let k = ConsensusSpec::FixedExtension { s: Size::Top(1) };
        assert_eq!(k.choice(&sit(3, &[(&[1, 0, 2], 2)])), Some(r(&[1])));
        assert_eq!(k.choice(&sit(3, &[(&[1, 2, 0], 2)])), None);
        assert_eq!(k.allowed_rankings(&candidates(3), &r(&[2])), Some(vec![r(&[2, 0, 1])]));
    }

    #[test]
    fn validation() {
        assert!(ConsensusSpec::Condorcet { alpha: Ratio::new(1, 3) }.validate(3).is_err());
        assert!(ConsensusSpec::Unanimity { s: Size::Top(4) }.validate(3).is_err());
        assert!(ConsensusSpec::cond_m().validate(3).is_ok());
    }
}
