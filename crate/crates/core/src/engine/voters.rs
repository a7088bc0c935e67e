//! Insertion and deletion distances to consensus cells.

use num_rational::Ratio;

use crate::consensus::{fixed_extension, ConsensusSpec};
use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::MajorityMatrix;
use crate::ranking::{Candidate, Ranking};
use crate::score::Score;

const YOUNG_LIMIT: u64 = 20_000_000;

fn prefix_count(e: &Election, r: &Ranking) -> usize {
    e.rankings().filter(|p| p.prefix(r.len()) == *r).count()
}

fn exceeds(k: i64, n: i64, alpha: Ratio<i64>) -> bool {
    Ratio::new(k, n) > alpha
}

pub(super) fn insertion_score(k: &ConsensusSpec, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    match k {
        ConsensusSpec::Unanimity { .. } | ConsensusSpec::FixedExtension { .. } => {
            // added voters cannot repair the existing ones
            if k.choice(&e.anonymize()) == Some(*r) {
                Ok((Score::zero(), Some(e.clone())))
            } else {
                Ok((Score::Infinite, None))
            }
        }
        ConsensusSpec::QualifiedMajority { alpha, .. } => {
            let n = e.n() as i64;
            let have = prefix_count(e, r) as i64;
            let mut add = 0i64;
            while !exceeds(have + add, n + add, *alpha) {
                add += 1;
            }
            let ballot = fixed_extension(r, e.candidates());
            let w = e.with_added(&vec![ballot; add as usize])?;
            Ok((Score::int(add), Some(w)))
        }
        ConsensusSpec::Condorcet { alpha } => {
            let c = r.top().expect("singleton");
            let (add, w) = condorcet_insertions(e, c, *alpha)?;
            Ok((Score::int(add), Some(w)))
        }
        _ => Err(Error::StrategyNotApplicable { strategy: "insertion".into(), cell: k.name() }),
    }
}

fn condorcet_insertions(e: &Election, c: Candidate, alpha: Ratio<i64>) -> Result<(i64, Election)> {
    let mm = MajorityMatrix::of_situation(&e.anonymize());
    let n = e.n() as i64;
    let support: Vec<i64> = e
        .candidates()
        .iter()
        .filter(|&&d| d != c)
        .map(|&d| (n + mm.net(c, d) as i64) / 2)
        .collect();
    let mut add = 0i64;
    while !support.iter().all(|&s| exceeds(s + add, n + add, alpha)) {
        add += 1;
    }
    let ballot = Ranking::new(&[c]).and_then(|r| Ok(fixed_extension(&r, e.candidates())))?;
    Ok((add, e.with_added(&vec![ballot; add as usize])?))
}

/// Minimum number of voters whose addition makes `c` a strict majority
/// Condorcet winner: one more than the worst net margin, or zero.
pub fn maximin_score_via_insertion(e: &Election, c: Candidate) -> Result<Score> {
    Ok(Score::int(condorcet_insertions(e, c, Ratio::new(1, 2))?.0))
}

pub(super) fn deletion_score(k: &ConsensusSpec, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let keep = |p: &Ranking| match k {
        ConsensusSpec::FixedExtension { .. } => *p == fixed_extension(r, e.candidates()),
        _ => p.prefix(r.len()) == *r,
    };
    let have = e.rankings().filter(|p| keep(p)).count() as i64;
    if have == 0 {
        return Ok((Score::Infinite, None));
    }
    let n = e.n() as i64;
    let others = n - have;
    let delete = match k {
        ConsensusSpec::Unanimity { .. } | ConsensusSpec::FixedExtension { .. } => others,
        ConsensusSpec::QualifiedMajority { alpha, .. } => {
            let mut d = 0i64;
            while !exceeds(have, n - d, *alpha) {
                d += 1;
            }
            d
        }
        _ => return Err(Error::StrategyNotApplicable { strategy: "deletion".into(), cell: k.name() }),
    };
    // drop the first `delete` non-matching voters
    let mut dropped = 0;
    let mut gone = std::collections::BTreeSet::new();
    for (v, p) in e.votes() {
        if dropped < delete && !keep(p) {
            gone.insert(*v);
            dropped += 1;
        }
    }
    let w = e.restrict(|v| !gone.contains(&v))?;
    Ok((Score::int(delete), Some(w)))
}

struct Young<'a> {
    groups: &'a [(Ranking, usize)],
    c: Candidate,
    rivals: &'a [Candidate],
    alpha: Ratio<i64>,
    best: Option<(usize, Vec<usize>)>,
    cur: Vec<usize>,
    nodes: u64,
}

impl Young<'_> {
    fn ok(&self) -> bool {
        let mut n = 0i64;
        let mut sup = vec![0i64; self.rivals.len()];
        for ((p, k), &del) in self.groups.iter().zip(&self.cur) {
            let left = (*k - del) as i64;
            n += left;
            for (j, &d) in self.rivals.iter().enumerate() {
                if p.prefers(self.c, d) {
                    sup[j] += left;
                }
            }
        }
        n > 0 && sup.iter().all(|&s| exceeds(s, n, self.alpha))
    }

    fn dfs(&mut self, gi: usize, deleted: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > YOUNG_LIMIT {
            return Err(Error::BoundsExceeded("deletion search node limit".into()));
        }
        if let Some((b, _)) = &self.best {
            if deleted >= *b {
                return Ok(());
            }
        }
        if gi == self.groups.len() {
            if self.ok() {
                self.best = Some((deleted, self.cur.clone()));
            }
            return Ok(());
        }
        for del in 0..=self.groups[gi].1 {
            self.cur[gi] = del;
            self.dfs(gi + 1, deleted + del)?;
        }
        self.cur[gi] = 0;
        Ok(())
    }
}

pub(super) fn young(k: &ConsensusSpec, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let alpha = match k {
        ConsensusSpec::Condorcet { alpha } => *alpha,
        _ => return Err(Error::StrategyNotApplicable { strategy: "young".into(), cell: k.name() }),
    };
    let c = r.top().expect("singleton");
    let rivals: Vec<Candidate> = e.candidates().iter().copied().filter(|&d| d != c).collect();
    let x = e.anonymize();
    // most harmful ballots first, so good solutions are met early
    let mut groups: Vec<(Ranking, usize)> = x.counts().iter().map(|(p, &k)| (*p, k as usize)).collect();
    groups.sort_by_key(|(p, _)| std::cmp::Reverse(p.position(c).expect("ranked")));
    let mut s = Young { groups: &groups, c, rivals: &rivals, alpha, best: None, cur: vec![0; groups.len()], nodes: 0 };
    s.dfs(0, 0)?;
    match s.best {
        None => Ok((Score::Infinite, None)),
        Some((d, plan)) => {
            let mut quota: std::collections::BTreeMap<Ranking, usize> =
                groups.iter().zip(&plan).map(|((p, _), &q)| (*p, q)).collect();
            let mut gone = std::collections::BTreeSet::new();
            for (v, p) in e.votes() {
                let q = quota.get_mut(p).expect("group");
                if *q > 0 {
                    *q -= 1;
                    gone.insert(*v);
                }
            }
            Ok((Score::int(d as i64), Some(e.restrict(|v| !gone.contains(&v))?)))
        }
    }
}

/// Minimum number of voters to delete so that `c` is a strict majority
/// Condorcet winner; infinite if no nonempty sub-electorate works.
pub fn young_score(e: &Election, c: Candidate) -> Result<Score> {
    let r = Ranking::new(&[c])?;
    Ok(young(&ConsensusSpec::cond(), e, &r)?.0)
}
