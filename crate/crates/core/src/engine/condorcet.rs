//! Exact distance to a Condorcet cell under a votewise distance.
//!
//! Voters with the same ranking are grouped. Each group gets a list of
//! non-dominated moves, described by the rivals the target candidate passes
//! (gain), the rivals that pass it (loss) and the cost. A branch and bound
//! then covers every rival's support deficit at minimum total cost.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::consensus::ConsensusSpec;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::{normalize, ElectionDistance, MajorityMatrix, Norm, RankingMetric};
use crate::ranking::{all_rankings, Candidate, Ranking};
use crate::score::Score;

use super::votewise_parts;

const NODE_LIMIT: u64 = 50_000_000;
const ENUMERATION_LIMIT: usize = 7;

pub(super) fn supports(_metric: &RankingMetric) -> bool {
    true
}

#[derive(Clone, Debug)]
struct Move {
    gain: u32,
    loss: u32,
    base: u64,
    unit: i64,
    target: Ranking,
}

#[derive(Clone, Debug)]
struct Group {
    count: usize,
    moves: Vec<Move>,
}

fn mask_of(rivals: &[Candidate], cs: impl Iterator<Item = Candidate>) -> u32 {
    cs.map(|c| 1u32 << rivals.iter().position(|&r| r == c).expect("rival")).fold(0, |a, b| a | b)
}

fn moves_for(metric: &RankingMetric, norm: &Norm, pi: &Ranking, c: Candidate, rivals: &[Candidate]) -> Result<Vec<Move>> {
    let unit = |d: u64| -> i64 {
        match norm.integer_p() {
            Some(p) => (d as i64).pow(p),
            None => d as i64,
        }
    };
    let pos = pi.position(c).expect("ranked");
    let mut out = Vec::new();
    match metric {
        RankingMetric::Kendall => {
            for j in 1..=pos {
                let gain = mask_of(rivals, pi.as_slice()[pos - j..pos].iter().copied());
                out.push(Move { gain, loss: 0, base: j as u64, unit: unit(j as u64), target: pi.raise(c, j) });
            }
        }
        RankingMetric::Discrete => {
            if pos > 0 {
                let gain = mask_of(rivals, pi.as_slice()[..pos].iter().copied());
                out.push(Move { gain, loss: 0, base: 1, unit: unit(1), target: pi.with_first(c) });
            }
        }
        _ => {
            let m = pi.len();
            if m > ENUMERATION_LIMIT {
                return Err(Error::BoundsExceeded(format!("move enumeration over {m}! rankings")));
            }
            let mut cs: Vec<Candidate> = pi.as_slice().to_vec();
            cs.sort();
            let above = |r: &Ranking| {
                let p = r.position(c).expect("ranked");
                mask_of(rivals, r.as_slice()[..p].iter().copied())
            };
            let before = above(pi);
            let mut best: BTreeMap<(u32, u32), Move> = BTreeMap::new();
            for rho in all_rankings(&cs) {
                let after = above(&rho);
                let gain = before & !after;
                let loss = after & !before;
                if gain == 0 && loss == 0 {
                    continue;
                }
                let base = metric.distance_unchecked(pi, &rho);
                let mv = Move { gain, loss, base, unit: unit(base), target: rho };
                match best.get(&(gain, loss)) {
                    Some(old) if old.base <= base => {}
                    _ => {
                        best.insert((gain, loss), mv);
                    }
                }
            }
            let all: Vec<Move> = best.into_values().collect();
            for (i, a) in all.iter().enumerate() {
                let dominated = all.iter().enumerate().any(|(j, b)| {
                    j != i
                        && b.gain & a.gain == a.gain
                        && a.loss & b.loss == b.loss
                        && b.base <= a.base
                        && (b.gain != a.gain || b.loss != a.loss || j < i)
                });
                if !dominated && a.gain != 0 {
                    out.push(a.clone());
                }
            }
        }
    }
    out.sort_by(|a, b| b.gain.count_ones().cmp(&a.gain.count_ones()).then(a.unit.cmp(&b.unit)).then(a.target.cmp(&b.target)));
    Ok(out)
}

struct Search<'a> {
    groups: &'a [Group],
    /// allowed moves per group (indices), keep excluded
    allowed: Vec<Vec<usize>>,
    /// suffix capacity: suffix_cap[g][j] = voters in groups >= g able to gain rival j
    suffix_cap: Vec<Vec<i64>>,
    cap_mask: Vec<u32>,
    ratio: Option<(i64, i64)>,
    rivals: usize,
    best: Option<i64>,
    best_plan: Vec<Vec<usize>>,
    plan: Vec<Vec<usize>>,
    first_only: bool,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(groups: &'a [Group], rivals: usize, max_base: Option<u64>, first_only: bool) -> Self {
        let allowed: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| (0..g.moves.len()).filter(|&i| max_base.map(|t| g.moves[i].base <= t).unwrap_or(true)).collect())
            .collect();
        let cap_mask: Vec<u32> =
            groups.iter().zip(&allowed).map(|(g, a)| a.iter().fold(0u32, |m, &i| m | g.moves[i].gain)).collect();
        let mut suffix_cap = vec![vec![0i64; rivals]; groups.len() + 1];
        for gi in (0..groups.len()).rev() {
            for j in 0..rivals {
                let here = if cap_mask[gi] >> j & 1 == 1 { groups[gi].count as i64 } else { 0 };
                suffix_cap[gi][j] = suffix_cap[gi + 1][j] + here;
            }
        }
        let mut ratio: Option<(i64, i64)> = None;
        for (g, a) in groups.iter().zip(&allowed) {
            for &i in a {
                let mv = &g.moves[i];
                let gain = mv.gain.count_ones() as i64;
                if gain == 0 || mv.unit == 0 {
                    continue;
                }
                ratio = match ratio {
                    Some((bg, bu)) if bg * mv.unit >= gain * bu => Some((bg, bu)),
                    _ => Some((gain, mv.unit)),
                };
            }
        }
        Search {
            groups,
            allowed,
            suffix_cap,
            cap_mask,
            ratio,
            rivals,
            best: None,
            best_plan: Vec::new(),
            plan: vec![Vec::new(); groups.len()],
            first_only,
            nodes: 0,
        }
    }

    fn lower_bound(&self, needs: &[i64]) -> Option<i64> {
        let total: i64 = needs.iter().filter(|&&x| x > 0).sum();
        if total == 0 {
            return Some(0);
        }
        let (g, u) = self.ratio?;
        Some((total * u + g - 1) / g)
    }

    fn feasible(&self, gi: usize, left: usize, needs: &[i64]) -> bool {
        (0..self.rivals).all(|j| {
            if needs[j] <= 0 {
                return true;
            }
            let here = if gi < self.groups.len() && self.cap_mask[gi] >> j & 1 == 1 { left as i64 } else { 0 };
            let rest = if gi < self.groups.len() { self.suffix_cap[gi + 1][j] } else { 0 };
            here + rest >= needs[j]
        })
    }

    fn done(&self) -> bool {
        self.first_only && self.best.is_some()
    }

    fn dfs(&mut self, gi: usize, left: usize, min_move: usize, cost: i64, needs: &mut Vec<i64>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(Error::BoundsExceeded("condorcet search node limit".into()));
        }
        if self.done() {
            return Ok(());
        }
        if needs.iter().all(|&x| x <= 0) {
            if self.best.map(|b| cost < b).unwrap_or(true) {
                self.best = Some(cost);
                self.best_plan = self.plan.clone();
            }
            return Ok(());
        }
        if gi == self.groups.len() {
            return Ok(());
        }
        let lb = match self.lower_bound(needs) {
            Some(lb) => lb,
            None => return Ok(()),
        };
        if let Some(b) = self.best {
            if cost + lb >= b {
                return Ok(());
            }
        }
        if !self.feasible(gi, left, needs) {
            return Ok(());
        }
        if left > 0 {
            let allowed = self.allowed[gi].clone();
            for (k, &mi) in allowed.iter().enumerate() {
                if k < min_move {
                    continue;
                }
                let mv = self.groups[gi].moves[mi].clone();
                for j in 0..self.rivals {
                    if mv.gain >> j & 1 == 1 {
                        needs[j] -= 1;
                    }
                    if mv.loss >> j & 1 == 1 {
                        needs[j] += 1;
                    }
                }
                self.plan[gi].push(mi);
                self.dfs(gi, left - 1, k, cost + mv.unit, needs)?;
                self.plan[gi].pop();
                for j in 0..self.rivals {
                    if mv.gain >> j & 1 == 1 {
                        needs[j] += 1;
                    }
                    if mv.loss >> j & 1 == 1 {
                        needs[j] -= 1;
                    }
                }
                if self.done() {
                    return Ok(());
                }
            }
        }
        // remaining voters of this group keep their ballots
        let next_left = self.groups.get(gi + 1).map(|g| g.count).unwrap_or(0);
        self.dfs(gi + 1, next_left, 0, cost, needs)
    }
}

/// Minimum votewise distance from `e` to the cell where `c` is an
/// alpha-Condorcet winner, with the per-voter target rankings.
pub fn condorcet_votewise_score(
    metric: &RankingMetric,
    norm: &Norm,
    alpha: Ratio<i64>,
    e: &Election,
    c: Candidate,
) -> Result<(Score, Vec<Ranking>)> {
    metric.validate(e.m())?;
    let rivals: Vec<Candidate> = e.candidates().iter().copied().filter(|&x| x != c).collect();
    if rivals.len() > 31 {
        return Err(Error::TooManyCandidates(rivals.len() + 1));
    }
    let situation = e.anonymize();
    let mm = MajorityMatrix::of_situation(&situation);
    let n = e.n() as i64;
    let required = (alpha * n).floor().to_integer() + 1;
    let mut needs: Vec<i64> = rivals.iter().map(|&d| required - (n + mm.net(c, d) as i64) / 2).collect();

    let mut groups = Vec::new();
    let mut rankings = Vec::new();
    for (pi, &k) in situation.counts() {
        groups.push(Group { count: k as usize, moves: moves_for(metric, norm, pi, c, &rivals)? });
        rankings.push(*pi);
    }
    let first_left = groups.first().map(|g| g.count).unwrap_or(0);

    let (score, plan) = if *norm == Norm::Linf {
        let mut thresholds: Vec<u64> = groups.iter().flat_map(|g| g.moves.iter().map(|m| m.base)).collect();
        thresholds.push(0);
        thresholds.sort_unstable();
        thresholds.dedup();
        let mut found = None;
        for t in thresholds {
            let mut s = Search::new(&groups, rivals.len(), Some(t), true);
            s.dfs(0, first_left, 0, 0, &mut needs.clone())?;
            if s.best.is_some() {
                found = Some((Score::int(t as i64), s.best_plan));
                break;
            }
        }
        found.ok_or_else(|| Error::BoundsExceeded("no feasible threshold".into()))?
    } else {
        let mut s = Search::new(&groups, rivals.len(), None, false);
        s.dfs(0, first_left, 0, 0, &mut needs)?;
        let best = s.best.ok_or_else(|| Error::BoundsExceeded("condorcet cell unreachable".into()))?;
        (Score::int(best), s.best_plan)
    };

    // assign planned moves to the voters of each group, in voter order
    let mut queue: BTreeMap<Ranking, Vec<Ranking>> = BTreeMap::new();
    for (gi, pi) in rankings.iter().enumerate() {
        let targets = plan.get(gi).map(|p| p.iter().map(|&mi| groups[gi].moves[mi].target).collect()).unwrap_or_default();
        queue.insert(*pi, targets);
    }
    let mut out = Vec::with_capacity(e.n());
    for pi in e.rankings() {
        let q = queue.get_mut(pi).expect("group");
        out.push(if q.is_empty() { *pi } else { q.remove(0) });
    }
    Ok((score, out))
}

pub(super) fn score(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let (metric, norm, normalized) = votewise_parts(d).ok_or(Error::NotForbiddenSet)?;
    let alpha = match k {
        ConsensusSpec::Condorcet { alpha } => *alpha,
        _ => return Err(Error::NotForbiddenSet),
    };
    let c = r.top().expect("singleton outcome");
    let (s, targets) = condorcet_votewise_score(metric, norm, alpha, e, c)?;
    Ok((normalize(norm, normalized, s, e.n()), Some(e.with_rankings(&targets)?)))
}

/// Minimum number of adjacent swaps making `c` a strict majority Condorcet winner.
pub fn dodgson_score(e: &Election, c: Candidate) -> Result<Score> {
    Ok(condorcet_votewise_score(&RankingMetric::Kendall, &Norm::l1(), Ratio::new(1, 2), e, c)?.0)
}

/// Minimum number of ballots to replace so that `c` becomes a strict majority
/// Condorcet winner.
pub fn vrr_score(e: &Election, c: Candidate) -> Result<Score> {
    Ok(condorcet_votewise_score(&RankingMetric::Discrete, &Norm::l1(), Ratio::new(1, 2), e, c)?.0)
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

    #[test]
    fn cyclic_dodgson() {
        let e = sit(3, &[(&[0, 1, 2], 1), (&[1, 2, 0], 1), (&[2, 0, 1], 1)]);
        for c in 0..3 {
            assert_eq!(dodgson_score(&e, Candidate(c)).unwrap(), Score::int(1));
        }
    }

    #[test]
    fn cmp_failure_counts() {
        let e = sit(2, &[(&[0, 1], 2), (&[1, 0], 3)]);
        assert_eq!(vrr_score(&e, Candidate(0)).unwrap(), Score::int(1));
        assert_eq!(dodgson_score(&e, Candidate(0)).unwrap(), Score::int(1));
        assert_eq!(dodgson_score(&e, Candidate(1)).unwrap(), Score::zero());
        let e3 = e.scale(3).unwrap();
        assert_eq!(dodgson_score(&e3, Candidate(0)).unwrap(), Score::int(2));
    }

    #[test]
    fn generic_moves_match_raises() {
        let e = sit(4, &[(&[0, 1, 2, 3], 1), (&[3, 2, 1, 0], 2), (&[1, 3, 0, 2], 1)]);
        for c in 0..4 {
            let a = condorcet_votewise_score(&RankingMetric::Kendall, &Norm::l1(), Ratio::new(1, 2), &e, Candidate(c)).unwrap().0;
            let w = RankingMetric::Weighted(vec![3, 2, 1, 0]);
            let b = condorcet_votewise_score(&w, &Norm::l1(), Ratio::new(1, 2), &e, Candidate(c)).unwrap().0;
            // footrule with Borda weights is at most twice Kendall
            assert!(b <= Score::Exact(a.as_exact().unwrap() * 2));
        }
    }
}
