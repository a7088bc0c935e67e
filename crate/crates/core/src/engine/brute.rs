//! Exhaustive minimization over the consensus cell.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::consensus::ConsensusSpec;
use crate::election::{all_profiles, enumerate_situations, Election, EnumBounds, VotingSituation};
use crate::error::{Error, Result};
use crate::metrics::{normalize, ElectionDistance};
use crate::ranking::{all_rankings, Ranking};
use crate::score::Score;

use super::{votewise_parts, Bounds};

#[derive(Clone, Debug)]
pub struct BruteResult {
    pub score: Score,
    pub witness: Option<Election>,
    /// Distinct minimizers seen; for anonymous cells, counted up to voter permutation.
    pub minimizers: usize,
}

struct Best {
    score: Option<Score>,
    witness: Option<Election>,
    count: usize,
}

impl Best {
    fn new() -> Self {
        Best { score: None, witness: None, count: 0 }
    }

    fn offer(&mut self, s: Score, w: impl FnOnce() -> Result<Election>) -> Result<()> {
        match self.score {
            Some(b) if s > b && !s.ties_with(&b) => {}
            Some(b) if s.ties_with(&b) => self.count += 1,
            _ => {
                self.score = Some(s);
                self.witness = Some(w()?);
                self.count = 1;
            }
        }
        Ok(())
    }

    fn finish(self) -> BruteResult {
        match self.score {
            Some(s) => BruteResult { score: s, witness: self.witness, minimizers: self.count },
            None => BruteResult { score: Score::Infinite, witness: None, minimizers: 0 },
        }
    }
}

fn in_cell(k: &ConsensusSpec, f: &Election, r: &Ranking) -> Result<bool> {
    Ok(k.decide(f)?.choice == Some(*r))
}

fn tick(nodes: &mut u64, bounds: &Bounds) -> Result<()> {
    *nodes += 1;
    if *nodes > bounds.max_nodes {
        return Err(Error::BoundsExceeded(format!("more than {} search nodes", bounds.max_nodes)));
    }
    Ok(())
}

/// Distance from `e` to the cell of `r`, by enumeration.
pub fn brute_force_score(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    search(k, d, e, r, bounds)
}

pub(super) fn search(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    if let Some(space) = &bounds.space {
        return scan_space(k, d, e, r, space, bounds);
    }
    match d {
        ElectionDistance::Votewise { .. } => votewise(k, d, e, r, bounds),
        ElectionDistance::Tournament { .. } => same_size(k, d, e, r, bounds),
        ElectionDistance::Insertion => insertion(k, e, r, bounds),
        ElectionDistance::Deletion => deletion(k, e, r, bounds),
        ElectionDistance::Quotient { .. } => same_size(k, d, e, r, bounds),
        ElectionDistance::CampbellNitzan(_) | ElectionDistance::Custom(_) => Err(Error::SpaceRequired),
    }
}

fn scan_space(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking, space: &[Election], bounds: &Bounds) -> Result<BruteResult> {
    let mut best = Best::new();
    let mut nodes = 0;
    for f in space {
        tick(&mut nodes, bounds)?;
        if !in_cell(k, f, r)? {
            continue;
        }
        let s = d.distance(e, f)?;
        if s.is_finite() {
            best.offer(s, || Ok(f.clone()))?;
        }
    }
    Ok(best.finish())
}

struct Votewise<'a> {
    k: &'a ConsensusSpec,
    r: &'a Ranking,
    e: &'a Election,
    norm: &'a crate::metrics::Norm,
    /// Voter indices sorted by ballot.
    order: Vec<usize>,
    /// Per voter (in `order`): targets with their unit costs, cheapest first.
    options: Vec<Vec<(Ranking, Score)>>,
    /// Whether voter `order[i]` casts the same ballot as `order[i - 1]`.
    same_as_prev: Vec<bool>,
    anonymous: bool,
    cap: Option<Score>,
    chosen: Vec<usize>,
    best: Best,
    nodes: u64,
    max_nodes: u64,
}

impl Votewise<'_> {
    fn pruned(&self, partial: &Score) -> bool {
        let over = |b: &Score| partial > b && !partial.ties_with(b);
        self.best.score.as_ref().map(over).unwrap_or(false) || self.cap.as_ref().map(over).unwrap_or(false)
    }

    fn dfs(&mut self, i: usize, partial: Score) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BoundsExceeded(format!("more than {} search nodes", self.max_nodes)));
        }
        if self.pruned(&partial) {
            return Ok(());
        }
        if i == self.order.len() {
            let mut targets = vec![*self.r; self.order.len()];
            for (pos, &v) in self.order.iter().enumerate() {
                targets[v] = self.options[pos][self.chosen[pos]].0;
            }
            let member = if self.anonymous {
                let mut counts = BTreeMap::new();
                for t in &targets {
                    *counts.entry(*t).or_insert(0u32) += 1;
                }
                self.k.choice(&VotingSituation::new(self.e.candidates(), counts)?) == Some(*self.r)
            } else {
                in_cell(self.k, &self.e.with_rankings(&targets)?, self.r)?
            };
            if member {
                let e = self.e;
                self.best.offer(partial, || e.with_rankings(&targets))?;
            }
            return Ok(());
        }
        let start = if self.anonymous && self.same_as_prev[i] { self.chosen[i - 1] } else { 0 };
        for j in start..self.options[i].len() {
            let next = self.norm.combine(&partial, &self.options[i][j].1);
            if self.pruned(&next) {
                // options are sorted by cost, so later ones are no better
                break;
            }
            self.chosen[i] = j;
            self.dfs(i + 1, next)?;
        }
        Ok(())
    }
}

fn votewise(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    let (metric, norm, normalized) = votewise_parts(d).expect("votewise");
    metric.validate(e.m())?;
    let all = all_rankings(e.candidates());
    let ballots: Vec<Ranking> = e.rankings().copied().collect();
    let mut order: Vec<usize> = (0..ballots.len()).collect();
    order.sort_by_key(|&i| ballots[i]);
    let mut cache: BTreeMap<Ranking, Vec<(Ranking, Score)>> = BTreeMap::new();
    let options: Vec<Vec<(Ranking, Score)>> = order
        .iter()
        .map(|&i| {
            cache
                .entry(ballots[i])
                .or_insert_with(|| {
                    let mut v: Vec<(Ranking, Score)> =
                        all.iter().map(|t| (*t, norm.unit(metric.distance_unchecked(&ballots[i], t)))).collect();
                    v.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
                    v
                })
                .clone()
        })
        .collect();
    let same_as_prev = (0..order.len()).map(|i| i > 0 && ballots[order[i]] == ballots[order[i - 1]]).collect();
    // the cap is on the reported score; undo normalization for the raw sum
    let cap = bounds.upper.map(|u| match (normalized, norm) {
        (true, crate::metrics::Norm::Lp(_)) => match u {
            Score::Exact(x) => Score::Exact(x * e.n() as i64),
            Score::Approx(x) => Score::Approx(x * e.n() as f64),
            Score::Infinite => Score::Infinite,
        },
        _ => u,
    });
    let mut s = Votewise {
        k,
        r,
        e,
        norm,
        order,
        options,
        same_as_prev,
        anonymous: k.is_anonymous(),
        cap,
        chosen: vec![0; ballots.len()],
        best: Best::new(),
        nodes: 0,
        max_nodes: bounds.max_nodes,
    };
    s.dfs(0, norm.aggregate(std::iter::empty()))?;
    let mut res = s.best.finish();
    if res.score.is_finite() {
        res.score = normalize(norm, normalized, res.score, e.n());
    } else if bounds.upper.is_some() {
        return Err(Error::BoundsExceeded("no member within the upper bound".into()));
    }
    Ok(res)
}

/// Cells searched among elections on the same voters: tournament and quotient distances.
fn same_size(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    let mut best = Best::new();
    let mut nodes = 0;
    if k.is_anonymous() {
        let eb = EnumBounds { max_candidates: e.m(), max_voters: e.n() };
        for x in enumerate_situations(e.candidates(), e.n(), eb)? {
            tick(&mut nodes, bounds)?;
            if k.choice(&x) != Some(*r) {
                continue;
            }
            let f = e.with_rankings(&x.expanded())?;
            let s = d.distance(e, &f)?;
            if s.is_finite() {
                best.offer(s, || Ok(f))?;
            }
        }
    } else {
        let voters: Vec<_> = e.voters().collect();
        for f in all_profiles(e.candidates(), &voters)? {
            tick(&mut nodes, bounds)?;
            if !in_cell(k, &f, r)? {
                continue;
            }
            let s = d.distance(e, &f)?;
            if s.is_finite() {
                best.offer(s, || Ok(f))?;
            }
        }
    }
    Ok(best.finish())
}

fn insertion(k: &ConsensusSpec, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    let limit = bounds.extra_voters.unwrap_or(2 * e.n());
    let all = all_rankings(e.candidates());
    let mut nodes = 0;
    for add in 0..=limit {
        let mut best = Best::new();
        for extra in all.iter().copied().combinations_with_replacement(add) {
            tick(&mut nodes, bounds)?;
            let f = e.with_added(&extra)?;
            if in_cell(k, &f, r)? {
                best.offer(Score::int(add as i64), || Ok(f))?;
            }
        }
        if best.score.is_some() {
            return Ok(best.finish());
        }
    }
    Err(Error::BoundsExceeded(format!("no member with at most {limit} added voters")))
}

fn deletion(k: &ConsensusSpec, e: &Election, r: &Ranking, bounds: &Bounds) -> Result<BruteResult> {
    let votes = e.votes();
    let mut nodes = 0;
    let mut by_size: BTreeMap<usize, Best> = BTreeMap::new();
    if k.is_anonymous() {
        // deletion counts per ballot type
        let x = e.anonymize();
        let groups: Vec<(Ranking, u32)> = x.counts().iter().map(|(p, c)| (*p, *c)).collect();
        for plan in groups.iter().map(|(_, c)| 0..=*c).multi_cartesian_product() {
            tick(&mut nodes, bounds)?;
            let gone: u32 = plan.iter().sum();
            if gone as usize == e.n() {
                continue;
            }
            let counts: BTreeMap<Ranking, u32> =
                groups.iter().zip(&plan).filter(|((_, c), del)| c > del).map(|((p, c), del)| (*p, c - del)).collect();
            let y = VotingSituation::new(e.candidates(), counts)?;
            if k.choice(&y) == Some(*r) {
                by_size.entry(gone as usize).or_insert_with(Best::new).offer(Score::int(gone as i64), || {
                    let mut quota: BTreeMap<Ranking, u32> = groups.iter().zip(&plan).map(|((p, _), d)| (*p, *d)).collect();
                    let mut dropped = std::collections::BTreeSet::new();
                    for (v, p) in votes {
                        let q = quota.get_mut(p).expect("group");
                        if *q > 0 {
                            *q -= 1;
                            dropped.insert(*v);
                        }
                    }
                    e.restrict(|v| !dropped.contains(&v))
                })?;
            }
        }
    } else {
        if votes.len() > 20 {
            return Err(Error::BoundsExceeded(format!("{} voters for subset search", votes.len())));
        }
        for mask in 0u32..(1 << votes.len()) - 1 {
            tick(&mut nodes, bounds)?;
            let f = e.restrict(|v| votes.iter().position(|(w, _)| *w == v).map(|i| mask >> i & 1 == 0).unwrap_or(true))?;
            if in_cell(k, &f, r)? {
                let gone = mask.count_ones() as usize;
                by_size.entry(gone).or_insert_with(Best::new).offer(Score::int(gone as i64), || Ok(f))?;
            }
        }
    }
    Ok(by_size.into_iter().next().map(|(_, b)| b.finish()).unwrap_or_else(|| Best::new().finish()))
}
