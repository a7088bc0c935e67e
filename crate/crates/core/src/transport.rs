//! Quotient distances: minimum cost matchings between anonymous profiles
//! and the chained-path quotient over a finite election space.

use std::collections::BTreeMap;

use num_traits::{Bounded, Num, ToPrimitive};
use serde::Serialize;

use crate::election::{Election, VotingSituation};
use crate::error::{Error, Result};
use crate::metrics::{Norm, RankingMetric};
use crate::score::Score;

/// Pairwise base distances between the expanded rankings of two situations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostMatrix {
    pub n: usize,
    pub cells: Vec<u64>,
}

impl CostMatrix {
    pub fn between(metric: &RankingMetric, x: &VotingSituation, y: &VotingSituation) -> CostMatrix {
        let a = x.expanded();
        let b = y.expanded();
        let n = a.len();
        let mut cells = Vec::with_capacity(n * n);
        for ra in &a {
            for rb in &b {
                cells.push(metric.distance_unchecked(ra, rb));
            }
        }
        CostMatrix { n, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells[i * self.n + j]
    }
}

/// A perfect matching: row `i` goes to column `assignment[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub assignment: Vec<usize>,
    pub cost: Score,
}

/// Minimum cost perfect matching on a square matrix (row-major), via the
/// shortest augmenting path method with potentials. O(n^3).
pub fn hungarian<T>(n: usize, cost: &[T]) -> (T, Vec<usize>)
where
    T: Copy + PartialOrd + Num + Bounded,
{
    if n == 0 {
        return (T::zero(), Vec::new());
    }
    let four = T::one() + T::one() + T::one() + T::one();
    let inf = T::max_value() / four;
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    // p[j]: row matched to column j (1-based, 0 = none)
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    let total = assignment.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + cost[i * n + j]);
    (total, assignment)
}

fn perfect_matching_under(n: usize, cost: &[u64], threshold: u64) -> Option<Vec<usize>> {
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    fn augment(
        i: usize,
        n: usize,
        cost: &[u64],
        threshold: u64,
        seen: &mut [bool],
        match_col: &mut [Option<usize>],
    ) -> bool {
        for j in 0..n {
            if cost[i * n + j] <= threshold && !seen[j] {
                seen[j] = true;
                let free = match match_col[j] {
                    None => true,
                    Some(k) => augment(k, n, cost, threshold, seen, match_col),
                };
                if free {
                    match_col[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, n, cost, threshold, &mut seen, &mut match_col) {
            return None;
        }
    }
    let mut assignment = vec![0usize; n];
    for (j, m) in match_col.iter().enumerate() {
        assignment[m.expect("perfect")] = j;
    }
    Some(assignment)
}

/// Perfect matching minimizing the largest matched cost.
pub fn bottleneck(n: usize, cost: &[u64]) -> (u64, Vec<usize>) {
    if n == 0 {
        return (0, Vec::new());
    }
    let mut values: Vec<u64> = cost.to_vec();
    values.sort_unstable();
    values.dedup();
    let (mut lo, mut hi) = (0usize, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_under(n, cost, values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let assignment = perfect_matching_under(n, cost, values[lo]).expect("complete bipartite graph");
    (values[lo], assignment)
}

/// Optimal matching of the voters of `x` to those of `y` under the norm.
pub fn optimal_matching(metric: &RankingMetric, norm: &Norm, x: &VotingSituation, y: &VotingSituation) -> Result<Option<Matching>> {
    if x.candidates() != y.candidates() || x.n() != y.n() {
        return Ok(None);
    }
    metric.validate(x.m())?;
    let cm = CostMatrix::between(metric, x, y);
    let n = cm.n;
    let m = match norm {
        Norm::Linf => {
            let (c, a) = bottleneck(n, &cm.cells);
            Matching { assignment: a, cost: Score::int(c as i64) }
        }
        Norm::Lp(p) => match norm.integer_p() {
            Some(q) => {
                let costs: Vec<i64> = cm.cells.iter().map(|&d| (d as i64).pow(q)).collect();
                let (c, a) = hungarian(n, &costs);
                Matching { assignment: a, cost: Score::int(c) }
            }
            None => {
                let pf = p.to_f64().unwrap_or(1.0);
                let costs: Vec<f64> = cm.cells.iter().map(|&d| (d as f64).powf(pf)).collect();
                let (c, a) = hungarian(n, &costs);
                Matching { assignment: a, cost: Score::Approx(c) }
            }
        },
    };
    Ok(Some(m))
}

/// The quotient of a votewise distance under voter relabeling: the earth
/// mover distance between the two situations. Infinite across different
/// candidate sets or voter counts.
pub fn quotient_votewise_distance(metric: &RankingMetric, norm: &Norm, x: &VotingSituation, y: &VotingSituation) -> Result<Score> {
    Ok(optimal_matching(metric, norm, x, y)?.map(|m| m.cost).unwrap_or(Score::Infinite))
}

/// Classes of a finite space and the one-step class distance
/// `min d(e, f)` over representatives.
struct BlockGraph<K> {
    keys: Vec<K>,
    weight: Vec<Vec<Score>>,
}

impl<K: Ord + Clone> BlockGraph<K> {
    fn build(
        d: &dyn Fn(&Election, &Election) -> Result<Score>,
        key: &dyn Fn(&Election) -> K,
        space: &[Election],
    ) -> Result<Self> {
        let mut classes: BTreeMap<K, Vec<&Election>> = BTreeMap::new();
        for e in space {
            classes.entry(key(e)).or_default().push(e);
        }
        let keys: Vec<K> = classes.keys().cloned().collect();
        let members: Vec<&Vec<&Election>> = classes.values().collect();
        let c = keys.len();
        let mut weight = vec![vec![Score::Infinite; c]; c];
        for i in 0..c {
            for j in 0..c {
                if i == j {
                    weight[i][j] = Score::zero();
                    continue;
                }
                let mut best = Score::Infinite;
                for e in members[i] {
                    for f in members[j] {
                        best = best.min(d(e, f)?);
                    }
                }
                weight[i][j] = best;
            }
        }
        Ok(BlockGraph { keys, weight })
    }

    fn index(&self, k: &K) -> Option<usize> {
        self.keys.binary_search(k).ok()
    }

    fn shortest_from(&self, s: usize) -> Vec<Score> {
        let c = self.keys.len();
        let mut dist = vec![Score::Infinite; c];
        let mut done = vec![false; c];
        dist[s] = Score::zero();
        for _ in 0..c {
            let u = (0..c).filter(|&i| !done[i]).min_by(|&a, &b| dist[a].cmp(&dist[b]));
            let u = match u {
                Some(u) if dist[u].is_finite() => u,
                _ => break,
            };
            done[u] = true;
            for w in 0..c {
                let cand = dist[u].add(&self.weight[u][w]);
                if cand < dist[w] {
                    dist[w] = cand;
                }
            }
        }
        dist
    }
}

/// Infimum over chained admissible paths from the class of `x` to the class
/// of `y`, where consecutive legs may jump freely inside a class. Computed as
/// a shortest path on the graph of classes present in `space`.
pub fn quotient_path_distance<K: Ord + Clone>(
    d: &dyn Fn(&Election, &Election) -> Result<Score>,
    key: &dyn Fn(&Election) -> K,
    x: &Election,
    y: &Election,
    space: &[Election],
) -> Result<Score> {
    let g = BlockGraph::build(d, key, space)?;
    let (i, j) = match (g.index(&key(x)), g.index(&key(y))) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(Error::Disconnected),
    };
    let dist = g.shortest_from(i)[j];
    if dist.is_finite() {
        Ok(dist)
    } else {
        Err(Error::Disconnected)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub classes: usize,
    /// Representatives of two classes whose path distance is strictly below
    /// the one-step distance, with both values.
    pub witness: Option<(Election, Election, Score, Score)>,
}

/// Whether the one-step quotient already equals the path quotient on every
/// pair of classes in `space`.
pub fn is_simple<K: Ord + Clone>(
    d: &dyn Fn(&Election, &Election) -> Result<Score>,
    key: &dyn Fn(&Election) -> K,
    space: &[Election],
) -> Result<SimplicityReport> {
    let g = BlockGraph::build(d, key, space)?;
    let c = g.keys.len();
    for i in 0..c {
        let dist = g.shortest_from(i);
        for j in 0..c {
            if dist[j] < g.weight[i][j] {
                let rep = |k: usize| space.iter().find(|e| key(e) == g.keys[k]).cloned().expect("class member");
                return Ok(SimplicityReport {
                    simple: false,
                    classes: c,
                    witness: Some((rep(i), rep(j), g.weight[i][j], dist[j])),
                });
            }
        }
    }
    Ok(SimplicityReport { simple: true, classes: c, witness: None })
}
