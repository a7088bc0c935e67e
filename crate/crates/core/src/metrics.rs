//! Distances on rankings, norms, and the lifted distances on elections.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::election::{Election, VotingSituation};
use crate::error::{Error, Result};
use crate::ranking::{Candidate, Ranking, MAX_CANDIDATES};
use crate::rule::{Outcome, RuleHandle};
use crate::score::Score;
use crate::transport;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankingMetric {
    Discrete,
    Kendall,
    Spearman,
    /// Positional weights, best rank first.
    Weighted(Vec<i64>),
}

impl RankingMetric {
    pub fn name(&self) -> String {
        match self {
            RankingMetric::Discrete => "hamming".into(),
            RankingMetric::Kendall => "kendall".into(),
            RankingMetric::Spearman => "spearman".into(),
            RankingMetric::Weighted(w) => {
                format!("weighted:{}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }

    /// Checks parameters against an `m`-candidate universe.
    pub fn validate(&self, m: usize) -> Result<()> {
        if let RankingMetric::Weighted(w) = self {
            validate_weights(w)?;
            if w.len() != m {
                return Err(Error::InvalidParameter(format!("{} weights for {} candidates", w.len(), m)));
            }
        }
        Ok(())
    }

    pub fn distance(&self, a: &Ranking, b: &Ranking) -> Result<u64> {
        let mut x = a.as_slice().to_vec();
        let mut y = b.as_slice().to_vec();
        x.sort();
        y.sort();
        if x != y {
            return Err(Error::MismatchedCandidates);
        }
        if let RankingMetric::Weighted(w) = self {
            if w.len() != a.len() {
                return Err(Error::InvalidParameter(format!("{} weights for {} candidates", w.len(), a.len())));
            }
        }
        Ok(self.distance_unchecked(a, b))
    }

    /// Distance between two rankings of the same candidates; no validation.
    pub fn distance_unchecked(&self, a: &Ranking, b: &Ranking) -> u64 {
        match self {
            RankingMetric::Discrete => (a != b) as u64,
            RankingMetric::Kendall => {
                let pb = b.positions();
                let s = a.as_slice();
                let mut inv = 0;
                for i in 0..s.len() {
                    for j in i + 1..s.len() {
                        if pb[s[i].index()] > pb[s[j].index()] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            RankingMetric::Spearman => {
                let pb = b.positions();
                a.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64 - pb[c.index()] as i64).unsigned_abs())
                    .sum()
            }
            RankingMetric::Weighted(w) => {
                let pb = b.positions();
                a.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (w[i] - w[pb[c.index()] as usize]).unsigned_abs())
                    .sum()
            }
        }
    }
}

pub fn validate_weights(w: &[i64]) -> Result<()> {
    let ok = w.len() >= 2 && w.windows(2).all(|p| p[0] >= p[1]) && w[0] > w[w.len() - 1];
    if ok {
        Ok(())
    } else {
        Err(Error::MalformedWeights(w.to_vec()))
    }
}

pub fn ranking_distance(metric: &RankingMetric, a: &Ranking, b: &Ranking) -> Result<Score> {
    Ok(Score::int(metric.distance(a, b)? as i64))
}

/// A symmetric monotone norm family. Lp values are kept as the unrooted sum
/// of p-th powers so that comparisons stay exact for integer p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Norm {
    Lp(Ratio<i64>),
    Linf,
}

impl Norm {
    pub fn l1() -> Norm {
        Norm::Lp(Ratio::one())
    }

    pub fn lp(p: i64) -> Norm {
        Norm::Lp(Ratio::from_integer(p))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Norm::Lp(p) if *p < Ratio::one() => Err(Error::InvalidParameter(format!("p = {p} < 1"))),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Norm::Lp(p) if p.is_integer() => format!("l{}", p.numer()),
            Norm::Lp(p) => format!("l{}/{}", p.numer(), p.denom()),
            Norm::Linf => "linf".into(),
        }
    }

    pub fn integer_p(&self) -> Option<u32> {
        match self {
            Norm::Lp(p) if p.is_integer() => Some(*p.numer() as u32),
            _ => None,
        }
    }

    /// Contribution of one coordinate of size `d`.
    pub fn unit(&self, d: u64) -> Score {
        match self {
            Norm::Lp(p) => match self.integer_p() {
                Some(q) => Score::int((d as i64).pow(q)),
                None => Score::Approx((d as f64).powf(p.to_f64().unwrap_or(1.0))),
            },
            Norm::Linf => Score::int(d as i64),
        }
    }

    /// Aggregates coordinates `(value, multiplicity)`.
    pub fn aggregate(&self, items: impl IntoIterator<Item = (u64, u64)>) -> Score {
        match self {
            Norm::Linf => Score::int(items.into_iter().filter(|(_, k)| *k > 0).map(|(d, _)| d).max().unwrap_or(0) as i64),
            Norm::Lp(_) => match self.integer_p() {
                Some(q) => Score::int(items.into_iter().map(|(d, k)| (d as i64).pow(q) * k as i64).sum()),
                None => {
                    let p = match self {
                        Norm::Lp(p) => p.to_f64().unwrap_or(1.0),
                        Norm::Linf => unreachable!(),
                    };
                    Score::Approx(items.into_iter().map(|(d, k)| (d as f64).powf(p) * k as f64).sum())
                }
            },
        }
    }

    /// Combines two partial aggregates over disjoint coordinates.
    pub fn combine(&self, a: &Score, b: &Score) -> Score {
        match self {
            Norm::Linf => (*a).max(*b),
            Norm::Lp(_) => a.add(b),
        }
    }

    /// The norm itself (root taken), for display.
    pub fn rooted(&self, s: &Score) -> f64 {
        match self {
            Norm::Lp(p) => s.as_f64().powf(1.0 / p.to_f64().unwrap_or(1.0)),
            Norm::Linf => s.as_f64(),
        }
    }
}

/// Net pairwise support, indexed by candidate id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MajorityMatrix {
    candidates: Vec<Candidate>,
    net: [[i32; MAX_CANDIDATES]; MAX_CANDIDATES],
}

impl MajorityMatrix {
    pub fn of_situation(s: &VotingSituation) -> MajorityMatrix {
        let mut net = [[0i32; MAX_CANDIDATES]; MAX_CANDIDATES];
        for (r, &k) in s.counts() {
            let v = r.as_slice();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    net[v[i].index()][v[j].index()] += k as i32;
                    net[v[j].index()][v[i].index()] -= k as i32;
                }
            }
        }
        MajorityMatrix { candidates: s.candidates().to_vec(), net }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    /// Voters preferring `a` to `b` minus voters preferring `b` to `a`.
    pub fn net(&self, a: Candidate, b: Candidate) -> i32 {
        self.net[a.index()][b.index()]
    }

    pub fn sign(&self, a: Candidate, b: Candidate) -> i32 {
        self.net(a, b).signum()
    }

    /// Entrywise l1 distance over all ordered pairs, on margins or on signs.
    pub fn l1_distance(&self, other: &MajorityMatrix, reduced: bool) -> i64 {
        let mut total = 0i64;
        for &a in &self.candidates {
            for &b in &self.candidates {
                if a == b {
                    continue;
                }
                let (x, y) = if reduced {
                    (self.sign(a, b), other.sign(a, b))
                } else {
                    (self.net(a, b), other.net(a, b))
                };
                total += (x - y).abs() as i64;
            }
        }
        total
    }
}

impl fmt::Debug for MajorityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows = Vec::new();
        for &a in &self.candidates {
            let row: Vec<i32> = self.candidates.iter().map(|&b| self.net(a, b)).collect();
            rows.push(row);
        }
        write!(f, "{rows:?}")
    }
}

pub fn majority_matrix(e: &Election) -> MajorityMatrix {
    MajorityMatrix::of_situation(&e.anonymize())
}

/// Tournament distance between elections with the same candidates and the
/// same number of voters; infinite otherwise.
pub fn tournament_distance(e: &Election, f: &Election, reduced: bool) -> Score {
    if e.candidates() != f.candidates() || e.n() != f.n() {
        return Score::Infinite;
    }
    Score::int(majority_matrix(e).l1_distance(&majority_matrix(f), reduced))
}

/// Number of voters to delete from `e` to obtain `f` (identity respecting).
pub fn deletion_distance(e: &Election, f: &Election) -> Score {
    if e.candidates() != f.candidates() || f.n() > e.n() {
        return Score::Infinite;
    }
    let contained = f.votes().iter().all(|(v, r)| e.vote_of(*v) == Some(r));
    if contained {
        Score::int((e.n() - f.n()) as i64)
    } else {
        Score::Infinite
    }
}

pub fn insertion_distance(e: &Election, f: &Election) -> Score {
    deletion_distance(f, e)
}

pub fn votewise_distance(metric: &RankingMetric, norm: &Norm, normalized: bool, e: &Election, f: &Election) -> Result<Score> {
    if e.candidates() != f.candidates() || !e.same_voters(f) {
        return Ok(Score::Infinite);
    }
    metric.validate(e.m())?;
    let ds = e
        .rankings()
        .zip(f.rankings())
        .map(|(a, b)| (metric.distance_unchecked(a, b), 1u64));
    let total = norm.aggregate(ds);
    Ok(normalize(norm, normalized, total, e.n()))
}

/// Power-mean normalization: Lp sums are divided by n; Linf is unchanged.
pub fn normalize(norm: &Norm, normalized: bool, total: Score, n: usize) -> Score {
    match norm {
        Norm::Lp(_) if normalized => total.div_int(n as i64),
        _ => total,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CnVariant {
    One,
    Two,
    Three,
}

/// Precomputed rule outputs (and, for variant 3, the shortest path table)
/// over a finite election space.
pub struct CnSpace {
    variant: CnVariant,
    rule: RuleHandle,
    index: HashMap<Election, usize>,
    outcomes: Vec<Outcome>,
    hops: Option<Vec<Vec<Option<u32>>>>,
}

fn cn_one_step(a: &Outcome, b: &Outcome) -> bool {
    (a.len() == 1 && a.is_subset(b)) || (b.len() == 1 && b.is_subset(a))
}

impl CnSpace {
    pub fn new(variant: CnVariant, rule: RuleHandle, space: &[Election]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut outcomes = Vec::new();
        for e in space {
            if index.contains_key(e) {
                continue;
            }
            index.insert(e.clone(), outcomes.len());
            outcomes.push(rule.apply(e)?);
        }
        let hops = if variant == CnVariant::Three {
            let n = outcomes.len();
            let mut adj = vec![Vec::new(); n];
            for i in 0..n {
                for j in 0..n {
                    if i != j && cn_one_step(&outcomes[i], &outcomes[j]) {
                        adj[i].push(j);
                    }
                }
            }
            let mut table = Vec::with_capacity(n);
            for s in 0..n {
                let mut dist = vec![None; n];
                dist[s] = Some(0u32);
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    let du = dist[u].expect("visited");
                    for &w in &adj[u] {
                        if dist[w].is_none() {
                            dist[w] = Some(du + 1);
                            q.push_back(w);
                        }
                    }
                }
                table.push(dist);
            }
            Some(table)
        } else {
            None
        };
        Ok(CnSpace { variant, rule, index, outcomes, hops })
    }

    pub fn rule(&self) -> &RuleHandle {
        &self.rule
    }

    pub fn variant(&self) -> CnVariant {
        self.variant
    }

    fn outcome(&self, e: &Election) -> Result<(Option<usize>, Outcome)> {
        match self.index.get(e) {
            Some(&i) => Ok((Some(i), self.outcomes[i].clone())),
            None => Ok((None, self.rule.apply(e)?)),
        }
    }

    pub fn distance(&self, e: &Election, f: &Election) -> Result<Score> {
        if e == f {
            return Ok(Score::zero());
        }
        let (ie, re) = self.outcome(e)?;
        let (jf, rf) = self.outcome(f)?;
        Ok(match self.variant {
            CnVariant::One => Score::int(if cn_one_step(&re, &rf) { 1 } else { 2 }),
            CnVariant::Two => {
                if re.len() == 1 && re == rf {
                    Score::zero()
                } else {
                    Score::int(if cn_one_step(&re, &rf) { 1 } else { 2 })
                }
            }
            CnVariant::Three => {
                let (i, j) = match (ie, jf) {
                    (Some(i), Some(j)) => (i, j),
                    _ => return Err(Error::SpaceRequired),
                };
                match self.hops.as_ref().expect("variant 3 table")[i][j] {
                    Some(h) => Score::int(h as i64),
                    None => Score::Infinite,
                }
            }
        })
    }
}

/// Campbell-Nitzan distance for a single pair. Variant 3 needs a space.
pub fn campbell_nitzan_distance(
    variant: CnVariant,
    rule: &RuleHandle,
    e: &Election,
    f: &Election,
    space: Option<&[Election]>,
) -> Result<Score> {
    let pts: Vec<Election> = match (variant, space) {
        (CnVariant::Three, None) => return Err(Error::SpaceRequired),
        (CnVariant::Three, Some(s)) => s.to_vec(),
        _ => Vec::new(),
    };
    CnSpace::new(variant, rule.clone(), &pts)?.distance(e, f)
}

/// User supplied distance on elections.
pub trait ElectionMetric: Send + Sync {
    fn name(&self) -> String;
    fn distance(&self, e: &Election, f: &Election) -> Result<Score>;
}

#[derive(Clone)]
pub enum ElectionDistance {
    Votewise { metric: RankingMetric, norm: Norm, normalized: bool },
    Tournament { reduced: bool },
    Insertion,
    Deletion,
    CampbellNitzan(Arc<CnSpace>),
    /// Earth mover distance between the anonymized elections.
    Quotient { metric: RankingMetric, norm: Norm },
    Custom(Arc<dyn ElectionMetric>),
}

impl fmt::Debug for ElectionDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl ElectionDistance {
    pub fn votewise(metric: RankingMetric, norm: Norm) -> Self {
        ElectionDistance::Votewise { metric, norm, normalized: false }
    }

    pub fn kendall() -> Self {
        Self::votewise(RankingMetric::Kendall, Norm::l1())
    }

    pub fn hamming() -> Self {
        Self::votewise(RankingMetric::Discrete, Norm::l1())
    }

    pub fn spearman() -> Self {
        Self::votewise(RankingMetric::Spearman, Norm::l1())
    }

    pub fn name(&self) -> String {
        match self {
            ElectionDistance::Votewise { metric, norm, normalized } => {
                format!("{}/{}{}", metric.name(), norm.name(), if *normalized { "/normalized" } else { "" })
            }
            ElectionDistance::Tournament { reduced: false } => "tournament".into(),
            ElectionDistance::Tournament { reduced: true } => "reduced-tournament".into(),
            ElectionDistance::Insertion => "insertion".into(),
            ElectionDistance::Deletion => "deletion".into(),
            ElectionDistance::CampbellNitzan(s) => {
                let v = match s.variant() {
                    CnVariant::One => 1,
                    CnVariant::Two => 2,
                    CnVariant::Three => 3,
                };
                format!("cn{}({})", v, s.rule().name())
            }
            ElectionDistance::Quotient { metric, norm } => format!("emd({}/{})", metric.name(), norm.name()),
            ElectionDistance::Custom(c) => c.name(),
        }
    }

    pub fn distance(&self, e: &Election, f: &Election) -> Result<Score> {
        match self {
            ElectionDistance::Votewise { metric, norm, normalized } => votewise_distance(metric, norm, *normalized, e, f),
            ElectionDistance::Tournament { reduced } => Ok(tournament_distance(e, f, *reduced)),
            ElectionDistance::Insertion => Ok(insertion_distance(e, f)),
            ElectionDistance::Deletion => Ok(deletion_distance(e, f)),
            ElectionDistance::CampbellNitzan(s) => s.distance(e, f),
            ElectionDistance::Quotient { metric, norm } => {
                transport::quotient_votewise_distance(metric, norm, &e.anonymize(), &f.anonymize())
            }
            ElectionDistance::Custom(c) => c.distance(e, f),
        }
    }

    /// Whether `d(gE, gE') = d(E, E')` for every voter bijection, i.e. only
    /// the anonymized pair matters once voters are matched.
    pub fn is_votewise(&self) -> bool {
        matches!(self, ElectionDistance::Votewise { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DistanceClass {
    NotADistance,
    Hemimetric,
    Quasimetric,
    Pseudometric,
    Metric,
}

#[derive(Clone, Debug, Serialize)]
pub struct HemimetricReport {
    pub points: usize,
    pub reflexive: bool,
    pub triangle: bool,
    pub symmetric: bool,
    pub separating: bool,
    pub class: DistanceClass,
    /// First offending tuple per failed property, as indices into the space.
    pub witnesses: Vec<(String, Vec<usize>)>,
}

/// Checks the hemimetric axioms on every pair and triple of `space` and
/// classifies the distance.
pub fn verify_hemimetric_axioms(
    d: impl Fn(&Election, &Election) -> Result<Score>,
    space: &[Election],
) -> Result<HemimetricReport> {
    let n = space.len();
    let mut table = vec![vec![Score::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = d(&space[i], &space[j])?;
        }
    }
    let mut witnesses = Vec::new();
    let mut reflexive = true;
    for (i, row) in table.iter().enumerate() {
        if !row[i].is_zero() {
            reflexive = false;
            witnesses.push(("reflexive".into(), vec![i]));
            break;
        }
    }
    let mut symmetric = true;
    let mut separating = true;
    'pairs: for i in 0..n {
        for j in 0..n {
            if symmetric && table[i][j] != table[j][i] {
                symmetric = false;
                witnesses.push(("symmetric".into(), vec![i, j]));
            }
            if separating && i != j && table[i][j].is_zero() && space[i] != space[j] {
                separating = false;
                witnesses.push(("separating".into(), vec![i, j]));
            }
            if !symmetric && !separating {
                break 'pairs;
            }
        }
    }
    let mut triangle = true;
    'triples: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[i][k] > table[i][j].add(&table[j][k]) {
                    triangle = false;
                    witnesses.push(("triangle".into(), vec![i, j, k]));
                    break 'triples;
                }
            }
        }
    }
    let class = match (reflexive && triangle, symmetric, separating) {
        (false, _, _) => DistanceClass::NotADistance,
        (true, true, true) => DistanceClass::Metric,
        (true, true, false) => DistanceClass::Pseudometric,
        (true, false, true) => DistanceClass::Quasimetric,
        (true, false, false) => DistanceClass::Hemimetric,
    };
    Ok(HemimetricReport { points: n, reflexive, triangle, symmetric, separating, class, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::VoterId;
    use crate::ranking::candidates;

    fn r(ids: &[u8]) -> Ranking {
        Ranking::from_ids(ids)
    }

    #[test]
    fn ranking_distances() {
        let abc = r(&[0, 1, 2]);
        let cab = r(&[2, 0, 1]);
        assert_eq!(RankingMetric::Kendall.distance(&abc, &abc).unwrap(), 0);
        assert_eq!(RankingMetric::Kendall.distance(&abc, &cab).unwrap(), 2);
        assert_eq!(RankingMetric::Spearman.distance(&abc, &cab).unwrap(), 4);
        let w = RankingMetric::Weighted(vec![1, 0, 0]);
        assert_eq!(w.distance(&abc, &r(&[1, 0, 2])).unwrap(), 2);
        assert_eq!(RankingMetric::Discrete.distance(&abc, &cab).unwrap(), 1);
        assert!(RankingMetric::Kendall.distance(&abc, &r(&[0, 1])).is_err());
    }

    #[test]
    fn bad_weights() {
        assert!(validate_weights(&[0, 1, 2]).is_err());
        assert!(validate_weights(&[1, 1, 1]).is_err());
        assert!(validate_weights(&[2, 1, 0]).is_ok());
    }

    #[test]
    fn votewise_examples() {
        let cs = candidates(3);
        let e = Election::new(&cs, vec![(VoterId(1), r(&[0, 1, 2])), (VoterId(2), r(&[1, 0, 2]))]).unwrap();
        let f = Election::new(&cs, vec![(VoterId(1), r(&[0, 1, 2])), (VoterId(2), r(&[0, 1, 2]))]).unwrap();
        assert_eq!(ElectionDistance::kendall().distance(&e, &f).unwrap(), Score::int(1));
        assert_eq!(ElectionDistance::hamming().distance(&e, &e).unwrap(), Score::zero());
        let g = Election::new(&cs, vec![(VoterId(1), r(&[0, 1, 2])), (VoterId(3), r(&[0, 1, 2]))]).unwrap();
        assert_eq!(ElectionDistance::kendall().distance(&e, &g).unwrap(), Score::Infinite);

        let c2 = candidates(2);
        let x = Election::new(&c2, vec![(VoterId(1), r(&[0, 1])), (VoterId(2), r(&[1, 0]))]).unwrap();
        let y = Election::new(&c2, vec![(VoterId(1), r(&[1, 0])), (VoterId(2), r(&[0, 1]))]).unwrap();
        assert_eq!(ElectionDistance::hamming().distance(&x, &y).unwrap(), Score::int(2));
    }

    #[test]
    fn norms() {
        let cs = candidates(3);
        let e = Election::from_rankings(&cs, &[r(&[0, 1, 2]), r(&[0, 1, 2])]).unwrap();
        let f = Election::from_rankings(&cs, &[r(&[2, 1, 0]), r(&[1, 0, 2])]).unwrap();
        let d2 = ElectionDistance::votewise(RankingMetric::Kendall, Norm::lp(2));
        assert_eq!(d2.distance(&e, &f).unwrap(), Score::int(9 + 1));
        let dinf = ElectionDistance::votewise(RankingMetric::Kendall, Norm::Linf);
        assert_eq!(dinf.distance(&e, &f).unwrap(), Score::int(3));
        let dn = ElectionDistance::Votewise { metric: RankingMetric::Kendall, norm: Norm::l1(), normalized: true };
        assert_eq!(dn.distance(&e, &f).unwrap(), Score::int(2));
        let half = ElectionDistance::votewise(RankingMetric::Kendall, Norm::Lp(Ratio::new(3, 2)));
        let got = half.distance(&e, &f).unwrap().as_f64();
        assert!((got - (3f64.powf(1.5) + 1.0)).abs() < 1e-9);
    }

    #[test]
    fn majority_examples() {
        let cs = candidates(3);
        let s = VotingSituation::from_pairs(&cs, &[(r(&[0, 1, 2]), 2), (r(&[1, 2, 0]), 1)]).unwrap();
        let m = MajorityMatrix::of_situation(&s);
        assert_eq!(m.net(Candidate(0), Candidate(1)), 1);
        assert_eq!(m.net(Candidate(0), Candidate(2)), 1);
        assert_eq!(m.net(Candidate(1), Candidate(2)), 3);
        assert_eq!(m.net(Candidate(2), Candidate(1)), -3);
    }

    #[test]
    fn tournament_examples() {
        let cs = candidates(2);
        let e = VotingSituation::from_pairs(&cs, &[(r(&[0, 1]), 2)]).unwrap().to_election();
        let f = VotingSituation::from_pairs(&cs, &[(r(&[0, 1]), 1), (r(&[1, 0]), 1)]).unwrap().to_election();
        assert_eq!(tournament_distance(&e, &f, true), Score::int(2));
        assert_eq!(tournament_distance(&e, &f, false), Score::int(4));
        assert_eq!(tournament_distance(&e, &e, false), Score::zero());
    }

    #[test]
    fn deletion_examples() {
        let cs = candidates(2);
        let e = Election::new(&cs, vec![(VoterId(1), r(&[0, 1])), (VoterId(2), r(&[1, 0]))]).unwrap();
        let f = Election::new(&cs, vec![(VoterId(1), r(&[0, 1]))]).unwrap();
        let g = Election::new(&cs, vec![(VoterId(1), r(&[1, 0]))]).unwrap();
        assert_eq!(deletion_distance(&e, &e), Score::zero());
        assert_eq!(deletion_distance(&e, &f), Score::int(1));
        assert_eq!(deletion_distance(&f, &g), Score::Infinite);
        assert_eq!(insertion_distance(&f, &e), Score::int(1));
    }
}
