//! Tournament distances to a consensus cell, by scanning every realizable
//! majority matrix of an election with the same number of voters.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::consensus::ConsensusSpec;
use crate::election::{enumerate_situations, Election, EnumBounds, VotingSituation};
use crate::error::{Error, Result};
use crate::metrics::MajorityMatrix;
use crate::ranking::{Candidate, Ranking};
use crate::score::Score;

const SITUATION_LIMIT: f64 = 3e6;

/// Distinct majority matrices of the members of each cell, with one member each.
type CellMatrices = BTreeMap<Ranking, Vec<(MajorityMatrix, VotingSituation)>>;

type CacheKey = (Vec<Candidate>, usize, String);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<CellMatrices>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<CellMatrices>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn cell_matrices(k: &ConsensusSpec, cs: &[Candidate], n: usize) -> Result<Arc<CellMatrices>> {
    let key = (cs.to_vec(), n, k.name());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let orders = (1..=cs.len() as u64).product::<u64>();
    let count = binomial(orders + n as u64 - 1, n as u64);
    if count > SITUATION_LIMIT {
        return Err(Error::BoundsExceeded(format!("{count:.0} situations with {n} voters")));
    }
    let bounds = EnumBounds { max_candidates: cs.len(), max_voters: n };
    let mut cells: BTreeMap<Ranking, HashMap<MajorityMatrix, VotingSituation>> = BTreeMap::new();
    for x in enumerate_situations(cs, n, bounds)? {
        if let Some(r) = k.choice(&x) {
            let mm = MajorityMatrix::of_situation(&x);
            cells.entry(r).or_default().entry(mm).or_insert(x);
        }
    }
    let table: CellMatrices = cells
        .into_iter()
        .map(|(r, h)| {
            let mut v: Vec<(MajorityMatrix, VotingSituation)> = h.into_iter().collect();
            v.sort_by(|a, b| a.1.cmp(&b.1));
            (r, v)
        })
        .collect();
    let table = Arc::new(table);
    cache().lock().expect("cache lock").insert(key, table.clone());
    Ok(table)
}

/// Tournament (or reduced tournament) distance from `e` to the cell of `r`.
pub fn tournament_cell_score(k: &ConsensusSpec, reduced: bool, e: &Election, r: &Ranking) -> Result<Score> {
    Ok(score(k, reduced, e, r)?.0)
}

pub(super) fn score(k: &ConsensusSpec, reduced: bool, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let table = cell_matrices(k, e.candidates(), e.n())?;
    let me = MajorityMatrix::of_situation(&e.anonymize());
    let mut best: Option<(i64, &VotingSituation)> = None;
    if let Some(members) = table.get(r) {
        for (mm, x) in members {
            let d = me.l1_distance(mm, reduced);
            if best.map(|(b, _)| d < b).unwrap_or(true) {
                best = Some((d, x));
            }
        }
    }
    match best {
        None => Ok((Score::Infinite, None)),
        Some((d, x)) => {
            let witness = e.with_rankings(&x.expanded())?;
            Ok((Score::int(d), Some(witness)))
        }
    }
}
