//! Closed forms for votewise distances: forbidden-set cells (each vote moves
//! independently to its nearest allowed ranking) and qualified majorities
//! (the cheapest voters are moved).

use std::collections::BTreeMap;

use crate::consensus::ConsensusSpec;
use crate::election::{Election, VoterId};
use crate::error::{Error, Result};
use crate::metrics::{normalize, ElectionDistance, RankingMetric};
use crate::ranking::Ranking;
use crate::score::Score;

use super::votewise_parts;

/// Nearest allowed ranking (first in canonical order on ties) and its distance.
fn nearest(metric: &RankingMetric, allowed: &[Ranking], v: &Ranking) -> (Ranking, u64) {
    let mut best = (allowed[0], metric.distance_unchecked(v, &allowed[0]));
    for a in &allowed[1..] {
        let d = metric.distance_unchecked(v, a);
        if d < best.1 {
            best = (*a, d);
        }
    }
    best
}

/// Per-voter minimizers into the cell `K_r` of a forbidden-set consensus.
pub fn vmp_minimizer(k: &ConsensusSpec, metric: &RankingMetric, e: &Election, r: &Ranking) -> Result<Vec<(VoterId, Ranking, u64)>> {
    let allowed = k.allowed_rankings(e.candidates(), r).ok_or(Error::NotForbiddenSet)?;
    metric.validate(e.m())?;
    let mut cache: BTreeMap<Ranking, (Ranking, u64)> = BTreeMap::new();
    Ok(e.votes()
        .iter()
        .map(|(v, pi)| {
            let (t, d) = *cache.entry(*pi).or_insert_with(|| nearest(metric, &allowed, pi));
            (*v, t, d)
        })
        .collect())
}

pub(super) fn score(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let (metric, norm, normalized) = votewise_parts(d).ok_or(Error::NotForbiddenSet)?;
    let moves = vmp_minimizer(k, metric, e, r)?;
    let total = norm.aggregate(moves.iter().map(|(_, _, d)| (*d, 1)));
    let witness = e.with_rankings(&moves.iter().map(|(_, t, _)| *t).collect::<Vec<_>>())?;
    Ok((normalize(norm, normalized, total, e.n()), Some(witness)))
}

pub(super) fn majority_score(k: &ConsensusSpec, d: &ElectionDistance, e: &Election, r: &Ranking) -> Result<(Score, Option<Election>)> {
    let (metric, norm, normalized) = votewise_parts(d).ok_or(Error::NotForbiddenSet)?;
    let (alpha, s) = match k {
        ConsensusSpec::QualifiedMajority { alpha, s } => (*alpha, *s),
        _ => return Err(Error::NotForbiddenSet),
    };
    let unanimity = ConsensusSpec::Unanimity { s };
    let moves = vmp_minimizer(&unanimity, metric, e, r)?;
    let n = e.n() as i64;
    // smallest t with t / n > alpha
    let need = ((alpha * n).floor().to_integer() + 1) as usize;
    let mut order: Vec<usize> = (0..moves.len()).collect();
    order.sort_by_key(|&i| (moves[i].2, i));
    let chosen = &order[..need.min(order.len())];
    let mut targets: Vec<Ranking> = e.rankings().copied().collect();
    for &i in chosen {
        targets[i] = moves[i].1;
    }
    let total = norm.aggregate(chosen.iter().map(|&i| (moves[i].2, 1)));
    Ok((normalize(norm, normalized, total, e.n()), Some(e.with_rankings(&targets)?)))
}
