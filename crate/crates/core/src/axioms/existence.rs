//! Replays of the existence construction: a rule is recovered from its
//! maximum consensus with the Campbell-Nitzan distances.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::consensus::{max_consensus, ConsensusSpec};
use crate::election::Election;
use crate::engine::{Bounds, DrRule, Strategy};
use crate::error::Result;
use crate::metrics::{verify_hemimetric_axioms, CnSpace, CnVariant, DistanceClass, ElectionDistance};
use crate::rule::{Outcome, Rule, RuleHandle};

#[derive(Clone, Debug, Serialize)]
pub struct Divergence {
    pub election: Election,
    pub rule: Outcome,
    /// `None` when every cell is at infinite distance.
    pub rationalized: Option<Outcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalizationReport {
    pub rule: String,
    pub consensus: String,
    pub distance: String,
    pub checked: usize,
    pub first_divergence: Option<Divergence>,
}

impl RationalizationReport {
    pub fn agrees(&self) -> bool {
        self.first_divergence.is_none()
    }
}

/// Checks R(E) = argmin_r d(E, K_r) on every election of `space`, with the
/// cells searched inside `space` itself.
pub fn verify_rationalization(rule: &dyn Rule, k: &ConsensusSpec, d: &ElectionDistance, space: &[Election]) -> Result<RationalizationReport> {
    let bounds = Bounds { space: Some(Arc::new(space.to_vec())), max_nodes: u64::MAX, ..Bounds::default() };
    let dr = DrRule::new(k.clone(), d.clone()).with_strategy(Strategy::BruteForce(bounds));
    let results: Vec<Result<Option<Divergence>>> = space
        .par_iter()
        .map(|e| {
            let want = rule.apply(e)?;
            let got = match dr.winners(e) {
                Ok(o) => Some(o),
                Err(crate::error::Error::AllInfinite) => None,
                Err(x) => return Err(x),
            };
            Ok((got.as_ref() != Some(&want)).then(|| Divergence { election: e.clone(), rule: want, rationalized: got }))
        })
        .collect();
    let mut first = None;
    for r in results {
        if let Some(div) = r? {
            first = Some(div);
            break;
        }
    }
    Ok(RationalizationReport {
        rule: rule.name(),
        consensus: k.name(),
        distance: d.name(),
        checked: space.len(),
        first_divergence: first,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CnReplay {
    pub rule: String,
    pub variant: CnVariant,
    pub rationalization: RationalizationReport,
    pub class: DistanceClass,
}

/// For each variant in {1, 2}: K = K^max(rule), d the Campbell-Nitzan
/// distance of the rule, checked on `space`, plus the distance class.
pub fn campbell_nitzan_replay(rule: RuleHandle, space: &[Election]) -> Result<Vec<CnReplay>> {
    let k = max_consensus(rule.clone());
    let mut out = Vec::new();
    for variant in [CnVariant::One, CnVariant::Two] {
        let cn = Arc::new(CnSpace::new(variant, rule.clone(), space)?);
        let d = ElectionDistance::CampbellNitzan(cn.clone());
        let rationalization = verify_rationalization(rule.as_ref(), &k, &d, space)?;
        let class = verify_hemimetric_axioms(|e, f| cn.distance(e, f), space)?.class;
        out.push(CnReplay { rule: rule.name(), variant, rationalization, class });
    }
    Ok(out)
}
