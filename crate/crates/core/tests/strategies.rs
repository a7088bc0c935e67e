//! Every cell-specific computation against exhaustive search on small elections.

use distrat::election::{enumerate_up_to, EnumBounds};
use distrat::ranking::candidates;
use distrat::{Bounds, ConsensusSpec, DrRule, Election, ElectionDistance, Error, Norm, RankingMetric, Rule, Score, Size, Strategy};
use num_rational::Ratio;

fn space(m: usize, n: usize) -> Vec<Election> {
    enumerate_up_to(&candidates(m), n, EnumBounds { max_candidates: m, max_voters: n })
        .unwrap()
        .iter()
        .map(|x| x.to_election())
        .collect()
}

fn agree(k: ConsensusSpec, d: ElectionDistance, elections: &[Election]) {
    let fast = DrRule::new(k.clone(), d.clone());
    for e in elections {
        let bounds = Bounds { extra_voters: Some(2 * e.n() + 2), ..Bounds::default() };
        let slow = DrRule::new(k.clone(), d.clone()).with_strategy(Strategy::BruteForce(bounds));
        for x in fast.table(e).unwrap().entries {
            match slow.score(e, &x.outcome) {
                Ok(y) => assert_eq!(x.score, y.score, "{} on {e:?} at {:?}: {:?} vs brute force", fast.name(), x.outcome, x.provenance),
                // nothing within the search bound: only consistent with no member at all
                Err(Error::BoundsExceeded(_)) => assert_eq!(x.score, Score::Infinite, "{} on {e:?}", fast.name()),
                Err(err) => panic!("{err}"),
            }
            if let Some(w) = &x.witness {
                assert_eq!(d.distance(e, w).unwrap(), x.score, "{} witness on {e:?}", fast.name());
                assert_eq!(k.choice(&w.anonymize()), Some(x.outcome), "{} witness on {e:?}", fast.name());
            }
        }
    }
}

fn votewise() -> Vec<ElectionDistance> {
    let mut out = Vec::new();
    for metric in [RankingMetric::Discrete, RankingMetric::Kendall, RankingMetric::Spearman, RankingMetric::Weighted(vec![4, 1, 0])] {
        for norm in [Norm::l1(), Norm::lp(2), Norm::Linf] {
            out.push(ElectionDistance::Votewise { metric: metric.clone(), norm, normalized: false });
        }
    }
    out
}

#[test]
fn unanimity_and_majority_votewise() {
    let es = space(3, 3);
    let classes = [
        ConsensusSpec::sunam(),
        ConsensusSpec::wunam(),
        ConsensusSpec::Unanimity { s: Size::Top(2) },
        ConsensusSpec::maj(Size::Top(1)),
        ConsensusSpec::QualifiedMajority { alpha: Ratio::new(2, 3), s: Size::Top(1) },
    ];
    for k in classes {
        for d in votewise() {
            agree(k.clone(), d, &es);
        }
    }
}

#[test]
fn condorcet_votewise() {
    let es = space(3, 3);
    for k in [ConsensusSpec::cond(), ConsensusSpec::Condorcet { alpha: Ratio::new(2, 3) }] {
        for d in votewise() {
            agree(k.clone(), d, &es);
        }
    }
}

#[test]
fn normalized_votewise() {
    let es = space(3, 3);
    let d = ElectionDistance::Votewise { metric: RankingMetric::Kendall, norm: Norm::lp(2), normalized: true };
    for k in [ConsensusSpec::sunam(), ConsensusSpec::wunam(), ConsensusSpec::cond()] {
        agree(k, d.clone(), &es);
    }
}

#[test]
fn tournament_cells() {
    let es = space(3, 3);
    for reduced in [false, true] {
        for k in [ConsensusSpec::sunam(), ConsensusSpec::wunam(), ConsensusSpec::cond(), ConsensusSpec::cond_m()] {
            agree(k, ElectionDistance::Tournament { reduced }, &es);
        }
    }
}

#[test]
fn voter_count_cells() {
    let es = space(3, 3);
    for d in [ElectionDistance::Insertion, ElectionDistance::Deletion] {
        for k in [ConsensusSpec::sunam(), ConsensusSpec::wunam(), ConsensusSpec::cond(), ConsensusSpec::maj(Size::Top(1))] {
            agree(k, d.clone(), &es);
        }
    }
}

#[test]
fn four_candidates_sample() {
    let es: Vec<Election> = space(4, 2);
    for k in [ConsensusSpec::wunam(), ConsensusSpec::cond()] {
        agree(k.clone(), ElectionDistance::kendall(), &es);
        agree(k.clone(), ElectionDistance::Deletion, &es);
        agree(k, ElectionDistance::Tournament { reduced: false }, &es);
    }
}
