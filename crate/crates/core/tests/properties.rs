use distrat::consensus::ConsensusSpec;
use distrat::election::all_profiles;
use distrat::metrics::{tournament_distance, votewise_distance};
use distrat::ranking::{candidates, Relabeling};
use distrat::transport::{hungarian, quotient_votewise_distance};
use distrat::{DrRule, Election, ElectionDistance, Norm, Outcome, Ranking, RankingMetric, Rule, Score, VoterId};
use itertools::Itertools;
use num_rational::Ratio;
use proptest::prelude::*;

fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Ranking::from_ids(&v))
}

fn election(m: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Election> {
    prop::collection::vec(ranking(m), n).prop_map(move |rs| Election::from_rankings(&candidates(m), &rs).unwrap())
}

/// Two elections over the same voters.
fn election_pair(m: usize, n: usize) -> impl Strategy<Value = (Election, Election)> {
    (prop::collection::vec(ranking(m), n), prop::collection::vec(ranking(m), n))
        .prop_map(move |(a, b)| (Election::from_rankings(&candidates(m), &a).unwrap(), Election::from_rankings(&candidates(m), &b).unwrap()))
}

fn metrics(m: usize) -> Vec<RankingMetric> {
    let w: Vec<i64> = (0..m as i64).rev().map(|x| x * x).collect();
    vec![RankingMetric::Discrete, RankingMetric::Kendall, RankingMetric::Spearman, RankingMetric::Weighted(w)]
}

fn discordant_pairs(a: &Ranking, b: &Ranking) -> u64 {
    let s = a.as_slice();
    let mut n = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if b.prefers(s[j], s[i]) {
                n += 1;
            }
        }
    }
    n
}

fn relabel(o: &Outcome, sigma: &Relabeling) -> Outcome {
    o.iter().map(|r| r.relabeled(sigma)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ranking_metrics_are_metrics(m in 2usize..=5, seed in any::<u64>()) {
        let rs: Vec<Ranking> = candidates(m).into_iter().permutations(m).map(|p| Ranking::new(&p).unwrap()).collect();
        let pick = |k: u64| rs[(seed.rotate_left(k as u32 * 13) % rs.len() as u64) as usize];
        let (a, b, c) = (pick(1), pick(2), pick(3));
        for d in metrics(m) {
            let f = |x: &Ranking, y: &Ranking| d.distance(x, y).unwrap();
            prop_assert_eq!(f(&a, &a), 0);
            prop_assert_eq!(f(&a, &b), f(&b, &a));
            prop_assert_eq!(f(&a, &b) == 0, a == b);
            prop_assert!(f(&a, &c) <= f(&a, &b) + f(&b, &c));
        }
    }

    #[test]
    fn kendall_counts_discordant_pairs(a in ranking(6), b in ranking(6)) {
        prop_assert_eq!(RankingMetric::Kendall.distance(&a, &b).unwrap(), discordant_pairs(&a, &b));
    }

    #[test]
    fn votewise_distance_is_a_metric_after_the_root((e, f) in election_pair(4, 4), g in prop::collection::vec(ranking(4), 4)) {
        let g = Election::from_rankings(&candidates(4), &g).unwrap();
        for norm in [Norm::l1(), Norm::lp(2), Norm::lp(3), Norm::Linf] {
            let d = |x: &Election, y: &Election| norm.rooted(&votewise_distance(&RankingMetric::Kendall, &norm, false, x, y).unwrap());
            prop_assert_eq!(d(&e, &e), 0.0);
            prop_assert!((d(&e, &f) - d(&f, &e)).abs() < 1e-9);
            prop_assert!(d(&e, &g) <= d(&e, &f) + d(&f, &g) + 1e-9);
        }
    }

    #[test]
    fn votewise_distance_needs_the_same_voters(e in election(3, 1..=3), f in election(3, 4..=5)) {
        prop_assert_eq!(votewise_distance(&RankingMetric::Kendall, &Norm::l1(), false, &e, &f).unwrap(), Score::Infinite);
    }

    #[test]
    fn normalization_divides_by_voters((e, f) in election_pair(3, 5)) {
        let raw = votewise_distance(&RankingMetric::Spearman, &Norm::lp(2), false, &e, &f).unwrap();
        let mean = votewise_distance(&RankingMetric::Spearman, &Norm::lp(2), true, &e, &f).unwrap();
        prop_assert_eq!(mean, raw.div_int(5));
        let linf = votewise_distance(&RankingMetric::Spearman, &Norm::Linf, true, &e, &f).unwrap();
        prop_assert_eq!(linf, votewise_distance(&RankingMetric::Spearman, &Norm::Linf, false, &e, &f).unwrap());
    }

    #[test]
    fn score_text_round_trips(num in -1000i64..1000, den in 1i64..50, x in -1e6f64..1e6) {
        for s in [Score::ratio(num, den), Score::int(num), Score::Approx(x), Score::Infinite] {
            let back: Score = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }
    }

    #[test]
    fn score_order_follows_value(a in -100i64..100, b in -100i64..100, d in 1i64..7) {
        let (x, y) = (Score::ratio(a, d), Score::ratio(b, d));
        prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        prop_assert!(x < Score::Infinite);
        prop_assert_eq!(x.add(&y), Score::ratio(a + b, d));
        prop_assert!(Score::Approx(a as f64 / d as f64).ties_with(&x));
    }

    #[test]
    fn hungarian_matches_permutation_search(n in 1usize..=6, cells in prop::collection::vec(0i64..50, 36)) {
        let cost = &cells[..n * n];
        let (best, assignment) = hungarian(n, cost);
        let brute = (0..n).permutations(n).map(|p| p.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum::<i64>()).min().unwrap();
        prop_assert_eq!(best, brute);
        prop_assert_eq!(assignment.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum::<i64>(), best);
        prop_assert!(assignment.iter().copied().sorted().eq(0..n));
    }

    #[test]
    fn quotient_is_below_votewise_and_ignores_voter_order((e, f) in election_pair(4, 5), shift in 0u32..5) {
        for metric in metrics(4) {
            let q = quotient_votewise_distance(&metric, &Norm::l1(), &e.anonymize(), &f.anonymize()).unwrap();
            prop_assert!(q <= votewise_distance(&metric, &Norm::l1(), false, &e, &f).unwrap());
            let g = f.permute_voters(|v| VoterId((v.0 + shift) % 5)).unwrap();
            let q2 = quotient_votewise_distance(&metric, &Norm::l1(), &e.anonymize(), &g.anonymize()).unwrap();
            prop_assert_eq!(q, q2);
        }
    }

    #[test]
    fn tournament_distance_is_a_pseudometric(e in election(3, 3..=3), f in election(3, 3..=3), g in election(3, 3..=3)) {
        for reduced in [false, true] {
            let d = |x: &Election, y: &Election| tournament_distance(x, y, reduced);
            prop_assert!(d(&e, &e).is_zero());
            prop_assert_eq!(d(&e, &f), d(&f, &e));
            prop_assert!(d(&e, &g) <= d(&e, &f).add(&d(&f, &g)));
        }
    }

    #[test]
    fn dr_rules_are_neutral(e in election(3, 1..=4), which in 0usize..6) {
        let cells = [
            (ConsensusSpec::wunam(), ElectionDistance::kendall()),
            (ConsensusSpec::sunam(), ElectionDistance::hamming()),
            (ConsensusSpec::cond(), ElectionDistance::hamming()),
            (ConsensusSpec::cond(), ElectionDistance::Deletion),
            (ConsensusSpec::wunam(), ElectionDistance::Tournament { reduced: true }),
            (ConsensusSpec::maj(distrat::Size::Top(1)), ElectionDistance::votewise(RankingMetric::Spearman, Norm::lp(2))),
        ];
        let (k, d) = cells[which].clone();
        let rule = DrRule::new(k, d);
        let base = rule.apply(&e).unwrap();
        for sigma in Relabeling::all_on(e.candidates()) {
            prop_assert_eq!(rule.apply(&e.permute_candidates(&sigma).unwrap()).unwrap(), relabel(&base, &sigma));
        }
    }

    #[test]
    fn qualified_majority_thresholds_nest(e in election(3, 1..=5)) {
        // a stricter threshold never brings a cell closer
        let d = ElectionDistance::hamming();
        let loose = DrRule::new(ConsensusSpec::QualifiedMajority { alpha: Ratio::new(1, 2), s: distrat::Size::Top(1) }, d.clone());
        let strict = DrRule::new(ConsensusSpec::QualifiedMajority { alpha: Ratio::new(2, 3), s: distrat::Size::Top(1) }, d);
        let (a, b) = (loose.table(&e).unwrap(), strict.table(&e).unwrap());
        for (x, y) in a.entries.iter().zip(&b.entries) {
            prop_assert!(x.score <= y.score);
        }
    }
}

#[test]
fn dr_rules_with_anonymous_consensus_are_anonymous() {
    let cs = candidates(3);
    let voters = [VoterId(0), VoterId(1), VoterId(2)];
    let rule = DrRule::new(ConsensusSpec::cond(), ElectionDistance::spearman());
    for e in all_profiles(&cs, &voters).unwrap() {
        let out = rule.apply(&e).unwrap();
        let g = e.permute_voters(|v| VoterId((v.0 + 1) % 3)).unwrap();
        assert_eq!(rule.apply(&g).unwrap(), out, "{e:?}");
    }
}
