//! Exit-gate checks. Each criterion prints one `PASS` or `FAIL` line, with
//! indented detail lines underneath, and the test fails if any criterion does.

use std::sync::Arc;
use std::time::Instant;

use distrat::axioms::counterexamples::{
    cmp_failure, dodgson_crossover, fishburn_dodgson, fishburn_election, fishburn_vrr, uniqueness_counterexample,
};
use distrat::axioms::existence::campbell_nitzan_replay;
use distrat::axioms::table::{verify_table, TableBound};
use distrat::axioms::{
    check_anonymity, check_consistency, check_continuity_on, check_homogeneity, check_neutrality, pairs_of, AxiomReport,
    Verdict,
};
use distrat::election::{all_profiles, enumerate_up_to, random_situation, EnumBounds};
use distrat::metrics::{verify_hemimetric_axioms, DistanceClass};
use distrat::oracles::Oracle;
use distrat::ranking::candidates;
use distrat::transport::{hungarian, quotient_votewise_distance, CostMatrix};
use distrat::{ConsensusSpec, DrRule, Election, ElectionDistance, Norm, RankingMetric, Ranking, Rule, Score, Size, VoterId, VotingSituation};
use itertools::Itertools;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distrat_verify::Gate;

/// Tolerance on per-unit Fishburn scores.
const FISHBURN_TOL: f64 = 0.5;
const SEED: u64 = 20_240_601;

fn profiles(m: usize, n_max: usize) -> Vec<Election> {
    let cs = candidates(m);
    (1..=n_max)
        .flat_map(|n| {
            let voters: Vec<VoterId> = (0..n as u32).map(VoterId).collect();
            all_profiles(&cs, &voters).unwrap()
        })
        .collect()
}

fn situations(m: usize, n_max: usize) -> Vec<Election> {
    enumerate_up_to(&candidates(m), n_max, EnumBounds { max_candidates: m, max_voters: n_max })
        .unwrap()
        .iter()
        .map(|x| x.to_election())
        .collect()
}

fn sit(m: usize, pairs: &[(&[u8], u32)]) -> VotingSituation {
    let p: Vec<(Ranking, u32)> = pairs.iter().map(|(x, k)| (Ranking::from_ids(x), *k)).collect();
    VotingSituation::from_pairs(&candidates(m), &p).unwrap()
}

fn axiom_line(g: &mut Gate, r: &AxiomReport) {
    let what = format!("{} / {}: {} after {} comparisons", r.rule, r.axiom, r.verdict, r.checked);
    g.check(r.holds(), what);
    if let Some(w) = &r.witness {
        for (e, o) in w.elections.iter().zip(&w.outcomes) {
            g.note(format!("witness {:?} -> {:?}", e.anonymize().counts(), o));
        }
    }
}

fn criterion_1() -> bool {
    let mut g = Gate::new("C1 table equivalence (m=3 n<=4 exhaustive + 200 seeded m=4 n=4)");
    let start = Instant::now();
    let report = verify_table(&TableBound { seed: SEED, ..TableBound::default() }).unwrap();
    for c in &report.cells {
        let what = format!(
            "{} vs [{}]: {} ({} elections, {} mismatches, agreeing: [{}])",
            c.cell,
            c.oracles.join(", "),
            c.status(),
            c.checked,
            c.mismatches,
            c.matching.join(", ")
        );
        g.check(c.passes(), what);
        if let Some(m) = &c.first_mismatch {
            g.note(format!("first mismatch {:?}: dr {:?} vs {} {:?}", m.election.anonymize().counts(), m.dr, m.oracle, m.expected));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    g.check(secs < 300.0, format!("runtime {secs:.1}s"));
    g.finish()
}

fn criterion_2() -> bool {
    let mut g = Gate::new("C2 Fishburn reproduction");
    let k1 = fishburn_dodgson(1).unwrap();
    let a_names: Vec<String> = (1..=7).map(|i| format!("a{i}")).collect();
    g.check(k1.score_of("x") == Some(Score::int(7)), format!("k=1 dodgson x = {}", k1.score_of("x").unwrap()));
    g.check(
        a_names.iter().all(|a| k1.score_of(a) == Some(Score::int(6))),
        format!("k=1 dodgson a_i = {}", a_names.iter().map(|a| k1.score_of(a).unwrap().to_string()).join(",")),
    );
    g.check(k1.winners == a_names, format!("k=1 winners {:?}", k1.winners));
    let k10 = fishburn_dodgson(10).unwrap();
    let (x, a) = (k10.per_unit("x").unwrap(), k10.per_unit("a1").unwrap());
    g.check((x - 3.5).abs() <= FISHBURN_TOL, format!("k=10 dodgson x per unit {x} (target 3.5 ± {FISHBURN_TOL})"));
    g.check((a - 4.5).abs() <= FISHBURN_TOL, format!("k=10 dodgson a_i per unit {a} (target 4.5 ± {FISHBURN_TOL})"));
    g.check(k10.winners == vec!["x".to_string()], format!("k=10 winners {:?}", k10.winners));
    let first = dodgson_crossover(10).unwrap();
    let again = dodgson_crossover(10).unwrap();
    g.check(first.is_some() && first == again, format!("crossover k = {first:?} (repeat {again:?})"));
    let v1 = fishburn_vrr(1).unwrap();
    g.check(v1.score_of("x") == Some(Score::int(2)), format!("k=1 vrr x = {}", v1.score_of("x").unwrap()));
    g.check(
        a_names.iter().all(|n| v1.score_of(n) == Some(Score::int(2))),
        format!("k=1 vrr a_i = {}", a_names.iter().map(|n| v1.score_of(n).unwrap().to_string()).join(",")),
    );
    let v10 = fishburn_vrr(10).unwrap();
    let (vx, va) = (v10.per_unit("x").unwrap(), v10.per_unit("a1").unwrap());
    g.check(vx < va, format!("k=10 vrr per unit x {vx} < a_i {va}"));
    g.finish()
}

/// Minimum-cost perfect matching by trying every permutation.
fn brute_matching(n: usize, cost: &[u64]) -> u64 {
    (0..n).permutations(n).map(|p| p.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum()).min().unwrap_or(0)
}

fn criterion_3() -> bool {
    let mut g = Gate::new("C3 EMD ground truth and Hungarian vs brute force");
    let x = sit(3, &[(&[0, 1, 2], 2), (&[1, 0, 2], 3)]);
    let y = sit(3, &[(&[1, 0, 2], 2), (&[2, 1, 0], 3)]);
    let h = quotient_votewise_distance(&RankingMetric::Discrete, &Norm::l1(), &x, &y).unwrap();
    let k = quotient_votewise_distance(&RankingMetric::Kendall, &Norm::l1(), &x, &y).unwrap();
    g.check(h == Score::int(3), format!("hamming/l1 EMD = {h}"));
    g.check(k == Score::int(8), format!("kendall/l1 EMD = {k}"));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let metrics = [RankingMetric::Discrete, RankingMetric::Kendall, RankingMetric::Spearman];
    let mut bad = 0;
    for _ in 0..500 {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=6);
        let cs = candidates(m);
        let a = random_situation(&cs, n, &mut rng).unwrap();
        let b = random_situation(&cs, n, &mut rng).unwrap();
        let metric = &metrics[rng.gen_range(0..metrics.len())];
        let c = CostMatrix::between(metric, &a, &b);
        let cells: Vec<i64> = (0..n * n).map(|i| c.get(i / n, i % n) as i64).collect();
        let (fast, _) = hungarian(n, &cells);
        let raw: Vec<u64> = cells.iter().map(|&v| v as u64).collect();
        if fast as u64 != brute_matching(n, &raw) {
            bad += 1;
        }
    }
    g.check(bad == 0, format!("500 seeded pairs, {bad} disagreements"));
    g.finish()
}

fn criterion_4() -> bool {
    let mut g = Gate::new("C4 compatible-minimizer failure on {ab:2, ba:3}");
    for row in cmp_failure().unwrap() {
        let want = match (row.election.as_str(), row.target.as_str()) {
            ("E", "a") => Some(Score::int(1)),
            ("3E", "a") => Some(Score::int(2)),
            ("E", "b") => Some(Score::zero()),
            _ => None,
        };
        let what = format!("{} d({}, COND_{}) = {}", row.distance, row.election, row.target, row.score);
        match want {
            Some(w) => g.check(row.score == w, what),
            None => g.note(what),
        }
    }
    g.finish()
}

fn criterion_5() -> bool {
    let mut g = Gate::new("C5 axiom suites for R(SUNAM^s, d^p); Dodgson and VRR not homogeneous");
    let ids = profiles(3, 3);
    let anon = situations(3, 3);
    let pairs = pairs_of(&anon, 6);
    for s in [Size::Top(1), Size::Full] {
        for norm in [Norm::l1(), Norm::lp(2), Norm::Linf] {
            let rule = DrRule::new(ConsensusSpec::Unanimity { s }, ElectionDistance::votewise(RankingMetric::Kendall, norm));
            axiom_line(&mut g, &check_anonymity(&rule, &ids).unwrap());
            axiom_line(&mut g, &check_neutrality(&rule, &anon).unwrap());
            axiom_line(&mut g, &check_homogeneity(&rule, &anon, 4).unwrap());
            axiom_line(&mut g, &check_consistency(&rule, &pairs).unwrap());
            let cont = check_continuity_on(&rule, &pairs, 20).unwrap();
            g.check(
                cont.verdict == Verdict::HoldsOnSpace,
                format!("{} / continuity (k_max = 20): {} after {} probes", cont.rule, cont.verdict, cont.checked),
            );
            if let Some(w) = &cont.witness {
                g.note(format!("unstable pair {:?} + {:?}: {}", w.elections[0].anonymize().counts(), w.elections[1].anonymize().counts(), w.detail));
            }
        }
    }
    let dodgson = DrRule::new(ConsensusSpec::cond(), ElectionDistance::kendall());
    let r = check_homogeneity(&dodgson, &[fishburn_election(1).unwrap()], 3).unwrap();
    replayed_violation(&mut g, &dodgson, &r);
    let vrr = DrRule::new(ConsensusSpec::cond(), ElectionDistance::hamming());
    let e = Election::from_rankings(
        &candidates(5),
        &[[0, 2, 4, 1, 3], [0, 3, 4, 2, 1], [1, 3, 2, 0, 4], [1, 3, 2, 4, 0], [1, 4, 0, 2, 3], [2, 0, 4, 3, 1], [3, 2, 4, 1, 0], [4, 1, 0, 2, 3]]
            .map(|v| Ranking::from_ids(&v)),
    )
    .unwrap();
    let r = check_homogeneity(&vrr, &[e], 2).unwrap();
    replayed_violation(&mut g, &vrr, &r);
    g.finish()
}

fn replayed_violation(g: &mut Gate, rule: &dyn Rule, r: &AxiomReport) {
    let replay = r.witness.as_ref().map(|w| {
        w.elections.iter().zip(&w.outcomes).all(|(e, o)| rule.apply(e).unwrap() == *o) && w.outcomes[0] != w.outcomes[1]
    });
    g.check(
        r.verdict == Verdict::Violated && replay == Some(true),
        format!("{} / homogeneity: {} (witness replays: {replay:?})", r.rule, r.verdict),
    );
    if let Some(w) = &r.witness {
        g.note(format!("R(E) = {:?}, R(kE) = {:?}; {}", w.outcomes[0], w.outcomes[1], w.detail));
    }
}

fn criterion_6() -> bool {
    let mut g = Gate::new("C6 Campbell-Nitzan existence replay over m=3 n<=3");
    let space = profiles(3, 3);
    for rule in [Oracle::Plurality, Oracle::Borda, Oracle::Copeland(Ratio::new(1, 2))] {
        for row in campbell_nitzan_replay(Arc::new(rule), &space).unwrap() {
            let want = match row.variant {
                distrat::metrics::CnVariant::One => DistanceClass::Metric,
                _ => DistanceClass::Pseudometric,
            };
            g.check(
                row.rationalization.agrees(),
                format!("{} variant {:?}: rationalized on {} elections", row.rule, row.variant, row.rationalization.checked),
            );
            g.check(row.class == want, format!("{} variant {:?}: class {:?}", row.rule, row.variant, row.class));
        }
    }
    g.finish()
}

fn criterion_7() -> bool {
    let mut g = Gate::new("C7 uniqueness counterexample at n in {4, 6, 8}");
    for n in [4, 6, 8] {
        let r = uniqueness_counterexample(n).unwrap();
        match &r.witness {
            Some(w) => g.check(
                w.r != w.r_prime,
                format!("n={n}: tops (a,b,c,c') = {:?}, R = {:?}, R' = {:?}; {} differing states", w.tops, w.r, w.r_prime, r.differing_states),
            ),
            None => g.check(false, format!("n={n}: R = R' on every election")),
        }
        if let Some(e) = &r.witness_election {
            g.note(format!("n={n} witness election {:?}", e.rankings().collect::<Vec<_>>()));
        }
    }
    g.finish()
}

fn criterion_8() -> bool {
    let mut g = Gate::new("C8 hemimetric classifier on m=2 n<=3");
    let space = profiles(2, 3);
    let k = ElectionDistance::kendall();
    let rt = ElectionDistance::Tournament { reduced: true };
    let del = ElectionDistance::Deletion;
    for (d, want) in [(k, DistanceClass::Metric), (rt, DistanceClass::Pseudometric), (del, DistanceClass::Quasimetric)] {
        let r = verify_hemimetric_axioms(|e, f| d.distance(e, f), &space).unwrap();
        g.check(
            r.class == want,
            format!("{}: {:?} (symmetric {}, separating {}, triangle {})", d.name(), r.class, r.symmetric, r.separating, r.triangle),
        );
    }
    g.finish()
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
