use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use distrat::axioms::counterexamples::{
    cmp_failure, dodgson_crossover, fishburn_dodgson, fishburn_vrr, uniqueness_counterexample, uniqueness_names, ScoreSheet,
    UniquenessRow,
};
use distrat::axioms::table::{verify_table, CellReport, TableBound};
use distrat::axioms::{
    check_anonymity, check_consistency, check_continuity_on, check_homogeneity, check_neutrality, check_reversal_symmetry,
    pairs_of, AxiomReport, Verdict,
};
use distrat::election::{all_profiles, enumerate_situations, enumerate_up_to, seeded_situations, EnumBounds};
use distrat::ranking::candidates;
use distrat::transport::optimal_matching;
use distrat::{CandidateNames, Election, ElectionDistance, Ranking, Rule, Score, VoterId};
use serde::Serialize;

use crate::input::{parse_election, serialize_anonymous, serialize_identified, ElectionFile};
use crate::render::{election_text, round6, outcome_labels, score_row, score_table_text, score_table_tsv, ScoreRow};
use crate::rules::{RuleArgs, RuleChoice};
use crate::{Cli, Command, Format, UsageError};

pub struct Output {
    pub text: String,
    pub code: u8,
}

trait Report: Serialize {
    fn text(&self) -> String;

    fn tsv(&self) -> String {
        self.text()
    }

    fn code(&self) -> u8 {
        0
    }
}

fn finish(format: Format, report: &impl Report) -> Result<Output, UsageError> {
    let text = match format {
        Format::Text => report.text(),
        Format::Tsv => report.tsv(),
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| UsageError(e.to_string()))? + "\n",
    };
    Ok(Output { text, code: report.code() })
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn load(path: &Path) -> Result<ElectionFile, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_election(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    match &cli.command {
        Command::Winners { file, rule } => winners(cli.format, file, rule),
        Command::Score { file, rule, outcome } => score(cli.format, file, rule, outcome.as_deref()),
        Command::Check { axiom, rule, space, k_max } => check(cli.format, cli.seed, axiom, rule, space, *k_max),
        Command::VerifyTable { bound, samples, sample_bound } => verify(cli.format, cli.seed, bound, *samples, sample_bound),
        Command::Emd { first, second, metric, norm, p } => emd(cli.format, first, second, metric, norm, p),
        Command::Counterexample { which, k, n, k_max } => counterexample(cli.format, *which, *k, *n, *k_max),
        Command::Enumerate { m, n, identified, out_dir } => enumerate(cli.format, *m, *n, *identified, out_dir.as_deref()),
    }
}

fn norm_of(d: &ElectionDistance) -> Option<&distrat::Norm> {
    match d {
        ElectionDistance::Votewise { norm, .. } | ElectionDistance::Quotient { norm, .. } => Some(norm),
        _ => None,
    }
}

#[derive(Serialize)]
struct WinnersReport {
    rule: String,
    /// Empty when every outcome is infinitely far.
    winners: Vec<String>,
    scores: Option<Vec<ScoreRow>>,
}

impl Report for WinnersReport {
    fn text(&self) -> String {
        let winners = if self.winners.is_empty() { "none".to_string() } else { self.winners.join(" ") };
        let mut out = format!("winners: {winners}");
        if let Some(rows) = &self.scores {
            let scores: Vec<String> = rows.iter().map(|r| format!("{}={}", r.outcome, r.score)).collect();
            out.push_str(&format!("; scores {}\n", scores.join(" ")));
            out.push_str(&format!("rule: {}\n", self.rule));
            out.push_str(&score_table_text(rows));
        } else {
            out.push_str(&format!("\nrule: {}\n", self.rule));
        }
        out
    }

    fn tsv(&self) -> String {
        match &self.scores {
            Some(rows) => score_table_tsv(rows),
            None => format!("winner\n{}\n", self.winners.join("\n")),
        }
    }
}

fn winners(format: Format, file: &Path, args: &RuleArgs) -> Result<Output, UsageError> {
    let f = load(file)?;
    let report = match args.build()? {
        RuleChoice::Oracle(o) => {
            let w = o.apply(&f.election)?;
            WinnersReport { rule: o.name(), winners: outcome_labels(&f.names, &w), scores: None }
        }
        RuleChoice::Dr(dr) => {
            let table = dr.table(&f.election)?;
            let winners = match table.winners() {
                Ok(w) => outcome_labels(&f.names, &w),
                Err(distrat::Error::AllInfinite) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let rows = table.entries.iter().map(|x| score_row(&f.names, norm_of(&dr.distance), x)).collect();
            WinnersReport { rule: dr.name(), winners, scores: Some(rows) }
        }
    };
    finish(format, &report)
}

#[derive(Serialize)]
struct ScoreReport {
    rule: String,
    scores: Vec<ScoreRow>,
}

impl Report for ScoreReport {
    fn text(&self) -> String {
        format!("rule: {}\n{}", self.rule, score_table_text(&self.scores))
    }

    fn tsv(&self) -> String {
        score_table_tsv(&self.scores)
    }
}

fn parse_outcome(names: &CandidateNames, text: &str) -> Result<Ranking, UsageError> {
    let parts: Vec<String> = if text.contains('>') {
        text.split('>').map(|s| s.trim().to_string()).collect()
    } else if names.lookup(text).is_some() {
        vec![text.to_string()]
    } else {
        text.chars().map(String::from).collect()
    };
    let cs = parts
        .iter()
        .map(|p| names.lookup(p).ok_or_else(|| usage(format!("--outcome: unknown candidate '{p}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ranking::new(&cs).map_err(|e| usage(format!("--outcome: {e}")))
}

fn score(format: Format, file: &Path, args: &RuleArgs, outcome: Option<&str>) -> Result<Output, UsageError> {
    let f = load(file)?;
    let dr = args.build_dr()?;
    let norm = norm_of(&dr.distance);
    let entries = match outcome {
        Some(text) => vec![dr.score(&f.election, &parse_outcome(&f.names, text)?)?],
        None => dr.table(&f.election)?.entries,
    };
    let scores = entries.iter().map(|x| score_row(&f.names, norm, x)).collect();
    finish(format, &ScoreReport { rule: dr.name(), scores })
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Election files forming the space; otherwise --bound is enumerated.
    pub files: Vec<PathBuf>,
    /// All elections with m candidates and 1..=n voters.
    #[arg(long, default_value = "m3n3")]
    pub bound: String,
    /// Seeded random elections with the --bound shape added to the space.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Enumerate voter profiles rather than ballot counts.
    #[arg(long)]
    pub identified: bool,
    /// Largest combined voter count of the pairs used by consistency and continuity.
    #[arg(long, default_value_t = 6)]
    pub max_total: usize,
}

fn build_space(args: &SpaceArgs, seed: u64) -> Result<(CandidateNames, Vec<Election>), UsageError> {
    if !args.files.is_empty() {
        let files = args.files.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
        let names = files[0].names.clone();
        if files.iter().any(|f| f.names != names) {
            return Err(usage("space files must list the same candidates"));
        }
        return Ok((names, files.into_iter().map(|f| f.election).collect()));
    }
    let bound: TableBound = args.bound.parse()?;
    let cs = candidates(bound.m);
    let mut space = Vec::new();
    if args.identified {
        for n in 1..=bound.n {
            let voters: Vec<VoterId> = (0..n as u32).map(VoterId).collect();
            space.extend(all_profiles(&cs, &voters)?);
        }
    } else {
        let eb = EnumBounds { max_candidates: bound.m, max_voters: bound.n };
        space.extend(enumerate_up_to(&cs, bound.n, eb)?.iter().map(|x| x.to_election()));
    }
    space.extend(seeded_situations(&cs, bound.n, args.samples, seed)?.iter().map(|x| x.to_election()));
    Ok((CandidateNames::default(), space))
}

#[derive(Serialize)]
struct WitnessView {
    detail: String,
    elections: Vec<String>,
    outcomes: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CheckReport {
    axiom: String,
    rule: String,
    verdict: Verdict,
    checked: usize,
    space: usize,
    witness: Option<WitnessView>,
}

impl CheckReport {
    fn new(r: &AxiomReport, names: &CandidateNames, space: usize, identified: bool) -> Self {
        CheckReport {
            axiom: r.axiom.clone(),
            rule: r.rule.clone(),
            verdict: r.verdict,
            checked: r.checked,
            space,
            witness: r.witness.as_ref().map(|w| WitnessView {
                detail: w.detail.clone(),
                elections: w.elections.iter().map(|e| election_text(names, e, identified)).collect(),
                outcomes: w.outcomes.iter().map(|o| outcome_labels(names, o)).collect(),
            }),
        }
    }
}

impl Report for CheckReport {
    fn text(&self) -> String {
        let mut out = format!("{}: {}\nrule: {}\nelections: {}, comparisons: {}\n", self.axiom, self.verdict, self.rule, self.space, self.checked);
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {}\n", w.detail));
            for (e, o) in w.elections.iter().zip(&w.outcomes) {
                out.push_str(&format!("  {e} -> {}\n", o.join(" ")));
            }
        }
        out
    }

    fn tsv(&self) -> String {
        format!("axiom\trule\tverdict\telections\tcomparisons\n{}\t{}\t{}\t{}\t{}\n", self.axiom, self.rule, self.verdict, self.space, self.checked)
    }

    fn code(&self) -> u8 {
        if self.verdict == Verdict::HoldsOnSpace {
            0
        } else {
            1
        }
    }
}

fn check(format: Format, seed: u64, axiom: &str, args: &RuleArgs, space_args: &SpaceArgs, k_max: Option<usize>) -> Result<Output, UsageError> {
    let rule = args.build()?.handle();
    let (names, space) = build_space(space_args, seed)?;
    let report = match axiom {
        "anonymity" => check_anonymity(rule.as_ref(), &space)?,
        "neutrality" => check_neutrality(rule.as_ref(), &space)?,
        "reversal" | "reversal-symmetry" => check_reversal_symmetry(rule.as_ref(), &space)?,
        "homogeneity" => check_homogeneity(rule.as_ref(), &space, k_max.unwrap_or(4))?,
        "consistency" => check_consistency(rule.as_ref(), &pairs_of(&space, space_args.max_total))?,
        "continuity" => {
            let k = k_max.unwrap_or(20);
            if k == 0 {
                return Err(usage("--k-max must be positive"));
            }
            check_continuity_on(rule.as_ref(), &pairs_of(&space, space_args.max_total), k)?
        }
        other => return Err(usage(format!("--axiom: unknown axiom '{other}'"))),
    };
    let identified = space_args.identified || space_args.files.iter().any(|p| load(p).map(|f| f.identified).unwrap_or(false));
    finish(format, &CheckReport::new(&report, &names, space.len(), identified))
}

#[derive(Serialize)]
struct MismatchView {
    election: String,
    oracle: String,
    dr: Option<Vec<String>>,
    expected: Vec<String>,
}

#[derive(Serialize)]
struct CellView {
    cell: String,
    status: String,
    oracles: Vec<String>,
    matching: Vec<String>,
    checked: usize,
    mismatches: usize,
    first_mismatch: Option<MismatchView>,
}

impl CellView {
    fn new(c: &CellReport, names: &CandidateNames) -> Self {
        CellView {
            cell: c.cell.clone(),
            status: c.status().into(),
            oracles: c.oracles.clone(),
            matching: c.matching.clone(),
            checked: c.checked,
            mismatches: c.mismatches,
            first_mismatch: c.first_mismatch.as_ref().map(|m| MismatchView {
                election: election_text(names, &m.election, false),
                oracle: m.oracle.clone(),
                dr: m.dr.as_ref().map(|o| outcome_labels(names, o)),
                expected: outcome_labels(names, &m.expected),
            }),
        }
    }

    fn passes(&self) -> bool {
        self.status == "match" || self.status == "trivial"
    }
}

#[derive(Serialize)]
struct TableView {
    bound: String,
    samples: usize,
    seed: u64,
    elections: usize,
    cells: Vec<CellView>,
    failing: usize,
}

impl Report for TableView {
    fn text(&self) -> String {
        let mut out = format!("space: {} exhaustive plus {} seeded (seed {}), {} elections\n", self.bound, self.samples, self.seed, self.elections);
        let width = self.cells.iter().map(|c| c.cell.len()).max().unwrap_or(0);
        for c in &self.cells {
            let oracles = if c.matching.is_empty() { c.oracles.join(",") } else { c.matching.join(",") };
            out.push_str(&format!("  {:<width$}  {:<11}  {oracles}\n", c.cell, c.status));
            if let (false, Some(m)) = (c.passes(), &c.first_mismatch) {
                let dr = m.dr.as_ref().map(|d| d.join(" ")).unwrap_or_else(|| "none".into());
                out.push_str(&format!(
                    "    {} of {} differ; first {}: dr {} vs {} {}\n",
                    c.mismatches,
                    c.checked,
                    m.election,
                    dr,
                    m.oracle,
                    m.expected.join(" ")
                ));
            }
        }
        if self.failing == 0 {
            out.push_str("all cells match\n");
        } else {
            out.push_str(&format!("{} of {} cells mismatch\n", self.failing, self.cells.len()));
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("cell\tstatus\toracles\tmatching\tchecked\tmismatches\n");
        for c in &self.cells {
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", c.cell, c.status, c.oracles.join(","), c.matching.join(","), c.checked, c.mismatches));
        }
        out
    }

    fn code(&self) -> u8 {
        u8::from(self.failing > 0)
    }
}

fn verify(format: Format, seed: u64, bound: &str, samples: usize, sample_bound: &str) -> Result<Output, UsageError> {
    let b: TableBound = bound.parse()?;
    let s: TableBound = sample_bound.parse()?;
    let tb = TableBound { m: b.m, n: b.n, random: samples, random_m: s.m, random_n: s.n, seed };
    let report = verify_table(&tb)?;
    let names = CandidateNames::default();
    let cells: Vec<CellView> = report.cells.iter().map(|c| CellView::new(c, &names)).collect();
    let failing = cells.iter().filter(|c| !c.passes()).count();
    finish(format, &TableView { bound: b.to_string(), samples, seed, elections: report.elections, cells, failing })
}

#[derive(Serialize)]
struct Pair {
    from: String,
    to: String,
    cost: u64,
}

#[derive(Serialize)]
struct EmdReport {
    metric: String,
    norm: String,
    distance: Score,
    root: Option<Score>,
    matching: Vec<Pair>,
}

impl Report for EmdReport {
    fn text(&self) -> String {
        let mut out = format!("distance: {}", self.distance);
        if let Some(r) = self.root {
            out.push_str(&format!(" (root {r})"));
        }
        out.push_str(&format!("\nmetric: {}/{}\n", self.metric, self.norm));
        for p in &self.matching {
            out.push_str(&format!("  {} -> {}  {}\n", p.from, p.to, p.cost));
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("from\tto\tcost\n");
        for p in &self.matching {
            out.push_str(&format!("{}\t{}\t{}\n", p.from, p.to, p.cost));
        }
        out
    }
}

fn emd(format: Format, first: &Path, second: &Path, metric: &str, norm: &Option<String>, p: &Option<String>) -> Result<Output, UsageError> {
    let (x, y) = (load(first)?, load(second)?);
    if x.names != y.names {
        return Err(usage("the two elections must list the same candidates"));
    }
    let args = RuleArgs { consensus: Some("sunam".into()), metric: Some(metric.into()), norm: norm.clone(), p: p.clone(), strategy: "auto".into(), ..RuleArgs::default() };
    let dr = args.build_dr()?;
    let ElectionDistance::Votewise { metric: rm, norm: nm, .. } = dr.distance else {
        return Err(usage("--metric must be a ranking metric: hamming, kendall, spearman or weighted:..."));
    };
    let (sx, sy) = (x.election.anonymize(), y.election.anonymize());
    let report = match optimal_matching(&rm, &nm, &sx, &sy)? {
        None => EmdReport { metric: rm.name(), norm: nm.name(), distance: Score::Infinite, root: None, matching: Vec::new() },
        Some(m) => {
            let (ex, ey) = (sx.expanded(), sy.expanded());
            let matching = m
                .assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    Ok(Pair { from: x.names.join(ex[i].as_slice()), to: x.names.join(ey[j].as_slice()), cost: rm.distance(&ex[i], &ey[j])? })
                })
                .collect::<Result<Vec<_>, distrat::Error>>()?;
            let root = nm.integer_p().filter(|&q| q > 1).map(|_| Score::Approx(round6(nm.rooted(&m.cost))));
            EmdReport { metric: rm.name(), norm: nm.name(), distance: m.cost, root, matching }
        }
    };
    finish(format, &report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Fishburn,
    VrrLimits,
    CmpFailure,
    Uniqueness,
}

#[derive(Serialize)]
struct SheetRow {
    candidate: String,
    score: Score,
    per_unit: Score,
}

#[derive(Serialize)]
struct SheetReport {
    rule: String,
    k: usize,
    scores: Vec<SheetRow>,
    summary: String,
    winners: Vec<String>,
    crossover: Option<Option<usize>>,
    k_max: usize,
}

fn sheet_report(sheet: &ScoreSheet, crossover: Option<Option<usize>>, k_max: usize) -> SheetReport {
    let k = sheet.k as i64;
    let scores: Vec<SheetRow> = sheet
        .scores
        .iter()
        .map(|(c, s, _)| SheetRow { candidate: c.clone(), score: *s, per_unit: s.div_int(k) })
        .collect();
    let x = scores.iter().find(|r| r.candidate == "x");
    let others: Vec<&SheetRow> = scores.iter().filter(|r| r.candidate != "x").collect();
    let summary = match (x, others.first()) {
        (Some(x), Some(a)) if others.iter().all(|r| r.score == a.score) => {
            format!("x:{} {}..{}:{}", x.score, a.candidate, others[others.len() - 1].candidate, a.score)
        }
        _ => scores.iter().map(|r| format!("{}:{}", r.candidate, r.score)).collect::<Vec<_>>().join(" "),
    };
    SheetReport { rule: sheet.rule.clone(), k: sheet.k, scores, summary, winners: sheet.winners.clone(), crossover, k_max }
}

impl Report for SheetReport {
    fn text(&self) -> String {
        let mut out = format!("{}\n{} scores at k = {}\n", self.summary, self.rule, self.k);
        for r in &self.scores {
            out.push_str(&format!("  {:<3} {:>6}  per unit {} (~{:.3})\n", r.candidate, r.score, r.per_unit, r.per_unit.as_f64()));
        }
        out.push_str(&format!("winners: {}\n", self.winners.join(" ")));
        match self.crossover {
            Some(Some(k)) => out.push_str(&format!("crossover: x is the unique winner from k = {k}\n")),
            Some(None) => out.push_str(&format!("crossover: none up to k = {}\n", self.k_max)),
            None => {}
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("candidate\tscore\tper_unit\n");
        for r in &self.scores {
            out.push_str(&format!("{}\t{}\t{}\n", r.candidate, r.score, r.per_unit));
        }
        out
    }
}

#[derive(Serialize)]
struct CmpReport {
    rows: Vec<distrat::axioms::counterexamples::CmpRow>,
}

impl Report for CmpReport {
    fn text(&self) -> String {
        let mut out = String::from("E = {ab:2, ba:3}, distances to the Condorcet cells\n");
        for r in &self.rows {
            out.push_str(&format!("  {:<11} {:<3} cond_{}  {}\n", r.distance, r.election, r.target, r.score));
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("distance\telection\ttarget\tscore\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.distance, r.election, r.target, r.score));
        }
        out
    }
}

#[derive(Serialize)]
struct UniquenessView {
    n: usize,
    differing_states: usize,
    witness: Option<UniquenessRow>,
    witness_election: Option<String>,
    tied_rows: Vec<UniquenessRow>,
}

fn tops_text(t: &[u32; 4]) -> String {
    format!("a={} b={} c={} c'={}", t[0], t[1], t[2], t[3])
}

impl Report for UniquenessView {
    fn text(&self) -> String {
        let mut out = format!("n = {}: R and R' differ on {} first-place states\n", self.n, self.differing_states);
        match (&self.witness, &self.witness_election) {
            (Some(w), Some(e)) => {
                out.push_str(&format!("witness {}: R = {{{}}}, R' = {{{}}}\n", tops_text(&w.tops), w.r.join(","), w.r_prime.join(",")));
                out.push_str(&format!("  election {e}\n"));
            }
            _ => out.push_str("no witness: R' = R on every state\n"),
        }
        out.push_str("states with as many a as b first places:\n");
        for r in &self.tied_rows {
            out.push_str(&format!("  {}  R = {{{}}}  R' = {{{}}}\n", tops_text(&r.tops), r.r.join(","), r.r_prime.join(",")));
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("a\tb\tc\tc'\tr\tr_prime\n");
        for r in &self.tied_rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", r.tops[0], r.tops[1], r.tops[2], r.tops[3], r.r.join(","), r.r_prime.join(",")));
        }
        out
    }
}

fn counterexample(format: Format, which: Example, k: usize, n: usize, k_max: usize) -> Result<Output, UsageError> {
    if k == 0 {
        return Err(usage("--k must be positive"));
    }
    match which {
        Example::Fishburn => {
            let sheet = fishburn_dodgson(k)?;
            let crossover = dodgson_crossover(k_max)?;
            finish(format, &sheet_report(&sheet, Some(crossover), k_max))
        }
        Example::VrrLimits => finish(format, &sheet_report(&fishburn_vrr(k)?, None, k_max)),
        Example::CmpFailure => finish(format, &CmpReport { rows: cmp_failure()? }),
        Example::Uniqueness => {
            let r = uniqueness_counterexample(n)?;
            let names = uniqueness_names();
            finish(
                format,
                &UniquenessView {
                    n: r.n,
                    differing_states: r.differing_states,
                    witness_election: r.witness_election.as_ref().map(|e| election_text(&names, e, false)),
                    witness: r.witness,
                    tied_rows: r.tied_rows,
                },
            )
        }
    }
}

#[derive(Serialize)]
struct EnumerateReport {
    m: usize,
    n: usize,
    count: usize,
    elections: Vec<String>,
}

impl Report for EnumerateReport {
    fn text(&self) -> String {
        self.elections.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Multiset count C(n + r - 1, r - 1) for r ballot types, as a float to dodge overflow.
fn situation_count(r: usize, n: usize) -> f64 {
    (1..r).map(|i| (n + i) as f64 / i as f64).product()
}

fn enumerate(format: Format, m: usize, n: usize, identified: bool, out_dir: Option<&Path>) -> Result<Output, UsageError> {
    if !(1..=8).contains(&m) || n == 0 {
        return Err(usage("need 1 <= m <= 8 and n >= 1"));
    }
    let cs = candidates(m);
    let names = CandidateNames::default();
    let elections: Vec<Election> = if identified {
        let voters: Vec<VoterId> = (0..n as u32).map(VoterId).collect();
        all_profiles(&cs, &voters)?
    } else {
        let types: usize = (1..=m).product();
        if situation_count(types, n) > 1e6 {
            return Err(usage(format!("more than a million elections with m = {m}, n = {n}")));
        }
        enumerate_situations(&cs, n, EnumBounds { max_candidates: m, max_voters: n })?.iter().map(|x| x.to_election()).collect()
    };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        let names = CandidateNames(names.0[..m].to_vec());
        for (i, e) in elections.iter().enumerate() {
            let body = if identified { serialize_identified(&names, e) } else { serialize_anonymous(&names, e) };
            let path = dir.join(format!("e{:05}.txt", i + 1));
            std::fs::write(&path, body).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        }
    }
    let texts: Vec<String> = elections.iter().map(|e| election_text(&names, e, identified)).collect();
    finish(format, &EnumerateReport { m, n, count: texts.len(), elections: texts })
}
