//! Name-based views of results, shared by the text, TSV and JSON outputs.

use distrat::engine::{Provenance, ScoreEntry};
use distrat::{CandidateNames, Election, Norm, Outcome, Ranking, Score};
use serde::Serialize;

/// `{abc:2, bca:1}` for anonymous use, `[v0:abc, v1:bca]` per voter.
pub fn election_text(names: &CandidateNames, e: &Election, identified: bool) -> String {
    if identified {
        let votes: Vec<String> = e.votes().iter().map(|(v, r)| format!("v{}:{}", v.0, names.join(r.as_slice()))).collect();
        return format!("[{}]", votes.join(", "));
    }
    let counts: Vec<String> = e.anonymize().counts().iter().map(|(r, k)| format!("{}:{k}", names.join(r.as_slice()))).collect();
    format!("{{{}}}", counts.join(", "))
}

pub fn ranking_label(names: &CandidateNames, r: &Ranking) -> String {
    names.join(r.as_slice())
}

pub fn outcome_labels(names: &CandidateNames, o: &Outcome) -> Vec<String> {
    o.iter().map(|r| ranking_label(names, r)).collect()
}

pub fn provenance_text(p: &Provenance) -> String {
    match p {
        Provenance::VmpClosedForm => "closed-form".into(),
        Provenance::MajoritySelection => "majority-selection".into(),
        Provenance::CondorcetSearch => "condorcet-search".into(),
        Provenance::TournamentScan => "tournament-scan".into(),
        Provenance::InsertionCount => "insertion-count".into(),
        Provenance::DeletionCount => "deletion-count".into(),
        Provenance::YoungSearch => "young-search".into(),
        Provenance::BruteForce { minimizers } => format!("brute-force({minimizers} minimizers)"),
    }
}

/// Six decimals are plenty for a value labeled approximate.
pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

#[derive(Debug, Serialize)]
pub struct ScoreRow {
    pub outcome: String,
    /// For integer p > 1 this is the unrooted sum of p-th powers.
    pub score: Score,
    /// p-th root of `score`, approximate; only for integer p > 1.
    pub root: Option<Score>,
    pub provenance: String,
    pub witness: Option<String>,
}

pub fn score_row(names: &CandidateNames, norm: Option<&Norm>, entry: &ScoreEntry) -> ScoreRow {
    let root = match norm {
        Some(n) if n.integer_p().is_some_and(|p| p > 1) && entry.score.is_finite() => Some(Score::Approx(round6(n.rooted(&entry.score)))),
        _ => None,
    };
    ScoreRow {
        outcome: ranking_label(names, &entry.outcome),
        score: entry.score,
        root,
        provenance: provenance_text(&entry.provenance),
        witness: entry.witness.as_ref().map(|w| election_text(names, w, false)),
    }
}

pub fn score_table_text(rows: &[ScoreRow]) -> String {
    let mut out = String::new();
    let scores: Vec<String> = rows
        .iter()
        .map(|r| match &r.root {
            Some(root) => format!("{} (root {root})", r.score),
            None => r.score.to_string(),
        })
        .collect();
    let w0 = rows.iter().map(|r| r.outcome.len()).max().unwrap_or(0);
    let w1 = scores.iter().map(String::len).max().unwrap_or(0);
    let w2 = rows.iter().map(|r| r.provenance.len()).max().unwrap_or(0);
    for (r, score) in rows.iter().zip(&scores) {
        let witness = r.witness.as_deref().unwrap_or("-");
        out.push_str(&format!("  {:<w0$}  {:<w1$}  {:<w2$}  {witness}\n", r.outcome, score, r.provenance));
    }
    out
}

pub fn score_table_tsv(rows: &[ScoreRow]) -> String {
    let mut out = String::from("outcome\tscore\troot\tprovenance\twitness\n");
    for r in rows {
        let root = r.root.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!("{}\t{}\t{root}\t{}\t{}\n", r.outcome, r.score, r.provenance, r.witness.as_deref().unwrap_or("")));
    }
    out
}
