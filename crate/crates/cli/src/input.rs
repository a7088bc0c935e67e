//! Election files.
//!
//! ```text
//! # comment
//! candidates: a b c
//! 2: a>b>c
//! 1: b>c>a
//! ```
//!
//! A numeric prefix is a ballot count; any other prefix is a voter label,
//! and labels get voter ids in order of appearance. Files in the
//! strict-order-complete archive format (`# ALTERNATIVE NAME i: name`
//! headers, `count: i,j,k` ballots over 1-based indices) are accepted too.

use std::collections::BTreeMap;

use distrat::{Candidate, CandidateNames, Election, Ranking, VoterId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: unknown candidate '{name}'")]
    UnknownCandidate { line: usize, name: String },
    #[error("line {line}: candidate '{name}' appears twice")]
    DuplicateCandidate { line: usize, name: String },
    #[error("line {line}: ranking lists {got} of {want} candidates")]
    IncompleteRanking { line: usize, got: usize, want: usize },
    #[error("line {line}: malformed count '{text}'")]
    MalformedCount { line: usize, text: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no candidates header")]
    MissingHeader,
    #[error("no ballots")]
    Empty,
    #[error("{0}")]
    Model(String),
}

/// A parsed file: the election plus display names.
#[derive(Clone, Debug)]
pub struct ElectionFile {
    pub names: CandidateNames,
    pub election: Election,
    pub identified: bool,
}

enum Body {
    Count(u32),
    Label(String),
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || ",>:#".contains(c))
}

pub fn parse_election(text: &str) -> Result<ElectionFile, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut archive_names: BTreeMap<usize, String> = BTreeMap::new();
    let mut archive_m: Option<usize> = None;
    let mut rows: Vec<(usize, Body, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("ALTERNATIVE NAME") {
                let (idx, name) = rest.split_once(':').ok_or_else(|| syntax(line, "expected 'ALTERNATIVE NAME i: name'"))?;
                let idx: usize = idx.trim().parse().map_err(|_| syntax(line, "bad alternative index"))?;
                archive_names.insert(idx, name.trim().to_string());
            } else if let Some(rest) = c.strip_prefix("NUMBER ALTERNATIVES:") {
                archive_m = Some(rest.trim().parse().map_err(|_| syntax(line, "bad number of alternatives"))?);
            }
            continue;
        }
        if let Some(rest) = t.strip_prefix("candidates:") {
            if names.is_some() {
                return Err(syntax(line, "second candidates header"));
            }
            let list: Vec<String> = rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect();
            for (j, n) in list.iter().enumerate() {
                if !valid_name(n) {
                    return Err(syntax(line, "candidate names may not contain spaces, ',', '>', ':' or '#'"));
                }
                if list[..j].contains(n) {
                    return Err(ParseError::DuplicateCandidate { line, name: n.clone() });
                }
            }
            if list.is_empty() || list.len() > distrat::ranking::MAX_CANDIDATES {
                return Err(syntax(line, "need between 1 and 16 candidates"));
            }
            names = Some(list);
            continue;
        }
        let (head, ballot) = t.split_once(':').ok_or_else(|| syntax(line, "expected '<count or voter>: <ranking>'"))?;
        let head = head.trim();
        let body = if head.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+') && !head.is_empty() {
            match head.parse::<u32>() {
                Ok(k) if k > 0 => Body::Count(k),
                _ => return Err(ParseError::MalformedCount { line, text: head.to_string() }),
            }
        } else if valid_name(head) {
            Body::Label(head.to_string())
        } else {
            return Err(ParseError::MalformedCount { line, text: head.to_string() });
        };
        rows.push((line, body, ballot.trim().to_string()));
    }

    // archive format: names from the headers, ballots by 1-based index
    let archive = names.is_none() && (!archive_names.is_empty() || archive_m.is_some());
    let names = match (names, archive) {
        (Some(n), _) => n,
        (None, true) => {
            let m = archive_m.unwrap_or(archive_names.len());
            (1..=m).map(|i| archive_names.get(&i).cloned().unwrap_or_else(|| i.to_string())).collect()
        }
        (None, false) => return Err(ParseError::MissingHeader),
    };
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let m = names.len();
    let lookup = |line: usize, token: &str| -> Result<Candidate, ParseError> {
        let idx = if archive {
            token.parse::<usize>().ok().filter(|&i| (1..=m).contains(&i)).map(|i| i - 1)
        } else {
            names.iter().position(|n| n == token)
        };
        idx.map(|i| Candidate(i as u8)).ok_or_else(|| ParseError::UnknownCandidate { line, name: token.to_string() })
    };
    let sep = if archive { ',' } else { '>' };

    let mut votes: Vec<(VoterId, Ranking)> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let (mut counts, mut identified) = (false, false);
    for (line, body, ballot) in &rows {
        let mut seen = Vec::new();
        for token in ballot.split(sep).map(str::trim) {
            if token.is_empty() {
                return Err(syntax(*line, "empty candidate in ranking"));
            }
            let c = lookup(*line, token)?;
            if seen.contains(&c) {
                return Err(ParseError::DuplicateCandidate { line: *line, name: token.to_string() });
            }
            seen.push(c);
        }
        if seen.len() != m {
            return Err(ParseError::IncompleteRanking { line: *line, got: seen.len(), want: m });
        }
        let r = Ranking::new(&seen).map_err(|e| ParseError::Model(e.to_string()))?;
        match body {
            Body::Count(k) => {
                counts = true;
                for _ in 0..*k {
                    votes.push((VoterId(votes.len() as u32), r));
                }
            }
            Body::Label(l) => {
                identified = true;
                if labels.contains(l) {
                    return Err(syntax(*line, "voter listed twice"));
                }
                labels.push(l.clone());
                votes.push((VoterId(votes.len() as u32), r));
            }
        }
        if counts && identified {
            return Err(syntax(*line, "mixes ballot counts and voter labels"));
        }
    }
    let cs = distrat::ranking::candidates(m);
    let election = Election::new(&cs, votes).map_err(|e| ParseError::Model(e.to_string()))?;
    Ok(ElectionFile { names: CandidateNames(names), election, identified })
}

fn syntax(line: usize, msg: &str) -> ParseError {
    ParseError::Syntax { line, msg: msg.to_string() }
}

fn ranking_text(names: &CandidateNames, r: &Ranking) -> String {
    r.as_slice().iter().map(|&c| names.name(c)).collect::<Vec<_>>().join(">")
}

/// Counts body, ballots in canonical order.
pub fn serialize_anonymous(names: &CandidateNames, e: &Election) -> String {
    let mut out = header(names, e);
    for (r, k) in e.anonymize().counts() {
        out.push_str(&format!("{k}: {}\n", ranking_text(names, r)));
    }
    out
}

/// One line per voter, labelled `v<id>`.
pub fn serialize_identified(names: &CandidateNames, e: &Election) -> String {
    let mut out = header(names, e);
    for (v, r) in e.votes() {
        out.push_str(&format!("v{}: {}\n", v.0, ranking_text(names, r)));
    }
    out
}

fn header(names: &CandidateNames, e: &Election) -> String {
    let list: Vec<String> = e.candidates().iter().map(|&c| names.name(c)).collect();
    format!("candidates: {}\n", list.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_body() {
        let f = parse_election("candidates: a b c\n2: a>b>c\n1: b>c>a").unwrap();
        assert!(!f.identified);
        let x = f.election.anonymize();
        assert_eq!(x.count(&Ranking::from_ids(&[0, 1, 2])), 2);
        assert_eq!(x.count(&Ranking::from_ids(&[1, 2, 0])), 1);
    }

    #[test]
    fn labelled_body() {
        let f = parse_election("candidates: a b\nv1: a>b").unwrap();
        assert!(f.identified);
        assert_eq!(f.election.n(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_election("candidates: a b\n# x\n2: a>a>b").unwrap_err();
        assert_eq!(e, ParseError::DuplicateCandidate { line: 3, name: "a".into() });
        assert!(matches!(parse_election("candidates: a b\n1: a>z"), Err(ParseError::UnknownCandidate { line: 2, .. })));
        assert!(matches!(parse_election("candidates: a b c\n1: a>b"), Err(ParseError::IncompleteRanking { line: 2, got: 2, want: 3 })));
        assert!(matches!(parse_election("candidates: a b\nx2y: a>b\n0: a>b"), Err(ParseError::MalformedCount { line: 3, .. })));
        assert!(matches!(parse_election("candidates: a b\n-1: a>b"), Err(ParseError::MalformedCount { line: 2, .. })));
        assert_eq!(parse_election("1: a>b").unwrap_err(), ParseError::MissingHeader);
    }

    #[test]
    fn archive_format() {
        let text = "# NUMBER ALTERNATIVES: 3\n# ALTERNATIVE NAME 1: Ann\n# ALTERNATIVE NAME 2: Bo\n# ALTERNATIVE NAME 3: Cy\n3: 1,2,3\n1: 3,1,2\n";
        let f = parse_election(text).unwrap();
        assert_eq!(f.names.0, vec!["Ann", "Bo", "Cy"]);
        assert_eq!(f.election.n(), 4);
        assert_eq!(f.election.anonymize().count(&Ranking::from_ids(&[2, 0, 1])), 1);
    }

    #[test]
    fn round_trip() {
        let f = parse_election("candidates: x y z\n1: z>y>x\n2: x>y>z\n1: z>y>x").unwrap();
        let back = parse_election(&serialize_anonymous(&f.names, &f.election)).unwrap();
        assert_eq!(back.election.anonymize(), f.election.anonymize());
        let g = parse_election("candidates: a b\nann: a>b\nbob: b>a").unwrap();
        let back = parse_election(&serialize_identified(&g.names, &g.election)).unwrap();
        assert_eq!(back.election, g.election);
    }
}
