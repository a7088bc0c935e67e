//! Candidates, (partial) rankings and candidate relabelings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported candidate universe. Candidate ids must be below this.
pub const MAX_CANDIDATES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Candidate(pub u8);

impl Candidate {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Candidates `0..m`.
pub fn candidates(m: usize) -> Vec<Candidate> {
    (0..m as u8).map(Candidate).collect()
}

/// A strict order over a subset of candidates, best first.
///
/// Full rankings and s-rankings (top-s prefixes) share this type; the
/// length says which one it is.
#[derive(Clone, Copy)]
pub struct Ranking {
    len: u8,
    items: [Candidate; MAX_CANDIDATES],
}

impl Ranking {
    pub fn new(items: &[Candidate]) -> Result<Self> {
        if items.len() > MAX_CANDIDATES {
            return Err(Error::TooManyCandidates(items.len()));
        }
        let mut seen = [false; MAX_CANDIDATES];
        for c in items {
            if c.index() >= MAX_CANDIDATES {
                return Err(Error::CandidateOutOfRange(c.0));
            }
            if seen[c.index()] {
                return Err(Error::InvalidRanking(format!("candidate {} repeated", c.0)));
            }
            seen[c.index()] = true;
        }
        let mut r = Ranking { len: items.len() as u8, items: [Candidate(0); MAX_CANDIDATES] };
        r.items[..items.len()].copy_from_slice(items);
        Ok(r)
    }

    /// Builds from raw ids; panics on invalid input. Meant for literals.
    pub fn from_ids(ids: &[u8]) -> Self {
        let v: Vec<Candidate> = ids.iter().map(|&i| Candidate(i)).collect();
        Ranking::new(&v).expect("invalid ranking literal")
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.items[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn top(&self) -> Option<Candidate> {
        self.as_slice().first().copied()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.as_slice().contains(&c)
    }

    /// Zero-based position of `c`.
    pub fn position(&self, c: Candidate) -> Option<usize> {
        self.as_slice().iter().position(|&x| x == c)
    }

    /// One-based rank of `c`.
    pub fn rank_of(&self, c: Candidate) -> Result<usize> {
        self.position(c).map(|p| p + 1).ok_or(Error::CandidateNotInRanking(c.0))
    }

    /// Position table indexed by candidate id; `u8::MAX` for absent candidates.
    pub fn positions(&self) -> [u8; MAX_CANDIDATES] {
        let mut pos = [u8::MAX; MAX_CANDIDATES];
        for (i, c) in self.as_slice().iter().enumerate() {
            pos[c.index()] = i as u8;
        }
        pos
    }

    pub fn prefers(&self, a: Candidate, b: Candidate) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            _ => false,
        }
    }

    pub fn prefix(&self, s: usize) -> Ranking {
        let mut r = *self;
        r.len = s.min(self.len()) as u8;
        for i in r.len()..MAX_CANDIDATES {
            r.items[i] = Candidate(0);
        }
        r
    }

    pub fn reversed(&self) -> Ranking {
        let mut v = self.as_slice().to_vec();
        v.reverse();
        Ranking::new(&v).expect("reversal keeps validity")
    }

    pub fn without(&self, c: Candidate) -> Ranking {
        let v: Vec<Candidate> = self.as_slice().iter().copied().filter(|&x| x != c).collect();
        Ranking::new(&v).expect("removal keeps validity")
    }

    pub fn relabeled(&self, sigma: &Relabeling) -> Ranking {
        let v: Vec<Candidate> = self.as_slice().iter().map(|&c| sigma.apply(c)).collect();
        Ranking::new(&v).expect("relabeling is a bijection")
    }

    /// `c` moved to the front, everything else in the same relative order.
    pub fn with_first(&self, c: Candidate) -> Ranking {
        let mut v = vec![c];
        v.extend(self.as_slice().iter().copied().filter(|&x| x != c));
        Ranking::new(&v).expect("valid")
    }

    /// Moves `c` up by `j` positions.
    pub fn raise(&self, c: Candidate, j: usize) -> Ranking {
        let mut v = self.as_slice().to_vec();
        let p = self.position(c).expect("candidate present");
        let target = p.saturating_sub(j);
        v.remove(p);
        v.insert(target, c);
        Ranking::new(&v).expect("valid")
    }

    /// True when this ranking orders exactly the candidates in `cs` (sorted).
    pub fn is_full_over(&self, cs: &[Candidate]) -> bool {
        if self.len() != cs.len() {
            return false;
        }
        let mut v = self.as_slice().to_vec();
        v.sort();
        v == cs
    }

    pub fn display(&self, names: &CandidateNames) -> String {
        names.join(self.as_slice())
    }
}

impl PartialEq for Ranking {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for Ranking {}

impl Hash for Ranking {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state)
    }
}

impl PartialOrd for Ranking {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranking {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", CandidateNames::default().join(self.as_slice()))
    }
}

impl Serialize for Ranking {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().iter().map(|c| c.0).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ranking {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<u8>::deserialize(d)?;
        let v: Vec<Candidate> = ids.into_iter().map(Candidate).collect();
        Ranking::new(&v).map_err(serde::de::Error::custom)
    }
}

/// All full rankings of `cs`, in lexicographic order.
pub fn all_rankings(cs: &[Candidate]) -> Vec<Ranking> {
    all_s_rankings(cs, cs.len())
}

/// All s-rankings (ordered s-subsets) of `cs`, in lexicographic order.
pub fn all_s_rankings(cs: &[Candidate], s: usize) -> Vec<Ranking> {
    let mut sorted = cs.to_vec();
    sorted.sort();
    sorted
        .into_iter()
        .permutations(s)
        .map(|p| Ranking::new(&p).expect("distinct"))
        .collect()
}

/// A bijection on candidate ids. Ids not mentioned map to themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relabeling {
    image: [u8; MAX_CANDIDATES],
}

impl Default for Relabeling {
    fn default() -> Self {
        let mut image = [0u8; MAX_CANDIDATES];
        for (i, x) in image.iter_mut().enumerate() {
            *x = i as u8;
        }
        Relabeling { image }
    }
}

impl Relabeling {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Sends `from[i]` to `to[i]`.
    pub fn from_pairs(from: &[Candidate], to: &[Candidate]) -> Result<Self> {
        let mut r = Relabeling::identity();
        if from.len() != to.len() {
            return Err(Error::NotABijection);
        }
        for (a, b) in from.iter().zip(to) {
            if a.index() >= MAX_CANDIDATES || b.index() >= MAX_CANDIDATES {
                return Err(Error::NotABijection);
            }
            r.image[a.index()] = b.0;
        }
        let mut seen = [false; MAX_CANDIDATES];
        for &x in &r.image {
            if seen[x as usize] {
                return Err(Error::NotABijection);
            }
            seen[x as usize] = true;
        }
        Ok(r)
    }

    /// Exchanges two candidates.
    pub fn swap(a: Candidate, b: Candidate) -> Self {
        let mut r = Relabeling::identity();
        r.image[a.index()] = b.0;
        r.image[b.index()] = a.0;
        r
    }

    pub fn apply(&self, c: Candidate) -> Candidate {
        Candidate(self.image[c.index()])
    }

    pub fn inverse(&self) -> Relabeling {
        let mut r = Relabeling::identity();
        for (i, &x) in self.image.iter().enumerate() {
            r.image[x as usize] = i as u8;
        }
        r
    }

    /// All relabelings permuting `cs` among themselves.
    pub fn all_on(cs: &[Candidate]) -> Vec<Relabeling> {
        all_rankings(cs)
            .into_iter()
            .map(|p| Relabeling::from_pairs(cs, p.as_slice()).expect("permutation"))
            .collect()
    }
}

/// Display names for candidate ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateNames(pub Vec<String>);

impl Default for CandidateNames {
    fn default() -> Self {
        CandidateNames((0..MAX_CANDIDATES).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
    }
}

impl CandidateNames {
    pub fn name(&self, c: Candidate) -> String {
        self.0.get(c.index()).cloned().unwrap_or_else(|| format!("#{}", c.0))
    }

    pub fn lookup(&self, name: &str) -> Option<Candidate> {
        self.0.iter().position(|n| n == name).map(|i| Candidate(i as u8))
    }

    /// Joins names; single-letter names are concatenated, longer ones use `>`.
    pub fn join(&self, cs: &[Candidate]) -> String {
        let names: Vec<String> = cs.iter().map(|&c| self.name(c)).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(">")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_lookup() {
        let r = Ranking::from_ids(&[1, 0, 2]);
        assert_eq!(r.rank_of(Candidate(0)).unwrap(), 2);
        assert!(matches!(r.rank_of(Candidate(5)), Err(Error::CandidateNotInRanking(5))));
    }

    #[test]
    fn raise_moves_up() {
        let r = Ranking::from_ids(&[0, 1, 2, 3]);
        assert_eq!(r.raise(Candidate(3), 2), Ranking::from_ids(&[0, 3, 1, 2]));
        assert_eq!(r.raise(Candidate(3), 9), Ranking::from_ids(&[3, 0, 1, 2]));
    }

    #[test]
    fn repeated_rejected() {
        assert!(Ranking::new(&[Candidate(0), Candidate(0)]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let cs = candidates(4);
        assert_eq!(all_rankings(&cs).len(), 24);
        assert_eq!(all_s_rankings(&cs, 2).len(), 12);
        let all = all_rankings(&cs);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn relabel_inverse() {
        let cs = candidates(3);
        for s in Relabeling::all_on(&cs) {
            let r = Ranking::from_ids(&[2, 0, 1]);
            assert_eq!(r.relabeled(&s).relabeled(&s.inverse()), r);
        }
    }
}
