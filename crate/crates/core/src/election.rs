//! Elections (identified voters), voting situations (anonymous multisets of
//! rankings) and vote distributions.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{all_rankings, Candidate, Ranking, Relabeling, MAX_CANDIDATES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VoterId(pub u32);

fn normalize_candidates(cs: &[Candidate]) -> Result<Vec<Candidate>> {
    let set: BTreeSet<Candidate> = cs.iter().copied().collect();
    if set.len() != cs.len() {
        return Err(Error::InvalidElection("repeated candidate".into()));
    }
    if set.is_empty() {
        return Err(Error::InvalidElection("no candidates".into()));
    }
    if set.len() > MAX_CANDIDATES {
        return Err(Error::TooManyCandidates(set.len()));
    }
    Ok(set.into_iter().collect())
}

/// An election: a candidate set and one full ranking per voter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Election {
    candidates: Vec<Candidate>,
    votes: Vec<(VoterId, Ranking)>,
}

impl Election {
    pub fn new(candidates: &[Candidate], votes: Vec<(VoterId, Ranking)>) -> Result<Self> {
        let candidates = normalize_candidates(candidates)?;
        if votes.is_empty() {
            return Err(Error::EmptySituation);
        }
        let mut votes = votes;
        votes.sort_by_key(|(v, _)| *v);
        if votes.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidElection("repeated voter".into()));
        }
        for (v, r) in &votes {
            if !r.is_full_over(&candidates) {
                return Err(Error::InvalidElection(format!(
                    "voter {} does not rank exactly the candidate set",
                    v.0
                )));
            }
        }
        Ok(Election { candidates, votes })
    }

    /// Voters `0..n` casting `rankings` in order.
    pub fn from_rankings(candidates: &[Candidate], rankings: &[Ranking]) -> Result<Self> {
        let votes = rankings.iter().enumerate().map(|(i, r)| (VoterId(i as u32), *r)).collect();
        Election::new(candidates, votes)
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn votes(&self) -> &[(VoterId, Ranking)] {
        &self.votes
    }

    pub fn voters(&self) -> impl Iterator<Item = VoterId> + '_ {
        self.votes.iter().map(|(v, _)| *v)
    }

    pub fn rankings(&self) -> impl Iterator<Item = &Ranking> + '_ {
        self.votes.iter().map(|(_, r)| r)
    }

    pub fn vote_of(&self, v: VoterId) -> Option<&Ranking> {
        self.votes.binary_search_by_key(&v, |(x, _)| *x).ok().map(|i| &self.votes[i].1)
    }

    pub fn n(&self) -> usize {
        self.votes.len()
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn same_voters(&self, other: &Election) -> bool {
        self.votes.len() == other.votes.len()
            && self.votes.iter().zip(&other.votes).all(|(a, b)| a.0 == b.0)
    }

    pub fn anonymize(&self) -> VotingSituation {
        let mut counts = BTreeMap::new();
        for (_, r) in &self.votes {
            *counts.entry(*r).or_insert(0u32) += 1;
        }
        VotingSituation { candidates: self.candidates.clone(), counts }
    }

    fn next_free_id(&self) -> u32 {
        self.votes.last().map(|(v, _)| v.0 + 1).unwrap_or(0)
    }

    /// `k` copies of every voter. Original ids are kept; copies get fresh
    /// ids in order (copy round first, then voter id).
    pub fn scale(&self, k: usize) -> Result<Election> {
        if k == 0 {
            return Err(Error::ZeroScale);
        }
        let mut votes = self.votes.clone();
        let mut next = self.next_free_id();
        for _ in 1..k {
            for (_, r) in &self.votes {
                votes.push((VoterId(next), *r));
                next += 1;
            }
        }
        Ok(Election { candidates: self.candidates.clone(), votes })
    }

    /// Union of two elections over the same candidates. Voters of `other`
    /// that clash with ids already present are renumbered past the maximum.
    pub fn concat(&self, other: &Election) -> Result<Election> {
        if self.candidates != other.candidates {
            return Err(Error::MismatchedCandidates);
        }
        let ids: BTreeSet<VoterId> = self.voters().collect();
        let disjoint = other.voters().all(|v| !ids.contains(&v));
        let mut votes = self.votes.clone();
        if disjoint {
            votes.extend(other.votes.iter().copied());
        } else {
            let mut next = self.next_free_id().max(other.next_free_id());
            for (_, r) in &other.votes {
                votes.push((VoterId(next), *r));
                next += 1;
            }
        }
        Election::new(&self.candidates, votes)
    }

    /// Appends new voters with fresh ids.
    pub fn with_added(&self, rankings: &[Ranking]) -> Result<Election> {
        let mut votes = self.votes.clone();
        let mut next = self.next_free_id();
        for r in rankings {
            votes.push((VoterId(next), *r));
            next += 1;
        }
        Election::new(&self.candidates, votes)
    }

    /// The sub-election on the voters for which `keep` holds.
    pub fn restrict(&self, keep: impl Fn(VoterId) -> bool) -> Result<Election> {
        let votes = self.votes.iter().copied().filter(|(v, _)| keep(*v)).collect();
        Election::new(&self.candidates, votes)
    }

    /// Renames voters by `g`, which must be injective on the voter set.
    pub fn permute_voters(&self, g: impl Fn(VoterId) -> VoterId) -> Result<Election> {
        let votes = self.votes.iter().map(|(v, r)| (g(*v), *r)).collect();
        Election::new(&self.candidates, votes)
    }

    /// Same voters, new rankings (voter order).
    pub fn with_rankings(&self, rankings: &[Ranking]) -> Result<Election> {
        if rankings.len() != self.n() {
            return Err(Error::InvalidElection("wrong number of rankings".into()));
        }
        let votes = self.votes.iter().zip(rankings).map(|((v, _), r)| (*v, *r)).collect();
        Election::new(&self.candidates, votes)
    }

    pub fn permute_candidates(&self, sigma: &Relabeling) -> Result<Election> {
        let mapped: Vec<Candidate> = self.candidates.iter().map(|&c| sigma.apply(c)).collect();
        let sorted: BTreeSet<Candidate> = mapped.iter().copied().collect();
        if sorted.into_iter().collect::<Vec<_>>() != self.candidates {
            return Err(Error::NotABijection);
        }
        let votes = self.votes.iter().map(|(v, r)| (*v, r.relabeled(sigma))).collect();
        Ok(Election { candidates: self.candidates.clone(), votes })
    }

    pub fn reverse(&self) -> Election {
        let votes = self.votes.iter().map(|(v, r)| (*v, r.reversed())).collect();
        Election { candidates: self.candidates.clone(), votes }
    }

    pub fn delete_candidate(&self, c: Candidate) -> Result<Election> {
        if !self.candidates.contains(&c) {
            return Err(Error::CandidateNotInRanking(c.0));
        }
        let cs: Vec<Candidate> = self.candidates.iter().copied().filter(|&x| x != c).collect();
        let votes = self.votes.iter().map(|(v, r)| (*v, r.without(c))).collect();
        Election::new(&cs, votes)
    }
}

/// An anonymous election: how many voters cast each ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VotingSituation {
    candidates: Vec<Candidate>,
    counts: BTreeMap<Ranking, u32>,
}

impl VotingSituation {
    pub fn new(candidates: &[Candidate], counts: BTreeMap<Ranking, u32>) -> Result<Self> {
        let candidates = normalize_candidates(candidates)?;
        let counts: BTreeMap<Ranking, u32> = counts.into_iter().filter(|(_, k)| *k > 0).collect();
        if counts.is_empty() {
            return Err(Error::EmptySituation);
        }
        for r in counts.keys() {
            if !r.is_full_over(&candidates) {
                return Err(Error::InvalidElection(format!("{r:?} is not a ranking of the candidates")));
            }
        }
        Ok(VotingSituation { candidates, counts })
    }

    pub fn from_pairs(candidates: &[Candidate], pairs: &[(Ranking, u32)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (r, k) in pairs {
            *counts.entry(*r).or_insert(0) += *k;
        }
        VotingSituation::new(candidates, counts)
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn counts(&self) -> &BTreeMap<Ranking, u32> {
        &self.counts
    }

    pub fn count(&self, r: &Ranking) -> u32 {
        self.counts.get(r).copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.counts.values().map(|&k| k as usize).sum()
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    /// Rankings with multiplicity, canonical order.
    pub fn expanded(&self) -> Vec<Ranking> {
        self.counts.iter().flat_map(|(r, &k)| std::iter::repeat(*r).take(k as usize)).collect()
    }

    /// Voters `0..n` in canonical ranking order.
    pub fn to_election(&self) -> Election {
        Election::from_rankings(&self.candidates, &self.expanded()).expect("situation is valid")
    }

    pub fn distribution(&self) -> VoteDistribution {
        let n = self.n() as u64;
        VoteDistribution {
            candidates: self.candidates.clone(),
            weights: self.counts.iter().map(|(r, &k)| (*r, Ratio::new(k as u64, n))).collect(),
        }
    }

    pub fn scale(&self, k: usize) -> Result<VotingSituation> {
        if k == 0 {
            return Err(Error::ZeroScale);
        }
        let counts = self.counts.iter().map(|(r, &c)| (*r, c * k as u32)).collect();
        Ok(VotingSituation { candidates: self.candidates.clone(), counts })
    }

    pub fn add(&self, other: &VotingSituation) -> Result<VotingSituation> {
        if self.candidates != other.candidates {
            return Err(Error::MismatchedCandidates);
        }
        let mut counts = self.counts.clone();
        for (r, &k) in &other.counts {
            *counts.entry(*r).or_insert(0) += k;
        }
        Ok(VotingSituation { candidates: self.candidates.clone(), counts })
    }

    pub fn permute_candidates(&self, sigma: &Relabeling) -> Result<VotingSituation> {
        let e = self.to_election().permute_candidates(sigma)?;
        Ok(e.anonymize())
    }

    pub fn reverse(&self) -> VotingSituation {
        self.to_election().reverse().anonymize()
    }

    pub fn delete_candidate(&self, c: Candidate) -> Result<VotingSituation> {
        Ok(self.to_election().delete_candidate(c)?.anonymize())
    }
}

/// Normalized situation: the fraction of voters casting each ranking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteDistribution {
    pub candidates: Vec<Candidate>,
    pub weights: BTreeMap<Ranking, Ratio<u64>>,
}

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBounds {
    pub max_candidates: usize,
    pub max_voters: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds { max_candidates: 4, max_voters: 5 }
    }
}

/// Every voting situation with exactly `n` voters over `cs`, canonical order.
pub fn enumerate_situations(cs: &[Candidate], n: usize, bounds: EnumBounds) -> Result<Vec<VotingSituation>> {
    if cs.len() > bounds.max_candidates || n > bounds.max_voters {
        return Err(Error::BoundsExceeded(format!(
            "enumeration of m={} n={} (limits m<={} n<={})",
            cs.len(),
            n,
            bounds.max_candidates,
            bounds.max_voters
        )));
    }
    let cs = normalize_candidates(cs)?;
    let rankings = all_rankings(&cs);
    Ok(rankings
        .iter()
        .combinations_with_replacement(n)
        .map(|combo| {
            let mut counts = BTreeMap::new();
            for r in combo {
                *counts.entry(*r).or_insert(0u32) += 1;
            }
            VotingSituation { candidates: cs.clone(), counts }
        })
        .collect())
}

/// Every situation with `1..=n_max` voters.
pub fn enumerate_up_to(cs: &[Candidate], n_max: usize, bounds: EnumBounds) -> Result<Vec<VotingSituation>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_situations(cs, n, bounds)?);
    }
    Ok(out)
}

/// Every election over `cs` whose voter set is exactly `voters`.
pub fn all_profiles(cs: &[Candidate], voters: &[VoterId]) -> Result<Vec<Election>> {
    if voters.is_empty() {
        return Ok(Vec::new());
    }
    let rankings = all_rankings(cs);
    let total = (rankings.len() as f64).powi(voters.len() as i32);
    if total > 5e6 {
        return Err(Error::BoundsExceeded(format!("{total} profiles")));
    }
    let mut out = Vec::new();
    for combo in std::iter::repeat(rankings.iter()).take(voters.len()).multi_cartesian_product() {
        let votes = voters.iter().copied().zip(combo.into_iter().copied()).collect();
        out.push(Election::new(cs, votes)?);
    }
    Ok(out)
}

/// Uniform random situation with `n` voters.
pub fn random_situation<R: Rng>(cs: &[Candidate], n: usize, rng: &mut R) -> Result<VotingSituation> {
    let rankings = all_rankings(cs);
    let picks: Vec<Ranking> = (0..n).map(|_| *rankings.choose(rng).expect("nonempty")).collect();
    Ok(Election::from_rankings(cs, &picks)?.anonymize())
}

/// `count` random situations from a ChaCha8 stream seeded with `seed`.
pub fn seeded_situations(cs: &[Candidate], n: usize, count: usize, seed: u64) -> Result<Vec<VotingSituation>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_situation(cs, n, &mut rng)).collect()
}
