//! The length spectrum of an automaton: `lambda_i` is the smallest length of a
//! word of corank at least `i`, `delta_j = lambda_{j+1} - lambda_j`, `rho` is
//! the first corank whose gap exceeds `n`, and the bucket count `s_r` counts
//! the gaps `delta_j` (`j <= rho`) that equal `2r - 1` or `2r`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::image::Explorer;

/// A spectral gap. `lambda_n` is infinite, so the last gap may be too; it
/// never enters arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gap {
    Finite(usize),
    Infinite,
}

impl Gap {
    pub fn finite(self) -> Option<usize> {
        match self {
            Gap::Finite(d) => Some(d),
            Gap::Infinite => None,
        }
    }

    pub fn exceeds(self, bound: usize) -> bool {
        match self {
            Gap::Finite(d) => d > bound,
            Gap::Infinite => true,
        }
    }
}

impl PartialOrd for Gap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gap {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Gap::Finite(a), Gap::Finite(b)) => a.cmp(b),
            (Gap::Finite(_), Gap::Infinite) => Ordering::Less,
            (Gap::Infinite, Gap::Finite(_)) => Ordering::Greater,
            (Gap::Infinite, Gap::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Finite(d) => write!(f, "{d}"),
            Gap::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Gap::Finite(d) => serializer.serialize_u64(*d as u64),
            Gap::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub n: usize,
    /// `lambda_0 ..= lambda_{n-1}`.
    pub lambda: Vec<usize>,
    pub rho: usize,
    /// `delta_0 ..= delta_rho`.
    pub delta: Vec<Gap>,
    /// `s_1 ..= s_k` with `k = floor(n/2)`; entry `r - 1` holds `s_r`.
    pub buckets: Vec<usize>,
    /// Entry `i` is a lexicographically least shortest word of corank `>= i`.
    pub witnesses: Vec<Word>,
}

impl RankProfile {
    pub fn reset_threshold(&self) -> usize {
        *self.lambda.last().expect("n >= 1")
    }

    pub fn k(&self) -> usize {
        self.n / 2
    }

    /// `s_r`; zero outside `1..=k`.
    pub fn s(&self, r: usize) -> usize {
        if r == 0 || r > self.buckets.len() {
            0
        } else {
            self.buckets[r - 1]
        }
    }

    /// `1 s_1 + 2 s_2 + ... + r s_r`.
    pub fn weighted_prefix(&self, r: usize) -> usize {
        (1..=r.min(self.buckets.len())).map(|j| j * self.s(j)).sum()
    }

    /// `2 (1 s_1 + ... + r s_r) + 2r`, the length allowance for raising the
    /// corank of a word of corank `r` via a gap witness.
    pub fn gap_step_budget(&self, r: usize) -> usize {
        2 * self.weighted_prefix(r) + 2 * r
    }

    /// Smallest `tau <= rho` with `delta_tau > bound`.
    pub fn first_gap_above(&self, bound: usize) -> Option<usize> {
        self.delta.iter().position(|g| g.exceeds(bound))
    }

    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    /// `sum_{r=rho..floor(n/2)} min(r^2/4, 1 s_1 + ... + r s_r)` in exact arithmetic.
    pub fn phi_sum(&self) -> Ratio<i128> {
        (self.rho..=self.k())
            .map(|r| {
                let cap = Ratio::new((r * r) as i128, 4);
                let prefix = Ratio::from_integer(self.weighted_prefix(r) as i128);
                cap.min(prefix)
            })
            .sum()
    }
}

fn bucket_of(gap: usize) -> usize {
    gap.div_ceil(2)
}

/// Derives `delta`, `rho` and the buckets from `lambda`.
pub fn profile_from_lambda(lambda: Vec<usize>, witnesses: Vec<Word>) -> RankProfile {
    let n = lambda.len();
    let gap = |j: usize| {
        if j + 1 < n {
            Gap::Finite(lambda[j + 1] - lambda[j])
        } else {
            Gap::Infinite
        }
    };
    let rho = (0..n)
        .find(|&j| gap(j).exceeds(n))
        .expect("last gap is infinite");
    let delta: Vec<Gap> = (0..=rho).map(gap).collect();
    let k = n / 2;
    let mut buckets = vec![0; k];
    for d in delta.iter().filter_map(|g| g.finite()) {
        let r = bucket_of(d);
        if (1..=k).contains(&r) {
            buckets[r - 1] += 1;
        }
    }
    RankProfile {
        n,
        lambda,
        rho,
        delta,
        buckets,
        witnesses,
    }
}

/// Explores images of `Q` until a singleton appears. Every corank threshold
/// is first met, in (depth, lexicographic) order, no later than that point.
pub fn rank_profile(automaton: &Automaton, budget: usize) -> Result<RankProfile> {
    if !automaton.is_synchronizing() {
        return Err(Error::NotSynchronizing);
    }
    let n = automaton.states();
    let explorer = Explorer::new(automaton, budget);
    let (graph, hit) = explorer.explore(automaton.full_set(), |s| s.len() == 1)?;
    if hit.is_none() {
        return Err(Error::NotSynchronizing);
    }
    // first node of each image size, in discovery order
    let mut first = vec![usize::MAX; n + 1];
    for (i, node) in graph.nodes().iter().enumerate() {
        let size = node.set.len();
        if first[size] == usize::MAX {
            first[size] = i;
        }
    }
    // corank >= i  <=>  size <= n - i
    let mut lambda = Vec::with_capacity(n);
    let mut witnesses = Vec::with_capacity(n);
    for i in 0..n {
        let idx = first[1..=n - i]
            .iter()
            .copied()
            .min()
            .expect("singleton reached");
        lambda.push(graph.nodes()[idx].depth);
        witnesses.push(graph.word_to(idx));
    }
    Ok(profile_from_lambda(lambda, witnesses))
}

/// Reset threshold and a lexicographically least shortest reset word.
pub fn exact_rt(automaton: &Automaton, budget: usize) -> Result<(usize, Word)> {
    if !automaton.is_synchronizing() {
        return Err(Error::NotSynchronizing);
    }
    let explorer = Explorer::new(automaton, budget);
    let word = explorer
        .shortest(automaton.full_set(), |s| s.len() == 1)?
        .ok_or(Error::NotSynchronizing)?;
    Ok((word.len(), word))
}
