//! Complete deterministic automata, state subsets and words.
//!
//! States and letters are dense 0-based indices. The transition table is
//! stored state-major, so `delta[q * m + a] = q·a`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type State = usize;
pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    n: usize,
    m: usize,
    delta: Vec<State>,
}

impl Automaton {
    /// Builds an automaton from its rows: `rows[q][a] = q·a`.
    pub fn new(rows: Vec<Vec<State>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(q) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::InvalidAutomaton(format!(
                "row {q} has {} entries, expected {m}",
                rows[q].len()
            )));
        }
        Self::from_table(n, m, rows.into_iter().flatten().collect())
    }

    /// Builds an automaton from a state-major table of length `n * m`.
    pub fn from_table(n: usize, m: usize, delta: Vec<State>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if m == 0 {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        if delta.len() != n * m {
            return Err(Error::InvalidAutomaton(format!(
                "table has {} entries, expected {}",
                delta.len(),
                n * m
            )));
        }
        if let Some(i) = delta.iter().position(|&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "state {} on letter {} maps to {}, outside 0..{n}",
                i / m,
                i % m,
                delta[i]
            )));
        }
        Ok(Automaton { n, m, delta })
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn next(&self, q: State, a: Letter) -> State {
        self.delta[q * self.m + a]
    }

    pub fn row(&self, q: State) -> &[State] {
        &self.delta[q * self.m..(q + 1) * self.m]
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&a| a >= self.m) {
            Some(&letter) => Err(Error::InvalidWord {
                letter,
                alphabet: self.m,
            }),
            None => Ok(()),
        }
    }

    pub fn state_after(&self, q: State, w: &Word) -> State {
        w.letters().iter().fold(q, |q, &a| self.next(q, a))
    }

    /// Image of `set` under one letter. The letter must be valid.
    pub fn image(&self, set: &StateSet, a: Letter) -> StateSet {
        let mut out = StateSet::empty(self.n);
        for q in set.iter() {
            out.insert(self.next(q, a));
        }
        out
    }

    /// `S·w = { s·w : s in S }`.
    pub fn apply_word(&self, set: &StateSet, w: &Word) -> Result<StateSet> {
        self.check_word(w)?;
        if set.universe() != self.n {
            return Err(Error::StateCountMismatch {
                expected: self.n,
                got: set.universe(),
            });
        }
        let mut out = StateSet::empty(self.n);
        for q in set.iter() {
            out.insert(self.state_after(q, w));
        }
        Ok(out)
    }

    /// `|Q·w|`.
    pub fn rank(&self, w: &Word) -> Result<usize> {
        Ok(self.apply_word(&self.full_set(), w)?.len())
    }

    /// `n - |Q·w|`.
    pub fn corank(&self, w: &Word) -> Result<usize> {
        Ok(self.n - self.rank(w)?)
    }

    /// Union of the preimages `σ·u⁻¹` (for `σ in Q·u`) that are singletons.
    pub fn singleton_kernel(&self, u: &Word) -> Result<StateSet> {
        self.check_word(u)?;
        let images: Vec<State> = (0..self.n).map(|q| self.state_after(q, u)).collect();
        let mut fibre = vec![0usize; self.n];
        for &t in &images {
            fibre[t] += 1;
        }
        Ok(StateSet::from_states(
            self.n,
            (0..self.n).filter(|&q| fibre[images[q]] == 1),
        ))
    }

    /// Every pair of states can be merged by some word. Decided by a backward
    /// search on the pair graph from the pairs merged by a single letter.
    pub fn is_synchronizing(&self) -> bool {
        let n = self.n;
        if n == 1 {
            return true;
        }
        let mut preimages = vec![Vec::new(); n * self.m];
        for q in 0..n {
            for a in 0..self.m {
                preimages[self.next(q, a) * self.m + a].push(q);
            }
        }
        let mut merged = vec![false; n * n];
        let mut queue = VecDeque::new();
        let mark =
            |p: State, q: State, merged: &mut Vec<bool>, queue: &mut VecDeque<(State, State)>| {
                let (p, q) = if p < q { (p, q) } else { (q, p) };
                if !merged[p * n + q] {
                    merged[p * n + q] = true;
                    queue.push_back((p, q));
                }
            };
        for t in 0..n {
            for a in 0..self.m {
                let pre = &preimages[t * self.m + a];
                for (i, &p) in pre.iter().enumerate() {
                    for &q in &pre[i + 1..] {
                        mark(p, q, &mut merged, &mut queue);
                    }
                }
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for a in 0..self.m {
                for &p in &preimages[x * self.m + a] {
                    for &q in &preimages[y * self.m + a] {
                        if p != q {
                            mark(p, q, &mut merged, &mut queue);
                        }
                    }
                }
            }
        }
        (0..n).all(|p| (p + 1..n).all(|q| merged[p * n + q]))
    }
}

/// A subset of `0..n` stored as a fixed-width bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    n: usize,
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.bits.iter_mut().enumerate() {
            let lo = i * 64;
            let width = (n - lo).min(64);
            *w = if width == 64 {
                u64::MAX
            } else {
                (1u64 << width) - 1
            };
        }
        s
    }

    /// Panics if a state is outside `0..n`.
    pub fn from_states(n: usize, states: impl IntoIterator<Item = State>) -> Self {
        let mut s = Self::empty(n);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub(crate) fn from_words(n: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), n.div_ceil(64));
        StateSet { n, bits }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    /// Size of the ambient state space.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, q: State) {
        assert!(q < self.n, "state {q} outside 0..{}", self.n);
        self.bits[q / 64] |= 1 << (q % 64);
    }

    #[inline]
    pub fn contains(&self, q: State) -> bool {
        q < self.n && self.bits[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for StateSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A finite sequence of letter indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Reads `"baab"` as letters `1 0 0 1`; only `a..=z` are accepted.
    pub fn from_alpha(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| c.is_ascii_lowercase().then(|| (c as u8 - b'a') as Letter))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Letters `a`, `b`, ... when the alphabet has at most 26 letters,
    /// otherwise a bracketed index list.
    pub fn display(&self, alphabet: usize) -> WordDisplay<'_> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: usize,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 26 {
            if self.word.is_empty() {
                return f.write_str("ε");
            }
            for &a in self.word.letters() {
                write!(f, "{}", (b'a' + a as u8) as char)?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.word.letters())
        }
    }
}
