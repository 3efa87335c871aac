//! Automaton generators and the `.dfa` text format.
//!
//! # Text format
//!
//! Line 1 holds `n m`. Then come `n` rows of `m` whitespace-separated state
//! indices; row `q` lists `q·0 .. q·(m-1)`. Lines whose first non-blank
//! character is `#` are comments, and blank lines are ignored.
//!
//! # Random automata
//!
//! Tables are drawn with xorshift64* seeded through one round of SplitMix64,
//! so corpora can be regenerated in any language:
//!
//! ```text
//! seed:  z = seed + 0x9E3779B97F4A7C15
//!        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!        state = z ^ (z >> 31)          (replaced by 0x9E3779B97F4A7C15 if 0)
//! next:  x ^= x >> 12; x ^= x << 25; x ^= x >> 27
//!        output x * 0x2545F4914F6CDD1D   (all arithmetic wrapping mod 2^64)
//! ```
//!
//! A value uniform in `0..n` is the first output `v` with
//! `v < 2^64 - (2^64 mod n)`, reduced mod `n`. Entries are drawn state-major:
//! `delta[0][0], delta[0][1], ..., delta[n-1][m-1]`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// `cerny(n)`: letter 0 is the cycle `i -> i+1 mod n`, letter 1 sends 0 to 1
/// and fixes every other state.
pub fn cerny(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::InvalidAutomaton(format!(
            "Černý automaton needs n >= 2, got {n}"
        )));
    }
    let rows = (0..n)
        .map(|q| vec![(q + 1) % n, if q == 0 { 1 } else { q }])
        .collect();
    Automaton::new(rows)
}

/// The xorshift64* generator described in the module docs.
#[derive(Debug, Clone)]
pub struct Xorshift64Star {
    state: u64,
}

impl Xorshift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Xorshift64Star {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..bound` by rejection; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }
}

pub fn random_automaton(n: usize, m: usize, seed: u64) -> Result<Automaton> {
    let mut rng = Xorshift64Star::new(seed);
    let delta = (0..n * m).map(|_| rng.below(n as u64) as usize).collect();
    Automaton::from_table(n, m, delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Cerny,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub count: usize,
}

impl CorpusSpec {
    /// Named automata. Random entry `i` uses seed `seed + i` (wrapping); the
    /// Černý kind yields one automaton regardless of `count`.
    pub fn generate(&self) -> Result<Vec<(String, Automaton)>> {
        match self.kind {
            CorpusKind::Cerny => Ok(vec![(format!("cerny-{}", self.n), cerny(self.n)?)]),
            CorpusKind::Random => (0..self.count)
                .map(|i| {
                    let seed = self.seed.wrapping_add(i as u64);
                    let a = random_automaton(self.n, self.m, seed)?;
                    Ok((format!("random-n{}-m{}-s{seed}", self.n, self.m), a))
                })
                .collect(),
        }
    }
}

pub fn serialize(automaton: &Automaton) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", automaton.states(), automaton.letters()).unwrap();
    for q in 0..automaton.states() {
        let row: Vec<String> = automaton.row(q).iter().map(|t| t.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Automaton> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match dims.as_slice() {
        [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) if n > 0 && m > 0 => (n, m),
            _ => return Err(parse_err(hline, format!("malformed header \"{header}\""))),
        },
        _ => return Err(parse_err(hline, format!("malformed header \"{header}\""))),
    };

    let mut delta = Vec::with_capacity(n * m);
    let mut last = hline;
    for q in 0..n {
        let (lineno, row) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {n} rows, found {q}")))?;
        last = lineno;
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != m {
            return Err(parse_err(
                lineno,
                format!("expected {m} entries, found {}", entries.len()),
            ));
        }
        for e in entries {
            let t: usize = e
                .parse()
                .map_err(|_| parse_err(lineno, format!("invalid state index \"{e}\"")))?;
            if t >= n {
                return Err(parse_err(lineno, format!("state index {t} out of range")));
            }
            delta.push(t);
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(parse_err(
            lineno,
            format!("unexpected row beyond the {n} declared"),
        ));
    }
    Automaton::from_table(n, m, delta)
}
