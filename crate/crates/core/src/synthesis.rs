//! Constructive reset-word synthesis.
//!
//! A word of corank `r` is extended to one of larger corank in one of two ways:
//!
//! * compression ([`frankl_step`]): append a shortest word that shrinks
//!   `Q·u`; its length is at most `(r+1)(r+2)/2`.
//! * gap prepending ([`shitov_step`]): for `r` in `[1, n/2 - 1]` and a word `v`
//!   that is rank-minimal among all words of length `<= |v| + 2r`, find an
//!   escape word `w` moving `Q·v` off the singleton kernel of `u`; then `v w u`
//!   has corank at least `r + 1` and length at most `|u| + |v| + 2r`.
//!
//! [`synthesize`] starts from the shortest word of corank `>= rho`, applies the
//! shorter of the two extensions while `r <= n/2 - 1`, and finishes with
//! compression steps. Every step records whether it stayed within its
//! length guarantee.

use serde::Serialize;

use crate::automaton::{Automaton, StateSet, Word};
use crate::error::{Error, Result};
use crate::image::Explorer;
use crate::spectrum::{rank_profile, RankProfile};

/// Shortest (then lexicographically least) `w` with `aset ⊄ S·w` or
/// `|S·w| < |S|`.
pub fn escape_word(
    aset: &StateSet,
    s: &StateSet,
    automaton: &Automaton,
    budget: usize,
) -> Result<Word> {
    let n = automaton.states();
    for set in [aset, s] {
        if set.universe() != n {
            return Err(Error::StateCountMismatch {
                expected: n,
                got: set.universe(),
            });
        }
    }
    if aset.is_empty() {
        return Err(Error::Precondition("escape target set is empty".into()));
    }
    let size = s.len();
    Explorer::new(automaton, budget)
        .shortest(s.clone(), |img| !aset.is_subset(img) || img.len() < size)?
        .ok_or_else(|| {
            Error::PremiseViolated(format!("no word moves {s} off {aset} or shrinks it"))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Initial,
    Frankl,
    Shitov,
    FinalFrankl,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub kind: StepKind,
    pub input_corank: usize,
    pub input_length: usize,
    /// Letters added by the step (appended for compression, the prefix `v w`
    /// for gap prepending, the whole word for the initial step).
    pub added: usize,
    /// Allowance for `added`: `(r+1)(r+2)/2` for compression,
    /// `2(1 s_1 + ... + r s_r) + 2r` for gap prepending inside the pipeline,
    /// `n^2` for the initial word.
    pub budget: usize,
    /// Cap on the resulting length, `|u| + |v| + 2r`, for gap prepending.
    pub length_limit: Option<usize>,
    pub length: usize,
    pub corank: usize,
    pub bound_ok: bool,
}

#[derive(Debug, Clone)]
pub struct Step {
    pub word: Word,
    pub record: StepRecord,
}

pub fn compression_budget(r: usize) -> usize {
    (r + 1) * (r + 2) / 2
}

/// `u` followed by a shortest word shrinking `Q·u`.
pub fn frankl_step(u: &Word, automaton: &Automaton, budget: usize) -> Result<Step> {
    let n = automaton.states();
    let image = automaton.apply_word(&automaton.full_set(), u)?;
    let r = n - image.len();
    if r + 2 > n {
        return Err(Error::Precondition(format!(
            "corank {r} leaves nothing to compress (n = {n})"
        )));
    }
    let size = image.len();
    let w = Explorer::new(automaton, budget)
        .shortest(image, |img| img.len() < size)?
        .ok_or(Error::NotSynchronizing)?;
    let word = u.concat(&w);
    let corank = automaton.corank(&word)?;
    let allowance = compression_budget(r);
    Ok(Step {
        record: StepRecord {
            kind: StepKind::Frankl,
            input_corank: r,
            input_length: u.len(),
            added: w.len(),
            budget: allowance,
            length_limit: None,
            length: word.len(),
            corank,
            bound_ok: w.len() <= allowance && corank > r,
        },
        word,
    })
}

/// `v w u` where `w` is an escape word taking `Q·v` off the singleton kernel
/// of `u`. The caller vouches that `v` is rank-minimal among words of length
/// `<= |v| + 2r`; if the escape word only shrinks `Q·v`, that premise is
/// reported as violated.
pub fn shitov_step(u: &Word, v: &Word, automaton: &Automaton, budget: usize) -> Result<Step> {
    let n = automaton.states();
    let r = automaton.corank(u)?;
    automaton.check_word(v)?;
    // r in [1, n/2 - 1]  <=>  r >= 1 and 2r + 2 <= n
    if r == 0 || 2 * r + 2 > n {
        return Err(Error::Precondition(format!(
            "corank {r} is outside [1, n/2 - 1] for n = {n}"
        )));
    }
    let kernel = automaton.singleton_kernel(u)?;
    let image_v = automaton.apply_word(&automaton.full_set(), v)?;
    let w = escape_word(&kernel, &image_v, automaton, budget)?;
    let moved = automaton.apply_word(&image_v, &w)?;
    if kernel.is_subset(&moved) {
        return Err(Error::PremiseViolated(format!(
            "{} shrinks Q·{} instead of leaving the kernel; the prefix is not rank-minimal",
            w.display(automaton.letters()),
            v.display(automaton.letters())
        )));
    }
    let word = v.concat(&w).concat(u);
    let corank = automaton.corank(&word)?;
    let limit = u.len() + v.len() + 2 * r;
    Ok(Step {
        record: StepRecord {
            kind: StepKind::Shitov,
            input_corank: r,
            input_length: u.len(),
            added: v.len() + w.len(),
            budget: v.len() + 2 * r,
            length_limit: Some(limit),
            length: word.len(),
            corank,
            bound_ok: w.len() <= 2 * r && word.len() <= limit && corank > r,
        },
        word,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisTrace {
    pub n: usize,
    pub steps: Vec<StepRecord>,
    pub final_word: Word,
    /// Per-step guarantee flags, in step order.
    pub bound_ok: Vec<bool>,
}

impl SynthesisTrace {
    pub fn all_bounds_ok(&self) -> bool {
        self.bound_ok.iter().all(|&b| b)
    }

    pub fn length(&self) -> usize {
        self.final_word.len()
    }
}

pub fn synthesize(automaton: &Automaton, budget: usize) -> Result<SynthesisTrace> {
    let profile = rank_profile(automaton, budget)?;
    synthesize_with_profile(automaton, &profile, budget)
}

/// Runs the pipeline on a precomputed profile of `automaton`.
pub fn synthesize_with_profile(
    automaton: &Automaton,
    profile: &RankProfile,
    budget: usize,
) -> Result<SynthesisTrace> {
    let n = automaton.states();
    let mut word = profile.witness(profile.rho).clone();
    let mut r = automaton.corank(&word)?;
    let mut steps = vec![StepRecord {
        kind: StepKind::Initial,
        input_corank: 0,
        input_length: 0,
        added: word.len(),
        budget: n * n,
        length_limit: None,
        length: word.len(),
        corank: r,
        bound_ok: word.len() < n * n && r >= profile.rho,
    }];

    while r >= 1 && 2 * r + 2 <= n {
        let compress = frankl_step(&word, automaton, budget)?;
        // delta_rho > n >= 2r + 2, so some gap above 2r exists
        let tau = profile
            .first_gap_above(2 * r)
            .expect("the gap at rho exceeds n");
        let mut prepend = shitov_step(&word, profile.witness(tau), automaton, budget)?;
        let allowance = profile.gap_step_budget(r);
        prepend.record.budget = allowance;
        prepend.record.bound_ok &= prepend.record.added <= allowance;
        let chosen = if prepend.word.len() < compress.word.len() {
            prepend
        } else {
            compress
        };
        word = chosen.word;
        r = chosen.record.corank;
        steps.push(chosen.record);
    }

    while r + 1 < n {
        let mut step = frankl_step(&word, automaton, budget)?;
        step.record.kind = StepKind::FinalFrankl;
        word = step.word;
        r = step.record.corank;
        steps.push(step.record);
    }

    let bound_ok = steps.iter().map(|s| s.bound_ok).collect();
    Ok(SynthesisTrace {
        n,
        steps,
        final_word: word,
        bound_ok,
    })
}
