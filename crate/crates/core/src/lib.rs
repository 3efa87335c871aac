//! Synchronizing automata: exact reset thresholds and length spectra by
//! breadth-first search over images of the state set, constructive reset-word
//! synthesis with per-step length guarantees, and bound certificates.

pub mod automaton;
pub mod certify;
pub mod corpus;
pub mod error;
pub mod image;
pub mod spectrum;
pub mod synthesis;

pub use automaton::{Automaton, Letter, State, StateSet, Word};
pub use certify::{bound_table, certify, BoundTable, CertificateReport};
pub use corpus::{cerny, parse, random_automaton, serialize, CorpusKind, CorpusSpec};
pub use error::{Error, Result};
pub use image::{image_bfs, ImageGraph, DEFAULT_BUDGET};
pub use spectrum::{exact_rt, rank_profile, Gap, RankProfile};
pub use synthesis::{
    escape_word, frankl_step, shitov_step, synthesize, StepKind, StepRecord, SynthesisTrace,
};
