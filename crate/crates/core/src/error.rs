use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("letter {letter} is outside the alphabet of size {alphabet}")]
    InvalidWord { letter: usize, alphabet: usize },
    #[error("state set over {got} states used with an automaton over {expected} states")]
    StateCountMismatch { expected: usize, got: usize },
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
    #[error("image search exceeded the budget of {budget} nodes")]
    BudgetExceeded { budget: usize },
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
