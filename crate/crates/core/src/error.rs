use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed instance or config text.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Exhaustive search was asked to enumerate more vertices than allowed.
    #[error(
        "brute force refused: graph has {n} vertices but the cap is {cap}; \
         raise the cap explicitly to enumerate 2^{} states",
        n - 1
    )]
    TooLarge { n: usize, cap: usize },

    /// The integrator produced a non-finite value.
    #[error("simulation fault at t = {t}: node {index} is non-finite")]
    NonFinite { t: f64, index: usize },

    /// The adaptive integrator could not meet its tolerance.
    #[error(
        "simulation fault at t = {t}: adaptive step {dt:e} fell below dt_min {dt_min:e}; \
         consider the fixed-step integrator"
    )]
    StepUnderflow { t: f64, dt: f64, dt_min: f64 },

    /// Invalid or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A solver run failed inside a batch.
    #[error("run {solver}/{instance} seed {seed} failed: {source}")]
    Run {
        solver: String,
        instance: String,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors raised while integrating or solving, as opposed to
    /// bad input.
    pub fn is_simulation_fault(&self) -> bool {
        match self {
            Error::NonFinite { .. } | Error::StepUnderflow { .. } => true,
            Error::Run { source, .. } => source.is_simulation_fault(),
            _ => false,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
