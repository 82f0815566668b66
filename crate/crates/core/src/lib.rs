pub mod baselines;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ode;

pub use error::{Error, Result};
