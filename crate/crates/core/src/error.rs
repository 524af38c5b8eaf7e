use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: Complex64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{func}: no convergence after {terms} terms (last term {last_term:e})")]
    NonConvergence {
        func: &'static str,
        terms: usize,
        last_term: f64,
    },
    #[error("no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root solver hit the iteration cap ({0})")]
    MaxIterations(usize),
    #[error("trajectory reached r = {r_pm:e} pm, below the integration floor")]
    SingularityApproach { r_pm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
