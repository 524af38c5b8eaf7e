use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 200;

/// An interval with a certified sign change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > 0.0 {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    pub fn from_fn(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        Bracket::new(lo, hi, f(lo), f(hi))
    }

    pub fn try_from_fn(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<Self> {
        Bracket::new(lo, hi, f(lo)?, f(hi)?)
    }
}

pub fn solve_bracketed(mut f: impl FnMut(f64) -> f64, bracket: Bracket, tol: f64) -> Result<f64> {
    try_solve_bracketed(|x| Ok(f(x)), bracket, tol)
}

/// Secant steps guarded by bisection. The iterate never leaves the bracket;
/// a bisection is forced whenever the previous step failed to halve it.
pub fn try_solve_bracketed(
    mut f: impl FnMut(f64) -> Result<f64>,
    bracket: Bracket,
    tol: f64,
) -> Result<f64> {
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        mut f_hi,
    } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let mut force_bisect = false;
    for _ in 0..MAX_ITERATIONS {
        let width = hi - lo;
        let secant = lo - f_lo * width / (f_hi - f_lo);
        let x = if force_bisect || !(secant > lo && secant < hi) {
            0.5 * (lo + hi)
        } else {
            secant
        };
        let fx = f(x)?;
        if fx.is_nan() {
            return Err(Error::Domain(format!("objective is NaN at {x}")));
        }
        if fx == 0.0 || fx.abs() <= tol {
            return Ok(x);
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        force_bisect = hi - lo > 0.5 * width;
        if hi - lo <= tol * x.abs().max(1.0) {
            return Ok(if f_lo.abs() < f_hi.abs() { lo } else { hi });
        }
    }
    Err(Error::MaxIterations(MAX_ITERATIONS))
}
