//! Complex special functions with parameter derivatives.

pub mod gamma;
pub mod hyp2f1;
pub mod jet;
pub mod kummer;
pub mod legendre;
mod series;

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

pub use gamma::{digamma, ln_gamma};
pub use hyp2f1::hyp2f1;
pub use kummer::{kummer_m, kummer_u, kummer_v};
pub use legendre::legendre_pq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Series,
    Asymptotic,
    LimitForm,
}

/// A function value, an optional requested derivative, and an a-posteriori
/// relative error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub derivative: Option<Complex64>,
    pub err_estimate: f64,
    pub regime: Regime,
}

impl EvalResult {
    pub fn value(value: Complex64, err_estimate: f64, regime: Regime) -> Self {
        EvalResult {
            value,
            derivative: None,
            err_estimate,
            regime,
        }
    }
}

/// Orders of differentiation with respect to the first two parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DerivOrder {
    pub wrt_a: u8,
    pub wrt_b: u8,
}

impl DerivOrder {
    pub const NONE: DerivOrder = DerivOrder { wrt_a: 0, wrt_b: 0 };

    pub fn new(wrt_a: u8, wrt_b: u8) -> Result<Self> {
        if wrt_a + wrt_b > 2 {
            return Err(Error::Domain(format!(
                "derivative order ({wrt_a}, {wrt_b}) exceeds 2"
            )));
        }
        Ok(DerivOrder { wrt_a, wrt_b })
    }

    /// Pick the requested component out of a two-parameter jet.
    pub(crate) fn select(self, j: &jet::CJet<2>) -> Option<Complex64> {
        match (self.wrt_a, self.wrt_b) {
            (0, 0) => None,
            (1, 0) => Some(j.g[0]),
            (0, 1) => Some(j.g[1]),
            (2, 0) => Some(j.h[0][0]),
            (1, 1) => Some(j.h[0][1]),
            _ => Some(j.h[1][1]),
        }
    }
}
