//! Gauss hypergeometric function ₂F₁ with parameter derivatives.

use super::gamma::{gamma_jet, rgamma_jet};
use super::jet::CJet;
use super::series::sum_series;
use super::{DerivOrder, EvalResult, Regime};
use crate::error::{Error, Result};
use num_complex::Complex64;

const DIRECT_RADIUS: f64 = 0.9;

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn near_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() < tol && (z.re - z.re.round()).abs() < tol
}

/// Direct power series in `x`; derivatives follow from the jet arithmetic,
/// i.e. term-wise differentiation of the Pochhammer ratios.
pub(crate) fn series_jet<const N: usize>(
    a: CJet<N>,
    b: CJet<N>,
    c: CJet<N>,
    x: Complex64,
) -> Result<(CJet<N>, f64)> {
    if nonpositive_integer(c.v) {
        return Err(Error::Pole {
            func: "hyp2f1",
            at: c.v,
        });
    }
    let s = sum_series("hyp2f1", CJet::one(), |n, t| {
        let nf = Complex64::new(n as f64, 0.0);
        (*t * (a + nf) * (b + nf) / (c + nf)).scale(x / (n as f64 + 1.0))
    })?;
    Ok((s.sum, s.err))
}

/// Connection to x = 1 (valid when c − a − b is not an integer).
fn one_minus_x_jet<const N: usize>(
    a: CJet<N>,
    b: CJet<N>,
    c: CJet<N>,
    x: Complex64,
) -> Result<(CJet<N>, f64)> {
    let one = CJet::<N>::one();
    let y = Complex64::new(1.0, 0.0) - x;
    let s = c - a - b;
    let a1 = gamma_jet(c)? * gamma_jet(s)? * rgamma_jet(c - a)? * rgamma_jet(c - b)?;
    let (f1, e1) = series_jet(a, b, one - s, y)?;
    let mut out = a1 * f1;
    let mut err = e1;
    if y.norm() > 0.0 {
        let a2 = gamma_jet(c)? * gamma_jet(-s)? * rgamma_jet(a)? * rgamma_jet(b)?;
        let (f2, e2) = series_jet(c - a, c - b, one + s, y)?;
        let pow = CJet::<N>::from_c64(y).powj(s);
        out = out + a2 * f2 * pow;
        err = err.max(e2);
    } else if s.v.re <= 0.0 {
        return Err(Error::Domain(format!(
            "hyp2f1 diverges at x = 1 with Re(c−a−b) = {}",
            s.v.re
        )));
    }
    Ok((out, err + 1e-15))
}

/// ₂F₁(a, b; c; x) on jets in the parameters.
pub(crate) fn hyp2f1_jet<const N: usize>(
    a: CJet<N>,
    b: CJet<N>,
    c: CJet<N>,
    x: Complex64,
) -> Result<(CJet<N>, f64)> {
    let r = x.norm();
    if !(x.re.is_finite() && x.im.is_finite()) || r > 1.0 {
        return Err(Error::Domain(format!("hyp2f1 requires |x| ≤ 1, got {x}")));
    }
    if r <= DIRECT_RADIUS {
        return series_jet(a, b, c, x);
    }
    let s = c.v - a.v - b.v;
    let near_one = (Complex64::new(1.0, 0.0) - x).norm() <= 0.5;
    if near_one && !near_integer(s, 1e-3) {
        return one_minus_x_jet(a, b, c, x);
    }
    if r == 1.0 && s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "hyp2f1 on |x| = 1 requires Re(c−a−b) > 0, got {}",
            s.re
        )));
    }
    series_jet(a, b, c, x)
}

/// ₂F₁(a, b; c; x) with the derivative `∂_a^i ∂_b^j F` requested by `d`.
pub fn hyp2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: Complex64,
    d: DerivOrder,
) -> Result<EvalResult> {
    let (f, err) = hyp2f1_jet(
        CJet::<2>::variable(a, 0),
        CJet::<2>::variable(b, 1),
        CJet::<2>::constant(c),
        x,
    )?;
    Ok(EvalResult {
        value: f.v,
        derivative: d.select(&f),
        err_estimate: err,
        regime: Regime::Series,
    })
}
