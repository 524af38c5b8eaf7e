//! Log-gamma and polygamma functions of complex argument.
//!
//! Both use upward recurrence to Re w ≥ 15 followed by the Stirling series.
//! Summing the individual logarithms of the recurrence keeps log-gamma on
//! the principal branch without a reflection step.

use super::jet::CJet;
use super::{EvalResult, Regime};
use crate::error::{Error, Result};
use num_complex::Complex64;

const SHIFT_TO: f64 = 15.0;

/// B_2, B_4, ..., B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn check_pole(func: &'static str, z: Complex64) -> Result<()> {
    if is_pole(z) {
        Err(Error::Pole { func, at: z })
    } else if !(z.re.is_finite() && z.im.is_finite()) {
        Err(Error::Domain(format!("{func}: non-finite argument {z}")))
    } else {
        Ok(())
    }
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TO {
        0
    } else {
        (SHIFT_TO - z.re).ceil() as usize
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Principal branch of ln Γ(z).
pub fn ln_gamma_c(z: Complex64) -> Result<Complex64> {
    check_pole("ln_gamma", z)?;
    let n = shift_count(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += (z + k as f64).ln();
    }
    let w = z + n as f64;
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = w_inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        series += pow * (*b / (m * (m - 1.0)));
        pow *= w_inv2;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok((w - 0.5) * w.ln() - w + half_ln_2pi + series - acc)
}

/// Polygamma ψ⁽ⁿ⁾(z) for n ≥ 0.
pub fn polygamma_c(n: usize, z: Complex64) -> Result<Complex64> {
    check_pole("polygamma", z)?;
    let shift = shift_count(z);
    let nf = factorial(n);
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    // ψ⁽ⁿ⁾(z) = ψ⁽ⁿ⁾(z+N) + (−1)^{n+1} n! Σ (z+k)^{−(n+1)}
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (z + k as f64).powi(-(n as i32 + 1));
    }
    let recur = acc * (sign * nf);
    let w = z + shift as f64;
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let tail = if n == 0 {
        let mut s = w.ln() - 0.5 * w_inv;
        let mut pow = w_inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            s -= pow * (*b / (2.0 * (k as f64 + 1.0)));
            pow *= w_inv2;
        }
        s
    } else {
        let w_n = w_inv.powi(n as i32);
        let mut s = w_n * factorial(n - 1) + w_n * w_inv * (0.5 * nf);
        let mut pow = w_n * w_inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_k = 2 * (k + 1);
            let coef = factorial(two_k + n - 1) / factorial(two_k);
            s += pow * (*b * coef);
            pow *= w_inv2;
        }
        s * sign
    };
    Ok(tail + recur)
}

pub fn digamma_c(z: Complex64) -> Result<Complex64> {
    polygamma_c(0, z)
}

pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma_c(z)?.exp())
}

/// ln Γ as an `EvalResult`.
pub fn ln_gamma(z: Complex64) -> Result<EvalResult> {
    let v = ln_gamma_c(z)?;
    Ok(EvalResult::value(v, 4e-16 * (1.0 + v.norm()), Regime::Asymptotic))
}

/// ψ (order 0) or ψ′ (order 1).
pub fn digamma(z: Complex64, order: usize) -> Result<EvalResult> {
    if order > 1 {
        return Err(Error::Domain(format!("digamma order {order} not in 0..=1")));
    }
    let v = polygamma_c(order, z)?;
    Ok(EvalResult::value(v, 4e-16 * (1.0 + v.norm()), Regime::Asymptotic))
}

/// ln Γ of a jet.
pub fn ln_gamma_jet<const N: usize>(z: CJet<N>) -> Result<CJet<N>> {
    Ok(z.chain(ln_gamma_c(z.v)?, polygamma_c(0, z.v)?, polygamma_c(1, z.v)?))
}

/// Γ of a jet.
pub fn gamma_jet<const N: usize>(z: CJet<N>) -> Result<CJet<N>> {
    Ok(ln_gamma_jet(z)?.exp())
}

/// ψ of a jet.
pub fn digamma_jet<const N: usize>(z: CJet<N>) -> Result<CJet<N>> {
    Ok(z.chain(polygamma_c(0, z.v)?, polygamma_c(1, z.v)?, polygamma_c(2, z.v)?))
}

/// 1/Γ of a jet, finite (and zero-valued) at the poles of Γ.
pub fn rgamma_jet<const N: usize>(z: CJet<N>) -> Result<CJet<N>> {
    if is_pole(z.v) {
        // 1/Γ(−m+ε) = (−1)^m m! ε (1 − ψ(m+1) ε + …)
        let m = (-z.v.re) as usize;
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        let d1 = sgn * factorial(m);
        let d2 = -2.0 * d1 * polygamma_c(0, Complex64::new(m as f64 + 1.0, 0.0))?.re;
        return Ok(z.chain(
            Complex64::new(0.0, 0.0),
            Complex64::new(d1, 0.0),
            Complex64::new(d2, 0.0),
        ));
    }
    Ok((-ln_gamma_jet(z)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EULER_GAMMA;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorial_values() {
        assert!(ln_gamma_c(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((ln_gamma_c(c(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-14);
        assert!((gamma_c(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn modulus_on_imaginary_line() {
        let g = gamma_c(c(1.0, 1.0)).unwrap();
        assert!((g.norm() - (PI / PI.sinh()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn principal_branch_is_continuous_across_negative_axis_region() {
        // ln Γ(z+1) − ln Γ(z) = ln z with no 2πi jump for Im z > 0.
        for &re in &[-7.3, -2.5, -0.5, 0.3, 4.0] {
            let z = c(re, 0.4);
            let d = ln_gamma_c(z + 1.0).unwrap() - ln_gamma_c(z).unwrap() - z.ln();
            assert!(d.norm() < 1e-12, "re={re} d={d}");
        }
    }

    #[test]
    fn digamma_closed_forms() {
        assert!((digamma_c(c(1.0, 0.0)).unwrap().re + EULER_GAMMA).abs() < 1e-15);
        let v = digamma_c(c(0.5, 0.0)).unwrap().re;
        assert!((v + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        let t = polygamma_c(1, c(1.0, 0.0)).unwrap().re;
        assert!((t - PI * PI / 6.0).abs() < 1e-14);
        // Im ψ(1+iy) = −1/(2y) + (π/2) coth(πy)
        let y = 0.8248;
        let im = digamma_c(c(1.0, y)).unwrap().im;
        assert!((im - (-0.5 / y + 0.5 * PI / (PI * y).tanh())).abs() < 1e-14);
    }

    #[test]
    fn polygamma_recurrence() {
        let z = c(0.37, -1.2);
        for n in 0..4 {
            let lhs = polygamma_c(n, z + 1.0).unwrap() - polygamma_c(n, z).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = z.powi(-(n as i32 + 1)) * (sign * factorial(n));
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0), "n={n}");
        }
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(ln_gamma_c(c(-2.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(digamma_c(c(0.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn reciprocal_gamma_at_pole() {
        let z = CJet::<1>::variable(c(-2.0, 0.0), 0);
        let r = rgamma_jet(z).unwrap();
        assert_eq!(r.v, c(0.0, 0.0));
        let h = 1e-5;
        let fd = (gamma_c(c(-2.0 + h, 0.0)).unwrap().inv() - gamma_c(c(-2.0 - h, 0.0)).unwrap().inv()) / (2.0 * h);
        assert!((r.g[0] - fd).norm() < 1e-8);
        let fd2 = (gamma_c(c(-2.0 + h, 0.0)).unwrap().inv() + gamma_c(c(-2.0 - h, 0.0)).unwrap().inv()) / (h * h);
        assert!((r.h[0][0] - fd2).norm() < 1e-4);
    }
}
