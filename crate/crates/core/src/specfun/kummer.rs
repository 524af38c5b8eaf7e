//! Kummer functions M(a,b,z), U(a,b,z) and the combination V(a,b,z), with
//! parameter derivatives carried by jets.
//!
//! Power series are summed in double-double once |z| > 4, since the terms
//! grow like e^{|z|} before the sum settles. For |z| ≥ 35 the large-|z|
//! expansions are used with optimal truncation; in 25 ≤ |z| < 35 both are
//! evaluated and the one with the smaller error estimate is kept.

use super::gamma::{digamma_jet, gamma_jet, rgamma_jet};
use super::jet::{CJet, Cdd, Field, Jet};
use super::series::sum_series;
use super::{DerivOrder, EvalResult, Regime};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const SERIES_MAX_Z: f64 = 35.0;
pub const ASYMPTOTIC_MIN_Z: f64 = 25.0;
const DOUBLE_DOUBLE_Z: f64 = 4.0;
const EULER_GAMMA_HI: f64 = 0.577_215_664_901_532_9;
const EULER_GAMMA_LO: f64 = -4.942_915_152_430_645e-18;
const ASYMPTOTIC_MAX_TERMS: usize = 400;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn is_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re == z.re.round()
}

/// Jet value with its error estimate and the regime that produced it.
pub type Evaluated<const N: usize> = (CJet<N>, f64, Regime);

fn m_series_in<T: Field, const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    let (a, b, z): (Jet<T, N>, Jet<T, N>, Jet<T, N>) = (a.convert(), b.convert(), z.convert());
    let s = sum_series("kummer M", Jet::<T, N>::one(), |n, t| {
        let nf = T::from_f64(n as f64);
        (*t * (a + nf) * z / (b + nf)).scale(T::one() / T::from_f64(n as f64 + 1.0))
    })?;
    Ok((s.sum.convert(), s.err))
}

/// Power series for M(a,b,z).
pub fn m_series_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    if nonpositive_integer(b.v) {
        return Err(Error::Pole {
            func: "kummer M",
            at: b.v,
        });
    }
    if z.v.norm() > DOUBLE_DOUBLE_Z {
        m_series_in::<Cdd, N>(a, b, z)
    } else {
        m_series_in::<Complex64, N>(a, b, z)
    }
}

/// Large-|w| expansion U(a,b,w) ~ w^{−a} Σ (a)_n (a−b+1)_n / n! (−w)^{−n},
/// truncated at its smallest term. `ln_w` fixes the branch of w.
pub fn u_asymptotic_jet<const N: usize>(a: CJet<N>, b: CJet<N>, ln_w: CJet<N>) -> Result<(CJet<N>, f64)> {
    let w = ln_w.exp();
    let minus_inv_w = -w.recip();
    let a1 = a - b + c(1.0, 0.0);
    let mut term = CJet::<N>::one();
    let mut sum = term;
    let mut last = term.max_norm();
    let mut small = 0;
    for n in 0..ASYMPTOTIC_MAX_TERMS {
        let nf = c(n as f64, 0.0);
        let next = (term * (a + nf) * (a1 + nf) * minus_inv_w).scale(c(1.0 / (n as f64 + 1.0), 0.0));
        let t = next.max_norm();
        if n > 0 && t > last {
            break;
        }
        term = next;
        sum = sum + term;
        last = t;
        if t <= 1e-16 * sum.max_norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    let err = last / sum.max_norm() + 1e-15;
    let pref = (-(a * ln_w)).exp();
    Ok((pref * sum, err))
}

/// Large-|z| form of M from the connection formula
/// M/Γ(b) = e^{±iπa} U(a,b,z)/Γ(b−a) + e^{∓iπ(b−a)} e^z U(b−a,b,e^{∓iπ}z)/Γ(a),
/// upper signs for Im z ≥ 0.
pub fn m_asymptotic_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    let sigma = if z.v.im >= 0.0 { 1.0 } else { -1.0 };
    let ln_z = z.ln();
    let ln_w = ln_z + c(0.0, -PI * sigma);
    let (u1, e1) = u_asymptotic_jet(a, b, ln_z)?;
    let (u2, e2) = u_asymptotic_jet(b - a, b, ln_w)?;
    let i_pi = c(0.0, PI * sigma);
    let t1 = a.scale(i_pi).exp() * u1 * rgamma_jet(b - a)?;
    let t2 = (b - a).scale(-i_pi).exp() * z.exp() * u2 * rgamma_jet(a)?;
    let sum = t1 + t2;
    let scale = t1.max_norm().max(t2.max_norm()) / sum.max_norm();
    let err = e1.max(e2) * scale;
    Ok((gamma_jet(b)? * sum, err))
}

/// M(a,b,z) with automatic regime selection.
pub fn m_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<Evaluated<N>> {
    if nonpositive_integer(b.v) {
        return Err(Error::Pole {
            func: "kummer M",
            at: b.v,
        });
    }
    let r = z.v.norm();
    if r < ASYMPTOTIC_MIN_Z {
        let (v, e) = m_series_jet(a, b, z)?;
        return Ok((v, e, Regime::Series));
    }
    let asym = m_asymptotic_jet(a, b, z);
    if r >= SERIES_MAX_Z {
        let (v, e) = asym?;
        return Ok((v, e, Regime::Asymptotic));
    }
    pick_better(m_series_jet(a, b, z), asym)
}

fn pick_better<const N: usize>(
    series: Result<(CJet<N>, f64)>,
    asym: Result<(CJet<N>, f64)>,
) -> Result<Evaluated<N>> {
    match (series, asym) {
        (Ok((s, es)), Ok((a, ea))) => {
            if ea < es {
                Ok((a, ea, Regime::Asymptotic))
            } else {
                Ok((s, es, Regime::Series))
            }
        }
        (Ok((s, es)), Err(_)) => Ok((s, es, Regime::Series)),
        (Err(_), Ok((a, ea))) => Ok((a, ea, Regime::Asymptotic)),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Integer-b series U(a, n+1, z):
/// (−1)^{n+1}/(n! Γ(a−n)) Σ_k (a)_k/((n+1)_k k!) z^k [ln z + ψ(a+k) − ψ(1+k) − ψ(n+k+1)]
/// + (1/Γ(a)) Σ_{k=1}^{n} (k−1)! (1−a+k)_{n−k}/(n−k)! z^{−k}.
fn u_log_series_in<T: Field, const N: usize>(a: CJet<N>, n: usize, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    // ψ(a+k) − ψ(1+k) − ψ(n+k+1) = ψ(a) + 2γ + A_k − H_k − H_{n+k},
    // with A_k = Σ_{j<k} 1/(a+j); the k-dependent part is summed at working precision.
    let at: Jet<T, N> = a.convert();
    let zt: Jet<T, N> = z.convert();
    let mut h_n = T::zero();
    for j in 1..=n {
        h_n = h_n + T::one() / T::from_f64(j as f64);
    }
    let mut t = Jet::<T, N>::one();
    let mut s1 = t;
    let mut a_k = Jet::<T, N>::zero();
    let mut h_k = T::zero();
    let mut h_nk = h_n;
    let mut s2 = t * (-h_nk);
    let mut max_term = 1.0f64;
    let mut small = 0;
    let mut converged = false;
    let mut k = 0usize;
    while k < super::series::MAX_TERMS {
        let kf = T::from_f64(k as f64);
        t = (t * (at + kf) * zt).scale(T::one() / (T::from_f64((n + k + 1) as f64) * T::from_f64((k + 1) as f64)));
        a_k = a_k + (at + kf).recip();
        h_k = h_k + T::one() / T::from_f64((k + 1) as f64);
        h_nk = h_nk + T::one() / T::from_f64((n + k + 1) as f64);
        s1 = s1 + t;
        let weight = a_k - (h_k + h_nk);
        let tw = t * weight;
        s2 = s2 + tw;
        let tn = t.max_norm().max(tw.max_norm());
        max_term = max_term.max(tn);
        let sn = s1.max_norm().max(s2.max_norm());
        k += 1;
        if tn <= 1e-16 * sn {
            small += 1;
            if small >= 3 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            func: "kummer U (integer b)",
            terms: k,
            last_term: t.max_norm(),
        });
    }
    let s1: CJet<N> = s1.convert();
    let s2: CJet<N> = s2.convert();
    let consts = z.ln() + digamma_jet(a)? + c(2.0 * EULER_GAMMA_HI, 0.0);
    let consts = consts + c(2.0 * EULER_GAMMA_LO, 0.0);
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let n_fact: f64 = (1..=n).map(|j| j as f64).product();
    let pref = rgamma_jet(a - c(n as f64, 0.0))?.scale(c(sign / n_fact, 0.0));
    let log_part = pref * (consts * s1 + s2);
    let mut finite = CJet::<N>::zero();
    if n > 0 {
        let one = CJet::<N>::one();
        let zinv = z.recip();
        let mut zpow = one;
        for kk in 1..=n {
            zpow = zpow * zinv;
            // (k−1)! (1−a+k)_{n−k} / (n−k)!
            let mut poch = one;
            for j in 0..(n - kk) {
                poch = poch * (-a + c((1 + kk + j) as f64, 0.0));
            }
            let kf: f64 = (1..kk).map(|j| j as f64).product();
            let nk: f64 = (1..=(n - kk)).map(|j| j as f64).product();
            finite = finite + (poch * zpow).scale(c(kf / nk, 0.0));
        }
        finite = finite * rgamma_jet(a)?;
    }
    let out = log_part + finite;
    let scale = (pref.max_norm() * max_term * consts.max_norm().max(1.0)).max(finite.max_norm());
    let err = (T::EPS * scale * (k as f64).sqrt() + 1e-16 * out.max_norm()) / out.max_norm();
    Ok((out, err))
}

fn u_log_series_jet<const N: usize>(a: CJet<N>, n: usize, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    if z.v.norm() > DOUBLE_DOUBLE_Z {
        u_log_series_in::<Cdd, N>(a, n, z)
    } else {
        u_log_series_in::<Complex64, N>(a, n, z)
    }
}

/// Small-|z| representation of U: the integer-b log series, or
/// U = Γ(1−b)/Γ(a−b+1) M(a,b,z) + Γ(b−1)/Γ(a) z^{1−b} M(a−b+1,2−b,z).
fn u_series_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<(CJet<N>, f64)> {
    if is_integer(b.v) {
        let one = CJet::<N>::one();
        if b.v.re >= 1.0 {
            return u_log_series_jet(a, (b.v.re - 1.0) as usize, z);
        }
        // U(a,b,z) = z^{1−b} U(a−b+1, 2−b, z)
        let (u, e) = u_log_series_jet(a - b + one, (1.0 - b.v.re) as usize, z)?;
        return Ok((z.powj(one - b) * u, e));
    }
    let one = CJet::<N>::one();
    let (m1, e1) = m_series_jet(a, b, z)?;
    let (m2, e2) = m_series_jet(a - b + one, one + one - b, z)?;
    let t1 = gamma_jet(one - b)? * rgamma_jet(a - b + one)? * m1;
    let t2 = gamma_jet(b - one)? * rgamma_jet(a)? * z.powj(one - b) * m2;
    let out = t1 + t2;
    let scale = t1.max_norm().max(t2.max_norm()) / out.max_norm();
    Ok((out, (e1.max(e2) + 1e-16) * scale))
}

/// U(a,b,z) with automatic regime selection (principal branch of z).
pub fn u_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<Evaluated<N>> {
    let r = z.v.norm();
    if r == 0.0 {
        return Err(Error::Domain("kummer U at z = 0".into()));
    }
    if r < ASYMPTOTIC_MIN_Z {
        let (v, e) = u_series_jet(a, b, z)?;
        return Ok((v, e, Regime::Series));
    }
    let asym = u_asymptotic_jet(a, b, z.ln());
    if r >= SERIES_MAX_Z {
        let (v, e) = asym?;
        return Ok((v, e, Regime::Asymptotic));
    }
    pick_better(u_series_jet(a, b, z), asym)
}

/// M(a,b,z) with the ∂_a/∂_b derivative requested by `d`.
pub fn kummer_m(a: Complex64, b: Complex64, z: Complex64, d: DerivOrder) -> Result<EvalResult> {
    let (m, err, regime) = m_jet(CJet::<2>::variable(a, 0), CJet::<2>::variable(b, 1), CJet::constant(z))?;
    Ok(EvalResult {
        value: m.v,
        derivative: d.select(&m),
        err_estimate: err,
        regime,
    })
}

/// U(a,b,z), and ∂_a U when `da == 1`.
pub fn kummer_u(a: Complex64, b: Complex64, z: Complex64, da: usize) -> Result<EvalResult> {
    if da > 1 {
        return Err(Error::Domain(format!("kummer U derivative order {da} exceeds 1")));
    }
    let (u, err, regime) = u_jet(CJet::<1>::variable(a, 0), CJet::constant(b), CJet::constant(z))?;
    Ok(EvalResult {
        value: u.v,
        derivative: (da == 1).then_some(u.g[0]),
        err_estimate: err,
        regime,
    })
}

/// V(a,b,z) = −cos(πb) Γ(1−b)Γ(b−a)/Γ(1−a) M(a,b,z) + Γ(b−1) z^{1−b} M(1+a−b,2−b,z).
pub fn v_jet<const N: usize>(a: CJet<N>, b: CJet<N>, z: CJet<N>) -> Result<Evaluated<N>> {
    if is_integer(b.v) {
        return Err(Error::Pole {
            func: "kummer V",
            at: b.v,
        });
    }
    let one = CJet::<N>::one();
    let (m1, e1, r1) = m_jet(a, b, z)?;
    let (m2, e2, _) = m_jet(one + a - b, one + one - b, z)?;
    let coef = -(b.scale(c(PI, 0.0)).cos() * gamma_jet(one - b)? * gamma_jet(b - a)? * rgamma_jet(one - a)?);
    let t1 = coef * m1;
    let t2 = gamma_jet(b - one)? * z.powj(one - b) * m2;
    let out = t1 + t2;
    let scale = t1.max_norm().max(t2.max_norm()) / out.max_norm();
    Ok((out, (e1.max(e2) + 1e-16) * scale, r1))
}

pub fn kummer_v(a: Complex64, b: Complex64, z: Complex64) -> Result<EvalResult> {
    let (v, err, regime) = v_jet(CJet::<0>::constant(a), CJet::constant(b), CJet::constant(z))?;
    Ok(EvalResult::value(v.v, err, regime))
}
