//! Legendre functions P_ν(x), Q_ν(x) on the cut −1 ≤ x ≤ 1 for real ν > −½,
//! with ν-derivatives up to second order.
//!
//! |x| ≤ ½ uses the hypergeometric representations in x²; for ½ < x < 1
//! P_ν comes from F(−ν, ν+1; 1; (1−x)/2) and Q_ν from its logarithmic
//! companion about x = 1. Negative x is mapped to positive x by reflection.
//! From ν = 2 upwards these power series lose about e^{2ν√w} to cancellation,
//! so higher degrees are reached by the three-term recurrence in ν, started
//! from two degrees below 2.

use super::gamma::{digamma_jet, ln_gamma_jet};
use super::hyp2f1::hyp2f1_jet;
use super::jet::CJet;
use super::series::sum_series;
use super::{EvalResult, Regime};
use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// |1 − x²| below which the two-term expansion about x = ±1 is used.
pub const ENDPOINT_GUARD: f64 = 1e-6;

/// Degrees at or above this are reached by recurrence.
const RECURRENCE_FROM: f64 = 2.0;

/// P_ν, Q_ν as jets in ν (variable 0).
#[derive(Clone, Copy, Debug)]
pub struct LegendrePair {
    pub p: CJet<1>,
    pub q: CJet<1>,
    pub regime: Regime,
    pub err: f64,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn legendre_jets(nu: f64, x: f64) -> Result<LegendrePair> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Legendre argument {x} outside [−1, 1]")));
    }
    let w = if x > 0.5 { 0.5 * (1.0 - x) } else { 0.5 * (1.0 + x) };
    route(nu, x, w)
}

/// P_ν(cos θ), Q_ν(cos θ) for θ ∈ [0, π]. Near the endpoints 1 ∓ cos θ is
/// formed as 2 sin²(θ/2) so it keeps full relative precision.
pub fn legendre_jets_angle(nu: f64, theta: f64) -> Result<LegendrePair> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!("Legendre angle {theta} outside [0, π]")));
    }
    let x = theta.cos();
    let w = if x > 0.5 {
        (0.5 * theta).sin().powi(2)
    } else {
        (0.5 * (PI - theta)).sin().powi(2)
    };
    route(nu, x, w)
}

/// `w` is (1 − |x|)/2, supplied by the caller at full precision.
fn route(nu: f64, x: f64, w: f64) -> Result<LegendrePair> {
    if !(nu > -0.5) || !nu.is_finite() {
        return Err(Error::Domain(format!("Legendre degree {nu} must exceed −1/2")));
    }
    if nu >= RECURRENCE_FROM {
        return by_recurrence(nu, x, w);
    }
    let n = CJet::<1>::variable(re(nu), 0);
    if x < -0.5 {
        let inner = route(nu, -x, w)?;
        let c = n.scale(re(PI)).cos();
        let s = n.scale(re(PI)).sin();
        let p = c * inner.p - s * inner.q.scale(re(2.0 / PI));
        let q = -(c * inner.q) - s * inner.p.scale(re(PI / 2.0));
        return Ok(LegendrePair { p, q, ..inner });
    }
    if x <= 0.5 {
        return central(n, x);
    }
    // |1 − x²| = 4w(1 − w)
    near_one(n, w, 4.0 * w * (1.0 - w) < ENDPOINT_GUARD)
}

/// (μ+1) f_{μ+1} = (2μ+1) x f_μ − μ f_{μ−1} for both P and Q. On the cut
/// neither solution dominates, so the upward recurrence is stable.
fn by_recurrence(nu: f64, x: f64, w: f64) -> Result<LegendrePair> {
    let steps = (nu - 1.0).floor();
    let start = nu - steps;
    let lower = route(start - 1.0, x, w)?;
    let upper = route(start, x, w)?;
    let (mut p0, mut q0, mut p1, mut q1) = (lower.p, lower.q, upper.p, upper.q);
    let mut mu = CJet::<1>::variable(re(start), 0);
    for _ in 0..steps as usize {
        let a = (mu.scale(re(2.0)) + re(1.0)).scale(re(x));
        let d = mu + re(1.0);
        let p2 = (a * p1 - mu * p0) / d;
        let q2 = (a * q1 - mu * q0) / d;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        mu = d;
    }
    Ok(LegendrePair {
        p: p1,
        q: q1,
        regime: upper.regime,
        err: lower.err.max(upper.err) * (steps + 1.0),
    })
}

fn central(n: CJet<1>, x: f64) -> Result<LegendrePair> {
    let one = CJet::<1>::one();
    let half = re(0.5);
    let (p, ep) = hyp2f1_jet(-n, n + re(1.0), one, re((1.0 - x) / 2.0))?;
    let x2 = re(x * x);
    let (f1, e1) = hyp2f1_jet(-n.scale(half), (n + re(1.0)).scale(half), CJet::from_c64(half), x2)?;
    let (f2, e2) = hyp2f1_jet((one - n).scale(half), n.scale(half) + re(1.0), CJet::from_c64(re(1.5)), x2)?;
    // Γ(½+ν/2)/Γ(1+ν/2)
    let ratio = (ln_gamma_jet(n.scale(half) + half)? - ln_gamma_jet(n.scale(half) + re(1.0))?).exp();
    let arg = n.scale(re(PI / 2.0));
    let q = (-(ratio * arg.sin() * f1).scale(half) + (arg.cos() * f2 / ratio).scale(re(x)))
        .scale(re(PI.sqrt()));
    Ok(LegendrePair {
        p,
        q,
        regime: Regime::Series,
        err: ep.max(e1).max(e2),
    })
}

/// Expansion about x = 1 in w = (1−x)/2:
/// P = Σ c_k w^k, Q = P·(½ ln((1+x)/(1−x)) − γ − ψ(ν+1)) + Σ c_k H_k w^k,
/// with c_k = (−ν)_k (ν+1)_k / (k!)² and H_k the harmonic numbers.
fn near_one(n: CJet<1>, w: f64, limit: bool) -> Result<LegendrePair> {
    if w == 0.0 {
        return Err(Error::Pole {
            func: "legendre Q",
            at: re(1.0),
        });
    }
    let log_term = 0.5 * ((1.0 - w) / w).ln() - EULER_GAMMA;
    let shift = CJet::<1>::from_c64(re(log_term)) - digamma_jet(n + re(1.0))?;
    let (p, s, err, regime) = if limit {
        let c1 = -(n * (n + re(1.0)));
        let p = CJet::one() + c1.scale(re(w));
        (p, c1.scale(re(w)), w * w, Regime::LimitForm)
    } else {
        // Sum the pair (c_k w^k, c_k H_k w^k) as one two-slot series by
        // carrying H_k alongside; the jets hold the ν-dependence.
        let mut h = 0.0;
        let mut s_acc = CJet::<1>::zero();
        let summed = sum_series("legendre near x=1", CJet::<1>::one(), |k, t| {
            let kf = k as f64;
            let next = (*t * (n.scale(re(-1.0)) + re(kf)) * (n + re(kf + 1.0)))
                .scale(re(w / ((kf + 1.0) * (kf + 1.0))));
            h += 1.0 / (kf + 1.0);
            s_acc = s_acc + next.scale(re(h));
            next
        })?;
        (summed.sum, s_acc, summed.err, Regime::Series)
    };
    let q = p * shift + s;
    Ok(LegendrePair { p, q, regime, err })
}

/// P_ν(x) and Q_ν(x) with the ν-derivative of order `d` (0, 1 or 2).
pub fn legendre_pq(nu: f64, x: f64, d: usize) -> Result<(EvalResult, EvalResult)> {
    if d > 2 {
        return Err(Error::Domain(format!("derivative order {d} exceeds 2")));
    }
    let pair = legendre_jets(nu, x)?;
    let pick = |j: &CJet<1>| match d {
        0 => None,
        1 => Some(j.g[0]),
        _ => Some(j.h[0][0]),
    };
    let wrap = |j: &CJet<1>| EvalResult {
        value: j.v,
        derivative: pick(j),
        err_estimate: pair.err,
        regime: pair.regime,
    };
    Ok((wrap(&pair.p), wrap(&pair.q)))
}
