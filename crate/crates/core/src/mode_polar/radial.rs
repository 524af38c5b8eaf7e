//! Outgoing radial Coulomb wave u(ρ) = e^{−iρ} ρ^{ν+1} ũ(ρ) and the phase
//! quantities read off it.
//!
//! ũ is carried as a second-order jet in (ν, ρ, η) so that ∂_ν, 2E∂_E =
//! ρ∂_ρ − η∂_η and their ρ-derivatives all come from a single evaluation.

use crate::classical::Scenario;
use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma_jet, rgamma_jet};
use crate::specfun::jet::CJet;
use crate::specfun::kummer::{m_series_jet, u_asymptotic_jet, ASYMPTOTIC_MIN_Z, SERIES_MAX_Z};
use crate::specfun::Regime;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const NU: usize = 0;
const RHO: usize = 1;
const ETA: usize = 2;

/// Half-width in b of the neighbourhood of an integer where the series form
/// is replaced by interpolation from nearby degrees.
const INTEGER_B_BAND: f64 = 2e-3;
/// Node spacing in ν for that interpolation.
const INTERP_STEP: f64 = 2e-3;

type J = CJet<3>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// u, ũ, ∂_ν u and 2E ∂_E u at one radius.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadialWave {
    pub u: Complex64,
    pub u_tilde: Complex64,
    pub dnu_u: Complex64,
    pub de_u_scaled: Complex64,
}

/// Phase data of u at one radius.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadialPhase {
    /// Im log u + πν on the principal branch of the logarithm.
    pub w_principal: f64,
    /// ∂_ρ W_r.
    pub dw_drho: f64,
    /// ∂_ν W_r.
    pub dnu: f64,
    /// 2E ∂_E W_r.
    pub tau: f64,
    /// ∂_ρ of `tau`.
    pub dtau_drho: f64,
    /// ∂_ρ of `dnu`.
    pub ddnu_drho: f64,
    pub err: f64,
    pub regime: Regime,
}

fn check(rho: f64, nu: f64) -> Result<()> {
    if !(nu > -0.5) || !nu.is_finite() {
        return Err(Error::Domain(format!("mode parameter ν = {nu} must exceed −1/2")));
    }
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("radius ρ = {rho} must be non-negative")));
    }
    Ok(())
}

fn series_form(nu: J, rho: J, eta: J) -> Result<(J, f64)> {
    let one = J::one();
    let a = nu + c(1.0, 0.0) + eta.scale(c(0.0, 1.0));
    let b = nu.scale(c(2.0, 0.0)) + c(2.0, 0.0);
    let z = rho.scale(c(0.0, 2.0));
    let (m1, e1) = m_series_jet(a, b, z)?;
    let (m2, e2) = m_series_jet(one + a - b, one + one - b, z)?;
    let coef = b.scale(c(0.0, -PI)).exp() * gamma_jet(one - b)? * gamma_jet(b - a)? * rgamma_jet(one - a)?;
    let t1 = -(coef * m1);
    let t2 = gamma_jet(b - one)? * z.powj(one - b) * m2;
    let out = t1 + t2;
    let scale = t1.max_norm().max(t2.max_norm()) / out.max_norm();
    Ok((out, (e1.max(e2) + 1e-16) * scale))
}

/// ũ = −e^{−iπb} Γ(ā) e^{2iρ} U(ā, b, −2iρ) with ā = ν + 1 − iη.
fn asymptotic_form(nu: J, rho: J, eta: J) -> Result<(J, f64)> {
    let abar = nu + c(1.0, 0.0) - eta.scale(c(0.0, 1.0));
    let b = nu.scale(c(2.0, 0.0)) + c(2.0, 0.0);
    let ln_w = rho.scale(c(2.0, 0.0)).ln() + c(0.0, -PI / 2.0);
    let (u, e) = u_asymptotic_jet(abar, b, ln_w)?;
    let pref = -(b.scale(c(0.0, -PI)).exp() * gamma_jet(abar)? * rho.scale(c(0.0, 2.0)).exp());
    Ok((pref * u, e))
}

/// Series form, interpolated across the removable singularity at integer b.
fn series_regular(nu: f64, rho: f64, eta: f64) -> Result<(J, f64)> {
    let b = 2.0 * nu + 2.0;
    let near = b.round();
    let jets = |n: f64| {
        (
            J::variable(c(n, 0.0), NU),
            J::variable(c(rho, 0.0), RHO),
            J::variable(c(eta, 0.0), ETA),
        )
    };
    if (b - near).abs() >= INTEGER_B_BAND {
        let (n, r, e) = jets(nu);
        return series_form(n, r, e);
    }
    let centre = (near - 2.0) / 2.0;
    let t = (nu - centre) / INTERP_STEP;
    let nodes = [-2.0, -1.0, 1.0, 2.0];
    let weights = [
        (t + 1.0) * (t - 1.0) * (t - 2.0) / -12.0,
        (t + 2.0) * (t - 1.0) * (t - 2.0) / 6.0,
        -(t + 2.0) * (t + 1.0) * (t - 2.0) / 6.0,
        (t + 2.0) * (t + 1.0) * (t - 1.0) / 12.0,
    ];
    let mut acc = J::zero();
    let mut err: f64 = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        let (n, r, e) = jets(centre + x * INTERP_STEP);
        let (v, ev) = series_form(n, r, e)?;
        acc = acc + v.scale(c(w, 0.0));
        err = err.max(ev);
    }
    Ok((acc, err + 1e-11))
}

/// ũ as a jet in (ν, ρ, η), with its error estimate and regime.
fn u_tilde_jet(rho: f64, sc: &Scenario, nu: f64) -> Result<(J, f64, Regime)> {
    let z = 2.0 * rho;
    let asym = || {
        asymptotic_form(
            J::variable(c(nu, 0.0), NU),
            J::variable(c(rho, 0.0), RHO),
            J::variable(c(sc.eta_s, 0.0), ETA),
        )
    };
    if z < ASYMPTOTIC_MIN_Z {
        let (v, e) = series_regular(nu, rho, sc.eta_s)?;
        return Ok((v, e, Regime::Series));
    }
    if z >= SERIES_MAX_Z {
        let (v, e) = asym()?;
        return Ok((v, e, Regime::Asymptotic));
    }
    match (series_regular(nu, rho, sc.eta_s), asym()) {
        (Ok((s, es)), Ok((a, ea))) => Ok(if ea < es {
            (a, ea, Regime::Asymptotic)
        } else {
            (s, es, Regime::Series)
        }),
        (Ok((s, es)), Err(_)) => Ok((s, es, Regime::Series)),
        (Err(_), Ok((a, ea))) => Ok((a, ea, Regime::Asymptotic)),
        (Err(e), Err(_)) => Err(e),
    }
}

/// u as a jet in (ν, ρ, η).
fn u_jet(rho: f64, sc: &Scenario, nu: f64) -> Result<(J, J, f64, Regime)> {
    let (ut, err, regime) = u_tilde_jet(rho, sc, nu)?;
    let n = J::variable(c(nu, 0.0), NU);
    let r = J::variable(c(rho, 0.0), RHO);
    let pref = (r.scale(c(0.0, -1.0)) + (n + c(1.0, 0.0)) * r.ln()).exp();
    Ok((pref * ut, ut, err, regime))
}

/// u, ũ, ∂_ν u and 2E ∂_E u at radius ρ > 0. Integer b = 2ν + 2 needs no
/// special handling by the caller.
pub fn radial_wave(rho: f64, sc: &Scenario, nu: f64) -> Result<RadialWave> {
    check(rho, nu)?;
    if rho == 0.0 {
        return Err(Error::Pole {
            func: "radial wave ũ",
            at: c(0.0, 0.0),
        });
    }
    let (u, ut, _, _) = u_jet(rho, sc, nu)?;
    Ok(RadialWave {
        u: u.v,
        u_tilde: ut.v,
        dnu_u: u.g[NU],
        de_u_scaled: u.g[RHO] * rho - u.g[ETA] * sc.eta_s,
    })
}

/// Phase quantities of u at radius ρ > 0.
pub fn radial_phase(rho: f64, sc: &Scenario, nu: f64) -> Result<RadialPhase> {
    check(rho, nu)?;
    if rho == 0.0 {
        return Ok(RadialPhase {
            w_principal: -PI / 2.0,
            dw_drho: f64::NAN,
            dnu: 0.0,
            tau: 0.0,
            dtau_drho: f64::NAN,
            ddnu_drho: f64::NAN,
            err: 0.0,
            regime: Regime::LimitForm,
        });
    }
    let (u, _, err, regime) = u_jet(rho, sc, nu)?;
    let l = u.ln();
    let eta = sc.eta_s;
    Ok(RadialPhase {
        w_principal: l.v.im + PI * nu,
        dw_drho: l.g[RHO].im,
        dnu: l.g[NU].im + PI,
        tau: (l.g[RHO] * rho - l.g[ETA] * eta).im,
        dtau_drho: (l.g[RHO] + l.h[RHO][RHO] * rho - l.h[ETA][RHO] * eta).im,
        ddnu_drho: l.h[NU][RHO].im,
        err,
        regime,
    })
}

/// Which radial quantity `w_r` returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadialQuantity {
    /// Continuous W_r with W_r(0) = −π/2.
    Value,
    /// ∂_ν W_r.
    DNu,
    /// τ = 2E ∂_E W_r.
    Tau,
}

/// Starting radius of the phase march; below it W_r differs from −π/2 by
/// far less than π.
const MARCH_START: f64 = 1e-3;

fn nearest_branch(principal: f64, guess: f64) -> f64 {
    principal + 2.0 * PI * ((guess - principal) / (2.0 * PI)).round()
}

/// Continuous W_r(ρ) by marching from the origin with steps that keep the
/// phase increment below ½.
pub fn w_r_value(rho: f64, sc: &Scenario, nu: f64) -> Result<f64> {
    check(rho, nu)?;
    if rho == 0.0 {
        return Ok(-PI / 2.0);
    }
    let mut r = rho.min(MARCH_START);
    let mut p = radial_phase(r, sc, nu)?;
    let mut w = nearest_branch(p.w_principal, -PI / 2.0);
    while r < rho {
        let step = (0.5 / p.dw_drho.abs().max(1e-3)).min(0.5).min(rho - r);
        let r_next = if rho - r < 1e-9 * rho { rho } else { r + step };
        let q = radial_phase(r_next, sc, nu)?;
        let guess = w + 0.5 * (p.dw_drho + q.dw_drho) * (r_next - r);
        w = nearest_branch(q.w_principal, guess);
        r = r_next;
        p = q;
    }
    Ok(w)
}

/// W_r, ∂_ν W_r or 2E ∂_E W_r at radius ρ.
pub fn w_r(rho: f64, sc: &Scenario, nu: f64, which: RadialQuantity) -> Result<f64> {
    match which {
        RadialQuantity::Value => w_r_value(rho, sc, nu),
        RadialQuantity::DNu => Ok(radial_phase(rho, sc, nu)?.dnu),
        RadialQuantity::Tau => Ok(radial_phase(rho, sc, nu)?.tau),
    }
}

/// ρ₀ where dτ/dρ changes sign on the grid, refined by bisection; `None` if
/// dτ/dρ keeps one sign.
pub fn dt_drho_scan(sc: &Scenario, nu: f64, rho_grid: &[f64]) -> Result<Option<f64>> {
    let mut grid: Vec<f64> = rho_grid.iter().copied().filter(|&r| r > 0.0).collect();
    grid.sort_by(f64::total_cmp);
    let f = |r: f64| radial_phase(r, sc, nu).map(|p| p.dtau_drho);
    let mut prev: Option<(f64, f64)> = None;
    for &r in &grid {
        let v = f(r)?;
        if let Some((r0, v0)) = prev {
            if v0.signum() != v.signum() {
                let bracket = crate::numerics::Bracket::new(r0, r, v0, v)?;
                let root = crate::numerics::try_solve_bracketed(f, bracket, 1e-12)?;
                return Ok(Some(root));
            }
        }
        prev = Some((r, v));
    }
    Ok(None)
}
