//! Angular phase W_θ = arg Y_ν(cos θ) of the travelling Legendre wave
//! Y_ν = Q_ν + i(π/2)P_ν, and the scattering quantities derived from ∂_ν W_θ.

use crate::classical::{CrossSectionSample, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{try_solve_bracketed, Bracket};
use crate::specfun::gamma::polygamma_c;
use crate::specfun::jet::CJet;
use crate::specfun::legendre::legendre_jets_angle;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Angles this close to 0 or π are treated as the endpoints.
const ENDPOINT_EPS: f64 = 1e-12;
/// Root brackets stay this far inside (0, π).
const BRACKET_EPS: f64 = 1e-9;
pub const ROOT_TOL: f64 = 1e-12;

fn check(theta: f64, nu: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!("θ = {theta} outside [0, π]")));
    }
    if !(nu > -0.5) || !nu.is_finite() {
        return Err(Error::Domain(format!("mode parameter ν = {nu} must exceed −1/2")));
    }
    Ok(())
}

/// Y_ν(cos θ) as a jet in ν.
fn y_jet(theta: f64, nu: f64) -> Result<CJet<1>> {
    let pair = legendre_jets_angle(nu, theta)?;
    Ok(pair.q + pair.p.scale(Complex64::new(0.0, PI / 2.0)))
}

fn principal_phase(theta: f64, nu: f64) -> Result<f64> {
    Ok(y_jet(theta, nu)?.v.arg())
}

/// Continuous W_θ on [0, π/2], marched from W_θ(0) = 0.
fn phase_first_half(theta: f64, nu: f64) -> Result<f64> {
    if theta <= ENDPOINT_EPS {
        return Ok(0.0);
    }
    let h = (0.3 / (nu + 1.0)).min(0.02);
    let mut t = h.min(theta);
    let mut w = principal_phase(t, nu)?;
    while t < theta {
        let t_next = (t + h).min(theta);
        let p = principal_phase(t_next, nu)?;
        w += (p - w + PI).rem_euclid(2.0 * PI) - PI;
        t = t_next;
    }
    Ok(w)
}

/// W_θ (d = 0), ∂_ν W_θ (d = 1) or ∂²_ν W_θ (d = 2).
///
/// The phase is continuous from W_θ(0) = 0 and reaches π(ν + 1) at θ = π;
/// modulo π that is the value πν of the arctangent form.
pub fn w_theta(theta: f64, nu: f64, d: usize) -> Result<f64> {
    check(theta, nu)?;
    let at_zero = theta <= ENDPOINT_EPS;
    let at_pi = theta >= PI - ENDPOINT_EPS;
    match d {
        0 => {
            if at_pi {
                Ok(PI * (nu + 1.0))
            } else if theta <= PI / 2.0 {
                phase_first_half(theta, nu)
            } else {
                // arg Y(−x) = π(ν + 1) − arg Y(x)
                Ok(PI * (nu + 1.0) - phase_first_half(PI - theta, nu)?)
            }
        }
        1 | 2 => {
            if at_zero {
                return Ok(0.0);
            }
            if at_pi {
                return Ok(if d == 1 { PI } else { 0.0 });
            }
            let y = y_jet(theta, nu)?;
            let r = y.g[0] / y.v;
            Ok(if d == 1 { r.im } else { (y.h[0][0] / y.v - r * r).im })
        }
        _ => Err(Error::Domain(format!("derivative order {d} exceeds 2"))),
    }
}

/// ∂_θ W_θ = (π/2)/(sin θ |Y|²) and ∂_θ∂_ν W_θ = −π Re(Ȳ ∂_ν Y)/(sin θ |Y|⁴).
pub fn w_theta_theta_derivatives(theta: f64, nu: f64) -> Result<(f64, f64)> {
    check(theta, nu)?;
    if theta <= ENDPOINT_EPS || theta >= PI - ENDPOINT_EPS {
        return Err(Error::Domain(format!("θ-derivatives singular at θ = {theta}")));
    }
    let y = y_jet(theta, nu)?;
    let s = theta.sin();
    let m2 = y.v.norm_sqr();
    Ok((0.5 * PI / (s * m2), -PI * (y.v.conj() * y.g[0]).re / (s * m2 * m2)))
}

/// ∂_ν W_θ extended as an odd function of θ to (−π, π); increasing there.
pub fn dnu_w_theta_signed(theta: f64, nu: f64) -> Result<f64> {
    let v = w_theta(theta.abs(), nu, 1)?;
    Ok(if theta < 0.0 { -v } else { v })
}

/// θ in (−π, π) where the odd extension of ∂_ν W_θ equals `target`.
pub fn solve_dnu_w_theta(nu: f64, target: f64) -> Result<f64> {
    let lo = -PI + BRACKET_EPS;
    let hi = PI - BRACKET_EPS;
    let f = |t: f64| dnu_w_theta_signed(t, nu).map(|v| v - target);
    let bracket = Bracket::try_from_fn(f, lo, hi)?;
    try_solve_bracketed(f, bracket, ROOT_TOL)
}

/// a = ν + 1 + iη.
pub fn mode_a(sc: &Scenario, nu: f64) -> Complex64 {
    Complex64::new(nu + 1.0, sc.eta_s)
}

/// Im ψ(ν + 1 + iη).
pub fn im_digamma(sc: &Scenario, nu: f64) -> Result<f64> {
    Ok(polygamma_c(0, mode_a(sc, nu))?.im)
}

/// Scattering angle of the mode trajectory: the raw root θ* ∈ (0, π) of
/// ∂_ν W_θ(θ*) = |2 Im ψ(a)| and the signed angle −sign(Im ψ)·θ*
/// (negative for attraction).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ModeAngle {
    pub raw: f64,
    pub signed: f64,
}

pub fn scattering_angle_mode(sc: &Scenario, nu: f64) -> Result<ModeAngle> {
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("scattering angle needs ν ≥ 0, got {nu}")));
    }
    let im = im_digamma(sc, nu)?;
    let raw = solve_dnu_w_theta(nu, 2.0 * im.abs())?.abs();
    Ok(ModeAngle {
        raw,
        signed: if im > 0.0 { -raw } else { raw },
    })
}

/// Largest deflection of any mode trajectory, reached at ν = 0.
pub fn limiting_angle(sc: &Scenario) -> Result<ModeAngle> {
    scattering_angle_mode(sc, 0.0)
}

/// θ_ret where the incident branch meets ρ = 0: the odd extension of
/// ∂_ν W_θ equals π/2 − Im ψ(a).
pub fn returning_theta(sc: &Scenario, nu: f64) -> Result<f64> {
    solve_dnu_w_theta(nu, PI / 2.0 - im_digamma(sc, nu)?)
}

/// dν/dθ along the scattering-angle curve, at the raw root θ*.
pub fn dnu_dtheta(sc: &Scenario, nu: f64) -> Result<f64> {
    let angle = scattering_angle_mode(sc, nu)?;
    let (_, cross) = w_theta_theta_derivatives(angle.raw, nu)?;
    let second = w_theta(angle.raw, nu, 2)?;
    let im_sign = im_digamma(sc, nu)?.signum();
    let trigamma = 2.0 * im_sign * polygamma_c(1, mode_a(sc, nu))?.im;
    Ok(cross / (trigamma - second))
}

/// σ = (1/k²)(ν + ½)/sin θ* · |dν/dθ*|.
pub fn cross_section_mode(sc: &Scenario, nu: f64) -> Result<CrossSectionSample> {
    let angle = scattering_angle_mode(sc, nu)?;
    let s = angle.raw.sin();
    if s == 0.0 {
        return Err(Error::Domain("cross section undefined at sin θ = 0".into()));
    }
    let sigma = (nu + 0.5) / s * dnu_dtheta(sc, nu)?.abs();
    Ok(CrossSectionSample::new(sc, angle.signed, sigma))
}
