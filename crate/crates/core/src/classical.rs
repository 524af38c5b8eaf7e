//! Classical Coulomb scattering from the Hamilton–Jacobi equation in
//! spherical polar and parabolic (Temple) coordinates.
//!
//! Lengths are dimensionless (ρ = kr) unless a name ends in `_pm`; times are
//! τ = 2E(t + t₀)/ħ.

use crate::constants::{ALPHA, C_PM_PER_S, E2_EV_PM, HBARC_EV_PM, MC2_EV};
use crate::error::{Error, Result};
use crate::numerics::OdeState;
use serde::Serialize;
use std::f64::consts::PI;

/// Energy, nuclear charge and the derived wave number and Coulomb parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub energy_ev: f64,
    pub z: i32,
    /// Wave number k in 1/pm.
    pub k: f64,
    /// Sommerfeld parameter η = Zα√(mc²/2E); positive for attraction.
    pub eta_s: f64,
}

impl Scenario {
    pub fn new(energy_ev: f64, z: i32) -> Result<Self> {
        if !(energy_ev > 0.0) || !energy_ev.is_finite() {
            return Err(Error::Domain(format!("energy must be positive, got {energy_ev} eV")));
        }
        if z == 0 {
            return Err(Error::Domain("nuclear charge must be non-zero".into()));
        }
        Ok(Scenario {
            energy_ev,
            z,
            k: (2.0 * MC2_EV * energy_ev).sqrt() / HBARC_EV_PM,
            eta_s: z as f64 * ALPHA * (MC2_EV / (2.0 * energy_ev)).sqrt(),
        })
    }

    /// ħ/2E in seconds: the physical value of one unit of τ.
    pub fn time_unit_s(&self) -> f64 {
        HBARC_EV_PM / (C_PM_PER_S * 2.0 * self.energy_ev)
    }

    /// Asymptotic speed in pm/s.
    pub fn speed(&self) -> f64 {
        C_PM_PER_S * (2.0 * self.energy_ev / MC2_EV).sqrt()
    }

    /// Impact parameter in pm for a dimensionless ks.
    pub fn impact_parameter_pm(&self, ks: f64) -> f64 {
        ks / self.k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalOrbitParams {
    /// Dimensionless impact parameter, equal to the angular momentum L/ħ.
    pub ks: f64,
    pub s_pm: f64,
}

impl ClassicalOrbitParams {
    pub fn new(sc: &Scenario, ks: f64) -> Result<Self> {
        if !(ks > 0.0) || !ks.is_finite() {
            return Err(Error::Domain(format!("impact parameter ks must be positive, got {ks}")));
        }
        Ok(ClassicalOrbitParams {
            ks,
            s_pm: sc.impact_parameter_pm(ks),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Incident,
    Scattered,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Incident => "incident",
            Branch::Scattered => "scattered",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub rho: f64,
    pub theta: f64,
    pub tau: f64,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossSectionSample {
    pub theta_sc: f64,
    pub sigma_inv_k2: f64,
    pub sigma_pm2: f64,
}

impl CrossSectionSample {
    pub fn new(sc: &Scenario, theta_sc: f64, sigma_inv_k2: f64) -> Self {
        CrossSectionSample {
            theta_sc,
            sigma_inv_k2,
            sigma_pm2: sigma_inv_k2 / (sc.k * sc.k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoordinateSystem {
    Polar,
    Temple,
}

/// Dimensionless roots ρ₁ > 0 ≥ ρ₂ of ρ² + 2ηρ − ℓ² = 0.
pub fn turning_radii_rho(sc: &Scenario, ks: f64) -> (f64, f64) {
    let eta = sc.eta_s;
    let root = eta.hypot(ks);
    // ρ₁ = ℓ²/(η + √(η²+ℓ²)) avoids cancellation for large η.
    let r1 = if eta > 0.0 { ks * ks / (eta + root) } else { root - eta };
    let r2 = if eta > 0.0 { -eta - root } else { -ks * ks / (root - eta) };
    (r1, r2)
}

/// Turning radii r₁, r₂ in pm for angular momentum L = ħ·ks.
pub fn turning_radii(sc: &Scenario, ks: f64) -> (f64, f64) {
    let (r1, r2) = turning_radii_rho(sc, ks);
    (r1 / sc.k, r2 / sc.k)
}

fn half_angle(rho: f64, r1: f64, r2: f64) -> f64 {
    2.0 * ((rho / r1 - 1.0) / (rho / -r2 + 1.0)).sqrt().atan()
}

/// Orbit angle θ(ρ) from the polar Hamilton–Jacobi solution. The incident
/// branch comes in from θ = π; both branches meet at the closest approach ρ₁.
pub fn polar_orbit_theta(sc: &Scenario, ks: f64, rho: f64, branch: Branch) -> Result<f64> {
    let (r1, r2) = turning_radii_rho(sc, ks);
    if rho < r1 * (1.0 - 1e-14) {
        return Err(Error::Domain(format!("ρ = {rho} inside the closest approach {r1}")));
    }
    let rho = rho.max(r1);
    let c = PI - 2.0 * (-r2 / r1).sqrt().atan();
    Ok(match branch {
        Branch::Incident => c + half_angle(rho, r1, r2),
        Branch::Scattered => c - half_angle(rho, r1, r2),
    })
}

/// θ_sc = −2 atan(η/ks).
pub fn scattering_angle_classical(sc: &Scenario, ks: f64) -> f64 {
    -2.0 * (sc.eta_s / ks).atan()
}

/// θ_sc = π − 4 atan√(−r₂/r₁), the polar-coordinate form.
pub fn scattering_angle_from_turning_radii(sc: &Scenario, ks: f64) -> f64 {
    let (r1, r2) = turning_radii_rho(sc, ks);
    PI - 4.0 * (-r2 / r1).sqrt().atan()
}

/// kr on the Temple orbit ℓ/kr = (η/ℓ)(1 + cos θ) + sin θ.
pub fn temple_orbit_r(sc: &Scenario, ks: f64, theta: f64) -> Result<f64> {
    let den = sc.eta_s / ks * (1.0 + theta.cos()) + theta.sin();
    if !(den > 0.0) {
        return Err(Error::Domain(format!("θ = {theta} lies beyond the orbit asymptotes")));
    }
    Ok(ks / den)
}

/// τ on the polar orbit at radius ρ; zero at the closest approach.
pub fn polar_time(sc: &Scenario, ks: f64, rho: f64, branch: Branch) -> Result<f64> {
    let (r1, r2) = turning_radii_rho(sc, ks);
    if rho < r1 * (1.0 - 1e-14) {
        return Err(Error::Domain(format!("ρ = {rho} inside the closest approach {r1}")));
    }
    let a = (rho - r1).max(0.0).sqrt();
    let b = (rho - r2).sqrt();
    let f = a * b - sc.eta_s * ((a + b) / (a - b)).abs().ln();
    Ok(match branch {
        Branch::Incident => -f,
        Branch::Scattered => f,
    })
}

/// Temple time before the returning-point shift, as a function of kx and kζ.
fn temple_time_raw(eta: f64, kx: f64, kzeta: f64, branch: Branch) -> f64 {
    let a = kzeta.max(0.0).sqrt();
    let b = (kzeta + 4.0 * eta).max(0.0).sqrt();
    let log = if a == b { 0.0 } else { ((a + b) / (a - b)).abs().ln() };
    let g = a * b - 2.0 * eta * log;
    let sign = match branch {
        Branch::Incident => -1.0,
        Branch::Scattered => 1.0,
    };
    0.5 * (kzeta + sign * g) + kx
}

/// Returning point of the Temple orbit as (kr, θ).
pub fn returning_point_rho(sc: &Scenario, ks: f64) -> (f64, f64) {
    if sc.z > 0 {
        (ks * ks / (2.0 * sc.eta_s), 0.0)
    } else {
        let theta = 2.0 * (-2.0 * sc.eta_s / ks).atan();
        (2.0 * ks / theta.sin(), theta)
    }
}

/// Returning point (r in pm, θ) where the incident Temple orbit hands over to
/// the scattered one.
pub fn returning_point(sc: &Scenario, ks: f64) -> (f64, f64) {
    let (rho, theta) = returning_point_rho(sc, ks);
    (rho / sc.k, theta)
}

/// τ on the Temple orbit at angle θ, shifted to vanish at the returning point.
pub fn temple_time(sc: &Scenario, ks: f64, theta: f64, branch: Branch) -> Result<f64> {
    let rho = temple_orbit_r(sc, ks, theta)?;
    let kx = rho * theta.cos();
    let (r0, t0) = returning_point_rho(sc, ks);
    let kx0 = r0 * t0.cos();
    let shift = temple_time_raw(sc.eta_s, kx0, r0 - kx0, Branch::Incident);
    Ok(temple_time_raw(sc.eta_s, kx, rho - kx, branch) - shift)
}

/// Time at a point (ρ, θ) on the orbit in either coordinate system. The
/// branch refers to the chosen system: polar branches split at the closest
/// approach, Temple branches at the returning point.
pub fn classical_time(
    sc: &Scenario,
    params: &ClassicalOrbitParams,
    rho: f64,
    theta: f64,
    branch: Branch,
    system: CoordinateSystem,
) -> Result<f64> {
    let on_orbit = temple_orbit_r(sc, params.ks, theta)?;
    if (on_orbit - rho).abs() > 1e-8 * rho.max(1.0) {
        return Err(Error::Domain(format!(
            "point (ρ = {rho}, θ = {theta}) is off the orbit (ρ_orbit = {on_orbit})"
        )));
    }
    match system {
        CoordinateSystem::Polar => polar_time(sc, params.ks, rho, branch),
        CoordinateSystem::Temple => temple_time(sc, params.ks, theta, branch),
    }
}

/// σk² = (η²/4) csc⁴(θ/2).
pub fn rutherford_cross_section(sc: &Scenario, theta_sc: f64) -> Result<CrossSectionSample> {
    if theta_sc == 0.0 || theta_sc.abs() > PI || !theta_sc.is_finite() {
        return Err(Error::Domain(format!("scattering angle {theta_sc} outside 0 < |θ| ≤ π")));
    }
    let s = (0.5 * theta_sc).sin();
    let sigma = 0.25 * sc.eta_s * sc.eta_s / s.powi(4);
    Ok(CrossSectionSample::new(sc, theta_sc, sigma))
}

/// σ = (s / sin θ)|ds/dθ| with ks(θ) = |η| cot(|θ|/2); equal to Rutherford.
pub fn cross_section_from_impact(sc: &Scenario, theta_sc: f64) -> Result<CrossSectionSample> {
    if theta_sc == 0.0 || theta_sc.abs() > PI || !theta_sc.is_finite() {
        return Err(Error::Domain(format!("scattering angle {theta_sc} outside 0 < |θ| ≤ π")));
    }
    let t = theta_sc.abs();
    let eta = sc.eta_s.abs();
    let ks = eta / (0.5 * t).tan();
    let dks = 0.5 * eta / (0.5 * t).sin().powi(2);
    Ok(CrossSectionSample::new(sc, theta_sc, ks / t.sin() * dks))
}

/// Classical polar orbit sampled on a radial grid: incident points for the
/// grid read from the largest radius inwards, then scattered points outwards.
/// Grid values inside the closest approach are skipped.
pub fn classical_trajectory(sc: &Scenario, ks: f64, rho_grid: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    let (r1, _) = turning_radii_rho(sc, ks);
    let mut grid: Vec<f64> = rho_grid.iter().copied().filter(|&r| r >= r1).collect();
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();
    if grid.last() != Some(&r1) {
        grid.push(r1);
    }
    let mut out = Vec::with_capacity(2 * grid.len());
    for &rho in &grid {
        out.push(TrajectoryPoint {
            rho,
            theta: polar_orbit_theta(sc, ks, rho, Branch::Incident)?,
            tau: polar_time(sc, ks, rho, Branch::Incident)?,
            branch: Branch::Incident,
        });
    }
    for &rho in grid.iter().rev().skip(1) {
        out.push(TrajectoryPoint {
            rho,
            theta: polar_orbit_theta(sc, ks, rho, Branch::Scattered)?,
            tau: polar_time(sc, ks, rho, Branch::Scattered)?,
            branch: Branch::Scattered,
        });
    }
    Ok(out)
}

/// Initial state at distance `r0_pm` on the incoming asymptote, with speed and
/// direction chosen so that energy and angular momentum equal their values
/// for impact parameter ks at infinity. The electron travels towards +x with
/// the incident asymptote at y = s > 0.
pub fn incident_state(sc: &Scenario, ks: f64, r0_pm: f64) -> OdeState {
    let v_inf = sc.speed();
    let v2 = v_inf * v_inf + 2.0 * sc.z as f64 * E2_EV_PM / r0_pm * C_PM_PER_S * C_PM_PER_S / MC2_EV;
    let v = v2.sqrt();
    let s = sc.impact_parameter_pm(ks);
    // L = x vy − y vx = −s v∞ at x = −r0, y = 0
    let sin_a = s * v_inf / (r0_pm * v);
    let cos_a = (1.0 - sin_a * sin_a).sqrt();
    OdeState {
        x: -r0_pm,
        y: 0.0,
        vx: v * cos_a,
        vy: v * sin_a,
        t: 0.0,
    }
}
