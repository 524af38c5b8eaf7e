//! Mode trajectories in parabolic (Temple) coordinates, built from the
//! incident and scattered Kummer-U waves
//!
//!   ψ_in = e^{−πη/2} e^{ikx} U(iη, 1, ikζ),
//!   ψ_sc = −e^{−πη/2} Γ(1−iη)/Γ(iη) e^{ikr} U(1−iη, 1, −ikζ),   ζ = r − x.
//!
//! The orbit constants are C = Im(∂_φ ψ/ψ) at φ = 0 for the coordinates
//! rotated by φ, and the time is τ = k Im(∂_k ψ/ψ).

use crate::classical::{
    polar_orbit_theta, returning_point, rutherford_cross_section, turning_radii_rho, Branch, CrossSectionSample,
    Scenario, TrajectoryPoint,
};
use crate::error::{Error, Result};
use crate::numerics::{try_solve_bracketed, Bracket};
use crate::specfun::gamma::ln_gamma_jet;
use crate::specfun::jet::CJet;
use crate::specfun::kummer::u_jet;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Smallest kζ at which the separate waves are evaluated.
pub const KZETA_FLOOR: f64 = 1e-8;
/// The scattered search window stops this far short of θ = −π.
const THETA_EPS: f64 = 1e-4;
const ROOT_TOL: f64 = 1e-12;
const SCAN_POINTS: usize = 120;

const PHI: usize = 0;
const KAPPA: usize = 1;

type J = CJet<2>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ψ and its first φ- and k-derivatives at a field point (pm). `dk_*` is ∂_k ψ
/// in pm at fixed (x, y), with η ∝ 1/k following k.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TempleWave {
    pub psi_in: Complex64,
    pub psi_sc: Complex64,
    pub dphi_in: Complex64,
    pub dphi_sc: Complex64,
    pub dk_in: Complex64,
    pub dk_sc: Complex64,
}

/// ζ = r − x without cancellation on the forward axis.
fn zeta_of(x: f64, y: f64) -> f64 {
    let r = x.hypot(y);
    if x > 0.0 {
        y * y / (r + x)
    } else {
        r - x
    }
}

/// Second-order jet of a rotated coordinate in φ, times κ = k/k₀.
fn rotated(v: f64, d1: f64, d2: f64, kappa: J) -> J {
    let mut j = J::from_c64(c(v, 0.0));
    j.g[PHI] = c(d1, 0.0);
    j.h[PHI][PHI] = c(d2, 0.0);
    j * kappa
}

/// (ψ_in, ψ_sc) as jets in (φ, κ) at the dimensionless point (kx, ky).
fn wave_jets(eta: f64, kx: f64, ky: f64, which: Branch) -> Result<J> {
    let kzeta = zeta_of(kx, ky);
    if !(kzeta > 0.0) {
        return Err(Error::Domain(format!(
            "kζ = 0 at (kx, ky) = ({kx}, {ky}): the separate waves are singular on the forward axis"
        )));
    }
    let kappa = J::variable(c(1.0, 0.0), KAPPA);
    let eta_j = kappa.recip().scale(c(eta, 0.0));
    let i_eta = eta_j.scale(c(0.0, 1.0));
    // x' = x cos φ − y sin φ, ζ' = r − x'
    let zeta_j = rotated(kzeta, ky, kx, kappa);
    let damp = eta_j.scale(c(-PI / 2.0, 0.0)).exp();
    match which {
        Branch::Incident => {
            let x_j = rotated(kx, -ky, -kx, kappa);
            let (u, _, _) = u_jet(i_eta, J::one(), zeta_j.scale(c(0.0, 1.0)))?;
            Ok(damp * x_j.scale(c(0.0, 1.0)).exp() * u)
        }
        Branch::Scattered => {
            let r_j = kappa.scale(c(kx.hypot(ky), 0.0));
            let a = J::one() - i_eta;
            let (u, _, _) = u_jet(a, J::one(), zeta_j.scale(c(0.0, -1.0)))?;
            let ratio = (ln_gamma_jet(a)? - ln_gamma_jet(i_eta)?).exp();
            Ok(-(damp * ratio * r_j.scale(c(0.0, 1.0)).exp() * u))
        }
    }
}

pub fn temple_wave(x_pm: f64, y_pm: f64, sc: &Scenario) -> Result<TempleWave> {
    let (kx, ky) = (sc.k * x_pm, sc.k * y_pm);
    let win = wave_jets(sc.eta_s, kx, ky, Branch::Incident)?;
    let wsc = wave_jets(sc.eta_s, kx, ky, Branch::Scattered)?;
    Ok(TempleWave {
        psi_in: win.v,
        psi_sc: wsc.v,
        dphi_in: win.g[PHI],
        dphi_sc: wsc.g[PHI],
        dk_in: win.g[KAPPA] / sc.k,
        dk_sc: wsc.g[KAPPA] / sc.k,
    })
}

/// Orbit constant C₁ (incident) or C₂ (scattered) and the time τ at (kx, ky).
fn constant_and_time(eta: f64, kx: f64, ky: f64, branch: Branch) -> Result<(f64, f64)> {
    let w = wave_jets(eta, kx, ky, branch)?;
    Ok(((w.g[PHI] / w.v).im, (w.g[KAPPA] / w.v).im))
}

/// C₁ = Im(∂_φ ψ_in/ψ_in) or C₂ = Im(∂_φ ψ_sc/ψ_sc) at φ = 0.
pub fn orbit_constant(sc: &Scenario, kx: f64, ky: f64, branch: Branch) -> Result<f64> {
    Ok(constant_and_time(sc.eta_s, kx, ky, branch)?.0)
}

/// A run of grid values where the branch equation has no root.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub branch: Branch,
    /// Grid coordinate range in pm (x for the incident branch, r for the
    /// scattered one).
    pub from_pm: f64,
    pub to_pm: f64,
    pub points: usize,
}

/// One grid value and the point solved there, if any.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TempleSample {
    pub grid_pm: f64,
    pub point: Option<TrajectoryPoint>,
}

/// Samples in solve order (far field first) and the gaps among them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TempleTrajectory {
    pub samples: Vec<TempleSample>,
    pub gaps: Vec<Gap>,
}

impl TempleTrajectory {
    pub fn points(&self) -> impl Iterator<Item = &TrajectoryPoint> {
        self.samples.iter().filter_map(|s| s.point.as_ref())
    }
}

/// Roots of `f` on the sampled interval, refined; samples where `f` fails
/// are skipped.
fn scan_roots(f: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let t = lo + (hi - lo) * i as f64 / n as f64;
        let Ok(v) = f(t) else {
            prev = None;
            continue;
        };
        if let Some((tp, vp)) = prev {
            if vp == 0.0 {
                roots.push(tp);
            } else if vp * v < 0.0 {
                let b = Bracket { lo: tp, hi: t, f_lo: vp, f_hi: v };
                if let Ok(r) = try_solve_bracketed(f, b, ROOT_TOL) {
                    roots.push(r);
                }
            }
        }
        prev = Some((t, v));
    }
    roots
}

/// Root near `guess`: first inside a narrow bracket, then by a full scan
/// choosing the root closest to the guess.
fn continued_root(f: &impl Fn(f64) -> Result<f64>, guess: f64, width: f64, lo: f64, hi: f64) -> Option<f64> {
    let a = (guess - width).max(lo);
    let b = (guess + width).min(hi);
    if let Ok(br) = Bracket::try_from_fn(f, a, b) {
        if let Ok(r) = try_solve_bracketed(f, br, ROOT_TOL) {
            return Some(r);
        }
    }
    scan_roots(f, lo, hi, SCAN_POINTS)
        .into_iter()
        .min_by(|p, q| (p - guess).abs().total_cmp(&(q - guess).abs()))
}

fn gaps_from(branch: Branch, samples: &[TempleSample]) -> Vec<Gap> {
    let mut gaps: Vec<Gap> = Vec::new();
    let mut open = false;
    for s in samples {
        let g = s.grid_pm;
        if s.point.is_some() {
            open = false;
            continue;
        }
        match gaps.last_mut() {
            Some(gap) if open => {
                gap.to_pm = g;
                gap.points += 1;
            }
            _ => gaps.push(Gap {
                branch,
                from_pm: g,
                to_pm: g,
                points: 1,
            }),
        }
        open = true;
    }
    gaps
}

/// Temple mode trajectory for one branch. The incident branch solves
/// C₁(x, y) = −ks for y > 0 at each x of `grid_pm`, taken from the far
/// incoming side; the scattered branch solves C₂(r, θ) = −ks for θ in
/// (−π, 0) at each r of `grid_pm`, taken from the far outgoing side. Grid
/// values past the returning point of the orbit (x > x_ret incident,
/// r < r_ret scattered) lie outside the branch and are dropped. Grid values
/// without a root are reported as gaps and never filled in.
pub fn temple_trajectory(sc: &Scenario, ks: f64, branch: Branch, grid_pm: &[f64]) -> Result<TempleTrajectory> {
    if !(ks > 0.0) || !ks.is_finite() {
        return Err(Error::Domain(format!("impact parameter ks must be positive, got {ks}")));
    }
    let eta = sc.eta_s;
    let (r_ret, t_ret) = returning_point(sc, ks);
    let mut grid: Vec<f64> = match branch {
        Branch::Incident => grid_pm.iter().copied().filter(|&x| x <= r_ret * t_ret.cos()).collect(),
        Branch::Scattered => grid_pm.iter().copied().filter(|&r| r >= r_ret).collect(),
    };
    match branch {
        Branch::Incident => grid.sort_by(|a, b| a.total_cmp(b)),
        Branch::Scattered => grid.sort_by(|a, b| b.total_cmp(a)),
    }
    let mut samples = Vec::with_capacity(grid.len());
    match branch {
        Branch::Incident => {
            // far field: C₁ ≈ −ky
            let mut guess = ks;
            for &x in &grid {
                let kx = sc.k * x;
                let y_lo = (2.0 * KZETA_FLOOR * kx.max(0.0)).sqrt().max(1e-6);
                let y_hi = 2.0 * ks + 5.0;
                let f = |ky: f64| constant_and_time(eta, kx, ky, branch).map(|(c1, _)| c1 + ks);
                let root = continued_root(&f, guess, 0.1 * guess.max(0.1), y_lo, y_hi);
                let mut point = None;
                if let Some(ky) = root {
                    guess = ky;
                    let (_, tau) = constant_and_time(eta, kx, ky, branch)?;
                    point = Some(TrajectoryPoint {
                        rho: kx.hypot(ky),
                        theta: ky.atan2(kx),
                        tau,
                        branch,
                    });
                }
                samples.push(TempleSample { grid_pm: x, point });
            }
        }
        Branch::Scattered => {
            // far field: C₂ ≈ η cot(θ/2)
            let mut guess = -2.0 * (eta / ks).atan();
            for &r in &grid {
                let kr = sc.k * r;
                let lo = -PI + THETA_EPS;
                let hi = -2.0 * (0.5 * KZETA_FLOOR / kr).sqrt().min(1.0).asin();
                let f = |t: f64| constant_and_time(eta, kr * t.cos(), kr * t.sin(), branch).map(|(c2, _)| c2 + ks);
                let root = if hi > lo { continued_root(&f, guess, 0.05, lo, hi) } else { None };
                let mut point = None;
                if let Some(t) = root {
                    guess = t;
                    let (_, tau) = constant_and_time(eta, kr * t.cos(), kr * t.sin(), branch)?;
                    point = Some(TrajectoryPoint {
                        rho: kr,
                        theta: t,
                        tau,
                        branch,
                    });
                }
                samples.push(TempleSample { grid_pm: r, point });
            }
        }
    }
    let gaps = gaps_from(branch, &samples);
    Ok(TempleTrajectory { samples, gaps })
}

/// τ = 2E(t + t₀)/ħ = k Im(∂_k ψ/ψ) at a point (ρ, θ) of the given branch.
/// The point must satisfy that branch's equation C = −ks.
pub fn temple_time(sc: &Scenario, ks: f64, branch: Branch, point: &TrajectoryPoint) -> Result<f64> {
    let (kx, ky) = (point.rho * point.theta.cos(), point.rho * point.theta.sin());
    let (c, tau) = constant_and_time(sc.eta_s, kx, ky, branch)?;
    if (c + ks).abs() > 1e-6 * ks.max(1.0) {
        return Err(Error::Domain(format!(
            "point (ρ = {}, θ = {}) is off the {} branch: C = {c}, expected {}",
            point.rho,
            point.theta,
            branch.as_str(),
            -ks
        )));
    }
    Ok(tau)
}

/// Distance from a trajectory point to the classical orbit with the same ks,
/// measured at the same radius (or at the closest approach inside it) and
/// divided by that radius.
pub fn classical_deviation(sc: &Scenario, ks: f64, point: &TrajectoryPoint) -> Result<f64> {
    let (r1, _) = turning_radii_rho(sc, ks);
    let rho = point.rho.max(r1);
    let mut best = f64::INFINITY;
    for b in [Branch::Incident, Branch::Scattered] {
        let t = polar_orbit_theta(sc, ks, rho, b)?;
        let dx = rho * t.cos() - point.rho * point.theta.cos();
        let dy = rho * t.sin() - point.rho * point.theta.sin();
        best = best.min(dx.hypot(dy) / rho);
    }
    Ok(best)
}

/// The Temple cross section has the Rutherford form.
pub fn temple_cross_section(sc: &Scenario, theta_sc: f64) -> Result<CrossSectionSample> {
    rutherford_cross_section(sc, theta_sc)
}
