//! Mode trajectory in polar coordinates: θ(ρ) from ∂_ν(∓W_r − W_θ) = const.

use super::angular::{im_digamma, solve_dnu_w_theta};
use super::radial::radial_phase;
use crate::classical::{Branch, Scenario, TrajectoryPoint};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// One point of either branch at radius ρ > 0.
pub fn trajectory_point(sc: &Scenario, nu: f64, rho: f64, branch: Branch) -> Result<TrajectoryPoint> {
    let im = im_digamma(sc, nu)?;
    let p = radial_phase(rho, sc, nu)?;
    let (target, tau) = match branch {
        Branch::Incident => (-p.dnu - im + PI / 2.0, -p.tau),
        Branch::Scattered => (p.dnu - im + PI / 2.0, p.tau),
    };
    Ok(TrajectoryPoint {
        rho,
        theta: solve_dnu_w_theta(nu, target)?,
        tau,
        branch,
    })
}

/// The incident branch on the grid read inwards, the returning point at
/// ρ = 0, then the scattered branch outwards.
pub fn trajectory_polar(sc: &Scenario, nu: f64, rho_grid: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("trajectories need ν ≥ 0, got {nu}")));
    }
    let mut grid: Vec<f64> = rho_grid.iter().copied().filter(|&r| r > 0.0).collect();
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();
    let mut out = Vec::with_capacity(2 * grid.len() + 1);
    for &rho in &grid {
        out.push(trajectory_point(sc, nu, rho, Branch::Incident)?);
    }
    out.push(TrajectoryPoint {
        rho: 0.0,
        theta: super::angular::returning_theta(sc, nu)?,
        tau: 0.0,
        branch: Branch::Incident,
    });
    for &rho in grid.iter().rev() {
        out.push(trajectory_point(sc, nu, rho, Branch::Scattered)?);
    }
    Ok(out)
}

/// Geometric grid from `min` to `max` with `n` points.
pub fn geometric_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![min];
    }
    let r = (max / min).ln() / (n - 1) as f64;
    (0..n).map(|i| min * (r * i as f64).exp()).collect()
}
