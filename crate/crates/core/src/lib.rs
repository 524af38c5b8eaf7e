//! Classical Coulomb orbits and wave-mode trajectories for an electron
//! scattered by a point charge.
//!
//! Four dynamics are computed side by side: Hamilton–Jacobi orbits in
//! spherical polar and parabolic (Temple) coordinates, and mode trajectories
//! read off the phases of the exact Coulomb wave functions in the same two
//! coordinate systems.

pub mod classical;
pub mod cli;
pub mod constants;
pub mod error;
pub mod mode_polar;
pub mod mode_temple;
pub mod numerics;
pub mod specfun;

pub use classical::{Branch, CrossSectionSample, Scenario, TrajectoryPoint};
pub use error::{Error, Result};
