//! Mode trajectories from the spherical-polar Coulomb wave function.

pub mod angular;
pub mod radial;
pub mod trajectory;

pub use angular::{
    cross_section_mode, dnu_dtheta, limiting_angle, returning_theta, scattering_angle_mode, w_theta,
    ModeAngle,
};
pub use radial::{dt_drho_scan, radial_phase, radial_wave, w_r, RadialPhase, RadialQuantity, RadialWave};
pub use trajectory::{geometric_grid, trajectory_polar};
