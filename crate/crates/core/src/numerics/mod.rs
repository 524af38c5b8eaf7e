//! Root bracketing, finite differences and the Newtonian two-body oracle.

pub mod diff;
pub mod ode;
pub mod roots;

pub use diff::central_difference;
pub use ode::{integrate_newton, NewtonOptions, OdeState};
pub use roots::{solve_bracketed, try_solve_bracketed, Bracket, DEFAULT_TOL, MAX_ITERATIONS};
