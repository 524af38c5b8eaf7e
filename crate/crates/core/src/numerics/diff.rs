use std::ops::{Mul, Sub};

/// Central difference (f(x+h) − f(x−h)) / 2h.
pub fn central_difference<T>(mut f: impl FnMut(f64) -> T, x: f64, h: f64) -> T
where
    T: Sub<Output = T> + Mul<f64, Output = T>,
{
    (f(x + h) - f(x - h)) * (0.5 / h)
}

/// Errors of two central differences at steps h and h/2 against a reference
/// derivative, together with their ratio (≈4 for second-order convergence).
#[derive(Clone, Copy, Debug)]
pub struct StepRefinement {
    pub err_h: f64,
    pub err_half: f64,
}

impl StepRefinement {
    pub fn ratio(&self) -> f64 {
        self.err_h / self.err_half
    }
}

pub fn step_refinement(
    mut f: impl FnMut(f64) -> num_complex::Complex64,
    x: f64,
    h: f64,
    analytic: num_complex::Complex64,
) -> StepRefinement {
    let d1 = central_difference(&mut f, x, h);
    let d2 = central_difference(&mut f, x, 0.5 * h);
    StepRefinement {
        err_h: (d1 - analytic).norm(),
        err_half: (d2 - analytic).norm(),
    }
}
