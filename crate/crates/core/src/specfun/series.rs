use super::jet::{Field, Jet};
use crate::error::{Error, Result};

pub(crate) const MAX_TERMS: usize = 10_000;
const STOP_RATIO: f64 = 1e-16;

pub(crate) struct Summed<T, const N: usize> {
    pub sum: Jet<T, N>,
    /// Relative error estimate: tail term plus accumulated rounding.
    pub err: f64,
}

/// Sum `first + step(0, first) + step(1, ·) + …`, where `step(n, t_n)`
/// returns the next term. Stops once three consecutive terms fall below
/// 1e−16 of the partial sum (all jet components considered).
pub(crate) fn sum_series<T: Field, const N: usize>(
    func: &'static str,
    first: Jet<T, N>,
    mut step: impl FnMut(usize, &Jet<T, N>) -> Jet<T, N>,
) -> Result<Summed<T, N>> {
    let mut sum = first;
    let mut term = first;
    let mut max_term = first.max_norm();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        term = step(n, &term);
        sum = sum + term;
        let t = term.max_norm();
        max_term = max_term.max(t);
        let s = sum.max_norm();
        if !t.is_finite() || !s.is_finite() {
            return Err(Error::NonConvergence {
                func,
                terms: n + 1,
                last_term: t,
            });
        }
        if t <= STOP_RATIO * s {
            small += 1;
            if small >= 3 {
                let err = if s > 0.0 {
                    (t + max_term * T::EPS * ((n + 2) as f64).sqrt()) / s
                } else {
                    0.0
                };
                return Ok(Summed { sum, err });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        func,
        terms: MAX_TERMS,
        last_term: term.max_norm(),
    })
}
