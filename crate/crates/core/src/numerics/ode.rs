//! Dormand–Prince 5(4) integration of an electron in the Coulomb field of a
//! fixed point charge. Used as an independent check on the classical orbit
//! formulas. Positions are in pm, velocities in pm/s, times in s; internally
//! time is carried in fs to keep the step sizes near unity.

use crate::constants::{C_PM_PER_S, E2_EV_PM, MC2_EV};
use crate::error::{Error, Result};

const FS: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeState {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub t: f64,
}

impl OdeState {
    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn speed(&self) -> f64 {
        self.vx.hypot(self.vy)
    }

    /// Total energy in eV for nuclear charge `z`.
    pub fn energy_ev(&self, z: f64) -> f64 {
        let v2 = self.vx * self.vx + self.vy * self.vy;
        0.5 * MC2_EV * v2 / (C_PM_PER_S * C_PM_PER_S) - z * E2_EV_PM / self.r()
    }

    /// Angular momentum per unit mass, pm²/s.
    pub fn angular_momentum(&self) -> f64 {
        self.x * self.vy - self.y * self.vx
    }

    /// Polar angle of the position in (−π, π].
    pub fn theta(&self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Direction of motion in (−π, π].
    pub fn heading(&self) -> f64 {
        self.vy.atan2(self.vx)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub rtol: f64,
    /// Integration stops with an error if r drops below this (pm).
    pub r_floor_pm: f64,
    pub max_steps: usize,
    /// Relative drift of energy and angular momentum tolerated at the end.
    pub max_drift: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            rtol: 1e-12,
            r_floor_pm: 1e-3,
            max_steps: 2_000_000,
            max_drift: 1e-9,
        }
    }
}

/// Strength K in a = −K r̂/r², pm³/fs².
fn coupling(z: f64) -> f64 {
    z * E2_EV_PM * C_PM_PER_S * C_PM_PER_S / MC2_EV * FS * FS
}

type Vec4 = [f64; 4];

fn rhs(k: f64, s: &Vec4) -> Vec4 {
    let r2 = s[0] * s[0] + s[1] * s[1];
    let f = -k / (r2 * r2.sqrt());
    [s[2], s[3], f * s[0], f * s[1]]
}

fn axpy(base: &Vec4, h: f64, terms: &[(f64, &Vec4)]) -> Vec4 {
    let mut out = *base;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One DOPRI5 step; returns the fifth-order state and the embedded error
/// vector (difference between the fifth- and fourth-order solutions).
fn dopri_step(k: f64, y: &Vec4, h: f64) -> (Vec4, Vec4) {
    let k1 = rhs(k, y);
    let k2 = rhs(k, &axpy(y, h, &[(1.0 / 5.0, &k1)]));
    let k3 = rhs(k, &axpy(y, h, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]));
    let k4 = rhs(
        k,
        &axpy(y, h, &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)]),
    );
    let k5 = rhs(
        k,
        &axpy(
            y,
            h,
            &[
                (19372.0 / 6561.0, &k1),
                (-25360.0 / 2187.0, &k2),
                (64448.0 / 6561.0, &k3),
                (-212.0 / 729.0, &k4),
            ],
        ),
    );
    let k6 = rhs(
        k,
        &axpy(
            y,
            h,
            &[
                (9017.0 / 3168.0, &k1),
                (-355.0 / 33.0, &k2),
                (46732.0 / 5247.0, &k3),
                (49.0 / 176.0, &k4),
                (-5103.0 / 18656.0, &k5),
            ],
        ),
    );
    let y5 = axpy(
        y,
        h,
        &[
            (35.0 / 384.0, &k1),
            (500.0 / 1113.0, &k3),
            (125.0 / 192.0, &k4),
            (-2187.0 / 6784.0, &k5),
            (11.0 / 84.0, &k6),
        ],
    );
    let k7 = rhs(k, &y5);
    let e = [
        35.0 / 384.0 - 5179.0 / 57600.0,
        0.0,
        500.0 / 1113.0 - 7571.0 / 16695.0,
        125.0 / 192.0 - 393.0 / 640.0,
        -2187.0 / 6784.0 + 92097.0 / 339200.0,
        11.0 / 84.0 - 187.0 / 2100.0,
        -1.0 / 40.0,
    ];
    let err = axpy(
        &[0.0; 4],
        h,
        &[
            (e[0], &k1),
            (e[2], &k3),
            (e[3], &k4),
            (e[4], &k5),
            (e[5], &k6),
            (e[6], &k7),
        ],
    );
    (y5, err)
}

fn to_internal(s: &OdeState) -> Vec4 {
    [s.x, s.y, s.vx * FS, s.vy * FS]
}

fn from_internal(y: &Vec4, t_fs: f64) -> OdeState {
    OdeState {
        x: y[0],
        y: y[1],
        vx: y[2] / FS,
        vy: y[3] / FS,
        t: t_fs * FS,
    }
}

/// Scaled error norm: positions relative to r, velocities relative to |v|.
fn error_norm(y0: &Vec4, y1: &Vec4, err: &Vec4, rtol: f64) -> f64 {
    let r = y0[0].hypot(y0[1]).max(y1[0].hypot(y1[1]));
    let v = y0[2].hypot(y0[3]).max(y1[2].hypot(y1[3]));
    let sc = [r, r, v, v];
    (0..4)
        .map(|i| (err[i] / (rtol * sc[i])).powi(2))
        .sum::<f64>()
        .sqrt()
        / 2.0
}

/// Advance a state by exactly `dt` seconds with a single DOPRI5 step.
/// Intended for short refinement steps after an adaptive run.
pub fn single_step(z: f64, state: &OdeState, dt: f64) -> OdeState {
    let (y, _) = dopri_step(coupling(z), &to_internal(state), dt / FS);
    from_internal(&y, state.t / FS + dt / FS)
}

/// Integrate from `initial` until time `t_end` (s), returning every accepted
/// step. `z` is the nuclear charge in units of e; the electron is attracted
/// for z > 0.
pub fn integrate_newton(
    initial: OdeState,
    z: f64,
    t_end: f64,
    opts: &NewtonOptions,
) -> Result<Vec<OdeState>> {
    let k = coupling(z);
    let mut y = to_internal(&initial);
    let mut t = initial.t / FS;
    let t_stop = t_end / FS;
    let mut h = 1e-3 * initial.r() / initial.speed().max(1e-300) / FS;
    let mut out = vec![initial];
    let mut steps = 0;
    while t < t_stop {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::MaxIterations(opts.max_steps));
        }
        let h_try = h.min(t_stop - t);
        let (y_new, err) = dopri_step(k, &y, h_try);
        let en = error_norm(&y, &y_new, &err, opts.rtol);
        if en <= 1.0 || !en.is_finite() && h_try < 1e-300 {
            t += h_try;
            y = y_new;
            let s = from_internal(&y, t);
            if s.r() < opts.r_floor_pm {
                return Err(Error::SingularityApproach { r_pm: s.r() });
            }
            out.push(s);
        }
        let factor = if en.is_finite() {
            (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            0.2
        };
        h = h_try * factor;
    }
    let first = &out[0];
    let last = out.last().unwrap();
    let e0 = first.energy_ev(z);
    let l0 = first.angular_momentum();
    let de = ((last.energy_ev(z) - e0) / e0).abs();
    let dl = ((last.angular_momentum() - l0) / l0).abs();
    if de > opts.max_drift || dl > opts.max_drift {
        return Err(Error::Domain(format!(
            "conserved quantities drifted: energy {de:.2e}, angular momentum {dl:.2e}"
        )));
    }
    Ok(out)
}

/// Time at which the trajectory first crosses radius `r_target` moving in the
/// given radial direction (`inward` or not), refined within the bracketing
/// step by secant-bisection on single DOPRI5 steps.
pub fn radius_crossing(
    z: f64,
    states: &[OdeState],
    r_target: f64,
    inward: bool,
) -> Option<OdeState> {
    let idx = states.windows(2).position(|w| {
        if inward {
            w[0].r() >= r_target && w[1].r() < r_target
        } else {
            w[0].r() <= r_target && w[1].r() > r_target
        }
    })?;
    let s0 = states[idx];
    let dt = states[idx + 1].t - s0.t;
    let g = |tau: f64| single_step(z, &s0, tau).r() - r_target;
    let bracket = super::roots::Bracket::new(0.0, dt, s0.r() - r_target, g(dt)).ok()?;
    let tau = super::roots::solve_bracketed(g, bracket, 0.0).ok()?;
    Some(single_step(z, &s0, tau))
}
