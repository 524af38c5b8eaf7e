//! Analytic parameter derivatives against central differences, with the h²
//! convergence order confirmed by halving the step. Each case draws its own
//! seeded random points and reports the first mismatch.

#![allow(dead_code)]

use coulomb_mode::classical::Scenario;
use coulomb_mode::mode_polar::angular::{dnu_dtheta, w_theta_theta_derivatives};
use coulomb_mode::mode_polar::{radial_phase, radial_wave, scattering_angle_mode, w_theta};
use coulomb_mode::mode_temple::temple_wave;
use coulomb_mode::specfun::{digamma, hyp2f1, kummer_m, kummer_u, legendre_pq, DerivOrder};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Central difference of `f` at step `h`.
fn central(f: &dyn Fn(f64) -> Complex64, h: f64) -> Complex64 {
    (f(h) - f(-h)) / (2.0 * h)
}

/// `estimate(h)` approximates `analytic` with O(h²) error. Checks closeness at
/// a small step and the error ratio ≈ 4 between steps `big` and `big / 2`,
/// unless both errors are already at rounding level.
fn check(what: &str, estimate: &dyn Fn(f64) -> Complex64, analytic: Complex64, big: f64, scale: f64) -> Check {
    let denom = analytic.norm().max(scale);
    let small = big * 1e-3;
    let close = (estimate(small) - analytic).norm() / denom;
    if !(close <= 1e-6) {
        return Err(format!("{what}: relative difference {close:e} at h={small:e}"));
    }
    let e1 = (estimate(big) - analytic).norm() / denom;
    let e2 = (estimate(big / 2.0) - analytic).norm() / denom;
    let noise = 1e-13 / big;
    if e1 > 100.0 * noise {
        let ratio = e1 / e2;
        if !(3.0..=5.0).contains(&ratio) {
            return Err(format!("{what}: error ratio {ratio} (errors {e1:e}, {e2:e}) at h={big:e}"));
        }
    }
    Ok(())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hypergeometric_parameter_derivatives(points: usize) -> Check {
    let mut g = rng(1);
    for _ in 0..points {
        let a = c(g.gen_range(-1.5..2.0), g.gen_range(-1.0..1.0));
        let b = c(g.gen_range(-1.5..2.0), g.gen_range(-1.0..1.0));
        let cc = c(g.gen_range(1.2..3.0), 0.0);
        let x = c(g.gen_range(-0.8..0.8), 0.0);
        let f = |a: Complex64, b: Complex64, d: DerivOrder| hyp2f1(a, b, cc, x, d).unwrap();
        let d10 = DerivOrder::new(1, 0).unwrap();
        let d01 = DerivOrder::new(0, 1).unwrap();
        let scale = 1e-3 * f(a, b, DerivOrder::NONE).value.norm();
        let da = f(a, b, d10).derivative.unwrap();
        check("2F1 d/da", &|h| central(&|s| f(a + s, b, DerivOrder::NONE).value, h), da, 1e-2, scale)?;
        let db = f(a, b, d01).derivative.unwrap();
        check("2F1 d/db", &|h| central(&|s| f(a, b + s, DerivOrder::NONE).value, h), db, 1e-2, scale)?;
        let daa = f(a, b, DerivOrder::new(2, 0).unwrap()).derivative.unwrap();
        check("2F1 d2/da2", &|h| central(&|s| f(a + s, b, d10).derivative.unwrap(), h), daa, 1e-2, scale)?;
        let dab = f(a, b, DerivOrder::new(1, 1).unwrap()).derivative.unwrap();
        check("2F1 d2/dadb", &|h| central(&|s| f(a, b + s, d10).derivative.unwrap(), h), dab, 1e-2, scale)?;
        let dbb = f(a, b, DerivOrder::new(0, 2).unwrap()).derivative.unwrap();
        check("2F1 d2/db2", &|h| central(&|s| f(a, b + s, d01).derivative.unwrap(), h), dbb, 1e-2, scale)?;
    }
    Ok(())
}

pub fn legendre_degree_derivatives(points: usize) -> Check {
    let mut g = rng(2);
    for _ in 0..points {
        let nu = g.gen_range(0.0..3.0);
        let x = g.gen_range(-0.97..0.97);
        let pq = |n: f64, d: usize| {
            let (p, q) = legendre_pq(n, x, d).unwrap();
            match d {
                0 => (p.value, q.value),
                _ => (p.derivative.unwrap(), q.derivative.unwrap()),
            }
        };
        let (p0, q0) = pq(nu, 0);
        let scale = 1e-3 * p0.norm().max(q0.norm());
        let (p1, q1) = pq(nu, 1);
        let (p2, q2) = pq(nu, 2);
        check("P d/dnu", &|h| central(&|s| pq(nu + s, 0).0, h), p1, 1e-2, scale)?;
        check("Q d/dnu", &|h| central(&|s| pq(nu + s, 0).1, h), q1, 1e-2, scale)?;
        check("P d2/dnu2", &|h| central(&|s| pq(nu + s, 1).0, h), p2, 1e-2, scale)?;
        check("Q d2/dnu2", &|h| central(&|s| pq(nu + s, 1).1, h), q2, 1e-2, scale)?;
    }
    Ok(())
}

pub fn kummer_m_parameter_derivatives(points: usize) -> Check {
    let mut g = rng(3);
    for _ in 0..points {
        let nu = g.gen_range(0.0..3.0);
        let eta = g.gen_range(0.2..2.0);
        let a = c(nu + 1.0, eta);
        let b = c(2.0 * nu + 2.0 + 0.37, 0.0);
        let z = c(0.0, g.gen_range(0.1..60.0));
        let m = |a: Complex64, b: Complex64, d: DerivOrder| kummer_m(a, b, z, d).unwrap();
        let d10 = DerivOrder::new(1, 0).unwrap();
        let d01 = DerivOrder::new(0, 1).unwrap();
        let scale = 1e-3 * m(a, b, DerivOrder::NONE).value.norm();
        let what = format!("M at a={a}, b={b}, z={z}");
        let da = m(a, b, d10).derivative.unwrap();
        check(&format!("{what} d/da"), &|h| central(&|s| m(a + s, b, DerivOrder::NONE).value, h), da, 1e-2, scale)?;
        let db = m(a, b, d01).derivative.unwrap();
        check(&format!("{what} d/db"), &|h| central(&|s| m(a, b + s, DerivOrder::NONE).value, h), db, 1e-2, scale)?;
        let daa = m(a, b, DerivOrder::new(2, 0).unwrap()).derivative.unwrap();
        check(&format!("{what} d2/da2"), &|h| central(&|s| m(a + s, b, d10).derivative.unwrap(), h), daa, 1e-2, scale)?;
    }
    Ok(())
}

pub fn kummer_u_parameter_derivative(points: usize) -> Check {
    let mut g = rng(4);
    for _ in 0..points {
        let eta = g.gen_range(0.2..2.0);
        let (a, z) = if g.gen_bool(0.5) {
            (c(0.0, eta), c(0.0, g.gen_range(0.05..60.0)))
        } else {
            (c(1.0, -eta), c(0.0, -g.gen_range(0.05..60.0)))
        };
        let b = c(1.0, 0.0);
        let u = |a: Complex64| kummer_u(a, b, z, 0).unwrap().value;
        let da = kummer_u(a, b, z, 1).unwrap().derivative.unwrap();
        let scale = 1e-3 * u(a).norm();
        check(&format!("U({a},1,{z}) d/da"), &|h| central(&|s| u(a + s), h), da, 1e-2, scale)?;
    }
    Ok(())
}

pub fn trigamma_is_the_derivative_of_digamma(points: usize) -> Check {
    let mut g = rng(5);
    for _ in 0..points {
        let z = c(g.gen_range(0.3..8.0), g.gen_range(-3.0..3.0));
        let psi = |z: Complex64| digamma(z, 0).unwrap().value;
        let tri = digamma(z, 1).unwrap().value;
        check("trigamma", &|h| central(&|s| psi(z + s), h), tri, 1e-2, 1e-3)?;
    }
    Ok(())
}

fn scenario() -> Scenario {
    Scenario::new(20.0, 1).unwrap()
}

/// The same physical radius at energy E·e^s.
fn at_scaled_energy(sc: &Scenario, rho: f64, s: f64) -> (Scenario, f64) {
    (Scenario::new(sc.energy_ev * s.exp(), sc.z).unwrap(), rho * (0.5 * s).exp())
}

pub fn radial_wave_derivatives(points: usize) -> Check {
    let sc = scenario();
    let mut g = rng(6);
    for _ in 0..points {
        let nu = g.gen_range(0.0..2.5);
        let rho = g.gen_range(0.05..45.0);
        let w = radial_wave(rho, &sc, nu).unwrap();
        let scale = 1e-3 * w.u.norm();
        let what = format!("u at nu={nu}, rho={rho}");
        check(
            &format!("{what} d/dnu"),
            &|h| central(&|s| radial_wave(rho, &sc, nu + s).unwrap().u, h),
            w.dnu_u,
            1e-2,
            scale,
        )?;
        // 2E d/dE = 2 d/ds with E = E0 e^s
        let at = |s: f64| {
            let (sc2, rho2) = at_scaled_energy(&sc, rho, s);
            radial_wave(rho2, &sc2, nu).unwrap().u
        };
        check(&format!("{what} 2E d/dE"), &|h| central(&at, h) * 2.0, w.de_u_scaled, 1e-2, scale)?;
    }
    Ok(())
}

pub fn radial_phase_derivatives(points: usize) -> Check {
    let sc = scenario();
    let mut g = rng(7);
    let u = |rho: f64, nu: f64| radial_wave(rho, &sc, nu).unwrap().u;
    for _ in 0..points {
        let nu = g.gen_range(0.0..2.5);
        let rho = g.gen_range(0.2..45.0);
        let p = radial_phase(rho, &sc, nu).unwrap();
        let u0 = u(rho, nu);
        let what = format!("W_r at nu={nu}, rho={rho}");
        let im_log = |d: Complex64| c((d / u0).im, 0.0);
        check(&format!("{what} d/drho"), &|h| im_log(central(&|s| u(rho + s, nu), h)), c(p.dw_drho, 0.0), 1e-2, 1e-3)?;
        check(
            &format!("{what} d/dnu"),
            &|h| im_log(central(&|s| u(rho, nu + s), h)) + std::f64::consts::PI,
            c(p.dnu, 0.0),
            1e-2,
            1e-3,
        )?;
        let at = |s: f64| {
            let (sc2, rho2) = at_scaled_energy(&sc, rho, s);
            radial_wave(rho2, &sc2, nu).unwrap().u
        };
        check(&format!("{what} tau"), &|h| im_log(central(&at, h) * 2.0), c(p.tau, 0.0), 1e-2, 1e-3)?;
        let ph = |s: f64| radial_phase(rho + s, &sc, nu).unwrap();
        check(&format!("{what} dtau/drho"), &|h| central(&|s| c(ph(s).tau, 0.0), h), c(p.dtau_drho, 0.0), 1e-2, 1e-3)?;
        check(&format!("{what} d2/drho dnu"), &|h| central(&|s| c(ph(s).dnu, 0.0), h), c(p.ddnu_drho, 0.0), 1e-2, 1e-3)?;
    }
    Ok(())
}

pub fn angular_phase_derivatives(points: usize) -> Check {
    let mut g = rng(8);
    for _ in 0..points {
        let nu = g.gen_range(0.0..3.0);
        let theta = g.gen_range(0.1..3.04);
        let w = |n: f64, d: usize| c(w_theta(theta, n, d).unwrap(), 0.0);
        let what = format!("W_theta at nu={nu}, theta={theta}");
        let (s0, s1) = (1e-3 * w(nu, 0).norm(), 1e-3 * w(nu, 1).norm());
        check(&format!("{what} d/dnu"), &|h| central(&|s| w(nu + s, 0), h), w(nu, 1), 1e-2, s0)?;
        check(&format!("{what} d2/dnu2"), &|h| central(&|s| w(nu + s, 1), h), w(nu, 2), 1e-2, s1)?;
        let (dt, dtdn) = w_theta_theta_derivatives(theta, nu).unwrap();
        let wt = |t: f64, d: usize| c(w_theta(t, nu, d).unwrap(), 0.0);
        check(&format!("{what} d/dtheta"), &|h| central(&|s| wt(theta + s, 0), h), c(dt, 0.0), 1e-2, s0)?;
        check(&format!("{what} d2/dtheta dnu"), &|h| central(&|s| wt(theta + s, 1), h), c(dtdn, 0.0), 1e-2, s1)?;
    }
    Ok(())
}

pub fn scattering_angle_slope(points: usize) -> Check {
    let sc = scenario();
    let mut g = rng(9);
    for _ in 0..points {
        let nu = g.gen_range(0.0..5.0);
        let raw = |n: f64| c(scattering_angle_mode(&sc, n).unwrap().raw, 0.0);
        let slope = c(1.0 / dnu_dtheta(&sc, nu).unwrap(), 0.0);
        check(&format!("dtheta/dnu at nu={nu}"), &|h| central(&|s| raw(nu + s), h), slope, 1e-2, 1e-3)?;
    }
    Ok(())
}

pub fn temple_wave_derivatives(points: usize) -> Check {
    let sc = scenario();
    let mut g = rng(10);
    for _ in 0..points {
        let kr = g.gen_range(0.2..40.0);
        let sign = if g.gen_bool(0.5) { 1.0 } else { -1.0 };
        let theta = sign * g.gen_range(0.2..std::f64::consts::PI);
        let (x, y) = (kr * theta.cos() / sc.k, kr * theta.sin() / sc.k);
        let w = temple_wave(x, y, &sc).unwrap();
        let what = format!("Temple wave at kr={kr}, theta={theta}");
        let at_k = |s: f64| {
            let e = sc.energy_ev * (1.0 + s / sc.k).powi(2);
            temple_wave(x, y, &Scenario::new(e, sc.z).unwrap()).unwrap()
        };
        let hk = 1e-2 * sc.k;
        check(&format!("{what} d/dk in"), &|h| central(&|s| at_k(s).psi_in, h), w.dk_in, hk, 1e-3 * w.psi_in.norm() / sc.k)?;
        check(&format!("{what} d/dk sc"), &|h| central(&|s| at_k(s).psi_sc, h), w.dk_sc, hk, 1e-3 * w.psi_sc.norm() / sc.k)?;
        let at_phi = |p: f64| {
            let (cp, sp) = (p.cos(), p.sin());
            temple_wave(x * cp - y * sp, x * sp + y * cp, &sc).unwrap()
        };
        check(&format!("{what} d/dphi in"), &|h| central(&|s| at_phi(s).psi_in, h), w.dphi_in, 1e-2, 1e-3 * w.psi_in.norm())?;
        check(&format!("{what} d/dphi sc"), &|h| central(&|s| at_phi(s).psi_sc, h), w.dphi_sc, 1e-2, 1e-3 * w.psi_sc.norm())?;
    }
    Ok(())
}

/// Every case with the operation it covers.
pub const CASES: [(&str, fn(usize) -> Check); 10] = [
    ("2F1 d/da, d/db and second derivatives", hypergeometric_parameter_derivatives),
    ("Legendre P, Q d/dnu and d2/dnu2", legendre_degree_derivatives),
    ("Kummer M d/da, d/db, d2/da2", kummer_m_parameter_derivatives),
    ("Kummer U d/da", kummer_u_parameter_derivative),
    ("trigamma", trigamma_is_the_derivative_of_digamma),
    ("radial wave d/dnu and 2E d/dE", radial_wave_derivatives),
    ("radial phase d/drho, d/dnu, tau, dtau/drho, d2/drho dnu", radial_phase_derivatives),
    ("angular phase d/dnu, d2/dnu2, d/dtheta", angular_phase_derivatives),
    ("scattering angle dtheta/dnu", scattering_angle_slope),
    ("Temple wave d/dk and d/dphi", temple_wave_derivatives),
];
