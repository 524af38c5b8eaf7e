//! Extended-precision reference implementations (about 115 significant
//! digits) built from plain series and recurrences, independent of the
//! library's double-precision code paths.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;
use std::cell::RefCell;

pub const P: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CC.with(|c| f(&mut c.borrow_mut()))
}

pub fn r(v: f64) -> BigFloat {
    BigFloat::from_f64(v, P)
}

pub fn ri(v: i64) -> BigFloat {
    BigFloat::from_i64(v, P)
}

pub fn parse(s: &str) -> BigFloat {
    with_cc(|cc| BigFloat::parse(s, Radix::Dec, P, RM, cc))
}

pub fn to_f64(x: &BigFloat) -> f64 {
    let s = with_cc(|cc| x.format(Radix::Dec, RoundingMode::ToEven, cc)).expect("formats");
    s.parse().unwrap_or_else(|_| panic!("unparseable big float '{s}'"))
}

pub fn pi() -> BigFloat {
    with_cc(|cc| cc.pi(P, RM))
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, P, RM)
}
fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, P, RM)
}
fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, P, RM)
}
fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, P, RM)
}
fn ln(a: &BigFloat) -> BigFloat {
    with_cc(|cc| a.ln(P, RM, cc))
}
fn exp(a: &BigFloat) -> BigFloat {
    with_cc(|cc| a.exp(P, RM, cc))
}
fn sin(a: &BigFloat) -> BigFloat {
    with_cc(|cc| a.sin(P, RM, cc))
}
fn cos(a: &BigFloat) -> BigFloat {
    with_cc(|cc| a.cos(P, RM, cc))
}
fn atan(a: &BigFloat) -> BigFloat {
    with_cc(|cc| a.atan(P, RM, cc))
}

fn atan2(y: &BigFloat, x: &BigFloat) -> BigFloat {
    let half_pi = div(&pi(), &ri(2));
    if x.is_zero() {
        return if y.is_negative() { half_pi.neg() } else { half_pi };
    }
    let t = atan(&div(y, x));
    if x.is_positive() {
        t
    } else if y.is_negative() {
        sub(&t, &pi())
    } else {
        add(&t, &pi())
    }
}

#[derive(Clone, Debug)]
pub struct C {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl C {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        C { re, im }
    }
    pub fn f(re: f64, im: f64) -> Self {
        C::new(r(re), r(im))
    }
    pub fn real(re: BigFloat) -> Self {
        C::new(re, ri(0))
    }
    pub fn from_c64(z: Complex64) -> Self {
        C::f(z.re, z.im)
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
    pub fn add(&self, o: &C) -> C {
        C::new(add(&self.re, &o.re), add(&self.im, &o.im))
    }
    pub fn sub(&self, o: &C) -> C {
        C::new(sub(&self.re, &o.re), sub(&self.im, &o.im))
    }
    pub fn mul(&self, o: &C) -> C {
        C::new(
            sub(&mul(&self.re, &o.re), &mul(&self.im, &o.im)),
            add(&mul(&self.re, &o.im), &mul(&self.im, &o.re)),
        )
    }
    pub fn scale(&self, s: &BigFloat) -> C {
        C::new(mul(&self.re, s), mul(&self.im, s))
    }
    pub fn norm_sqr(&self) -> BigFloat {
        add(&mul(&self.re, &self.re), &mul(&self.im, &self.im))
    }
    pub fn recip(&self) -> C {
        let d = self.norm_sqr();
        C::new(div(&self.re, &d), div(&self.im, &d).neg())
    }
    pub fn div(&self, o: &C) -> C {
        self.mul(&o.recip())
    }
    pub fn neg(&self) -> C {
        C::new(self.re.neg(), self.im.neg())
    }
    pub fn ln(&self) -> C {
        C::new(div(&ln(&self.norm_sqr()), &ri(2)), atan2(&self.im, &self.re))
    }
    pub fn exp(&self) -> C {
        let m = exp(&self.re);
        C::new(mul(&m, &cos(&self.im)), mul(&m, &sin(&self.im)))
    }
    /// Principal power exp(w ln z).
    pub fn pow(&self, w: &C) -> C {
        w.mul(&self.ln()).exp()
    }
    pub fn cos(&self) -> C {
        // cos(x+iy) = cos x cosh y − i sin x sinh y
        let (ey, emy) = (exp(&self.im), exp(&self.im.neg()));
        let ch = div(&add(&ey, &emy), &ri(2));
        let sh = div(&sub(&ey, &emy), &ri(2));
        C::new(mul(&cos(&self.re), &ch), mul(&sin(&self.re), &sh).neg())
    }
}

/// |a − b| / max(|b|, tiny), as an f64.
pub fn rel_err(a: &C, b: &C) -> f64 {
    let d = a.sub(b).norm_sqr();
    let n = b.norm_sqr();
    (to_f64(&d) / to_f64(&n)).sqrt()
}

/// Relative difference between a double and an extended value.
pub fn rel_err_c64(a: Complex64, b: &C) -> f64 {
    let bb = b.to_c64();
    (a - bb).norm() / bb.norm()
}

fn small(term: &C, sum: &C, rel: f64) -> bool {
    to_f64(&term.norm_sqr()) <= rel * rel * to_f64(&sum.norm_sqr())
}

/// Kummer M(a,b,z) by direct summation.
pub fn kummer_m(a: &C, b: &C, z: &C) -> C {
    let mut term = C::f(1.0, 0.0);
    let mut sum = term.clone();
    for n in 0..200_000i64 {
        let nn = C::real(ri(n));
        term = term.mul(&a.add(&nn)).div(&b.add(&nn)).mul(z).scale(&div(&ri(1), &ri(n + 1)));
        sum = sum.add(&term);
        if n > 5 && small(&term, &sum, 1e-100) {
            return sum;
        }
    }
    panic!("oracle M series did not converge");
}

/// Bernoulli numbers B_0..=B_n from Σ_{k=0}^{m} C(m+1,k) B_k = 0.
fn bernoulli(n: usize) -> Vec<BigFloat> {
    let mut b = vec![ri(1)];
    for m in 1..=n {
        let mut s = ri(0);
        let mut binom = ri(1); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate() {
            s = add(&s, &mul(&binom, bk));
            binom = div(&mul(&binom, &ri((m + 1 - k) as i64)), &ri((k + 1) as i64));
        }
        b.push(div(&s, &ri(m as i64 + 1)).neg());
    }
    b
}

const STIRLING_TERMS: usize = 30;
const SHIFT_TO: f64 = 60.0;

fn shift_count(z: &C) -> i64 {
    (SHIFT_TO - to_f64(&z.re)).ceil().max(0.0) as i64
}

/// ln Γ(z) by upward recurrence to Re z ≥ 60 and the Stirling series; the
/// imaginary part follows the continuous branch from the real axis.
pub fn ln_gamma(z: &C) -> C {
    let n = shift_count(z);
    let mut corr = C::f(0.0, 0.0);
    for k in 0..n {
        corr = corr.add(&z.add(&C::real(ri(k))).ln());
    }
    let w = z.add(&C::real(ri(n)));
    let bern = bernoulli(2 * STIRLING_TERMS);
    let half = div(&ri(1), &ri(2));
    let ln2pi = ln(&mul(&ri(2), &pi()));
    let mut s = w.sub(&C::real(half.clone())).mul(&w.ln()).sub(&w).add(&C::real(div(&ln2pi, &ri(2))));
    let winv = w.recip();
    let w2inv = winv.mul(&winv);
    let mut pw = winv.clone();
    for m in 1..=STIRLING_TERMS {
        let denom = ri((2 * m * (2 * m - 1)) as i64);
        s = s.add(&pw.scale(&div(&bern[2 * m], &denom)));
        pw = pw.mul(&w2inv);
    }
    s.sub(&corr)
}

pub fn gamma(z: &C) -> C {
    ln_gamma(z).exp()
}

/// ψ(z) by recurrence and the asymptotic series.
pub fn digamma(z: &C) -> C {
    let n = shift_count(z);
    let mut corr = C::f(0.0, 0.0);
    for k in 0..n {
        corr = corr.add(&z.add(&C::real(ri(k))).recip());
    }
    let w = z.add(&C::real(ri(n)));
    let bern = bernoulli(2 * STIRLING_TERMS);
    let winv = w.recip();
    let w2inv = winv.mul(&winv);
    let mut s = w.ln().sub(&winv.scale(&div(&ri(1), &ri(2))));
    let mut pw = w2inv.clone();
    for m in 1..=STIRLING_TERMS {
        s = s.sub(&pw.scale(&div(&bern[2 * m], &ri(2 * m as i64))));
        pw = pw.mul(&w2inv);
    }
    s.sub(&corr)
}

/// U(a,1,z) = −(1/Γ(a)) Σ_k (a)_k/(k!)² z^k [ln z + ψ(a+k) − 2ψ(1+k)].
pub fn kummer_u_b1(a: &C, z: &C) -> C {
    let lnz = z.ln();
    let mut psi_a = digamma(a);
    let mut psi_1 = digamma(&C::f(1.0, 0.0));
    let mut coef = C::f(1.0, 0.0);
    let mut sum = C::f(0.0, 0.0);
    for k in 0..200_000i64 {
        let term = coef.mul(&lnz.add(&psi_a).sub(&psi_1.scale(&ri(2))));
        sum = sum.add(&term);
        if k > 5 && small(&term, &sum, 1e-100) {
            return sum.div(&gamma(a)).neg();
        }
        let kk = C::real(ri(k));
        let k1 = ri(k + 1);
        coef = coef.mul(&a.add(&kk)).mul(z).scale(&div(&ri(1), &mul(&k1, &k1)));
        psi_a = psi_a.add(&a.add(&kk).recip());
        psi_1 = psi_1.add(&C::real(div(&ri(1), &k1)));
    }
    panic!("oracle U series did not converge");
}

/// −cos(πb)Γ(1−b)Γ(b−a)/Γ(1−a) M(a,b,z) + Γ(b−1) z^{1−b} M(1+a−b,2−b,z).
pub fn kummer_v(a: &C, b: &C, z: &C) -> C {
    let one = C::f(1.0, 0.0);
    let two = C::f(2.0, 0.0);
    let coef = b
        .scale(&pi())
        .cos()
        .mul(&gamma(&one.sub(b)))
        .mul(&gamma(&b.sub(a)))
        .div(&gamma(&one.sub(a)))
        .neg();
    let t1 = coef.mul(&kummer_m(a, b, z));
    let t2 = gamma(&b.sub(&one)).mul(&z.pow(&one.sub(b))).mul(&kummer_m(&one.add(a).sub(b), &two.sub(b), z));
    t1.add(&t2)
}

/// P_ν(x) = ₂F₁(−ν, ν+1; 1; (1−x)/2) for real ν, x in (−1, 1].
pub fn legendre_p(nu: &BigFloat, x: &BigFloat) -> BigFloat {
    let t = div(&sub(&ri(1), x), &ri(2));
    let a = nu.neg();
    let b = add(nu, &ri(1));
    let mut term = ri(1);
    let mut sum = ri(1);
    for n in 0..1_000_000i64 {
        let nn = ri(n);
        let n1 = ri(n + 1);
        term = div(&mul(&mul(&term, &add(&a, &nn)), &mul(&add(&b, &nn), &t)), &mul(&n1, &n1));
        sum = add(&sum, &term);
        let (tf, sf) = (to_f64(&term).abs(), to_f64(&sum).abs());
        if n > 5 && tf <= 1e-90 * sf {
            return sum;
        }
    }
    panic!("oracle Legendre series did not converge");
}

/// Y_ν(x) = Q_ν(x) + i(π/2)P_ν(x), with the Ferrers Q from
/// Q_ν = (π / (2 sin πν)) (cos πν P_ν(x) − P_ν(−x)); ν not an integer.
pub fn legendre_y(nu: &BigFloat, x: &BigFloat) -> C {
    let p = legendre_p(nu, x);
    let pm = legendre_p(nu, &x.neg());
    let pn = mul(&pi(), nu);
    let q = div(&mul(&pi(), &sub(&mul(&cos(&pn), &p), &pm)), &mul(&ri(2), &sin(&pn)));
    C::new(q, mul(&div(&pi(), &ri(2)), &p))
}

/// ∂_ν arg Y_ν(cos θ), by a central difference with step 2⁻¹⁰⁰ (error
/// ~1e−60, far below double precision).
pub fn dnu_w_theta(theta: f64, nu: f64) -> f64 {
    let x = cos(&r(theta));
    let h = r(2f64.powi(-100));
    let n = r(nu);
    let yp = legendre_y(&add(&n, &h), &x);
    let ym = legendre_y(&sub(&n, &h), &x);
    let y = legendre_y(&n, &x);
    let dy = yp.sub(&ym).scale(&div(&ri(1), &mul(&ri(2), &h)));
    to_f64(&dy.div(&y).im)
}

/// Im ψ(1 + iy) = (π/2) coth(πy) − 1/(2y).
pub fn im_digamma_one_plus_iy(y: f64) -> BigFloat {
    let py = mul(&pi(), &r(y));
    let (e, em) = (exp(&py), exp(&py.neg()));
    let coth = div(&add(&e, &em), &sub(&e, &em));
    sub(&mul(&div(&pi(), &ri(2)), &coth), &div(&ri(1), &mul(&ri(2), &r(y))))
}

pub fn sinh(x: &BigFloat) -> BigFloat {
    div(&sub(&exp(x), &exp(&x.neg())), &ri(2))
}

pub fn big_div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    div(a, b)
}

pub fn big_sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    sub(a, b)
}
