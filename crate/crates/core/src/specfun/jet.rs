//! Second-order forward-mode jets over complex scalars.
//!
//! A `Jet<T, N>` carries a value together with its gradient and Hessian with
//! respect to `N` real parameters. Parameter derivatives of the special
//! functions are obtained by pushing jets through the same series and
//! closed forms that produce the values.

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use twofloat::TwoFloat;

/// Complex scalar type a jet can be built over.
pub trait Field:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    /// Modulus to double precision; used for stopping rules only.
    fn magnitude(self) -> f64;
    /// Unit roundoff of the underlying arithmetic.
    const EPS: f64;

    fn zero() -> Self {
        Self::from_c64(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Self::from_c64(Complex64::new(1.0, 0.0))
    }
    fn from_f64(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }
    /// Real number given as an unevaluated sum hi + lo.
    fn from_f64_pair(hi: f64, lo: f64) -> Self {
        Self::from_f64(hi) + Self::from_f64(lo)
    }
}

impl Field for Complex64 {
    const EPS: f64 = 1.2e-16;
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Double-double complex number.
///
/// Only the elementary operations are provided. Division goes through a
/// Newton-refined reciprocal because `TwoFloat / TwoFloat` in the twofloat
/// crate loses the low word.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cdd {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

fn dd_recip(x: TwoFloat) -> TwoFloat {
    let r0 = 1.0 / x.hi();
    let e = TwoFloat::from(1.0) - x * r0;
    TwoFloat::from(r0) + e * r0
}

impl Add for Cdd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cdd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Neg for Cdd {
    type Output = Self;
    fn neg(self) -> Self {
        Cdd {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for Cdd {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        // scale by the larger component to keep |o|² in range
        let s = 1.0 / o.re.hi().abs().max(o.im.hi().abs());
        let (c, d) = (o.re * s, o.im * s);
        let inv = dd_recip(c * c + d * d);
        let num = self
            * Cdd {
                re: c,
                im: -d,
            };
        Cdd {
            re: num.re * inv * s,
            im: num.im * inv * s,
        }
    }
}

impl Field for Cdd {
    const EPS: f64 = 1e-31;
    fn from_c64(z: Complex64) -> Self {
        Cdd {
            re: TwoFloat::from(z.re),
            im: TwoFloat::from(z.im),
        }
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(f64::from(self.re), f64::from(self.im))
    }
    fn magnitude(self) -> f64 {
        f64::from(self.re).hypot(f64::from(self.im))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T, const N: usize> {
    pub v: T,
    pub g: [T; N],
    pub h: [[T; N]; N],
}

pub type CJet<const N: usize> = Jet<Complex64, N>;

impl<T: Field, const N: usize> Jet<T, N> {
    pub fn constant(v: T) -> Self {
        Jet {
            v,
            g: [T::zero(); N],
            h: [[T::zero(); N]; N],
        }
    }

    /// Independent variable number `i` with value `v`.
    pub fn variable(v: T, i: usize) -> Self {
        let mut j = Self::constant(v);
        j.g[i] = T::one();
        j
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn from_c64(z: Complex64) -> Self {
        Self::constant(T::from_c64(z))
    }

    /// Apply a scalar function given its value and first two derivatives at `self.v`.
    pub fn chain(self, f0: T, f1: T, f2: T) -> Self {
        let mut out = Self::constant(f0);
        for i in 0..N {
            out.g[i] = f1 * self.g[i];
            for j in 0..N {
                out.h[i][j] = f1 * self.h[i][j] + f2 * self.g[i] * self.g[j];
            }
        }
        out
    }

    pub fn scale(self, c: T) -> Self {
        let mut out = self;
        out.v = c * self.v;
        for i in 0..N {
            out.g[i] = c * self.g[i];
            for j in 0..N {
                out.h[i][j] = c * self.h[i][j];
            }
        }
        out
    }

    pub fn add_const(self, c: T) -> Self {
        let mut out = self;
        out.v = self.v + c;
        out
    }

    pub fn recip(self) -> Self {
        let r = T::one() / self.v;
        let r2 = r * r;
        self.chain(r, -r2, T::from_f64(2.0) * r2 * r)
    }

    /// Largest modulus over all components.
    pub fn max_norm(&self) -> f64 {
        let mut m = self.v.magnitude();
        for i in 0..N {
            m = m.max(self.g[i].magnitude());
            for j in 0..N {
                m = m.max(self.h[i][j].magnitude());
            }
        }
        m
    }

    pub fn map_components(self, f: impl Fn(T) -> T) -> Self {
        let mut out = self;
        out.v = f(self.v);
        for i in 0..N {
            out.g[i] = f(self.g[i]);
            for j in 0..N {
                out.h[i][j] = f(self.h[i][j]);
            }
        }
        out
    }

    pub fn convert<U: Field>(self) -> Jet<U, N> {
        let c = |t: T| U::from_c64(t.to_c64());
        let mut out = Jet::<U, N>::constant(c(self.v));
        for i in 0..N {
            out.g[i] = c(self.g[i]);
            for j in 0..N {
                out.h[i][j] = c(self.h[i][j]);
            }
        }
        out
    }
}

impl<const N: usize> Jet<Complex64, N> {
    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    /// Principal logarithm.
    pub fn ln(self) -> Self {
        let r = self.v.inv();
        self.chain(self.v.ln(), r, -r * r)
    }

    /// `self^p` on the principal branch of the logarithm.
    pub fn powj(self, p: Self) -> Self {
        (p * self.ln()).exp()
    }

    pub fn sin(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(c, -s, -c)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let d1 = 0.5 / s;
        self.chain(s, d1, -0.5 * d1 / self.v)
    }

    pub fn conj(self) -> Self {
        self.map_components(|z| z.conj())
    }

    pub fn re(self) -> Self {
        self.map_components(|z| Complex64::new(z.re, 0.0))
    }

    pub fn im(self) -> Self {
        self.map_components(|z| Complex64::new(z.im, 0.0))
    }
}

impl<T: Field, const N: usize> Add for Jet<T, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        out.v = self.v + o.v;
        for i in 0..N {
            out.g[i] = self.g[i] + o.g[i];
            for j in 0..N {
                out.h[i][j] = self.h[i][j] + o.h[i][j];
            }
        }
        out
    }
}

impl<T: Field, const N: usize> Sub for Jet<T, N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Field, const N: usize> Neg for Jet<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_components(|t| -t)
    }
}

impl<T: Field, const N: usize> Mul for Jet<T, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::constant(self.v * o.v);
        for i in 0..N {
            out.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..N {
                out.h[i][j] = self.h[i][j] * o.v
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i]
                    + self.v * o.h[i][j];
            }
        }
        out
    }
}

impl<T: Field, const N: usize> Div for Jet<T, N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Field, const N: usize> Mul<T> for Jet<T, N> {
    type Output = Self;
    fn mul(self, c: T) -> Self {
        self.scale(c)
    }
}

impl<T: Field, const N: usize> Add<T> for Jet<T, N> {
    type Output = Self;
    fn add(self, c: T) -> Self {
        self.add_const(c)
    }
}

impl<T: Field, const N: usize> Sub<T> for Jet<T, N> {
    type Output = Self;
    fn sub(self, c: T) -> Self {
        self.add_const(-c)
    }
}
