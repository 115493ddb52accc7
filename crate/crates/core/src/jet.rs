//! Second-order forward-mode jets in two variables.
//!
//! A [`Jet2`] carries the value of a scalar function of `(u, v)` together with
//! its first and second partial derivatives at one point. Arithmetic and the
//! elementary functions propagate all six coefficients by the product, quotient
//! and chain rules, so any composition of supported primitives yields exact
//! (up to rounding) second-order Taylor data.
//!
//! Jets obtained by differentiating another jet ([`Jet2::partial_u`],
//! [`Jet2::partial_v`]) only know their first-order part; the second-order
//! slots are set to NaN. First-order coefficients never depend on second-order
//! ones, so NaN stays confined to the second-order slots of anything computed
//! from such a jet.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{DomainError, Error};

/// Value and partial derivatives up to order two of a scalar field on the
/// `(u, v)` parameter plane. `duv` is the single mixed partial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub val: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub const fn new(val: f64, du: f64, dv: f64, duu: f64, duv: f64, dvv: f64) -> Self {
        Self {
            val,
            du,
            dv,
            duu,
            duv,
            dvv,
        }
    }

    pub const fn constant(val: f64) -> Self {
        Self::new(val, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// The coordinate function `u` seeded at `u0`.
    pub const fn var_u(u0: f64) -> Self {
        Self::new(u0, 1.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// The coordinate function `v` seeded at `v0`.
    pub const fn var_v(v0: f64) -> Self {
        Self::new(v0, 0.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub const fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `∂/∂u` of this jet. Its second-order part is unknown (NaN).
    pub fn partial_u(&self) -> Self {
        Self::new(self.du, self.duu, self.duv, f64::NAN, f64::NAN, f64::NAN)
    }

    /// `∂/∂v` of this jet. Its second-order part is unknown (NaN).
    pub fn partial_v(&self) -> Self {
        Self::new(self.dv, self.duv, self.dvv, f64::NAN, f64::NAN, f64::NAN)
    }

    /// Whether the second-order coefficients are known.
    pub fn has_second_order(&self) -> bool {
        !(self.duu.is_nan() || self.duv.is_nan() || self.dvv.is_nan())
    }

    /// Applies a scalar function `g` given `g(a)`, `g'(a)` and `g''(a)`.
    pub fn chain(&self, g: f64, dg: f64, ddg: f64) -> Self {
        Self {
            val: g,
            du: dg * self.du,
            dv: dg * self.dv,
            duu: ddg * self.du * self.du + dg * self.duu,
            duv: ddg * self.du * self.dv + dg * self.duv,
            dvv: ddg * self.dv * self.dv + dg * self.dvv,
        }
    }

    /// Composes `self`, a jet in `(u, v)`, with a change of variables
    /// `u = u(p, q)`, `v = v(p, q)` given as jets in `(p, q)`.
    ///
    /// `self` must be expanded at `(u.val, v.val)`.
    pub fn compose(&self, u: &Jet2, v: &Jet2) -> Jet2 {
        let (gu, gv) = (self.du, self.dv);
        Jet2 {
            val: self.val,
            du: gu * u.du + gv * v.du,
            dv: gu * u.dv + gv * v.dv,
            duu: self.duu * u.du * u.du
                + 2.0 * self.duv * u.du * v.du
                + self.dvv * v.du * v.du
                + gu * u.duu
                + gv * v.duu,
            duv: self.duu * u.du * u.dv
                + self.duv * (u.du * v.dv + u.dv * v.du)
                + self.dvv * v.du * v.dv
                + gu * u.duv
                + gv * v.duv,
            dvv: self.duu * u.dv * u.dv
                + 2.0 * self.duv * u.dv * v.dv
                + self.dvv * v.dv * v.dv
                + gu * u.dvv
                + gv * v.dvv,
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.val.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.val))
    }

    pub fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(self.val.ln(), r, -r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.val.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn atan(self) -> Self {
        let a = self.val;
        let d = 1.0 / (1.0 + a * a);
        self.chain(a.atan(), d, -2.0 * a * d * d)
    }

    pub fn powi(self, k: i32) -> Self {
        match k {
            0 => Self::constant(1.0),
            1 => self,
            _ => {
                let a = self.val;
                let kf = f64::from(k);
                self.chain(a.powi(k), kf * a.powi(k - 1), kf * (kf - 1.0) * a.powi(k - 2))
            }
        }
    }

    pub fn checked_sqrt(self) -> Result<Self, DomainError> {
        if self.val > 0.0 {
            Ok(self.sqrt())
        } else {
            Err(DomainError::new("sqrt", self.val))
        }
    }

    pub fn checked_ln(self) -> Result<Self, DomainError> {
        if self.val > 0.0 {
            Ok(self.ln())
        } else {
            Err(DomainError::new("log", self.val))
        }
    }

    pub fn checked_recip(self) -> Result<Self, DomainError> {
        if self.val != 0.0 {
            Ok(self.recip())
        } else {
            Err(DomainError::new("division", self.val))
        }
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, DomainError> {
        rhs.checked_recip().map(|r| self * r)
    }

    pub fn checked_tan(self) -> Result<Self, DomainError> {
        if self.val.cos() != 0.0 {
            Ok(self.tan())
        } else {
            Err(DomainError::new("tan", self.val))
        }
    }

    pub fn checked_powi(self, k: i32) -> Result<Self, DomainError> {
        if k < 0 && self.val == 0.0 {
            Err(DomainError::new("pow", self.val))
        } else if k < 0 && k > i32::MIN {
            Ok(self.powi(-k).recip())
        } else {
            Ok(self.powi(k))
        }
    }

    /// `self^k` for a non-integer constant exponent, as `exp(k·log(self))`.
    pub fn checked_powf(self, k: f64) -> Result<Self, DomainError> {
        if self.val > 0.0 {
            Ok((self.ln() * k).exp())
        } else {
            Err(DomainError::new("pow", self.val))
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(
            self.val * k,
            self.du * k,
            self.dv * k,
            self.duu * k,
            self.duv * k,
            self.dvv * k,
        )
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.val, self.du, self.dv, self.duu, self.duv, self.dvv]
    }
}

impl Default for Jet2 {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [du={}, dv={}, duu={}, duv={}, dvv={}]",
            self.val, self.du, self.dv, self.duu, self.duv, self.dvv
        )
    }
}

impl Add for Jet2 {
    type Output = Jet2;

    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.val + rhs.val,
            self.du + rhs.du,
            self.dv + rhs.dv,
            self.duu + rhs.duu,
            self.duv + rhs.duv,
            self.dvv + rhs.dvv,
        )
    }
}

impl Sub for Jet2 {
    type Output = Jet2;

    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.val - rhs.val,
            self.du - rhs.du,
            self.dv - rhs.dv,
            self.duu - rhs.duu,
            self.duv - rhs.duv,
            self.dvv - rhs.dvv,
        )
    }
}

impl Mul for Jet2 {
    type Output = Jet2;

    fn mul(self, rhs: Jet2) -> Jet2 {
        let (a, b) = (self, rhs);
        Jet2 {
            val: a.val * b.val,
            du: a.du * b.val + a.val * b.du,
            dv: a.dv * b.val + a.val * b.dv,
            duu: a.duu * b.val + 2.0 * a.du * b.du + a.val * b.duu,
            duv: a.duv * b.val + a.du * b.dv + a.dv * b.du + a.val * b.duv,
            dvv: a.dvv * b.val + 2.0 * a.dv * b.dv + a.val * b.dvv,
        }
    }
}

/// Unchecked quotient; a zero denominator produces non-finite coefficients.
impl Div for Jet2 {
    type Output = Jet2;

    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;

    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;

    fn add(self, rhs: f64) -> Jet2 {
        Jet2 {
            val: self.val + rhs,
            ..self
        }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;

    fn sub(self, rhs: f64) -> Jet2 {
        Jet2 {
            val: self.val - rhs,
            ..self
        }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;

    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;

    fn mul(self, rhs: Jet2) -> Jet2 {
        rhs.scale(self)
    }
}

impl Sub<Jet2> for f64 {
    type Output = Jet2;

    fn sub(self, rhs: Jet2) -> Jet2 {
        -rhs + self
    }
}

/// Lifts a scalar closure of `(u, v)` to its second-order jet at `(u0, v0)`.
///
/// The closure receives the seeded coordinate jets. Domain failures raised
/// inside it (through the `checked_*` primitives) are reported together with
/// the evaluation point.
pub fn jet_lift<F>(f: F, u0: f64, v0: f64) -> Result<Jet2, Error>
where
    F: FnOnce(Jet2, Jet2) -> Result<Jet2, DomainError>,
{
    f(Jet2::var_u(u0), Jet2::var_v(v0)).map_err(|e| Error::Domain {
        source: e,
        u: u0,
        v: v0,
        location: None,
    })
}
