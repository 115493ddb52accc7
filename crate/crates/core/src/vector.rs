//! Plain and jet-valued 3-vectors.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::jet::Jet2;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn normalize(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.p$}, {:.p$}, {:.p$})", self.x, self.y, self.z),
            None => write!(f, "({}, {}, {})", self.x, self.y, self.z),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// A 3-vector whose components are jets.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3J {
    pub x: Jet2,
    pub y: Jet2,
    pub z: Jet2,
}

impl Vec3J {
    pub const fn new(x: Jet2, y: Jet2, z: Jet2) -> Self {
        Self { x, y, z }
    }

    pub fn constant(v: Vec3) -> Self {
        Self::new(
            Jet2::constant(v.x),
            Jet2::constant(v.y),
            Jet2::constant(v.z),
        )
    }

    pub fn dot(&self, o: &Vec3J) -> Jet2 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Vec3J) -> Vec3J {
        Vec3J::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> Jet2 {
        self.dot(self).sqrt()
    }

    /// Unit vector field; the caller guarantees a nonzero value.
    pub fn normalize(&self) -> Vec3J {
        self.scale_jet(self.norm().recip())
    }

    pub fn scale_jet(&self, k: Jet2) -> Vec3J {
        Vec3J::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn scale(&self, k: f64) -> Vec3J {
        Vec3J::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn value(&self) -> Vec3 {
        Vec3::new(self.x.val, self.y.val, self.z.val)
    }

    pub fn du(&self) -> Vec3 {
        Vec3::new(self.x.du, self.y.du, self.z.du)
    }

    pub fn dv(&self) -> Vec3 {
        Vec3::new(self.x.dv, self.y.dv, self.z.dv)
    }

    /// `∂/∂u` as a jet vector with unknown second-order part.
    pub fn partial_u(&self) -> Vec3J {
        Vec3J::new(self.x.partial_u(), self.y.partial_u(), self.z.partial_u())
    }

    pub fn partial_v(&self) -> Vec3J {
        Vec3J::new(self.x.partial_v(), self.y.partial_v(), self.z.partial_v())
    }

    pub fn compose(&self, u: &Jet2, v: &Jet2) -> Vec3J {
        Vec3J::new(
            self.x.compose(u, v),
            self.y.compose(u, v),
            self.z.compose(u, v),
        )
    }

    pub fn components(&self) -> [Jet2; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Vec3J {
    type Output = Vec3J;
    fn add(self, o: Vec3J) -> Vec3J {
        Vec3J::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3J {
    type Output = Vec3J;
    fn sub(self, o: Vec3J) -> Vec3J {
        Vec3J::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3J {
    type Output = Vec3J;
    fn neg(self) -> Vec3J {
        Vec3J::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Jet2> for Vec3J {
    type Output = Vec3J;
    fn mul(self, k: Jet2) -> Vec3J {
        self.scale_jet(k)
    }
}

impl Mul<Vec3J> for Jet2 {
    type Output = Vec3J;
    fn mul(self, v: Vec3J) -> Vec3J {
        v.scale_jet(self)
    }
}
