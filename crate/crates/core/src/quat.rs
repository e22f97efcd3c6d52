//! Quaternion scalars.
//!
//! Multiplication follows Hamilton's convention `i·j = k`, `j·k = i`,
//! `k·i = j`. Since `H` is not commutative, callers that divide must say on
//! which side: use `a * b.inverse()` or `b.inverse() * a` explicitly.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element `re + i·i + j·j + k·k` of the quaternions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub re: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(re: f64, i: f64, j: f64, k: f64) -> Self {
        Self { re, i, j, k }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Self::new(re, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.re, self.i, self.j, self.k]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.i, -self.j, -self.k)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.i * self.i + self.j * self.j + self.k * self.k
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Two-sided inverse `conj(q) / |q|²`. Returns `None` for `q = 0`.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            None
        } else {
            Some(self.conj().scale(1.0 / n2))
        }
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.re * s, self.i * s, self.j * s, self.k * s)
    }

    /// The imaginary part.
    #[inline]
    pub fn imag(self) -> PureQuaternion {
        PureQuaternion::new(self.i, self.j, self.k)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.i.is_finite() && self.j.is_finite() && self.k.is_finite()
    }

    /// Polar split `v = rho·u` with `rho = |v|` and `u` a unit quaternion.
    ///
    /// At `v = 0` the direction is fixed to `u = 1`.
    pub fn radial_split(self) -> (f64, Quaternion) {
        let rho = self.norm();
        if rho == 0.0 {
            (0.0, Self::ONE)
        } else {
            (rho, self.scale(1.0 / rho))
        }
    }

    /// `|self - other|`.
    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.re, self.i, self.j, self.k)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.i, -self.j, -self.k)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
            a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
            a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
            a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl From<f64> for Quaternion {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

/// A quaternion with vanishing real part, i.e. an element of `sp(1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PureQuaternion {
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl PureQuaternion {
    #[inline]
    pub const fn new(i: f64, j: f64, k: f64) -> Self {
        Self { i, j, k }
    }

    #[inline]
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.i, self.j, self.k)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.i * self.i + self.j * self.j + self.k * self.k)
    }

    /// `exp(s) = cos|s| + (s/|s|)·sin|s|`, a unit quaternion.
    pub fn exp(self) -> Quaternion {
        let theta = self.norm();
        if theta == 0.0 {
            return Quaternion::ONE;
        }
        let (sin, cos) = (libm::sin(theta), libm::cos(theta));
        let s = sin / theta;
        Quaternion::new(cos, self.i * s, self.j * s, self.k * s)
    }
}

impl Neg for PureQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.i, -self.j, -self.k)
    }
}

/// One of the three imaginary units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 3] = [Unit::I, Unit::J, Unit::K];

    pub fn quaternion(self) -> Quaternion {
        match self {
            Unit::I => Quaternion::I,
            Unit::J => Quaternion::J,
            Unit::K => Quaternion::K,
        }
    }

    /// Component of `q` along this unit.
    pub fn component(self, q: Quaternion) -> f64 {
        match self {
            Unit::I => q.i,
            Unit::J => q.j,
            Unit::K => q.k,
        }
    }

    pub fn name(self) -> char {
        match self {
            Unit::I => 'i',
            Unit::J => 'j',
            Unit::K => 'k',
        }
    }

    pub fn from_name(c: char) -> Option<Self> {
        match c {
            'i' => Some(Unit::I),
            'j' => Some(Unit::J),
            'k' => Some(Unit::K),
            _ => None,
        }
    }

    /// The product `self·other` of two distinct units as `(sign, unit)`,
    /// e.g. `i·k = -j`.
    pub fn product(self, other: Unit) -> Option<(f64, Unit)> {
        use Unit::*;
        match (self, other) {
            (I, J) => Some((1.0, K)),
            (J, K) => Some((1.0, I)),
            (K, I) => Some((1.0, J)),
            (J, I) => Some((-1.0, K)),
            (K, J) => Some((-1.0, I)),
            (I, K) => Some((-1.0, J)),
            _ => None,
        }
    }
}
