//! The compact Lie algebra `sp(n) = {X : X + X* = 0}` in the root basis.
//!
//! For every pair `p < q` there are four off-diagonal basis elements
//!
//! * `E(p,q)`: `1` at `(p,q)`, `-1` at `(q,p)`,
//! * `S(x;p,q)`: the unit `x ∈ {i, j, k}` at both `(p,q)` and `(q,p)`,
//!
//! and for every diagonal slot `p` three elements `Dg(x;p)` carrying `x` at
//! `(p,p)`. Positions are 0-based in code and 1-based in names. For `n = 2`
//! the familiar `H_x = Dg(x;1) - Dg(x;2)` and `M_x = Dg(x;1) + Dg(x;2)` are
//! available through [`SpBasis::diag_difference`] and [`SpBasis::diag_sum`].
//!
//! The basis is orthogonal for `⟨A, B⟩ = Re tr(A*·B)`, so coordinates are
//! read off by a normalised inner product. Structure constants are computed
//! once per `n` from matrix commutators.

mod dual;
mod multivector;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

pub use dual::{four_bracket, pair_decomposable, DualVector};
pub use multivector::{ad_group, ad_multivector, intrinsic_derivative, lambda_element, schouten, Multivector};

use crate::hmat::QMatrix;
use crate::quat::{Quaternion, Unit};
use crate::{tol, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisIndex {
    E { p: usize, q: usize },
    S { x: Unit, p: usize, q: usize },
    Dg { x: Unit, p: usize },
}

impl BasisIndex {
    /// The basis element as an `n×n` quaternionic matrix.
    pub fn matrix(&self, n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        match *self {
            BasisIndex::E { p, q } => {
                m[(p, q)] = Quaternion::ONE;
                m[(q, p)] = -Quaternion::ONE;
            }
            BasisIndex::S { x, p, q } => {
                m[(p, q)] = x.quaternion();
                m[(q, p)] = x.quaternion();
            }
            BasisIndex::Dg { x, p } => m[(p, p)] = x.quaternion(),
        }
        m
    }

    /// Canonical name, e.g. `E(1,2)`, `S(i;1,2)`, `Dg(j;1)`.
    pub fn name(&self) -> String {
        match *self {
            BasisIndex::E { p, q } => format!("E({},{})", p + 1, q + 1),
            BasisIndex::S { x, p, q } => format!("S({};{},{})", x.name(), p + 1, q + 1),
            BasisIndex::Dg { x, p } => format!("Dg({};{})", x.name(), p + 1),
        }
    }

    /// Inverse of [`BasisIndex::name`].
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let open = s.find('(')?;
        let body = s.strip_suffix(')')?.get(open + 1..)?;
        let pos = |t: &str| t.trim().parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1);
        let unit = |t: &str| {
            let mut c = t.trim().chars();
            let u = Unit::from_name(c.next()?)?;
            c.next().is_none().then_some(u)
        };
        match &s[..open] {
            "E" => {
                let (p, q) = body.split_once(',')?;
                let (p, q) = (pos(p)?, pos(q)?);
                (p < q).then_some(BasisIndex::E { p, q })
            }
            "S" => {
                let (x, rest) = body.split_once(';')?;
                let (p, q) = rest.split_once(',')?;
                let (p, q) = (pos(p)?, pos(q)?);
                (p < q).then_some(BasisIndex::S { x: unit(x)?, p, q })
            }
            "Dg" => {
                let (x, p) = body.split_once(';')?;
                Some(BasisIndex::Dg { x: unit(x)?, p: pos(p)? })
            }
            _ => None,
        }
    }

    /// Image under the block embedding `sp(2) → sp(n)` at rows `r, r+1`
    /// (`r` 1-based).
    pub fn embed(&self, r: usize) -> Self {
        let shift = r - 1;
        match *self {
            BasisIndex::E { p, q } => BasisIndex::E { p: p + shift, q: q + shift },
            BasisIndex::S { x, p, q } => BasisIndex::S { x, p: p + shift, q: q + shift },
            BasisIndex::Dg { x, p } => BasisIndex::Dg { x, p: p + shift },
        }
    }

    fn max_position(&self) -> usize {
        match *self {
            BasisIndex::E { q, .. } | BasisIndex::S { q, .. } => q,
            BasisIndex::Dg { p, .. } => p,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Coordinates of an element of `sp(n)` in the root basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    n: usize,
    coeffs: Vec<f64>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![0.0; dim(n)] }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != dim(n) {
            return Err(Error::DimensionMismatch { expected: dim(n), found: coeffs.len() });
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Nonzero coordinates as `(basis position, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0.0)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        assert_eq!(self.n, o.n, "elements of different sp(n)");
        Element { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        assert_eq!(self.n, o.n, "elements of different sp(n)");
        Element { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

/// `dim sp(n) = n(2n+1)`.
pub const fn dim(n: usize) -> usize {
    n * (2 * n + 1)
}

/// The root basis of `sp(n)` together with its structure constants.
///
/// Immutable after construction; share it by reference between threads.
#[derive(Clone, Debug)]
pub struct SpBasis {
    n: usize,
    indices: Vec<BasisIndex>,
    lookup: BTreeMap<BasisIndex, usize>,
    gram: Vec<f64>,
    /// `structure[a][b]` lists the nonzero coordinates of `[e_a, e_b]`.
    structure: Vec<Vec<Vec<(usize, f64)>>>,
}

impl SpBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedSize(n));
        }
        let mut indices = Vec::with_capacity(dim(n));
        for p in 0..n {
            for q in p + 1..n {
                indices.push(BasisIndex::E { p, q });
                for x in Unit::ALL {
                    indices.push(BasisIndex::S { x, p, q });
                }
            }
        }
        for p in 0..n {
            for x in Unit::ALL {
                indices.push(BasisIndex::Dg { x, p });
            }
        }
        let lookup = indices.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let matrices: Vec<QMatrix> = indices.iter().map(|b| b.matrix(n)).collect();
        let gram = matrices.iter().map(|m| m.entries().iter().map(|q| q.norm_sqr()).sum()).collect();
        let mut basis = Self { n, indices, lookup, gram, structure: Vec::new() };
        let d = dim(n);
        let mut structure = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in a + 1..d {
                let c = basis.project(&matrices[a].commutator(&matrices[b]));
                let entries: Vec<(usize, f64)> = c.support().collect();
                structure[b][a] = entries.iter().map(|&(k, v)| (k, -v)).collect();
                structure[a][b] = entries;
            }
        }
        basis.structure = structure;
        Ok(basis)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[BasisIndex] {
        &self.indices
    }

    pub fn index(&self, a: usize) -> BasisIndex {
        self.indices[a]
    }

    pub fn position(&self, b: &BasisIndex) -> Option<usize> {
        self.lookup.get(b).copied()
    }

    /// Position of `b`, rejecting indices that do not belong to `sp(n)`.
    pub fn position_checked(&self, b: &BasisIndex) -> Result<usize> {
        self.position(b).ok_or(Error::DimensionMismatch { expected: self.n, found: b.max_position() + 1 })
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: n })
        }
    }

    /// The basis vector `e_a`.
    pub fn unit(&self, a: usize) -> Element {
        let mut e = Element::zero(self.n);
        e.coeffs[a] = 1.0;
        e
    }

    pub fn element(&self, b: &BasisIndex) -> Element {
        self.unit(self.position(b).expect("index belongs to this sp(n)"))
    }

    /// `Dg(x;p) - Dg(x;q)`; for `n = 2`, `(p, q) = (0, 1)` gives `H_x`.
    pub fn diag_difference(&self, x: Unit, p: usize, q: usize) -> Element {
        &self.element(&BasisIndex::Dg { x, p }) - &self.element(&BasisIndex::Dg { x, p: q })
    }

    /// `Dg(x;p) + Dg(x;q)`; for `n = 2`, `(p, q) = (0, 1)` gives `M_x`.
    pub fn diag_sum(&self, x: Unit, p: usize, q: usize) -> Element {
        &self.element(&BasisIndex::Dg { x, p }) + &self.element(&BasisIndex::Dg { x, p: q })
    }

    pub fn matrix_of(&self, x: &Element) -> QMatrix {
        assert_eq!(x.n, self.n, "element of a different sp(n)");
        let mut m = QMatrix::zeros(self.n, self.n);
        for (a, c) in x.support() {
            match self.indices[a] {
                BasisIndex::E { p, q } => {
                    m[(p, q)] += Quaternion::real(c);
                    m[(q, p)] -= Quaternion::real(c);
                }
                BasisIndex::S { x, p, q } => {
                    m[(p, q)] += x.quaternion().scale(c);
                    m[(q, p)] += x.quaternion().scale(c);
                }
                BasisIndex::Dg { x, p } => m[(p, p)] += x.quaternion().scale(c),
            }
        }
        m
    }

    /// Orthogonal projection of an `n×n` matrix onto `sp(n)` in basis
    /// coordinates, `c_a = ⟨e_a, X⟩ / ⟨e_a, e_a⟩`. Exact on `sp(n)`.
    pub fn project(&self, x: &QMatrix) -> Element {
        assert_eq!((x.rows(), x.cols()), (self.n, self.n), "matrix of a different size");
        let coeffs = self
            .indices
            .iter()
            .zip(&self.gram)
            .map(|(b, g)| {
                let ip = match *b {
                    BasisIndex::E { p, q } => x[(p, q)].re - x[(q, p)].re,
                    BasisIndex::S { x: u, p, q } => u.component(x[(p, q)]) + u.component(x[(q, p)]),
                    BasisIndex::Dg { x: u, p } => u.component(x[(p, p)]),
                };
                ip / g
            })
            .collect();
        Element { n: self.n, coeffs }
    }

    /// Coordinates of `[e_a, e_b]`.
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, f64)] {
        &self.structure[a][b]
    }

    /// Lie bracket `[X, Y]`, bilinear in the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x.n)?;
        self.check(y.n)?;
        let mut out = Element::zero(self.n);
        for (a, ca) in x.support() {
            for (b, cb) in y.support() {
                for &(c, v) in &self.structure[a][b] {
                    out.coeffs[c] += ca * cb * v;
                }
            }
        }
        Ok(out)
    }

    /// `[X, e_b]` accumulated from the structure constants, as a dense
    /// coordinate vector.
    pub(crate) fn ad_column(&self, x: &Element, b: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (a, ca) in x.support() {
            for &(c, v) in &self.structure[a][b] {
                out[c] += ca * v;
            }
        }
        out
    }

    /// Matrix of `Ad_g` on `sp(n)`: column `b` holds the coordinates of
    /// `g·e_b·g⁻¹`. Requires `g ∈ Sp(n)` so that `g⁻¹ = g*`.
    pub fn adjoint_matrix(&self, g: &QMatrix) -> Result<Vec<Vec<f64>>> {
        let n = g.ensure_square()?;
        self.check(n)?;
        let residual = g.symplectic_residual();
        if !(residual <= tol::AD_SYMPLECTIC) {
            return Err(Error::NotSymplectic { residual });
        }
        let g_inv = g.conj_transpose();
        Ok(self.indices.iter().map(|b| self.project(&g.matmul(&b.matrix(n)).matmul(&g_inv)).coeffs).collect())
    }

    /// `Ad_g X = g·X·g⁻¹` for `g ∈ Sp(n)`.
    pub fn adjoint(&self, g: &QMatrix, x: &Element) -> Result<Element> {
        self.check(x.n)?;
        let residual = g.symplectic_residual();
        if !(residual <= tol::AD_SYMPLECTIC) {
            return Err(Error::NotSymplectic { residual });
        }
        Ok(self.project(&g.matmul(&self.matrix_of(x)).matmul(&g.conj_transpose())))
    }

    /// Positions of the spheroid algebra `s = span{Dg(x;p)}`.
    pub fn spheroid_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().enumerate().filter(|(_, b)| matches!(b, BasisIndex::Dg { .. })).map(|(a, _)| a)
    }
}
