//! Chart-level geometry of `HP¹ = Sph\Sp(2)`.
//!
//! Two charts cover the quotient. The South chart `v(M) = M₂₁⁻¹·M₂₂`
//! contains the open cell, the North chart `u(M) = M₂₂⁻¹·M₂₁` contains the
//! identity coset at `u = 0`. Both are invariant under left multiplication by
//! the spheroid, and `u = v⁻¹` on the overlap.
//!
//! Fields are pushed forward from the right-trivialised value
//! `Ad_k Λ - Λ` at a coset representative `k`, through the derivative of
//! `X ↦ chart(exp(tX)·k)`. On a 4-manifold such a field is `f·∂₁∧∂₂∧∂₃∧∂₄`;
//! only `f` is stored.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hmat::QMatrix;
use crate::liealg::{ad_group, ad_multivector, lambda_element, Element, Multivector, SpBasis};
use crate::linalg::{det4, RealMatrix};
use crate::quat::Quaternion;
use crate::{sample, tol, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    South,
    North,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coord: Quaternion,
}

impl ChartPoint {
    pub fn south(v: Quaternion) -> Self {
        Self { chart: Chart::South, coord: v }
    }

    pub fn north(u: Quaternion) -> Self {
        Self { chart: Chart::North, coord: u }
    }

    /// The identity coset.
    pub const NORTH_POLE: Self = Self { chart: Chart::North, coord: Quaternion::ZERO };

    /// The same point in the other chart, if it lies on the overlap.
    pub fn transition(&self) -> Result<Self> {
        if self.coord.norm() <= tol::CHART {
            return Err(Error::ChartBoundary);
        }
        let inv = self.coord.inverse().ok_or(Error::ChartBoundary)?;
        Ok(match self.chart {
            Chart::South => Self::north(inv),
            Chart::North => Self::south(inv),
        })
    }
}

fn check_2x2(m: &QMatrix) -> Result<()> {
    if (m.rows(), m.cols()) != (2, 2) {
        return Err(Error::DimensionMismatch { expected: 2, found: m.rows().max(m.cols()) });
    }
    Ok(())
}

/// The chart coordinate of the coset `Sph·M`.
pub fn chart_coord(chart: Chart, m: &QMatrix) -> Result<Quaternion> {
    check_2x2(m)?;
    let (den, num) = match chart {
        Chart::South => (m[(1, 0)], m[(1, 1)]),
        Chart::North => (m[(1, 1)], m[(1, 0)]),
    };
    if den.norm() <= tol::CHART {
        return Err(Error::ChartBoundary);
    }
    Ok(den.inverse().ok_or(Error::ChartBoundary)? * num)
}

/// Velocity of `t ↦ chart(M(t))` given `M(0) = m` and `M'(0) = m_dot`.
pub fn chart_velocity(chart: Chart, m: &QMatrix, m_dot: &QMatrix) -> Result<Quaternion> {
    check_2x2(m)?;
    check_2x2(m_dot)?;
    let (a, b, a_dot, b_dot) = match chart {
        Chart::South => (m[(1, 0)], m[(1, 1)], m_dot[(1, 0)], m_dot[(1, 1)]),
        Chart::North => (m[(1, 1)], m[(1, 0)], m_dot[(1, 1)], m_dot[(1, 0)]),
    };
    if a.norm() <= tol::CHART {
        return Err(Error::ChartBoundary);
    }
    let a_inv = a.inverse().ok_or(Error::ChartBoundary)?;
    Ok(-(a_inv * a_dot * a_inv * b) + a_inv * b_dot)
}

/// Representative in `Sp(2)` of the coset at `p`. South:
/// `(1+|v|²)^(-1/2)·[[-v̄, 1], [1, v]]`; North: `(1+|u|²)^(-1/2)·[[1, -ū], [u, 1]]`.
pub fn coset_rep(p: &ChartPoint) -> QMatrix {
    let x = p.coord;
    let s = 1.0 / libm::sqrt(1.0 + x.norm_sqr());
    let rows = match p.chart {
        Chart::South => [[-x.conj(), Quaternion::ONE], [Quaternion::ONE, x]],
        Chart::North => [[Quaternion::ONE, -x.conj()], [x, Quaternion::ONE]],
    };
    QMatrix::from_rows(rows).scale(s)
}

/// `(1+ρ²)(1+3ρ⁴)`: the Cartesian profile of the pushed-forward field,
/// normalised to 1 at `v = 0`.
pub fn bruhat_profile(rho: f64) -> f64 {
    let r2 = rho * rho;
    (1.0 + r2) * (1.0 + 3.0 * r2 * r2)
}

/// `(1+ρ²)⁴`: the invariant field, normalised to 1 at `v = 0`.
pub fn invariant_profile(rho: f64) -> f64 {
    libm::pow(1.0 + rho * rho, 4.0)
}

/// `g(ρ) = (1+3ρ⁴)/(1+ρ²)³`, the ratio of the two profiles.
pub fn ratio_profile(rho: f64) -> f64 {
    let r2 = rho * rho;
    (1.0 + 3.0 * r2 * r2) / libm::pow(1.0 + r2, 3.0)
}

/// Coefficient `f` of a field `f·∂₁∧∂₂∧∂₃∧∂₄` at a chart point, with the
/// dual 4-form coefficient `1/f` when `f ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub at: ChartPoint,
    pub coeff: f64,
    pub dual_coeff: Option<f64>,
}

impl FieldSample {
    fn new(at: ChartPoint, coeff: f64) -> Self {
        Self { at, coeff, dual_coeff: (coeff != 0.0).then(|| 1.0 / coeff) }
    }
}

/// One line of a radial profile sweep. Coefficients are normalised by their
/// value at `v = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileRow {
    pub rho: f64,
    pub direction_seed: u64,
    pub coeff_bruhat: f64,
    pub coeff_invariant: f64,
    pub ratio: f64,
    pub expected_ratio: f64,
    pub abs_err: f64,
}

/// Contraction rank of a constant 4-vector on `Rᵈ`: the rank of the map
/// `α ↦ ι(α)ξ` from 3-covectors to vectors, with component `d` of `ι(α)ξ`
/// equal to `ξ(α∧dxᵈ)`. Blade positions may be given in any order.
pub fn contraction_rank(dim: usize, terms: &[([usize; 4], f64)]) -> usize {
    let mut triples = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                triples.push([a, b, c]);
            }
        }
    }
    let mut m = RealMatrix::zeros(triples.len(), dim);
    for &(blade, coeff) in terms {
        let mut sorted = blade;
        let Some(sign) = sort_with_sign(&mut sorted) else { continue };
        // ξ(dx^a∧dx^b∧dx^c∧dx^d) is nonzero only when {a,b,c,d} is the blade.
        for skip in 0..4 {
            let mut triple = [0; 3];
            let mut t = 0;
            for (i, &x) in sorted.iter().enumerate() {
                if i != skip {
                    triple[t] = x;
                    t += 1;
                }
            }
            let row = triples.binary_search(&triple).expect("sorted triple");
            // Moving dx^{sorted[skip]} from the end to slot `skip`.
            let move_sign = if (3 - skip) % 2 == 0 { 1.0 } else { -1.0 };
            let col = sorted[skip];
            m.set(row, col, m.get(row, col) + sign * move_sign * coeff);
        }
    }
    m.rank(tol::RANK)
}

fn sort_with_sign(x: &mut [usize; 4]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 1..4 {
        let mut j = i;
        while j > 0 && x[j - 1] > x[j] {
            x.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    x.windows(2).all(|w| w[0] < w[1]).then_some(sign)
}

/// `sp(2)` with its `Λ`, the data every chart computation needs.
#[derive(Clone, Debug)]
pub struct Hp1 {
    basis: SpBasis,
    lambda: Multivector,
}

impl Default for Hp1 {
    fn default() -> Self {
        Self::new()
    }
}

impl Hp1 {
    pub fn new() -> Self {
        let basis = SpBasis::new(2).expect("sp(2)");
        let lambda = lambda_element(&basis).expect("n = 2");
        Self { basis, lambda }
    }

    pub fn basis(&self) -> &SpBasis {
        &self.basis
    }

    pub fn lambda(&self) -> &Multivector {
        &self.lambda
    }

    /// `J(X) = d/dt chart(exp(tX)·k)` at `t = 0` for a matrix `X ∈ sp(2)`.
    pub fn jacobian_apply(&self, p: &ChartPoint, x: &QMatrix) -> Result<[f64; 4]> {
        let k = coset_rep(p);
        Ok(chart_velocity(p.chart, &k, &x.matmul(&k))?.to_array())
    }

    /// Columns `J(e_a)` for every basis element of `sp(2)`.
    pub fn action_jacobian(&self, p: &ChartPoint) -> Result<Vec<[f64; 4]>> {
        self.basis.indices().iter().map(|b| self.jacobian_apply(p, &b.matrix(2))).collect()
    }

    /// Coefficient of `∂₁∧∂₂∧∂₃∧∂₄` in `(∧⁴J)(P)`.
    pub fn pushforward_coeff(&self, p: &ChartPoint, field: &Multivector) -> Result<f64> {
        if field.n() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: field.n() });
        }
        if field.grade() != 4 {
            return Err(Error::GradeMismatch(field.grade(), 4));
        }
        let j = self.action_jacobian(p)?;
        Ok(field.terms().map(|(key, c)| c * det4([j[key[0] as usize], j[key[1] as usize], j[key[2] as usize], j[key[3] as usize]])).sum())
    }

    /// The trivialised field `Ad_k Λ - Λ` at the representative of `p`.
    pub fn trivialized_field(&self, p: &ChartPoint) -> Result<Multivector> {
        ad_group(&self.basis, &coset_rep(p), &self.lambda)?.sub(&self.lambda)
    }

    /// The pushforward of `π` to the chart.
    pub fn bruhat_field(&self, p: &ChartPoint) -> Result<FieldSample> {
        let coeff = self.pushforward_coeff(p, &self.trivialized_field(p)?)?;
        Ok(FieldSample::new(*p, coeff))
    }

    /// The invariant field in the South chart, normalised to 1 at `v = 0`.
    pub fn invariant_field(&self, p: &ChartPoint) -> Result<FieldSample> {
        if p.chart != Chart::South {
            return Err(Error::ChartBoundary);
        }
        Ok(FieldSample::new(*p, invariant_profile(p.coord.norm())))
    }

    /// Contraction rank of the pushed-forward field at `p`.
    pub fn rank_at(&self, p: &ChartPoint) -> Result<usize> {
        let f = self.bruhat_field(p)?.coeff;
        if f.abs() <= tol::MULTIVECTOR_ZERO {
            return Ok(0);
        }
        Ok(contraction_rank(4, &[([0, 1, 2, 3], f)]))
    }

    /// `ι(df₁∧df₂∧df₃)(f·∂₁∧∂₂∧∂₃∧∂₄)`, whose `d`-th component is
    /// `f·det[df₁, df₂, df₃, dxᵈ]`.
    pub fn hamiltonian_field(&self, p: &ChartPoint, df: [[f64; 4]; 3]) -> Result<[f64; 4]> {
        let f = self.bruhat_field(p)?.coeff;
        let mut out = [0.0; 4];
        for (d, o) in out.iter_mut().enumerate() {
            let mut e = [0.0; 4];
            e[d] = 1.0;
            // det4 takes columns; det of the transpose is the same.
            *o = f * det4([df[0], df[1], df[2], e]);
        }
        Ok(out)
    }

    /// Compares the Lie derivative of the field along the right action of
    /// `exp(tX)` with the pushforward of `Ad_k [X, Λ]`, in the South chart.
    /// The left side uses central differences with step `1e-4`; returns
    /// `|LHS - RHS|`.
    pub fn lie_derivative_check(&self, p: &ChartPoint, x: &Element) -> Result<f64> {
        if p.chart != Chart::South {
            return Err(Error::ChartBoundary);
        }
        const H: f64 = 1e-4;
        let xm = self.basis.matrix_of(x);
        let field_at = |v: Quaternion| -> Result<f64> { Ok(self.bruhat_field(&ChartPoint::south(v))?.coeff) };
        let velocity = |v: Quaternion| -> Result<Quaternion> {
            let k = coset_rep(&ChartPoint::south(v));
            chart_velocity(Chart::South, &k, &k.matmul(&xm))
        };
        let v = p.coord;
        let vel = velocity(v)?;
        let directional = (field_at(v + vel.scale(H))? - field_at(v - vel.scale(H))?) / (2.0 * H);
        let mut divergence = 0.0;
        for d in 0..4 {
            let mut e = [0.0; 4];
            e[d] = H;
            let e = Quaternion::from_array(e);
            divergence += (velocity(v + e)?.to_array()[d] - velocity(v - e)?.to_array()[d]) / (2.0 * H);
        }
        let lhs = directional - field_at(v)? * divergence;
        let bracket = ad_multivector(&self.basis, x, &self.lambda)?;
        let rhs = self.pushforward_coeff(p, &ad_group(&self.basis, &coset_rep(p), &bracket)?)?;
        Ok(libm::fabs(lhs - rhs))
    }

    /// Radial sweep of the normalised field against the invariant field:
    /// `steps` radii evenly spaced in `[rho_min, rho_max]`, each sampled along
    /// `directions` unit directions drawn from `ChaCha8Rng` seeded with
    /// `seed + j`. Rows are ordered by radius, then by direction seed.
    pub fn profile(&self, rho_min: f64, rho_max: f64, steps: usize, directions: usize, seed: u64) -> Result<Vec<ProfileRow>> {
        if !(rho_min > 0.0 && rho_min < rho_max && rho_max.is_finite()) {
            return Err(Error::BadRange("need 0 < rho_min < rho_max"));
        }
        if steps < 2 {
            return Err(Error::BadRange("need at least two steps"));
        }
        if directions == 0 {
            return Err(Error::BadRange("need at least one direction"));
        }
        let reference = self.bruhat_field(&ChartPoint::south(Quaternion::ZERO))?.coeff;
        let dirs: Vec<(u64, Quaternion)> = (0..directions as u64)
            .map(|j| {
                let s = seed.wrapping_add(j);
                (s, sample::unit_quaternion(&mut ChaCha8Rng::seed_from_u64(s)))
            })
            .collect();
        let mut rows = Vec::with_capacity(steps * directions);
        for i in 0..steps {
            let rho = rho_min + (rho_max - rho_min) * i as f64 / (steps - 1) as f64;
            for &(s, dir) in &dirs {
                let at = ChartPoint::south(dir.scale(rho));
                let coeff_bruhat = self.bruhat_field(&at)?.coeff / reference;
                let coeff_invariant = self.invariant_field(&at)?.coeff;
                let ratio = coeff_bruhat / coeff_invariant;
                let expected_ratio = ratio_profile(rho);
                rows.push(ProfileRow {
                    rho,
                    direction_seed: s,
                    coeff_bruhat,
                    coeff_invariant,
                    ratio,
                    expected_ratio,
                    abs_err: libm::fabs(ratio - expected_ratio),
                });
            }
        }
        Ok(rows)
    }
}
