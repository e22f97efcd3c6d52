//! Matrix decompositions over `H`: the strict Bruhat normal form, the
//! Dieudonné determinant, the Iwasawa decomposition and the dressing action.

use alloc::vec;
use alloc::vec::Vec;

use crate::hmat::{Permutation, QMatrix};
use crate::quat::Quaternion;
use crate::{tol, Error, Result};

/// Strict Bruhat normal form `G = U·D·P_w·V`.
///
/// `U` and `V` are unit upper triangular, `D` is diagonal and invertible and
/// `P_w·V·P_w⁻¹` is unit lower triangular, i.e. `V_{ab}` can only be nonzero
/// when `(a, b)` is an inversion of `w`. These conditions make all four
/// factors unique.
#[derive(Clone, Debug, PartialEq)]
pub struct BruhatForm {
    pub u: QMatrix,
    pub d: Vec<Quaternion>,
    pub w: Permutation,
    pub v: QMatrix,
}

impl BruhatForm {
    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn d_matrix(&self) -> QMatrix {
        QMatrix::diag(&self.d)
    }

    /// `U·D·P_w·V`.
    pub fn assemble(&self) -> QMatrix {
        self.u.matmul(&self.d_matrix()).matmul(&self.w.matrix()).matmul(&self.v)
    }

    /// Largest entry of `V` outside the inversion pattern of `w`, together
    /// with the deviation of its diagonal from 1.
    pub fn v_w_residual(&self) -> f64 {
        let n = self.n();
        let mut m = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let e = self.v[(a, b)];
                let r = if a == b {
                    e.dist(Quaternion::ONE)
                } else if self.w.is_inversion(a, b) {
                    0.0
                } else {
                    e.norm()
                };
                m = m.max(r);
            }
        }
        m
    }

    /// Number of strictly upper entries of `V` with norm above `threshold`.
    pub fn v_support(&self, threshold: f64) -> usize {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.v[(a, b)].norm() > threshold).count()
    }

    /// Unit phases `d_i/|d_i|` of the diagonal factor.
    pub fn phases(&self) -> Vec<Quaternion> {
        self.d.iter().map(|d| d.radial_split().1).collect()
    }

    /// Positive radii `|d_i|` of the diagonal factor.
    pub fn radii(&self) -> Vec<f64> {
        self.d.iter().map(|d| d.norm()).collect()
    }
}

/// Computes the strict Bruhat normal form of a square invertible matrix.
///
/// Columns are processed left to right. The pivot of column `j` is the lowest
/// row not yet used whose entry exceeds `1e-10·‖G‖_F`; it becomes `w(j)`.
/// Entries of previously used rows below the pivot are cleared by column
/// operations (feeding `V`), entries above the pivot by row operations
/// (feeding `U`). Near-degenerate inputs may land in a neighbouring cell.
pub fn bruhat(g: &QMatrix) -> Result<BruhatForm> {
    let n = g.ensure_square()?;
    let threshold = tol::BRUHAT_PIVOT * g.frobenius_norm();
    if !(threshold > 0.0) || !g.is_finite() {
        return Err(Error::Singular);
    }
    // Invariant: g = u·a·v.
    let mut a = g.clone();
    let mut u = QMatrix::identity(n);
    let mut v = QMatrix::identity(n);
    let mut w = vec![usize::MAX; n];
    let mut taken = vec![false; n];

    for j in 0..n {
        let i = (0..n)
            .rev()
            .find(|&i| !taken[i] && a[(i, j)].norm() > threshold)
            .ok_or(Error::Singular)?;
        for (jp, &ip) in w.iter().enumerate().take(j) {
            if ip > i {
                let x = a[(ip, j)];
                if x != Quaternion::ZERO {
                    let c = a[(ip, jp)].inverse().ok_or(Error::Singular)? * x;
                    a.col_axpy(j, jp, -c);
                    a[(ip, j)] = Quaternion::ZERO;
                    v.row_axpy(jp, j, c);
                }
            }
        }
        let pivot_inv = a[(i, j)].inverse().ok_or(Error::Singular)?;
        for r in 0..i {
            let x = a[(r, j)];
            if x != Quaternion::ZERO {
                let c = x * pivot_inv;
                a.row_axpy(r, i, -c);
                a[(r, j)] = Quaternion::ZERO;
                u.col_axpy(i, r, c);
            }
        }
        // Remaining unused rows below the pivot are zero up to the threshold.
        for r in i + 1..n {
            if !taken[r] {
                a[(r, j)] = Quaternion::ZERO;
            }
        }
        w[j] = i;
        taken[i] = true;
    }

    let w = Permutation::from_images(w).expect("pivot rows are distinct");
    let mut d = vec![Quaternion::ZERO; n];
    for j in 0..n {
        d[w.apply(j)] = a[(w.apply(j), j)];
    }
    Ok(BruhatForm { u, d, w, v })
}

/// Dieudonné determinant `∏|d_i|` of the strict Bruhat form.
///
/// The abelianisation `H*/[H*, H*]` is identified with `R₊` through the
/// Euclidean norm, so `sgn(w)` disappears (`-1` is a commutator) and
/// `det(diag(r)) = r` for real `r > 0`.
pub fn dieudonne_det(g: &QMatrix) -> Result<f64> {
    let form = bruhat(g)?;
    Ok(form.d.iter().map(|d| d.norm()).product())
}

/// Iwasawa factors `G = K·R·U`.
#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa {
    /// Element of `Sp(n)`.
    pub k: QMatrix,
    /// Positive real diagonal.
    pub r: QMatrix,
    /// Unit upper triangular.
    pub u: QMatrix,
}

impl Iwasawa {
    pub fn assemble(&self) -> QMatrix {
        self.k.matmul(&self.r).matmul(&self.u)
    }
}

fn inner(x: &[Quaternion], y: &[Quaternion]) -> Quaternion {
    x.iter().zip(y).fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

/// Iwasawa decomposition `G = K·R·U` by modified Gram–Schmidt on the columns,
/// with coefficients acting from the right (`g_j = Σ_i k_i·T_ij`) and one
/// re-orthogonalisation pass.
pub fn iwasawa(g: &QMatrix) -> Result<Iwasawa> {
    let n = g.ensure_square()?;
    let threshold = tol::INVERSE_PIVOT * g.frobenius_norm();
    if !(threshold > 0.0) || !g.is_finite() {
        return Err(Error::Singular);
    }
    let mut q: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut t = QMatrix::zeros(n, n);
    for j in 0..n {
        let mut x: Vec<Quaternion> = (0..n).map(|i| g[(i, j)]).collect();
        for _pass in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = inner(qi, &x);
                for (xe, qe) in x.iter_mut().zip(qi) {
                    *xe -= *qe * c;
                }
                t[(i, j)] += c;
            }
        }
        let r = libm::sqrt(x.iter().map(|e| e.norm_sqr()).sum());
        if !(r > threshold) {
            return Err(Error::Singular);
        }
        for e in &mut x {
            *e = e.scale(1.0 / r);
        }
        t[(j, j)] = Quaternion::real(r);
        q.push(x);
    }
    let k = QMatrix::from_fn(n, n, |i, j| q[j][i]);
    let diag: Vec<Quaternion> = (0..n).map(|i| t[(i, i)]).collect();
    let u = QMatrix::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { t[(i, j)].scale(1.0 / diag[i].re) });
    Ok(Iwasawa { k, r: QMatrix::diag(&diag), u })
}

/// Distance of `g` from `RU` (upper triangular, positive real diagonal),
/// measured relative to `max(1, ‖g‖_F)`.
pub fn ru_residual(g: &QMatrix) -> f64 {
    if !g.is_square() {
        return f64::INFINITY;
    }
    let scale = g.frobenius_norm().max(1.0);
    let mut res = g.lower_residual();
    for d in g.diagonal() {
        res = res.max(d.imag().norm());
        if d.re <= 0.0 {
            return f64::INFINITY;
        }
    }
    res / scale
}

/// Dressing action of `RU` on `Sp(n)`: `(G, K) ↦ K'` with `G·K = K'·R·U`.
pub fn dress(g: &QMatrix, k: &QMatrix) -> Result<QMatrix> {
    let n = g.ensure_square()?;
    if k.rows() != n || k.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.rows() });
    }
    let residual = ru_residual(g);
    if !(residual <= tol::RU_MEMBERSHIP) {
        return Err(Error::NotInRu { residual });
    }
    let residual = k.symplectic_residual();
    if !(residual <= tol::AD_SYMPLECTIC) {
        return Err(Error::NotSymplectic { residual });
    }
    Ok(iwasawa(&g.matmul(k))?.k)
}

/// Label of the leaf through a point of `Sp(n)`: the Bruhat permutation and
/// the unit phases of the diagonal factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafSignature {
    pub w: Permutation,
    pub phases: Vec<Quaternion>,
}

impl LeafSignature {
    /// Largest phase distance `|σ_i - σ'_i|`, or `None` when the permutations
    /// differ.
    pub fn phase_deviation(&self, other: &Self) -> Option<f64> {
        if self.w != other.w {
            return None;
        }
        Some(self.phases.iter().zip(&other.phases).map(|(a, b)| a.dist(*b)).fold(0.0, f64::max))
    }
}

pub fn leaf_signature(k: &QMatrix) -> Result<LeafSignature> {
    k.ensure_square()?;
    let residual = k.symplectic_residual();
    if !(residual <= tol::AD_SYMPLECTIC) {
        return Err(Error::NotSymplectic { residual });
    }
    let form = bruhat(k)?;
    Ok(LeafSignature { phases: form.phases(), w: form.w })
}
