use alloc::vec::Vec;

use super::{intrinsic_derivative, Multivector, SpBasis};
use crate::linalg::RealMatrix;
use crate::{Error, Result};

/// Covector on `sp(n)` in the dual basis: `⟨z, e_a⟩ = coeffs[a]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector {
    n: usize,
    coeffs: Vec<f64>,
}

impl DualVector {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: alloc::vec![0.0; super::dim(n)] }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != super::dim(n) {
            return Err(Error::DimensionMismatch { expected: super::dim(n), found: coeffs.len() });
        }
        Ok(Self { n, coeffs })
    }

    /// The dual basis covector `e^a`.
    pub fn basis(n: usize, a: usize) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[a] = 1.0;
        z
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `⟨z, e_a⟩`.
    #[inline]
    pub fn pair(&self, a: usize) -> f64 {
        self.coeffs[a]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `⟨z_1∧…∧z_k, P⟩ = Σ_terms c · det[⟨z_i, e_{a_j}⟩]`.
pub fn pair_decomposable(z: &[DualVector], p: &Multivector) -> Result<f64> {
    if z.len() != p.grade() {
        return Err(Error::GradeMismatch(z.len(), p.grade()));
    }
    if let Some(bad) = z.iter().find(|zi| zi.n != p.n()) {
        return Err(Error::DimensionMismatch { expected: p.n(), found: bad.n });
    }
    let k = z.len();
    let mut total = 0.0;
    for (key, c) in p.terms() {
        let mut m = RealMatrix::zeros(k, k);
        for (i, zi) in z.iter().enumerate() {
            for (j, &a) in key.iter().enumerate() {
                m.set(i, j, zi.pair(a as usize));
            }
        }
        total += c * if k == 0 { 1.0 } else { m.determinant() };
    }
    Ok(total)
}

/// The 4-bracket on `sp(n)*`, dual to the intrinsic derivative:
/// `⟨[z_1,z_2,z_3,z_4], X⟩ = ⟨z_1∧z_2∧z_3∧z_4, ad_X Λ⟩`.
pub fn four_bracket(basis: &SpBasis, z: &[DualVector; 4]) -> Result<DualVector> {
    for zi in z {
        basis.check(zi.n)?;
    }
    let coeffs = (0..basis.dim())
        .map(|b| pair_decomposable(z, &intrinsic_derivative(basis, &basis.unit(b))?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DualVector { n: basis.n(), coeffs })
}
