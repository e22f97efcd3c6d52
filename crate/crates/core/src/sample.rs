//! Random generators for group elements and factor sets.
//!
//! Everything takes an explicit [`rand::Rng`] so callers control seeding; the
//! CLI and the verification suites use `ChaCha8Rng`, whose stream is stable
//! across platforms.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::hmat::{Permutation, QMatrix};
use crate::quat::{PureQuaternion, Quaternion};

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Quaternion with independent `N(0, sigma²)` components.
pub fn gaussian_quaternion<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> Quaternion {
    Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng)).scale(sigma)
}

pub fn gaussian_pure<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> PureQuaternion {
    PureQuaternion::new(normal(rng) * sigma, normal(rng) * sigma, normal(rng) * sigma)
}

/// Uniformly distributed unit quaternion.
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = gaussian_quaternion(rng, 1.0);
        let n = q.norm();
        if n > 1e-6 {
            return q.scale(1.0 / n);
        }
    }
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, sigma: f64) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| gaussian_quaternion(rng, sigma))
}

/// Random element of `sp(n)`: the anti-hermitian part of a Gaussian matrix.
pub fn sp_algebra<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: f64) -> QMatrix {
    let a = gaussian_matrix(rng, n, n, sigma);
    (&a - &a.conj_transpose()).scale(0.5)
}

/// Random element of `Sp(n)`, the exponential of a random `sp(n)` element.
pub fn symplectic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    sp_algebra(rng, n, 1.0).exp().expect("square by construction")
}

/// Random spheroid element `diag(σ_1, …, σ_n)` with uniform unit `σ_i`.
pub fn spheroid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    let d: alloc::vec::Vec<Quaternion> = (0..n).map(|_| unit_quaternion(rng)).collect();
    QMatrix::diag(&d)
}

/// Random element of `RU`: positive diagonal log-uniform in `[lo, hi]`,
/// strictly upper entries Gaussian with component deviation `sigma`.
pub fn ru_element<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64, sigma: f64) -> QMatrix {
    let (llo, lhi) = (libm::log(lo), libm::log(hi));
    QMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Quaternion::real(libm::exp(rng.gen_range(llo..=lhi)))
        } else if j > i {
            gaussian_quaternion(rng, sigma)
        } else {
            Quaternion::ZERO
        }
    })
}

/// Random element of `RU` with the distribution used by dressing-orbit
/// probes: diagonal log-uniform in `[0.5, 2]`, upper entries `σ = 0.5`.
pub fn ru_probe<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    ru_element(rng, n, 0.5, 2.0, 0.5)
}

/// Random unit upper triangular matrix.
pub fn unit_upper<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: f64) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Equal => Quaternion::ONE,
        core::cmp::Ordering::Less => gaussian_quaternion(rng, sigma),
        core::cmp::Ordering::Greater => Quaternion::ZERO,
    })
}

/// Random element of `V_w`: unit upper triangular with `V_{ab}` free exactly
/// on the inversions `(a, b)` of `w`.
pub fn v_w<R: Rng + ?Sized>(rng: &mut R, w: &Permutation, sigma: f64) -> QMatrix {
    let n = w.n();
    QMatrix::from_fn(n, n, |a, b| {
        if a == b {
            Quaternion::ONE
        } else if w.is_inversion(a, b) {
            gaussian_quaternion(rng, sigma)
        } else {
            Quaternion::ZERO
        }
    })
}

/// Random invertible diagonal with entry norms in `[lo, hi]`.
pub fn diagonal<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> QMatrix {
    let d: alloc::vec::Vec<Quaternion> =
        (0..n).map(|_| unit_quaternion(rng).scale(rng.gen_range(lo..=hi))).collect();
    QMatrix::diag(&d)
}

/// Uniformly random permutation (Fisher–Yates).
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut image: alloc::vec::Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        image.swap(i, j);
    }
    Permutation::from_images(image).expect("shuffle of the identity")
}

/// Quaternion with uniformly random direction and norm in `[lo, hi]`.
pub fn quaternion_in_shell<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Quaternion {
    unit_quaternion(rng).scale(rng.gen_range(lo..=hi))
}

/// Element of `sp(n)` with coordinates uniform in `[-1, 1]`.
pub fn sp_element<R: Rng + ?Sized>(rng: &mut R, n: usize) -> crate::liealg::Element {
    let coeffs = (0..crate::liealg::dim(n)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    crate::liealg::Element::from_coeffs(n, coeffs).expect("length matches dim")
}

/// Random element of the spheroid algebra, coordinates uniform in `[-1, 1]`.
pub fn spheroid_element<R: Rng + ?Sized>(rng: &mut R, basis: &crate::liealg::SpBasis) -> crate::liealg::Element {
    let mut coeffs = alloc::vec![0.0; basis.dim()];
    for a in basis.spheroid_positions() {
        coeffs[a] = rng.gen_range(-1.0..=1.0);
    }
    crate::liealg::Element::from_coeffs(basis.n(), coeffs).expect("length matches dim")
}

/// Sparse random multivector of `sp(n)`: `terms` random blades of the given
/// grade with coefficients uniform in `[-1, 1]`.
pub fn multivector<R: Rng + ?Sized>(rng: &mut R, n: usize, grade: usize, terms: usize) -> crate::liealg::Multivector {
    let d = crate::liealg::dim(n);
    let mut out = crate::liealg::Multivector::zero(n, grade);
    for _ in 0..terms {
        let positions = rand::seq::index::sample(rng, d, grade).into_vec();
        let blade = crate::liealg::Multivector::blade(n, &positions, rng.gen_range(-1.0..=1.0));
        out = out.add(&blade).expect("same n and grade");
    }
    out
}
