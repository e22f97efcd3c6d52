//! Bruhat cells of `Sph\Sp(n)`, their parametrisation by products of
//! embedded `Sp(2)` leaves, and dressing-orbit probes.
//!
//! A reduced word `r₁…r_m` for `w` gives the map
//! `F_w(v₁, …, v_m) = f_{r₁}(k_{v₁})·…·f_{r_m}(k_{v_m})`, where `f_r` embeds
//! `Sp(2)` in rows and columns `r, r+1` and `k_v` is the South-chart coset
//! representative of `HP¹`. For generic parameters the product lies in the
//! cell of `w` with trivial phases.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{bruhat, dress, leaf_signature};
use crate::hmat::{Permutation, QMatrix};
use crate::hp1geom::{chart_coord, coset_rep, Chart, ChartPoint};
use crate::liealg::SpBasis;
use crate::linalg::RealMatrix;
use crate::quat::Quaternion;
use crate::{sample, tol, Error, Result};

/// Step of the central differences in [`leaf_dimension`].
const FD_STEP: f64 = 1e-6;
/// Parameter norms drawn by [`generic_leaf_point`].
const GENERIC_NORM: (f64, f64) = (0.3, 1.5);
/// Redraws allowed when a random product falls into a smaller cell.
const MAX_RETRIES: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct LeafPoint {
    pub n: usize,
    pub word: Vec<usize>,
    pub params: Vec<Quaternion>,
    /// The permutation of the word.
    pub w: Permutation,
    pub matrix: QMatrix,
}

/// Checks that `word` is a reduced word in `S_n` and returns its permutation.
pub fn reduced_word_permutation(word: &[usize], n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::UnsupportedSize(0));
    }
    if let Some(&letter) = word.iter().find(|&&r| r == 0 || r >= n) {
        return Err(Error::WordLetter { letter, n });
    }
    let w = Permutation::from_word(n, word)?;
    if w.length() != word.len() {
        return Err(Error::NonReducedWord { word: word.len(), length: w.length() });
    }
    Ok(w)
}

fn product(word: &[usize], params: &[Quaternion], n: usize) -> Result<QMatrix> {
    let mut m = QMatrix::identity(n);
    for (&r, &v) in word.iter().zip(params) {
        m = m.matmul(&QMatrix::embed_2x2(&coset_rep(&ChartPoint::south(v)), r, n)?);
    }
    Ok(m)
}

/// `F_w(v₁, …, v_m)` for a reduced word.
pub fn leaf_point(word: &[usize], params: &[Quaternion], n: usize) -> Result<LeafPoint> {
    let w = reduced_word_permutation(word, n)?;
    if params.len() != word.len() {
        return Err(Error::ParamCount { word: word.len(), params: params.len() });
    }
    let matrix = product(word, params, n)?;
    debug_assert!(matrix.symplectic_residual() <= 1e-10);
    Ok(LeafPoint { n, word: word.to_vec(), params: params.to_vec(), w, matrix })
}

/// The Bruhat cell of `K ∈ Sp(n)`.
pub fn cell_of(k: &QMatrix) -> Result<Permutation> {
    let residual = k.symplectic_residual();
    if !(residual <= tol::AD_SYMPLECTIC) {
        return Err(Error::NotSymplectic { residual });
    }
    Ok(bruhat(k)?.w)
}

/// A leaf point with random parameters of norm in `[0.3, 1.5]`, redrawn up
/// to three times while the product misses the cell of the word. Returns the
/// point and the number of redraws.
pub fn generic_leaf_point<R: Rng + ?Sized>(word: &[usize], n: usize, rng: &mut R) -> Result<(LeafPoint, usize)> {
    let mut retries = 0;
    loop {
        let params: Vec<Quaternion> =
            word.iter().map(|_| sample::quaternion_in_shell(rng, GENERIC_NORM.0, GENERIC_NORM.1)).collect();
        let point = leaf_point(word, &params, n)?;
        let hit = cell_of(&point.matrix).map(|w| w == point.w).unwrap_or(false);
        if hit || retries == MAX_RETRIES {
            return Ok((point, retries));
        }
        retries += 1;
    }
}

/// Numerical rank of the differential of `F_w` at random base points: the
/// derivative in each of the `4m` real parameters is taken by central
/// differences, right-translated to the identity by `F_w*` and read in
/// `sp(n)` coordinates. Singular values below `1e-7·σ_max` are dropped; the
/// largest rank over `probes` base points is returned.
pub fn leaf_dimension<R: Rng + ?Sized>(word: &[usize], n: usize, probes: usize, rng: &mut R) -> Result<usize> {
    reduced_word_permutation(word, n)?;
    if word.is_empty() {
        return Ok(0);
    }
    let basis = SpBasis::new(n)?;
    let mut best = 0;
    for _ in 0..probes.max(1) {
        let (base, _) = generic_leaf_point(word, n, rng)?;
        let inv = base.matrix.conj_transpose();
        let mut columns = Vec::with_capacity(4 * word.len());
        for slot in 0..word.len() {
            for c in 0..4 {
                let mut e = [0.0; 4];
                e[c] = FD_STEP;
                let shift = |s: f64| -> Result<QMatrix> {
                    let mut params = base.params.clone();
                    params[slot] += Quaternion::from_array(e).scale(s);
                    product(word, &params, n)
                };
                let derivative = (&shift(1.0)? - &shift(-1.0)?).scale(0.5 / FD_STEP);
                columns.push(basis.project(&derivative.matmul(&inv)).coeffs().to_vec());
            }
        }
        best = best.max(RealMatrix::from_columns(basis.dim(), &columns).rank(tol::FD_RANK));
    }
    Ok(best)
}

/// Outcome of dressing a point by random elements of `RU`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub n: usize,
    pub w: Permutation,
    /// Largest phase distance between the signature of `K` and of any
    /// dressed point; infinite if some permutation changed.
    pub phase_dev: f64,
    pub permutation_constant: bool,
    /// For `n = 2` points of the cell `(12)` with trivial phases: the largest
    /// distance between a dressed point and `k_v` at its own chart coordinate.
    pub reconstruction_error: Option<f64>,
    pub samples: usize,
    pub seed: u64,
}

/// Dresses `K` by `samples` random elements of `RU` (diagonal log-uniform
/// in `[0.5, 2]`, strictly upper entries Gaussian with `σ = 0.5`) drawn from
/// `ChaCha8Rng` seeded with `seed`, and compares leaf signatures.
pub fn orbit_probe(k: &QMatrix, samples: usize, seed: u64) -> Result<OrbitReport> {
    let n = k.ensure_square()?;
    let reference = leaf_signature(k)?;
    let trivial_phases = reference.phases.iter().all(|p| p.dist(Quaternion::ONE) <= tol::AD_SYMPLECTIC);
    let reconstruct = n == 2 && reference.w == Permutation::transposition(2, 1)? && trivial_phases;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phase_dev: f64 = 0.0;
    let mut permutation_constant = true;
    let mut reconstruction_error: Option<f64> = reconstruct.then_some(0.0);
    for _ in 0..samples {
        let g = sample::ru_probe(&mut rng, n);
        let dressed = dress(&g, k)?;
        match reference.phase_deviation(&leaf_signature(&dressed)?) {
            Some(d) => phase_dev = phase_dev.max(d),
            None => {
                permutation_constant = false;
                phase_dev = f64::INFINITY;
            }
        }
        if let Some(err) = reconstruction_error.as_mut() {
            let v = chart_coord(Chart::South, &dressed)?;
            *err = err.max(dressed.dist(&coset_rep(&ChartPoint::south(v))));
        }
    }
    Ok(OrbitReport { n, w: reference.w, phase_dev, permutation_constant, reconstruction_error, samples, seed })
}
