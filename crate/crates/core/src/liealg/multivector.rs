use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Element, SpBasis};
use crate::hmat::QMatrix;
use crate::quat::Unit;
use crate::{tol, Error, Result};

/// Element of the exterior power `Λ^k sp(n)`, stored as coefficients over
/// strictly increasing index tuples of basis positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    n: usize,
    grade: usize,
    terms: BTreeMap<Vec<u16>, f64>,
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` if an index repeats.
fn canonicalize(idx: &mut [u16]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl Multivector {
    pub fn zero(n: usize, grade: usize) -> Self {
        Self { n, grade, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        let mut m = Self::zero(n, 0);
        m.add_term(Vec::new(), c);
        m
    }

    pub fn from_element(x: &Element) -> Self {
        let mut m = Self::zero(x.n(), 1);
        for (a, c) in x.support() {
            m.add_term(alloc::vec![a as u16], c);
        }
        m.prune();
        m
    }

    /// `c·e_{a_1}∧…∧e_{a_k}` for basis positions in any order.
    pub fn blade(n: usize, positions: &[usize], c: f64) -> Self {
        let mut m = Self::zero(n, positions.len());
        m.add_term(positions.iter().map(|&a| a as u16).collect(), c);
        m
    }

    /// `x_1∧…∧x_k`.
    pub fn wedge_of(n: usize, factors: &[Element]) -> Result<Self> {
        let mut m = Self::scalar(n, 1.0);
        for x in factors {
            if x.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: x.n() });
            }
            m = m.wedge(&Self::from_element(x))?;
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], f64)> + '_ {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient of `e_{a_1}∧…∧e_{a_k}` with the positions in any order.
    pub fn coefficient(&self, positions: &[usize]) -> f64 {
        let mut key: Vec<u16> = positions.iter().map(|&a| a as u16).collect();
        match canonicalize(&mut key) {
            Some(sign) => sign * self.terms.get(&key).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    /// Adds `c·e_{key}` where `key` may be unsorted.
    pub(crate) fn add_term(&mut self, mut key: Vec<u16>, c: f64) {
        debug_assert_eq!(key.len(), self.grade);
        if c == 0.0 {
            return;
        }
        if let Some(sign) = canonicalize(&mut key) {
            *self.terms.entry(key).or_insert(0.0) += sign * c;
        }
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, v| v.abs() >= tol::PRUNE);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(self.grade, other.grade));
        }
        Ok(())
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            *out.terms.entry(k.clone()).or_insert(0.0) += s * v;
        }
        out.prune();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self { n: self.n, grade: self.grade, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() };
        out.prune();
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mut out = Self::zero(self.n, self.grade + other.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.add_term(key, ca * cb);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// All coefficients at most `tol` in absolute value.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Relabels basis positions, e.g. along an algebra embedding, landing in
    /// `Λ^k sp(n_target)`.
    pub fn map_positions(&self, n_target: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(n_target, self.grade);
        for (k, v) in &self.terms {
            out.add_term(k.iter().map(|&a| f(a as usize) as u16).collect(), *v);
        }
        out.prune();
        out
    }
}

/// The algebraic Schouten bracket on `Λ•sp(n)`.
///
/// On decomposables
///
/// `[x_1∧…∧x_p, y_1∧…∧y_q] = (-1)^(p-1) Σ_{a,b} (-1)^(a+b) [x_a, y_b] ∧ x_1…x̂_a…x_p ∧ y_1…ŷ_b…y_q`,
///
/// extended bilinearly. The prefactor `(-1)^(p-1)` normalises the bracket so
/// that `[P,Q] = (-1)^(pq)[Q,P]`, `[P,Q∧R] = [P,Q]∧R + (-1)^(pq+q) Q∧[P,R]`
/// and the graded Jacobi identity
/// `(-1)^(p(r-1))[P,[Q,R]] + (-1)^(q(p-1))[Q,[R,P]] + (-1)^(r(q-1))[R,[P,Q]] = 0`
/// hold. On grade 1 it is the Lie bracket.
pub fn schouten(basis: &SpBasis, p: &Multivector, q: &Multivector) -> Result<Multivector> {
    basis.check(p.n)?;
    basis.check(q.n)?;
    if p.grade == 0 || q.grade == 0 {
        return Ok(Multivector::zero(basis.n, (p.grade + q.grade).saturating_sub(1)));
    }
    let prefactor = if p.grade % 2 == 1 { 1.0 } else { -1.0 };
    let mut out = Multivector::zero(basis.n, p.grade + q.grade - 1);
    for (x, cx) in &p.terms {
        for (y, cy) in &q.terms {
            for a in 0..x.len() {
                for b in 0..y.len() {
                    let sign = if (a + b) % 2 == 0 { prefactor } else { -prefactor };
                    for &(c, v) in basis.structure(x[a] as usize, y[b] as usize) {
                        let mut key = Vec::with_capacity(out.grade);
                        key.push(c as u16);
                        key.extend(x.iter().enumerate().filter(|&(i, _)| i != a).map(|(_, &e)| e));
                        key.extend(y.iter().enumerate().filter(|&(i, _)| i != b).map(|(_, &e)| e));
                        out.add_term(key, sign * v * cx * cy);
                    }
                }
            }
        }
    }
    out.prune();
    Ok(out)
}

/// `ad_X P`: the derivation extension of `ad_X`, replacing one factor at a
/// time by its bracket with `X`. Equals `schouten(X, P)`.
pub fn ad_multivector(basis: &SpBasis, x: &Element, p: &Multivector) -> Result<Multivector> {
    basis.check(x.n())?;
    basis.check(p.n)?;
    let mut out = Multivector::zero(basis.n, p.grade);
    if x.is_zero() {
        return Ok(out);
    }
    let columns: Vec<Vec<f64>> = (0..basis.dim()).map(|b| basis.ad_column(x, b)).collect();
    for (key, c) in &p.terms {
        for slot in 0..key.len() {
            for (r, &v) in columns[key[slot] as usize].iter().enumerate() {
                if v != 0.0 {
                    let mut k = key.clone();
                    k[slot] = r as u16;
                    out.add_term(k, c * v);
                }
            }
        }
    }
    out.prune();
    Ok(out)
}

/// `Λ = Σ_{p<q} E(p,q) ∧ S(i;p,q) ∧ S(j;p,q) ∧ S(k;p,q)` in `Λ⁴sp(n)`.
pub fn lambda_element(basis: &SpBasis) -> Result<Multivector> {
    let n = basis.n;
    if n < 2 {
        return Err(Error::UnsupportedSize(n));
    }
    let mut out = Multivector::zero(n, 4);
    for p in 0..n {
        for q in p + 1..n {
            use super::BasisIndex::{E, S};
            let pos = [
                basis.position(&E { p, q }),
                basis.position(&S { x: Unit::I, p, q }),
                basis.position(&S { x: Unit::J, p, q }),
                basis.position(&S { x: Unit::K, p, q }),
            ];
            out.add_term(pos.iter().map(|a| a.expect("root index") as u16).collect(), 1.0);
        }
    }
    Ok(out)
}

/// The linearisation at the identity of `g ↦ Ad_g Λ - Λ`, i.e. `ad_X Λ`.
pub fn intrinsic_derivative(basis: &SpBasis, x: &Element) -> Result<Multivector> {
    ad_multivector(basis, x, &lambda_element(basis)?)
}

/// Largest `dim^grade` for which [`ad_group`] works on the dense tensor.
const DENSE_TENSOR_LIMIT: usize = 1 << 22;

/// `Ad_g P`, applying `Ad_g` to every wedge factor.
pub fn ad_group(basis: &SpBasis, g: &QMatrix, p: &Multivector) -> Result<Multivector> {
    basis.check(p.n)?;
    let columns = basis.adjoint_matrix(g)?;
    let d = basis.dim();
    let dense = d.checked_pow(p.grade as u32).is_some_and(|size| size <= DENSE_TENSOR_LIMIT);
    let mut out = if p.grade >= 2 && dense { ad_group_dense(&columns, p) } else { ad_group_sparse(&columns, p) };
    out.prune();
    Ok(out)
}

/// Term-by-term expansion of the wedge of the factor images. Cheap for a
/// handful of terms.
fn ad_group_sparse(columns: &[Vec<f64>], p: &Multivector) -> Multivector {
    let images: Vec<Vec<(u16, f64)>> = columns
        .iter()
        .map(|col| col.iter().enumerate().filter(|(_, v)| v.abs() >= tol::PRUNE).map(|(r, &v)| (r as u16, v)).collect())
        .collect();
    let mut out = Multivector::zero(p.n, p.grade);
    for (key, c) in &p.terms {
        let mut partial: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
        partial.insert(Vec::new(), *c);
        for &factor in key {
            let mut next: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
            for (k, v) in &partial {
                for &(r, w) in &images[factor as usize] {
                    let mut nk = k.clone();
                    nk.push(r);
                    if let Some(sign) = canonicalize(&mut nk) {
                        *next.entry(nk).or_insert(0.0) += sign * v * w;
                    }
                }
            }
            partial = next;
        }
        for (k, v) in partial {
            out.add_term(k, v);
        }
    }
    out
}

/// Applies `Ad_g` one tensor slot at a time to the full antisymmetric tensor
/// `Σ_I c_I Σ_σ sgn(σ) e_{I_σ(1)}⊗…⊗e_{I_σ(k)}`, whose sorted entries are the
/// blade coefficients. Cost `k·dim^(k+1)` regardless of the number of terms.
fn ad_group_dense(columns: &[Vec<f64>], p: &Multivector) -> Multivector {
    let d = columns.len();
    let k = p.grade;
    let size = d.pow(k as u32);
    let mut t = alloc::vec![0.0; size];
    let flat = |idx: &[u16]| idx.iter().fold(0usize, |acc, &a| acc * d + a as usize);
    for (key, &c) in &p.terms {
        // Heap's algorithm; every swap flips the sign.
        let mut perm = key.clone();
        let mut sign = 1.0;
        let mut counters = alloc::vec![0usize; k];
        t[flat(&perm)] = c;
        let mut i = 1;
        while i < k {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                sign = -sign;
                t[flat(&perm)] = sign * c;
                counters[i] += 1;
                i = 1;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
    }
    let mut scratch = alloc::vec![0.0; size];
    for slot in 0..k {
        let inner = d.pow((k - 1 - slot) as u32);
        let outer = size / (inner * d);
        scratch.iter_mut().for_each(|x| *x = 0.0);
        for o in 0..outer {
            for j in 0..d {
                let src = &t[(o * d + j) * inner..(o * d + j + 1) * inner];
                if src.iter().all(|&x| x == 0.0) {
                    continue;
                }
                for (r, &a) in columns[j].iter().enumerate() {
                    if a == 0.0 {
                        continue;
                    }
                    let dst = &mut scratch[(o * d + r) * inner..(o * d + r + 1) * inner];
                    for (y, &x) in dst.iter_mut().zip(src) {
                        *y += a * x;
                    }
                }
            }
        }
        core::mem::swap(&mut t, &mut scratch);
    }
    let mut out = Multivector::zero(p.n, k);
    let mut idx = alloc::vec![0u16; k];
    for (pos, &v) in t.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let mut rest = pos;
        for s in (0..k).rev() {
            idx[s] = (rest % d) as u16;
            rest /= d;
        }
        if idx.windows(2).all(|w| w[0] < w[1]) {
            out.terms.insert(idx.clone(), v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::BasisIndex;
    use super::*;
    use crate::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Unit::*;

    fn sp(n: usize) -> SpBasis {
        SpBasis::new(n).unwrap()
    }

    fn random_element<R: Rng>(rng: &mut R, b: &SpBasis) -> Element {
        Element::from_coeffs(b.n(), (0..b.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    fn random_spheroid_element<R: Rng>(rng: &mut R, b: &SpBasis) -> Element {
        let mut x = Element::zero(b.n());
        for a in b.spheroid_positions().collect::<Vec<_>>() {
            x = &x + &b.unit(a).scale(rng.gen_range(-2.0..2.0));
        }
        x
    }

    #[test]
    fn canonicalize_signs() {
        let mut k = [2u16, 0, 1];
        assert_eq!(canonicalize(&mut k), Some(1.0));
        assert_eq!(k, [0, 1, 2]);
        let mut k = [1u16, 0];
        assert_eq!(canonicalize(&mut k), Some(-1.0));
        let mut k = [3u16, 1, 3];
        assert_eq!(canonicalize(&mut k), None);
    }

    #[test]
    fn wedge_with_repeated_factor_vanishes() {
        let b = sp(2);
        let lam = lambda_element(&b).unwrap();
        assert!(lam.wedge(&lam).unwrap().is_empty());
        let x = b.unit(3);
        assert!(Multivector::wedge_of(2, &[x.clone(), b.unit(1), x]).unwrap().is_empty());
    }

    #[test]
    fn lambda_term_counts() {
        let b = sp(2);
        let lam = lambda_element(&b).unwrap();
        assert_eq!(lam.len(), 1);
        let e = b.position(&BasisIndex::E { p: 0, q: 1 }).unwrap();
        let s = |x| b.position(&BasisIndex::S { x, p: 0, q: 1 }).unwrap();
        assert_eq!(lam.coefficient(&[e, s(I), s(J), s(K)]), 1.0);
        assert_eq!(lambda_element(&sp(3)).unwrap().len(), 3);
        assert_eq!(lambda_element(&sp(4)).unwrap().len(), 6);
        assert!(matches!(lambda_element(&sp(1)), Err(Error::UnsupportedSize(1))));
    }

    #[test]
    fn grade_one_schouten_is_lie_bracket() {
        let b = sp(3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_element(&mut rng, &b);
        let y = random_element(&mut rng, &b);
        let lhs = schouten(&b, &Multivector::from_element(&x), &Multivector::from_element(&y)).unwrap();
        let rhs = Multivector::from_element(&b.bracket(&x, &y).unwrap());
        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-14));
    }

    #[test]
    fn ad_multivector_agrees_with_schouten() {
        let b = sp(2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for grade in 1..=4 {
            let x = random_element(&mut rng, &b);
            let factors: Vec<Element> = (0..grade).map(|_| random_element(&mut rng, &b)).collect();
            let p = Multivector::wedge_of(2, &factors).unwrap();
            let a = ad_multivector(&b, &x, &p).unwrap();
            let s = schouten(&b, &Multivector::from_element(&x), &p).unwrap();
            assert!(a.sub(&s).unwrap().is_zero(1e-12));
        }
    }

    #[test]
    fn ad_of_hi_on_lambda_vanishes() {
        let b = sp(2);
        let h = b.diag_difference(I, 0, 1);
        assert!(ad_multivector(&b, &h, &lambda_element(&b).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn ad_of_e_on_si_wedge_sj() {
        let b = sp(2);
        let e = b.element(&BasisIndex::E { p: 0, q: 1 });
        let s = |x| b.element(&BasisIndex::S { x, p: 0, q: 1 });
        let h = |x| b.diag_difference(x, 0, 1);
        let p = Multivector::wedge_of(2, &[s(I), s(J)]).unwrap();
        let lhs = ad_multivector(&b, &e, &p).unwrap();
        let rhs = Multivector::wedge_of(2, &[h(I).scale(2.0), s(J)])
            .unwrap()
            .add(&Multivector::wedge_of(2, &[s(I), h(J).scale(2.0)]).unwrap())
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-14), "{lhs:?}");
    }

    #[test]
    fn spheroid_fixes_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3] {
            let b = sp(n);
            let lam = lambda_element(&b).unwrap();
            for _ in 0..10 {
                let x = random_spheroid_element(&mut rng, &b);
                assert!(intrinsic_derivative(&b, &x).unwrap().is_zero(1e-12));
                let sigma = sample::spheroid(&mut rng, n);
                assert!(ad_group(&b, &sigma, &lam).unwrap().sub(&lam).unwrap().is_zero(1e-12));
            }
        }
    }

    #[test]
    fn intrinsic_derivative_of_zero() {
        let b = sp(3);
        assert!(intrinsic_derivative(&b, &Element::zero(3)).unwrap().is_empty());
    }

    #[test]
    fn intrinsic_derivative_matches_finite_difference() {
        let b = sp(2);
        let lam = lambda_element(&b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let x = random_element(&mut rng, &b);
            let x = x.scale(1.0 / x.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt());
            let t = 1e-5;
            let g = b.matrix_of(&x.scale(t)).exp().unwrap();
            let fd = ad_group(&b, &g, &lam).unwrap().sub(&lam).unwrap().scale(1.0 / t);
            let exact = intrinsic_derivative(&b, &x).unwrap();
            let err = fd.sub(&exact).unwrap().max_abs();
            assert!(err <= 1e-4, "{err} {}", exact.max_abs());
        }
    }

    #[test]
    fn dense_and_sparse_ad_group_agree() {
        let b = sp(2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = sample::symplectic(&mut rng, 2);
        let columns = b.adjoint_matrix(&g).unwrap();
        for grade in 2..=5 {
            let p = sample::multivector(&mut rng, 2, grade, 4);
            let dense = ad_group_dense(&columns, &p);
            let sparse = ad_group_sparse(&columns, &p);
            assert!(dense.sub(&sparse).unwrap().is_zero(1e-12));
        }
    }

    #[test]
    fn ad_group_identity_and_composition() {
        let b = sp(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let factors: Vec<Element> = (0..3).map(|_| random_element(&mut rng, &b)).collect();
        let p = Multivector::wedge_of(2, &factors).unwrap();
        assert!(ad_group(&b, &QMatrix::identity(2), &p).unwrap().sub(&p).unwrap().is_zero(1e-14));
        let g = sample::symplectic(&mut rng, 2);
        let h = sample::symplectic(&mut rng, 2);
        let lhs = ad_group(&b, &g.matmul(&h), &p).unwrap();
        let rhs = ad_group(&b, &g, &ad_group(&b, &h, &p).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(1e-10));
    }

    #[test]
    fn lambda_two_is_self_commuting() {
        let b = sp(2);
        let lam = lambda_element(&b).unwrap();
        let s = schouten(&b, &lam, &lam).unwrap();
        assert_eq!(s.grade(), 7);
        assert!(s.is_zero(1e-12));
    }

    fn sign(e: usize) -> f64 {
        if e % 2 == 0 { 1.0 } else { -1.0 }
    }

    #[test]
    fn schouten_axioms_on_random_triples() {
        let b = sp(2);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let (p, q, r) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
            let pp = sample::multivector(&mut rng, 2, p, 3);
            let qq = sample::multivector(&mut rng, 2, q, 3);
            let rr = sample::multivector(&mut rng, 2, r, 3);
            let br = |a: &Multivector, c: &Multivector| schouten(&b, a, c).unwrap();

            let anti = br(&pp, &qq).sub(&br(&qq, &pp).scale(sign(p * q))).unwrap();
            assert!(anti.is_zero(1e-10), "antisymmetry ({p},{q})");

            let lhs = br(&pp, &qq.wedge(&rr).unwrap());
            let rhs = br(&pp, &qq).wedge(&rr).unwrap().add(&qq.wedge(&br(&pp, &rr)).unwrap().scale(sign(p * q + q))).unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero(1e-10), "Leibniz ({p},{q},{r})");

            let jacobi = br(&pp, &br(&qq, &rr))
                .scale(sign(p * (r - 1)))
                .add(&br(&qq, &br(&rr, &pp)).scale(sign(q * (p - 1))))
                .unwrap()
                .add(&br(&rr, &br(&pp, &qq)).scale(sign(r * (q - 1))))
                .unwrap();
            assert!(jacobi.is_zero(1e-10), "Jacobi ({p},{q},{r})");
        }
    }

    #[test]
    fn trivialized_field_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3] {
            let b = sp(n);
            let lam = lambda_element(&b).unwrap();
            let pi = |g: &QMatrix| ad_group(&b, g, &lam).unwrap().sub(&lam).unwrap();
            for _ in 0..5 {
                let g = sample::symplectic(&mut rng, n);
                let h = sample::symplectic(&mut rng, n);
                let rhs = ad_group(&b, &g, &pi(&h)).unwrap().add(&pi(&g)).unwrap();
                assert!(pi(&g.matmul(&h)).sub(&rhs).unwrap().is_zero(1e-10));
            }
        }
    }

    #[test]
    fn map_positions_relabels() {
        let b2 = sp(2);
        let b3 = sp(3);
        let lam2 = lambda_element(&b2).unwrap();
        let shifted = lam2.map_positions(3, |a| b3.position(&b2.index(a).embed(2)).unwrap());
        assert_eq!(shifted.len(), 1);
        let e = b3.position(&BasisIndex::E { p: 1, q: 2 }).unwrap();
        let s = |x| b3.position(&BasisIndex::S { x, p: 1, q: 2 }).unwrap();
        assert_eq!(shifted.coefficient(&[e, s(I), s(J), s(K)]), 1.0);
    }

    #[test]
    fn mismatched_n_is_rejected() {
        let b = sp(2);
        let lam3 = lambda_element(&sp(3)).unwrap();
        assert!(matches!(schouten(&b, &lam3, &lam3), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ad_multivector(&b, &Element::zero(3), &lam3), Err(Error::DimensionMismatch { .. })));
        let lam2 = lambda_element(&b).unwrap();
        assert!(matches!(lam2.add(&lam3), Err(Error::DimensionMismatch { .. })));
    }
}
