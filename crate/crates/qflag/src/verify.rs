//! Property suites behind `qflag verify`.

use qflag_core::decomp::leaf_signature;
use qflag_core::flags::{generic_leaf_point, leaf_dimension, orbit_probe};
use qflag_core::hp1geom::{bruhat_profile, ratio_profile, ChartPoint, Hp1};
use qflag_core::liealg::{ad_group, intrinsic_derivative, lambda_element, schouten, Multivector, SpBasis};
use qflag_core::{sample, Permutation, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Schouten,
    Lambda,
    Spheroid,
    Hp1,
    Leaves,
    Dressing,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Schouten => "schouten",
            Suite::Lambda => "lambda",
            Suite::Spheroid => "spheroid",
            Suite::Hp1 => "hp1",
            Suite::Leaves => "leaves",
            Suite::Dressing => "dressing",
        }
    }

    fn supported(self) -> &'static [usize] {
        match self {
            Suite::Schouten => &[2, 3],
            Suite::Hp1 => &[2],
            _ => &[2, 3, 4],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"<="`, `">"` or `"=="`.
    pub relation: &'static str,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: "<=", threshold, passed: value <= threshold }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: ">", threshold, passed: value > threshold }
    }

    pub fn equal(name: impl Into<String>, value: usize, expected: usize) -> Self {
        Self { name: name.into(), value: value as f64, relation: "==", threshold: expected as f64, passed: value == expected }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub kind: &'static str,
    pub suite: &'static str,
    pub n: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(suite: Suite, n: usize, seed: u64, tol: &Tolerances) -> Result<Report> {
    if !suite.supported().contains(&n) {
        return Err(Error::Usage(format!("suite {} supports n in {:?}, got {n}", suite.name(), suite.supported())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        Suite::Schouten => schouten_suite(n, &mut rng, tol)?,
        Suite::Lambda => lambda_suite(n, tol)?,
        Suite::Spheroid => spheroid_suite(n, &mut rng, tol)?,
        Suite::Hp1 => hp1_suite(&mut rng, tol)?,
        Suite::Leaves => leaves_suite(n, &mut rng)?,
        Suite::Dressing => dressing_suite(n, &mut rng, tol)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report { kind: "verify", suite: suite.name(), n, seed, passed, checks })
}

fn sign(e: usize) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Residuals of graded antisymmetry, the Leibniz rule and the graded Jacobi
/// identity for one triple of multivectors.
pub fn schouten_residuals(basis: &SpBasis, p: &Multivector, q: &Multivector, r: &Multivector) -> Result<[f64; 3]> {
    let (a, b, c) = (p.grade(), q.grade(), r.grade());
    let br = |x: &Multivector, y: &Multivector| schouten(basis, x, y);
    let anti = br(p, q)?.sub(&br(q, p)?.scale(sign(a * b)))?.max_abs();
    let leibniz = br(p, &q.wedge(r)?)?
        .sub(&br(p, q)?.wedge(r)?)?
        .sub(&q.wedge(&br(p, r)?)?.scale(sign(a * b + b)))?
        .max_abs();
    let jacobi = br(p, &br(q, r)?)?
        .scale(sign(a * (c - 1)))
        .add(&br(q, &br(r, p)?)?.scale(sign(b * (a - 1))))?
        .add(&br(r, &br(p, q)?)?.scale(sign(c * (b - 1))))?
        .max_abs();
    Ok([anti, leibniz, jacobi])
}

fn schouten_suite(n: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<Vec<Check>> {
    let basis = SpBasis::new(n)?;
    let mut worst = [0.0f64; 3];
    for _ in 0..20 {
        let mut draw = || {
            let grade = rng.gen_range(1..=4);
            sample::multivector(rng, n, grade, 3)
        };
        let (p, q, r) = (draw(), draw(), draw());
        let res = schouten_residuals(&basis, &p, &q, &r)?;
        for (w, x) in worst.iter_mut().zip(res) {
            *w = w.max(x);
        }
    }
    Ok(vec![
        Check::at_most("antisymmetry", worst[0], tol.schouten_axioms),
        Check::at_most("leibniz", worst[1], tol.schouten_axioms),
        Check::at_most("jacobi", worst[2], tol.schouten_axioms),
    ])
}

fn lambda_suite(n: usize, tol: &Tolerances) -> Result<Vec<Check>> {
    let basis = SpBasis::new(n)?;
    let lam = lambda_element(&basis)?;
    let self_bracket = schouten(&basis, &lam, &lam)?.max_abs();
    let mut checks = vec![Check::equal("lambda_terms", lam.len(), n * (n - 1) / 2)];
    checks.push(if n == 2 {
        Check::at_most("lambda_self_bracket", self_bracket, tol.multivector_zero)
    } else {
        Check::above("lambda_self_bracket", self_bracket, tol.lambda_nonzero)
    });
    if n == 2 {
        // A single decomposable term wedged with itself.
        checks.push(Check::at_most("lambda_wedge_lambda", lam.wedge(&lam)?.max_abs(), tol.multivector_zero));
    }
    Ok(checks)
}

fn spheroid_suite(n: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<Vec<Check>> {
    let basis = SpBasis::new(n)?;
    let lam = lambda_element(&basis)?;
    let mut algebra: f64 = 0.0;
    for _ in 0..50 {
        let x = sample::spheroid_element(rng, &basis);
        algebra = algebra.max(intrinsic_derivative(&basis, &x)?.max_abs());
    }
    let mut group: f64 = 0.0;
    for _ in 0..10 {
        let s = sample::spheroid(rng, n);
        group = group.max(ad_group(&basis, &s, &lam)?.sub(&lam)?.max_abs());
    }
    Ok(vec![
        Check::at_most("spheroid_algebra", algebra, tol.multivector_zero),
        Check::at_most("spheroid_group", group, tol.multivector_zero),
    ])
}

pub const PROFILE_RADII: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 2.0, 3.0];

fn hp1_suite(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<Vec<Check>> {
    let hp = Hp1::new();
    let reference = hp.bruhat_field(&ChartPoint::south(Quaternion::ZERO))?.coeff;
    let mut profile: f64 = 0.0;
    let mut ratio: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for rho in PROFILE_RADII {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..20 {
            let at = ChartPoint::south(sample::unit_quaternion(rng).scale(rho));
            let f = hp.bruhat_field(&at)?.coeff / reference;
            lo = lo.min(f);
            hi = hi.max(f);
            profile = profile.max((f / bruhat_profile(rho) - 1.0).abs());
            let g = f / hp.invariant_field(&at)?.coeff;
            ratio = ratio.max((g / ratio_profile(rho) - 1.0).abs());
        }
        spread = spread.max(hi - lo);
    }
    let pole = hp.bruhat_field(&ChartPoint::NORTH_POLE)?.coeff.abs();
    let mut rank_ok = 0;
    for _ in 0..50 {
        let at = ChartPoint::south(sample::quaternion_in_shell(rng, 0.05, 5.0));
        rank_ok += usize::from(hp.rank_at(&at)? == 4);
    }
    let mut lie: f64 = 0.0;
    for _ in 0..10 {
        let at = ChartPoint::south(sample::quaternion_in_shell(rng, 0.3, 1.5));
        let x = sample::sp_element(rng, 2);
        lie = lie.max(hp.lie_derivative_check(&at, &x)?);
    }
    Ok(vec![
        Check::at_most("radial_profile_rel_err", profile, tol.profile),
        Check::at_most("ratio_law_rel_err", ratio, tol.profile),
        Check::at_most("direction_spread", spread, tol.direction_spread),
        Check::at_most("north_pole_coeff", pole, tol.north_pole),
        Check::equal("north_pole_rank", hp.rank_at(&ChartPoint::NORTH_POLE)?, 0),
        Check::equal("south_rank_4_count", rank_ok, 50),
        Check::at_most("lie_derivative_residual", lie, tol.lie_derivative),
    ])
}

fn leaves_suite(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for w in Permutation::all(n) {
        let word = w.reduced_word();
        let dim = leaf_dimension(&word, n, 1, rng)?;
        checks.push(Check::equal(format!("dimension {w}"), dim, 4 * word.len()));
        let (point, _) = generic_leaf_point(&word, n, rng)?;
        let cell = leaf_signature(&point.matrix)?.w;
        checks.push(Check::equal(format!("cell {w}"), usize::from(cell == w), 1));
    }
    Ok(checks)
}

fn dressing_suite(n: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for w in Permutation::all(n) {
        let k = sample::spheroid(rng, n).matmul(&w.matrix());
        let report = orbit_probe(&k, 100, rng.gen())?;
        checks.push(Check::at_most(format!("phase_dev {w}"), report.phase_dev, tol.phase));
    }
    if n == 2 {
        let p12 = Permutation::transposition(2, 1)?.matrix();
        let report = orbit_probe(&p12, 100, rng.gen())?;
        checks.push(Check::at_most("reconstruction_error", report.reconstruction_error.unwrap_or(f64::INFINITY), tol.reconstruction));
    }
    Ok(checks)
}
