//! Acceptance suite: one line per criterion.
//!
//! Run with `cargo test -p qflag --test acceptance`. Criteria listed in
//! `KNOWN_RED` are implemented as stated and are expected to fail; the run
//! fails if any other criterion fails or if a known-red criterion starts
//! passing.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qflag_core::decomp::{bruhat, dieudonne_det};
use qflag_core::flags::{leaf_dimension, orbit_probe, reduced_word_permutation};
use qflag_core::hp1geom::{bruhat_profile, contraction_rank, ratio_profile, ChartPoint, Hp1};
use qflag_core::liealg::{
    ad_group, intrinsic_derivative, lambda_element, schouten, BasisIndex, Element, Multivector, SpBasis,
};
use qflag_core::quat::Unit;
use qflag_core::{sample, Permutation, QMatrix, Quaternion};
use qflag::verify::{schouten_residuals, PROFILE_RADII};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated; the analysis is kept with the
/// project notes.
const KNOWN_RED: &[u32] = &[5, 11];

/// Largest coefficient of `[Λ₃, Λ₃]`, pinned from the independent oracle below.
const LAMBDA3_SELF_BRACKET_MAX: f64 = 2.0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn c1_profile() -> Outcome {
    let start = Instant::now();
    let hp = Hp1::new();
    let reference = hp.bruhat_field(&ChartPoint::south(Quaternion::ZERO)).unwrap().coeff;
    let mut r = rng(101);
    let (mut rel, mut spread) = (0.0f64, 0.0f64);
    for rho in PROFILE_RADII {
        let values: Vec<f64> = (0..20)
            .map(|_| hp.bruhat_field(&ChartPoint::south(sample::unit_quaternion(&mut r).scale(rho))).unwrap().coeff / reference)
            .collect();
        for v in &values {
            rel = rel.max((v / bruhat_profile(rho) - 1.0).abs());
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        spread = spread.max(hi - lo);
    }
    let elapsed = start.elapsed();
    outcome(
        rel <= 1e-6 && spread <= 1e-9 && within(elapsed, 5.0),
        format!("max rel err {rel:.2e}, direction spread {spread:.2e}, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn c2_ratio_law() -> Outcome {
    let hp = Hp1::new();
    let reference = hp.bruhat_field(&ChartPoint::south(Quaternion::ZERO)).unwrap().coeff;
    let mut r = rng(102);
    let mut ratio_at = |rho: f64| {
        let at = ChartPoint::south(sample::unit_quaternion(&mut r).scale(rho));
        hp.bruhat_field(&at).unwrap().coeff / reference / hp.invariant_field(&at).unwrap().coeff
    };
    let worst = PROFILE_RADII.iter().map(|&rho| (ratio_at(rho) - ratio_profile(rho)).abs()).fold(0.0, f64::max);
    let g1 = ratio_at(1.0);
    let g2 = ratio_at(2.0);
    let spots = (g1 - 0.5).abs() <= 1e-6 && (g2 - 49.0 / 125.0).abs() <= 1e-6;
    outcome(worst <= 1e-6 && spots, format!("max err {worst:.2e}, g(1) = {g1:.9}, g(2) = {g2:.9}"))
}

fn c3_vanishing_and_rank() -> Outcome {
    let hp = Hp1::new();
    let pole = hp.bruhat_field(&ChartPoint::NORTH_POLE).unwrap().coeff.abs();
    let pole_rank = hp.rank_at(&ChartPoint::NORTH_POLE).unwrap();
    let mut r = rng(103);
    let rank4 = (0..50)
        .filter(|_| hp.rank_at(&ChartPoint::south(sample::quaternion_in_shell(&mut r, 0.05, 5.0))).unwrap() == 4)
        .count();
    outcome(pole <= 1e-10 && pole_rank == 0 && rank4 == 50, format!("|coeff| at identity {pole:.1e}, rank there {pole_rank}, rank 4 at {rank4}/50"))
}

/// Matrix commutators projected with a Gram weight computed here, and wedge
/// coefficients taken as 7×7 minors. Shares no code with the bracket engine
/// beyond quaternionic matrix arithmetic.
mod oracle {
    use super::*;

    pub struct Basis {
        pub names: Vec<String>,
        pub mats: Vec<QMatrix>,
    }

    pub fn basis(n: usize) -> Basis {
        let unit = |x: char| match x {
            'i' => Quaternion::I,
            'j' => Quaternion::J,
            _ => Quaternion::K,
        };
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let mut e = QMatrix::zeros(n, n);
                e[(p, q)] = Quaternion::ONE;
                e[(q, p)] = -Quaternion::ONE;
                names.push(format!("E({},{})", p + 1, q + 1));
                mats.push(e);
                for x in ['i', 'j', 'k'] {
                    let mut s = QMatrix::zeros(n, n);
                    s[(p, q)] = unit(x);
                    s[(q, p)] = unit(x);
                    names.push(format!("S({x};{},{})", p + 1, q + 1));
                    mats.push(s);
                }
            }
        }
        for p in 0..n {
            for x in ['i', 'j', 'k'] {
                let mut d = QMatrix::zeros(n, n);
                d[(p, p)] = unit(x);
                names.push(format!("Dg({x};{})", p + 1));
                mats.push(d);
            }
        }
        Basis { names, mats }
    }

    fn re_trace_inner(a: &QMatrix, b: &QMatrix) -> f64 {
        let m = a.conj_transpose().matmul(b);
        (0..m.rows()).map(|i| m[(i, i)].re).sum()
    }

    fn project(b: &Basis, x: &QMatrix) -> Vec<f64> {
        b.mats.iter().map(|e| re_trace_inner(e, x) / re_trace_inner(e, e)).collect()
    }

    fn det(mut m: Vec<Vec<f64>>) -> f64 {
        let k = m.len();
        let mut d = 1.0;
        for c in 0..k {
            let p = (c..k).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()).unwrap();
            if m[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                m.swap(p, c);
                d = -d;
            }
            d *= m[c][c];
            for r in c + 1..k {
                let f = m[r][c] / m[c][c];
                for j in c..k {
                    m[r][j] -= f * m[c][j];
                }
            }
        }
        d
    }

    /// `[Λ, Λ]` by the decomposable formula, keyed by sorted basis names.
    pub fn lambda_self_bracket(n: usize) -> BTreeMap<Vec<String>, f64> {
        let b = basis(n);
        let dim = b.names.len();
        let pos = |name: &str| b.names.iter().position(|x| x == name).unwrap();
        let mut terms = Vec::new();
        for p in 1..=n {
            for q in p + 1..=n {
                terms.push(vec![
                    pos(&format!("E({p},{q})")),
                    pos(&format!("S(i;{p},{q})")),
                    pos(&format!("S(j;{p},{q})")),
                    pos(&format!("S(k;{p},{q})")),
                ]);
            }
        }
        let mut out: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for x in &terms {
            for y in &terms {
                for a in 0..4 {
                    for bb in 0..4 {
                        // Grade 4 prefactor (-1)^(4-1) times (-1)^(a+b).
                        let sign = if (a + bb) % 2 == 0 { -1.0 } else { 1.0 };
                        let comm = project(&b, &b.mats[x[a]].commutator(&b.mats[y[bb]]));
                        let rest: Vec<usize> = x
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != a)
                            .chain(y.iter().enumerate().filter(|&(i, _)| i != bb))
                            .map(|(_, &v)| v)
                            .collect();
                        for c in 0..dim {
                            if comm[c] == 0.0 {
                                continue;
                            }
                            let mut set: Vec<usize> = rest.clone();
                            set.push(c);
                            set.sort();
                            set.dedup();
                            if set.len() != 7 {
                                continue;
                            }
                            // Columns: the commutator, then the six unit vectors.
                            let mut cols: Vec<Vec<f64>> = vec![comm.clone()];
                            for &r in &rest {
                                let mut e = vec![0.0; dim];
                                e[r] = 1.0;
                                cols.push(e);
                            }
                            let minor: Vec<Vec<f64>> = set.iter().map(|&row| cols.iter().map(|col| col[row]).collect()).collect();
                            *out.entry(set).or_insert(0.0) += sign * det(minor);
                        }
                    }
                }
            }
        }
        out.into_iter()
            .filter(|(_, v)| v.abs() > 1e-14)
            .map(|(k, v)| (k.iter().map(|&i| b.names[i].clone()).collect(), v))
            .collect()
    }
}

fn c4_lambda() -> Outcome {
    let start = Instant::now();
    let b2 = SpBasis::new(2).unwrap();
    let b3 = SpBasis::new(3).unwrap();
    let l2 = lambda_element(&b2).unwrap();
    let l3 = lambda_element(&b3).unwrap();
    let s2 = schouten(&b2, &l2, &l2).unwrap().max_abs();
    let s3 = schouten(&b3, &l3, &l3).unwrap();

    let oracle = oracle::lambda_self_bracket(3);
    let mut engine: BTreeMap<Vec<String>, f64> = BTreeMap::new();
    for (key, c) in s3.terms() {
        let mut names: Vec<(usize, String)> = key.iter().map(|&a| (a as usize, b3.index(a as usize).name())).collect();
        names.sort();
        engine.insert(names.into_iter().map(|(_, s)| s).collect(), c);
    }
    let mut oracle_gap = 0.0f64;
    for k in engine.keys().chain(oracle.keys()) {
        let e = engine.get(k).copied().unwrap_or(0.0);
        let o = oracle.get(k).copied().unwrap_or(0.0);
        oracle_gap = oracle_gap.max((e - o).abs());
    }
    let oracle_max = oracle.values().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut r = rng(104);
    let mut sph = 0.0f64;
    for b in [&b2, &b3] {
        for _ in 0..50 {
            let x = sample::spheroid_element(&mut r, b);
            sph = sph.max(intrinsic_derivative(b, &x).unwrap().max_abs());
        }
    }
    let elapsed = start.elapsed();
    let passed = s2 <= 1e-12
        && s3.max_abs() > 1e-3
        && oracle_gap <= 1e-12
        && (oracle_max - LAMBDA3_SELF_BRACKET_MAX).abs() <= 1e-12
        && sph <= 1e-12
        && within(elapsed, 30.0);
    outcome(
        passed,
        format!(
            "max|[L2,L2]| {s2:.1e}, max|[L3,L3]| {:.6} (oracle {oracle_max:.6}, gap {oracle_gap:.1e}), spheroid {sph:.1e}, {:.2} s",
            s3.max_abs(),
            elapsed.as_secs_f64()
        ),
    )
}

/// The relations exactly as printed for `E, S_x, H_x, M_x`.
fn printed_table(b: &SpBasis) -> Vec<(String, Element, Element)> {
    use Unit::*;
    let e = b.element(&BasisIndex::E { p: 0, q: 1 });
    let s = |x| b.element(&BasisIndex::S { x, p: 0, q: 1 });
    let h = |x| b.diag_difference(x, 0, 1);
    let m = |x| b.diag_sum(x, 0, 1);
    let zero = Element::zero(2);
    let prod = |x: Unit, y: Unit| x.product(y).expect("distinct units");
    let mut table = Vec::new();
    let mut rel = |name: String, lhs: Element, rhs: Element| table.push((name, lhs, rhs));
    for x in [I, J, K] {
        let nx = x.name();
        rel(format!("[M_{nx},E] = 0"), b.bracket(&m(x), &e).unwrap(), zero.clone());
        rel(format!("[H_{nx},E] = 2S_{nx}"), b.bracket(&h(x), &e).unwrap(), s(x).scale(2.0));
        rel(format!("[S_{nx},E] = 2H_{nx}"), b.bracket(&s(x), &e).unwrap(), h(x).scale(2.0));
        for y in [I, J, K] {
            let ny = y.name();
            let same = x == y;
            let two = |f: &dyn Fn(Unit) -> Element| {
                if same {
                    zero.clone()
                } else {
                    let (sg, u) = prod(x, y);
                    f(u).scale(2.0 * sg)
                }
            };
            let mm = two(&m);
            rel(format!("[M_{nx},M_{ny}]"), b.bracket(&m(x), &m(y)).unwrap(), mm.clone());
            rel(format!("[H_{nx},H_{ny}]"), b.bracket(&h(x), &h(y)).unwrap(), mm.clone());
            rel(format!("[S_{nx},S_{ny}]"), b.bracket(&s(x), &s(y)).unwrap(), mm);
            let sh = if same { e.scale(-2.0) } else { zero.clone() };
            rel(format!("[S_{nx},H_{ny}]"), b.bracket(&s(x), &h(y)).unwrap(), sh);
            rel(format!("[S_{nx},M_{ny}]"), b.bracket(&s(x), &m(y)).unwrap(), two(&s));
            rel(format!("[H_{nx},M_{ny}]"), b.bracket(&h(x), &m(y)).unwrap(), two(&h));
        }
    }
    table
}

fn c5_commutator_table() -> Outcome {
    let b = SpBasis::new(2).unwrap();
    let table = printed_table(&b);
    let failing: Vec<String> = table
        .iter()
        .filter(|(_, lhs, rhs)| (lhs - rhs).max_abs() != 0.0)
        .map(|(name, _, _)| name.clone())
        .collect();
    outcome(failing.is_empty(), format!("{}/{} relations exact; mismatched: {failing:?}", table.len() - failing.len(), table.len()))
}

fn c6_bruhat() -> Outcome {
    let mut r = rng(106);
    let (mut recovery, mut structural_ok, mut mult, mut sp_dev) = (0.0f64, true, 0.0f64, 0.0f64);
    for n in [2, 3, 4] {
        for _ in 0..200 {
            let w = sample::permutation(&mut r, n);
            let u = sample::unit_upper(&mut r, n, 1.0);
            let d = sample::diagonal(&mut r, n, 0.5, 2.0);
            let v = sample::v_w(&mut r, &w, 1.0);
            let g = u.matmul(&d).matmul(&w.matrix()).matmul(&v);
            let f = bruhat(&g).unwrap();
            if f.w != w {
                recovery = f64::INFINITY;
                continue;
            }
            let dd = f.d.iter().zip(d.diagonal()).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);
            recovery = recovery.max(f.u.dist(&u)).max(f.v.dist(&v)).max(dd);
            structural_ok &= f.v_w_residual() == 0.0;
        }
        for _ in 0..200 {
            let a = sample::gaussian_matrix(&mut r, n, n, 1.0);
            let b = sample::gaussian_matrix(&mut r, n, n, 1.0);
            let ab = dieudonne_det(&a.matmul(&b)).unwrap();
            let prod = dieudonne_det(&a).unwrap() * dieudonne_det(&b).unwrap();
            mult = mult.max((ab - prod).abs() / ab);
            sp_dev = sp_dev.max((dieudonne_det(&sample::symplectic(&mut r, n)).unwrap() - 1.0).abs());
        }
    }
    outcome(
        recovery <= 1e-8 && structural_ok && mult <= 1e-9 && sp_dev <= 1e-9,
        format!("factor recovery {recovery:.1e}, V in V_w: {structural_ok}, ddet multiplicativity {mult:.1e}, |ddet(Sp)-1| {sp_dev:.1e}"),
    )
}

fn c7_dressing() -> Outcome {
    let mut r = rng(107);
    let (mut dev, mut constant) = (0.0f64, true);
    for n in [2, 3] {
        for w in Permutation::all(n) {
            let k = sample::spheroid(&mut r, n).matmul(&w.matrix());
            let report = orbit_probe(&k, 100, r.gen()).unwrap();
            constant &= report.permutation_constant && report.w == w;
            dev = dev.max(report.phase_dev);
        }
    }
    let p12 = Permutation::transposition(2, 1).unwrap().matrix();
    let recon = orbit_probe(&p12, 100, r.gen()).unwrap().reconstruction_error.unwrap_or(f64::INFINITY);
    outcome(constant && dev <= 1e-8 && recon <= 1e-9, format!("permutations constant: {constant}, phase dev {dev:.1e}, k_v reconstruction {recon:.1e}"))
}

fn c8_dimensions() -> Outcome {
    let start = Instant::now();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=3 {
        for bits in 0..(1usize << len) {
            let word: Vec<usize> = (0..len).map(|i| 1 + ((bits >> i) & 1)).collect();
            if reduced_word_permutation(&word, 3).is_ok() {
                words.push(word);
            }
        }
    }
    let mut r = rng(108);
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for word in &words {
        let dim = leaf_dimension(word, 3, 2, &mut r).unwrap();
        summary.push(format!("{word:?}->{dim}"));
        if dim != 4 * word.len() {
            bad.push(word.clone());
        }
    }
    let elapsed = start.elapsed();
    outcome(bad.is_empty() && words.len() == 7 && within(elapsed, 60.0), format!("{}, {:.2} s", summary.join(" "), elapsed.as_secs_f64()))
}

fn c9_schouten_and_rank() -> Outcome {
    let b = SpBasis::new(2).unwrap();
    let mut r = rng(109);
    let mut worst = [0.0f64; 3];
    for _ in 0..100 {
        let mut draw = || {
            let grade = r.gen_range(1..=4);
            sample::multivector(&mut r, 2, grade, 4)
        };
        let (p, q, s) = (draw(), draw(), draw());
        for (w, x) in worst.iter_mut().zip(schouten_residuals(&b, &p, &q, &s).unwrap()) {
            *w = w.max(x);
        }
    }
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for dim in [8, 12] {
        for _ in 0..100 {
            let mut terms = Vec::new();
            for a in 0..dim {
                for bb in a + 1..dim {
                    for c in bb + 1..dim {
                        for d in c + 1..dim {
                            terms.push(([a, bb, c, d], sample::normal(&mut r)));
                        }
                    }
                }
            }
            ranks.entry(dim).or_default().push(contraction_rank(dim, &terms));
        }
    }
    let divisible = ranks.values().flatten().all(|k| k % 4 == 0);
    let observed: Vec<String> = ranks
        .iter()
        .map(|(d, v)| {
            let mut u = v.clone();
            u.sort();
            u.dedup();
            format!("dim {d}: ranks {u:?}")
        })
        .collect();
    outcome(
        worst.iter().all(|&x| x <= 1e-10) && divisible,
        format!("antisymmetry {:.1e}, Leibniz {:.1e}, Jacobi {:.1e}; {}", worst[0], worst[1], worst[2], observed.join(", ")),
    )
}

fn c10_lie_derivative() -> Outcome {
    let hp = Hp1::new();
    let mut r = rng(110);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let at = ChartPoint::south(sample::quaternion_in_shell(&mut r, 0.3, 1.5));
        let x = sample::sp_element(&mut r, 2);
        worst = worst.max(hp.lie_derivative_check(&at, &x).unwrap());
    }
    outcome(worst <= 1e-3, format!("max residual {worst:.2e}"))
}

fn c11_multiplicativity() -> Outcome {
    let mut r = rng(111);
    let mut mult = 0.0f64;
    for n in [2, 3] {
        let b = SpBasis::new(n).unwrap();
        let lam = lambda_element(&b).unwrap();
        let pi = |g: &QMatrix| ad_group(&b, g, &lam).unwrap().sub(&lam).unwrap();
        for _ in 0..100 {
            let g = sample::symplectic(&mut r, n);
            let h = sample::symplectic(&mut r, n);
            let rhs = ad_group(&b, &g, &pi(&h)).unwrap().add(&pi(&g)).unwrap();
            mult = mult.max(pi(&g.matmul(&h)).sub(&rhs).unwrap().max_abs());
        }
    }
    let b2 = SpBasis::new(2).unwrap();
    let b3 = SpBasis::new(3).unwrap();
    let l2 = lambda_element(&b2).unwrap();
    let l3 = lambda_element(&b3).unwrap();
    let mut embed_gap = 0.0f64;
    for rr in [1, 2] {
        for _ in 0..20 {
            let a = sample::symplectic(&mut r, 2);
            let big = QMatrix::embed_2x2(&a, rr, 3).unwrap();
            let lhs = ad_group(&b3, &big, &l3).unwrap().sub(&l3).unwrap();
            let small: Multivector = ad_group(&b2, &a, &l2).unwrap().sub(&l2).unwrap();
            let image = small.map_positions(3, |p| b3.position(&b2.index(p).embed(rr)).unwrap());
            embed_gap = embed_gap.max(lhs.sub(&image).unwrap().max_abs());
        }
    }
    outcome(mult <= 1e-10 && embed_gap <= 1e-10, format!("multiplicativity {mult:.1e}, embedding compatibility {embed_gap:.2e}"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "HP1 radial profile", c1_profile),
        (2, "ratio law g(rho)", c2_ratio_law),
        (3, "vanishing at the identity coset and rank", c3_vanishing_and_rank),
        (4, "[Lambda, Lambda] and spheroid invariance", c4_lambda),
        (5, "printed commutator table", c5_commutator_table),
        (6, "strict Bruhat normal form and Dieudonne determinant", c6_bruhat),
        (7, "dressing orbits keep the leaf signature", c7_dressing),
        (8, "leaf dimensions 4 len(w)", c8_dimensions),
        (9, "Schouten axioms and rank divisibility", c9_schouten_and_rank),
        (10, "Lie derivative of the HP1 field", c10_lie_derivative),
        (11, "multiplicativity and embedding compatibility", c11_multiplicativity),
    ];
    let mut unexpected = Vec::new();
    for (id, title, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let known = KNOWN_RED.contains(&id);
        let status = match (result.passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected red)",
        };
        if result.passed == known {
            unexpected.push(id);
        }
        println!("criterion {id:>2} {status}: {title}: {} [{:.2} s]", result.detail, start.elapsed().as_secs_f64());
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as recorded (known red: {KNOWN_RED:?})");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
