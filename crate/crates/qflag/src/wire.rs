//! JSON wire formats.
//!
//! * quaternion: `[re, i, j, k]`, exactly four numbers;
//! * matrix: `{"rows": r, "cols": c, "entries": [[q, …], …]}`, row-major;
//! * permutation: `{"one_line": [w(1), …, w(n)]}`, 1-based;
//! * multivector: `{"n": n, "grade": k, "terms": [{"idx": [names], "c": x}, …]}`
//!   with canonical basis names such as `E(1,2)`, `S(i;1,2)`, `Dg(j;1)`.
//!
//! Unknown keys are rejected everywhere.

use qflag_core::decomp::{BruhatForm, Iwasawa, LeafSignature};
use qflag_core::flags::OrbitReport;
use qflag_core::liealg::{BasisIndex, Multivector, SpBasis};
use qflag_core::{Permutation, QMatrix, Quaternion};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type QuaternionWire = [f64; 4];

pub fn quaternion_to_wire(q: Quaternion) -> QuaternionWire {
    q.to_array()
}

pub fn quaternion_from_wire(q: QuaternionWire) -> Quaternion {
    Quaternion::from_array(q)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<QuaternionWire>>,
}

impl From<&QMatrix> for MatrixWire {
    fn from(m: &QMatrix) -> Self {
        let entries = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_array()).collect()).collect();
        Self { rows: m.rows(), cols: m.cols(), entries }
    }
}

impl TryFrom<MatrixWire> for QMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self> {
        if w.entries.len() != w.rows {
            return Err(Error::format(format!("expected {} rows, found {}", w.rows, w.entries.len())));
        }
        let mut data = Vec::with_capacity(w.rows * w.cols);
        for (i, row) in w.entries.into_iter().enumerate() {
            if row.len() != w.cols {
                return Err(Error::format(format!("row {} has {} entries, expected {}", i + 1, row.len(), w.cols)));
            }
            for q in row {
                if q.iter().any(|x| !x.is_finite()) {
                    return Err(Error::format(format!("non-finite entry in row {}", i + 1)));
                }
                data.push(Quaternion::from_array(q));
            }
        }
        Ok(QMatrix::from_row_major(w.rows, w.cols, data)?)
    }
}

pub fn parse_matrix(text: &str) -> Result<QMatrix> {
    let wire: MatrixWire = serde_json::from_str(text)?;
    wire.try_into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationWire {
    pub one_line: Vec<usize>,
}

impl From<&Permutation> for PermutationWire {
    fn from(w: &Permutation) -> Self {
        Self { one_line: w.one_based() }
    }
}

impl TryFrom<PermutationWire> for Permutation {
    type Error = Error;

    fn try_from(w: PermutationWire) -> Result<Self> {
        Ok(Permutation::from_one_based(&w.one_line)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BruhatWire {
    #[serde(rename = "U")]
    pub u: MatrixWire,
    /// Diagonal entries of `D`.
    #[serde(rename = "D")]
    pub d: Vec<QuaternionWire>,
    pub w: PermutationWire,
    #[serde(rename = "V")]
    pub v: MatrixWire,
}

impl From<&BruhatForm> for BruhatWire {
    fn from(f: &BruhatForm) -> Self {
        Self { u: (&f.u).into(), d: f.d.iter().map(|q| q.to_array()).collect(), w: (&f.w).into(), v: (&f.v).into() }
    }
}

impl TryFrom<BruhatWire> for BruhatForm {
    type Error = Error;

    fn try_from(b: BruhatWire) -> Result<Self> {
        Ok(BruhatForm {
            u: b.u.try_into()?,
            d: b.d.into_iter().map(Quaternion::from_array).collect(),
            w: b.w.try_into()?,
            v: b.v.try_into()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IwasawaWire {
    #[serde(rename = "K")]
    pub k: MatrixWire,
    #[serde(rename = "R")]
    pub r: MatrixWire,
    #[serde(rename = "U")]
    pub u: MatrixWire,
}

impl From<&Iwasawa> for IwasawaWire {
    fn from(f: &Iwasawa) -> Self {
        Self { k: (&f.k).into(), r: (&f.r).into(), u: (&f.u).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureWire {
    pub w: PermutationWire,
    pub phases: Vec<QuaternionWire>,
}

impl From<&LeafSignature> for SignatureWire {
    fn from(s: &LeafSignature) -> Self {
        Self { w: (&s.w).into(), phases: s.phases.iter().map(|q| q.to_array()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermWire {
    pub idx: Vec<String>,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultivectorWire {
    pub n: usize,
    pub grade: usize,
    pub terms: Vec<TermWire>,
}

impl MultivectorWire {
    pub fn from_multivector(basis: &SpBasis, m: &Multivector) -> Self {
        let terms = m
            .terms()
            .map(|(key, c)| TermWire { idx: key.iter().map(|&a| basis.index(a as usize).name()).collect(), c })
            .collect();
        Self { n: m.n(), grade: m.grade(), terms }
    }

    pub fn to_multivector(&self, basis: &SpBasis) -> Result<Multivector> {
        if self.n != basis.n() {
            return Err(Error::format(format!("multivector over sp({}) given for sp({})", self.n, basis.n())));
        }
        let mut out = Multivector::zero(self.n, self.grade);
        for t in &self.terms {
            if t.idx.len() != self.grade {
                return Err(Error::format(format!("term of grade {} in a grade {} multivector", t.idx.len(), self.grade)));
            }
            let positions = t
                .idx
                .iter()
                .map(|name| {
                    let b = BasisIndex::parse(name).ok_or_else(|| Error::format(format!("unknown basis name {name:?}")))?;
                    Ok(basis.position_checked(&b)?)
                })
                .collect::<Result<Vec<usize>>>()?;
            out = out.add(&Multivector::blade(self.n, &positions, t.c))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitReportWire {
    pub kind: String,
    pub n: usize,
    pub w: Vec<usize>,
    /// `null` when some dressed point changed cell.
    pub phase_dev: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reconstruction_error: Option<f64>,
}

impl From<&OrbitReport> for OrbitReportWire {
    fn from(r: &OrbitReport) -> Self {
        Self {
            kind: "orbit_probe".into(),
            n: r.n,
            w: r.w.one_based(),
            phase_dev: r.permutation_constant.then_some(r.phase_dev),
            samples: r.samples,
            seed: r.seed,
            reconstruction_error: r.reconstruction_error,
        }
    }
}
