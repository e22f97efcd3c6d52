//! Quaternionic linear algebra and 4-vector field machinery for quaternionic
//! flag manifolds.
//!
//! The crate is `no_std` and only needs an allocator. It provides
//!
//! * [`quat`]: quaternion scalars,
//! * [`hmat`]: dense quaternionic matrices, permutations and the embeddings
//!   `Sp(2) -> Sp(n)`,
//! * [`decomp`]: the strict Bruhat normal form, the Dieudonné determinant,
//!   the Iwasawa decomposition and the dressing action of `RU` on `Sp(n)`,
//! * [`liealg`]: the Lie algebra `sp(n)`, multivectors, the Schouten bracket
//!   and the 4-vector `Λ`,
//! * [`hp1geom`]: chart geometry on `HP¹ = Sph\Sp(2)`,
//! * [`flags`]: leaves of the Bruhat 4-vector field on `Sp(n)` and dressing
//!   orbit probes.
//!
//! All comparisons are tolerance based; the defaults live in [`tol`].
#![no_std]

extern crate alloc;

pub mod decomp;
mod error;
pub mod flags;
pub mod hmat;
pub mod hp1geom;
pub mod liealg;
pub mod linalg;
pub mod quat;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
pub use hmat::{Permutation, QMatrix};
pub use quat::{PureQuaternion, Quaternion};
