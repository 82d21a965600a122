//! Exact linear algebra over GF(p), the rationals and the rational
//! quaternions, built around four coupled matrices
//!
//! ```text
//!     [ A  B ]
//!     [ C    ]        A: m x p   B: m x q   C: s x p   D: t x p
//!     [ D    ]
//! ```
//!
//! and the Sylvester-type systems whose solvability reduces to ranks of
//! block matrices made from them.
//!
//! The `examples/` directory is the tour; each file runs on its own with
//! `cargo run --example NAME`:
//!
//! | example | shows |
//! |---|---|
//! | `scalar_rings` | arithmetic, inverses, conjugation and text forms in each ring |
//! | `rank_and_reduction` | rank, tracked row reduction, inverses, `solve_right` |
//! | `quaternity_invariants` | the seventeen block sizes and the identities they satisfy |
//! | `canonical_decomposition` | transforms reaching the canonical form, with verification |
//! | `dual_array` | the same for an `(E, F, G, H)` array |
//! | `sylvester_solvability` | rank conditions, failing labels, exact witnesses |
//! | `hermitian_systems` | Hermitian kinds over the quaternions |
//! | `campaign` | a seeded randomized campaign over every check |
//! | `write_instance` | JSON input for the `quaternity` command |
//!
//! ```
//! use quaternity::canon::{decompose_quaternity, quaternity_invariants};
//! use quaternity::matrix::Matrix;
//! use quaternity::scalar::Ring;
//!
//! let r = Ring::PrimeField(3);
//! let a = Matrix::from_i64(r, &[&[1, 2], &[2, 1]]);
//! let b = Matrix::from_i64(r, &[&[1], &[2]]);
//! let c = Matrix::from_i64(r, &[&[1, 1]]);
//! let d = Matrix::from_i64(r, &[&[0, 1]]);
//! let inv = quaternity_invariants(&a, &b, &c, &d).unwrap();
//! assert_eq!(inv.dims, [2, 2, 1, 1, 1]);
//! let cert = decompose_quaternity(&a, &b, &c, &d).unwrap();
//! cert.verify(&a, &b, &c, &d).unwrap();
//! ```
//!
//! Modules, bottom up: [`scalar`], [`matrix`], [`subspace`], [`recipe`]
//! (block-matrix rank expressions), [`canon`], [`sylvester`], [`harness`]
//! and [`cli`].

pub mod canon;
pub mod cli;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod recipe;
pub mod scalar;
pub mod subspace;
pub mod sylvester;
