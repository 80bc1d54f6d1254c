//! Exact Lie algebra homology for block unipotent radicals, and the matrix
//! computations around it.
//!
//! A block pattern `(n_1, ..., n_K)` with diagonal kinds `Identity` or `SL`
//! describes an algebraic group of block upper triangular matrices. This
//! crate builds the nilpotent Lie algebra `u` of its unipotent radical,
//! assembles the Chevalley–Eilenberg boundary maps
//!
//! ```text
//! Λ³u --d3--> Λ²u --d2--> u
//! ```
//!
//! over `Q`, and computes `H1(u)` and `H2(u)` split into weight spaces for the
//! diagonal torus of the `SL` blocks. Those weights feed Abels' sufficient
//! criterion for compact presentability ([`abelscheck`]).
//!
//! The [`arithgrp`] module verifies the group-theoretic side by direct
//! computation: the automorphism of `G(Z[1/p])` scaling the first block row by
//! `p`, the non-Hopfian quotient by the integral centre, outer automorphisms
//! of `SL_n(Z) ⋉ Mat_{n×m}(Z)`, and its embeddings onto proper finite-index
//! subgroups.
//!
//! ```
//! use presentcert::{abelscheck, nilpotent::BlockPattern};
//!
//! let pattern = BlockPattern::standard(&[1, 3, 3, 1]).unwrap();
//! let report = abelscheck::check(&pattern);
//! assert!(report.verdict.is_certified());
//! ```

pub mod abelscheck;
pub mod arithgrp;
pub mod cli;
pub mod exactla;
pub mod homology;
pub mod nilpotent;
pub mod torus;
