//! schurkit: concrete algorithms of classical Schur analysis.
//!
//! The crate groups eight areas behind one numeric foundation:
//!
//! * [`algebra`] — complex dense matrices, unitary triangularization, SVD,
//!   exact rational polynomials with Sturm counting, spectral bounds;
//! * [`schur`] — the Schur algorithm on the unit disk: parameters,
//!   continued-fraction approximants, interpolation verdicts, the Schur-Cohn
//!   test, j-inner resolvent matrices, and orthogonal polynomials on the
//!   circle;
//! * [`hadamard`] — Schur-test norm bounds, entrywise products, multiplier
//!   estimates, and the classical matrix gallery;
//! * [`majorization`] — the majorization order, doubly-stochastic matrices
//!   and their permutation decompositions, transfer constructions,
//!   Schur-convexity probes, and eigenvalue/singular-value inequalities;
//! * [`summability`] — classification of sequence-to-sequence matrix
//!   transforms with Hölder and Cesàro means;
//! * [`psido`] — an exact formal pseudodifferential calculus with fractional
//!   powers and commutators;
//! * [`polya`] — multiplier sequences, composition theorems, total
//!   positivity, and variation-diminishing checks;
//! * [`selftest`] — the seeded property battery behind `schurkit selftest`.
//!
//! Monte-Carlo drivers fan out over the `parallel` feature (rayon); with the
//! feature disabled everything runs sequentially on the calling thread.

pub mod algebra;
pub mod exact;
pub mod hadamard;
pub mod json;
pub mod majorization;
pub mod par;
pub mod polya;
pub mod psido;
pub mod schur;
pub mod selftest;
pub mod summability;
