//! Exact state-sum invariants of closed oriented surfaces carrying an
//! embedded oriented defect curve.
//!
//! The pipeline has three stages:
//!
//! 1. [`frobenius_data`] holds the algebraic initial datum — three based
//!    vector spaces over ℚ with six structure-constant tensors, a unit and
//!    counit — and verifies the 35 scalar equations plus auxiliary laws
//!    that make the state-sum a topological invariant.
//! 2. [`complex`] represents flag-like triangulations of curve-surface
//!    pairs, derives edge kinds and directions from the orientation
//!    conventions, and classifies every triangle into one of six
//!    coefficient classes; [`moves`] implements the flag-like Pachner
//!    moves connecting any two such triangulations.
//! 3. [`statesum`] evaluates the sum over colorings — by brute force or by
//!    exact greedy tensor contraction — and normalizes it by the loop
//!    constants; [`fuzz`] certifies invariance empirically along seeded
//!    random move walks.
//!
//! All arithmetic is exact rational ([`Scalar`]); invariance holds as
//! literal equality, never up to a tolerance. Everything is deterministic:
//! collections iterate in sorted order and all randomness flows from an
//! explicit 64-bit LCG ([`moves::Lcg64`]).
//!
//! Construction of the standard example systems (group algebras and group
//! sets, cocycle twists, matrix algebras, trivial defects) lives in
//! [`examples`]; JSON file formats in [`io`].

pub mod complex;
pub mod examples;
pub mod frobenius_data;
pub mod fuzz;
pub mod io;
pub mod moves;
pub mod scalar;
pub mod statesum;
pub mod tensor;

pub use complex::{
    seed_complex, BarredOrder, ComplexParts, CurveSurfaceComplex, SeedName, Triangle, UEdge,
    VertexId,
};
pub use frobenius_data::{
    check_equation, check_symmetric, check_system, compute_loop_constant, verify_module_loop,
    AlgebraData, BasisKind, CheckId, CheckResult, CoeffTag, DefectData, ModuleData, SystemData,
};
pub use fuzz::{run_fuzz, FuzzConfig, FuzzReport};
pub use moves::{apply_move, random_walk, MoveAction, MoveKind, MoveRecord};
pub use scalar::Scalar;
pub use statesum::{
    evaluate_bruteforce, evaluate_contraction, normalized_invariant, Coloring, EvalConfig,
    EvalError, InvariantValue, Method,
};
pub use tensor::Tensor3;
