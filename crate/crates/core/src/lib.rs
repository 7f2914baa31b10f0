//! Exact engine for multilinear trace polynomial identities.
//!
//! The crate models the multilinear part of the free algebra with trace:
//! canonical monomials built from cyclic trace blocks and an outside word,
//! polynomials with exact rational coefficients, finite-dimensional trace
//! algebras given by structure constants, evaluation, trace codimensions as
//! exact matrix ranks, consequence spaces of generator sets, and the
//! combinatorics (Stirling and Bell numbers, closed-form codimension
//! expressions) needed to compare computed ranks against reference formulas.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point and no modular arithmetic anywhere in the engine.

pub mod algebra;
pub mod codim;
pub mod comb;
pub mod eval;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod report;
pub mod tideal;

pub use algebra::{
    algebra_from_json, algebra_to_json, build_c2, build_ck_degenerate, build_dn,
    build_mn, build_ut2, AlgebraElement, AlgebraError, TraceAlgebra, ValidationReport,
    Violation,
};
pub use codim::{
    codimension, codimension_with, contains_at_degree, evaluation_matrix,
    family_ck, family_one_trace, family_strange, family_two_trace, identity_basis,
    ideals_equal_at_degree, verify_spanning_family, CodimError, CodimOptions,
    CodimResult, EvaluationMatrix, MatrixMode, SpanningReport, Subspace,
    DEFAULT_ROW_CAP,
};
pub use comb::{
    bell, binomial, closed_form, count_trace_monomials, factorial, stirling2,
    stirling2_explicit, stirling_identity_check, ClosedFormTag, CombError,
};
pub use eval::{evaluate, is_identity, Assignment, EvalError, IdentityCheck};
pub use poly::{
    catalog, catalog_names, commutative_class_rep, enumerate_mt, parse_poly,
    CatalogError, MtMode, ParseError, PolyError, TraceBlock, TraceMonomial,
    TracePolynomial,
};
pub use rational::{format_rat, parse_rat, rat, Rat};
pub use tideal::{
    consequence_ladder, consequence_space, soundness_by_evaluation, verify_generators,
    verify_transfer, wrap_generator, GeneratorSet, SpanMode, TidealError,
    TransferReport, VerifyGeneratorsReport, VerifyRow,
};
