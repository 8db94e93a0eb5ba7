//! Exact expansion of the identities over free words, with coefficients in
//! polynomials over `Q(ω)`.

pub mod cyclo;
pub mod formal;
pub mod graded_expand;
pub mod matrix_expand;
pub mod poly;
pub mod words;

pub use cyclo::CycloScalar;
pub use formal::FormalSum;
pub use graded_expand::{
    appendix2_table, expand_three_commutator_symbolic, verify_identity18_symbolic, word_generators,
    Appendix2Table, GradedSum, Identity18Report, SymbolicTernary, WeightSpec,
};
pub use matrix_expand::{
    evaluate_trace_sum, expand_phi2_symbolic, verify_identity6_symbolic, Identity6Report, SymbolicPhi2, TraceSum,
};
pub use poly::{Monomial, Var, WeightPoly};
pub use words::{symbols, GradedWord, Symbol, TraceWord, WordType};
