//! Exact evaluation of the eighteen conditions under which the wave-Sobolev
//! product estimate `‖uv‖_{H^{−s₀,−b₀}} ≲ ‖u‖_{H^{s₁,b₁}}‖v‖_{H^{s₂,b₂}}`
//! holds in two space dimensions.
//!
//! All arithmetic is over rationals extended by one positive infinitesimal
//! `ε`. No floating point is used in this module.

mod conditions;
mod corpus;
mod extended;
mod parse;
mod threshold;

pub use conditions::{
    evaluate_conditions, Affine, Condition, ConditionOutcome, ConditionReport, ExponentTuple,
    RightSide, CONDITIONS,
};
pub use corpus::{corpus, corpus_families, verify_corpus, CorpusEntry, CorpusFamily, CorpusReport};
pub use extended::{ExtendedRational, Rational};
pub use parse::{parse_extended, parse_tuple, parse_tuple_file};
pub use threshold::{threshold_sweep, Bound, PieceBound, SweepReport, Threshold, TupleFamily};
