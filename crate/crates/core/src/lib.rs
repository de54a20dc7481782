//! Relativized strong simplification of extended logic programs.
//!
//! Programs are finite sets of rules `H ← B⁺, not B⁻, not not B⁻⁻` over a
//! small propositional universe. The crate decides whether the atoms `A`
//! can be removed from a program `P` while preserving its answer sets under
//! every `A`-separated context program over `B`, builds such a simplified
//! program when one exists, and checks candidate simplifications.

pub mod atoms;
pub mod error;
pub mod relativized;
pub mod semantics;
pub mod syntax;
pub mod synthesis;
pub mod verify;

pub use atoms::{AtomLimit, AtomSet, Interpretation, Symbols};
pub use error::{Error, ErrorKind, Result};
pub use relativized::{
    ab_se_models, check_delta, check_omega, check_omega_via_abse, check_relativized_equivalence,
    intersection_models, is_simplifiable, ry_family, DeltaReport, OmegaReport, RYFamily, RelCtx, SimplifiabilityReport,
};
pub use semantics::{
    answer_sets, is_model, reduct, rel_se_models, se_models, se_models_restricted, SeModelSet,
    SePair,
};
pub use syntax::{
    format_program, is_a_separated, parse_program, parse_program_with, project, ParseOptions,
    Program, Rule,
};
pub use synthesis::{canonical_program, forget_rsp, forget_rss, simplify, simplify_detailed};
pub use verify::{
    check_forgetting, check_simplification, enumerate_contexts, parse_qbf, qbf_eval, qbf_reduce,
    ContextBounds, QbfInstance, VerificationReport,
};
