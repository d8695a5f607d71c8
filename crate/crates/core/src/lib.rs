//! One-dimensional, binary, circular cellular automata for the parity problem.
//!
//! A rule solves the parity problem when, from every configuration on an odd
//! lattice, it reaches the all-1 configuration if the number of 1s is odd and
//! the all-0 configuration otherwise. This crate provides:
//!
//! * bit-packed simulation, outcome classification and exhaustive sweeps
//!   ([`dynamics`]);
//! * compilation of wildcard transition patterns into rule tables, rule
//!   numbering, and the built-in radius-4 rule BFO ([`patterns`], [`number`]);
//! * de Bruijn graphs, parity-preservation certificates and pre-image
//!   enumeration ([`debruijn`], [`necklace`]);
//! * the radius-1 and radius-2 impossibility pipelines ([`impossibility`]).

pub mod config;
pub mod debruijn;
pub mod dynamics;
pub mod error;
pub mod impossibility;
pub mod necklace;
pub mod number;
pub mod patterns;
pub mod rule;

pub use config::{BlockDecomposition, Configuration};
pub use debruijn::{
    build_debruijn, certify_pairwise_parity, find_even_length_odd_parity_cycle, preimage_necklaces,
    window_set_has_even_odd_cycle, Certification, CycleWitness, DeBruijnGraph, Edge, WitnessWeight,
};
pub use dynamics::{
    check_size, classify, find_counterexample, survey, verify_perfect, Counterexample, Outcome,
    OutcomeKind, SizeReport, SizeStatus, StepBudget, Survey, VerifyReport,
};
pub use error::{CompileError, Infeasible, ParseError, RuleError, SearchError, VerifyError};
pub use impossibility::{
    r2_cycle_tables, r2_enumerate_candidates, r2_enumerate_candidates_with, r2_forced_assignments,
    radius1_eliminate, radius1_eliminate_with, CandidateReport, CycleName, PartialRule, Provenance,
    R2Branch, R2Report,
};
pub use number::{rule_from_number, wolfram_number, RuleNumber};
pub use patterns::{
    bfo, bfo_explicit, bfo_minimized, compile_patterns, Compilation, CompileWarning, PatternFile,
    TransitionPattern,
};
pub use rule::LocalRule;
