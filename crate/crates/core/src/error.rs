use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty configuration")]
    EmptyConfiguration,
    #[error("invalid cell {found:?} at position {pos}; expected 0 or 1")]
    BadCell { pos: usize, found: char },
    #[error("line {line}: {message}")]
    PatternLine { line: usize, message: String },
    #[error("pattern file contains no patterns")]
    NoPatterns,
    #[error("invalid rule number {0:?}: expected a decimal integer")]
    BadRuleNumber(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("radius {0} is not supported (maximum {max})", max = crate::rule::MAX_RADIUS)]
    RadiusTooLarge(u32),
    #[error("radius {radius} needs a table of {expected} entries, got {found}")]
    TableLength {
        radius: u32,
        expected: usize,
        found: usize,
    },
    #[error("table entry {index} is {value}; outputs must be 0 or 1")]
    NonBinaryOutput { index: usize, value: u8 },
    #[error("rule number needs {bits} bits, radius {radius} allows at most {max}")]
    NumberOutOfRange { radius: u32, bits: u64, max: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("pattern {name} has {found} cells, radius {radius} needs {expected}")]
    PatternLength {
        name: String,
        radius: u32,
        expected: usize,
        found: usize,
    },
    #[error("neighbourhood {neighbourhood} matches {first} and {second} with different outputs")]
    Conflict {
        neighbourhood: String,
        first: String,
        second: String,
    },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("lattice size {0} is even: the parity problem is ill-defined on even lattices")]
    EvenSize(usize),
    #[error("lattice size {0} is outside the exhaustive range 1..=40")]
    SizeOutOfRange(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// A candidate survived every filter and every counterexample search.
    #[error("candidate {choicepath} (rule {rule}) has no counterexample at the searched sizes")]
    Escalation { choicepath: String, rule: String },
}

/// Two forcings demanded different outputs for the same neighbourhood.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("neighbourhood {neighbourhood} forced to {first_value} by {first} and to {second_value} by {second}")]
pub struct Infeasible {
    pub neighbourhood: String,
    pub first: crate::impossibility::Provenance,
    pub first_value: u8,
    pub second: crate::impossibility::Provenance,
    pub second_value: u8,
}
