//! Iterating a rule until convergence, and exhaustive sweeps over lattices.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::config::{index_to_packed, low_mask, Configuration};
use crate::error::VerifyError;
use crate::rule::LocalRule;

/// Largest lattice accepted by the exhaustive sweeps.
pub const MAX_SWEEP_SIZE: usize = 40;

/// Environment variable overriding the quadratic budget factor.
pub const MAX_STEPS_FACTOR_ENV: &str = "PARITY_CA_MAX_STEPS_FACTOR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    Converged0,
    Converged1,
    /// A configuration recurred; `period` is the minimal period of the loop.
    Cycle {
        period: u64,
    },
    /// The step budget ran out first.
    Budget,
}

impl OutcomeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            OutcomeKind::Converged0 => "Converged0",
            OutcomeKind::Converged1 => "Converged1",
            OutcomeKind::Cycle { .. } => "Cycle",
            OutcomeKind::Budget => "Budget",
        }
    }

    pub fn converged_to(&self) -> Option<u8> {
        match self {
            OutcomeKind::Converged0 => Some(0),
            OutcomeKind::Converged1 => Some(1),
            _ => None,
        }
    }

    fn converged(bit: u8) -> Self {
        if bit == 1 {
            OutcomeKind::Converged1
        } else {
            OutcomeKind::Converged0
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Result of [`classify`].
///
/// For `Converged*` the witness is the homogeneous fixed point reached; for
/// `Cycle` it is a configuration on the loop; for `Budget` it is the last
/// configuration computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub kind: OutcomeKind,
    pub steps: u64,
    pub witness: Configuration,
}

impl Outcome {
    /// True when the run converged to the homogeneous configuration of `parity`.
    pub fn solves(&self, parity: u8) -> bool {
        self.kind.converged_to() == Some(parity)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OutcomeKind::Cycle { period } => {
                write!(f, "Cycle steps={} period={}", self.steps, period)
            }
            kind => write!(f, "{kind} steps={}", self.steps),
        }
    }
}

/// Step budget policy for lattices of varying size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepBudget {
    /// `factor * n^2` steps on a lattice of `n` cells.
    Quadratic(u64),
    Fixed(u64),
}

impl StepBudget {
    pub const DEFAULT_FACTOR: u64 = 8;

    pub fn steps_for(&self, n: usize) -> u64 {
        match *self {
            StepBudget::Quadratic(factor) => factor * (n as u64) * (n as u64),
            StepBudget::Fixed(steps) => steps,
        }
    }

    /// Quadratic budget, with the factor taken from
    /// `PARITY_CA_MAX_STEPS_FACTOR` when set.
    pub fn from_env() -> Result<Self, std::num::ParseIntError> {
        match std::env::var(MAX_STEPS_FACTOR_ENV) {
            Ok(v) => Ok(StepBudget::Quadratic(v.trim().parse()?)),
            Err(_) => Ok(Self::default()),
        }
    }
}

impl Default for StepBudget {
    fn default() -> Self {
        StepBudget::Quadratic(Self::DEFAULT_FACTOR)
    }
}

trait Lattice: Clone + Eq + Hash {
    fn next(&self, rule: &LocalRule) -> Self;
    fn homogeneous(&self) -> Option<u8>;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Packed {
    bits: u64,
    n: usize,
}

impl Lattice for Packed {
    #[inline]
    fn next(&self, rule: &LocalRule) -> Self {
        Packed {
            bits: rule.step_packed(self.bits, self.n),
            n: self.n,
        }
    }

    #[inline]
    fn homogeneous(&self) -> Option<u8> {
        if self.bits == 0 {
            Some(0)
        } else if self.bits == low_mask(self.n) {
            Some(1)
        } else {
            None
        }
    }
}

impl Lattice for Configuration {
    fn next(&self, rule: &LocalRule) -> Self {
        rule.step(self)
    }

    fn homogeneous(&self) -> Option<u8> {
        Configuration::homogeneous(self)
    }
}

/// Visited states are keyed by the full configuration, so a recurrence is
/// never a hash collision and the period is the exact minimal period.
fn run<S: Lattice>(
    rule: &LocalRule,
    start: S,
    max_steps: u64,
    seen: &mut HashMap<S, u64>,
) -> (OutcomeKind, u64, S) {
    seen.clear();
    let top = (rule.table().len() - 1) as u32;
    let mut cur = start;
    let mut t = 0u64;
    loop {
        if let Some(b) = cur.homogeneous() {
            let image = rule.output(if b == 1 { top } else { 0 });
            if image == b {
                return (OutcomeKind::converged(b), t, cur);
            }
        }
        if t >= max_steps {
            return (OutcomeKind::Budget, t, cur);
        }
        let next = cur.next(rule);
        seen.insert(cur, t);
        t += 1;
        if let Some(&first) = seen.get(&next) {
            return (OutcomeKind::Cycle { period: t - first }, t, next);
        }
        cur = next;
    }
}

/// Iterates `rule` from `config` until a homogeneous fixed point, a recurrence,
/// or `max_steps` applications.
pub fn classify(rule: &LocalRule, config: &Configuration, max_steps: u64) -> Outcome {
    let n = config.len();
    match config.packed() {
        Some(bits) => {
            let (kind, steps, end) = run(rule, Packed { bits, n }, max_steps, &mut HashMap::new());
            Outcome {
                kind,
                steps,
                witness: Configuration::from_packed(end.bits, n),
            }
        }
        None => {
            let (kind, steps, witness) = run(rule, config.clone(), max_steps, &mut HashMap::new());
            Outcome {
                kind,
                steps,
                witness,
            }
        }
    }
}

/// Scratch space reused across runs in a sweep.
type Seen = HashMap<Packed, u64>;

/// Classifies the configuration with index `value` on `n <= 64` cells.
#[inline]
fn classify_index(
    rule: &LocalRule,
    value: u64,
    n: usize,
    max_steps: u64,
    seen: &mut Seen,
) -> (OutcomeKind, u64) {
    let bits = index_to_packed(value, n);
    let (kind, steps, _) = run(rule, Packed { bits, n }, max_steps, seen);
    (kind, steps)
}

/// A configuration on which a rule does not solve the parity problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub config: Configuration,
    pub outcome: Outcome,
}

/// Tallies of one exhaustive sweep over all `2^n` configurations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Survey {
    pub n: usize,
    pub checked: u64,
    /// Converged to the homogeneous configuration of the initial parity.
    pub correct: u64,
    /// Converged to the other homogeneous configuration.
    pub wrong: u64,
    pub cycles: u64,
    pub budget_hits: u64,
    /// Longest convergence among the `correct` runs.
    pub max_steps: u64,
    /// Smallest configuration index that is not solved.
    pub first_failure: Option<u64>,
}

impl Survey {
    fn record(mut self, value: u64, kind: OutcomeKind, steps: u64) -> Self {
        self.checked += 1;
        let parity = (value.count_ones() & 1) as u8;
        let ok = match kind.converged_to() {
            Some(b) if b == parity => {
                self.correct += 1;
                self.max_steps = self.max_steps.max(steps);
                true
            }
            Some(_) => {
                self.wrong += 1;
                false
            }
            None => {
                if matches!(kind, OutcomeKind::Cycle { .. }) {
                    self.cycles += 1;
                } else {
                    self.budget_hits += 1;
                }
                false
            }
        };
        if !ok {
            self.first_failure = Some(self.first_failure.map_or(value, |f| f.min(value)));
        }
        self
    }

    fn merge(mut self, other: Survey) -> Self {
        self.checked += other.checked;
        self.correct += other.correct;
        self.wrong += other.wrong;
        self.cycles += other.cycles;
        self.budget_hits += other.budget_hits;
        self.max_steps = self.max_steps.max(other.max_steps);
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn check_sweep_size(n: usize) -> Result<(), VerifyError> {
    if n == 0 || n > MAX_SWEEP_SIZE {
        return Err(VerifyError::SizeOutOfRange(n));
    }
    Ok(())
}

/// Classifies every configuration on `n` cells, in parallel.
///
/// Accepts even sizes; on those no rule can pass, which is useful for
/// diagnostics such as counting cycles.
pub fn survey(rule: &LocalRule, n: usize, budget: StepBudget) -> Result<Survey, VerifyError> {
    check_sweep_size(n)?;
    let max_steps = budget.steps_for(n);
    let total = 1u64 << n;
    let s = (0..total)
        .into_par_iter()
        .fold(
            || (Survey::default(), Seen::new()),
            |(acc, mut seen), v| {
                let (kind, steps) = classify_index(rule, v, n, max_steps, &mut seen);
                (acc.record(v, kind, steps), seen)
            },
        )
        .map(|(s, _)| s)
        .reduce(Survey::default, Survey::merge);
    Ok(Survey { n, ..s })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeStatus {
    Pass,
    Fail {
        counterexample: Configuration,
        outcome: Outcome,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub n: usize,
    pub checked: u64,
    pub status: SizeStatus,
    pub survey: Survey,
}

impl SizeReport {
    pub fn passed(&self) -> bool {
        self.status == SizeStatus::Pass
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size={} checked={} status=", self.n, self.checked)?;
        match &self.status {
            SizeStatus::Pass => write!(f, "pass"),
            SizeStatus::Fail {
                counterexample,
                outcome,
            } => write!(
                f,
                "fail counterexample={} outcome={}",
                counterexample, outcome.kind
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub sizes: Vec<SizeReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.sizes.iter().all(SizeReport::passed)
    }

    /// First failing size, with its smallest counterexample.
    pub fn first_failure(&self) -> Option<Counterexample> {
        self.sizes.iter().find_map(|s| match &s.status {
            SizeStatus::Pass => None,
            SizeStatus::Fail {
                counterexample,
                outcome,
            } => Some(Counterexample {
                n: s.n,
                config: counterexample.clone(),
                outcome: outcome.clone(),
            }),
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sizes {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Exhaustive sweep of one size, without the odd-size check.
pub fn check_size(
    rule: &LocalRule,
    n: usize,
    budget: StepBudget,
) -> Result<SizeReport, VerifyError> {
    let survey = survey(rule, n, budget)?;
    let status = match survey.first_failure {
        None => SizeStatus::Pass,
        Some(v) => {
            let config = Configuration::from_index(v, n);
            let outcome = classify(rule, &config, budget.steps_for(n));
            SizeStatus::Fail {
                counterexample: config,
                outcome,
            }
        }
    };
    Ok(SizeReport {
        n,
        checked: survey.checked,
        status,
        survey,
    })
}

/// Checks every configuration of every listed (odd) size.
pub fn verify_perfect(
    rule: &LocalRule,
    sizes: &[usize],
    budget: StepBudget,
) -> Result<VerifyReport, VerifyError> {
    if let Some(&n) = sizes.iter().find(|&&n| n % 2 == 0) {
        return Err(VerifyError::EvenSize(n));
    }
    let sizes = sizes
        .iter()
        .map(|&n| check_size(rule, n, budget))
        .collect::<Result<_, _>>()?;
    Ok(VerifyReport { sizes })
}

/// First failure in order of increasing size, then increasing configuration
/// index. Stops as soon as one is found.
pub fn find_counterexample(
    rule: &LocalRule,
    sizes: &[usize],
    budget: StepBudget,
) -> Result<Option<Counterexample>, VerifyError> {
    for &n in sizes {
        check_sweep_size(n)?;
        let max_steps = budget.steps_for(n);
        let hit = (0..1u64 << n)
            .into_par_iter()
            .map_init(Seen::new, |seen, v| {
                let (kind, _) = classify_index(rule, v, n, max_steps, seen);
                (v, kind.converged_to() != Some((v.count_ones() & 1) as u8))
            })
            .find_first(|&(_, failed)| failed);
        if let Some((v, _)) = hit {
            let config = Configuration::from_index(v, n);
            let outcome = classify(rule, &config, max_steps);
            return Ok(Some(Counterexample { n, config, outcome }));
        }
    }
    Ok(None)
}
