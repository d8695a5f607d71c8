//! Candidate elimination for small radii.
//!
//! A perfect rule must satisfy a handful of necessary conditions: quiescent
//! homogeneous configurations, growth of isolated 1s and 0s, distinct outputs
//! on the two alternating windows, and certain short pre-image cycles. The
//! searches below force those conditions into a partial table, enumerate the
//! completions that pass the pre-image filters, and look for a counterexample
//! for every survivor.

use std::fmt;

use rayon::prelude::*;

use crate::config::Configuration;
use crate::debruijn::{
    build_debruijn, certify_pairwise_parity, find_even_length_odd_parity_cycle, preimage_necklaces,
    window_set_has_even_odd_cycle,
};
use crate::dynamics::{classify, find_counterexample, Counterexample, StepBudget};
use crate::error::{Infeasible, SearchError};
use crate::necklace::{has_circular_run, necklaces};
use crate::number::wolfram_number;
use crate::patterns::neighbourhood_string;
use crate::rule::LocalRule;

/// Odd sizes searched for radius-2 counterexamples.
pub const R2_SIZES: [usize; 6] = [3, 5, 7, 9, 11, 13];
/// Prime sizes searched when only prime lattices count.
pub const R2_PRIME_SIZES: [usize; 5] = [3, 5, 7, 11, 13];
/// Sizes searched for the radius-1 counterexample.
pub const R1_SIZES: [usize; 3] = [5, 7, 9];
/// Longest even pre-image checked for odd parity.
pub const EVEN_CYCLE_MAX_LEN: usize = 8;
/// Longest pre-image checked for runs of four equal cells.
pub const RUN_FILTER_MAX_LEN: usize = 11;

/// Upper bound on the radius-2 candidates expected from the standard families.
pub const R2_STANDARD_CEILING: usize = 256;
/// Upper bound on the extra candidates admitted on prime lattices.
pub const R2_PRIME_EXTRA_CEILING: usize = 32;

/// A named short pre-image cycle: `B` cycles map to all 1s, `W` cycles to all 0s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleName {
    pub target: u8,
    pub length: usize,
    pub index: u8,
}

impl CycleName {
    pub const fn new(target: u8, length: usize, index: u8) -> Self {
        CycleName {
            target,
            length,
            index,
        }
    }

    /// The configuration as listed in the catalogue (not canonicalised).
    pub fn configuration(&self) -> Option<Configuration> {
        CATALOGUE
            .iter()
            .find(|(name, _)| name == self)
            .map(|(_, cells)| cells.parse().expect("catalogue entries are valid"))
    }
}

impl fmt::Display for CycleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.target == 1 { 'B' } else { 'W' };
        write!(f, "{letter}{}^{}", self.index, self.length)
    }
}

const CATALOGUE: [(CycleName, &str); 14] = [
    (CycleName::new(1, 5, 1), "00111"),
    (CycleName::new(1, 5, 2), "00001"),
    (CycleName::new(1, 5, 3), "01011"),
    (CycleName::new(0, 5, 1), "00011"),
    (CycleName::new(0, 5, 2), "01111"),
    (CycleName::new(0, 5, 3), "00101"),
    (CycleName::new(1, 7, 1), "0000111"),
    (CycleName::new(1, 7, 2), "0001101"),
    (CycleName::new(1, 7, 3), "0001011"),
    (CycleName::new(1, 7, 4), "1001100"),
    (CycleName::new(0, 7, 1), "0001111"),
    (CycleName::new(0, 7, 2), "0010111"),
    (CycleName::new(0, 7, 3), "0011101"),
    (CycleName::new(0, 7, 4), "0110011"),
];

/// Every named cycle with its configuration.
pub fn cycle_catalogue() -> Vec<(CycleName, Configuration)> {
    CATALOGUE
        .iter()
        .map(|(name, cells)| (*name, cells.parse().expect("catalogue entries are valid")))
        .collect()
}

/// Where a forced table entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `f(0..0) = 0`, `f(1..1) = 1`.
    Quiescence,
    /// Output on a single 1 among 0s.
    SingletonGrowth,
    /// Output on a single 0 among 1s.
    SingletonShrink,
    /// `f(10101) != f(01010)`.
    Alternation,
    /// A window of a required pre-image cycle.
    Preimage(CycleName),
    /// A free entry fixed while enumerating completions.
    Completion,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Quiescence => write!(f, "quiescence"),
            Provenance::SingletonGrowth => write!(f, "singleton-growth"),
            Provenance::SingletonShrink => write!(f, "singleton-shrink"),
            Provenance::Alternation => write!(f, "alternation"),
            Provenance::Preimage(name) => write!(f, "preimage:{name}"),
            Provenance::Completion => write!(f, "completion"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub value: u8,
    pub provenance: Provenance,
}

/// A rule table with some entries fixed, each tagged with its reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRule {
    radius: u32,
    entries: Vec<Option<Assignment>>,
}

impl PartialRule {
    pub fn new(radius: u32) -> Self {
        PartialRule {
            radius,
            entries: vec![None; 1 << (2 * radius + 1)],
        }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn get(&self, neighbourhood: u32) -> Option<&Assignment> {
        self.entries[neighbourhood as usize].as_ref()
    }

    /// Fixes an entry. Repeating an existing value keeps the first provenance.
    pub fn force(
        &mut self,
        neighbourhood: u32,
        value: u8,
        provenance: Provenance,
    ) -> Result<(), Infeasible> {
        let slot = &mut self.entries[neighbourhood as usize];
        match slot {
            Some(a) if a.value != value => Err(Infeasible {
                neighbourhood: neighbourhood_string(neighbourhood, 2 * self.radius + 1),
                first: a.provenance,
                first_value: a.value,
                second: provenance,
                second_value: value,
            }),
            Some(_) => Ok(()),
            None => {
                *slot = Some(Assignment { value, provenance });
                Ok(())
            }
        }
    }

    /// Forces every window of `config` to output `target`.
    pub fn force_preimage(
        &mut self,
        config: &Configuration,
        target: u8,
        provenance: Provenance,
    ) -> Result<(), Infeasible> {
        for k in windows(config, self.radius) {
            self.force(k, target, provenance)?;
        }
        Ok(())
    }

    pub fn force_cycle(&mut self, name: CycleName) -> Result<(), Infeasible> {
        let config = name.configuration().expect("named cycle is catalogued");
        self.force_preimage(&config, name.target, Provenance::Preimage(name))
    }

    /// Assigned entries in neighbourhood order.
    pub fn assigned(&self) -> impl Iterator<Item = (u32, &Assignment)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(k, a)| a.as_ref().map(|a| (k as u32, a)))
    }

    /// Unassigned neighbourhoods in increasing order.
    pub fn free(&self) -> Vec<u32> {
        (0..self.entries.len() as u32)
            .filter(|&k| self.entries[k as usize].is_none())
            .collect()
    }

    /// Fills the free entries from `bits`, bit `i` going to the `i`-th free
    /// neighbourhood.
    pub fn complete(&self, bits: u64) -> PartialRule {
        let mut out = self.clone();
        for (i, k) in self.free().into_iter().enumerate() {
            out.entries[k as usize] = Some(Assignment {
                value: ((bits >> i) & 1) as u8,
                provenance: Provenance::Completion,
            });
        }
        out
    }

    /// The rule, if every entry is assigned.
    pub fn to_rule(&self) -> Option<LocalRule> {
        let table = self
            .entries
            .iter()
            .map(|a| a.map(|a| a.value))
            .collect::<Option<Vec<u8>>>()?;
        Some(LocalRule::new(self.radius, table).expect("table has the right shape"))
    }
}

/// The `2r+1`-cell windows of a circular configuration, one per cell.
fn windows(config: &Configuration, radius: u32) -> Vec<u32> {
    let r = radius as isize;
    (0..config.len() as isize)
        .map(|i| (i - r..=i + r).fold(0u32, |acc, j| (acc << 1) | config.get(j) as u32))
        .collect()
}

/// Radius-2 pre-image cycles of lengths 5 and 7, canonicalised and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTables {
    pub ones5: Vec<Configuration>,
    pub zeros5: Vec<Configuration>,
    pub ones7: Vec<Configuration>,
    pub zeros7: Vec<Configuration>,
}

impl CycleTables {
    pub fn get(&self, target: u8, length: usize) -> &[Configuration] {
        match (target, length) {
            (1, 5) => &self.ones5,
            (0, 5) => &self.zeros5,
            (1, 7) => &self.ones7,
            (0, 7) => &self.zeros7,
            _ => &[],
        }
    }
}

impl fmt::Display for CycleTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, list) in [
            ("B5", &self.ones5),
            ("W5", &self.zeros5),
            ("B7", &self.ones7),
            ("W7", &self.zeros7),
        ] {
            let items: Vec<String> = list.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{label} {}", items.join(","))?;
        }
        Ok(())
    }
}

/// Configurations of `length` cells that a perfect radius-2 rule could map to
/// the homogeneous `target` configuration.
pub fn r2_preimage_candidates(target: u8, length: usize) -> Vec<Configuration> {
    necklaces(length)
        .filter(|c| {
            c.homogeneous().is_none()
                && c.parity() == target
                && !has_circular_run(c, target, 4)
                && !is_alternating(c)
                && !window_set_has_even_odd_cycle(2, &windows(c, 2))
        })
        .collect()
}

/// Period-2 configurations `0101...`.
fn is_alternating(c: &Configuration) -> bool {
    c.len().is_multiple_of(2) && c.rotate_left(1) != *c && c.rotate_left(2) == *c
}

pub fn r2_cycle_tables() -> CycleTables {
    CycleTables {
        ones5: r2_preimage_candidates(1, 5),
        zeros5: r2_preimage_candidates(0, 5),
        ones7: r2_preimage_candidates(1, 7),
        zeros7: r2_preimage_candidates(0, 7),
    }
}

/// Which of the five singleton windows are chosen; only sizes 3 and 5 are
/// allowed. Bit `i` (from the left of the displayed string) stands for the
/// window with the odd cell at offset `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingletonSubset(u8);

impl SingletonSubset {
    pub fn new(mask: u8) -> Option<Self> {
        (mask < 32 && matches!(mask.count_ones(), 3 | 5)).then_some(SingletonSubset(mask))
    }

    /// All eleven subsets, by increasing mask.
    pub fn all() -> Vec<Self> {
        (0..32).filter_map(Self::new).collect()
    }

    pub fn mask(&self) -> u8 {
        self.0
    }

    /// Offsets `0..5` of the chosen windows.
    pub fn contains(&self, offset: u32) -> bool {
        (self.0 >> (4 - offset)) & 1 == 1
    }
}

impl fmt::Display for SingletonSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", neighbourhood_string(self.0 as u32, 5))
    }
}

/// Which alternating window goes to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alternation {
    /// `f(10101) = 1`, `f(01010) = 0`.
    High10101,
    /// `f(10101) = 0`, `f(01010) = 1`.
    High01010,
}

impl fmt::Display for Alternation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alternation::High10101 => write!(f, "f10101=1"),
            Alternation::High01010 => write!(f, "f01010=1"),
        }
    }
}

/// The four required pre-image cycles of a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleFamily {
    pub one5: CycleName,
    pub zero5: CycleName,
    pub one7: CycleName,
    pub zero7: CycleName,
}

impl CycleFamily {
    const fn of(b5: u8, w5: u8, b7: u8, w7: u8) -> Self {
        CycleFamily {
            one5: CycleName::new(1, 5, b5),
            zero5: CycleName::new(0, 5, w5),
            one7: CycleName::new(1, 7, b7),
            zero7: CycleName::new(0, 7, w7),
        }
    }

    pub fn names(&self) -> [CycleName; 4] {
        [self.one5, self.zero5, self.one7, self.zero7]
    }
}

impl fmt::Display for CycleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}+{}+{}",
            self.one5, self.zero5, self.one7, self.zero7
        )
    }
}

/// Families every perfect radius-2 rule must contain one of.
pub const STANDARD_FAMILIES: [CycleFamily; 2] =
    [CycleFamily::of(2, 2, 1, 4), CycleFamily::of(2, 2, 4, 1)];

/// Families that stay open when only prime lattice sizes are required.
pub const PRIME_EXTRA_FAMILIES: [CycleFamily; 2] =
    [CycleFamily::of(3, 2, 4, 1), CycleFamily::of(2, 3, 1, 4)];

/// One discrete choice of every forcing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct R2Branch {
    pub family: CycleFamily,
    pub alternation: Alternation,
    pub growth: SingletonSubset,
    pub shrink: SingletonSubset,
}

impl fmt::Display for R2Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/grow={}/shrink={}",
            self.family, self.alternation, self.growth, self.shrink
        )
    }
}

/// Every branch, in report order.
pub fn r2_branches(prime_only: bool) -> Vec<R2Branch> {
    let families: Vec<CycleFamily> = if prime_only {
        STANDARD_FAMILIES
            .iter()
            .chain(&PRIME_EXTRA_FAMILIES)
            .copied()
            .collect()
    } else {
        STANDARD_FAMILIES.to_vec()
    };
    let subsets = SingletonSubset::all();
    let mut out = Vec::new();
    for family in families {
        for alternation in [Alternation::High10101, Alternation::High01010] {
            for &growth in &subsets {
                for &shrink in &subsets {
                    out.push(R2Branch {
                        family,
                        alternation,
                        growth,
                        shrink,
                    });
                }
            }
        }
    }
    out
}

/// The forcings of a branch, in the order they are applied.
pub fn r2_forcings(branch: &R2Branch) -> Vec<(u32, u8, Provenance)> {
    let mut out = vec![
        (0b00000, 0, Provenance::Quiescence),
        (0b11111, 1, Provenance::Quiescence),
    ];
    for i in 0..5 {
        let single = 1u32 << (4 - i);
        let grows = u8::from(branch.growth.contains(i));
        out.push((single, grows, Provenance::SingletonGrowth));
        let hole = 0b11111 ^ single;
        let shrinks = u8::from(!branch.shrink.contains(i));
        out.push((hole, shrinks, Provenance::SingletonShrink));
    }
    let high = u8::from(branch.alternation == Alternation::High10101);
    out.push((0b10101, high, Provenance::Alternation));
    out.push((0b01010, 1 - high, Provenance::Alternation));
    for name in branch.family.names() {
        let config = name.configuration().expect("named cycle is catalogued");
        for k in windows(&config, 2) {
            out.push((k, name.target, Provenance::Preimage(name)));
        }
    }
    out
}

pub fn r2_forced_assignments(branch: &R2Branch) -> Result<PartialRule, Infeasible> {
    let mut rule = PartialRule::new(2);
    for (k, v, p) in r2_forcings(branch) {
        rule.force(k, v, p)?;
    }
    Ok(rule)
}

/// A rule that passed every filter, with the first failure found for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub rule: LocalRule,
    pub choicepath: String,
    pub counterexample: Option<Counterexample>,
}

impl CandidateReport {
    /// Re-runs the recorded counterexample and checks it still fails.
    pub fn replays(&self, budget: StepBudget) -> bool {
        let Some(ce) = &self.counterexample else {
            return false;
        };
        let outcome = classify(&self.rule, &ce.config, budget.steps_for(ce.n));
        outcome == ce.outcome && !outcome.solves(ce.config.parity())
    }
}

impl fmt::Display for CandidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "choicepath={} rule={}",
            self.choicepath,
            wolfram_number(&self.rule)
        )?;
        match &self.counterexample {
            Some(ce) => write!(
                f,
                " counterexample_n={} config={} outcome={}",
                ce.n,
                ce.config,
                ce.outcome.kind.tag()
            ),
            None => write!(f, " counterexample_n=- config=- outcome=none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R2Candidate {
    pub branch: R2Branch,
    pub report: CandidateReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R2Report {
    pub prime_only: bool,
    pub sizes: Vec<usize>,
    pub branches: usize,
    pub feasible: usize,
    pub completions: u64,
    pub rejected_even_cycle: u64,
    pub rejected_runs: u64,
    /// Survivors whose every step preserves parity (diagnostic only).
    pub parity_preserving: usize,
    pub candidates: Vec<R2Candidate>,
}

impl R2Report {
    pub fn count_in(&self, families: &[CycleFamily]) -> usize {
        self.candidates
            .iter()
            .filter(|c| families.contains(&c.branch.family))
            .count()
    }

    pub fn all_refuted(&self) -> bool {
        self.candidates
            .iter()
            .all(|c| c.report.counterexample.is_some())
    }

    pub fn summary(&self) -> String {
        let sizes: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        format!(
            "candidates={} branches={} feasible={} completions={} rejected_even_cycle={} \
             rejected_runs={} parity_preserving={} sizes={} all_refuted={}",
            self.candidates.len(),
            self.branches,
            self.feasible,
            self.completions,
            self.rejected_even_cycle,
            self.rejected_runs,
            self.parity_preserving,
            sizes.join(","),
            self.all_refuted()
        )
    }
}

impl fmt::Display for R2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.candidates {
            writeln!(f, "{}", c.report)?;
        }
        writeln!(f, "{}", self.summary())
    }
}

/// Filter (a): no pre-image of either homogeneous configuration has even
/// length and an odd number of 1s.
fn passes_even_cycle_filter(rule: &LocalRule) -> bool {
    let graph = build_debruijn(rule);
    [0, 1]
        .iter()
        .all(|&b| find_even_length_odd_parity_cycle(&graph, b, EVEN_CYCLE_MAX_LEN).is_none())
}

/// Filter (b): no non-homogeneous pre-image of all `b` holds four `b`s in a row.
fn passes_run_filter(rule: &LocalRule) -> bool {
    (1..=RUN_FILTER_MAX_LEN).all(|n| {
        [0, 1].iter().all(|&b| {
            preimage_necklaces(rule, b, n)
                .iter()
                .all(|c| c.homogeneous().is_some() || !has_circular_run(c, b, 4))
        })
    })
}

#[derive(Default)]
struct BranchTally {
    feasible: usize,
    completions: u64,
    rejected_even_cycle: u64,
    rejected_runs: u64,
    parity_preserving: usize,
    candidates: Vec<R2Candidate>,
}

fn free_bits_label(bits: u64, count: usize) -> String {
    (0..count)
        .map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn explore_branch(branch: R2Branch, sizes: &[usize], budget: StepBudget) -> BranchTally {
    let mut tally = BranchTally::default();
    let Ok(partial) = r2_forced_assignments(&branch) else {
        return tally;
    };
    tally.feasible = 1;
    let free = partial.free().len();
    for bits in 0..1u64 << free {
        tally.completions += 1;
        let rule = partial
            .complete(bits)
            .to_rule()
            .expect("completion is total");
        if !passes_even_cycle_filter(&rule) {
            tally.rejected_even_cycle += 1;
            continue;
        }
        if !passes_run_filter(&rule) {
            tally.rejected_runs += 1;
            continue;
        }
        if certify_pairwise_parity(&build_debruijn(&rule)).is_certified() {
            tally.parity_preserving += 1;
        }
        let counterexample =
            find_counterexample(&rule, sizes, budget).expect("search sizes are odd and small");
        tally.candidates.push(R2Candidate {
            branch,
            report: CandidateReport {
                rule,
                choicepath: format!("{branch}/free={}", free_bits_label(bits, free)),
                counterexample,
            },
        });
    }
    tally
}

/// Runs the radius-2 elimination with the default step budget.
pub fn r2_enumerate_candidates(prime_only: bool) -> Result<R2Report, SearchError> {
    r2_enumerate_candidates_with(prime_only, StepBudget::default())
}

/// Runs the radius-2 elimination. Fails with `Escalation` if some candidate
/// has no counterexample at the searched sizes.
pub fn r2_enumerate_candidates_with(
    prime_only: bool,
    budget: StepBudget,
) -> Result<R2Report, SearchError> {
    let sizes: Vec<usize> = if prime_only {
        R2_PRIME_SIZES.to_vec()
    } else {
        R2_SIZES.to_vec()
    };
    let branches = r2_branches(prime_only);
    let tallies: Vec<BranchTally> = branches
        .par_iter()
        .map(|&b| explore_branch(b, &sizes, budget))
        .collect();
    let mut report = R2Report {
        prime_only,
        sizes,
        branches: branches.len(),
        feasible: 0,
        completions: 0,
        rejected_even_cycle: 0,
        rejected_runs: 0,
        parity_preserving: 0,
        candidates: Vec::new(),
    };
    for t in tallies {
        report.feasible += t.feasible;
        report.completions += t.completions;
        report.rejected_even_cycle += t.rejected_even_cycle;
        report.rejected_runs += t.rejected_runs;
        report.parity_preserving += t.parity_preserving;
        report.candidates.extend(t.candidates);
    }
    if let Some(c) = report
        .candidates
        .iter()
        .find(|c| c.report.counterexample.is_none())
    {
        return Err(SearchError::Escalation {
            choicepath: c.report.choicepath.clone(),
            rule: wolfram_number(&c.report.rule).to_string(),
        });
    }
    Ok(report)
}

/// The radius-1 forcings: quiescence and growth of every isolated cell.
pub fn r1_forced_assignments() -> Result<PartialRule, Infeasible> {
    let mut rule = PartialRule::new(1);
    rule.force(0b000, 0, Provenance::Quiescence)?;
    rule.force(0b111, 1, Provenance::Quiescence)?;
    for single in [0b100, 0b010, 0b001] {
        rule.force(single, 1, Provenance::SingletonGrowth)?;
        rule.force(0b111 ^ single, 0, Provenance::SingletonShrink)?;
    }
    Ok(rule)
}

/// Every radius-1 rule meeting the forcings, each with a counterexample.
pub fn radius1_eliminate() -> Vec<CandidateReport> {
    radius1_eliminate_with(StepBudget::default())
}

pub fn radius1_eliminate_with(budget: StepBudget) -> Vec<CandidateReport> {
    let Ok(partial) = r1_forced_assignments() else {
        return Vec::new();
    };
    let free = partial.free().len();
    (0..1u64 << free)
        .map(|bits| {
            let rule = partial
                .complete(bits)
                .to_rule()
                .expect("completion is total");
            let counterexample =
                find_counterexample(&rule, &R1_SIZES, budget).expect("sizes are odd and small");
            CandidateReport {
                rule,
                choicepath: format!(
                    "quiescence/grow=111/shrink=111/free={}",
                    free_bits_label(bits, free)
                ),
                counterexample,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::OutcomeKind;
    use crate::number::RuleNumber;
    use std::collections::BTreeSet;

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    fn canon(list: &[&str]) -> Vec<Configuration> {
        let set: BTreeSet<String> = list
            .iter()
            .map(|s| c(s).canonical_rotation().to_string())
            .collect();
        set.iter().map(|s| c(s)).collect()
    }

    #[test]
    fn cycle_tables_match_catalogue() {
        let t = r2_cycle_tables();
        assert_eq!(t.ones5, canon(&["00111", "00001", "01011"]));
        assert_eq!(t.zeros5, canon(&["00011", "01111", "00101"]));
        assert_eq!(
            t.ones7,
            canon(&["0000111", "0001101", "0001011", "1001100"])
        );
        assert_eq!(
            t.zeros7,
            canon(&["0001111", "0010111", "0011101", "0110011"])
        );
        for (name, config) in cycle_catalogue() {
            assert_eq!(config.parity(), name.target, "{name}");
            assert!(t
                .get(name.target, name.length)
                .contains(&config.canonical_rotation()));
        }
    }

    #[test]
    fn names_display() {
        assert_eq!(CycleName::new(1, 5, 2).to_string(), "B2^5");
        assert_eq!(CycleName::new(0, 7, 4).to_string(), "W4^7");
        assert_eq!(
            Provenance::Preimage(CycleName::new(0, 5, 2)).to_string(),
            "preimage:W2^5"
        );
    }

    #[test]
    fn subsets() {
        let all = SingletonSubset::all();
        assert_eq!(all.len(), 11);
        assert!(SingletonSubset::new(0b00011).is_none());
        assert!(SingletonSubset::new(0b100000).is_none());
        let s = SingletonSubset::new(0b10110).unwrap();
        assert_eq!(s.to_string(), "10110");
        assert!(s.contains(0) && !s.contains(1) && s.contains(2));
    }

    #[test]
    fn forcing_a_seven_cycle() {
        let mut p = PartialRule::new(2);
        p.force_cycle(CycleName::new(1, 7, 1)).unwrap();
        for k in windows(&c("0000111"), 2) {
            let a = p.get(k).unwrap();
            assert_eq!(a.value, 1);
            assert_eq!(a.provenance, Provenance::Preimage(CycleName::new(1, 7, 1)));
        }
        assert_eq!(p.assigned().count(), 7);
    }

    #[test]
    fn w1_five_cycle_excludes_every_seven_cycle() {
        for index in 1..=4 {
            let mut p = PartialRule::new(2);
            p.force(0, 0, Provenance::Quiescence).unwrap();
            p.force(31, 1, Provenance::Quiescence).unwrap();
            p.force_cycle(CycleName::new(0, 5, 1)).unwrap();
            let err = p.force_cycle(CycleName::new(1, 7, index)).unwrap_err();
            assert_eq!(err.first, Provenance::Preimage(CycleName::new(0, 5, 1)));
            assert_eq!(
                err.second,
                Provenance::Preimage(CycleName::new(1, 7, index))
            );
            assert_ne!(err.first_value, err.second_value);
        }
    }

    #[test]
    fn every_branch_is_tagged_and_monotone() {
        for branch in r2_branches(true) {
            let mut p = PartialRule::new(2);
            let mut feasible = true;
            for (k, v, prov) in r2_forcings(&branch) {
                let before = p.clone();
                if p.force(k, v, prov).is_err() {
                    assert_eq!(p, before);
                    feasible = false;
                    break;
                }
                for (j, a) in before.assigned() {
                    assert_eq!(p.get(j), Some(a));
                }
            }
            assert_eq!(feasible, r2_forced_assignments(&branch).is_ok());
            if feasible {
                assert_eq!(p.get(0).unwrap().value, 0);
                assert_eq!(p.get(31).unwrap().value, 1);
                assert!(p
                    .assigned()
                    .all(|(_, a)| a.provenance != Provenance::Completion));
                assert!(p.complete(0).assigned().count() == 32);
            }
        }
    }

    #[test]
    fn equal_alternating_outputs_are_refuted() {
        // brute force over every radius-2 table is too large; sample the
        // tables that agree with a fixed filler on all other windows
        for filler in [0u32, 0x1234_5678, 0x9e37_79b9, 0xffff_ffff] {
            for v in [0u8, 1] {
                let rule = LocalRule::from_fn(2, |k| {
                    if k == 0b10101 || k == 0b01010 {
                        v
                    } else {
                        ((filler >> k) & 1) as u8
                    }
                })
                .unwrap();
                let g = build_debruijn(&rule);
                let w = find_even_length_odd_parity_cycle(&g, v, 2).unwrap();
                let x = w.configuration();
                assert_eq!(x.len(), 2);
                assert_eq!(x.parity(), 1);
                assert_eq!(rule.step(&x), Configuration::homogeneous_of(v, 2));
            }
        }
    }

    #[test]
    fn radius_one_leaves_rule_150() {
        let reports = radius1_eliminate();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(wolfram_number(&r.rule), RuleNumber::from(150));
        assert!(r.replays(StepBudget::default()));
        let ce = r.counterexample.as_ref().unwrap();
        assert!(R1_SIZES.contains(&ce.n));
        assert!(r
            .to_string()
            .starts_with("choicepath=quiescence/grow=111/shrink=111/free= rule=150"));
    }

    #[test]
    fn rule_150_never_settles_from_a_single_one() {
        let rule = LocalRule::elementary(150);
        let x = c("0001000");
        let out = classify(&rule, &x, StepBudget::default().steps_for(7));
        assert!(matches!(out.kind, OutcomeKind::Cycle { .. }));
    }

    #[test]
    fn candidate_line_format() {
        let report = CandidateReport {
            rule: LocalRule::elementary(150),
            choicepath: "x".into(),
            counterexample: None,
        };
        assert_eq!(
            report.to_string(),
            "choicepath=x rule=150 counterexample_n=- config=- outcome=none"
        );
        assert!(!report.replays(StepBudget::default()));
    }
}
