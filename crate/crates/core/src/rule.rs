//! Local rules and the synchronous global step.
//!
//! A neighbourhood of radius `r` is the window `x[i-r] .. x[i+r]` read left to
//! right into an unsigned integer, leftmost cell as the most significant bit.
//! The rule table is indexed by that integer.

use std::fmt;

use crate::config::{low_mask, Configuration};
use crate::error::RuleError;

pub const MAX_RADIUS: u32 = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    radius: u32,
    table: Vec<u8>,
}

impl LocalRule {
    pub fn new(radius: u32, table: Vec<u8>) -> Result<Self, RuleError> {
        if radius > MAX_RADIUS {
            return Err(RuleError::RadiusTooLarge(radius));
        }
        let expected = 1usize << (2 * radius + 1);
        if table.len() != expected {
            return Err(RuleError::TableLength {
                radius,
                expected,
                found: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(RuleError::NonBinaryOutput { index, value });
        }
        Ok(Self { radius, table })
    }

    /// Builds a rule by evaluating `f` on every neighbourhood value.
    pub fn from_fn(radius: u32, f: impl Fn(u32) -> u8) -> Result<Self, RuleError> {
        if radius > MAX_RADIUS {
            return Err(RuleError::RadiusTooLarge(radius));
        }
        let table = (0..1u32 << (2 * radius + 1)).map(|k| f(k) & 1).collect();
        Self::new(radius, table)
    }

    /// Every cell keeps its state.
    pub fn identity(radius: u32) -> Result<Self, RuleError> {
        Self::from_fn(radius, |k| ((k >> radius) & 1) as u8)
    }

    /// Radius-1 rule from its elementary (0..=255) number.
    pub fn elementary(number: u8) -> Self {
        Self::from_fn(1, |k| (number >> k) & 1).expect("radius 1 is valid")
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Cells per neighbourhood, `2r + 1`.
    pub fn width(&self) -> u32 {
        2 * self.radius + 1
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn output(&self, neighbourhood: u32) -> u8 {
        self.table[neighbourhood as usize]
    }

    /// Centre cell of a neighbourhood value.
    pub fn centre(&self, neighbourhood: u32) -> u8 {
        ((neighbourhood >> self.radius) & 1) as u8
    }

    /// True when the output differs from the centre cell.
    pub fn is_active(&self, neighbourhood: u32) -> bool {
        self.output(neighbourhood) != self.centre(neighbourhood)
    }

    /// `f(0..0) = 0` and `f(1..1) = 1`.
    pub fn is_quiescent_consistent(&self) -> bool {
        self.table[0] == 0 && self.table[self.table.len() - 1] == 1
    }

    /// Neighbourhood value read around cell `i` (indices modulo `n`).
    pub fn neighbourhood(&self, config: &Configuration, i: usize) -> u32 {
        let r = self.radius as isize;
        (-r..=r).fold(0u32, |acc, d| {
            (acc << 1) | config.get(i as isize + d) as u32
        })
    }

    /// One synchronous application of the rule to every cell.
    pub fn step(&self, config: &Configuration) -> Configuration {
        let n = config.len();
        if let Some(bits) = config.packed() {
            return Configuration::from_packed(self.step_packed(bits, n), n);
        }
        let mut out = Configuration::zeros(n);
        self.roll(
            n,
            |i| config.cell(i) as u32,
            |i, k| {
                if self.table[k as usize] == 1 {
                    out.set(i as isize, 1);
                }
            },
        );
        out
    }

    /// Step on a packed lattice of at most 64 cells (cell `i` = bit `i`).
    #[inline]
    pub(crate) fn step_packed(&self, bits: u64, n: usize) -> u64 {
        let mut out = 0u64;
        self.roll(
            n,
            |i| ((bits >> i) & 1) as u32,
            |i, k| out |= (self.table[k as usize] as u64) << i,
        );
        out
    }

    /// Visits every cell with its neighbourhood value using a rolling window.
    #[inline(always)]
    fn roll(&self, n: usize, read: impl Fn(usize) -> u32, mut visit: impl FnMut(usize, u32)) {
        let r = self.radius as usize;
        let mask = low_mask(2 * r + 1) as u32;
        let mut idx = 0u32;
        for j in 0..2 * r + 1 {
            // cell (j - r) mod n, without going negative
            let pos = (j + n * (r / n + 1) - r) % n;
            idx = (idx << 1) | read(pos);
        }
        let mut ahead = (r + 1) % n;
        for i in 0..n {
            visit(i, idx);
            idx = ((idx << 1) | read(ahead)) & mask;
            ahead += 1;
            if ahead == n {
                ahead = 0;
            }
        }
    }

    /// Number of cells whose neighbourhood is active.
    pub fn active_count(&self, config: &Configuration) -> usize {
        let mut count = 0;
        self.roll(
            config.len(),
            |i| config.cell(i) as u32,
            |_, k| {
                if self.is_active(k) {
                    count += 1;
                }
            },
        );
        count
    }
}

impl fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalRule(r={}, ", self.radius)?;
        for &b in &self.table {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn rule_150_hand_applied() {
        let r150 = LocalRule::elementary(150);
        assert_eq!(r150.step(&c("0001000")), c("0011100"));
        assert_eq!(r150.step(&c("0011100")), c("0101010"));
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            LocalRule::new(1, vec![0; 7]),
            Err(RuleError::TableLength {
                expected: 8,
                found: 7,
                ..
            })
        ));
        assert!(matches!(
            LocalRule::new(1, vec![0, 2, 0, 0, 0, 0, 0, 0]),
            Err(RuleError::NonBinaryOutput { index: 1, value: 2 })
        ));
        assert!(LocalRule::identity(MAX_RADIUS + 1).is_err());
    }

    #[test]
    fn quiescent_rules_fix_homogeneous() {
        let r = LocalRule::elementary(232);
        assert!(r.is_quiescent_consistent());
        assert_eq!(r.step(&Configuration::zeros(9)), Configuration::zeros(9));
        assert!(!LocalRule::elementary(1).is_quiescent_consistent());
    }

    #[test]
    fn wrapped_reads_on_tiny_lattices() {
        // radius 4 on 3 cells: the window around cell 0 is x1 x2 x0 x1 [x2] ... read modulo 3
        let r = LocalRule::from_fn(4, |k| (k.count_ones() & 1) as u8).unwrap();
        let x = c("100");
        let expected: Vec<u8> = (0..3)
            .map(|i| (r.neighbourhood(&x, i).count_ones() & 1) as u8)
            .collect();
        assert_eq!(r.step(&x), Configuration::from_cells(&expected));
        assert_eq!(r.neighbourhood(&x, 0), 0b010010010);
    }

    #[test]
    fn packed_and_long_paths_agree() {
        let r = LocalRule::from_fn(2, |k| (k.wrapping_mul(2654435761) >> 7) as u8 & 1).unwrap();
        let mut long = Configuration::zeros(150);
        for i in (0..150).step_by(7) {
            long.set(i, 1);
        }
        let stepped = r.step(&long);
        for i in 0..150 {
            assert_eq!(stepped.get(i as isize), r.output(r.neighbourhood(&long, i)));
        }
        let short = c("1011001110100");
        let stepped = r.step(&short);
        for i in 0..short.len() {
            assert_eq!(
                stepped.get(i as isize),
                r.output(r.neighbourhood(&short, i))
            );
        }
    }
}
