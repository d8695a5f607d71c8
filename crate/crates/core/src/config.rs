//! Circular binary configurations.
//!
//! Cell `i` of a configuration lives in bit `i % 64` of word `i / 64`. The
//! text form lists cells left to right, cell 0 first. When a configuration is
//! identified with an integer (exhaustive sweeps, `from_index`), the text form
//! is read as a binary numeral, so cell 0 is the most significant bit.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

const WORD: usize = 64;

/// A circular lattice of binary cells.
///
/// Equality is positional: two configurations that differ by a rotation are
/// different values. Use [`Configuration::canonical_rotation`] to compare up
/// to rotation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    len: usize,
    words: Vec<u64>,
}

impl Configuration {
    /// All-zero configuration of `len` cells.
    ///
    /// # Panics
    ///
    /// Panics if `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "a configuration has at least one cell");
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut c = Self::zeros(len);
        for w in c.words.iter_mut() {
            *w = u64::MAX;
        }
        c.clear_tail();
        c
    }

    /// Homogeneous configuration holding `bit` in every cell.
    pub fn homogeneous_of(bit: u8, len: usize) -> Self {
        if bit & 1 == 1 {
            Self::ones(len)
        } else {
            Self::zeros(len)
        }
    }

    /// Builds a configuration from cell values (any non-zero byte is a 1).
    pub fn from_cells(cells: &[u8]) -> Self {
        let mut c = Self::zeros(cells.len());
        for (i, &b) in cells.iter().enumerate() {
            if b != 0 {
                c.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        c
    }

    /// The configuration whose text form is `value` written in binary with
    /// `len` digits.
    ///
    /// # Panics
    ///
    /// Panics if `len` is 0 or greater than 64, or if `value >= 2^len`.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!((1..=WORD).contains(&len), "index form needs 1..=64 cells");
        assert!(len == WORD || value >> len == 0, "value out of range");
        Self {
            len,
            words: vec![index_to_packed(value, len)],
        }
    }

    /// Inverse of [`Configuration::from_index`]; `None` above 64 cells.
    pub fn to_index(&self) -> Option<u64> {
        (self.len <= WORD).then(|| packed_to_index(self.words[0], self.len))
    }

    pub(crate) fn from_packed(bits: u64, len: usize) -> Self {
        debug_assert!(len <= WORD);
        Self {
            len,
            words: vec![bits & low_mask(len)],
        }
    }

    pub(crate) fn packed(&self) -> Option<u64> {
        (self.len <= WORD).then(|| self.words[0])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell at `i`, with `i` taken modulo the lattice size.
    pub fn get(&self, i: isize) -> u8 {
        let i = i.rem_euclid(self.len as isize) as usize;
        self.cell(i)
    }

    #[inline]
    pub(crate) fn cell(&self, i: usize) -> u8 {
        ((self.words[i / WORD] >> (i % WORD)) & 1) as u8
    }

    pub fn set(&mut self, i: isize, bit: u8) {
        let i = i.rem_euclid(self.len as isize) as usize;
        let mask = 1u64 << (i % WORD);
        if bit & 1 == 1 {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.cell(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1 iff the number of 1-cells is odd.
    pub fn parity(&self) -> u8 {
        (self.count_ones() & 1) as u8
    }

    /// `Some(bit)` if every cell holds `bit`.
    pub fn homogeneous(&self) -> Option<u8> {
        match self.count_ones() {
            0 => Some(0),
            k if k == self.len => Some(1),
            _ => None,
        }
    }

    /// Rotation by `k` cells: cell `i` of the result is cell `i + k` of `self`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let k = k % self.len;
        let mut out = Self::zeros(self.len);
        for i in 0..self.len {
            if self.cell((i + k) % self.len) == 1 {
                out.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        out
    }

    /// Lexicographically smallest rotation of the text form.
    pub fn canonical_rotation(&self) -> Self {
        (0..self.len)
            .map(|k| self.rotate_left(k))
            .min_by(|a, b| a.cells().cmp(b.cells()))
            .expect("non-empty")
    }

    pub fn block_decomposition(&self) -> BlockDecomposition {
        BlockDecomposition::of(self)
    }

    /// Number of circular maximal runs; 1 for homogeneous configurations.
    pub fn block_count(&self) -> usize {
        if let Some(bits) = self.packed() {
            return packed_block_count(bits, self.len);
        }
        let boundaries = (0..self.len)
            .filter(|&i| self.cell(i) != self.cell((i + 1) % self.len))
            .count();
        boundaries.max(1)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= low_mask(rem);
        }
    }
}

impl FromStr for Configuration {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::EmptyConfiguration);
        }
        let cells = s
            .chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(ParseError::BadCell { pos, found: other }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(Self::from_cells(&cells))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.cells() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

/// Circular maximal runs of a configuration.
///
/// The first run is the one containing cell 0, extended leftwards across the
/// wrap; `start` is the index of its first cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub start: usize,
    pub runs: Vec<(u8, usize)>,
}

impl BlockDecomposition {
    fn of(c: &Configuration) -> Self {
        let n = c.len();
        if let Some(bit) = c.homogeneous() {
            return Self {
                start: 0,
                runs: vec![(bit, n)],
            };
        }
        let first = c.cell(0);
        let mut start = 0;
        while c.cell((start + n - 1) % n) == first {
            start = (start + n - 1) % n;
        }
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for off in 0..n {
            let b = c.cell((start + off) % n);
            match runs.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => runs.push((b, 1)),
            }
        }
        Self { start, runs }
    }

    pub fn block_count(&self) -> usize {
        self.runs.len()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, l)| l).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= WORD {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Index form (cell 0 = MSB) to packed form (cell 0 = bit 0).
#[inline]
pub(crate) fn index_to_packed(value: u64, len: usize) -> u64 {
    value.reverse_bits() >> (WORD - len)
}

#[inline]
pub(crate) fn packed_to_index(bits: u64, len: usize) -> u64 {
    bits.reverse_bits() >> (WORD - len)
}

/// Block count of a packed configuration of `len <= 64` cells.
#[inline]
pub(crate) fn packed_block_count(bits: u64, len: usize) -> usize {
    let rotated = (bits >> 1) | ((bits & 1) << (len - 1));
    ((bits ^ rotated) & low_mask(len)).count_ones().max(1) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(c("0001101").parity(), 1);
        assert_eq!(c("000000000").parity(), 0);
        assert_eq!(c("0001111").parity(), 0);
    }

    #[test]
    fn text_round_trip_and_index() {
        let x = c("0001000");
        assert_eq!(x.to_string(), "0001000");
        assert_eq!(x.to_index(), Some(0b0001000));
        assert_eq!(Configuration::from_index(0b0001000, 7), x);
        assert_eq!(x.get(-4), 1);
        assert_eq!(x.get(10), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "".parse::<Configuration>(),
            Err(ParseError::EmptyConfiguration)
        ));
        assert!(matches!(
            "01x".parse::<Configuration>(),
            Err(ParseError::BadCell { pos: 2, found: 'x' })
        ));
    }

    #[test]
    fn long_configurations_span_words() {
        let mut x = Configuration::zeros(130);
        x.set(129, 1);
        x.set(64, 1);
        assert_eq!(x.count_ones(), 2);
        assert_eq!(x.get(-1), 1);
        assert_eq!(x.to_index(), None);
        assert_eq!(Configuration::ones(130).homogeneous(), Some(1));
        assert_eq!(x.rotate_left(1).get(63), 1);
    }

    #[test]
    fn blocks_anchor_on_cell_zero() {
        let d = c("0011100").block_decomposition();
        assert_eq!(d.start, 5);
        assert_eq!(d.runs, vec![(0, 4), (1, 3)]);
        assert_eq!(d.block_count(), 2);

        let d = c("1111111").block_decomposition();
        assert_eq!(d.runs, vec![(1, 7)]);
        assert_eq!(d.block_count(), 1);

        let d = c("0101010").block_decomposition();
        assert_eq!(d.start, 6);
        assert_eq!(d.runs[0], (0, 2));
        assert_eq!(d.block_count(), 6);
        assert_eq!(d.len(), 7);
    }

    #[test]
    fn packed_block_count_matches() {
        for n in 1..=10 {
            for v in 0..(1u64 << n) {
                let x = Configuration::from_index(v, n);
                assert_eq!(packed_block_count(x.packed().unwrap(), n), x.block_count());
                assert_eq!(x.block_decomposition().block_count(), x.block_count());
            }
        }
    }

    #[test]
    fn canonical_rotation_is_minimal() {
        assert_eq!(c("1001100").canonical_rotation(), c("0010011"));
        assert_eq!(c("0110011").canonical_rotation(), c("0011011"));
    }
}
