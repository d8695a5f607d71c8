//! Binary necklaces: configurations up to rotation.
//!
//! The representative of a necklace is its lexicographically smallest
//! rotation, reading cell 0 first.

use crate::config::Configuration;

/// Iterator over the binary necklaces of a given length in lexicographic
/// order (Duval / Fredricksen-Kessler-Maiorana).
pub struct Necklaces {
    len: usize,
    word: Vec<u8>,
    done: bool,
}

impl Necklaces {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "necklaces need at least one cell");
        Self {
            len,
            word: vec![0],
            done: false,
        }
    }
}

impl Iterator for Necklaces {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        while !self.done {
            let m = self.word.len();
            let emit = self.len.is_multiple_of(m).then(|| {
                let cells: Vec<u8> = self.word.iter().copied().cycle().take(self.len).collect();
                Configuration::from_cells(&cells)
            });
            // extend periodically, then strip trailing maximal symbols and increment
            while self.word.len() < self.len {
                let b = self.word[self.word.len() - m];
                self.word.push(b);
            }
            while self.word.last() == Some(&1) {
                self.word.pop();
            }
            match self.word.last_mut() {
                Some(last) => *last += 1,
                None => self.done = true,
            }
            if emit.is_some() {
                return emit;
            }
        }
        None
    }
}

pub fn necklaces(len: usize) -> Necklaces {
    Necklaces::new(len)
}

/// True if `c` is its own lexicographically smallest rotation.
pub fn is_canonical(c: &Configuration) -> bool {
    *c == c.canonical_rotation()
}

/// True if `c`, read circularly, contains at least `run` consecutive cells
/// equal to `bit`. A homogeneous configuration of `bit` has runs of any length.
pub fn has_circular_run(c: &Configuration, bit: u8, run: usize) -> bool {
    let n = c.len();
    if c.homogeneous() == Some(bit) {
        return true;
    }
    let mut best = 0;
    let mut cur = 0;
    for i in 0..2 * n {
        if c.cell(i % n) == bit {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best >= run
}
