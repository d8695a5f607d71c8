//! Space-time diagrams: one row per step, time going down.

use std::fmt::Write as _;

use parity_ca::Configuration;

/// Longest line written to a PBM file.
const PBM_LINE_WIDTH: usize = 70;

pub fn ascii(rows: &[Configuration]) -> String {
    let mut out = String::new();
    for row in rows {
        out.extend(row.cells().map(|b| if b == 1 { '#' } else { '.' }));
        out.push('\n');
    }
    out
}

/// Plain PBM (P1), 1 = black.
pub fn pbm(rows: &[Configuration]) -> String {
    let width = rows.first().map_or(0, Configuration::len);
    let mut out = String::new();
    let _ = writeln!(out, "P1\n{} {}", width, rows.len());
    for row in rows {
        let mut line = String::new();
        for b in row.cells() {
            if line.len() + 2 > PBM_LINE_WIDTH {
                out.push_str(line.trim_end());
                out.push('\n');
                line.clear();
            }
            line.push(if b == 1 { '1' } else { '0' });
            line.push(' ');
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagram() {
        let rows: Vec<Configuration> = ["010", "111"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(ascii(&rows), ".#.\n###\n");
        assert_eq!(pbm(&rows), "P1\n3 2\n0 1 0\n1 1 1\n");
    }

    #[test]
    fn long_rows_wrap() {
        let row = Configuration::ones(50);
        let text = pbm(&[row]);
        assert!(text.lines().all(|l| l.len() <= PBM_LINE_WIDTH));
        let pixels: usize = text.lines().skip(2).map(|l| l.split(' ').count()).sum();
        assert_eq!(pixels, 50);
    }
}
