//! Wildcard transition patterns and their compilation into rule tables.
//!
//! A pattern list names only the active transitions of a rule. Any
//! neighbourhood not matched by a pattern keeps its centre cell.

use std::fmt;
use std::str::FromStr;

use crate::error::{CompileError, ParseError};
use crate::rule::LocalRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    One,
    Any,
}

impl Symbol {
    fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Any => '*',
        }
    }
}

/// A neighbourhood pattern over `{0, 1, *}` with the output it produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionPattern {
    pub cells: Vec<Symbol>,
    pub output: u8,
    pub name: Option<String>,
}

impl TransitionPattern {
    /// Parses the cell string; braces around the centre cell are ignored,
    /// so `*111{0}0***` and `*11100***` are the same pattern.
    pub fn parse(cells: &str, output: u8, name: Option<&str>) -> Result<Self, ParseError> {
        let cells = cells
            .chars()
            .filter(|c| !matches!(c, '{' | '}' | ' '))
            .map(|c| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                '*' => Ok(Symbol::Any),
                other => Err(ParseError::PatternLine {
                    line: 0,
                    message: format!("invalid pattern symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            cells,
            output: output & 1,
            name: name.map(str::to_owned),
        })
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    /// `(care, value)` such that neighbourhood `k` matches iff `k & care == value`.
    fn masks(&self) -> (u32, u32) {
        let w = self.cells.len();
        self.cells
            .iter()
            .enumerate()
            .fold((0, 0), |(care, value), (i, s)| {
                let bit = 1u32 << (w - 1 - i);
                match s {
                    Symbol::Zero => (care | bit, value),
                    Symbol::One => (care | bit, value | bit),
                    Symbol::Any => (care, value),
                }
            })
    }

    pub fn matches(&self, neighbourhood: u32) -> bool {
        let (care, value) = self.masks();
        neighbourhood & care == value
    }

    fn label(&self, index: usize) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("#{}", index + 1))
    }
}

impl fmt::Display for TransitionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        for s in &self.cells {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, " -> {}", self.output)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompileWarning {
    /// The pattern outputs the centre cell it matches, so it changes nothing.
    RedundantActive {
        pattern: String,
        neighbourhood: String,
    },
}

impl fmt::Display for CompileWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileWarning::RedundantActive {
                pattern,
                neighbourhood,
            } => write!(
                f,
                "pattern {pattern} is inert on neighbourhood {neighbourhood}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compilation {
    pub rule: LocalRule,
    pub warnings: Vec<CompileWarning>,
}

pub(crate) fn neighbourhood_string(k: u32, width: u32) -> String {
    (0..width)
        .rev()
        .map(|i| if (k >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Builds the full table of a radius-`radius` rule from its active patterns.
///
/// Overlapping patterns must agree; there is no precedence.
pub fn compile_patterns(
    patterns: &[TransitionPattern],
    radius: u32,
) -> Result<Compilation, CompileError> {
    let width = 2 * radius as usize + 1;
    if let Some((i, p)) = patterns
        .iter()
        .enumerate()
        .find(|(_, p)| p.width() != width)
    {
        return Err(CompileError::PatternLength {
            name: p.label(i),
            radius,
            expected: width,
            found: p.width(),
        });
    }
    let masks: Vec<(u32, u32)> = patterns.iter().map(TransitionPattern::masks).collect();
    let mut table = Vec::with_capacity(1 << width);
    let mut warnings = Vec::new();
    for k in 0..1u32 << width {
        let centre = ((k >> radius) & 1) as u8;
        let mut hit: Option<usize> = None;
        for (i, &(care, value)) in masks.iter().enumerate() {
            if k & care != value {
                continue;
            }
            let p = &patterns[i];
            if p.output == centre {
                warnings.push(CompileWarning::RedundantActive {
                    pattern: p.label(i),
                    neighbourhood: neighbourhood_string(k, width as u32),
                });
            }
            match hit {
                Some(j) if patterns[j].output != p.output => {
                    return Err(CompileError::Conflict {
                        neighbourhood: neighbourhood_string(k, width as u32),
                        first: patterns[j].label(j),
                        second: p.label(i),
                    });
                }
                Some(_) => {}
                None => hit = Some(i),
            }
        }
        table.push(hit.map_or(centre, |i| patterns[i].output));
    }
    Ok(Compilation {
        rule: LocalRule::new(radius, table)?,
        warnings,
    })
}

/// A parsed pattern file: one pattern per line, `[name:] cells -> bit`,
/// `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFile {
    pub radius: u32,
    pub patterns: Vec<TransitionPattern>,
}

impl PatternFile {
    pub fn compile(&self) -> Result<Compilation, CompileError> {
        compile_patterns(&self.patterns, self.radius)
    }
}

impl FromStr for PatternFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut patterns = Vec::new();
        let mut width: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |message: String| ParseError::PatternLine { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| err("expected `cells -> bit`".into()))?;
            let (name, cells) = match lhs.split_once(':') {
                Some((n, c)) => (Some(n.trim()), c.trim()),
                None => (None, lhs.trim()),
            };
            let output = match rhs.trim() {
                "0" => 0,
                "1" => 1,
                other => return Err(err(format!("output must be 0 or 1, got {other:?}"))),
            };
            let p = TransitionPattern::parse(cells, output, name).map_err(|e| match e {
                ParseError::PatternLine { message, .. } => err(message),
                other => other,
            })?;
            if p.width() % 2 == 0 {
                return Err(err(format!("pattern width {} is even", p.width())));
            }
            match width {
                Some(w) if w != p.width() => {
                    return Err(err(format!("pattern width {} differs from {w}", p.width())))
                }
                _ => width = Some(p.width()),
            }
            patterns.push(p);
        }
        let width = width.ok_or(ParseError::NoPatterns)?;
        Ok(Self {
            radius: (width as u32 - 1) / 2,
            patterns,
        })
    }
}

impl fmt::Display for PatternFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.patterns {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Radius of the BFO rule.
pub const BFO_RADIUS: u32 = 4;

/// Wolfram number of BFO.
pub const BFO_RULE_NUMBER: &str = "12766019579927887748828308783632125137208948629571434199404394002671695991869267727072917454377539194754200976283425175983876539715064584172642413634846720";

const BFO_MINIMIZED: [(&str, u8); 11] = [
    ("*111{0}0***", 1),
    ("1110{0}****", 1),
    ("*001{0}0***", 1),
    ("0010{0}****", 1),
    ("**01{0}100*", 1),
    ("1110{1}****", 0),
    ("*010{1}*0**", 0),
    ("**01{1}0***", 0),
    ("***1{1}0110", 0),
    ("***0{1}10**", 0),
    ("****{1}101*", 0),
];

const BFO_EXPLICIT: [(&str, &str, u8); 12] = [
    ("T1", "*111{0}0***", 1),
    ("T2", "1110{0}****", 1),
    ("T3", "*001{0}0***", 1),
    ("T4", "0010{0}****", 1),
    ("T7", "**01{0}100*", 1),
    ("T5", "***0{1}10**", 0),
    ("T6", "**01{1}0***", 0),
    ("T8", "*010{1}00**", 0),
    ("T9", "***1{1}101*", 0),
    ("T10", "1110{1}0***", 0),
    ("T11", "1110{1}11**", 0),
    ("T12", "**11{1}0110", 0),
];

/// The compact eleven-pattern form of BFO.
pub fn bfo_minimized() -> Vec<TransitionPattern> {
    BFO_MINIMIZED
        .iter()
        .enumerate()
        .map(|(i, (cells, out))| {
            let name = format!("M{}", i + 1);
            TransitionPattern::parse(cells, *out, Some(&name)).expect("static pattern")
        })
        .collect()
}

/// The twelve named transitions T1..T12 of BFO, listed so that each transition
/// sits next to the one it pairs with.
pub fn bfo_explicit() -> Vec<TransitionPattern> {
    BFO_EXPLICIT
        .iter()
        .map(|(name, cells, out)| {
            TransitionPattern::parse(cells, *out, Some(name)).expect("static pattern")
        })
        .collect()
}

/// BFO compiled from its compact form.
pub fn bfo() -> LocalRule {
    compile_patterns(&bfo_minimized(), BFO_RADIUS)
        .expect("BFO patterns are consistent")
        .rule
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> u32 {
        u32::from_str_radix(s, 2).unwrap()
    }

    #[test]
    fn explicit_table_entry() {
        let c = compile_patterns(&bfo_explicit(), 4).unwrap();
        assert!(c.warnings.is_empty());
        let k = n("111100000");
        let explicit = bfo_explicit();
        let t1 = explicit
            .iter()
            .find(|p| p.name.as_deref() == Some("T1"))
            .unwrap();
        assert!(t1.matches(k));
        assert_eq!(c.rule.output(k), 1);
    }

    #[test]
    fn transcriptions_contain_published_rows() {
        let t9 = TransitionPattern::parse("***1{1}101*", 0, Some("T9")).unwrap();
        assert!(bfo_explicit().contains(&t9));
        let row6 = TransitionPattern::parse("1110{1}****", 0, Some("M6")).unwrap();
        assert!(bfo_minimized().contains(&row6));
        assert_eq!(bfo_minimized().len(), 11);
        assert_eq!(bfo_explicit().len(), 12);
    }

    #[test]
    fn empty_list_is_identity() {
        let c = compile_patterns(&[], 1).unwrap();
        assert_eq!(c.rule, LocalRule::identity(1).unwrap());
    }

    #[test]
    fn conflicting_patterns_are_rejected() {
        let a = TransitionPattern::parse("1****", 0, Some("A")).unwrap();
        let b = TransitionPattern::parse("***1*", 1, Some("B")).unwrap();
        let err = compile_patterns(&[a, b], 2).unwrap_err();
        match err {
            CompileError::Conflict {
                neighbourhood,
                first,
                second,
            } => {
                assert_eq!((first.as_str(), second.as_str()), ("A", "B"));
                let k = n(&neighbourhood);
                assert!(k & 0b10000 != 0 && k & 0b00010 != 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        // 10010 is one of the clashing neighbourhoods
        let a = TransitionPattern::parse("1****", 0, Some("A")).unwrap();
        let b = TransitionPattern::parse("1**1*", 1, Some("B")).unwrap();
        assert!(a.matches(n("10010")) && b.matches(n("10010")));
        assert!(compile_patterns(&[a, b], 2).is_err());
    }

    #[test]
    fn inert_patterns_warn() {
        let p = TransitionPattern::parse("*1*", 1, None).unwrap();
        let c = compile_patterns(&[p], 1).unwrap();
        assert_eq!(c.warnings.len(), 4);
        assert_eq!(c.rule, LocalRule::identity(1).unwrap());
    }

    #[test]
    fn wrong_width_is_rejected() {
        let p = TransitionPattern::parse("***", 1, Some("short")).unwrap();
        assert!(matches!(
            compile_patterns(&[p], 2),
            Err(CompileError::PatternLength {
                expected: 5,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn pattern_file_round_trip() {
        let text = "# BFO, explicit form\n\nT1: *111{0}0*** -> 1\n  1110{0}**** -> 1 # T2\n";
        let file: PatternFile = text.parse().unwrap();
        assert_eq!(file.radius, 4);
        assert_eq!(file.patterns.len(), 2);
        assert_eq!(file.patterns[0].name.as_deref(), Some("T1"));
        let again: PatternFile = file.to_string().parse().unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn pattern_file_errors_carry_line_numbers() {
        let bad = "*111{0}0*** -> 1\n*11 -> 1\n";
        assert!(matches!(
            bad.parse::<PatternFile>(),
            Err(ParseError::PatternLine { line: 2, .. })
        ));
        assert!(matches!(
            "x -> 1".parse::<PatternFile>(),
            Err(ParseError::PatternLine { line: 1, .. })
        ));
        assert_eq!(
            "# nothing\n".parse::<PatternFile>(),
            Err(ParseError::NoPatterns)
        );
        assert!("1*1 -> 2".parse::<PatternFile>().is_err());
    }
}
