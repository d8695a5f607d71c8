//! Rule numbers: bit `k` of the number is the output on neighbourhood `k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{ParseError, RuleError};
use crate::rule::{LocalRule, MAX_RADIUS};

/// Arbitrary-precision rule number, written in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleNumber(BigUint);

impl RuleNumber {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for RuleNumber {
    fn from(v: u64) -> Self {
        RuleNumber(BigUint::from(v))
    }
}

impl From<BigUint> for RuleNumber {
    fn from(v: BigUint) -> Self {
        RuleNumber(v)
    }
}

impl FromStr for RuleNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::BadRuleNumber(s.to_owned()));
        }
        BigUint::parse_bytes(t.as_bytes(), 10)
            .map(RuleNumber)
            .ok_or_else(|| ParseError::BadRuleNumber(s.to_owned()))
    }
}

impl fmt::Display for RuleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sum_k table(k) * 2^k`.
pub fn wolfram_number(rule: &LocalRule) -> RuleNumber {
    let bytes: Vec<u8> = rule
        .table()
        .chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b << i))
        })
        .collect();
    RuleNumber(BigUint::from_bytes_le(&bytes))
}

/// Inverse of [`wolfram_number`].
pub fn rule_from_number(number: &RuleNumber, radius: u32) -> Result<LocalRule, RuleError> {
    if radius > MAX_RADIUS {
        return Err(RuleError::RadiusTooLarge(radius));
    }
    let entries = 1usize << (2 * radius + 1);
    let bits = number.0.bits();
    if bits > entries as u64 {
        return Err(RuleError::NumberOutOfRange {
            radius,
            bits,
            max: entries as u64,
        });
    }
    let bytes = number.0.to_bytes_le();
    let table = (0..entries)
        .map(|k| bytes.get(k / 8).map_or(0, |byte| (byte >> (k % 8)) & 1))
        .collect();
    LocalRule::new(radius, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn elementary_parity_rule_is_150() {
        // odd-weight neighbourhoods 001, 010, 100, 111: 2 + 4 + 16 + 128
        let xor = LocalRule::from_fn(1, |k| (k.count_ones() & 1) as u8).unwrap();
        assert_eq!(wolfram_number(&xor), RuleNumber::from(150));
        assert_eq!(rule_from_number(&150u64.into(), 1).unwrap(), xor);
        for n in 0..=255u8 {
            assert_eq!(
                wolfram_number(&LocalRule::elementary(n)),
                RuleNumber::from(n as u64)
            );
        }
    }

    #[test]
    fn zero_tables() {
        for r in [0, 1, 2, 4] {
            let zero = LocalRule::from_fn(r, |_| 0).unwrap();
            assert!(wolfram_number(&zero).is_zero());
            assert_eq!(rule_from_number(&RuleNumber::from(0), r).unwrap(), zero);
        }
    }

    #[test]
    fn out_of_range_numbers() {
        assert!(matches!(
            rule_from_number(&256u64.into(), 1),
            Err(RuleError::NumberOutOfRange {
                bits: 9,
                max: 8,
                ..
            })
        ));
        assert!(rule_from_number(&255u64.into(), 1).is_ok());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(
            "  150 ".parse::<RuleNumber>().unwrap(),
            RuleNumber::from(150)
        );
        for bad in ["", "-1", "1e5", "12a", "+3"] {
            assert!(bad.parse::<RuleNumber>().is_err(), "{bad}");
        }
    }

    fn any_rule() -> impl Strategy<Value = LocalRule> {
        prop_oneof![Just(1u32), Just(2u32), Just(4u32)].prop_flat_map(|r| {
            proptest::collection::vec(0u8..=1, 1usize << (2 * r + 1))
                .prop_map(move |t| LocalRule::new(r, t).unwrap())
        })
    }

    proptest! {
        #[test]
        fn numbering_round_trips(rule in any_rule()) {
            let number = wolfram_number(&rule);
            let text = number.to_string();
            let parsed: RuleNumber = text.parse().unwrap();
            prop_assert_eq!(rule_from_number(&parsed, rule.radius()).unwrap(), rule);
        }
    }
}
