//! Exact fixed-point profit values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Number of micro-units in one profit unit.
pub const SCALE: i64 = 1_000_000;
const FRACTION_DIGITS: usize = 6;

/// A profit amount in micro-units (10^-6 of one unit).
///
/// Product profits are non-negative; sums and differences may be signed.
/// All arithmetic is integer arithmetic, so comparisons against a target are
/// exact on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Money(i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoneyParseError {
    #[error("empty amount")]
    Empty,
    #[error("invalid amount `{0}`")]
    Invalid(String),
    #[error("amount `{0}` has more than 6 fractional digits")]
    TooPrecise(String),
    #[error("amount `{0}` is out of range")]
    Overflow(String),
}

impl Money {
    pub const ZERO: Money = Money(0);

    pub const fn from_micros(micros: i64) -> Self {
        Money(micros)
    }

    /// Whole units, e.g. `Money::from_units(31)` is 31,000,000 micro-units.
    pub const fn from_units(units: i64) -> Self {
        Money(units * SCALE)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn checked_add(self, other: Money) -> Option<Money> {
        self.0.checked_add(other.0).map(Money)
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Mul<i64> for Money {
    type Output = Money;
    fn mul(self, rhs: i64) -> Money {
        Money(self.0 * rhs)
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Money> for Money {
    fn sum<I: Iterator<Item = &'a Money>>(iter: I) -> Money {
        iter.copied().sum()
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let scale = SCALE as u64;
        let (int, frac) = (abs / scale, abs % scale);
        if frac == 0 {
            write!(f, "{sign}{int}")
        } else {
            let digits = format!("{frac:06}");
            write!(f, "{sign}{int}.{}", digits.trim_end_matches('0'))
        }
    }
}

impl FromStr for Money {
    type Err = MoneyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(MoneyParseError::Empty);
        }
        let invalid = || MoneyParseError::Invalid(s.to_string());
        let overflow = || MoneyParseError::Overflow(s.to_string());

        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let mut micros: i64 = int_part
            .parse::<i64>()
            .map_err(|_| overflow())?
            .checked_mul(SCALE)
            .ok_or_else(overflow)?;
        if let Some(frac) = frac_part {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            if frac.len() > FRACTION_DIGITS {
                return Err(MoneyParseError::TooPrecise(s.to_string()));
            }
            let padded = format!("{frac:0<6}");
            let frac_micros: i64 = padded.parse().map_err(|_| invalid())?;
            micros = micros.checked_add(frac_micros).ok_or_else(overflow)?;
        }
        Ok(Money(if negative { -micros } else { micros }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn whole_units() {
        let m: Money = "31".parse().unwrap();
        assert_eq!(m.micros(), 31_000_000);
        assert_eq!(m.to_string(), "31");
    }

    #[test]
    fn fractions() {
        assert_eq!("0.5".parse::<Money>().unwrap().micros(), 500_000);
        assert_eq!("2.000001".parse::<Money>().unwrap().micros(), 2_000_001);
        assert_eq!("-1.25".parse::<Money>().unwrap().to_string(), "-1.25");
        assert_eq!(Money::from_micros(-3).to_string(), "-0.000003");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!("".parse::<Money>(), Err(MoneyParseError::Empty));
        assert!(matches!(
            "1.1234567".parse::<Money>(),
            Err(MoneyParseError::TooPrecise(_))
        ));
        for bad in ["abc", "1.", ".5", "+1", "1e3", "- 1", "1.2.3"] {
            assert!(bad.parse::<Money>().is_err(), "{bad}");
        }
        assert!(matches!(
            "99999999999999999999".parse::<Money>(),
            Err(MoneyParseError::Overflow(_))
        ));
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(micros in -(i64::MAX / 2)..(i64::MAX / 2)) {
            let m = Money::from_micros(micros);
            prop_assert_eq!(m.to_string().parse::<Money>().unwrap(), m);
        }
    }
}
