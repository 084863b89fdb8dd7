//! Exact nonnegative rational rates `h/n`.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rate of `h` symbols over `n` time units, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rate(Ratio<i64>);

impl Rate {
    pub const ZERO: Rate = Rate(Ratio::new_raw(0, 1));
    pub const ONE: Rate = Rate(Ratio::new_raw(1, 1));

    /// Panics if `n == 0` or `h < 0`.
    pub fn new(h: i64, n: i64) -> Rate {
        assert!(n != 0, "zero denominator");
        let r = Ratio::new(h, n);
        assert!(r >= Ratio::zero(), "negative rate {h}/{n}");
        Rate(r)
    }

    pub fn integer(h: u64) -> Rate {
        Rate(Ratio::from_integer(h as i64))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// Converts an exact big rational; `None` if it is negative or does not fit.
    pub fn from_big(r: &BigRational) -> Option<Rate> {
        let n = r.numer().to_i64()?;
        let d = r.denom().to_i64()?;
        (n >= 0 && d > 0).then(|| Rate(Ratio::new(n, d)))
    }

    /// Six-digit decimal rendering, for display only.
    pub fn decimal(&self) -> String {
        format!("{:.6}", self.to_f64())
    }
}

impl From<u64> for Rate {
    fn from(h: u64) -> Rate {
        Rate::integer(h)
    }
}

impl Add for Rate {
    type Output = Rate;
    fn add(self, rhs: Rate) -> Rate {
        Rate(self.0 + rhs.0)
    }
}

/// Saturates at zero.
impl Sub for Rate {
    type Output = Rate;
    fn sub(self, rhs: Rate) -> Rate {
        let d = self.0 - rhs.0;
        if d < Ratio::zero() {
            Rate::ZERO
        } else {
            Rate(d)
        }
    }
}

impl Mul for Rate {
    type Output = Rate;
    fn mul(self, rhs: Rate) -> Rate {
        Rate(self.0 * rhs.0)
    }
}

impl Div for Rate {
    type Output = Rate;
    fn div(self, rhs: Rate) -> Rate {
        assert!(!rhs.0.is_zero(), "division by zero rate");
        Rate(self.0 / rhs.0)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rate {
    type Err = String;

    fn from_str(s: &str) -> Result<Rate, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad rate {s:?}: {e}"));
        let (h, n) = match s.split_once('/') {
            Some((h, n)) => (parse(h)?, parse(n)?),
            None => (parse(s)?, 1),
        };
        if n <= 0 || h < 0 {
            return Err(format!("bad rate {s:?}"));
        }
        Ok(Rate::new(h, n))
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rate, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rate::new(6, 4);
        assert_eq!((r.numer(), r.denom()), (3, 2));
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(Rate::new(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/2", "7", "0", "9/5"] {
            assert_eq!(s.parse::<Rate>().unwrap().to_string(), s);
        }
        assert!("1/0".parse::<Rate>().is_err());
        assert!("-1/2".parse::<Rate>().is_err());
    }

    #[test]
    fn exact_ordering() {
        assert!(Rate::new(4, 3) < Rate::new(3, 2));
        assert_eq!(Rate::new(1, 3) + Rate::new(1, 6), Rate::new(1, 2));
        assert_eq!(Rate::new(1, 3) - Rate::new(1, 2), Rate::ZERO);
    }
}
