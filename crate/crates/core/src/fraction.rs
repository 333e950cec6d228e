//! Exact rational parameters.
//!
//! Relaxation thresholds are compared with integer arithmetic only, so a
//! value such as `0.75` is held as `3/4` rather than as a binary float.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative exact fraction, always stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Ratio<u64>);

impl Fraction {
    pub const ONE: Fraction = Fraction(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        Ok(Fraction(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// True iff the value lies in the half-open unit interval `(0, 1]`.
    pub fn in_unit_interval(&self) -> bool {
        self.numer() > 0 && self.numer() <= self.denom()
    }

    /// `ceil(self * x)` computed exactly.
    pub fn ceil_mul(&self, x: u64) -> u64 {
        let num = self.numer() as u128 * x as u128;
        let den = self.denom() as u128;
        num.div_ceil(den) as u64
    }

    /// `floor(x / self)`; `None` when the fraction is zero.
    pub fn floor_div(&self, x: u64) -> Option<u64> {
        if self.numer() == 0 {
            return None;
        }
        let num = x as u128 * self.denom() as u128;
        Some((num / self.numer() as u128).min(u64::MAX as u128) as u64)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `"3/4"`, `"0.75"`, `".75"`, `"1"` and `"1.0"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("cannot parse {s:?} as an exact fraction"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Fraction::new(n, d).map_err(|_| bad());
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.len() > 18
        {
            return Err(bad());
        }
        let denom = 10u64.pow(frac_part.len() as u32);
        let int_value: u64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let frac_value: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        let numer = int_value.checked_mul(denom).and_then(|v| v.checked_add(frac_value)).ok_or_else(bad)?;
        Fraction::new(numer, denom)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("0.75".parse::<Fraction>().unwrap(), Fraction::new(3, 4).unwrap());
        assert_eq!("0.80".parse::<Fraction>().unwrap(), Fraction::new(4, 5).unwrap());
        assert_eq!(".5".parse::<Fraction>().unwrap(), Fraction::new(1, 2).unwrap());
        assert_eq!("1".parse::<Fraction>().unwrap(), Fraction::ONE);
        assert_eq!("1.000".parse::<Fraction>().unwrap(), Fraction::ONE);
        assert_eq!("2/6".parse::<Fraction>().unwrap(), Fraction::new(1, 3).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", ".", "abc", "0.7.5", "-0.5", "1/0", "0,5", "1e-3"] {
            assert!(s.parse::<Fraction>().is_err(), "{s}");
        }
    }

    #[test]
    fn ceil_mul_is_exact_at_boundaries() {
        let three_quarters = Fraction::new(3, 4).unwrap();
        assert_eq!(three_quarters.ceil_mul(4), 3);
        assert_eq!(three_quarters.ceil_mul(5), 4);
        let point_eight = "0.8".parse::<Fraction>().unwrap();
        assert_eq!(point_eight.ceil_mul(10), 8);
        // 0.1 * 30 would round above 3 in binary floating point
        assert_eq!("0.1".parse::<Fraction>().unwrap().ceil_mul(30), 3);
    }

    #[test]
    fn serde_uses_string_form() {
        let f = Fraction::new(3, 4).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "\"3/4\"");
        assert_eq!(serde_json::from_str::<Fraction>(&json).unwrap(), f);
    }
}
