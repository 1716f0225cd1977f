//! Non-negative half-integers stored as twice their value.

use std::fmt;
use std::str::FromStr;

use num_traits::Float;

/// A quantum number `j` in `{0, 1/2, 1, 3/2, ...}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(u32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    #[inline]
    pub const fn from_twice(twice: u32) -> Self {
        HalfInt(twice)
    }

    #[inline]
    pub const fn from_int(j: u32) -> Self {
        HalfInt(2 * j)
    }

    /// Returns `2j`.
    #[inline]
    pub const fn twice(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Multiplicity `2j + 1`.
    #[inline]
    pub const fn dim(self) -> u32 {
        self.0 + 1
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.0) * 0.5
    }

    /// `j` as a generic float.
    pub fn value<T: Float>(self) -> T {
        T::from(self.0).unwrap() / (T::one() + T::one())
    }

    /// Semiclassical length `j + 1/2`.
    pub fn length<T: Float>(self) -> T {
        T::from(self.0 + 1).unwrap() / (T::one() + T::one())
    }

    /// Decimal form, e.g. `25.5` or `26`.
    pub fn to_decimal(self) -> String {
        if self.is_integer() {
            format!("{}", self.0 / 2)
        } else {
            format!("{}.5", self.0 / 2)
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a non-negative multiple of 1/2")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseHalfIntError(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| err())?;
            return match den.trim() {
                "1" => num.checked_mul(2).map(HalfInt).ok_or_else(err),
                "2" => Ok(HalfInt(num)),
                _ => Err(err()),
            };
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let whole: u32 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(|_| err())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            return whole
                .checked_mul(2)
                .and_then(|w| w.checked_add(half))
                .map(HalfInt)
                .ok_or_else(err);
        }
        let whole: u32 = t.parse().map_err(|_| err())?;
        whole.checked_mul(2).map(HalfInt).ok_or_else(err)
    }
}

/// Triangle rule: `|a-b| <= c <= a+b` and `a+b+c` integer.
#[inline]
pub fn triad_allowed(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    triad_twice(a.0, b.0, c.0)
}

#[inline]
pub(crate) fn triad_twice(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && c <= a + b && a <= b + c && b <= a + c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn parses_both_notations() {
        assert_eq!(h("51/2"), HalfInt::from_twice(51));
        assert_eq!(h("25.5"), HalfInt::from_twice(51));
        assert_eq!(h("28"), HalfInt::from_int(28));
        assert_eq!(h("28.0"), HalfInt::from_int(28));
        assert_eq!(h(" 3/2 "), HalfInt::from_twice(3));
        assert_eq!(h(".5"), HalfInt::HALF);
        assert_eq!(h("4/1"), HalfInt::from_int(4));
    }

    #[test]
    fn rejects_off_lattice() {
        for bad in ["1/3", "0.25", "-1", "x", "2.51", "", "1/0"] {
            assert!(bad.parse::<HalfInt>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for t in 0..50 {
            let j = HalfInt::from_twice(t);
            assert_eq!(j.to_string().parse::<HalfInt>().unwrap(), j);
            assert_eq!(j.to_decimal().parse::<HalfInt>().unwrap(), j);
        }
    }

    #[test]
    fn triads() {
        assert!(triad_allowed(h("1/2"), h("1/2"), h("1")));
        assert!(!triad_allowed(h("1/2"), h("1/2"), h("1/2")));
        assert!(!triad_allowed(h("5"), h("2"), h("8")));
        assert!(triad_allowed(h("5"), h("2"), h("7")));
        assert!(triad_allowed(h("0"), h("3/2"), h("3/2")));
    }

    #[test]
    fn lengths() {
        assert_eq!(h("100").length::<f64>(), 100.5);
        assert_eq!(h("1/2").value::<f32>(), 0.5);
    }
}
