//! Exact 6j, 9j, 12j and 15j symbols.
//!
//! Every symbol is computed as a finite sum `Σ q_k √r_k` in exact rational
//! arithmetic (see [`Surd`]) and then materialized to a binary fixed-point
//! value whose leading decimal digits are certified by recomputing at twice
//! the precision.

mod bigfloat;
mod engine;
mod factorial;
mod racah;
mod surd;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use engine::{CacheConfig, Engine, EngineConfig};
pub use surd::{Radicand, Surd};

use crate::error::ArityError;
use crate::halfint::HalfInt;

/// Minimum number of decimal digits every returned value carries.
pub const MIN_STABLE_DIGITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    SixJ,
    NineJ,
    TwelveJFirst,
    FifteenJFirst,
}

impl SymbolKind {
    pub const fn arity(self) -> usize {
        match self {
            SymbolKind::SixJ => 6,
            SymbolKind::NineJ => 9,
            SymbolKind::TwelveJFirst => 12,
            SymbolKind::FifteenJFirst => 15,
        }
    }

    /// Index triples of the entries that must satisfy the triangle rule.
    pub const fn triads(self) -> &'static [(usize, usize, usize)] {
        match self {
            SymbolKind::SixJ => &[(0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2)],
            SymbolKind::NineJ => &[(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8)],
            SymbolKind::TwelveJFirst => &[
                (0, 1, 2),
                (4, 5, 6),
                (0, 4, 8),
                (1, 5, 9),
                (10, 2, 3),
                (10, 8, 7),
                (3, 6, 11),
                (7, 9, 11),
            ],
            SymbolKind::FifteenJFirst => &[
                (0, 1, 2),
                (5, 6, 7),
                (0, 5, 10),
                (1, 6, 11),
                (12, 2, 3),
                (12, 10, 8),
                (13, 3, 4),
                (13, 8, 9),
                (4, 7, 14),
                (9, 11, 14),
            ],
        }
    }
}

/// Symbol kind plus its entries, row-major.
///
/// - 6j: `{j1 j2 j3; j4 j5 j6}`
/// - 9j: `{j1 j2 j12; j3 j4 j34; j13 j24 j5}`
/// - 12j: `{s1 j2 j12 j125; j3 j4 j34 j135; j13 j24 s5 j6}`
/// - 15j: `{j1 j2 j12 j125 j1256; s3 j4 j34 j135 j1356; j13 j24 s5 s6 j7}`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolArgs {
    kind: SymbolKind,
    entries: Vec<HalfInt>,
}

impl SymbolArgs {
    pub fn new(kind: SymbolKind, entries: Vec<HalfInt>) -> Result<Self, ArityError> {
        if entries.len() != kind.arity() {
            return Err(ArityError {
                expected: kind.arity(),
                found: entries.len(),
            });
        }
        Ok(SymbolArgs { kind, entries })
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn entries(&self) -> &[HalfInt] {
        &self.entries
    }

    /// Working precision used when none is requested: `max(256, 16 Σ 2j)`.
    pub fn default_precision(&self) -> u32 {
        default_precision(&self.entries)
    }

    fn twice<const N: usize>(&self) -> [u32; N] {
        std::array::from_fn(|k| self.entries[k].twice())
    }
}

fn default_precision(entries: &[HalfInt]) -> u32 {
    let sum: u32 = entries.iter().map(|j| j.twice()).sum();
    (16 * sum).max(256)
}

/// A real number known exactly, with a certified decimal expansion.
#[derive(Clone, Debug)]
pub struct ExactValue {
    surd: Surd,
    mantissa: BigInt,
    exponent: i64,
    precision_bits: u32,
    stable_digits: u32,
}

impl ExactValue {
    /// Materializes `surd` with at least `bits` of precision, doubling until
    /// [`MIN_STABLE_DIGITS`] digits survive a further doubling.
    pub fn from_surd(surd: Surd, bits: u32) -> Self {
        if surd.is_zero() {
            return ExactValue {
                surd,
                mantissa: BigInt::zero(),
                exponent: 0,
                precision_bits: bits,
                stable_digits: u32::MAX,
            };
        }
        let mut p = bits.max(64);
        loop {
            let (m, e) = bigfloat::fixed_point(&surd, p);
            let (m2, e2) = bigfloat::fixed_point(&surd, 2 * p);
            let width = (f64::from(p) * std::f64::consts::LOG10_2) as usize + 2;
            let stable = bigfloat::agreeing_digits((&m, e), (&m2, e2), width);
            if stable >= MIN_STABLE_DIGITS {
                return ExactValue {
                    surd,
                    mantissa: m,
                    exponent: e,
                    precision_bits: p,
                    stable_digits: stable,
                };
            }
            p *= 2;
        }
    }

    pub fn zero() -> Self {
        ExactValue::from_surd(Surd::zero(), 256)
    }

    /// Recomputes at a new working precision.
    pub fn with_precision(&self, bits: u32) -> Self {
        ExactValue::from_surd(self.surd.clone(), bits)
    }

    pub fn is_zero(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn surd(&self) -> &Surd {
        &self.surd
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Decimal digits unchanged under precision doubling; `u32::MAX` for an
    /// exact zero.
    pub fn stable_digits(&self) -> u32 {
        self.stable_digits
    }

    pub fn to_f64(&self) -> f64 {
        bigfloat::to_f64(&self.mantissa, self.exponent)
    }

    pub fn signum(&self) -> i32 {
        self.surd.signum()
    }

    /// Scientific notation truncated to `digits` significant digits.
    pub fn to_scientific(&self, digits: usize) -> String {
        bigfloat::format_scientific(&self.mantissa, self.exponent, digits)
    }

    /// All certified digits.
    pub fn certified(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.to_scientific(self.stable_digits as usize)
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        self.surd == other.surd
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(MIN_STABLE_DIGITS as usize);
        if self.is_zero() {
            return write!(f, "0");
        }
        f.write_str(&self.to_scientific(digits.min(self.stable_digits as usize)))
    }
}

fn twice<const N: usize>(e: &[HalfInt; N]) -> [u32; N] {
    e.map(HalfInt::twice)
}

impl Engine {
    pub fn evaluate(&self, args: &SymbolArgs) -> ExactValue {
        self.evaluate_with_precision(args, args.default_precision())
    }

    pub fn evaluate_with_precision(&self, args: &SymbolArgs, bits: u32) -> ExactValue {
        let s = match args.kind {
            SymbolKind::SixJ => (*self.six_j(args.twice())).clone(),
            SymbolKind::NineJ => (*self.nine_j(args.twice())).clone(),
            SymbolKind::TwelveJFirst => self.twelve_j(args.twice()),
            SymbolKind::FifteenJFirst => self.fifteen_j(args.twice()),
        };
        ExactValue::from_surd(s, bits)
    }
}

/// `{j1 j2 j3; j4 j5 j6}`.
pub fn six_j(e: [HalfInt; 6]) -> ExactValue {
    let s = Engine::global().six_j(twice(&e));
    ExactValue::from_surd((*s).clone(), default_precision(&e))
}

/// `{j1 j2 j12; j3 j4 j34; j13 j24 j5}`.
pub fn nine_j(e: [HalfInt; 9]) -> ExactValue {
    let s = Engine::global().nine_j(twice(&e));
    ExactValue::from_surd((*s).clone(), default_precision(&e))
}

/// `{s1 j2 j12 j125; j3 j4 j34 j135; j13 j24 s5 j6}`.
pub fn twelve_j_first(e: [HalfInt; 12]) -> ExactValue {
    let s = Engine::global().twelve_j(twice(&e));
    ExactValue::from_surd(s, default_precision(&e))
}

/// `{j1 j2 j12 j125 j1256; s3 j4 j34 j135 j1356; j13 j24 s5 s6 j7}`.
pub fn fifteen_j_first(e: [HalfInt; 15]) -> ExactValue {
    let s = Engine::global().fifteen_j(twice(&e));
    ExactValue::from_surd(s, default_precision(&e))
}

/// Dispatches on [`SymbolArgs::kind`] using the shared engine.
pub fn evaluate(args: &SymbolArgs) -> ExactValue {
    Engine::global().evaluate(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs<const N: usize>(s: &str) -> [HalfInt; N] {
        let v: Vec<HalfInt> = s.split(',').map(|x| x.parse().unwrap()).collect();
        v.try_into().unwrap()
    }

    #[test]
    fn six_j_examples() {
        let v = six_j(hs("1,1,1,1,1,1"));
        assert_eq!(v.to_scientific(35), "1.6666666666666666666666666666666666e-1");
        let v = six_j(hs("2,3,4,0,4,3"));
        assert!((v.to_f64() + 7f64.sqrt() / 21.0).abs() < 1e-16);
        let v = six_j(hs("1,2,5,1,1,1"));
        assert!(v.is_zero());
        assert_eq!(v.stable_digits(), u32::MAX);
    }

    #[test]
    fn nine_j_examples() {
        let v = nine_j(hs("1,1,2,0,1,1,1,1,1"));
        assert_eq!(v.to_scientific(32), "5.5555555555555555555555555555555e-2");
        assert!(nine_j(hs("1,1,3,0,1,1,1,1,1")).is_zero());
    }

    #[test]
    fn nine_j_golden_one_small_family() {
        let v = nine_j(hs("51/2,53/2,28,1/2,47/2,24,25,27,27"));
        assert_eq!(v.to_scientific(40), "-3.991568888958518852523845055744332718772e-5");
        assert!(v.stable_digits() >= MIN_STABLE_DIGITS);
    }

    #[test]
    fn twelve_j_golden_family() {
        let v = twelve_j_first(hs("1/2,201/2,100,101,213/2,199/2,117,105,106,98,1,110"));
        assert_eq!(v.to_scientific(35), "5.9809715467427416110200880020426578e-10");
    }

    #[test]
    fn fifteen_j_golden_family() {
        let v = fifteen_j_first(hs(
            "203/2,207/2,96,97,98,3/2,199/2,100,100,101,101,108,1,1,102",
        ));
        assert_eq!(v.to_scientific(35), "-3.6875002035761646207326951913786496e-12");
    }

    #[test]
    fn selection_rule_zeros() {
        assert!(twelve_j_first(hs("0,1,2,2,1,1,1,1,1,1,0,1")).is_zero());
        assert!(fifteen_j_first(hs("1,1,3,3,3,0,1,1,1,1,1,1,0,0,1")).is_zero());
    }

    #[test]
    fn arity_checked() {
        assert!(SymbolArgs::new(SymbolKind::NineJ, vec![HalfInt::ONE; 6]).is_err());
        let a = SymbolArgs::new(SymbolKind::SixJ, vec![HalfInt::ONE; 6]).unwrap();
        assert_eq!(a.default_precision(), 256);
        assert_eq!(evaluate(&a).to_f64(), 1.0 / 6.0);
    }

    #[test]
    fn doubling_keeps_certified_digits() {
        let v = nine_j(hs("201/2,205/2,89,3/2,197/2,99,100,92,110"));
        let w = v.with_precision(2 * v.precision_bits());
        let n = v.stable_digits() as usize;
        assert_eq!(v.to_scientific(n), w.to_scientific(n));
    }
}
