//! Binary fixed-point evaluation of surds and precision certification.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::surd::Surd;

/// `(m, e)` with `m · 2^e` approximating `s` to roughly `bits` significant bits.
///
/// Each term is truncated toward zero, so the error is below one unit of
/// `2^e` per term.
pub(crate) fn fixed_point(s: &Surd, bits: u32) -> (BigInt, i64) {
    let terms = s.terms();
    if terms.is_empty() {
        return (BigInt::zero(), 0);
    }
    let log2 = |t: &(super::surd::Radicand, num_rational::BigRational)| -> i64 {
        let (r, q) = t;
        q.numer().bits() as i64 - q.denom().bits() as i64 + (r.to_biguint().bits() as i64) / 2
    };
    let top = terms.iter().map(log2).max().unwrap();
    let k = i64::from(bits) - top + 2;
    let mut acc = BigInt::zero();
    for (r, q) in terms {
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        let mut n: BigUint = num * num * r.to_biguint();
        let mut d: BigUint = den * den;
        if k >= 0 {
            n <<= (2 * k) as usize;
        } else {
            d <<= (-2 * k) as usize;
        }
        let mag = BigInt::from_biguint(Sign::Plus, (n / d).sqrt());
        if q.numer().is_negative() {
            acc -= mag;
        } else {
            acc += mag;
        }
    }
    (acc, -k)
}

/// `m · 2^e` rounded to `f64`.
pub(crate) fn to_f64(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let b = m.bits() as i64;
    let shift = (b - 64).max(0);
    let top = (m >> shift as usize).to_f64().unwrap();
    ldexp(top, e + shift)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Decimal digits of `|m · 2^e|` truncated to `digits` places, with the
/// sign and the base-ten exponent of the leading digit.
pub(crate) fn decimal(m: &BigInt, e: i64, digits: usize) -> (bool, String, i64) {
    assert!(!m.is_zero());
    let neg = m.is_negative();
    let mag = m.magnitude().clone();
    // floor(log10 |v|) is at least this
    let lower = (((mag.bits() as i64 - 1 + e) as f64) * std::f64::consts::LOG10_2).floor() as i64 - 1;
    let s = digits as i64 + 1 - lower;
    let ten = BigUint::from(10u32);
    let mut n = mag;
    if s >= 0 {
        n *= ten.pow(s as u32);
    }
    if e >= 0 {
        n <<= e as usize;
    } else {
        n >>= (-e) as usize;
    }
    if s < 0 {
        n /= ten.pow((-s) as u32);
    }
    let text = n.to_string();
    let exp10 = text.len() as i64 - 1 - s;
    let mut lead = text;
    lead.truncate(digits);
    (neg, lead, exp10)
}

/// Leading decimal digits shared by two approximations of the same number.
pub(crate) fn agreeing_digits(a: (&BigInt, i64), b: (&BigInt, i64), digits: usize) -> u32 {
    if a.0.is_zero() || b.0.is_zero() {
        return 0;
    }
    let (na, da, ea) = decimal(a.0, a.1, digits);
    let (nb, db, eb) = decimal(b.0, b.1, digits);
    if na != nb || ea != eb {
        return 0;
    }
    da.bytes().zip(db.bytes()).take_while(|(x, y)| x == y).count() as u32
}

/// Scientific notation with `digits` significant digits (truncated).
pub(crate) fn format_scientific(m: &BigInt, e: i64, digits: usize) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let (neg, lead, exp10) = decimal(m, e, digits);
    let sign = if neg { "-" } else { "" };
    let (head, tail) = lead.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}
