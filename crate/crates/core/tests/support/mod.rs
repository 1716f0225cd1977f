//! Independent oracles: 6j and 9j by brute-force contraction of 3j symbols.
//!
//! Nothing here touches the library's Racah code. A 3j symbol is
//! `sign · Δ · √(Π (j±m)!) · n / J!` with `n` an integer, so a contraction
//! of 3j symbols in which every `(j, m)` pair occurs twice is
//! `√P · R / D` with `P`, `D` common to all terms and `R` an integer sum.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use wigner3nj::{ExactValue, HalfInt};

fn fact(n: u32) -> u128 {
    (1..=u128::from(n)).product()
}

fn triad(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && c <= a + b && a <= b + c && b <= a + c
}

/// Integer part `n` of `(a b c; m1 m2 -m1-m2)`, sign included; twice-values.
fn three_j_int(a: u32, b: u32, c: u32, m1: i64, m2: i64) -> i128 {
    let (a, b, c) = (i64::from(a), i64::from(b), i64::from(c));
    let m3 = -m1 - m2;
    if m1.abs() > a || m2.abs() > b || m3.abs() > c {
        return 0;
    }
    let j = ((a + b + c) / 2) as u32;
    let lo = 0.max((b - c - m1) / 2).max((a - c + m2) / 2);
    let hi = ((a + b - c) / 2).min((a - m1) / 2).min((b + m2) / 2);
    let mut sum: i128 = 0;
    for k in lo..=hi {
        let args = [
            k,
            (c - b + m1) / 2 + k,
            (c - a - m2) / 2 + k,
            (a + b - c) / 2 - k,
            (a - m1) / 2 - k,
            (b + m2) / 2 - k,
        ];
        let den: u128 = args.iter().map(|&x| fact(x as u32)).product();
        let t = (fact(j) / den) as i128;
        sum += if k % 2 == 0 { t } else { -t };
    }
    if ((a - b - m3) / 2).rem_euclid(2) == 1 {
        -sum
    } else {
        sum
    }
}

/// `Δ²` of a triad and `J!`, both of twice-values.
fn triad_factors(a: u32, b: u32, c: u32) -> (BigRational, u128) {
    let j = (a + b + c) / 2;
    let num = fact((a + b - c) / 2) * fact((a + c - b) / 2) * fact((b + c - a) / 2);
    let delta2 = BigRational::new(BigInt::from(num), BigInt::from(fact(j + 1)));
    (delta2, fact(j))
}

fn pair(j: u32, m: i64) -> u128 {
    let j = i64::from(j);
    fact(((j + m) / 2) as u32) * fact(((j - m) / 2) as u32)
}

fn ms(j: u32) -> impl Iterator<Item = i64> {
    let j = i64::from(j);
    (-j..=j).step_by(2)
}

/// Exact sign and square of a contraction value.
#[derive(Clone, Debug, PartialEq)]
pub struct Signed2 {
    pub negative: bool,
    pub square: BigRational,
}

impl Signed2 {
    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let v = self.square.to_f64().unwrap().sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }
}

struct Acc {
    small: i128,
    big: BigInt,
}

impl Acc {
    fn new() -> Self {
        Acc {
            small: 0,
            big: BigInt::zero(),
        }
    }

    fn add(&mut self, ns: &[i128], f: u128) {
        let mut t: Option<i128> = i128::try_from(f).ok();
        for &n in ns {
            t = t.and_then(|t| t.checked_mul(n));
        }
        match t.and_then(|t| self.small.checked_add(t)) {
            Some(s) => self.small = s,
            None => {
                let mut b = BigInt::from(f);
                for &n in ns {
                    b *= n;
                }
                self.big += b;
            }
        }
    }

    fn total(self) -> BigInt {
        self.big + self.small
    }
}

fn assemble(triads: &[(u32, u32, u32)], r: BigInt) -> Signed2 {
    let mut p = BigRational::one();
    let mut d = BigInt::one();
    for &(a, b, c) in triads {
        let (delta2, jf) = triad_factors(a, b, c);
        p *= delta2;
        d *= BigInt::from(jf);
    }
    let negative = r.is_negative();
    let r = BigRational::from_integer(r);
    let d = BigRational::from_integer(d);
    Signed2 {
        negative,
        square: p * &r * &r / (&d * &d),
    }
}

/// `{j1 j2 j3; j4 j5 j6}` as a sum over magnetic numbers of four 3j symbols.
pub fn six_j_cg(t: [u32; 6]) -> Signed2 {
    let [j1, j2, j3, j4, j5, j6] = t;
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if !triads.iter().all(|&(a, b, c)| triad(a, b, c)) {
        return Signed2 {
            negative: false,
            square: BigRational::zero(),
        };
    }
    let phase_total = i64::from(j1 + j2 + j3 + j4 + j5 + j6);
    let mut acc = Acc::new();
    for m1 in ms(j1) {
        for m2 in ms(j2) {
            let m3 = -m1 - m2;
            if m3.abs() > i64::from(j3) {
                continue;
            }
            for m4 in ms(j4) {
                let m6 = m4 + m2;
                let m5 = m1 + m6;
                if m6.abs() > i64::from(j6) || m5.abs() > i64::from(j5) {
                    continue;
                }
                let ns = [
                    three_j_int(j1, j2, j3, -m1, -m2),
                    three_j_int(j1, j5, j6, m1, -m5),
                    three_j_int(j4, j2, j6, m4, m2),
                    three_j_int(j4, j5, j3, -m4, m5),
                ];
                if ns.contains(&0) {
                    continue;
                }
                // (-1)^{Σ (j - m)}
                let s = (phase_total - (m1 + m2 + m3 + m4 + m5 + m6)) / 2;
                let f = pair(j1, m1) * pair(j2, m2) * pair(j3, m3) * pair(j4, m4) * pair(j5, m5) * pair(j6, m6);
                let mut ns = ns;
                if s.rem_euclid(2) == 1 {
                    ns[0] = -ns[0];
                }
                acc.add(&ns, f);
            }
        }
    }
    assemble(&triads, acc.total())
}

/// `{a b c; d e f; g h i}` as a sum over magnetic numbers of the six 3j
/// symbols of its rows and columns.
pub fn nine_j_cg(t: [u32; 9]) -> Signed2 {
    let [a, b, c, d, e, f, g, h, i] = t;
    let triads = [(a, b, c), (d, e, f), (g, h, i), (a, d, g), (b, e, h), (c, f, i)];
    if !triads.iter().all(|&(x, y, z)| triad(x, y, z)) {
        return Signed2 {
            negative: false,
            square: BigRational::zero(),
        };
    }
    let inside = |m: i64, j: u32| m.abs() <= i64::from(j);
    let mut acc = Acc::new();
    for al in ms(a) {
        for be in ms(b) {
            let ga = -al - be;
            if !inside(ga, c) {
                continue;
            }
            let n1 = three_j_int(a, b, c, al, be);
            if n1 == 0 {
                continue;
            }
            for de in ms(d) {
                let et = -al - de;
                if !inside(et, g) {
                    continue;
                }
                let n4 = three_j_int(a, d, g, al, de);
                if n4 == 0 {
                    continue;
                }
                for ep in ms(e) {
                    let ph = -de - ep;
                    let th = -be - ep;
                    let io = al + be + de + ep;
                    if !inside(ph, f) || !inside(th, h) || !inside(io, i) {
                        continue;
                    }
                    let ns = [
                        n1,
                        three_j_int(d, e, f, de, ep),
                        three_j_int(g, h, i, et, th),
                        n4,
                        three_j_int(b, e, h, be, ep),
                        three_j_int(c, f, i, ga, ph),
                    ];
                    if ns.contains(&0) {
                        continue;
                    }
                    let fm = pair(a, al)
                        * pair(b, be)
                        * pair(c, ga)
                        * pair(d, de)
                        * pair(e, ep)
                        * pair(f, ph)
                        * pair(g, et)
                        * pair(h, th)
                        * pair(i, io);
                    acc.add(&ns, fm);
                }
            }
        }
    }
    assemble(&triads, acc.total())
}

/// Exact rational value of a decimal in scientific notation.
pub fn parse_scientific(s: &str) -> BigRational {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let exp: i64 = exp.parse().unwrap();
    let negative = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        BigRational::from_integer(digits * ten.pow(shift as u32))
    } else {
        BigRational::new(digits, ten.pow((-shift) as u32))
    };
    if negative {
        q = -q;
    }
    q
}

/// True when `v` matches `oracle` to at least `digits` significant digits.
pub fn agrees(v: &ExactValue, oracle: &Signed2, digits: u32) -> bool {
    if oracle.is_zero() || v.is_zero() {
        return oracle.is_zero() && v.is_zero();
    }
    let x = parse_scientific(&v.to_scientific(digits as usize + 15));
    if x.is_negative() != oracle.negative {
        return false;
    }
    // |x - y| / |y| ≈ |x² - y²| / (2 y²)
    let tol = BigRational::new(BigInt::from(2), BigInt::from(10).pow(digits));
    (&x * &x - &oracle.square).abs() <= tol * &oracle.square
}

/// All `(a, b, c)` of twice-values `≤ max` obeying the triangle rule.
pub fn triads(max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if triad(a, b, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Every 9j array with twice-values `≤ max` whose six triads hold.
pub fn nonzero_nine_j_arrays(max: u32) -> Vec<[u32; 9]> {
    let ts = triads(max);
    let third = |x: u32, y: u32| -> Vec<u32> { (0..=max).filter(|&z| triad(x, y, z)).collect() };
    let mut out = Vec::new();
    for &(a, b, c) in &ts {
        for &(d, e, f) in &ts {
            for g in third(a, d) {
                for h in third(b, e) {
                    for i in third(c, f) {
                        if triad(g, h, i) {
                            out.push([a, b, c, d, e, f, g, h, i]);
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

pub fn hs(s: &str) -> Vec<HalfInt> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(h)
        .collect()
}

pub fn twice<const N: usize>(e: &[HalfInt]) -> [u32; N] {
    std::array::from_fn(|k| e[k].twice())
}

pub fn halves<const N: usize>(t: [u32; N]) -> [HalfInt; N] {
    t.map(HalfInt::from_twice)
}
