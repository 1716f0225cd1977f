//! Exact sums `Σ q_k √r_k` with rational `q_k` and squarefree integer `r_k`.
//!
//! Distinct squarefree radicands are linearly independent over the
//! rationals, so the normalized term list is canonical and a symbol is
//! zero exactly when the list is empty.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Squarefree positive integer as its ascending list of prime factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand(Vec<u32>);

impl Radicand {
    pub fn one() -> Self {
        Radicand(Vec::new())
    }

    #[cfg(test)]
    pub(crate) fn from_primes(primes: Vec<u32>) -> Self {
        debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        Radicand(primes)
    }

    pub fn primes(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &p| acc * p)
    }

    /// `√self · √other = common · √rest`.
    fn mul(&self, other: &Radicand) -> (BigUint, Radicand) {
        let (a, b) = (&self.0, &other.0);
        let mut common = BigUint::one();
        let mut rest = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut k) = (0, 0);
        while i < a.len() && k < b.len() {
            match a[i].cmp(&b[k]) {
                Ordering::Less => {
                    rest.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    rest.push(b[k]);
                    k += 1;
                }
                Ordering::Equal => {
                    common *= a[i];
                    i += 1;
                    k += 1;
                }
            }
        }
        rest.extend_from_slice(&a[i..]);
        rest.extend_from_slice(&b[k..]);
        (common, Radicand(rest))
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biguint())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    // Sorted by radicand, no zero coefficients.
    terms: Vec<(Radicand, BigRational)>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: Vec::new() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Surd::term(q, Radicand::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Surd::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn term(q: BigRational, r: Radicand) -> Self {
        if q.is_zero() {
            Surd::zero()
        } else {
            Surd { terms: vec![(r, q)] }
        }
    }

    /// `√(n/d)` for a positive rational given by its prime exponents.
    ///
    /// `exponents[k]` is the (possibly negative) power of `primes[k]`.
    pub(crate) fn sqrt_of_factored(primes: &[u32], exponents: &[i32]) -> Self {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut rad = Vec::new();
        for (&p, &e) in primes.iter().zip(exponents) {
            // p^e = p^(2f) · p^r with r in {0, 1}
            let f = e.div_euclid(2);
            if e.rem_euclid(2) == 1 {
                rad.push(p);
            }
            match f.cmp(&0) {
                Ordering::Greater => num *= BigUint::from(p).pow(f as u32),
                Ordering::Less => den *= BigUint::from(p).pow((-f) as u32),
                Ordering::Equal => {}
            }
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        Surd::term(q, Radicand(rad))
    }

    /// `√(n/d)`; `d` must be nonzero.
    pub fn sqrt_ratio(n: u64, d: u64) -> Self {
        assert!(d != 0, "zero denominator");
        if n == 0 {
            return Surd::zero();
        }
        let mut exps: Vec<(u32, i32)> = Vec::new();
        for (mut m, sign) in [(n, 1), (d, -1)] {
            let mut p = 2u64;
            while p * p <= m {
                while m % p == 0 {
                    push_exp(&mut exps, p as u32, sign);
                    m /= p;
                }
                p += 1;
            }
            if m > 1 {
                push_exp(&mut exps, u32::try_from(m).expect("prime factor above u32"), sign);
            }
        }
        exps.sort_unstable();
        let (primes, e): (Vec<u32>, Vec<i32>) = exps.into_iter().unzip();
        Surd::sqrt_of_factored(&primes, &e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Radicand, BigRational)] {
        &self.terms
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * q)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        match n {
            0 => Surd::zero(),
            1 => self.clone(),
            -1 => self.neg(),
            _ => {
                let n = BigInt::from(n);
                Surd {
                    terms: self.terms.iter().map(|(r, c)| (r.clone(), c * &n)).collect(),
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        Surd {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Surd) {
        for (r, c) in &other.terms {
            self.add_term(r, c.clone());
        }
    }

    fn add_term(&mut self, r: &Radicand, c: BigRational) {
        match self.terms.binary_search_by(|(k, _)| k.cmp(r)) {
            Ok(i) => {
                let sum = &self.terms[i].1 + c;
                if sum.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = sum;
                }
            }
            Err(i) => {
                if !c.is_zero() {
                    self.terms.insert(i, (r.clone(), c));
                }
            }
        }
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        if let ([(ra, ca)], [(rb, cb)]) = (self.terms.as_slice(), other.terms.as_slice()) {
            let (common, rest) = ra.mul(rb);
            return Surd {
                terms: vec![(rest, times(ca * cb, common))],
            };
        }
        let mut out = Surd::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                let (common, rest) = ra.mul(rb);
                out.add_term(&rest, times(ca * cb, common));
            }
        }
        out
    }

    /// `w · Π factors`, reducing the coefficient once when every factor is a
    /// single term.
    pub fn product(factors: &[&Surd], w: i64) -> Surd {
        if w == 0 || factors.iter().any(|f| f.is_zero()) {
            return Surd::zero();
        }
        if factors.iter().all(|f| f.terms.len() == 1) {
            let mut num = BigInt::from(w);
            let mut den = BigInt::one();
            let mut rad = Radicand::one();
            for f in factors {
                let (r, c) = &f.terms[0];
                let (common, rest) = rad.mul(r);
                num *= c.numer();
                if !common.is_one() {
                    num *= BigInt::from(common);
                }
                den *= c.denom();
                rad = rest;
            }
            return Surd::term(BigRational::new(num, den), rad);
        }
        let mut acc = Surd::from_integer(w);
        for f in factors {
            acc = acc.mul(f);
        }
        acc
    }

    /// Sign of the represented real number.
    pub fn signum(&self) -> i32 {
        match self.terms.len() {
            0 => 0,
            1 => {
                if self.terms[0].1.is_positive() {
                    1
                } else {
                    -1
                }
            }
            _ => {
                // Mixed radicands: decide numerically at growing precision.
                let mut bits = 128;
                loop {
                    let (m, _) = super::bigfloat::fixed_point(self, bits);
                    if m.bits() > 8 {
                        return if m.is_positive() { 1 } else { -1 };
                    }
                    bits *= 2;
                }
            }
        }
    }
}

fn times(c: BigRational, common: BigUint) -> BigRational {
    if common.is_one() {
        c
    } else {
        c * BigInt::from(common)
    }
}

fn push_exp(exps: &mut Vec<(u32, i32)>, p: u32, by: i32) {
    match exps.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += by,
        None => exps.push((p, by)),
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (r, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if r.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}
