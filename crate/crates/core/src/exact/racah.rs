//! Racah single-sum formula for the 6j symbol.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factorial::{factorials, legendre, primes};
use super::surd::Surd;
use crate::halfint::triad_twice;

/// `{a b c; d e f}` from twice-values.
pub(crate) fn six_j(t: [u32; 6]) -> Surd {
    let [a, b, c, d, e, f] = t;
    let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
    if !triads.iter().all(|&(x, y, z)| triad_twice(x, y, z)) {
        return Surd::zero();
    }
    let alpha = triads.map(|(x, y, z)| (x + y + z) / 2);
    let beta = [(a + b + d + e) / 2, (a + c + d + f) / 2, (b + c + e + f) / 2];
    let tmin = *alpha.iter().max().unwrap();
    let tmax = *beta.iter().min().unwrap();
    if tmin > tmax {
        return Surd::zero();
    }

    let sum = racah_sum(alpha, beta, tmin, tmax);
    if sum.is_zero() {
        return Surd::zero();
    }
    let root = triangle_root(&triads);
    root.scale(&sum)
}

/// `Σ_t (-1)^t (t+1)! / [Π (t-α_k)! Π (β_k-t)!]`, summed by Horner's rule
/// on the ratio of consecutive terms.
fn racah_sum(alpha: [u32; 4], beta: [u32; 3], tmin: u32, tmax: u32) -> BigRational {
    let fact = factorials(tmax as usize + 1);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in (tmin..tmax).rev() {
        // term(t+1) / term(t)
        let mut rn = u128::from(t + 2);
        for &b in &beta {
            rn *= u128::from(b - t);
        }
        let mut rd = 1u128;
        for &a in &alpha {
            rd *= u128::from(t + 1 - a);
        }
        let rd = BigInt::from(rd);
        // acc <- 1 - (rn/rd) acc
        num = &den * &rd - num * BigInt::from(rn);
        den *= rd;
    }
    let mut first_den = BigUint::one();
    for &a in &alpha {
        first_den *= &fact[(tmin - a) as usize];
    }
    for &b in &beta {
        first_den *= &fact[(b - tmin) as usize];
    }
    let mut first_num = BigInt::from(fact[tmin as usize + 1].clone());
    if tmin % 2 == 1 {
        first_num = -first_num;
    }
    BigRational::new(first_num * num, BigInt::from(first_den) * den)
}

/// `√(Δ(abc)Δ(aef)Δ(dbf)Δ(dec))` with
/// `Δ(xyz) = (x+y-z)!(x-y+z)!(-x+y+z)!/(x+y+z+1)!`.
fn triangle_root(triads: &[(u32, u32, u32); 4]) -> Surd {
    let top = triads
        .iter()
        .map(|&(x, y, z)| (x + y + z) / 2 + 1)
        .max()
        .unwrap();
    let sieve = primes(top);
    let ps = sieve.upto(top);
    let mut exps = vec![0i32; ps.len()];
    for &(x, y, z) in triads {
        let ups = [(x + y - z) / 2, (x + z - y) / 2, (y + z - x) / 2];
        let down = (x + y + z) / 2 + 1;
        for (k, &p) in ps.iter().enumerate() {
            if p > down {
                break;
            }
            let mut e = -legendre(down, p);
            for &n in &ups {
                e += legendre(n, p);
            }
            exps[k] += e;
        }
    }
    Surd::sqrt_of_factored(ps, &exps)
}
