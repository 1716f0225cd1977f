//! Shared factorial and prime tables, grown on demand.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

static FACTORIALS: OnceLock<RwLock<Arc<Vec<BigUint>>>> = OnceLock::new();
static PRIMES: OnceLock<RwLock<Arc<Sieve>>> = OnceLock::new();

/// Snapshot of the factorial table holding at least `0! ..= max!`.
pub(crate) fn factorials(max: usize) -> Arc<Vec<BigUint>> {
    let lock = FACTORIALS.get_or_init(|| RwLock::new(Arc::new(vec![BigUint::one()])));
    {
        let table = lock.read().unwrap();
        if table.len() > max {
            return Arc::clone(&table);
        }
    }
    let mut table = lock.write().unwrap();
    if table.len() <= max {
        let target = (max + 1).max(2 * table.len());
        let mut grown = Vec::with_capacity(target);
        grown.extend(table.iter().cloned());
        while grown.len() < target {
            let n = grown.len();
            let next = &grown[n - 1] * BigUint::from(n);
            grown.push(next);
        }
        *table = Arc::new(grown);
    }
    Arc::clone(&table)
}

pub(crate) struct Sieve {
    limit: u32,
    primes: Vec<u32>,
}

impl Sieve {
    /// Primes `<= max`; `max` must not exceed the sieve limit.
    pub(crate) fn upto(&self, max: u32) -> &[u32] {
        debug_assert!(max <= self.limit);
        let n = self.primes.partition_point(|&p| p <= max);
        &self.primes[..n]
    }
}

/// A sieve covering at least `0..=max`.
pub(crate) fn primes(max: u32) -> Arc<Sieve> {
    let lock = PRIMES.get_or_init(|| RwLock::new(Arc::new(sieve(64))));
    {
        let s = lock.read().unwrap();
        if s.limit >= max {
            return Arc::clone(&s);
        }
    }
    let mut s = lock.write().unwrap();
    if s.limit < max {
        *s = Arc::new(sieve(max.next_power_of_two()));
    }
    Arc::clone(&s)
}

fn sieve(limit: u32) -> Sieve {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u32);
            let mut k = i * i;
            while k <= n {
                composite[k] = true;
                k += i;
            }
        }
    }
    Sieve { limit, primes }
}

/// Exponent of the prime `p` in `n!` (Legendre).
#[inline]
pub(crate) fn legendre(mut n: u32, p: u32) -> i32 {
    let mut e = 0;
    while n >= p {
        n /= p;
        e += n as i32;
    }
    e
}
