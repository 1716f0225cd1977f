//! Wigner small-d matrix elements for small spins.
//!
//! Indexing follows the convention `d^s_{νμ}(θ) = ⟨s μ| e^{-iθS_y} |s ν⟩`, i.e. the
//! transpose of the textbook `d^j_{m'm}` layout. It satisfies `d(0) = 1` and
//! `d^s_{νμ}(θ) = (-1)^{μ-ν} d^s_{μν}(θ)`, and is the ordering the asymptotic
//! formulas in [`crate::asymptotics`] are written against.

use crate::error::AsymError;
use crate::halfint::HalfInt;
use crate::scalar::Real;

/// Arguments of one matrix element. `nu_twice` and `mu_twice` are `2ν`, `2μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DSpec<T> {
    pub s: HalfInt,
    pub nu_twice: i64,
    pub mu_twice: i64,
    pub theta: T,
}

impl<T: Real> DSpec<T> {
    pub fn new(s: HalfInt, nu_twice: i64, mu_twice: i64, theta: T) -> Self {
        DSpec {
            s,
            nu_twice,
            mu_twice,
            theta,
        }
    }

    pub fn validate(&self) -> Result<(), AsymError> {
        let s2 = i64::from(self.s.twice());
        for m in [self.nu_twice, self.mu_twice] {
            if m.abs() > s2 || (s2 - m) % 2 != 0 {
                return Err(AsymError::IndexOutOfRange {
                    spin_twice: self.s.twice(),
                    index_twice: m,
                });
            }
        }
        Ok(())
    }
}

/// `d^s_{νμ}(θ)` by the explicit factorial sum.
pub fn little_d<T: Real>(spec: DSpec<T>) -> Result<T, AsymError> {
    spec.validate()?;
    let j2 = i64::from(spec.s.twice());
    // textbook d^j_{m'm} with m' = μ, m = ν
    let (mp, m) = (spec.mu_twice, spec.nu_twice);
    let jpm = (j2 + m) / 2;
    let jmm = (j2 - m) / 2;
    let jpmp = (j2 + mp) / 2;
    let jmmp = (j2 - mp) / 2;
    let shift = (mp - m) / 2;

    let norm = (fact(jpmp) * fact(jmmp) * fact(jpm) * fact(jmm)).sqrt();
    let half = spec.theta * T::half();
    let (c, s) = (half.cos(), half.sin());
    let kmin = 0.max(-shift);
    let kmax = jpm.min(jmmp);
    let mut total = T::zero();
    for k in kmin..=kmax {
        let den = fact(jpm - k) * fact(k) * fact(jmmp - k) * fact(k + shift);
        let coef = norm / den;
        let sign = if (k + shift) % 2 == 0 { 1.0 } else { -1.0 };
        let cos_exp = j2 - shift - 2 * k;
        let sin_exp = 2 * k + shift;
        total = total
            + T::of(sign * coef) * c.powi(cos_exp as i32) * s.powi(sin_exp as i32);
    }
    Ok(total)
}

fn fact(n: i64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Full `(2s+1) × (2s+1)` matrix, rows `ν` and columns `μ` running from `s` down to `-s`.
pub fn d_matrix<T: Real>(s: HalfInt, theta: T) -> Vec<Vec<T>> {
    let s2 = i64::from(s.twice());
    let idx: Vec<i64> = (0..=s2).map(|k| s2 - 2 * k).collect();
    idx.iter()
        .map(|&nu| {
            idx.iter()
                .map(|&mu| little_d(DSpec::new(s, nu, mu, theta)).unwrap())
                .collect()
        })
        .collect()
}
