//! Classical Eisenstein series `G_{2k}(τ)` from its q-expansion.
//!
//! Float only; serves as a comparison oracle for the lattice sums.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Weight;
use crate::error::{Error, Result};

const TAIL_TARGET: f64 = 1e-12;
const MAX_TERMS: usize = 1_000_000;
/// `ζ(3)`, an upper bound for `ζ(m)` with `m ≥ 3`.
const ZETA3: f64 = 1.202_056_903_159_594_3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalValue {
    pub value: Complex64,
    /// Number of q-powers summed.
    pub terms: usize,
    /// Upper bound on the absolute truncation error.
    pub tail_bound: f64,
}

/// Bernoulli numbers `B_0, ..., B_n` (with `B_1 = −1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `ζ(k2)` for even `k2 ≥ 2` from `ζ(2m) = (−1)^{m+1} B_{2m} (2π)^{2m} / (2·(2m)!)`.
pub fn zeta_even(k2: Weight) -> Result<f64> {
    let k2 = k2.require_even_positive("k2")?;
    let n = k2 as usize;
    let b = bernoulli_numbers(n)[n].to_f64().unwrap_or(f64::NAN);
    let sign = if (n / 2) % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * b * (2.0 * PI).powi(k2 as i32) / (2.0 * factorial(n)))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Σ_{n>t} n^m r^n`, bounded by a geometric series once successive term
/// ratios fall below one. `None` while they have not.
fn power_geometric_tail(t: usize, m: i32, r: f64) -> Option<f64> {
    let next = (t + 1) as f64;
    let ratio = r * (1.0 + 1.0 / next).powi(m);
    if ratio >= 1.0 {
        return None;
    }
    Some(next.powi(m) * r.powf(next) / (1.0 - ratio))
}

/// `G_{k2}(τ) = 2ζ(k2) + 2(2πi)^{k2}/(k2−1)! · Σ_{n≥1} σ_{k2−1}(n) qⁿ`,
/// `q = e^{2πiτ}`.
///
/// With `terms = None` the expansion is cut where the tail bound drops below
/// `1e-12`.
pub fn classical_g_qexp(
    k2: Weight,
    tau: Complex64,
    terms: Option<usize>,
) -> Result<ClassicalValue> {
    if k2.0 < 4 || k2.is_odd() {
        return Err(Error::out_of_range("k2", "even and at least 4", k2.0));
    }
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(Error::NotUpperHalfPlane(format!("{}+{}i", tau.re, tau.im)));
    }
    let m = (k2.0 - 1) as i32;
    let r = (-2.0 * PI * tau.im).exp();
    let sign = if (k2.0 / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = 2.0 * (2.0 * PI).powi(k2.0 as i32) / factorial(m as usize) * sign;
    let tail = |t: usize| {
        power_geometric_tail(t, m, r)
            .map(|s| prefactor.abs() * ZETA3 * s)
            .unwrap_or(f64::INFINITY)
    };
    let terms = match terms {
        Some(t) => t,
        None => {
            let mut t = 1;
            while tail(t) >= TAIL_TARGET && t < MAX_TERMS {
                t += 1;
            }
            t
        }
    };

    let sigmas = sigma_table(m, terms);
    let x = tau.re - tau.re.floor();
    let q = Complex64::from_polar(r, 2.0 * PI * x);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for s in &sigmas[1..] {
        qn *= q;
        sum += *s * qn;
    }
    let value = 2.0 * zeta_even(k2)? + prefactor * sum;
    Ok(ClassicalValue {
        value,
        terms,
        tail_bound: tail(terms),
    })
}

/// `σ_m(n)` for `0 ≤ n ≤ t` by a divisor sieve; entry 0 is unused.
fn sigma_table(m: i32, t: usize) -> Vec<f64> {
    let mut s = vec![0.0; t + 1];
    for d in 1..=t {
        let dm = (d as f64).powi(m);
        for mult in (d..=t).step_by(d) {
            s[mult] += dm;
        }
    }
    s
}
