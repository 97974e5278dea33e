//! Truncated q-series and the integer series built on partitions.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{gen_coeffs, Weight};
use crate::error::{Error, Result};
use crate::numerics::{float_text, fraction_text, parse_fraction, Float, Rational, Scalar};
use crate::partitions::{partition_counts, sigma};

/// Coefficients `c_0, ..., c_N` of a power series in `q`, truncated at `q^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<T> {
    coeffs: Vec<T>,
}

impl<T> QSeries<T> {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least c_0");
        QSeries { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> QSeries<U> {
        QSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Add<Output = T> + Mul<Output = T>> QSeries<T> {
    pub fn truncate(&self, order: usize) -> Self {
        QSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// Sum, truncated at the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        QSeries::new(
            (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        )
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| {
                let term = |j: usize| self.coeffs[j].clone() * other.coeffs[i - j].clone();
                (1..=i).fold(term(0), |acc, j| acc + term(j))
            })
            .collect();
        QSeries::new(coeffs)
    }

    /// Evaluates the truncation at `q` by Horner's rule.
    pub fn eval(&self, q: &T) -> T {
        let (last, rest) = self.coeffs.split_last().expect("nonempty");
        rest.iter()
            .rev()
            .fold(last.clone(), |acc, c| acc * q.clone() + c.clone())
    }
}

/// Coefficients of `Π_{m≥1} (1 − q^m)` up to `q^{n_max}`.
///
/// By the pentagonal number theorem the only nonzero coefficients are
/// `(−1)^j` at the generalized pentagonal numbers `j(3j ∓ 1)/2`.
pub fn euler_product_coeffs(n_max: usize) -> QSeries<BigInt> {
    let mut coeffs = vec![BigInt::zero(); n_max + 1];
    coeffs[0] = BigInt::one();
    for j in 1usize.. {
        let g1 = j * (3 * j - 1) / 2;
        if g1 > n_max {
            break;
        }
        let sign = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        coeffs[g1] = sign.clone();
        let g2 = j * (3 * j + 1) / 2;
        if g2 <= n_max {
            coeffs[g2] = sign;
        }
    }
    QSeries::new(coeffs)
}

/// `Σ p(n) qⁿ` up to `q^{n_max}`.
pub fn partition_series(n_max: usize) -> QSeries<BigInt> {
    QSeries::new(
        partition_counts(n_max)
            .into_iter()
            .map(BigInt::from)
            .collect(),
    )
}

/// `Σ_{n≥1} σ_j(n) qⁿ` up to `q^{n_max}`, with `c_0 = 0`.
pub fn sigma_series(j: u32, n_max: usize) -> QSeries<BigInt> {
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend((1..=n_max as u64).map(|n| BigInt::from(sigma(j, n).expect("n >= 1"))));
    QSeries::new(coeffs)
}

/// `Π(1 − q^m) · Σ g_k(n, z) qⁿ` up to `q^{n_max}`.
pub fn q_bracket_coeffs<S: Scalar>(k: Weight, z: &S, n_max: usize) -> Result<QSeries<S>> {
    let gen = gen_coeffs(k, z, n_max)?;
    let euler = euler_product_coeffs(n_max).map(S::from_bigint);
    Ok(euler.mul(&gen))
}

/// Residuals `Σ_{j=1}^{n} σ_1(j) p(n−j) − n·p(n)` for `0 ≤ n ≤ n_max`.
///
/// All entries vanish: `Σ n p(n) qⁿ = Π(1−q^m)^{-1} · Σ σ_1(n) qⁿ`.
pub fn gen0_divisor_identity(n_max: usize) -> Result<QSeries<BigInt>> {
    if n_max == 0 {
        return Err(Error::out_of_range("n_max", "at least 1", 0));
    }
    let p = partition_series(n_max);
    let s = sigma_series(1, n_max);
    let conv = s.mul(&p);
    let coeffs = conv
        .coeffs()
        .iter()
        .zip(p.coeffs())
        .enumerate()
        .map(|(n, (c, pn))| c - BigInt::from(n) * pn)
        .collect();
    Ok(QSeries::new(coeffs))
}

/// Per-backend text encoding of series coefficients.
///
/// JSON: `[{"n", "re", "im"}]` with numbers (float) or `"p/q"` strings
/// (rational). CSV: header `n,re,im`.
pub trait SeriesEntry: Scalar {
    fn json_parts(&self) -> (Value, Value);
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self>;
    fn csv_parts(&self) -> (String, String);
    fn from_csv_parts(re: &str, im: &str) -> Result<Self>;
}

impl SeriesEntry for Float {
    fn json_parts(&self) -> (Value, Value) {
        (Value::from(self.re + 0.0), Value::from(self.im + 0.0))
    }
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        let num = |v: &Value| {
            v.as_f64()
                .ok_or_else(|| Error::InvalidSeries(format!("expected a number, got {v}")))
        };
        Ok(Complex64::new(num(re)?, num(im)?))
    }
    fn csv_parts(&self) -> (String, String) {
        (float_text(self.re), float_text(self.im))
    }
    fn from_csv_parts(re: &str, im: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSeries(format!("bad float {t:?}")))
        };
        Ok(Complex64::new(num(re)?, num(im)?))
    }
}

impl SeriesEntry for Rational {
    fn json_parts(&self) -> (Value, Value) {
        (
            Value::from(fraction_text(&self.re)),
            Value::from(fraction_text(&self.im)),
        )
    }
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        let frac = |v: &Value| match v.as_str() {
            Some(t) => parse_fraction(t),
            None => Err(Error::InvalidSeries(format!("expected \"p/q\", got {v}"))),
        };
        Ok(Complex::new(frac(re)?, frac(im)?))
    }
    fn csv_parts(&self) -> (String, String) {
        (fraction_text(&self.re), fraction_text(&self.im))
    }
    fn from_csv_parts(re: &str, im: &str) -> Result<Self> {
        Ok(Complex::new(parse_fraction(re)?, parse_fraction(im)?))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    n: usize,
    re: Value,
    im: Value,
}

impl<S: SeriesEntry> QSeries<S> {
    pub fn to_json(&self) -> String {
        let entries: Vec<JsonEntry> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let (re, im) = c.json_parts();
                JsonEntry { n, re, im }
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("plain values serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<JsonEntry> =
            serde_json::from_str(text).map_err(|e| Error::InvalidSeries(e.to_string()))?;
        let coeffs = entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if e.n != i {
                    return Err(Error::InvalidSeries(format!("entry {i} has n = {}", e.n)));
                }
                S::from_json_parts(&e.re, &e.im)
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries("no coefficients".into()));
        }
        Ok(QSeries::new(coeffs))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            let (re, im) = c.csv_parts();
            out.push_str(&format!("{n},{re},{im}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "n,re,im" => {}
            other => return Err(Error::InvalidSeries(format!("bad header {other:?}"))),
        }
        let coeffs = lines
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, line)| {
                let fields: Vec<&str> = line.split(',').collect();
                let [n, re, im] = fields[..] else {
                    return Err(Error::InvalidSeries(format!("bad row {line:?}")));
                };
                if n.trim().parse::<usize>().ok() != Some(i) {
                    return Err(Error::InvalidSeries(format!("row {i} has n = {n}")));
                }
                S::from_csv_parts(re, im)
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries("no coefficients".into()));
        }
        Ok(QSeries::new(coeffs))
    }
}
