//! Complex scalars with two interchangeable backends.
//!
//! [`Float`] is a binary floating complex number; [`Rational`] stores the real
//! and imaginary parts as arbitrary-precision rationals and is exact. Both
//! implement [`Scalar`], so every series and identity in this crate can be
//! evaluated exactly or to a quantified tolerance with the same code.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Float = Complex64;
pub type Rational = Complex<BigRational>;

/// Default `|Im z|` floor below which a float argument counts as real.
pub const DEFAULT_NONREAL_FLOOR: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Float => "float",
            Backend::Rational => "rational",
        })
    }
}

/// A complex field element.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_gaussian(re: i64, im: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_rational(value: &Rational) -> Self;
    fn from_parsed(value: &ParsedScalar) -> Result<Self>;

    fn is_zero(&self) -> bool;
    /// `1/s`; rejects zero.
    fn recip(&self) -> Result<Self>;
    /// Exact backends ignore `floor` and test `Im s ≠ 0`.
    fn imag_exceeds(&self, floor: f64) -> bool;
    fn to_c64(&self) -> Complex64;

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `Σ p^exp` over `points`. Rejects a zero point when `exp < 0`.
    fn sum_powers(points: &[Self], exp: i64) -> Result<Self> {
        let terms = points
            .iter()
            .map(|p| int_pow(p, exp))
            .collect::<Result<Vec<_>>>()?;
        Ok(tree_sum(terms))
    }

    /// Text form: exact fractions for rationals, 17 significant digits for floats.
    fn to_text(&self) -> String;
}

/// `s^k` by binary exponentiation; negative exponents invert first.
pub fn int_pow<S: Scalar>(s: &S, k: i64) -> Result<S> {
    let base = if k < 0 { s.recip()? } else { s.clone() };
    Ok(pow_unsigned(base, k.unsigned_abs()))
}

fn pow_unsigned<S: Scalar>(mut base: S, mut e: u64) -> S {
    let mut acc = S::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// `−1/s`, the action of the inversion `z ↦ −1/z`.
pub fn neg_inverse<S: Scalar>(s: &S) -> Result<S> {
    Ok(-s.recip()?)
}

pub fn div<S: Scalar>(a: &S, b: &S) -> Result<S> {
    Ok(a.clone() * b.recip()?)
}

/// Domain guard for `z ∉ ℝ`.
pub fn is_nonreal<S: Scalar>(s: &S, floor: f64) -> bool {
    s.imag_exceeds(floor)
}

pub(crate) fn require_nonreal<S: Scalar>(z: &S) -> Result<()> {
    if is_nonreal(z, DEFAULT_NONREAL_FLOOR) {
        Ok(())
    } else {
        Err(Error::RealArgument(z.to_text()))
    }
}

/// Pairwise sum in a fixed binary-tree order, independent of thread count.
pub fn tree_sum<S: Scalar>(mut terms: Vec<S>) -> S {
    if terms.is_empty() {
        return S::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().expect("nonempty")
}

/// `|a − b| / max(|a|, |b|, 1)`.
pub fn relative_residual<S: Scalar>(a: &S, b: &S) -> f64 {
    let diff = (a.clone() - b.clone()).abs();
    diff / a.abs().max(b.abs()).max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSpec {
    pub relative_tol: f64,
    pub absolute_floor: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        ToleranceSpec {
            relative_tol: 1e-10,
            absolute_floor: 1e-14,
        }
    }
}

impl ToleranceSpec {
    pub fn approx_eq<S: Scalar>(&self, a: &S, b: &S) -> bool {
        let diff = (a.clone() - b.clone()).abs();
        diff <= (self.relative_tol * a.abs().max(b.abs())).max(self.absolute_floor)
    }
}

impl Scalar for Float {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_gaussian(re: i64, im: i64) -> Self {
        Complex64::new(re as f64, im as f64)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_rational(value: &Rational) -> Self {
        rational_to_c64(value)
    }
    fn from_parsed(value: &ParsedScalar) -> Result<Self> {
        Ok(value.to_float())
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn recip(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv())
    }
    fn imag_exceeds(&self, floor: f64) -> bool {
        self.im.abs() > floor
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_text(&self) -> String {
        format!("{}+{}i", float_text(self.re), float_text(self.im))
    }
}

/// `x` with 17 significant digits; `-0` prints as `0`.
pub fn float_text(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn rational_to_c64(value: &Rational) -> Complex64 {
    Complex64::new(
        value.re.to_f64().unwrap_or(f64::NAN),
        value.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// `"p/q"` with the denominator always present.
pub fn fraction_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn reduced_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        fraction_text(q)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_gaussian(re: i64, im: i64) -> Self {
        Complex::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }
    fn from_parsed(value: &ParsedScalar) -> Result<Self> {
        value.to_rational()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn recip(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Complex::new(&self.re / &norm, -(&self.im / &norm)))
    }
    fn imag_exceeds(&self, _floor: f64) -> bool {
        !self.im.is_zero()
    }
    fn to_c64(&self) -> Complex64 {
        rational_to_c64(self)
    }

    /// Exact power sum over a common denominator.
    ///
    /// Each point is written as `w / D` with `w` a Gaussian integer and `D`
    /// the lcm of all coordinate denominators. For negative exponents
    /// `(w/D)^{-k} = D^k · conj(w)^k / N(w)^k`, so the whole sum is
    /// `D^k · Σ conj(w)^k (L / N(w))^k / L^k` with `L = lcm N(w)`: integer
    /// accumulation followed by a single reduction.
    fn sum_powers(points: &[Self], exp: i64) -> Result<Self> {
        if points.is_empty() {
            return Ok(Scalar::zero());
        }
        let mut den = BigInt::one();
        for p in points {
            den = den.lcm(p.re.denom()).lcm(p.im.denom());
        }
        let gaussians: Vec<(BigInt, BigInt)> = points
            .iter()
            .map(|p| {
                (
                    p.re.numer() * (&den / p.re.denom()),
                    p.im.numer() * (&den / p.im.denom()),
                )
            })
            .collect();
        let k = exp.unsigned_abs();
        let den_k = num_traits::pow::pow(den, k as usize);

        if exp >= 0 {
            let mut acc = (BigInt::zero(), BigInt::zero());
            for w in &gaussians {
                let t = gaussian_pow(w, k);
                acc.0 += t.0;
                acc.1 += t.1;
            }
            return Ok(Complex::new(
                BigRational::new(acc.0, den_k.clone()),
                BigRational::new(acc.1, den_k),
            ));
        }

        let norms: Vec<BigInt> = gaussians.iter().map(|(a, b)| a * a + b * b).collect();
        if norms.iter().any(Zero::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let mut lcm = BigInt::one();
        for n in &norms {
            lcm = lcm.lcm(n);
        }
        let mut acc = (BigInt::zero(), BigInt::zero());
        for (w, n) in gaussians.iter().zip(&norms) {
            let conj = (w.0.clone(), -&w.1);
            let t = gaussian_pow(&conj, k);
            let scale = num_traits::pow::pow(&lcm / n, k as usize);
            acc.0 += &t.0 * &scale;
            acc.1 += &t.1 * &scale;
        }
        let lcm_k = num_traits::pow::pow(lcm, k as usize);
        Ok(Complex::new(
            BigRational::new(acc.0 * &den_k, lcm_k.clone()),
            BigRational::new(acc.1 * den_k, lcm_k),
        ))
    }

    fn to_text(&self) -> String {
        if self.im.is_zero() {
            reduced_text(&self.re)
        } else {
            format!("{}+{}i", fraction_text(&self.re), fraction_text(&self.im))
        }
    }
}

fn gaussian_pow(w: &(BigInt, BigInt), mut e: u64) -> (BigInt, BigInt) {
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut base = w.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = gaussian_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = gaussian_mul(&base, &base);
        }
    }
    acc
}

fn gaussian_mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// One coordinate of a parsed scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Exact(BigRational),
    Decimal(f64),
}

impl Component {
    fn to_f64(&self) -> f64 {
        match self {
            Component::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Component::Decimal(x) => *x,
        }
    }
}

/// A complex number as written on the command line or in a file.
///
/// Accepts `"a/b+c/di"`, `"x+yi"`, `"3"`, `"2i"`, `"-i"`, and the `"+-"`
/// form produced by [`Scalar::to_text`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedScalar {
    pub re: Component,
    pub im: Component,
    source: String,
}

impl ParsedScalar {
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidScalar(text.to_string(), "empty"));
        }
        let (re, im) = match s.strip_suffix('i') {
            None => (
                parse_component(&s, text)?,
                Component::Exact(BigRational::zero()),
            ),
            Some(body) => {
                let split = split_point(body);
                let (re_text, im_text) = match split {
                    Some(idx) => (&body[..idx], &body[idx..]),
                    None => ("", body),
                };
                let re = if re_text.is_empty() {
                    Component::Exact(BigRational::zero())
                } else {
                    parse_component(re_text, text)?
                };
                let im_text = im_text.strip_prefix('+').unwrap_or(im_text);
                let im = match im_text {
                    "" => Component::Exact(BigRational::one()),
                    "-" => Component::Exact(-BigRational::one()),
                    t => parse_component(t, text)?,
                };
                (re, im)
            }
        };
        Ok(ParsedScalar {
            re,
            im,
            source: text.to_string(),
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(
            (&self.re, &self.im),
            (Component::Exact(_), Component::Exact(_))
        )
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match (&self.re, &self.im) {
            (Component::Exact(re), Component::Exact(im)) => {
                Ok(Complex::new(re.clone(), im.clone()))
            }
            _ => Err(Error::InexactInput(self.source.clone())),
        }
    }

    pub fn to_float(&self) -> Float {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Index of the sign separating real and imaginary parts, if any.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len()).rev().find(|&i| {
        matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'+' | b'-')
    })
}

fn parse_component(t: &str, source: &str) -> Result<Component> {
    let bad = |why| Error::InvalidScalar(source.to_string(), why);
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n
            .strip_prefix('+')
            .unwrap_or(n)
            .parse()
            .map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Component::Exact(BigRational::new(n, d)));
    }
    let unsigned = t.strip_prefix('+').unwrap_or(t);
    if let Ok(n) = unsigned.parse::<BigInt>() {
        return Ok(Component::Exact(BigRational::from_integer(n)));
    }
    match unsigned.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Component::Decimal(x)),
        _ => Err(bad("not a number")),
    }
}

/// Parses a fraction `"p/q"` or integer `"p"`.
pub fn parse_fraction(t: &str) -> Result<BigRational> {
    match parse_component(t.trim(), t)? {
        Component::Exact(q) => Ok(q),
        Component::Decimal(_) => Err(Error::InexactInput(t.to_string())),
    }
}
