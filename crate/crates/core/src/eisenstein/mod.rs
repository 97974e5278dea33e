//! Eisenstein-type series over Ferrers-Young lattices.
//!
//! * [`f`]: one quarter of `Σ ω^{-k}` over the lattice of a single partition.
//! * [`g`]: the sum of [`f`] over all partitions of `n`.
//! * [`gen_coeffs`]: the truncated generating series `Σ g(n) qⁿ`.
//! * [`truncated_classical`], [`axis_sum`], [`remark_decompose`]: the square
//!   truncation of the classical lattice sum and its split into the
//!   rectangle-partition lattice plus the points on the axes.
//!
//! Every function is generic over [`Scalar`], so the same code runs exactly
//! on [`Rational`](crate::numerics::Rational) inputs and approximately on
//! [`Float`](crate::numerics::Float) inputs.

pub mod classical;
pub mod series;

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{min_modulus, quadrant_pairs, CoeffPair};
use crate::numerics::{div, int_pow, require_nonreal, tree_sum, Scalar};
use crate::partitions::{rectangle, Partition, Partitions};

pub use classical::{classical_g_qexp, zeta_even, ClassicalValue};
pub use series::{
    euler_product_coeffs, gen0_divisor_identity, partition_series, q_bracket_coeffs, sigma_series,
    QSeries, SeriesEntry,
};

/// Integer weight `k`; any sign or parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub i64);

impl Weight {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 != 0
    }

    fn require_even_positive(self, name: &'static str) -> Result<i64> {
        if self.0 < 2 || self.is_odd() {
            return Err(Error::out_of_range(name, "even and at least 2", self.0));
        }
        Ok(self.0)
    }
}

impl From<i64> for Weight {
    fn from(k: i64) -> Self {
        Weight(k)
    }
}

/// Target number of points evaluated per work unit.
const CHUNK_POINTS: usize = 1 << 14;

/// `Σ (a·z + b)^exp` over the pairs emitted row by row.
///
/// Rows are grouped into chunks of a size fixed by `max_row_points` alone, and
/// chunk results are combined in a fixed tree order, so float results do not
/// depend on the number of worker threads.
fn chunked_power_sum<S, F>(
    rows: usize,
    max_row_points: usize,
    z: &S,
    exp: i64,
    emit: F,
) -> Result<S>
where
    S: Scalar,
    F: Fn(usize, &mut Vec<(i64, i64)>) + Sync,
{
    let per_chunk = (CHUNK_POINTS / max_row_points.max(1)).max(1);
    let eval = |range: Range<usize>| -> Result<S> {
        let mut pairs = Vec::new();
        for row in range {
            emit(row, &mut pairs);
        }
        let points: Vec<S> = pairs
            .iter()
            .map(|&(a, b)| S::from_i64(a) * z.clone() + S::from_i64(b))
            .collect();
        S::sum_powers(&points, exp)
    };
    if rows <= per_chunk {
        return eval(0..rows);
    }
    let chunks: Vec<Range<usize>> = (0..rows)
        .step_by(per_chunk)
        .map(|start| start..(start + per_chunk).min(rows))
        .collect();
    let partials = chunks
        .into_par_iter()
        .map(eval)
        .collect::<Result<Vec<_>>>()?;
    Ok(tree_sum(partials))
}

const ALL_SIGNS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, -1), (-1, 1)];

fn lattice_power_sum<S: Scalar>(
    lambda: &Partition,
    signs: &[(i64, i64)],
    z: &S,
    exp: i64,
) -> Result<S> {
    let parts = lambda.parts();
    chunked_power_sum(
        parts.len(),
        lambda.largest() * signs.len(),
        z,
        exp,
        |row, out| {
            let b = row as i64 + 1;
            for a in 1..=parts[row] as i64 {
                for &(sa, sb) in signs {
                    out.push((sa * a, sb * b));
                }
            }
        },
    )
}

fn quarter<S: Scalar>(s: &S) -> Result<S> {
    div(s, &S::from_i64(4))
}

/// Single-partition series `f_k(λ, z) = ¼ Σ_{ω ∈ 𝒻(λ,z)} ω^{-k}`.
///
/// `f_k(∅, z) = 0`.
pub fn f<S: Scalar>(lambda: &Partition, z: &S, k: Weight) -> Result<S> {
    require_nonreal(z)?;
    if lambda.is_empty() {
        return Ok(S::zero());
    }
    quarter(&lattice_power_sum(lambda, &ALL_SIGNS, z, -k.0)?)
}

/// The four quadrant contributions `f^{(1)}, ..., f^{(4)}`, each carrying
/// its factor ¼. Quadrant `j` uses the sign pattern of
/// [`CoeffPair::quadrant`].
pub fn quadrant_sums<S: Scalar>(lambda: &Partition, z: &S, k: Weight) -> Result<[S; 4]> {
    require_nonreal(z)?;
    let mut out: [S; 4] = std::array::from_fn(|_| S::zero());
    for (j, slot) in out.iter_mut().enumerate() {
        let q = j as u8 + 1;
        let pairs: Vec<CoeffPair> = quadrant_pairs(lambda, q)?.collect();
        let points: Vec<S> = pairs
            .iter()
            .map(|p| S::from_i64(p.a) * z.clone() + S::from_i64(p.b))
            .collect();
        *slot = quarter(&S::sum_powers(&points, -k.0)?)?;
    }
    Ok(out)
}

/// [`f`] computed as the sum of the four separate quadrant sums.
pub fn f_via_quadrants<S: Scalar>(lambda: &Partition, z: &S, k: Weight) -> Result<S> {
    let [q1, q2, q3, q4] = quadrant_sums(lambda, z, k)?;
    Ok(q1 + q2 + q3 + q4)
}

/// Row sums `R(b, m) = Σ_{1≤a≤m} Σ_± (±a·z ± b)^{-k}` for `b·m ≤ n`.
///
/// Row `b` of the lattice of `λ` contributes `R(b, λ_b)`, so
/// `4·f_k(λ, z) = Σ_b R(b, λ_b)` for every `λ ⊢ n' ≤ n`.
struct RowTable<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> RowTable<S> {
    fn new(n: usize, z: &S, k: Weight) -> Result<Self> {
        let rows = (1..=n)
            .into_par_iter()
            .map(|b| {
                let mut acc = S::zero();
                let mut row = Vec::with_capacity(n / b);
                for a in 1..=(n / b) as i64 {
                    let points: Vec<S> = ALL_SIGNS
                        .iter()
                        .map(|&(sa, sb)| {
                            S::from_i64(sa * a) * z.clone() + S::from_i64(sb * b as i64)
                        })
                        .collect();
                    acc = acc + S::sum_powers(&points, -k.0)?;
                    row.push(acc.clone());
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RowTable { rows })
    }

    /// `g_k(n, z)`.
    ///
    /// One pass over the partitions of `n` in enumeration order counts how
    /// often each row `(b, λ_b)` occurs; the weighted row sums are then
    /// reduced in a fixed order.
    fn g(&self, n: usize) -> Result<S> {
        if n == 0 {
            return Ok(S::zero());
        }
        let mut counts: Vec<Vec<i64>> = self.rows.iter().map(|r| vec![0; r.len()]).collect();
        for lambda in Partitions::new(n) {
            for (j, &m) in lambda.parts().iter().enumerate() {
                counts[j][m - 1] += 1;
            }
        }
        let terms: Vec<S> = counts
            .iter()
            .zip(&self.rows)
            .flat_map(|(c, r)| c.iter().zip(r))
            .filter(|(&c, _)| c > 0)
            .map(|(&c, r)| S::from_i64(c) * r.clone())
            .collect();
        quarter(&tree_sum(terms))
    }
}

/// Partition series `g_k(n, z) = Σ_{λ ⊢ n} f_k(λ, z)`, with `g_k(0, z) = 0`.
///
/// Every lattice of a partition of `n` is a union of rows, so the sum is
/// assembled from shared row sums weighted by their multiplicities.
pub fn g<S: Scalar>(n: usize, z: &S, k: Weight) -> Result<S> {
    require_nonreal(z)?;
    RowTable::new(n, z, k)?.g(n)
}

/// Coefficients `c_0 = 0, c_n = g_k(n, z)` for `1 ≤ n ≤ n_max`.
pub fn gen_coeffs<S: Scalar>(k: Weight, z: &S, n_max: usize) -> Result<QSeries<S>> {
    require_nonreal(z)?;
    if n_max == 0 {
        return Err(Error::out_of_range("n_max", "at least 1", 0));
    }
    let table = RowTable::new(n_max, z, k)?;
    let coeffs = (0..=n_max)
        .into_par_iter()
        .map(|n| table.g(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::new(coeffs))
}

fn require_side(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::out_of_range("N", "at least 1", 0));
    }
    Ok(n as i64)
}

/// Square truncation of the classical lattice sum:
/// `Σ_{|a|,|b| ≤ N, (a,b) ≠ (0,0)} (a·z + b)^{-k2}`.
pub fn truncated_classical<S: Scalar>(k2: Weight, z: &S, n: usize) -> Result<S> {
    let k2 = k2.require_even_positive("k2")?;
    require_nonreal(z)?;
    let side = require_side(n)?;
    let width = 2 * n + 1;
    chunked_power_sum(width, width, z, -k2, |row, out| {
        let a = row as i64 - side;
        for b in -side..=side {
            if a != 0 || b != 0 {
                out.push((a, b));
            }
        }
    })
}

/// `Σ (a·z + b)^{-k2}` over the axis points: exactly one of `a, b` zero,
/// `|a|, |b| ≤ N`. Computed by enumeration.
pub fn axis_sum<S: Scalar>(k2: Weight, z: &S, n: usize) -> Result<S> {
    let k2 = k2.require_even_positive("k2")?;
    require_nonreal(z)?;
    require_side(n)?;
    chunked_power_sum(n, 4, z, -k2, |row, out| {
        let m = row as i64 + 1;
        out.extend([(0, m), (0, -m), (m, 0), (-m, 0)]);
    })
}

/// `Σ_{m=1}^{N} m^{-k2}`; exact on the rational backend.
pub fn zeta_partial<S: Scalar>(k2: Weight, n: usize) -> Result<S> {
    let k2 = k2.require_even_positive("k2")?;
    require_side(n)?;
    let points: Vec<S> = (1..=n as i64).map(S::from_i64).collect();
    S::sum_powers(&points, -k2)
}

/// Closed-form candidates for the axis contribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisFactor {
    /// `(2 + 2·z^{-k2}) · Σ m^{-k2}`: the axis points regrouped, two on the
    /// real axis and two on the line through `z` for each `m`.
    Regrouped,
    /// `(2 + z^{k2} + z^{-k2}) · Σ m^{-k2}`: the symmetric factor, invariant
    /// under both `z ↦ −z` and `z ↦ −1/z`. Differs from the enumerated axis
    /// sum unless `z^{k2} = z^{-k2}`.
    Symmetric,
}

pub fn axis_closed_form<S: Scalar>(factor: AxisFactor, k2: Weight, z: &S, n: usize) -> Result<S> {
    let zeta = zeta_partial::<S>(k2, n)?;
    require_nonreal(z)?;
    let inv = int_pow(z, -k2.0)?;
    let two = S::from_i64(2);
    let factor = match factor {
        AxisFactor::Regrouped => two.clone() + two * inv,
        AxisFactor::Symmetric => two + int_pow(z, k2.0)? + inv,
    };
    Ok(factor * zeta)
}

/// Split of the square truncation into rectangle-partition and axis parts.
#[derive(Clone, Debug, PartialEq)]
pub struct RemarkDecomposition<S> {
    pub lhs: S,
    /// `4·f_{k2}((N)^N, z)`.
    pub rect_term: S,
    pub axis_term: S,
    /// `lhs − rect_term − axis_term`; exactly zero on the rational backend.
    pub residual: S,
}

pub fn remark_decompose<S: Scalar>(k2: Weight, z: &S, n: usize) -> Result<RemarkDecomposition<S>> {
    let lhs = truncated_classical(k2, z, n)?;
    let rect_term = S::from_i64(4) * f(&rectangle(n)?, z, k2)?;
    let axis_term = axis_sum(k2, z, n)?;
    let residual = lhs.clone() - rect_term.clone() - axis_term.clone();
    Ok(RemarkDecomposition {
        lhs,
        rect_term,
        axis_term,
        residual,
    })
}

/// `A(N) = 4·f_{k2}((N)^N, z) + axis_sum(k2, z, N)`, which tends to the
/// classical series `G_{k2}(z)` as `N → ∞` for `k2 ≥ 4`.
pub fn rectangle_approximation<S: Scalar>(k2: Weight, z: &S, n: usize) -> Result<S> {
    let rect = f(&rectangle(n)?, z, k2)?;
    Ok(S::from_i64(4) * rect + axis_sum(k2, z, n)?)
}

/// Triangle-inequality bound on `|f_k(λ, z)|` for `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDiagnostic {
    pub min_modulus: f64,
    /// `|λ| · min_modulus^{-k}`.
    pub bound: f64,
    pub value_abs: f64,
    pub holds: bool,
    /// Whether `|1 + z| ≤ |ω|` for every lattice point. Not guaranteed; for
    /// `z = 1+i` the point `z − 1 = i` violates it.
    pub one_plus_z_lower_bound: bool,
}

/// `None` for the empty partition.
pub fn convergence_diagnostic<S: Scalar>(
    lambda: &Partition,
    z: &S,
    k: Weight,
) -> Result<Option<ConvergenceDiagnostic>> {
    if k.0 < 1 {
        return Err(Error::out_of_range("k", "at least 1", k.0));
    }
    let Some(m) = min_modulus(lambda, z)? else {
        return Ok(None);
    };
    let value_abs = f(lambda, z, k)?.abs();
    let bound = lambda.size() as f64 * m.powi(-(k.0 as i32));
    let one_plus_z = (z.to_c64() + 1.0).norm();
    Ok(Some(ConvergenceDiagnostic {
        min_modulus: m,
        bound,
        value_abs,
        holds: value_abs <= bound * (1.0 + 1e-12),
        one_plus_z_lower_bound: one_plus_z <= m,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{neg_inverse, Float, Rational};
    use num_bigint::BigInt;
    use num_complex::Complex;
    use num_rational::BigRational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rc(re: (i64, i64), im: (i64, i64)) -> Rational {
        Complex::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    /// Oracle: literal per-point enumeration from the set definition.
    fn f_oracle(lambda: &Partition, z: &Rational, k: i64) -> Rational {
        let mut acc = Rational::zero();
        for b in 1..=lambda.len() as i64 {
            for a in 1..=lambda.part(b as usize) as i64 {
                for (sa, sb) in [(1, 1), (1, -1), (-1, -1), (-1, 1)] {
                    let w = Rational::from_i64(sa * a) * z.clone() + Rational::from_i64(sb * b);
                    acc += int_pow(&w, -k).unwrap();
                }
            }
        }
        div(&acc, &Rational::from_i64(4)).unwrap()
    }

    #[test]
    fn f_single_cell_weight_two() {
        let z = Rational::from_gaussian(1, 1);
        let want = rc((-11, 25), (-2, 25));
        assert_eq!(f_oracle(&p(&[1]), &z, 2), want);
        assert_eq!(f(&p(&[1]), &z, Weight(2)).unwrap(), want);
    }

    #[test]
    fn f_matches_oracle() {
        let z = rc((1, 2), (-3, 2));
        for lambda in [p(&[3, 2, 2, 1]), p(&[4, 3, 1]), p(&[5]), p(&[1, 1, 1])] {
            for k in -3..=6 {
                assert_eq!(f(&lambda, &z, Weight(k)).unwrap(), f_oracle(&lambda, &z, k));
            }
        }
    }

    #[test]
    fn f_edge_cases() {
        let z = Rational::from_gaussian(1, 1);
        assert_eq!(
            f(&Partition::empty(), &z, Weight(2)).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            f(&p(&[3, 2, 2, 1]), &z, Weight(0)).unwrap(),
            Rational::from_i64(8)
        );
        assert_eq!(f(&p(&[2, 1]), &z, Weight(3)).unwrap(), Rational::zero());
        assert!(matches!(
            f(&p(&[1]), &Rational::from_i64(2), Weight(2)),
            Err(Error::RealArgument(_))
        ));
        assert!(f(&p(&[1]), &Float::new(1.0, 1e-12), Weight(2)).is_err());
    }

    #[test]
    fn quadrants_cancel_for_odd_weight() {
        let z = rc((2, 3), (5, 1));
        let lambda = p(&[4, 2, 1]);
        for k in [-3, -1, 1, 3, 5] {
            let [q1, q2, q3, q4] = quadrant_sums(&lambda, &z, Weight(k)).unwrap();
            assert_eq!(q1 + q3, Rational::zero());
            assert_eq!(q2 + q4, Rational::zero());
        }
        assert_eq!(
            f_via_quadrants(&Partition::empty(), &z, Weight(4)).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn g_examples() {
        let z = Rational::from_gaussian(1, 1);
        assert_eq!(g(4, &z, Weight(0)).unwrap(), Rational::from_i64(20));
        assert_eq!(g(0, &z, Weight(2)).unwrap(), Rational::zero());
        assert_eq!(g(3, &z, Weight(5)).unwrap(), Rational::zero());
        assert_eq!(
            g(1, &z, Weight(2)).unwrap(),
            f(&p(&[1]), &z, Weight(2)).unwrap()
        );
    }

    #[test]
    fn g_matches_sum_of_oracle_values() {
        let z = rc((2, 3), (5, 1));
        for n in 0..=7 {
            for k in -2..=4 {
                let want = crate::partitions::enumerate_partitions(n)
                    .iter()
                    .fold(Rational::zero(), |acc, l| acc + f_oracle(l, &z, k));
                assert_eq!(g(n, &z, Weight(k)).unwrap(), want, "n={n} k={k}");
            }
        }
        let series = gen_coeffs(Weight(-2), &z, 7).unwrap();
        for n in 0..=7 {
            assert_eq!(series.coeff(n), Some(&g(n, &z, Weight(-2)).unwrap()));
        }
    }

    #[test]
    fn gen_coeffs_weight_zero() {
        let z = Rational::from_gaussian(1, 1);
        let s = gen_coeffs(Weight(0), &z, 5).unwrap();
        let want: Vec<Rational> = [0, 1, 4, 9, 20, 35]
            .iter()
            .map(|&v| Rational::from_i64(v))
            .collect();
        assert_eq!(s.coeffs(), &want[..]);
        assert!(gen_coeffs(Weight(0), &z, 0).is_err());
    }

    #[test]
    fn gen_coeffs_inversion() {
        let z = rc((-2, 1), (1, 1));
        let zi = neg_inverse(&z).unwrap();
        let a = gen_coeffs(Weight(4), &zi, 6).unwrap();
        let b = gen_coeffs(Weight(4), &z, 6).unwrap();
        let z4 = int_pow(&z, 4).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert_eq!(x.clone(), z4.clone() * y.clone());
        }
    }

    #[test]
    fn truncated_single_ring() {
        let z = Rational::from_gaussian(1, 1);
        let two = Rational::from_i64(2);
        let want = two.clone()
            * (int_pow(&Rational::from_gaussian(2, 1), -2).unwrap()
                + int_pow(&Rational::from_gaussian(0, 1), -2).unwrap())
            + two.clone()
            + two * int_pow(&z, -2).unwrap();
        assert_eq!(truncated_classical(Weight(2), &z, 1).unwrap(), want);
        assert!(truncated_classical(Weight(3), &z, 1).is_err());
        assert!(truncated_classical(Weight(2), &z, 0).is_err());
    }

    #[test]
    fn truncated_symmetries() {
        let z = rc((1, 2), (-3, 2));
        for k2 in [2, 4] {
            let base = truncated_classical(Weight(k2), &z, 3).unwrap();
            let inv = truncated_classical(Weight(k2), &neg_inverse(&z).unwrap(), 3).unwrap();
            assert_eq!(inv, int_pow(&z, k2).unwrap() * base.clone());
            let neg = truncated_classical(Weight(k2), &(-z.clone()), 3).unwrap();
            assert_eq!(neg, base);
        }
    }

    #[test]
    fn axis_sum_examples() {
        let z = Rational::from_gaussian(1, 1);
        assert_eq!(
            axis_sum(Weight(2), &z, 1).unwrap(),
            Rational::from_gaussian(2, -1)
        );
        for (k2, n) in [(2, 1), (4, 3), (6, 5)] {
            assert_eq!(
                axis_sum(Weight(k2), &z, n).unwrap(),
                axis_closed_form(AxisFactor::Regrouped, Weight(k2), &z, n).unwrap()
            );
        }
        let sym = axis_closed_form(AxisFactor::Symmetric, Weight(2), &z, 1).unwrap();
        assert_ne!(sym, axis_sum(Weight(2), &z, 1).unwrap());
    }

    #[test]
    fn remark_residuals_vanish() {
        for (k2, z, n) in [
            (2, Rational::from_gaussian(1, 1), 1),
            (4, Rational::from_gaussian(2, 1), 3),
            (2, Rational::from_gaussian(0, 1), 5),
        ] {
            let d = remark_decompose(Weight(k2), &z, n).unwrap();
            assert_eq!(d.residual, Rational::zero());
        }
    }

    #[test]
    fn zeta_partial_values() {
        let v: Rational = zeta_partial(Weight(2), 3).unwrap();
        assert_eq!(v, rc((49, 36), (0, 1)));
        assert!(zeta_partial::<Rational>(Weight(0), 3).is_err());
        let mut prev = 0.0;
        for n in 1..20 {
            let x = zeta_partial::<Float>(Weight(4), n).unwrap().re;
            assert!(x > prev && x < zeta_even(Weight(4)).unwrap());
            prev = x;
        }
    }

    #[test]
    fn convergence_bound_holds() {
        let z = Float::new(1.0, 1.0);
        let d = convergence_diagnostic(&p(&[3, 2, 2, 1]), &z, Weight(2))
            .unwrap()
            .unwrap();
        assert!(d.holds);
        assert!(!d.one_plus_z_lower_bound);
        assert!(convergence_diagnostic(&Partition::empty(), &z, Weight(2))
            .unwrap()
            .is_none());
        assert!(convergence_diagnostic(&p(&[1]), &z, Weight(0)).is_err());
    }

    #[test]
    fn chunked_float_matches_single_pass() {
        let z = Float::new(0.3, 1.7);
        let lambda = rectangle(200).unwrap();
        let chunked = f(&lambda, &z, Weight(4)).unwrap();
        let pts: Vec<Float> = crate::lattice::coeff_pairs(&lambda)
            .map(|c| crate::lattice::point(c, &z).unwrap())
            .collect();
        let direct = Float::sum_powers(&pts, -4).unwrap() / 4.0;
        assert!((chunked - direct).norm() < 1e-12 * direct.norm().max(1.0));
    }
}
