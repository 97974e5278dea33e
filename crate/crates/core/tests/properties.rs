use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use parteis::eisenstein::{f, f_via_quadrants, g, QSeries, Weight};
use parteis::lattice::{coeff_pairs, min_modulus, point, CoeffPair};
use parteis::numerics::{int_pow, neg_inverse, Float, ParsedScalar, Rational, Scalar};
use parteis::partitions::{enumerate_partitions, partition_count, partition_counts, Partition};
use proptest::prelude::*;

fn frac() -> impl Strategy<Value = BigRational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn rational() -> impl Strategy<Value = Rational> {
    (frac(), frac()).prop_map(|(re, im)| Complex::new(re, im))
}

fn nonreal() -> impl Strategy<Value = Rational> {
    (frac(), frac()).prop_filter_map("nonreal", |(re, im)| {
        (im != BigRational::from_integer(0.into())).then(|| Complex::new(re, im))
    })
}

/// Small nonreal values keep the exact arithmetic cheap.
fn small_nonreal() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3, 1i64..=4, 1i64..=3, any::<bool>()).prop_map(|(a, b, c, d, neg)| {
        let im = BigRational::new(c.into(), d.into());
        Complex::new(
            BigRational::new(a.into(), b.into()),
            if neg { -im } else { im },
        )
    })
}

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted positive parts")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !Scalar::is_zero(&a) {
            prop_assert_eq!(a.recip().unwrap() * a.clone(), <Rational as Scalar>::one());
            prop_assert_eq!(neg_inverse(&neg_inverse(&a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn text_round_trip(a in rational()) {
        let back = Rational::from_parsed(&ParsedScalar::parse(&a.to_text()).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn float_text_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let a = Complex64::new(re, im);
        let back = Float::from_parsed(&ParsedScalar::parse(&a.to_text()).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn lattice_points_are_distinct_and_symmetric(lambda in partition(6, 6), z in nonreal()) {
        let pairs: Vec<CoeffPair> = coeff_pairs(&lambda).collect();
        prop_assert_eq!(pairs.len(), 4 * lambda.size());
        let points: HashSet<String> = pairs.iter().map(|&p| point(p, &z).unwrap().to_text()).collect();
        prop_assert_eq!(points.len(), pairs.len());
        for &p in &pairs {
            let neg = (-point(p, &z).unwrap()).to_text();
            prop_assert!(points.contains(&neg));
            prop_assert!(pairs.contains(&CoeffPair::new(p.a, -p.b)));
        }
        if !lambda.is_empty() {
            prop_assert!(min_modulus(&lambda, &z).unwrap().unwrap() > 0.0);
        }
    }

    #[test]
    fn pair_duality_under_conjugation(lambda in partition(7, 7)) {
        let conj = lambda.conjugate();
        let swapped: HashSet<(i64, i64)> = coeff_pairs(&conj).map(|p| (p.b, p.a)).collect();
        let direct: HashSet<(i64, i64)> = coeff_pairs(&lambda).map(|p| (p.a, p.b)).collect();
        prop_assert_eq!(swapped, direct);
    }

    #[test]
    fn quadrant_split_matches_f(lambda in partition(4, 4), z in small_nonreal(), k in -3i64..=6) {
        prop_assert_eq!(f_via_quadrants(&lambda, &z, Weight(k)).unwrap(), f(&lambda, &z, Weight(k)).unwrap());
    }

    #[test]
    fn single_partition_identities(lambda in partition(4, 4), z in small_nonreal(), h in -2i64..=3) {
        let k = 2 * h;
        prop_assert_eq!(f(&lambda, &z, Weight(0)).unwrap(), Rational::from_i64(lambda.size() as i64));
        prop_assert_eq!(f(&lambda, &z, Weight(k + 1)).unwrap(), <Rational as Scalar>::zero());
        prop_assert_eq!(f(&lambda, &(-z.clone()), Weight(k)).unwrap(), f(&lambda, &z, Weight(k)).unwrap());
        let lhs = int_pow(&z, k).unwrap() * f(&lambda, &z, Weight(k)).unwrap();
        let rhs = f(&lambda.conjugate(), &neg_inverse(&z).unwrap(), Weight(k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partition_series_identities(n in 0usize..=7, z in small_nonreal(), h in -2i64..=3) {
        let k = 2 * h;
        let base = g(n, &z, Weight(k)).unwrap();
        prop_assert_eq!(g(n, &neg_inverse(&z).unwrap(), Weight(k)).unwrap(), int_pow(&z, k).unwrap() * base.clone());
        prop_assert_eq!(g(n, &(-z.clone()), Weight(k)).unwrap(), base);
        prop_assert_eq!(g(n, &z, Weight(k + 1)).unwrap(), <Rational as Scalar>::zero());
    }

    #[test]
    fn series_text_round_trips(raw in prop::collection::vec((frac(), frac()), 1..12),
                               floats in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..12)) {
        let exact = QSeries::new(raw.into_iter().map(|(a, b)| Complex::new(a, b)).collect::<Vec<Rational>>());
        let json = exact.to_json();
        prop_assert_eq!(QSeries::<Rational>::from_json(&json).unwrap().to_json(), json);
        let csv = exact.to_csv();
        prop_assert_eq!(QSeries::<Rational>::from_csv(&csv).unwrap().to_csv(), csv);

        let approx = QSeries::new(floats.into_iter().map(|(a, b)| Complex64::new(a, b)).collect::<Vec<Float>>());
        let json = approx.to_json();
        let parsed = QSeries::<Float>::from_json(&json).unwrap();
        prop_assert_eq!(parsed.coeffs(), approx.coeffs());
        prop_assert_eq!(parsed.to_json(), json);
        let csv = approx.to_csv();
        prop_assert_eq!(QSeries::<Float>::from_csv(&csv).unwrap().to_csv(), csv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn float_and_rational_powers_agree(a in nonreal(), k in -8i64..=8) {
        let exact = int_pow(&a, k).unwrap();
        let approx = int_pow(&a.to_c64(), k).unwrap();
        let reference = exact.to_c64();
        prop_assert!((approx - reference).norm() / reference.norm() < 1e-12);
    }
}

#[test]
fn partitions_up_to_twenty() {
    for n in 0..=20 {
        let all = enumerate_partitions(n);
        assert_eq!(BigUint::from(all.len()), partition_count(n));
        let mut originals: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut conjugates: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for lambda in &all {
            let conj = lambda.conjugate();
            assert_eq!(conj.size(), n);
            assert_eq!(conj.conjugate(), *lambda);
            *originals.entry(lambda.parts().to_vec()).or_default() += 1;
            *conjugates.entry(conj.parts().to_vec()).or_default() += 1;
        }
        assert_eq!(originals, conjugates);
    }
}

/// Partitions counted by parts of size at most `m`, one part size at a time.
fn dp_counts(n: usize) -> Vec<BigInt> {
    let mut ways = vec![BigInt::from(0); n + 1];
    ways[0] = BigInt::from(1);
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways
}

#[test]
fn pentagonal_recurrence_matches_dynamic_programming() {
    let dp = dp_counts(200);
    let pent = partition_counts(200);
    for n in 0..=200 {
        assert_eq!(BigInt::from(pent[n].clone()), dp[n], "n={n}");
    }
    assert_eq!(dp[200].to_string(), "3972999029388");
}
