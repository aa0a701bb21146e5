use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use exw::charengine::shifted_theta;
use exw::qseries::{rat, ratio, QSeries};
use exw::rootdata::LatticeModel;
use exw::rootdata::{build_root_system, weyl_group, weyl_orbit_signed, Label};
use exw::ProductSpec;

fn series(coeffs: Vec<i64>, order: i64) -> QSeries {
    QSeries::from_ints(&coeffs, order)
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    (prop::collection::vec(-5i64..6, 1..10), 4i64..12).prop_map(|(c, n)| series(c, n))
}

fn unit_series() -> impl Strategy<Value = QSeries> {
    (prop::collection::vec(-5i64..6, 1..10), 4i64..12).prop_map(|(mut c, n)| {
        c[0] = 1;
        series(c, n)
    })
}

proptest! {
    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), QSeries::one(a.order()));
    }

    #[test]
    fn truncation_commutes_with_products(a in arb_series(), b in arb_series(), k in 1i64..6) {
        prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
        prop_assert!(a.mul(&b).order() <= a.order().min(b.order()));
    }

    #[test]
    fn partitions_match_naive_count(n in 1i64..40) {
        let p = QSeries::product(&ProductSpec::new().factor(1, 0, -1), n + 1).unwrap();
        prop_assert_eq!(p.coeff(n), rat(partitions(n, n)));
    }
}

fn partitions(n: i64, largest: i64) -> i64 {
    if n == 0 {
        return 1;
    }
    (1..=largest.min(n)).map(|k| partitions(n - k, k)).sum()
}

#[test]
fn weyl_group_orders_and_invariants() {
    for (label, order) in [(Label::G2, 12), (Label::B3, 48), (Label::F4, 1152)] {
        let rs = build_root_system(label).unwrap();
        let w = weyl_group(&rs).unwrap();
        assert_eq!(w.len(), order, "{label}");
        let ints = |m: &Vec<Vec<i64>>| -> Vec<Vec<BigRational>> {
            m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
        };
        for e in w.iter().step_by(7) {
            let m = ints(&e.matrix);
            let mt = exw::linalg::transpose(&m);
            assert_eq!(exw::linalg::mat_mul(&exw::linalg::mat_mul(&mt, &rs.gram), &m), rs.gram);
            assert_eq!(exw::linalg::determinant(&m), rat(i64::from(e.sign)));
        }
        let orbit = weyl_orbit_signed(&rs, &rs.weyl_vector).unwrap();
        assert_eq!(orbit.len(), order);
        assert_eq!(orbit.iter().map(|(_, s)| i64::from(*s)).sum::<i64>(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn sign_is_multiplicative(i in 0usize..1152, j in 0usize..1152) {
        let rs = build_root_system(Label::F4).unwrap();
        let w = weyl_group(&rs).unwrap();
        let ab = w[i].compose(&w[j]);
        prop_assert_eq!(ab.sign, w[i].sign * w[j].sign);
        prop_assert!(w.contains(&ab));
    }
}

#[test]
fn g2_signed_orbit_of_rho() {
    let rs = build_root_system(Label::G2).unwrap();
    let got: BTreeMap<(i64, i64), i8> = weyl_orbit_signed(&rs, &[rat(5), rat(3)])
        .unwrap()
        .into_iter()
        .map(|(v, s)| ((int(&v[0]), int(&v[1])), s))
        .collect();
    let expected: BTreeMap<(i64, i64), i8> = [
        ((5, 3), 1),
        ((4, 3), -1),
        ((5, 2), -1),
        ((1, 2), 1),
        ((4, 1), 1),
        ((-1, 1), -1),
        ((1, -1), -1),
        ((-4, -1), 1),
        ((-1, -2), 1),
        ((-5, -2), -1),
        ((-4, -3), -1),
        ((-5, -3), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, expected);
    let zero = weyl_orbit_signed(&rs, &[rat(0), rat(0)]).unwrap();
    assert_eq!(zero, vec![(vec![rat(0), rat(0)], 1)]);
}

fn int(x: &BigRational) -> i64 {
    assert!(x.is_integer());
    x.to_integer().try_into().unwrap()
}

/// Every E8 point within `max_norm` of `center`, by walking doubled
/// coordinates one at a time.
fn e8_brute(center: &[BigRational], max_norm: &BigRational) -> Vec<Vec<BigRational>> {
    fn walk(
        i: usize,
        parity: i64,
        center: &[BigRational],
        left: BigRational,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<BigRational>>,
    ) {
        if i == 8 {
            if cur.iter().sum::<i64>() % 4 == 0 {
                out.push(cur.iter().map(|&d| ratio(d, 2)).collect());
            }
            return;
        }
        for d in (-12..=12).filter(|d: &i64| d.rem_euclid(2) == parity) {
            let x = ratio(d, 2) - &center[i];
            let r = &left - &x * &x;
            if r >= BigRational::zero() {
                cur.push(d);
                walk(i + 1, parity, center, r, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for parity in [0, 1] {
        walk(0, parity, center, max_norm.clone(), &mut Vec::new(), &mut out);
    }
    out
}

fn sorted(mut v: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    v.sort();
    v
}

#[test]
fn e8_shells() {
    let e8 = LatticeModel::e8();
    let zero = vec![BigRational::zero(); 8];
    let pts = e8.enumerate_shifted(&zero, &rat(6));
    let mut shells = BTreeMap::new();
    for p in &pts {
        *shells.entry(e8.norm2(p)).or_insert(0) += 1;
    }
    let counts: Vec<i64> = (0..4).map(|n| shells.get(&rat(2 * n)).copied().unwrap_or(0)).collect();
    assert_eq!(counts, vec![1, 240, 2160, 6720]);
    assert_eq!(sorted(pts), sorted(e8_brute(&zero, &rat(6))));
    let theta = shifted_theta(&e8, &zero, 1, 3).unwrap();
    assert_eq!(theta, QSeries::from_ints(&[1, 240, 2160], 3));
}

#[test]
fn unshifted_theta_is_one_below_u() {
    for (lattice, u) in [(LatticeModel::e8(), 7), (LatticeModel::e7(), 5)] {
        let zero = vec![BigRational::zero(); 8];
        assert_eq!(shifted_theta(&lattice, &zero, u, u).unwrap(), QSeries::one(u));
    }
}

fn arb_center() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-3i64..4, 1i64..5), 8).prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn e8_enumeration_matches_brute_force(center in arb_center(), norm in 0i64..=6) {
        let e8 = LatticeModel::e8();
        let got = e8.enumerate_shifted(&center, &rat(norm));
        prop_assert_eq!(sorted(got), sorted(e8_brute(&center, &rat(norm))));
    }

    #[test]
    fn e7_enumeration_matches_brute_force(center in arb_center(), norm in 0i64..=6) {
        let e7 = LatticeModel::e7();
        let got = e7.enumerate_shifted(&center, &rat(norm));
        let want: Vec<_> = e8_brute(&center, &rat(norm))
            .into_iter()
            .filter(|v| v.iter().sum::<BigRational>().is_zero())
            .collect();
        prop_assert_eq!(sorted(got), sorted(want));
    }

    #[test]
    fn coroot_enumeration_matches_brute_force(
        label in prop::sample::select(vec![Label::G2, Label::B3]),
        shift in prop::collection::vec((-6i64..7, 1i64..4), 3),
        norm in 0i64..=6,
    ) {
        let rs = build_root_system(label).unwrap();
        let q = LatticeModel::coroot(&rs);
        let center: Vec<BigRational> = shift[..rs.rank].iter().map(|&(n, d)| ratio(n, d)).collect();
        let got = q.enumerate_shifted(&center, &rat(norm));
        let mut want = Vec::new();
        let box_ = -14i64..=14;
        let mut cur = vec![*box_.start(); rs.rank];
        loop {
            let v: Vec<BigRational> = cur.iter().map(|&x| rat(x)).collect();
            let diff: Vec<BigRational> = v.iter().zip(&center).map(|(a, b)| a - b).collect();
            if q.contains(&v) && q.norm2(&diff) <= rat(norm) {
                want.push(v);
            }
            // odometer over the coordinate box
            let mut k = 0;
            while k < cur.len() && cur[k] == *box_.end() {
                cur[k] = *box_.start();
                k += 1;
            }
            if k == cur.len() {
                break;
            }
            cur[k] += 1;
        }
        prop_assert_eq!(sorted(got), sorted(want));
    }
}

#[test]
fn one_is_multiplicative_identity() {
    let a = QSeries::from_ints(&[3, 1, 4, 1, 5], 5);
    assert_eq!(a.mul(&QSeries::one(9)), a);
    assert!(QSeries::zero(4).coeff(0).is_zero());
    assert!(QSeries::one(4).coeff(0).is_one());
}
