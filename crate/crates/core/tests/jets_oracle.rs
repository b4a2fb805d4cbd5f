mod common;

use common::random_arrangement;
use contactloci::contact::{predicted_contact_count, predicted_restricted_count};
use contactloci::fixtures::{self, named_suite};
use contactloci::jets::{
    count_contact, count_restricted, formal_derivative_eval, good_reduction_check, JetPoint,
};
use contactloci::lattice::char_poly;
use contactloci::zeta::zeta_point_count;
use contactloci::MultiArrangement;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binom_mod(r: u64, i: u64, p: u64) -> u64 {
    // small arguments only: exact then reduce
    (contactloci::binom(r as i64, i as i64) % BigInt::from(p)).to_u64().unwrap()
}

/// `f^{(k)}(a)` by multiplying in one linear factor at a time with the
/// general product rule `(gh)^{(r)} = sum_i binom(r, i) g^{(i)} h^{(r-i)}`.
fn leibniz(arr: &MultiArrangement, jet: &JetPoint, k: usize) -> u64 {
    let p = jet.p;
    let m = jet.order();
    let mut f = vec![0u64; m + 1];
    f[0] = 1;
    for h in arr.hyperplanes() {
        let c: Vec<u64> = h
            .coeffs()
            .iter()
            .map(|v| ((v % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p)).to_u64().unwrap())
            .collect();
        let b = contactloci::arith::rational_mod_p(h.constant(), p).unwrap();
        let l: Vec<u64> = (0..=m)
            .map(|lvl| {
                let lin = c.iter().zip(&jet.a).map(|(ci, row)| ci * row[lvl] % p).sum::<u64>() % p;
                if lvl == 0 {
                    (lin + b) % p
                } else {
                    lin
                }
            })
            .collect();
        for _ in 0..h.multiplicity() {
            let g: Vec<u64> = (0..=m)
                .map(|r| {
                    (0..=r as u64).fold(0, |acc, i| {
                        (acc + binom_mod(r as u64, i, p) * f[i as usize] % p * l[r - i as usize]) % p
                    })
                })
                .collect();
            f = g;
        }
    }
    f[k]
}

#[test]
fn multinomial_expansion_matches_product_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let p = 11;
    for (name, arr) in named_suite() {
        for _ in 0..100 {
            let m = 3;
            let a: Vec<Vec<u64>> = (0..arr.dim())
                .map(|_| (0..=m).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            let jet = JetPoint::new(p, a).unwrap();
            for k in 0..=m {
                assert_eq!(
                    formal_derivative_eval(&arr, k, &jet).unwrap(),
                    leibniz(&arr, &jet, k),
                    "{name} k={k}"
                );
            }
        }
    }
}

#[test]
fn order_zero_counts_the_complement() {
    for (name, arr) in named_suite() {
        for p in [5u64, 7, 11] {
            if !good_reduction_check(&arr, p) {
                continue;
            }
            let chi = char_poly(&arr).unwrap().eval(&BigInt::from(p));
            assert_eq!(count_contact(&arr, 0, p).unwrap(), chi, "{name} p={p}");
        }
    }
}

#[test]
fn zeta_specialization_counts_jets_up_to_order_three() {
    for (name, arr) in named_suite() {
        if !arr.is_central() {
            continue;
        }
        for m in 0..=3 {
            for p in [5u64, 7] {
                if !good_reduction_check(&arr, p) {
                    continue;
                }
                assert_eq!(
                    zeta_point_count(&arr, m, p).unwrap(),
                    count_contact(&arr, m, p).unwrap(),
                    "{name} m={m} p={p}"
                );
            }
        }
    }
}

#[test]
fn random_arrangements_satisfy_both_count_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    for trial in 0..25 {
        let arr = random_arrangement(&mut rng, 2, 2 + trial % 3, trial % 2 == 0);
        for p in [5u64, 7] {
            if !good_reduction_check(&arr, p) {
                continue;
            }
            for m in 1..=3 {
                if u64::from(m) >= p {
                    continue;
                }
                assert_eq!(
                    count_contact(&arr, m, p).unwrap(),
                    predicted_contact_count(&arr, m, p).unwrap(),
                    "trial {trial} m={m} p={p}"
                );
                assert_eq!(
                    count_restricted(&arr, m, p).unwrap(),
                    predicted_restricted_count(&arr, m, p).unwrap(),
                    "trial {trial} m={m} p={p}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn three_space_counts() {
    let arr = MultiArrangement::from_i64(
        3,
        &[(&[1, 0, 0], 0, 1), (&[0, 1, 0], 0, 2), (&[0, 0, 1], -1, 1), (&[1, 1, 1], 0, 1)],
    )
    .unwrap();
    for m in 0..=2 {
        assert_eq!(
            count_contact(&arr, m, 5).unwrap(),
            predicted_contact_count(&arr, m, 5).unwrap(),
            "m={m}"
        );
        if m > 0 {
            assert_eq!(
                count_restricted(&arr, m, 5).unwrap(),
                predicted_restricted_count(&arr, m, 5).unwrap(),
                "m={m}"
            );
        }
    }
}

#[test]
fn central_three_lines_order_two() {
    let a = fixtures::central_three_lines();
    assert_eq!(count_contact(&a, 2, 5).unwrap(), BigInt::from(1200));
}
