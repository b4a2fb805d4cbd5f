//! Truncated naive motivic zeta functions of central multi-arrangements.
//!
//! The coefficient of `T^m` is `sum_{j in T(m)} chi_{A_j}(q) q^{-nm}`, a
//! Laurent polynomial in `q` (standing for the class of the affine line).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{LaurentPoly, Rational};
use crate::arrangement::MultiArrangement;
use crate::budget::Budget;
use crate::contact::{build_component, enumerate_t_with};
use crate::error::{Error, Result};
use crate::lattice::has_good_reduction;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeriesTruncation {
    pub max_order: u32,
    /// Coefficient of `T^m` at index `m`.
    pub coefficients: Vec<LaurentPoly>,
}

/// The `T^m` coefficient alone.
pub fn zeta_coefficient(arr: &MultiArrangement, m: u32) -> Result<LaurentPoly> {
    zeta_coefficient_with(arr, m, &Budget::default())
}

fn zeta_coefficient_with(arr: &MultiArrangement, m: u32, budget: &Budget) -> Result<LaurentPoly> {
    if !arr.is_central() {
        return Err(Error::NonCentral);
    }
    let shift = -(arr.dim() as i64) * i64::from(m);
    let mut total = LaurentPoly::zero();
    for j in enumerate_t_with(arr, m, budget)? {
        let c = build_component(arr, &j)?;
        total = &total + &LaurentPoly::from_poly(&c.char_poly, shift);
    }
    Ok(total)
}

pub fn naive_zeta(arr: &MultiArrangement, max_order: u32) -> Result<LaurentSeriesTruncation> {
    naive_zeta_with(arr, max_order, &Budget::default())
}

pub fn naive_zeta_with(arr: &MultiArrangement, max_order: u32, budget: &Budget) -> Result<LaurentSeriesTruncation> {
    if !arr.is_central() {
        return Err(Error::NonCentral);
    }
    let coefficients = (0..=max_order)
        .map(|m| zeta_coefficient_with(arr, m, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeriesTruncation {
        max_order,
        coefficients,
    })
}

/// Predicted `#X_m(F_p)`: the `T^m` coefficient at `q = p` times `p^{nm}`.
pub fn zeta_point_count(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    if !crate::linalg::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if !has_good_reduction(arr, p) {
        return Err(Error::BadReduction(p));
    }
    let coeff = zeta_coefficient(arr, m)?;
    let q = Rational::from_integer(BigInt::from(p));
    let scale = num_traits::pow(BigInt::from(p), arr.dim() * m as usize);
    let value = coeff.eval_rational(&q) * Rational::from_integer(scale);
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}
