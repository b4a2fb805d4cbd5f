//! Brute-force point counts on a single component over `F_p`.
//!
//! These recompute every flat modulo `p` from the integer data of the
//! arrangement and enumerate the intrinsic coordinates of each factor, so
//! they share no code path with the rational construction of components.


use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{factorial, rational_mod_p};
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, solve_affine, AffineFlat, FieldOps, PrimeField};

use super::ChainDescriptor;

struct FactorData {
    flat: AffineFlat<u64>,
    /// `(coeffs, constant, exponent)` of the forms `h_i^{(k)}` with `j_i = k`.
    forms: Vec<(Vec<u64>, u64, u32)>,
}

fn factors_mod_p(arr: &MultiArrangement, j: &ChainDescriptor, field: &PrimeField) -> Result<Vec<FactorData>> {
    let p = field.modulus();
    let bad = || Error::BadReduction(p);
    let n = arr.dim();
    let reduce = |c: &BigInt| -> u64 {
        let r = c % BigInt::from(p);
        let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
        r.to_u64().expect("residue fits")
    };
    let mut coeffs = Vec::new();
    let mut constants = Vec::new();
    for h in arr.hyperplanes() {
        coeffs.push(h.coeffs().iter().map(reduce).collect::<Vec<u64>>());
        constants.push(rational_mod_p(h.constant(), p).ok_or_else(bad)?);
    }
    let mut out = Vec::new();
    for level in 0..=j.m {
        let rows: Vec<(Vec<u64>, u64)> = j
            .level_set(level)
            .into_iter()
            .map(|i| {
                let rhs = if level == 0 { field.neg(&constants[i]) } else { 0 };
                (coeffs[i].clone(), rhs)
            })
            .collect();
        let flat = solve_affine(field, n, &rows).ok_or_else(bad)?;
        let forms = j
            .level_exact(level)
            .into_iter()
            .map(|i| {
                let b = if level == 0 { constants[i] } else { 0 };
                (coeffs[i].clone(), b, arr.hyperplanes()[i].multiplicity())
            })
            .collect();
        out.push(FactorData { flat, forms });
    }
    Ok(out)
}

/// Histogram over `F_p^*` of the product of the forms on the points of the
/// factor where none of them vanish. Index 0 is unused.
fn factor_histogram(field: &PrimeField, f: &FactorData, budget: u128) -> Result<Vec<u128>> {
    let p = field.modulus();
    let dim = f.flat.dim();
    let mut hist = vec![0u128; p as usize];
    if f.forms.is_empty() {
        hist[1] = u128::from(p).pow(dim as u32);
        return Ok(hist);
    }
    let total = u128::from(p).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::Budget(format!("{total} points exceed the evaluation budget")));
    }
    // Pull each form back once so each point costs O(dim) per form.
    let pulled: Vec<(Vec<u64>, u64, u32)> = f
        .forms
        .iter()
        .map(|(c, b, e)| {
            let c0 = field.add(&field.dot(c, &f.flat.point), b);
            let lin = f.flat.directions.iter().map(|d| field.dot(c, d)).collect();
            (lin, c0, *e)
        })
        .collect();
    let mut u = vec![0u64; dim];
    loop {
        let mut prod = 1u64;
        let mut alive = true;
        for (lin, c0, e) in &pulled {
            let v = field.add(&field.dot(lin, &u), c0);
            if v == 0 {
                alive = false;
                break;
            }
            prod = field.mul(&prod, &field.pow(v, u64::from(*e)));
        }
        if alive {
            hist[prod as usize] += 1;
        }
        // odometer
        let mut t = 0;
        while t < dim {
            u[t] += 1;
            if u[t] < p {
                break;
            }
            u[t] = 0;
            t += 1;
        }
        if t == dim {
            break;
        }
    }
    Ok(hist)
}

fn convolve(field: &PrimeField, a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len()];
    for (x, &ca) in a.iter().enumerate().skip(1) {
        if ca == 0 {
            continue;
        }
        for (y, &cb) in b.iter().enumerate().skip(1) {
            if cb != 0 {
                out[field.mul(&(x as u64), &(y as u64)) as usize] += ca * cb;
            }
        }
    }
    out
}

fn product_histogram(arr: &MultiArrangement, j: &ChainDescriptor, p: u64) -> Result<Vec<u128>> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    j.validate(arr)?;
    let field = PrimeField::new(p);
    let budget = crate::budget::Budget::default().max_evaluations;
    let mut acc: Option<Vec<u128>> = None;
    for f in factors_mod_p(arr, j, &field)? {
        let h = factor_histogram(&field, &f, budget)?;
        acc = Some(match acc {
            None => h,
            Some(a) => convolve(&field, &a, &h),
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// Number of `F_p` points of `X_j` minus the hyperplanes of `A_j`.
pub fn component_complement_count(arr: &MultiArrangement, j: &ChainDescriptor, p: u64) -> Result<BigInt> {
    let hist = product_histogram(arr, j, p)?;
    Ok(BigInt::from(hist.iter().sum::<u128>()))
}

/// Number of `F_p` points of `X_j` satisfying the fiber equation
/// `prod_i (h_i^{(j_i)})^{s_i} = prod_i (j_i!)^{s_i}`.
pub fn component_fiber_count(arr: &MultiArrangement, j: &ChainDescriptor, p: u64) -> Result<BigInt> {
    let hist = product_histogram(arr, j, p)?;
    let field = PrimeField::new(p);
    let mut target = 1u64;
    for (&ji, s) in j.j.iter().zip(arr.multiplicities()) {
        let f = (factorial(ji) % BigInt::from(p)).to_u64().expect("residue fits");
        target = field.mul(&target, &field.pow(f, u64::from(s)));
    }
    if target == 0 {
        return Err(Error::Domain(format!("p = {p} divides a factorial j_i!")));
    }
    Ok(BigInt::from(hist[target as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn complement_count_matches_char_poly() {
        for (_, arr) in named_suite() {
            for m in 0..=2 {
                for j in crate::contact::enumerate_t(&arr, m).unwrap() {
                    let c = crate::contact::build_component(&arr, &j).unwrap();
                    for p in [5u64, 7] {
                        assert_eq!(
                            component_complement_count(&arr, &j, p).unwrap(),
                            c.char_poly.eval(&BigInt::from(p)),
                            "{j:?} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn central_lines_fiber_counts() {
        let a = central_three_lines();
        // each of the three components contributes 20 at p = 5
        for j in crate::contact::enumerate_t(&a, 1).unwrap() {
            assert_eq!(component_fiber_count(&a, &j, 5).unwrap(), BigInt::from(20));
        }
    }

    #[test]
    fn single_line_fiber_count_is_one() {
        let a = single_line();
        let j = ChainDescriptor::new(vec![1], &a);
        assert_eq!(component_fiber_count(&a, &j, 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn bad_reduction_detected() {
        // 5x = 1 has no solution modulo 5
        let a = MultiArrangement::from_i64(1, &[(&[5], -1, 1)]).unwrap();
        let j = ChainDescriptor::new(vec![1], &a);
        assert!(matches!(component_fiber_count(&a, &j, 5), Err(Error::BadReduction(5))));
    }
}
