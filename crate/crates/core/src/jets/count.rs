use num_bigint::BigInt;

use crate::arrangement::MultiArrangement;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::has_good_reduction;
use crate::linalg::{is_prime, FieldOps, PrimeField};

use super::tower::{formal_derivative_eval, JetPoint, ReducedArrangement};

/// The intersection data of the arrangement and of its centralization agree
/// over `Q` and over `F_p`. Jet levels above zero see only the homogeneous
/// parts, so both are needed for counts to reduce correctly.
pub fn good_reduction_check(arr: &MultiArrangement, p: u64) -> bool {
    is_prime(p) && has_good_reduction(arr, p) && has_good_reduction(&arr.centralize(), p)
}

fn check_inputs(arr: &MultiArrangement, m: u32, p: u64, budget: &Budget) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::Domain(format!("{p} is not a prime below 2^32")));
    }
    if p <= u64::from(m) {
        return Err(Error::Domain(format!("need p > m (got p = {p}, m = {m})")));
    }
    let exponent = arr.dim() as u32 * (m + 1);
    let points = u128::from(p).checked_pow(exponent);
    if points.is_none_or(|v| v > budget.max_evaluations) {
        return Err(Error::Budget(format!(
            "{p}^{exponent} jets exceed the evaluation budget of {}",
            budget.max_evaluations
        )));
    }
    if !good_reduction_check(arr, p) {
        return Err(Error::BadReduction(p));
    }
    Ok(())
}

struct Counter<'a> {
    arr: &'a ReducedArrangement,
    m: usize,
    restricted: bool,
    /// order of vanishing once fixed
    ord: Vec<Option<usize>>,
    /// `(k!)^{-1}` for `k <= m`
    inv_fact: Vec<u64>,
    total: BigInt,
}

impl Counter<'_> {
    fn field(&self) -> &PrimeField {
        &self.arr.field
    }

    /// Enumerates level `k` given the orders fixed so far, their weight, and
    /// the partial leading coefficient `lead`.
    fn level(&mut self, k: usize, weight: usize, lead: u64) {
        let n = self.arr.dim;
        let p = self.field().modulus();
        let alive: Vec<usize> = (0..self.ord.len()).filter(|&i| self.ord[i].is_none()).collect();
        let mut x = vec![0u64; n];
        loop {
            let mut w = weight;
            let mut c = lead;
            let mut fixed = Vec::new();
            for &i in &alive {
                let v = self.arr.form_value(i, k, &x);
                if v != 0 {
                    let s = self.arr.forms[i].2;
                    w += s as usize * k;
                    let lc = self.field().mul(&v, &self.inv_fact[k]);
                    c = self.field().mul(&c, &self.field().pow(lc, u64::from(s)));
                    fixed.push(i);
                }
            }
            let still: usize = alive
                .iter()
                .filter(|i| !fixed.contains(i))
                .map(|&i| self.arr.forms[i].2 as usize)
                .sum();
            if still == 0 {
                if w == self.m && (!self.restricted || c == 1) {
                    let free = n * (self.m - k);
                    self.total += num_traits::pow(BigInt::from(p), free);
                }
            } else if w + still * (k + 1) <= self.m {
                for &i in &fixed {
                    self.ord[i] = Some(k);
                }
                self.level(k + 1, w, c);
                for &i in &fixed {
                    self.ord[i] = None;
                }
            }
            // odometer over F_p^n
            let mut t = 0;
            while t < n {
                x[t] += 1;
                if x[t] < p {
                    break;
                }
                x[t] = 0;
                t += 1;
            }
            if t == n {
                break;
            }
        }
    }
}

fn count(arr: &MultiArrangement, m: u32, p: u64, restricted: bool, budget: &Budget) -> Result<BigInt> {
    check_inputs(arr, m, p, budget)?;
    let reduced = ReducedArrangement::new(arr, p)?;
    let field = reduced.field;
    let mut inv_fact = vec![1u64];
    let mut f = 1u64;
    for k in 1..=u64::from(m) {
        f = field.mul(&f, &k);
        inv_fact.push(field.inv(&f));
    }
    let mut counter = Counter {
        arr: &reduced,
        m: m as usize,
        restricted,
        ord: vec![None; reduced.forms.len()],
        inv_fact,
        total: BigInt::from(0),
    };
    counter.level(0, 0, 1);
    Ok(counter.total)
}

/// `#X_m(F_p)`: jets along which `f` vanishes to order exactly `m`, counted
/// through the orders of the individual linear factors.
pub fn count_contact(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    count_contact_with(arr, m, p, &Budget::default())
}

pub fn count_contact_with(arr: &MultiArrangement, m: u32, p: u64, budget: &Budget) -> Result<BigInt> {
    count(arr, m, p, false, budget)
}

/// Jets of order exactly `m` with `f^{(m)}(a) = m!`, i.e. angular component one.
pub fn count_restricted(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    count_restricted_with(arr, m, p, &Budget::default())
}

pub fn count_restricted_with(arr: &MultiArrangement, m: u32, p: u64, budget: &Budget) -> Result<BigInt> {
    count(arr, m, p, true, budget)
}

fn count_raw(arr: &MultiArrangement, m: u32, p: u64, restricted: bool) -> Result<BigInt> {
    check_inputs(arr, m, p, &Budget::default())?;
    let n = arr.dim();
    let m = m as usize;
    let field = PrimeField::new(p);
    let m_fact = (1..=m as u64).fold(1u64, |acc, v| field.mul(&acc, &v));
    let cells = n * (m + 1);
    let mut flat = vec![0u64; cells];
    let mut total = 0u64;
    loop {
        let a: Vec<Vec<u64>> = (0..n).map(|i| flat[i * (m + 1)..(i + 1) * (m + 1)].to_vec()).collect();
        let jet = JetPoint { p, a };
        let mut ok = true;
        for k in 0..m {
            if formal_derivative_eval(arr, k, &jet)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            let top = formal_derivative_eval(arr, m, &jet)?;
            ok = if restricted { top == m_fact } else { top != 0 };
        }
        total += u64::from(ok);
        let mut t = 0;
        while t < cells {
            flat[t] += 1;
            if flat[t] < p {
                break;
            }
            flat[t] = 0;
            t += 1;
        }
        if t == cells {
            break;
        }
    }
    Ok(BigInt::from(total))
}

/// Reference counter: evaluates `f^{(k)}` on every jet. Slow; for tests.
pub fn count_contact_raw(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    count_raw(arr, m, p, false)
}

pub fn count_restricted_raw(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    count_raw(arr, m, p, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn examples() {
        assert_eq!(count_contact(&single_line(), 2, 5).unwrap(), b(4));
        assert_eq!(count_contact(&central_three_lines(), 1, 5).unwrap(), b(240));
        assert_eq!(count_contact(&triangle(), 0, 5).unwrap(), b(13));
        assert_eq!(count_restricted(&single_line(), 2, 5).unwrap(), b(1));
        assert_eq!(count_restricted(&single_line(), 0, 5).unwrap(), b(1));
        assert_eq!(count_restricted(&central_three_lines(), 1, 5).unwrap(), b(60));
    }

    #[test]
    fn factor_orders_match_raw_derivatives() {
        for (name, arr) in named_suite() {
            for m in 0..=2 {
                let p = 5;
                if !good_reduction_check(&arr, p) || arr.dim() * (m as usize + 1) > 4 {
                    continue;
                }
                assert_eq!(
                    count_contact(&arr, m, p).unwrap(),
                    count_contact_raw(&arr, m, p).unwrap(),
                    "{name} m={m}"
                );
                assert_eq!(
                    count_restricted(&arr, m, p).unwrap(),
                    count_restricted_raw(&arr, m, p).unwrap(),
                    "{name} m={m}"
                );
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(count_contact(&single_line(), 5, 5), Err(Error::Domain(_))));
        assert!(matches!(count_contact(&single_line(), 1, 6), Err(Error::Domain(_))));
        let tiny = Budget {
            max_evaluations: 10,
            ..Budget::default()
        };
        assert!(matches!(
            count_contact_with(&triangle(), 1, 5, &tiny),
            Err(Error::Budget(_))
        ));
        let collapsing = MultiArrangement::from_i64(1, &[(&[1], 0, 1), (&[1], -5, 1)]).unwrap();
        assert!(matches!(count_contact(&collapsing, 1, 5), Err(Error::BadReduction(5))));
        assert!(good_reduction_check(&triangle(), 5));
        assert!(!good_reduction_check(&collapsing, 5));
    }
}
