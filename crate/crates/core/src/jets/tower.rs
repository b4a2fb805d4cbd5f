use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::rational_mod_p;
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};
use crate::linalg::{FieldOps, PrimeField};

/// The defining forms of an arrangement reduced modulo `p`.
#[derive(Debug, Clone)]
pub struct ReducedArrangement {
    pub field: PrimeField,
    pub dim: usize,
    /// `(coeffs, constant, multiplicity)` per hyperplane.
    pub forms: Vec<(Vec<u64>, u64, u32)>,
}

impl ReducedArrangement {
    pub fn new(arr: &MultiArrangement, p: u64) -> Result<Self> {
        let field = PrimeField::new(p);
        let modulus = BigInt::from(p);
        let forms = arr
            .hyperplanes()
            .iter()
            .map(|h| {
                let coeffs = h
                    .coeffs()
                    .iter()
                    .map(|c| {
                        let r = ((c % &modulus) + &modulus) % &modulus;
                        r.to_u64().expect("residue fits")
                    })
                    .collect();
                let b = rational_mod_p(h.constant(), p).ok_or(Error::BadReduction(p))?;
                Ok((coeffs, b, h.multiplicity()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedArrangement {
            field,
            dim: arr.dim(),
            forms,
        })
    }

    /// `h_i^{(k)}` at level-`k` coordinates `x`: the constant only survives at `k = 0`.
    pub fn form_value(&self, i: usize, k: usize, x: &[u64]) -> u64 {
        let (c, b, _) = &self.forms[i];
        let lin = self.field.dot(c, x);
        if k == 0 {
            self.field.add(&lin, b)
        } else {
            lin
        }
    }

    /// Total degree `N = sum_i s_i` of the defining polynomial.
    pub fn degree(&self) -> usize {
        self.forms.iter().map(|f| f.2 as usize).sum()
    }
}

/// An `m`-jet over `F_p`: `a[i][k]` for coordinates `i < n` and levels `k <= m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetPoint {
    pub p: u64,
    pub a: Vec<Vec<u64>>,
}

impl JetPoint {
    pub fn new(p: u64, a: Vec<Vec<u64>>) -> Result<Self> {
        let levels = a.first().map_or(0, Vec::len);
        if levels == 0 || a.iter().any(|row| row.len() != levels) {
            return Err(Error::Input("jet rows must be non-empty and of equal length".into()));
        }
        if a.iter().flatten().any(|&v| v >= p) {
            return Err(Error::Input(format!("jet entries must be residues modulo {p}")));
        }
        Ok(JetPoint { p, a })
    }

    /// Highest derivative order `m` carried by the jet.
    pub fn order(&self) -> usize {
        self.a[0].len() - 1
    }

    pub fn level(&self, k: usize) -> Vec<u64> {
        self.a.iter().map(|row| row[k]).collect()
    }
}

/// `h_i^{(k)}(a)` for every hyperplane `i` and order `k <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeTower {
    pub values: Vec<Vec<u64>>,
}

impl DerivativeTower {
    pub fn new(arr: &ReducedArrangement, jet: &JetPoint) -> Self {
        let levels: Vec<Vec<u64>> = (0..=jet.order()).map(|k| jet.level(k)).collect();
        let values = (0..arr.forms.len())
            .map(|i| {
                levels
                    .iter()
                    .enumerate()
                    .map(|(k, x)| arr.form_value(i, k, x))
                    .collect()
            })
            .collect();
        DerivativeTower { values }
    }
}

/// `f^{(k)}(a)` for `f = prod_i h_i^{s_i}`, expanded over compositions of `k`
/// into `N = sum s_i` parts:
/// `sum_beta k!/prod beta_t! * prod_t l_t^{(beta_t)}(a)`.
pub fn formal_derivative_eval(arr: &MultiArrangement, k: usize, jet: &JetPoint) -> Result<u64> {
    let p = jet.p;
    if p as usize <= jet.order() || k > jet.order() {
        return Err(Error::Domain(format!(
            "need k <= m < p (got k = {k}, m = {}, p = {p})",
            jet.order()
        )));
    }
    let reduced = ReducedArrangement::new(arr, p)?;
    if reduced.dim != jet.a.len() {
        return Err(Error::Input("jet dimension does not match the arrangement".into()));
    }
    let tower = DerivativeTower::new(&reduced, jet);
    // one entry per linear factor, repeated s_i times
    let factors: Vec<&Vec<u64>> = reduced
        .forms
        .iter()
        .enumerate()
        .flat_map(|(i, f)| std::iter::repeat_n(&tower.values[i], f.2 as usize))
        .collect();
    let field = &reduced.field;
    let fact: Vec<u64> = (0..=k as u64)
        .scan(1u64, |acc, v| {
            if v > 0 {
                *acc = field.mul(acc, &v);
            }
            Some(*acc)
        })
        .collect();
    let inv_fact: Vec<u64> = fact.iter().map(|f| field.inv(f)).collect();

    // sum over compositions: recursion over factors with the remaining order
    fn go(field: &PrimeField, factors: &[&Vec<u64>], inv_fact: &[u64], left: usize) -> u64 {
        match factors.split_first() {
            None => u64::from(left == 0),
            Some((l, rest)) => {
                if rest.is_empty() {
                    return field.mul(&l[left], &inv_fact[left]);
                }
                let mut acc = 0;
                for beta in 0..=left {
                    if l[beta] == 0 {
                        continue;
                    }
                    let tail = go(field, rest, inv_fact, left - beta);
                    let term = field.mul(&field.mul(&l[beta], &inv_fact[beta]), &tail);
                    acc = field.add(&acc, &term);
                }
                acc
            }
        }
    }
    let sum = go(field, &factors, &inv_fact, k);
    Ok(field.mul(&fact[k], &sum))
}
