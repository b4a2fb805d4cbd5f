//! Components of contact loci.
//!
//! For `m >= 1` the irreducible components of the `m`-contact locus are
//! indexed by exponent vectors `j` with `sum_i j_i s_i = m` whose level sets
//! `S_k = {i : j_i > k}` are all complete. The enumeration works on the
//! equivalent form of strictly descending chains `T_1 ⊋ ... ⊋ T_l` of
//! complete sets with positive weights `nu`, which is far smaller than the
//! set of all exponent vectors of weight `m`.

mod component;
mod fiber;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::IntPoly;
use crate::arrangement::{Flat, MultiArrangement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::IntersectionPoset;

pub use component::{build_component, Component, ComponentFactor, RestrictedForm};
pub use fiber::{component_complement_count, component_fiber_count};

/// Exponent vector `j` together with its weight `m = sum_i j_i s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainDescriptor {
    pub j: Vec<u32>,
    pub m: u32,
}

impl ChainDescriptor {
    /// Computes the weight from the arrangement's multiplicities.
    pub fn new(j: Vec<u32>, arr: &MultiArrangement) -> Self {
        let m = j
            .iter()
            .zip(arr.multiplicities())
            .map(|(&ji, s)| ji * s)
            .sum();
        ChainDescriptor { j, m }
    }

    pub fn zero(d: usize) -> Self {
        ChainDescriptor { j: vec![0; d], m: 0 }
    }

    /// `S_k = {i : j_i > k}`.
    pub fn level_set(&self, k: u32) -> Vec<usize> {
        (0..self.j.len()).filter(|&i| self.j[i] > k).collect()
    }

    /// `J_k = {i : j_i = k}`.
    pub fn level_exact(&self, k: u32) -> Vec<usize> {
        (0..self.j.len()).filter(|&i| self.j[i] == k).collect()
    }

    /// The chain `S_0 ⊇ S_1 ⊇ ... ⊇ S_m`.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        (0..=self.m).map(|k| self.level_set(k)).collect()
    }

    /// Checks that `j` lies in `T(m)` for this arrangement.
    pub fn validate(&self, arr: &MultiArrangement) -> Result<()> {
        if self.j.len() != arr.len() {
            return Err(Error::InvalidDescriptor(format!(
                "descriptor has {} entries for {} hyperplanes",
                self.j.len(),
                arr.len()
            )));
        }
        let weight: u64 = self
            .j
            .iter()
            .zip(arr.multiplicities())
            .map(|(&ji, s)| u64::from(ji) * u64::from(s))
            .sum();
        if weight != u64::from(self.m) {
            return Err(Error::InvalidDescriptor(format!(
                "weight {weight} does not match m = {}",
                self.m
            )));
        }
        let mut levels: Vec<u32> = self.j.iter().copied().filter(|&v| v > 0).collect();
        levels.sort_unstable();
        levels.dedup();
        // S_k only changes just below each distinct nonzero value of j.
        for v in levels {
            let set = self.level_set(v - 1);
            if !arr.is_complete(&set) {
                return Err(Error::InvalidDescriptor(format!(
                    "level set {set:?} is not complete"
                )));
            }
        }
        Ok(())
    }
}

/// Strictly descending chain of non-empty complete sets with positive weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuEncoding {
    pub chain: Vec<Flat>,
    pub nu: Vec<u32>,
}

impl NuEncoding {
    /// `sum_alpha nu(T_alpha) s(T_alpha)`.
    pub fn weight(&self) -> u64 {
        self.chain
            .iter()
            .zip(&self.nu)
            .map(|(t, &v)| u64::from(v) * t.s_value)
            .sum()
    }

    /// Inverse of [`nu_encoding`]: `j_i` sums the weights of the sets containing `i`.
    pub fn to_descriptor(&self, d: usize) -> ChainDescriptor {
        let mut j = vec![0u32; d];
        for (t, &v) in self.chain.iter().zip(&self.nu) {
            for &i in &t.indices {
                j[i] += v;
            }
        }
        ChainDescriptor {
            j,
            m: self.weight() as u32,
        }
    }
}

/// Groups the repeated sets of the chain `S_0 ⊇ ... ⊇ S_{m-1}`.
pub fn nu_encoding(arr: &MultiArrangement, j: &ChainDescriptor) -> Result<NuEncoding> {
    if j.m == 0 {
        return Err(Error::InvalidDescriptor(
            "the zero descriptor has no chain of non-empty sets".into(),
        ));
    }
    j.validate(arr)?;
    let mut chain: Vec<Flat> = Vec::new();
    let mut nu: Vec<u32> = Vec::new();
    for set in j.chain() {
        if set.is_empty() {
            break;
        }
        match chain.last() {
            Some(last) if last.indices == set => *nu.last_mut().unwrap() += 1,
            _ => {
                let flat = arr
                    .completion(&set)
                    .expect("validated level sets have non-empty intersection");
                chain.push(flat);
                nu.push(1);
            }
        }
    }
    Ok(NuEncoding { chain, nu })
}

/// All of `T(m)`, sorted lexicographically by `j`.
pub fn enumerate_t(arr: &MultiArrangement, m: u32) -> Result<Vec<ChainDescriptor>> {
    enumerate_t_with(arr, m, &Budget::default())
}

pub fn enumerate_t_with(arr: &MultiArrangement, m: u32, budget: &Budget) -> Result<Vec<ChainDescriptor>> {
    if m > budget.max_order {
        return Err(Error::Budget(format!(
            "contact order {m} exceeds the limit of {}",
            budget.max_order
        )));
    }
    let d = arr.len();
    if m == 0 {
        return Ok(vec![ChainDescriptor::zero(d)]);
    }
    let poset = IntersectionPoset::build_with(arr, budget)?;
    let flats: Vec<&Flat> = poset
        .elements()
        .iter()
        .filter(|f| !f.indices.is_empty())
        .collect();
    let children: Vec<Vec<usize>> = flats
        .iter()
        .map(|a| {
            (0..flats.len())
                .filter(|&b| flats[b].indices.len() < a.indices.len() && flats[b].is_below(a))
                .collect()
        })
        .collect();
    let roots: Vec<usize> = (0..flats.len()).collect();

    struct Search<'a> {
        flats: &'a [&'a Flat],
        children: &'a [Vec<usize>],
        j: Vec<u32>,
        out: Vec<Vec<u32>>,
        limit: usize,
    }

    impl Search<'_> {
        fn descend(&mut self, candidates: &[usize], remaining: u64) -> Result<()> {
            for &c in candidates {
                let flat = self.flats[c];
                let s = flat.s_value;
                let mut used = 0u32;
                while u64::from(used + 1) * s <= remaining {
                    used += 1;
                    for &i in &flat.indices {
                        self.j[i] += 1;
                    }
                    let left = remaining - u64::from(used) * s;
                    if left == 0 {
                        if self.out.len() == self.limit {
                            return Err(Error::Budget(format!(
                                "more than {} components",
                                self.limit
                            )));
                        }
                        self.out.push(self.j.clone());
                    } else {
                        let kids = self.children[c].clone();
                        self.descend(&kids, left)?;
                    }
                }
                for &i in &flat.indices {
                    self.j[i] -= used;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        flats: &flats,
        children: &children,
        j: vec![0; d],
        out: Vec::new(),
        limit: budget.max_descriptors,
    };
    search.descend(&roots, u64::from(m))?;
    let mut out = search.out;
    out.sort();
    Ok(out
        .into_iter()
        .map(|j| ChainDescriptor { j, m })
        .collect())
}

/// Betti polynomial of the `m`-contact locus: the sum over components.
/// Zero when the locus is empty.
pub fn contact_betti(arr: &MultiArrangement, m: u32) -> Result<IntPoly> {
    let mut total = IntPoly::zero();
    for j in enumerate_t(arr, m)? {
        total = &total + &build_component(arr, &j)?.betti;
    }
    Ok(total)
}

/// All components of `X_m`, built once.
pub fn decomposition(arr: &MultiArrangement, m: u32) -> Result<Vec<Component>> {
    enumerate_t(arr, m)?
        .iter()
        .map(|j| build_component(arr, j))
        .collect()
}

/// Components of the restricted contact locus, each carrying its fiber
/// equation `prod_i (h_i^{(j_i)}|)^{s_i} = prod_i (j_i!)^{s_i}`.
pub fn restricted_decomposition(arr: &MultiArrangement, m: u32) -> Result<Vec<Component>> {
    if m == 0 {
        return Err(Error::Input("restricted decomposition needs m >= 1".into()));
    }
    decomposition(arr, m)
}

/// `sum_{j in T(m)} chi_{A_j}(p)`: the number of `F_p` points of `X_m`
/// predicted by the decomposition.
pub fn predicted_contact_count(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    let q = BigInt::from(p);
    Ok(decomposition(arr, m)?
        .iter()
        .map(|c| c.char_poly.eval(&q))
        .sum())
}

/// Sum over components of the brute-force fiber counts on `X_j(F_p)`.
pub fn predicted_restricted_count(arr: &MultiArrangement, m: u32, p: u64) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for j in enumerate_t(arr, m)? {
        total += component_fiber_count(arr, &j, p)?;
    }
    Ok(total)
}
