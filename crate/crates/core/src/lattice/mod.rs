//! Intersection posets, Möbius values, and the polynomials they determine.

mod ctype;
mod os;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{rational_mod_p, IntPoly, Rational};
use crate::arrangement::{Flat, MultiArrangement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{pullback, solve_affine, FieldOps, PrimeField, Pullback, RationalField};

pub use ctype::{combinatorial_type, CombinatorialType};
pub use os::{os_presentation, OsGenerator, OsGeneratorKind};

/// All edges of an arrangement plus the ambient space.
///
/// Elements are sorted by codimension and then by index set, so element `0`
/// is always the ambient space. `covers` lists pairs `(lower, upper)` where
/// `upper` is obtained from `lower` by cutting with one more hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoset {
    ambient_dim: usize,
    elements: Vec<Flat>,
    covers: Vec<(usize, usize)>,
    mobius: Vec<BigInt>,
}

/// Complete set -> dimension of its flat.
pub(crate) type FlatDims = BTreeMap<Vec<usize>, usize>;
type CoverPairs = Vec<(Vec<usize>, Vec<usize>)>;

/// Complete sets and their dimensions for hyperplanes given as
/// `coeffs·x = rhs` over an arbitrary field, built level by level, with the
/// `(lower, upper)` cover pairs.
pub(crate) fn complete_sets<F: FieldOps>(
    field: &F,
    n: usize,
    equations: &[(Vec<F::Elem>, F::Elem)],
) -> (FlatDims, CoverPairs) {
    let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut covers = Vec::new();
    found.insert(Vec::new(), n);
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    while !level.is_empty() {
        let mut next: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        for set in &level {
            for i in 0..equations.len() {
                if set.binary_search(&i).is_ok() {
                    continue;
                }
                let rows: Vec<_> = set
                    .iter()
                    .chain(std::iter::once(&i))
                    .map(|&k| equations[k].clone())
                    .collect();
                let Some(flat) = solve_affine(field, n, &rows) else {
                    continue;
                };
                let closure: Vec<usize> = (0..equations.len())
                    .filter(|&k| {
                        let (c, rhs) = &equations[k];
                        matches!(pullback(field, &flat, c, &field.neg(rhs)), Pullback::Vanishes)
                    })
                    .collect();
                covers.push((set.clone(), closure.clone()));
                if !found.contains_key(&closure) {
                    found.insert(closure.clone(), flat.dim());
                    next.insert(closure, ());
                }
            }
        }
        level = next.into_keys().collect();
    }
    covers.sort();
    covers.dedup();
    (found, covers)
}

impl IntersectionPoset {
    pub fn build(arr: &MultiArrangement) -> Result<Self> {
        IntersectionPoset::build_with(arr, &Budget::default())
    }

    pub fn build_with(arr: &MultiArrangement, budget: &Budget) -> Result<Self> {
        if arr.len() > budget.max_hyperplanes {
            return Err(Error::Budget(format!(
                "{} hyperplanes exceeds the poset limit of {}",
                arr.len(),
                budget.max_hyperplanes
            )));
        }
        let n = arr.dim();
        let equations: Vec<(Vec<Rational>, Rational)> = arr
            .hyperplanes()
            .iter()
            .map(|h| (h.coeffs_rational(), -h.constant().clone()))
            .collect();
        let (sets, covers) = complete_sets(&RationalField, n, &equations);
        let mut elements: Vec<Flat> = sets
            .into_iter()
            .map(|(indices, dim)| Flat {
                s_value: arr.s_value(&indices),
                indices,
                dim,
            })
            .collect();
        elements.sort_by(|a, b| (b.dim, &a.indices).cmp(&(a.dim, &b.indices)));
        let id: BTreeMap<&Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, f)| (&f.indices, k))
            .collect();
        let mut cover_ids: Vec<(usize, usize)> = covers
            .iter()
            .map(|(lo, hi)| (id[lo], id[hi]))
            .collect();
        cover_ids.sort_unstable();
        let mobius = mobius_values(&elements);
        Ok(IntersectionPoset {
            ambient_dim: n,
            elements,
            covers: cover_ids,
            mobius,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn elements(&self) -> &[Flat] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn mobius(&self) -> &[BigInt] {
        &self.mobius
    }

    pub fn codim(&self, id: usize) -> usize {
        self.ambient_dim - self.elements[id].dim
    }

    /// Position of the element with this index set, if it is complete.
    pub fn find(&self, indices: &[usize]) -> Option<usize> {
        self.elements.iter().position(|f| f.indices == indices)
    }

    /// `sum_Z mu(Z) q^{dim Z}`.
    pub fn char_poly(&self) -> IntPoly {
        self.elements
            .iter()
            .zip(&self.mobius)
            .map(|(f, mu)| IntPoly::monomial(mu.clone(), f.dim))
            .sum()
    }

    /// `sum_Z |mu(Z)| t^{codim Z}`.
    pub fn complement_betti(&self) -> IntPoly {
        self.elements
            .iter()
            .zip(&self.mobius)
            .map(|(f, mu)| IntPoly::monomial(mu.abs(), self.ambient_dim - f.dim))
            .sum()
    }

    pub fn rank(&self) -> usize {
        (0..self.len()).map(|k| self.codim(k)).max().unwrap_or(0)
    }

    pub fn to_report(&self) -> PosetReport {
        PosetReport {
            ambient_dim: self.ambient_dim,
            elements: self
                .elements
                .iter()
                .zip(&self.mobius)
                .enumerate()
                .map(|(id, (f, mu))| PosetElement {
                    id,
                    indices: f.indices.clone(),
                    dim: f.dim,
                    s: f.s_value,
                    mobius: mu.clone(),
                })
                .collect(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_report(report: PosetReport) -> Result<Self> {
        for (k, e) in report.elements.iter().enumerate() {
            if e.id != k {
                return Err(Error::Input(format!("elements[{k}].id: expected {k}, found {}", e.id)));
            }
        }
        let n = report.elements.len();
        if let Some(c) = report.covers.iter().find(|c| c[0] >= n || c[1] >= n) {
            return Err(Error::Input(format!("cover {c:?} refers to a missing element")));
        }
        Ok(IntersectionPoset {
            ambient_dim: report.ambient_dim,
            covers: report.covers.iter().map(|c| (c[0], c[1])).collect(),
            mobius: report.elements.iter().map(|e| e.mobius.clone()).collect(),
            elements: report
                .elements
                .into_iter()
                .map(|e| Flat {
                    indices: e.indices,
                    dim: e.dim,
                    s_value: e.s,
                })
                .collect(),
        })
    }
}

impl Serialize for IntersectionPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_report().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntersectionPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let report = PosetReport::deserialize(d)?;
        IntersectionPoset::from_report(report).map_err(serde::de::Error::custom)
    }
}

/// JSON shape of an [`IntersectionPoset`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetReport {
    pub ambient_dim: usize,
    pub elements: Vec<PosetElement>,
    pub covers: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetElement {
    pub id: usize,
    pub indices: Vec<usize>,
    pub dim: usize,
    pub s: u64,
    #[serde(with = "crate::arith::serde_bigint")]
    pub mobius: BigInt,
}

/// `mu(bottom) = 1`, `mu(z) = -sum_{y < z} mu(y)`. Requires elements sorted
/// so that every element comes after everything below it.
fn mobius_values(elements: &[Flat]) -> Vec<BigInt> {
    let mut mu: Vec<BigInt> = Vec::with_capacity(elements.len());
    for (k, z) in elements.iter().enumerate() {
        if k == 0 {
            mu.push(BigInt::one());
            continue;
        }
        let below: BigInt = elements[..k]
            .iter()
            .zip(&mu)
            .filter(|(y, _)| y.is_below(z))
            .map(|(_, m)| m.clone())
            .sum();
        mu.push(-below);
    }
    mu
}

pub fn build_poset(arr: &MultiArrangement) -> Result<IntersectionPoset> {
    IntersectionPoset::build(arr)
}

/// Characteristic polynomial in `q`; multiplicities play no role.
pub fn char_poly(arr: &MultiArrangement) -> Result<IntPoly> {
    if arr.is_empty() {
        return Ok(IntPoly::monomial(BigInt::one(), arr.dim()));
    }
    Ok(IntersectionPoset::build(arr)?.char_poly())
}

/// Betti polynomial in `t` of the complement.
pub fn complement_betti(arr: &MultiArrangement) -> Result<IntPoly> {
    if arr.is_empty() {
        return Ok(IntPoly::one());
    }
    Ok(IntersectionPoset::build(arr)?.complement_betti())
}

/// Whether reducing the arrangement mod `p` keeps every complete set and its
/// dimension, and hence the rank and emptiness of every subset system.
pub fn has_good_reduction(arr: &MultiArrangement, p: u64) -> bool {
    let field = PrimeField::new(p);
    let mut equations = Vec::with_capacity(arr.len());
    for h in arr.hyperplanes() {
        let coeffs: Option<Vec<u64>> = h.coeffs_rational().iter().map(|c| rational_mod_p(c, p)).collect();
        let rhs = rational_mod_p(&-h.constant().clone(), p);
        match (coeffs, rhs) {
            (Some(c), Some(r)) if c.iter().any(|v| *v != 0) => equations.push((c, r)),
            _ => return false,
        }
    }
    let rational: Vec<(Vec<Rational>, Rational)> = arr
        .hyperplanes()
        .iter()
        .map(|h| (h.coeffs_rational(), -h.constant().clone()))
        .collect();
    let (over_q, _) = complete_sets(&RationalField, arr.dim(), &rational);
    let (over_p, _) = complete_sets(&field, arr.dim(), &equations);
    over_q == over_p
}
