//! Affine hyperplane multi-arrangements over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, pullback, solve_affine, AffineFlat, Pullback, RationalField};

/// Zero set of `coeffs·x + constant` with a positive multiplicity.
///
/// Stored in canonical form: `coeffs` is a primitive integer vector whose
/// first nonzero entry is positive, and `constant` is scaled along with it.
/// Two inputs that differ by a nonzero rational factor therefore produce the
/// same value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: Vec<BigInt>,
    constant: Rational,
    multiplicity: u32,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::Input("multiplicity must be positive".into()));
        }
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Err(Error::Input("hyperplane coefficients are all zero".into()));
        };
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut scale = Rational::new(lcm, gcd);
        if coeffs[first].is_negative() {
            scale = -scale;
        }
        let coeffs = coeffs
            .iter()
            .map(|c| (c * &scale).to_integer())
            .collect();
        Ok(Hyperplane {
            coeffs,
            constant: constant * scale,
            multiplicity,
        })
    }

    pub fn from_i64(coeffs: &[i64], constant: i64, multiplicity: u32) -> Result<Self> {
        Hyperplane::new(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            Rational::from_integer(constant.into()),
            multiplicity,
        )
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_rational(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    /// Same zero set, ignoring multiplicity.
    pub fn same_zero_set(&self, other: &Hyperplane) -> bool {
        self.coeffs == other.coeffs && self.constant == other.constant
    }

    /// The homogeneous part, same multiplicity.
    pub fn center(&self) -> Hyperplane {
        Hyperplane {
            coeffs: self.coeffs.clone(),
            constant: Rational::zero(),
            multiplicity: self.multiplicity,
        }
    }

    pub fn with_multiplicity(&self, multiplicity: u32) -> Hyperplane {
        Hyperplane {
            multiplicity,
            ..self.clone()
        }
    }

    /// Value of the defining form at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (c, xi)| acc + xi * c)
    }

    fn equation(&self) -> (Vec<Rational>, Rational) {
        (self.coeffs_rational(), -self.constant.clone())
    }
}

/// A complete set of hyperplanes together with the flat it cuts out.
///
/// `indices` is sorted. The empty set stands for the ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub indices: Vec<usize>,
    pub dim: usize,
    #[serde(rename = "s")]
    pub s_value: u64,
}

impl Flat {
    pub fn ambient(n: usize) -> Self {
        Flat {
            indices: Vec::new(),
            dim: n,
            s_value: 0,
        }
    }

    pub fn codim(&self, n: usize) -> usize {
        n - self.dim
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Index-set inclusion, i.e. reverse inclusion of the flats.
    pub fn is_below(&self, other: &Flat) -> bool {
        self.indices.len() <= other.indices.len()
            && self.indices.iter().all(|i| other.contains_index(*i))
    }
}

/// A finite list of distinct affine hyperplanes in `A^dim` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiArrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl MultiArrangement {
    /// Top-level constructor: at least one hyperplane, pairwise distinct.
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if hyperplanes.is_empty() {
            return Err(Error::Input("an arrangement needs at least one hyperplane".into()));
        }
        if dim == 0 {
            return Err(Error::Input("ambient dimension must be positive".into()));
        }
        MultiArrangement::with_hyperplanes(dim, hyperplanes)
    }

    /// Like [`MultiArrangement::new`] but also accepts the empty arrangement,
    /// which only occurs as a restriction or product factor.
    pub fn with_hyperplanes(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(Error::Input(format!(
                    "hyperplane {i} has {} coefficients, expected {dim}",
                    h.dim()
                )));
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g.same_zero_set(h)) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
        }
        Ok(MultiArrangement { dim, hyperplanes })
    }

    pub fn empty(dim: usize) -> Self {
        MultiArrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    /// Convenience constructor from `(coeffs, constant, multiplicity)` triples.
    pub fn from_i64(dim: usize, rows: &[(&[i64], i64, u32)]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|(c, b, s)| Hyperplane::from_i64(c, *b, *s))
            .collect::<Result<Vec<_>>>()?;
        MultiArrangement::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(Hyperplane::is_homogeneous)
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.hyperplanes.iter().map(|h| h.multiplicity).collect()
    }

    pub fn s_value(&self, indices: &[usize]) -> u64 {
        indices
            .iter()
            .map(|&i| u64::from(self.hyperplanes[i].multiplicity))
            .sum()
    }

    /// Same hyperplanes, every multiplicity set to one.
    pub fn reduced(&self) -> MultiArrangement {
        MultiArrangement {
            dim: self.dim,
            hyperplanes: self.hyperplanes.iter().map(|h| h.with_multiplicity(1)).collect(),
        }
    }

    /// Affine parametrization of `∩_{i∈S} H_i`, or `None` when it is empty.
    /// The empty set gives the whole space.
    pub fn subset_flat(&self, subset: &[usize]) -> Option<AffineFlat<Rational>> {
        let rows: Vec<_> = subset.iter().map(|&i| self.hyperplanes[i].equation()).collect();
        solve_affine(&RationalField, self.dim, &rows)
    }

    /// Intersection of the homogeneous parts of the hyperplanes in `subset`.
    pub fn center_flat(&self, subset: &[usize]) -> AffineFlat<Rational> {
        let rows: Vec<_> = subset
            .iter()
            .map(|&i| (self.hyperplanes[i].coeffs_rational(), Rational::zero()))
            .collect();
        solve_affine(&RationalField, self.dim, &rows).expect("homogeneous systems are consistent")
    }

    /// Whether hyperplane `i` contains the affine flat.
    pub fn contains(&self, i: usize, flat: &AffineFlat<Rational>) -> bool {
        let h = &self.hyperplanes[i];
        let (coeffs, _) = h.equation();
        matches!(pullback(&RationalField, flat, &coeffs, &h.constant), Pullback::Vanishes)
    }

    /// Indices of all hyperplanes containing the flat.
    pub fn containing(&self, flat: &AffineFlat<Rational>) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.contains(i, flat)).collect()
    }

    /// The complete set generated by `subset`: every hyperplane containing
    /// `∩S`. `None` when `∩S` is empty.
    pub fn completion(&self, subset: &[usize]) -> Option<Flat> {
        let flat = self.subset_flat(subset)?;
        let indices = self.containing(&flat);
        Some(Flat {
            s_value: self.s_value(&indices),
            dim: flat.dim(),
            indices,
        })
    }

    pub fn is_complete(&self, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        match self.completion(&sorted) {
            Some(flat) => flat.indices == sorted,
            None => false,
        }
    }

    /// Codimension of the minimal edges.
    ///
    /// Walks down from the ambient space, cutting the current flat with any
    /// hyperplane that meets it properly; every minimal edge of an affine
    /// arrangement has the same codimension, so the walk ends at the rank.
    pub fn rank(&self) -> usize {
        let mut chosen: Vec<usize> = Vec::new();
        let mut flat = AffineFlat::full(&RationalField, self.dim);
        loop {
            let next = (0..self.len()).find_map(|i| {
                if self.contains(i, &flat) {
                    return None;
                }
                let mut cand = chosen.clone();
                cand.push(i);
                self.subset_flat(&cand).map(|f| (i, f))
            });
            match next {
                Some((i, f)) => {
                    chosen.push(i);
                    flat = f;
                }
                None => return self.dim - flat.dim(),
            }
        }
    }

    /// Rank of the matrix of linear parts.
    pub fn linear_rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.hyperplanes.iter().map(|h| h.coeffs_rational()).collect();
        linalg::matrix_rank(&RationalField, &rows)
    }

    /// Homogeneous parts, with hyperplanes sharing a homogeneous part merged
    /// and their multiplicities summed. Order of first appearance is kept.
    pub fn centralize(&self) -> MultiArrangement {
        let mut out: Vec<Hyperplane> = Vec::new();
        for h in &self.hyperplanes {
            let c = h.center();
            match out.iter_mut().find(|g| g.same_zero_set(&c)) {
                Some(g) => g.multiplicity += c.multiplicity,
                None => out.push(c),
            }
        }
        MultiArrangement {
            dim: self.dim,
            hyperplanes: out,
        }
    }

    /// Translates a common point of all hyperplanes to the origin, producing
    /// a syntactically central arrangement. `None` if there is no common point.
    pub fn translate_to_origin(&self) -> Option<MultiArrangement> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.subset_flat(&all)?;
        Some(MultiArrangement {
            dim: self.dim,
            hyperplanes: self.hyperplanes.iter().map(Hyperplane::center).collect(),
        })
    }

    /// Restriction of the hyperplanes in `subset` to the flat `z`.
    ///
    /// Hyperplanes missing the flat are dropped, coincident traces are merged
    /// with multiplicities summed.
    pub fn restrict(&self, z: &Flat, subset: &[usize]) -> Result<MultiArrangement> {
        let flat = self
            .subset_flat(&z.indices)
            .ok_or_else(|| Error::Input("restriction flat is empty".into()))?;
        if let Some(&i) = subset.iter().find(|i| z.contains_index(**i)) {
            return Err(Error::HyperplaneContainsFlat(i));
        }
        let forms = subset.iter().map(|&i| (i, self.hyperplanes[i].clone()));
        restrict_forms(forms, &flat).map(|(arr, _)| arr)
    }

    /// Product arrangement in `A^{a+b}`: `self` on the first coordinates,
    /// `other` on the last.
    pub fn product(&self, other: &MultiArrangement) -> MultiArrangement {
        let (a, b) = (self.dim, other.dim);
        let pad = |h: &Hyperplane, before: usize, after: usize| Hyperplane {
            coeffs: std::iter::repeat_n(BigInt::zero(), before)
                .chain(h.coeffs.iter().cloned())
                .chain(std::iter::repeat_n(BigInt::zero(), after))
                .collect(),
            constant: h.constant.clone(),
            multiplicity: h.multiplicity,
        };
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| pad(h, 0, b))
            .chain(other.hyperplanes.iter().map(|h| pad(h, a, 0)))
            .collect();
        MultiArrangement {
            dim: a + b,
            hyperplanes,
        }
    }

    /// Product of a list of factors, left to right.
    pub fn product_all<'a>(factors: impl IntoIterator<Item = &'a MultiArrangement>) -> MultiArrangement {
        factors
            .into_iter()
            .fold(MultiArrangement::empty(0), |acc, f| acc.product(f))
    }

    pub fn to_file(&self) -> ArrangementFile {
        ArrangementFile {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneEntry {
                    coeffs: h.coeffs.iter().map(|c| c.to_string()).collect(),
                    constant: format_rational(&h.constant),
                    mult: h.multiplicity,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("arrangement serializes")
    }

    /// Parses the arrangement JSON format, reporting the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ArrangementFile = serde_json::from_str(text).map_err(|e| {
            Error::Input(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        file.into_arrangement()
    }
}

/// Restricts a list of `(original index, hyperplane)` pairs to an affine flat.
///
/// Returns the merged arrangement in the flat's intrinsic coordinates and,
/// for each surviving original index, the position of its trace in that
/// arrangement.
pub(crate) fn restrict_forms(
    forms: impl IntoIterator<Item = (usize, Hyperplane)>,
    flat: &AffineFlat<Rational>,
) -> Result<(MultiArrangement, Vec<(usize, usize)>)> {
    let mut out: Vec<Hyperplane> = Vec::new();
    let mut owners = Vec::new();
    for (i, h) in forms {
        let (coeffs, _) = h.equation();
        match pullback(&RationalField, flat, &coeffs, &h.constant) {
            Pullback::Vanishes => return Err(Error::HyperplaneContainsFlat(i)),
            Pullback::NonzeroConstant(_) => {}
            Pullback::Form { coeffs, constant } => {
                let trace = Hyperplane::new(coeffs, constant, h.multiplicity)?;
                let pos = match out.iter().position(|g| g.same_zero_set(&trace)) {
                    Some(pos) => {
                        out[pos].multiplicity += trace.multiplicity;
                        pos
                    }
                    None => {
                        out.push(trace);
                        out.len() - 1
                    }
                };
                owners.push((i, pos));
            }
        }
    }
    Ok((
        MultiArrangement {
            dim: flat.dim(),
            hyperplanes: out,
        },
        owners,
    ))
}

/// On-disk arrangement format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneEntry {
    pub coeffs: Vec<String>,
    #[serde(rename = "const", default = "zero_string")]
    pub constant: String,
    #[serde(default = "one_u32")]
    pub mult: u32,
}

fn zero_string() -> String {
    "0".into()
}

fn one_u32() -> u32 {
    1
}

impl ArrangementFile {
    /// Validates an input file; at least one hyperplane is required.
    pub fn into_arrangement(self) -> Result<MultiArrangement> {
        self.build(false)
    }

    fn build(self, allow_empty: bool) -> Result<MultiArrangement> {
        let field_err = |path: String, e: Error| match e {
            Error::Input(msg) => Error::Input(format!("{path}: {msg}")),
            other => other,
        };
        let mut hs = Vec::with_capacity(self.hyperplanes.len());
        for (i, entry) in self.hyperplanes.into_iter().enumerate() {
            if entry.coeffs.len() != self.dim {
                return Err(Error::Input(format!(
                    "hyperplanes[{i}].coeffs: expected {} entries, found {}",
                    self.dim,
                    entry.coeffs.len()
                )));
            }
            let coeffs = entry
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, s)| parse_rational(s).map_err(|e| field_err(format!("hyperplanes[{i}].coeffs[{k}]"), e)))
                .collect::<Result<Vec<_>>>()?;
            let constant = parse_rational(&entry.constant)
                .map_err(|e| field_err(format!("hyperplanes[{i}].const"), e))?;
            let h = Hyperplane::new(coeffs, constant, entry.mult)
                .map_err(|e| field_err(format!("hyperplanes[{i}]"), e))?;
            hs.push(h);
        }
        if allow_empty {
            MultiArrangement::with_hyperplanes(self.dim, hs)
        } else {
            MultiArrangement::new(self.dim, hs)
        }
    }
}

// Serialized through the file format; unlike input files, serialized
// values may be empty (restrictions often are).
impl Serialize for MultiArrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiArrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ArrangementFile::deserialize(d)?
            .build(true)
            .map_err(serde::de::Error::custom)
    }
}

/// Index sets of every subset of `0..d`, smallest first.
pub(crate) fn subsets_up_to(d: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_size.min(d) {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |l: &usize| l + 1);
            for i in start..d {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
