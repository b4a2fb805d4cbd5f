//! Closed-form Betti numbers for generic and generic central arrangements.
//!
//! A generic arrangement of `d` hyperplanes in `A^n` has every `k <= n` of
//! them meeting in codimension `k` and no `n + 1` of them meeting at all; a
//! generic central one has the same codimension condition with all
//! hyperplanes through the origin. All binomials follow the zero
//! convention of [`binom`], and all sums with an empty range are zero.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{binom, IntPoly, Rational};
use crate::arrangement::{subsets_up_to, Hyperplane, MultiArrangement};
use crate::error::{Error, Result};
use crate::linalg::{matrix_rank, RationalField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenericKind {
    Generic,
    GenericCentral,
}

impl std::str::FromStr for GenericKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(GenericKind::Generic),
            "generic-central" => Ok(GenericKind::GenericCentral),
            other => Err(Error::Input(format!("unknown arrangement kind `{other}`"))),
        }
    }
}

/// A combinatorial type of generic arrangement; all multiplicities are one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenericSpec {
    pub kind: GenericKind,
    pub n: u32,
    pub d: u32,
}

impl GenericSpec {
    pub fn new(kind: GenericKind, n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Domain(format!("need n, d >= 1 (got n = {n}, d = {d})")));
        }
        Ok(GenericSpec { kind, n, d })
    }

    /// Betti polynomial of the complement (`m = 0`).
    pub fn complement_betti(&self) -> IntPoly {
        let (n, d) = (i64::from(self.n), i64::from(self.d));
        match self.kind {
            GenericKind::Generic => IntPoly::new((0..=n).map(|k| binom(d, k)).collect()),
            GenericKind::GenericCentral => {
                betti_complement_generic_central(self.n, self.d).expect("validated")
            }
        }
    }

    /// Betti polynomial of the `m`-contact locus. `m = 0` gives the
    /// complement. Generic central formulas need `d > n >= 2`.
    pub fn contact_betti(&self, m: u32) -> Result<IntPoly> {
        if m == 0 {
            return Ok(self.complement_betti());
        }
        let coeffs = (0..=self.n)
            .map(|k| match self.kind {
                GenericKind::Generic => betti_generic_contact(self.n, self.d, m, k),
                GenericKind::GenericCentral => betti_generic_central_contact(self.n, self.d, m, k),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }

    /// Betti polynomial of the restricted `m`-contact locus; generic
    /// central only.
    pub fn restricted_betti(&self, m: u32) -> Result<IntPoly> {
        if self.kind != GenericKind::GenericCentral {
            return Err(Error::Domain(
                "restricted Betti numbers are only known for generic central arrangements".into(),
            ));
        }
        let coeffs = (0..self.n)
            .map(|k| betti_generic_central_restricted(self.n, self.d, m, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

fn eps(d: i64, m: i64) -> BigInt {
    if m % d == 0 {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn delta(a: i64, b: i64) -> BigInt {
    if a == b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

fn central_domain(n: u32, d: u32, m: u32) -> Result<()> {
    if n < 2 || d <= n || m == 0 {
        return Err(Error::Domain(format!(
            "generic central formulas need d > n >= 2 and m >= 1 (got n = {n}, d = {d}, m = {m})"
        )));
    }
    Ok(())
}

/// `b_k` of the `m`-contact locus of a generic arrangement of `d`
/// hyperplanes in `A^n`; valid for every `d >= 1`.
pub fn betti_generic_contact(n: u32, d: u32, m: u32, k: u32) -> Result<BigInt> {
    if n == 0 || d == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "need n, d, m >= 1 (got n = {n}, d = {d}, m = {m})"
        )));
    }
    let (n, d, m, k) = (i64::from(n), i64::from(d), i64::from(m), i64::from(k));
    let inner: BigInt = (0..=n - k)
        .map(|i| binom(d - k, i) * binom(m + k - 1, m - i))
        .sum();
    Ok(binom(d, k) * inner)
}

/// `b_k` of the `m`-contact locus of a generic central arrangement of
/// `d > n` hyperplanes in `A^n`.
///
/// When `d | m` the term `j = m/d` of the outer sum is the component
/// `j = (m/d, ..., m/d)`, whose arrangement is the complement of the
/// arrangement itself times affine spaces; the two correction terms
/// complete its Betti polynomial in degrees 0 and `n`.
pub fn betti_generic_central_contact(n: u32, d: u32, m: u32, k: u32) -> Result<BigInt> {
    central_domain(n, d, m)?;
    if k > n {
        return Ok(BigInt::zero());
    }
    let (n, d, m, k) = (i64::from(n), i64::from(d), i64::from(m), i64::from(k));
    let mut total = BigInt::zero();
    for j in 0..=ceil_div(m, d) {
        let r = m - j * d;
        for i in 0..=n - 1 - k {
            total += binom(d, k) * binom(d - k, i) * binom(r + k - 1, i + k - 1);
        }
        for i in 1..=n - 1 {
            total += binom(d, i) * binom(r - 1, i - 1) * binom(d - i - 1, d - n) * binom(i, n - k);
        }
    }
    let e = eps(d, m);
    total += delta(k, 0) * &e;
    total += binom(d - 1, n - 1) * delta(k, n) * &e;
    Ok(total)
}

/// `b_k` of the restricted `m`-contact locus of a generic central
/// arrangement of `d > n` hyperplanes in `A^n`, `0 <= k <= n - 1`.
pub fn betti_generic_central_restricted(n: u32, d: u32, m: u32, k: u32) -> Result<BigInt> {
    central_domain(n, d, m)?;
    if k >= n {
        return Err(Error::Domain(format!("degree {k} is out of range 0..={}", n - 1)));
    }
    let (n, d, m, k) = (i64::from(n), i64::from(d), i64::from(m), i64::from(k));
    let mut total = BigInt::zero();
    for j in 0..=ceil_div(m, d) {
        let r = m - j * d;
        for l in 1..=n - 1 {
            let inner: BigInt = (0..=n - 1 - l)
                .map(|i| binom(d - 1 - l, i) * binom(l, k - i))
                .sum();
            total += binom(d, l) * binom(r - 1, l - 1) * inner;
        }
    }
    let e = eps(d, m);
    total += binom(d - 1, k) * &e;
    total += BigInt::from(d - 1) * binom(d - 2, n - 1) * delta(k, n - 1) * &e;
    Ok(total)
}

/// Betti polynomial of the complement of a generic central arrangement:
/// `(1 + t) sum_{k < n} binom(d - 1, k) t^k`.
pub fn betti_complement_generic_central(n: u32, d: u32) -> Result<IntPoly> {
    if n == 0 || d == 0 {
        return Err(Error::Domain(format!("need n, d >= 1 (got n = {n}, d = {d})")));
    }
    let base = IntPoly::new(
        (0..i64::from(n))
            .map(|k| binom(i64::from(d) - 1, k))
            .collect(),
    );
    Ok(&IntPoly::from_i64(&[1, 1]) * &base)
}

/// `b_k` of the Milnor fiber of a generic central arrangement, `d > n >= 2`.
pub fn milnor_betti_generic_central(n: u32, d: u32, k: u32) -> Result<BigInt> {
    if n < 2 || d <= n || k >= n {
        return Err(Error::Domain(format!(
            "need d > n >= 2 and k <= n - 1 (got n = {n}, d = {d}, k = {k})"
        )));
    }
    let (n, d, k) = (i64::from(n), i64::from(d), i64::from(k));
    Ok(if k <= n - 2 {
        binom(d - 1, k)
    } else {
        binom(d - 2, n - 2) + BigInt::from(d) * binom(d - 2, n - 1)
    })
}

fn ranks_are_generic(arr: &MultiArrangement) -> bool {
    let n = arr.dim();
    subsets_up_to(arr.len(), n).iter().all(|s| {
        let rows: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| arr.hyperplanes()[i].coeffs_rational())
            .collect();
        matrix_rank(&RationalField, &rows) == s.len()
    })
}

/// Every `|S| <= n` meets in codimension `|S|` and every `n + 1` hyperplanes
/// have empty intersection.
pub fn is_generic(arr: &MultiArrangement) -> bool {
    let n = arr.dim();
    let small_ok = subsets_up_to(arr.len(), n)
        .iter()
        .all(|s| arr.subset_flat(s).is_some_and(|f| f.dim() + s.len() == n));
    small_ok
        && subsets_up_to(arr.len(), n + 1)
            .iter()
            .filter(|s| s.len() == n + 1)
            .all(|s| arr.subset_flat(s).is_none())
}

/// Central, and every `|S| <= n` meets in codimension `|S|`.
pub fn is_generic_central(arr: &MultiArrangement) -> bool {
    arr.is_central() && ranks_are_generic(arr)
}

fn draw(n: usize, central: bool, range: i64, rng: &mut impl Rng) -> Option<Hyperplane> {
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
    let constant = if central { 0 } else { rng.gen_range(-range..=range) };
    Hyperplane::from_i64(&coeffs, constant, 1).ok()
}

fn random_realization(
    kind: GenericKind,
    n: usize,
    d: usize,
    rng: &mut impl Rng,
) -> Result<MultiArrangement> {
    if n == 0 || d == 0 {
        return Err(Error::Domain("need n, d >= 1".into()));
    }
    let central = kind == GenericKind::GenericCentral;
    let range = 3 + d as i64;
    for _ in 0..10_000 {
        let hs: Option<Vec<Hyperplane>> = (0..d).map(|_| draw(n, central, range, rng)).collect();
        let Some(hs) = hs else { continue };
        let Ok(arr) = MultiArrangement::new(n, hs) else { continue };
        let ok = match kind {
            GenericKind::Generic => is_generic(&arr),
            GenericKind::GenericCentral => is_generic_central(&arr),
        };
        if ok {
            return Ok(arr);
        }
    }
    Err(Error::Budget("no generic realization found".into()))
}

/// A generic arrangement with small random integer coefficients, redrawn
/// until the genericity check passes.
pub fn random_generic(n: usize, d: usize, rng: &mut impl Rng) -> Result<MultiArrangement> {
    random_realization(GenericKind::Generic, n, d, rng)
}

pub fn random_generic_central(n: usize, d: usize, rng: &mut impl Rng) -> Result<MultiArrangement> {
    random_realization(GenericKind::GenericCentral, n, d, rng)
}
