//! Exact integers, rationals, and one-variable polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

fn binom_cache() -> &'static RwLock<HashMap<(i64, i64), BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<(i64, i64), BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Binomial coefficient with the zero convention: `binom(a, b)` is the usual
/// value when `0 <= b <= a` and `0` for every other integer pair.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    if let Some(v) = binom_cache().read().expect("binom cache poisoned").get(&(a, b)) {
        return v.clone();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    binom_cache()
        .write()
        .expect("binom cache poisoned")
        .insert((a, b), acc.clone());
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"-p"`, or `"p/q"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Serde adapter writing a [`Rational`] as a decimal string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a [`BigInt`] as a decimal string.
pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(D::Error::custom)
    }
}

/// Dense univariate integer polynomial, coefficients ascending by degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Human-readable form in the given variable, lowest degree first.
    pub fn display_in(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)), var)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.display_in("t"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (i64, &'a BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<'a> Add for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl<'a> Sub for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

/// Laurent polynomial `sum_k coeffs[k] * q^(min_degree + k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_degree: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_degree: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            min_degree: min_degree + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    /// `p(q) * q^shift`.
    pub fn from_poly(p: &IntPoly, shift: i64) -> Self {
        LaurentPoly::new(shift, p.coeffs().to_vec())
    }

    pub fn monomial(c: BigInt, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_degree + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.min_degree;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly::new(self.min_degree + k, self.coeffs.clone())
    }

    /// Multiplies by `q^{-min_degree}` when that leaves a polynomial;
    /// `None` if some exponent is negative.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.min_degree < 0 {
            return None;
        }
        let mut coeffs = vec![BigInt::zero(); self.min_degree as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(IntPoly::new(coeffs))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let body = self
            .coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()));
        body * Pow::pow(x, self.min_degree)
    }

    pub fn display_in(&self, var: &str) -> String {
        format_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (self.min_degree + k as i64, c)),
            var,
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.display_in("q"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().unwrap().max(rhs.max_degree().unwrap());
        LaurentPoly::new(lo, (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_degree + rhs.min_degree, out)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    min_deg: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            min_deg: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::new(repr.min_deg, coeffs))
    }
}

/// Reduces a rational modulo a prime; `None` when `p` divides the denominator.
pub fn rational_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(num * crate::linalg::inv_mod(den, p) % p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(a: i64, k: i64) -> i64 {
        binom(a, k).to_i64().unwrap()
    }

    #[test]
    fn binom_examples() {
        assert_eq!(b(5, 2), 10);
        assert_eq!(b(-1, 0), 0);
        assert_eq!(b(3, 5), 0);
        assert_eq!(b(0, 0), 1);
        assert_eq!(b(4, -1), 0);
        assert_eq!(binom(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn binomial_row_matches_power_of_one_plus_t() {
        let one_plus_t = IntPoly::from_i64(&[1, 1]);
        for a in 0..12i64 {
            let row = IntPoly::new((0..=a).map(|k| binom(a, k)).collect());
            assert_eq!(row, one_plus_t.pow(a as u32));
        }
    }

    #[test]
    fn poly_examples() {
        let p = IntPoly::from_i64(&[1, 1]);
        assert_eq!(&p * &p, IntPoly::from_i64(&[1, 2, 1]));
        let q = IntPoly::from_i64(&[2, -3, 1]);
        assert_eq!(q.eval(&BigInt::from(5)), BigInt::from(12));
        assert_eq!(q.display_in("q"), "2 - 3q + q^2");
        // (q - 1) q^-1 * q = q - 1
        let l = LaurentPoly::new(-1, vec![BigInt::from(-1), BigInt::from(1)]);
        let prod = &l * &LaurentPoly::monomial(BigInt::one(), 1);
        assert_eq!(prod, LaurentPoly::from_poly(&IntPoly::from_i64(&[-1, 1]), 0));
        assert_eq!(prod.to_poly(), Some(IntPoly::from_i64(&[-1, 1])));
    }

    #[test]
    fn laurent_normalizes_and_evaluates() {
        let l = LaurentPoly::new(-3, [0, 0, 4, 0].iter().map(|&c| BigInt::from(c)).collect());
        assert_eq!(l.min_degree(), -1);
        assert_eq!(l.max_degree(), Some(-1));
        assert_eq!(l.eval_rational(&Rational::from_integer(2.into())), Rational::new(2.into(), 1.into()));
        assert!(LaurentPoly::new(5, vec![BigInt::zero()]).is_zero());
        assert_eq!(l.display_in("q"), "4q^-1");
    }

    #[test]
    fn rational_parse_roundtrip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_encodings() {
        let p = IntPoly::from_i64(&[1, 3, 2]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1","3","2"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), p);
        let l = LaurentPoly::new(-1, vec![BigInt::from(3), BigInt::from(-6), BigInt::from(3)]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"min_deg":-1,"coeffs":["3","-6","3"]}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), l);
    }

    #[test]
    fn rational_reduction_mod_p() {
        assert_eq!(rational_mod_p(&parse_rational("1/2").unwrap(), 5), Some(3));
        assert_eq!(rational_mod_p(&parse_rational("-1").unwrap(), 7), Some(6));
        assert_eq!(rational_mod_p(&parse_rational("1/5").unwrap(), 5), None);
    }

    proptest! {
        #[test]
        fn pascal_and_subset_of_subset(a in 1i64..40, k in 1i64..40, c in 0i64..40) {
            prop_assert_eq!(binom(a, k), binom(a - 1, k - 1) + binom(a - 1, k));
            if a >= k && k >= c {
                prop_assert_eq!(binom(a, k) * binom(k, c), binom(a, c) * binom(a - c, k - c));
            }
        }

        #[test]
        fn rational_sums_cancel(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
            let x = Rational::new(p.into(), q.into());
            let y = Rational::new(r.into(), s.into());
            prop_assert!((x.clone() + y.clone() - y - x).is_zero());
        }

        #[test]
        fn poly_mul_is_evaluation_homomorphism(
            a in proptest::collection::vec(-20i64..20, 0..6),
            b in proptest::collection::vec(-20i64..20, 0..6),
            x in -10i64..10,
        ) {
            let (pa, pb) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&pa * &pb).eval(&x), pa.eval(&x) * pb.eval(&x));
            prop_assert_eq!((&pa + &pb).eval(&x), pa.eval(&x) + pb.eval(&x));
        }
    }
}
