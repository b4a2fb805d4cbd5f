//! Gauss–Jordan elimination over ℚ and over prime fields.
//!
//! The field is passed as a value implementing [`FieldOps`] so that the same
//! elimination code serves the rational geometry and its reduction mod `p`.

use num_traits::{One, Zero};

use crate::arith::Rational;

pub trait FieldOps {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl FieldOps for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
}

/// The prime field `F_p`, elements stored as canonical residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below 2^32 so products fit in a `u64`.
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "prime field modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
}

/// Inverse of `a` modulo the prime `p` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Affine subspace `{ point + sum_t u_t * directions[t] }`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFlat<E> {
    pub point: Vec<E>,
    pub directions: Vec<Vec<E>>,
}

impl<E: Clone> AffineFlat<E> {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    /// The whole space with the standard basis.
    pub fn full<F: FieldOps<Elem = E>>(field: &F, n: usize) -> Self {
        let directions = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        AffineFlat {
            point: vec![field.zero(); n],
            directions,
        }
    }

    /// Evaluates the parametrization at intrinsic coordinates `u`.
    pub fn at<F: FieldOps<Elem = E>>(&self, field: &F, u: &[E]) -> Vec<E> {
        let mut x = self.point.clone();
        for (ut, dir) in u.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = field.add(xi, &field.mul(ut, di));
            }
        }
        x
    }
}

/// Result of pulling a linear form `c·x + b` back along an affine flat.
#[derive(Debug, Clone, PartialEq)]
pub enum Pullback<E> {
    /// The form vanishes identically on the flat.
    Vanishes,
    /// The form is a nonzero constant on the flat.
    NonzeroConstant(E),
    /// A non-constant form in the intrinsic coordinates.
    Form { coeffs: Vec<E>, constant: E },
}

pub fn pullback<F: FieldOps>(
    field: &F,
    flat: &AffineFlat<F::Elem>,
    coeffs: &[F::Elem],
    constant: &F::Elem,
) -> Pullback<F::Elem> {
    let c0 = field.add(&field.dot(coeffs, &flat.point), constant);
    let lin: Vec<F::Elem> = flat
        .directions
        .iter()
        .map(|d| field.dot(coeffs, d))
        .collect();
    if lin.iter().all(|v| field.is_zero(v)) {
        if field.is_zero(&c0) {
            Pullback::Vanishes
        } else {
            Pullback::NonzeroConstant(c0)
        }
    } else {
        Pullback::Form {
            coeffs: lin,
            constant: c0,
        }
    }
}

/// Solves `rows[i].0 · x = rows[i].1` in `n` unknowns.
///
/// Returns `None` for an inconsistent system. Free variables are taken in
/// ascending coordinate order; the base point has all free variables zero and
/// direction `t` sets the `t`-th free variable to one.
pub fn solve_affine<F: FieldOps>(
    field: &F,
    n: usize,
    rows: &[(Vec<F::Elem>, F::Elem)],
) -> Option<AffineFlat<F::Elem>> {
    let mut mat: Vec<Vec<F::Elem>> = rows
        .iter()
        .map(|(c, b)| {
            debug_assert_eq!(c.len(), n);
            let mut row = c.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut mat, n);
    // A pivot in the augmented column means 0 = 1.
    if mat
        .iter()
        .skip(pivots.len())
        .any(|row| !field.is_zero(&row[n]))
    {
        return None;
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut point = vec![field.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        point[c] = mat[r][n].clone();
    }
    let directions = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut dir = vec![field.zero(); n];
            dir[f] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                dir[c] = field.neg(&mat[r][f]);
            }
            dir
        })
        .collect();
    Some(AffineFlat { point, directions })
}

/// Reduced row echelon form over the first `ncols` columns; returns pivot columns.
/// Rows past the pivot count are zero in those columns.
pub fn rref<F: FieldOps>(field: &F, mat: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == mat.len() {
            break;
        }
        let Some(pr) = (r..mat.len()).find(|&i| !field.is_zero(&mat[i][c])) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = field.inv(&mat[r][c]);
        for v in mat[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for i in 0..mat.len() {
            if i != r && !field.is_zero(&mat[i][c]) {
                let factor = mat[i][c].clone();
                for k in 0..mat[i].len() {
                    let delta = field.mul(&factor, &mat[r][k]);
                    mat[i][k] = field.sub(&mat[i][k], &delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank<F: FieldOps>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut mat = rows.to_vec();
    rref(field, &mut mat, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn solves_point_and_detects_inconsistency() {
        let f = RationalField;
        let flat = solve_affine(&f, 2, &[(vec![q(1), q(0)], q(0)), (vec![q(0), q(1)], q(0))]).unwrap();
        assert_eq!(flat.dim(), 0);
        assert_eq!(flat.point, vec![q(0), q(0)]);
        assert!(solve_affine(&f, 2, &[(vec![q(1), q(0)], q(0)), (vec![q(1), q(0)], q(1))]).is_none());
    }

    #[test]
    fn free_variables_ascending() {
        let f = RationalField;
        // x + 2y - z = 3
        let flat = solve_affine(&f, 3, &[(vec![q(1), q(2), q(-1)], q(3))]).unwrap();
        assert_eq!(flat.dim(), 2);
        assert_eq!(flat.point, vec![q(3), q(0), q(0)]);
        assert_eq!(flat.directions[0], vec![q(-2), q(1), q(0)]);
        assert_eq!(flat.directions[1], vec![q(1), q(0), q(1)]);
        for u in [[q(1), q(2)], [q(-3), q(5)]] {
            let x = flat.at(&f, &u);
            assert_eq!(&x[0] + q(2) * &x[1] - &x[2], q(3));
        }
    }

    #[test]
    fn prime_field_solve() {
        let f = PrimeField::new(5);
        // x - 5 = 0 and x = 0 coincide mod 5
        let flat = solve_affine(&f, 1, &[(vec![1], 0), (vec![1], f.from_i64(5))]).unwrap();
        assert_eq!(flat.dim(), 0);
        assert_eq!(inv_mod(3, 7), 5);
        assert_eq!(f.pow(2, 4), 1);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }

    #[test]
    fn pullback_cases() {
        let f = RationalField;
        let line = solve_affine(&f, 2, &[(vec![q(1), q(0)], q(0))]).unwrap(); // x = 0
        assert_eq!(pullback(&f, &line, &[q(1), q(0)], &q(0)), Pullback::Vanishes);
        assert_eq!(pullback(&f, &line, &[q(1), q(0)], &q(-1)), Pullback::NonzeroConstant(q(-1)));
        assert_eq!(
            pullback(&f, &line, &[q(1), q(1)], &q(0)),
            Pullback::Form { coeffs: vec![q(1)], constant: q(0) }
        );
    }
}
