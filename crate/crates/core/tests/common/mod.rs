//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use contactloci::{ChainDescriptor, Hyperplane, MultiArrangement, Rational};
use num_bigint::BigInt;
use rand::Rng;

/// All of `T(m)` by scanning every `j` of weight `m` and testing each level
/// set for completeness directly.
pub fn brute_force_t(arr: &MultiArrangement, m: u32) -> Vec<Vec<u32>> {
    let s = arr.multiplicities();
    let mut out = Vec::new();
    let mut j = vec![0u32; s.len()];
    fn walk(
        arr: &MultiArrangement,
        s: &[u32],
        i: usize,
        left: u32,
        j: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == s.len() {
            if left == 0 {
                let m = j.iter().zip(s).map(|(a, b)| a * b).sum::<u32>();
                let ok = (0..m.max(1)).all(|k| {
                    let set: Vec<usize> = (0..j.len()).filter(|&t| j[t] > k).collect();
                    arr.is_complete(&set)
                });
                if ok {
                    out.push(j.clone());
                }
            }
            return;
        }
        for v in 0..=left / s[i] {
            j[i] = v;
            walk(arr, s, i + 1, left - v * s[i], j, out);
        }
        j[i] = 0;
    }
    walk(arr, &s, 0, m, &mut j, &mut out);
    out.sort();
    out
}

pub fn descriptors(list: &[ChainDescriptor]) -> Vec<Vec<u32>> {
    list.iter().map(|c| c.j.clone()).collect()
}

/// A random arrangement with small coefficients, deliberately prone to
/// parallel and concurrent hyperplanes.
pub fn random_arrangement(rng: &mut impl Rng, n: usize, d: usize, central: bool) -> MultiArrangement {
    loop {
        let mut hs: Vec<Hyperplane> = Vec::new();
        while hs.len() < d {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let b = if central { 0 } else { rng.gen_range(-2..=2) };
            let s = rng.gen_range(1..=2);
            let Ok(h) = Hyperplane::from_i64(&coeffs, b, s) else { continue };
            if hs.iter().all(|g| !g.same_zero_set(&h)) {
                hs.push(h);
            }
        }
        if let Ok(arr) = MultiArrangement::new(n, hs) {
            return arr;
        }
    }
}

/// A random unimodular integer matrix, as a product of elementary moves.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n < 2 {
        return u;
    }
    for _ in 0..6 {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-2..=2);
        for row in u.iter_mut() {
            row[a] += c * row[b];
        }
    }
    u
}

/// Pulls the arrangement back along `x = U y + v`.
pub fn change_coordinates(arr: &MultiArrangement, u: &[Vec<i64>], v: &[i64]) -> MultiArrangement {
    let n = arr.dim();
    let hs = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let c: Vec<BigInt> = h.coeffs().to_vec();
            let coeffs: Vec<Rational> = (0..n)
                .map(|col| {
                    let sum: BigInt = (0..n).map(|row| &c[row] * BigInt::from(u[row][col])).sum();
                    Rational::from_integer(sum)
                })
                .collect();
            let shift: BigInt = (0..n).map(|row| &c[row] * BigInt::from(v[row])).sum();
            let constant = h.constant() + Rational::from_integer(shift);
            Hyperplane::new(coeffs, constant, h.multiplicity()).unwrap()
        })
        .collect();
    MultiArrangement::new(n, hs).unwrap()
}
