//! Canonical form of the combinatorial type (poset, multiplicities, codimensions).

use serde::{Deserialize, Serialize};

use super::IntersectionPoset;
use crate::arrangement::MultiArrangement;
use crate::error::Result;

/// Canonically labeled intersection poset with its multiplicity and
/// codimension functions. Two arrangements are combinatorially equivalent
/// exactly when their values compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub codims: Vec<usize>,
    pub s_values: Vec<u64>,
    /// `(lower, upper)` cover pairs in canonical labels, sorted.
    pub covers: Vec<(usize, usize)>,
}

pub fn combinatorial_type(arr: &MultiArrangement) -> Result<CombinatorialType> {
    Ok(CombinatorialType::of_poset(&IntersectionPoset::build(arr)?))
}

struct Shape {
    labels: Vec<(usize, u64)>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
}

impl CombinatorialType {
    pub fn of_poset(poset: &IntersectionPoset) -> Self {
        let n = poset.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for &(lo, hi) in poset.covers() {
            down[hi].push(lo);
            up[lo].push(hi);
        }
        let shape = Shape {
            labels: (0..n)
                .map(|k| (poset.codim(k), poset.elements()[k].s_value))
                .collect(),
            down,
            up,
            covers: poset.covers().to_vec(),
        };
        let initial = dense_ranks(&shape.labels);
        shape.search(initial)
    }
}

/// Replaces each value by its rank among the distinct values.
fn dense_ranks<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut distinct = values.to_vec();
    distinct.sort();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).unwrap())
        .collect()
}

impl Shape {
    /// Colour refinement by the multisets of neighbour colours, to a fixpoint.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_distinct(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let mut d: Vec<usize> = self.down[v].iter().map(|&u| colors[u]).collect();
                    let mut u: Vec<usize> = self.up[v].iter().map(|&w| colors[w]).collect();
                    d.sort_unstable();
                    u.sort_unstable();
                    (colors[v], d, u)
                })
                .collect();
            let next = dense_ranks(&sigs);
            let next_classes = count_distinct(&next);
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn encode(&self, colors: &[usize]) -> CombinatorialType {
        let n = colors.len();
        let mut order = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let mut covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(a, b)| (colors[a], colors[b]))
            .collect();
        covers.sort_unstable();
        CombinatorialType {
            codims: order.iter().map(|&v| self.labels[v].0).collect(),
            s_values: order.iter().map(|&v| self.labels[v].1).collect(),
            covers,
        }
    }

    /// Individualize–refine search for the lexicographically least encoding.
    fn search(&self, colors: Vec<usize>) -> CombinatorialType {
        let colors = self.refine(colors);
        let n = colors.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(cell) = (0..n).find(|&c| sizes[c] > 1) else {
            return self.encode(&colors);
        };
        (0..n)
            .filter(|&v| colors[v] == cell)
            .map(|v| {
                let split: Vec<usize> = colors
                    .iter()
                    .enumerate()
                    .map(|(u, &c)| 2 * c + usize::from(c == cell && u != v))
                    .collect();
                self.search(dense_ranks(&split))
            })
            .min()
            .expect("cell is non-empty")
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn realizations_of_the_triangle_agree() {
        let other = MultiArrangement::from_i64(2, &[(&[1, 2], -3, 1), (&[3, -1], 7, 1), (&[1, 0], 0, 1)]).unwrap();
        assert_eq!(combinatorial_type(&triangle()).unwrap(), combinatorial_type(&other).unwrap());
    }

    #[test]
    fn distinct_types_differ() {
        let t = combinatorial_type(&triangle()).unwrap();
        let c = combinatorial_type(&central_three_lines()).unwrap();
        assert_ne!(t, c);
        assert_eq!(t.codims.len(), 7);
        assert_eq!(c.codims.len(), 5);
        let pair = parallel_pair();
        assert_ne!(
            combinatorial_type(&pair).unwrap(),
            combinatorial_type(&pair.centralize()).unwrap()
        );
    }

    #[test]
    fn multiplicities_are_part_of_the_type() {
        assert_ne!(
            combinatorial_type(&boolean_pair()).unwrap(),
            combinatorial_type(&two_one_multi()).unwrap()
        );
        let one_two = MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[0, 1], 0, 2)]).unwrap();
        assert_eq!(
            combinatorial_type(&one_two).unwrap(),
            combinatorial_type(&two_one_multi()).unwrap()
        );
    }

    #[test]
    fn hyperplane_order_does_not_matter() {
        let a = central_four_lines();
        let mut hs = a.hyperplanes().to_vec();
        hs.reverse();
        hs.swap(0, 2);
        let b = MultiArrangement::new(2, hs).unwrap();
        assert_eq!(combinatorial_type(&a).unwrap(), combinatorial_type(&b).unwrap());
    }
}
