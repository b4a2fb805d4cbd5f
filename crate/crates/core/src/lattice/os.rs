//! Orlik–Solomon ideal generators for a single contact-locus component.
//!
//! The cohomology of the component indexed by `j` is `E / J_j`, with `E` the
//! exterior algebra on `e_1..e_d`. The generators are listed symbolically as
//! index sets; subsets are taken up to size `rank + 1`, which suffices
//! because larger boundaries lie in the ideal of the smaller ones.

use serde::{Deserialize, Serialize};

use crate::arrangement::{subsets_up_to, MultiArrangement};
use crate::contact::ChainDescriptor;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum OsGeneratorKind {
    /// `e_J` for `J ⊆ J_0(j)` whose intersection with `Z_0` is empty.
    Monomial,
    /// `∂e_J` for a dependent `J ⊆ J_level(j)`; level 0 uses the affine
    /// hyperplanes, higher levels their homogeneous parts.
    Boundary { level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OsGenerator {
    #[serde(flatten)]
    pub kind: OsGeneratorKind,
    pub indices: Vec<usize>,
}

pub fn os_presentation(arr: &MultiArrangement, j: &ChainDescriptor) -> Result<Vec<OsGenerator>> {
    j.validate(arr)?;
    let n = arr.dim();
    let max_size = arr.rank() + 1;
    let mut out = Vec::new();

    let level_sets = |k: u32| -> (Vec<usize>, Vec<usize>) {
        let above = (0..arr.len()).filter(|&i| j.j[i] > k).collect();
        let at = (0..arr.len()).filter(|&i| j.j[i] == k).collect();
        (above, at)
    };

    let (above, at) = level_sets(0);
    let base = arr
        .subset_flat(&above)
        .expect("S_0 of a valid descriptor has a non-empty intersection");
    for sub in subsets_up_to(at.len(), max_size).into_iter().skip(1) {
        let picked: Vec<usize> = sub.iter().map(|&t| at[t]).collect();
        let mut all = above.clone();
        all.extend(&picked);
        match arr.subset_flat(&all) {
            None => out.push(OsGenerator {
                kind: OsGeneratorKind::Monomial,
                indices: picked,
            }),
            Some(flat) => {
                if base.dim() - flat.dim() < picked.len() {
                    out.push(OsGenerator {
                        kind: OsGeneratorKind::Boundary { level: 0 },
                        indices: picked,
                    });
                }
            }
        }
    }

    for k in 1..=j.m {
        let (above, at) = level_sets(k);
        if at.is_empty() {
            continue;
        }
        let base = n - arr.center_flat(&above).dim();
        for sub in subsets_up_to(at.len(), max_size).into_iter().skip(1) {
            let picked: Vec<usize> = sub.iter().map(|&t| at[t]).collect();
            let mut all = above.clone();
            all.extend(&picked);
            let codim = n - arr.center_flat(&all).dim();
            if codim - base < picked.len() {
                out.push(OsGenerator {
                    kind: OsGeneratorKind::Boundary { level: k as usize },
                    indices: picked,
                });
            }
        }
    }
    Ok(out)
}
