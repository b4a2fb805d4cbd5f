//! JSON payloads for the command-line reports.
//!
//! Every integer that can grow (Möbius values, Betti numbers, counts,
//! polynomial coefficients) is written as a decimal string.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::IntPoly;
use crate::arrangement::MultiArrangement;
use crate::budget::Budget;
use crate::contact::{build_component, enumerate_t_with, nu_encoding, Component};
use crate::error::Result;
use crate::generic::GenericSpec;
use crate::jets::{count_contact_with, count_restricted_with};
use crate::lattice::{combinatorial_type, os_presentation, IntersectionPoset};
use crate::zeta::naive_zeta_with;

fn poly_json(p: &IntPoly, var: &str) -> Value {
    json!({ "coeffs": p, "display": p.display_in(var) })
}

pub fn lattice_report(arr: &MultiArrangement, budget: &Budget) -> Result<Value> {
    let poset = IntersectionPoset::build_with(arr, budget)?;
    Ok(json!({
        "arrangement": arr,
        "poset": poset,
        "char_poly": poly_json(&poset.char_poly(), "q"),
        "complement_betti": poly_json(&poset.complement_betti(), "t"),
        "rank": poset.rank(),
        "combinatorial_type": combinatorial_type(arr)?,
    }))
}

fn component_json(arr: &MultiArrangement, c: &Component, restricted: bool) -> Result<Value> {
    let chain: Vec<Vec<usize>> = if c.descriptor.m == 0 {
        Vec::new()
    } else {
        nu_encoding(arr, &c.descriptor)?
            .chain
            .into_iter()
            .map(|f| f.indices)
            .collect()
    };
    let nu: Vec<u32> = if c.descriptor.m == 0 {
        Vec::new()
    } else {
        nu_encoding(arr, &c.descriptor)?.nu
    };
    let factors: Vec<Value> = c
        .factors
        .iter()
        .map(|f| {
            let mut v = json!({
                "level": f.level,
                "dim": f.dim,
                "arrangement": f.arrangement,
            });
            if restricted {
                v["forms"] = json!(f.forms);
            }
            v
        })
        .collect();
    let mut v = json!({
        "j": c.descriptor.j,
        "chain": chain,
        "nu": nu,
        "dim": c.dim(),
        "factors": factors,
        "fiber_constant": c.fiber_constant.to_string(),
    });
    if restricted {
        v["fiber_equation"] = json!(c.fiber_equation());
    } else {
        v["betti"] = poly_json(&c.betti, "t");
        v["char_poly"] = poly_json(&c.char_poly, "q");
        v["os_generators"] = json!(os_presentation(arr, &c.descriptor)?);
    }
    Ok(v)
}

/// Components of `X_m`, or of the restricted locus (`m >= 1`) with fiber
/// data in place of Betti numbers.
pub fn contact_report(arr: &MultiArrangement, m: u32, restricted: bool, budget: &Budget) -> Result<Value> {
    if restricted && m == 0 {
        return Err(crate::Error::Input("--restricted needs m >= 1".into()));
    }
    let descriptors = enumerate_t_with(arr, m, budget)?;
    let components = descriptors
        .iter()
        .map(|j| build_component(arr, j))
        .collect::<Result<Vec<_>>>()?;
    let listed = components
        .iter()
        .map(|c| component_json(arr, c, restricted))
        .collect::<Result<Vec<_>>>()?;
    let mut v = json!({
        "m": m,
        "restricted": restricted,
        "num_components": components.len(),
        "components": listed,
    });
    if !restricted {
        let total: IntPoly = components.iter().map(|c| c.betti.clone()).sum();
        v["betti"] = poly_json(&total, "t");
    }
    Ok(v)
}

pub fn zeta_report(arr: &MultiArrangement, max_order: u32, budget: &Budget) -> Result<Value> {
    let z = naive_zeta_with(arr, max_order, budget)?;
    let display: Vec<String> = z.coefficients.iter().map(|c| c.display_in("q")).collect();
    Ok(json!({
        "max_order": z.max_order,
        "coefficients": z.coefficients,
        "display": display,
    }))
}

pub fn generic_report(spec: &GenericSpec, m: u32) -> Result<Value> {
    let betti = spec.contact_betti(m)?;
    let mut v = json!({
        "kind": spec.kind,
        "n": spec.n,
        "d": spec.d,
        "m": m,
        "betti": poly_json(&betti, "t"),
        "complement_betti": poly_json(&spec.complement_betti(), "t"),
    });
    if spec.kind == crate::generic::GenericKind::GenericCentral && m >= 1 {
        v["restricted_betti"] = poly_json(&spec.restricted_betti(m)?, "t");
    }
    Ok(v)
}

/// Jet count next to the prediction from the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub m: u32,
    pub p: u64,
    pub restricted: bool,
    pub count: String,
    pub predicted: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn count_report(arr: &MultiArrangement, m: u32, p: u64, restricted: bool, budget: &Budget) -> Result<CountReport> {
    let (count, predicted) = if restricted {
        let count = count_restricted_with(arr, m, p, budget)?;
        let predicted = if m == 0 {
            // the fiber f = 1 of the complement itself
            crate::contact::component_fiber_count(arr, &crate::ChainDescriptor::zero(arr.len()), p)?
        } else {
            crate::contact::predicted_restricted_count(arr, m, p)?
        };
        (count, predicted)
    } else {
        (
            count_contact_with(arr, m, p, budget)?,
            crate::contact::predicted_contact_count(arr, m, p)?,
        )
    };
    Ok(CountReport {
        m,
        p,
        restricted,
        matches: count == predicted,
        count: count.to_string(),
        predicted: predicted.to_string(),
    })
}
