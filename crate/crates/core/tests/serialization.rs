use contactloci::contact::decomposition;
use contactloci::fixtures::named_suite;
use contactloci::lattice::{combinatorial_type, CombinatorialType, IntersectionPoset};
use contactloci::zeta::naive_zeta;
use contactloci::{Error, LaurentSeriesTruncation, MultiArrangement};

#[test]
fn arrangements_roundtrip() {
    for (name, arr) in named_suite() {
        let text = arr.to_json();
        assert_eq!(MultiArrangement::from_json(&text).unwrap(), arr, "{name}");
        let value = serde_json::to_string(&arr).unwrap();
        assert_eq!(serde_json::from_str::<MultiArrangement>(&value).unwrap(), arr);
    }
}

#[test]
fn restricted_factor_arrangements_roundtrip() {
    for (_, arr) in named_suite() {
        for c in decomposition(&arr, 2).unwrap() {
            for f in &c.factors {
                let text = serde_json::to_string(&f.arrangement).unwrap();
                assert_eq!(serde_json::from_str::<MultiArrangement>(&text).unwrap(), f.arrangement);
            }
        }
    }
}

#[test]
fn posets_and_types_roundtrip() {
    for (name, arr) in named_suite() {
        let poset = IntersectionPoset::build(&arr).unwrap();
        let text = serde_json::to_string(&poset).unwrap();
        let back: IntersectionPoset = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_report(), poset.to_report(), "{name}");
        let ty = combinatorial_type(&arr).unwrap();
        let back: CombinatorialType = serde_json::from_str(&serde_json::to_string(&ty).unwrap()).unwrap();
        assert_eq!(back, ty);
    }
}

#[test]
fn zeta_roundtrip() {
    for (_, arr) in named_suite() {
        if !arr.is_central() {
            continue;
        }
        let z = naive_zeta(&arr, 3).unwrap();
        let back: LaurentSeriesTruncation = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }
}

#[test]
fn input_diagnostics() {
    let dup = r#"{"dim": 2, "hyperplanes": [{"coeffs": ["1", "0"]}, {"coeffs": ["2", "0"], "const": "0"}]}"#;
    let e = MultiArrangement::from_json(dup).unwrap_err();
    assert!(matches!(e, Error::DuplicateHyperplane(0, 1)));
    assert!(e.to_string().contains("duplicate hyperplane"));

    let bad_number = r#"{"dim": 2, "hyperplanes": [{"coeffs": ["1", "x"]}]}"#;
    let e = MultiArrangement::from_json(bad_number).unwrap_err().to_string();
    assert!(e.contains("hyperplanes[0].coeffs[1]"), "{e}");

    let unknown = r#"{"dim": 1, "hyperplanes": [{"coeffs": ["1"], "weight": 2}]}"#;
    let e = MultiArrangement::from_json(unknown).unwrap_err().to_string();
    assert!(e.contains("line 1"), "{e}");

    let empty = r#"{"dim": 1, "hyperplanes": []}"#;
    assert!(MultiArrangement::from_json(empty).is_err());

    let rational = r#"{"dim": 1, "hyperplanes": [{"coeffs": ["2/3"], "const": "-1/3", "mult": 4}]}"#;
    let arr = MultiArrangement::from_json(rational).unwrap();
    // primitive form: x - 1/2
    assert_eq!(arr.hyperplanes()[0].coeffs()[0], 1.into());
    assert_eq!(contactloci::arith::format_rational(arr.hyperplanes()[0].constant()), "-1/2");
    assert_eq!(arr.multiplicities(), vec![4]);
}
