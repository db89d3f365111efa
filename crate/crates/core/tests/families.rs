use std::collections::BTreeMap;

use cohom::catalog_scan::{lookup, recognize, s3xs3_entries, scan, HType};
use cohom::diagram::{canonical_form, parse, validate};
use cohom::hitchin::{identify_family, konishi_slopes, subcover_diagram, Bundle};
use cohom::obstruct::{run_pipeline, Overall};
use cohom::topology::invariants;
use cohom::weyl::{weyl_group, DEFAULT_WEYL_CAP};

#[test]
fn catalog_rows_reproduce_expectations() {
    for e in s3xs3_entries(12).unwrap() {
        let v = validate(&e.diagram).unwrap();
        let w = weyl_group(&e.diagram, DEFAULT_WEYL_CAP).unwrap();
        let label = e.label();
        assert_eq!((v.l_minus, v.l_plus), (e.expected.l_minus, e.expected.l_plus), "{label}");
        assert_eq!(w.weyl_type, e.expected.weyl_type, "{label}");
        assert_eq!(v.hbar, e.expected.hbar, "{label}");
        assert!(run_pipeline(&e.diagram).survives(), "{label}");
    }
}

#[test]
fn p_family_weyl_parity() {
    for k in 1..=20 {
        let d = lookup("P_k", Some(k)).unwrap().diagram;
        let w = weyl_group(&d, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(w.weyl_type, if k % 2 == 0 { "D3" } else { "D6" }, "P_{k}");
        assert_eq!(w.order(), if k % 2 == 0 { 6 } else { 12 });
    }
}

#[test]
fn family_topology() {
    for k in 1..=20 {
        let p = invariants(&lookup("P_k", Some(k)).unwrap().diagram).unwrap();
        let pi3 = p.pi3.unwrap();
        assert_eq!(pi3.free_rank, 0);
        assert_eq!(pi3.order(), Some(k.into()), "P_{k}");
        let q = invariants(&lookup("Q_k", Some(k)).unwrap().diagram).unwrap();
        assert_eq!(q.h4.to_string(), format!("Z_{}", 2 * k + 1), "Q_{k}");
    }
}

#[test]
fn hitchin_identifications() {
    for k in 1..=20 {
        let s = konishi_slopes(k).unwrap();
        let id = identify_family(k, Bundle::Antiselfdual, s.antiselfdual).unwrap();
        let want = if k % 2 == 1 { format!("P_{}", (k + 1) / 2) } else { format!("Q_{}", k / 2) };
        assert_eq!(id.family, want, "k={k}");
        let sub = subcover_diagram(&parse(&id.diagram).unwrap()).unwrap();
        assert_eq!(validate(&sub).unwrap().pi1_order, 2, "k={k}");
    }
    let sd = |k| identify_family(k, Bundle::Selfdual, konishi_slopes(k).unwrap().selfdual).unwrap();
    assert_eq!(sd(3).family, "B7");
    assert_eq!(sd(4).family, "R");
    assert_eq!(sd(4).slopes, [(1, 3), (2, 1)]);
}

#[test]
fn known_rejections() {
    let rejected_by = |text: &str| match run_pipeline(&parse(text).unwrap()).overall {
        Overall::Rejected { check, .. } => check,
        Overall::Survives => "survives".into(),
    };
    assert_eq!(rejected_by("K-=C(i,1,1)*H; K+=C(j,1,5)*H; H=gen{(i,i),(j,-j)}"), "weight_plus");
    assert_eq!(rejected_by("K-=C(i,3,5)*H; K+=C(j,5,7)*H; H=gen{(i,-i),(j,-j)}"), "frankel");
    assert_eq!(rejected_by("K-=C(i,1,1)*H; K+=C(j,1,1)*H; H=gen{(i,i),(j,j)}"), "linear_primitivity");
}

fn counts(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[test]
fn small_scans_are_frozen_and_deterministic() {
    let cases = [
        (HType::Q, 91, vec!["B7", "P_1", "P_2", "P_3"], counts(&[
            ("frankel", 20), ("linear_primitivity", 1), ("weight_minus", 39), ("weight_plus", 24),
        ])),
        (HType::Z4Z2, 286, vec!["Q_1", "Q_2", "Q_3", "Q_4", "Q_5", "Q_6", "R"], counts(&[
            ("frankel", 70), ("weight_minus", 132), ("weight_plus", 70),
        ])),
        (HType::Z2, 35, vec!["E_1", "E_2", "E_3", "E_4", "E_5", "E_6"], counts(&[
            ("validate", 13), ("weight_plus", 10),
        ])),
    ];
    for (h, tested, labels, rejections) in cases {
        let one = scan(7, h, Some(1)).unwrap();
        let four = scan(7, h, Some(4)).unwrap();
        assert_eq!(one.candidates_tested, tested, "{h:?}");
        assert_eq!(one.labels(), labels, "{h:?}");
        assert_eq!(one.rejection_counts, rejections, "{h:?}");
        let diagrams = |r: &cohom::catalog_scan::ScanReport| r.survivors.iter().map(|s| s.diagram.clone()).collect::<Vec<_>>();
        assert_eq!(diagrams(&one), diagrams(&four));
        for s in &one.survivors {
            let d = parse(&s.diagram).unwrap();
            assert_eq!(canonical_form(&d).unwrap(), d, "{}", s.diagram);
            assert_eq!(recognize(&d).unwrap().unwrap().label, s.label);
        }
    }
}
