//! Property-based law checks across the whole pipeline: parser, closure
//! algebras, quotients, resolutions, and the decision procedures.

mod common;

use baire_core::algebra::{kur_algebra_from_frame, verify_axioms, AxiomVerdict, LawSet};
use baire_core::decision::{
    classify_scroggs, eval_formula, s5u_decide, valid_in_algebra, valid_in_cluster, ScroggsClass,
    Valuation,
};
use baire_core::formula::{parse, Formula};
use baire_core::maps::{
    check_baire_map, embed_s5_frame, find_baire_resolution, map_from_resolution,
    resolution_from_map,
};
use baire_core::quotient::{banach_category_check, build_quotient, is_meager};
use baire_core::{Frame, Subset};
use proptest::prelude::*;

fn arb_formula(max_var: u32, allow_forall: bool) -> impl Strategy<Value = Formula> {
    let leaf = (0..=max_var).prop_map(Formula::var);
    leaf.prop_recursive(4, 16, 2, move |inner| {
        let unary = prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::diamond),
            inner.clone().prop_map(Formula::bx),
        ];
        let binary = prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::imp(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
        ];
        if allow_forall {
            prop_oneof![
                unary,
                binary,
                inner.clone().prop_map(Formula::forall),
                inner.prop_map(Formula::exists),
            ]
            .boxed()
        } else {
            prop_oneof![unary, binary].boxed()
        }
    })
}

/// Arbitrary preorder frame on 1..=max_n worlds: random successor rows closed
/// reflexively and transitively.
fn arb_frame(max_n: usize) -> impl Strategy<Value = Frame> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bits::u64::masked((1u64 << n) - 1), n).prop_map(
            move |rows| {
                let names = (0..n).map(|i| format!("w{i}")).collect();
                let subsets = rows.into_iter().map(Subset::from_bits).collect();
                Frame::from_rows(names, subsets, true).expect("auto-closed rows")
            },
        )
    })
}

fn frame_and_two_sets(max_n: usize) -> impl Strategy<Value = (Frame, Subset, Subset)> {
    arb_frame(max_n).prop_flat_map(|fr| {
        let n = fr.len();
        let mask = (1u64 << n) - 1;
        (proptest::bits::u64::masked(mask), proptest::bits::u64::masked(mask)).prop_map(
            move |(a, b)| (fr.clone(), Subset::from_bits(a), Subset::from_bits(b)),
        )
    })
}

#[test]
fn labeled_preorder_counts_are_the_known_ones() {
    let counts: Vec<usize> = (0..=5).map(|n| common::all_preorders(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 4, 29, 355, 6942]);
}

proptest! {
    #[test]
    fn parse_inverts_render(f in arb_formula(3, true)) {
        let text = f.render();
        prop_assert_eq!(parse(&text).expect("rendered formulas parse"), f);
    }

    #[test]
    fn kuratowski_laws_hold_frame_side((fr, a, b) in frame_and_two_sets(6)) {
        let n = fr.len();
        prop_assert!(a.is_subset_of(fr.closure(a)));
        prop_assert_eq!(fr.closure(fr.closure(a)), fr.closure(a));
        prop_assert_eq!(fr.closure(a.union(b)), fr.closure(a).union(fr.closure(b)));
        prop_assert_eq!(fr.closure(Subset::EMPTY), Subset::EMPTY);
        prop_assert_eq!(fr.interior(a), fr.closure(a.complement_in(n)).complement_in(n));
    }

    #[test]
    fn closure_laws_verify_on_kuratowski_algebras(fr in arb_frame(5)) {
        let alg = kur_algebra_from_frame(&fr);
        prop_assert!(verify_axioms(&alg, LawSet::Closure).unwrap().passed());
    }

    #[test]
    fn quotients_are_monadic_algebras(fr in arb_frame(5)) {
        let q = build_quotient(&fr);
        prop_assert!(verify_axioms(q.algebra(), LawSet::Monadic).unwrap().passed());
        match verify_axioms(&kur_algebra_from_frame(&fr), LawSet::Monadic).unwrap() {
            // A frame that already violates the monadic law must keep passing
            // the plain closure laws.
            AxiomVerdict::Fail(_) => {
                prop_assert!(verify_axioms(&kur_algebra_from_frame(&fr), LawSet::Closure)
                    .unwrap()
                    .passed());
            }
            AxiomVerdict::Pass => {}
        }
    }

    #[test]
    fn quotient_operations_ignore_representatives((fr, a, m) in frame_and_two_sets(6)) {
        let q = build_quotient(&fr);
        let meager_part = m.diff(fr.qmax());
        let b = a.union(meager_part).diff(meager_part.inter(a));
        // a and b differ by a meager set only.
        prop_assert!(is_meager(&fr, a.diff(b).union(b.diff(a))));
        prop_assert!(q.equivalent(a, b));
        prop_assert_eq!(q.class_of(a), q.class_of(b));
        prop_assert_eq!(q.closure(q.class_of(a)), q.closure(q.class_of(b)));
        prop_assert_eq!(
            q.complement(q.class_of(a)),
            q.complement(q.class_of(b))
        );
    }

    #[test]
    fn quotient_open_classes_equal_closed_classes(fr in arb_frame(5)) {
        let q = build_quotient(&fr);
        prop_assert_eq!(q.open_classes().unwrap(), q.closed_classes().unwrap());
    }

    #[test]
    fn resolutions_exist_exactly_when_every_maximal_cluster_is_big_enough(
        fr in arb_frame(6),
        k in 1usize..=4,
    ) {
        let found = find_baire_resolution(&fr, k).unwrap();
        let enough = fr.maximal_clusters().iter().all(|c| c.len() >= k);
        prop_assert_eq!(found.is_some(), enough);
        if let Some(res) = found {
            prop_assert!(res.validate().is_ok());
        }
    }

    #[test]
    fn resolution_maps_round_trip(fr in arb_frame(6), k in 1usize..=3) {
        if let Some(res) = find_baire_resolution(&fr, k).unwrap() {
            let map = map_from_resolution(&res).unwrap();
            let report = check_baire_map(&map).unwrap();
            prop_assert!(report.is_baire_map && report.exact);
            let back = resolution_from_map(&map).unwrap();
            prop_assert_eq!(back.parts(), res.parts());
        }
    }

    #[test]
    fn banach_category_over_all_open_meager_families(fr in arb_frame(6)) {
        let opens = fr.open_sets().unwrap();
        let meager_opens: Vec<Subset> =
            opens.into_iter().filter(|&o| is_meager(&fr, o)).collect();
        // Finite preorder spaces are Baire: no nonempty open set is meager.
        prop_assert!(meager_opens.iter().all(|o| o.is_empty()));
        for take in 0..(1usize << meager_opens.len()) {
            let family: Vec<Subset> = meager_opens
                .iter()
                .enumerate()
                .filter(|(i, _)| take & (1 << i) != 0)
                .map(|(_, &o)| o)
                .collect();
            prop_assert!(banach_category_check(&fr, &family).unwrap().passed());
        }
    }

    #[test]
    fn cluster_sweep_matches_literal_validity(
        f in arb_formula(1, false),
        n in 1usize..=3,
    ) {
        let literal = valid_in_algebra(&kur_algebra_from_frame(&common::cluster(n)), &f)
            .unwrap()
            .valid;
        let orbit = valid_in_cluster(n, &f).unwrap().valid;
        prop_assert_eq!(literal, orbit);
    }

    #[test]
    fn cluster_validity_is_antitone_in_size(f in arb_formula(2, false), n in 1usize..=4) {
        let bigger = valid_in_cluster(n + 1, &f).unwrap().valid;
        let smaller = valid_in_cluster(n, &f).unwrap().valid;
        prop_assert!(!bigger || smaller);
    }

    #[test]
    fn scroggs_class_matches_cluster_validity(f in arb_formula(2, false)) {
        match classify_scroggs(&f, 8).unwrap() {
            ScroggsClass::S5 => {
                for n in 1..=4 {
                    prop_assert!(valid_in_cluster(n, &f).unwrap().valid);
                }
            }
            ScroggsClass::Inconsistent => {
                prop_assert!(!valid_in_cluster(1, &f).unwrap().valid);
            }
            ScroggsClass::Level(t) => {
                prop_assert!(valid_in_cluster(t, &f).unwrap().valid);
                if t < 8 {
                    prop_assert!(!valid_in_cluster(t + 1, &f).unwrap().valid);
                }
            }
        }
    }

    #[test]
    fn s5u_countermodels_falsify_honestly(f in arb_formula(1, true)) {
        // Keep the frame enumeration bounded for arbitrary random shapes.
        if f.forall_count() > 2 || f.diamond_count() > 3 {
            return Ok(());
        }
        let verdict = s5u_decide(&f).unwrap();
        if let Some(cm) = verdict.countermodel {
            let sizes = cm.cluster_sizes.clone().expect("frame countermodel");
            let fr = Frame::from_cluster_sizes(&sizes).unwrap();
            let alg = kur_algebra_from_frame(&fr);
            let mut v = Valuation::new();
            for &(var, set) in &cm.assignment {
                v.set(var, alg.element(set).unwrap());
            }
            let value = eval_formula(&alg, &v, &f).unwrap();
            prop_assert_eq!(value.subset(), cm.value);
            prop_assert_ne!(value, alg.one());
        }
    }

    #[test]
    fn embedded_algebras_transfer_validity(
        sizes in proptest::collection::vec(1usize..=3, 1..=2),
        space in arb_frame(5),
        f in arb_formula(1, false),
    ) {
        let w = Frame::from_cluster_sizes(&sizes).unwrap();
        if let Some(hom) = embed_s5_frame(&w, &space).unwrap() {
            prop_assert!(hom.preserves_boolean_ops().unwrap());
            prop_assert!(hom.preserves_closure().unwrap());
            prop_assert!(hom.is_injective().unwrap());
            let q = build_quotient(&space);
            let on_quotient = valid_in_algebra(q.algebra(), &f).unwrap().valid;
            let on_w = valid_in_algebra(&kur_algebra_from_frame(&w), &f).unwrap().valid;
            prop_assert!(!on_quotient || on_w);
        }
    }
}
