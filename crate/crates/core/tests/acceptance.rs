//! Acceptance checks for the whole pipeline. Each test prints one PASS/FAIL
//! line; run with `cargo test --test acceptance -- --nocapture` to see all of
//! them at once.

mod common;

use baire_core::algebra::{kur_algebra_from_frame, verify_axioms, LawSet};
use baire_core::decision::{
    eval_formula, s5_decide, s5n_decide, s5u_decide, s5u_decide_with_bounds, valid_in_algebra,
    valid_in_cluster, Countermodel, Valuation, DEFAULT_SWEEP_BUDGET,
};
use baire_core::formula::{axiom_library, bd, Formula};
use baire_core::maps::{
    build_s5n_subalgebra, check_baire_map, embed_s5_frame, find_baire_resolution,
    map_from_resolution, resolution_from_map,
};
use baire_core::quotient::{banach_category_check, build_quotient, is_meager};
use baire_core::{Frame, Subset};
use std::time::{Duration, Instant};

fn report(number: usize, what: &str, pass: bool) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({what}): {verdict}");
    assert!(pass, "criterion {number:02} ({what}) failed");
}

/// Re-evaluate a countermodel on its own cluster frame and confirm it
/// falsifies the formula.
fn countermodel_refutes(f: &Formula, cm: &Countermodel) -> bool {
    let sizes = match &cm.cluster_sizes {
        Some(s) => s.clone(),
        None => return false,
    };
    let fr = Frame::from_cluster_sizes(&sizes).expect("countermodel frame");
    let alg = kur_algebra_from_frame(&fr);
    let mut v = Valuation::new();
    for &(var, set) in &cm.assignment {
        match alg.element(set) {
            Ok(e) => v.set(var, e),
            Err(_) => return false,
        }
    }
    match eval_formula(&alg, &v, f) {
        Ok(value) => value.subset() == cm.value && value != alg.one(),
        Err(_) => false,
    }
}

#[test]
fn criterion_01_quotients_are_monadic() {
    let start = Instant::now();
    let family = common::preorder_family();
    let pass = family.iter().all(|fr| {
        verify_axioms(build_quotient(fr).algebra(), LawSet::Monadic)
            .unwrap()
            .passed()
    });
    let in_time = start.elapsed() < Duration::from_secs(60);
    report(1, "every quotient on <=5 worlds satisfies the monadic laws", pass && in_time);
}

#[test]
fn criterion_02_open_equals_closed_in_quotients() {
    let family = common::preorder_family();
    let pass = family.iter().all(|fr| {
        let q = build_quotient(fr);
        q.open_classes().unwrap() == q.closed_classes().unwrap()
    });
    report(2, "open classes coincide with closed classes", pass);
}

#[test]
fn criterion_03_s5_axioms_sound_on_quotients() {
    let family = common::preorder_family();
    let axioms: Vec<Formula> = ["M", "T", "4", "N", "5"]
        .iter()
        .map(|name| axiom_library(name, None).unwrap())
        .collect();
    let pass = family.iter().all(|fr| {
        let q = build_quotient(fr);
        axioms
            .iter()
            .all(|ax| valid_in_algebra(q.algebra(), ax).unwrap().valid)
    });
    report(3, "axioms M, T, 4, N, 5 valid in every quotient", pass);
}

#[test]
fn criterion_04_bd_boundary_is_exact() {
    let mut pass = true;
    for n in 1..=4usize {
        let f = bd(n as u32);
        let at = s5n_decide(&f, n).unwrap();
        let beyond = s5n_decide(&f, n + 1).unwrap();
        let witness_ok = match &beyond.countermodel {
            Some(cm) => {
                cm.cluster_sizes == Some(vec![n + 1]) && countermodel_refutes(&f, cm)
            }
            None => false,
        };
        pass &= at.valid && !beyond.valid && witness_ok;
    }
    report(4, "bd_n valid on the n-cluster and refuted on the (n+1)-cluster", pass);
}

#[test]
fn criterion_05_quotient_is_the_powerset_of_qmax() {
    let family = common::preorder_family();
    let pass = family.iter().all(|fr| {
        let q = build_quotient(fr);
        let qmax = fr.qmax();
        let alg = q.algebra();
        if alg.carrier_len() != Some(1u64 << qmax.len()) {
            return false;
        }
        // The representative map must be a Boolean isomorphism onto the
        // subsets of qmax: bijective with pointwise set operations.
        let elements = alg.elements().unwrap();
        let mut reps: Vec<Subset> = elements
            .iter()
            .map(|&e| q.decompress(e).rep())
            .collect();
        for &rep in &reps {
            if !rep.is_subset_of(qmax) {
                return false;
            }
        }
        reps.sort();
        reps.dedup();
        if reps.len() != elements.len() {
            return false;
        }
        elements.iter().all(|&a| {
            let ra = q.decompress(a).rep();
            if q.decompress(alg.complement(a)).rep() != qmax.diff(ra) {
                return false;
            }
            elements.iter().all(|&b| {
                let rb = q.decompress(b).rep();
                q.decompress(alg.meet(a, b)).rep() == ra.inter(rb)
                    && q.decompress(alg.join(a, b)).rep() == ra.union(rb)
            })
        })
    });
    report(5, "quotient carrier is exactly the powerset of qmax", pass);
}

#[test]
fn criterion_06_resolution_map_round_trip() {
    let mut family = common::all_preorders(1);
    family.extend(common::all_preorders(2));
    family.extend(common::all_preorders(3));
    family.extend(common::all_preorders(4));
    family.extend(common::six_world_family());
    let mut pass = true;
    let mut found = 0usize;
    for fr in &family {
        for k in 1..=fr.len() {
            let Some(res) = find_baire_resolution(fr, k).unwrap() else {
                continue;
            };
            found += 1;
            let map = map_from_resolution(&res).unwrap();
            let r = check_baire_map(&map).unwrap();
            pass &= r.almost_everywhere
                && r.proper
                && r.baire_continuous
                && r.baire_open
                && r.exact;
            let back = resolution_from_map(&map).unwrap();
            // Parts beyond the first come back exactly; the first may only
            // grow by a meager set.
            pass &= back.parts().len() == res.parts().len();
            pass &= back.parts()[1..] == res.parts()[1..];
            let (part0, orig0) = (back.parts()[0], res.parts()[0]);
            pass &= orig0.is_subset_of(part0) && is_meager(fr, part0.diff(orig0));
        }
    }
    report(6, "found resolutions give exact Baire maps and round-trip", pass && found > 400);
}

#[test]
fn criterion_07_embeddings_verify_exhaustively() {
    let targets = [
        Frame::n_cluster(1).unwrap(),
        Frame::n_cluster(2).unwrap(),
        Frame::n_cluster(3).unwrap(),
        Frame::from_cluster_sizes(&[2, 2]).unwrap(),
    ];
    let mut spaces: Vec<Frame> = common::six_world_family();
    spaces.push(Frame::from_cluster_sizes(&[4, 4]).unwrap());
    spaces.push(Frame::from_cluster_sizes(&[5, 3]).unwrap());
    spaces.push(Frame::from_cluster_sizes(&[8]).unwrap());
    spaces.push(
        Frame::build(
            &["r", "a1", "a2", "a3", "b1", "b2", "b3", "s"],
            &[
                ("r", "a1"),
                ("s", "a1"),
                ("a1", "a2"),
                ("a2", "a3"),
                ("a3", "a1"),
                ("r", "b1"),
                ("b1", "b2"),
                ("b2", "b3"),
                ("b3", "b1"),
            ],
            true,
        )
        .unwrap(),
    );
    let mut pass = true;
    for w in &targets {
        let mut embedded = 0usize;
        for sp in &spaces {
            let Some(hom) = embed_s5_frame(w, sp).unwrap() else {
                continue;
            };
            embedded += 1;
            pass &= hom.preserves_boolean_ops().unwrap()
                && hom.preserves_closure().unwrap()
                && hom.is_injective().unwrap();
        }
        // Every target embeds into at least one listed space.
        pass &= embedded > 0;
    }
    report(7, "embedded cluster algebras are injective homomorphisms", pass);
}

#[test]
fn criterion_08_s5n_subalgebra_on_the_four_cluster() {
    let c4 = Frame::n_cluster(4).unwrap();
    let sub = build_s5n_subalgebra(&c4, 2).unwrap().expect("4-cluster has a 2-resolution");
    let q = build_quotient(&c4);
    let clopens_in = q
        .algebra()
        .clopen_elements()
        .unwrap()
        .iter()
        .all(|e| sub.contains(e.subset()));
    let validates_bd2 = valid_in_algebra(&sub, &bd(2)).unwrap().valid;
    let refutes_bd1 = !valid_in_algebra(&sub, &bd(1)).unwrap().valid;
    report(
        8,
        "subalgebra of the 4-cluster quotient holds clopens, bd2, and not bd1",
        clopens_in && validates_bd2 && refutes_bd1,
    );
}

#[test]
fn criterion_09_decision_procedures_agree_with_oracles() {
    let start = Instant::now();
    let mut pass = true;

    // Diamond fragment: the cluster procedure against per-cluster validity,
    // with the literal assignment sweep as the ground oracle on small sizes.
    for f in common::s5_sample() {
        let bound = f.diamond_count() + 1;
        let verdict = s5_decide(&f).unwrap();
        let mut valid_everywhere = true;
        for j in 1..=bound + 2 {
            let on_j = valid_in_cluster(j, &f).unwrap().valid;
            if j <= 3 {
                let literal = valid_in_algebra(&kur_algebra_from_frame(&common::cluster(j)), &f)
                    .unwrap()
                    .valid;
                pass &= literal == on_j;
            }
            valid_everywhere &= on_j;
        }
        pass &= verdict.valid == valid_everywhere;
        if let Some(cm) = &verdict.countermodel {
            pass &= countermodel_refutes(&f, cm);
        } else {
            pass &= verdict.valid;
        }
    }

    // Universal-modality fragment: rerun the frame enumeration one cluster
    // count and one cluster size past the procedure's own bounds.
    for f in common::s5u_sample() {
        let c = f.forall_count() + 1;
        let m = f.diamond_count() + 1;
        let verdict = s5u_decide(&f).unwrap();
        let widened = s5u_decide_with_bounds(&f, c + 1, m + 1, 1 << 28).unwrap();
        pass &= verdict.valid == widened.valid;
        if let Some(cm) = &verdict.countermodel {
            pass &= countermodel_refutes(&f, cm);
        }
        if verdict.valid {
            // Spot-check tiny frames literally.
            for sizes in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
                let fr = Frame::from_cluster_sizes(&sizes).unwrap();
                pass &= valid_in_algebra(&kur_algebra_from_frame(&fr), &f).unwrap().valid;
            }
        }
    }

    let in_time = start.elapsed() < Duration::from_secs(300);
    report(9, "decision procedures agree with brute-force oracles", pass && in_time);
}

#[test]
fn criterion_10_shehtman_axiom_needs_two_clusters() {
    let f = axiom_library("shehtman", None).unwrap();
    let verdict = s5u_decide(&f).unwrap();
    let two_cluster_witness = match &verdict.countermodel {
        Some(cm) => {
            cm.cluster_sizes.as_ref().map(|s| s.len()) == Some(2) && countermodel_refutes(&f, cm)
        }
        None => false,
    };
    let single = s5u_decide_with_bounds(&f, 1, f.diamond_count() + 1, DEFAULT_SWEEP_BUDGET)
        .unwrap();
    report(
        10,
        "connectedness axiom fails on two clusters, holds on one",
        !verdict.valid && two_cluster_witness && single.valid,
    );
}

#[test]
fn criterion_11_banach_category_on_all_open_meager_families() {
    let family = common::preorder_family();
    let pass = family.iter().all(|fr| {
        let meager_opens: Vec<Subset> = fr
            .open_sets()
            .unwrap()
            .into_iter()
            .filter(|&o| is_meager(fr, o))
            .collect();
        (0..(1usize << meager_opens.len())).all(|take| {
            let sub: Vec<Subset> = meager_opens
                .iter()
                .enumerate()
                .filter(|(i, _)| take & (1 << i) != 0)
                .map(|(_, &o)| o)
                .collect();
            banach_category_check(fr, &sub).unwrap().passed()
        })
    });
    report(11, "unions of open meager families stay meager", pass);
}

#[test]
fn criterion_12_cluster_validity_is_monotone_down_the_chain() {
    let mut pass = true;
    for f in common::s5_sample() {
        let mut prev = true; // validity on the hypothetical 0-cluster
        for n in 1..=6usize {
            let now = valid_in_cluster(n, &f).unwrap().valid;
            if n >= 2 {
                // valid on the n-cluster implies valid on the (n-1)-cluster
                pass &= !now || prev;
            }
            if n <= 3 {
                let literal = valid_in_algebra(&kur_algebra_from_frame(&common::cluster(n)), &f)
                    .unwrap()
                    .valid;
                pass &= literal == now;
            }
            prev = now;
        }
    }
    report(12, "validity only shrinks as clusters grow", pass);
}
