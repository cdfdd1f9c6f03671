mod common;

use curvecx::curve_ops::{apply_word, dehn_twist, intersection_number, transversal_curve, TwistWord};
use curvecx::error::Error;
use curvecx::multicurve::{
    as_generic_family, canonical_eq, classify_component, trace, ComponentClass, NormalCoordinates,
};
use curvecx::surface::{Side, VertexKind};
use proptest::prelude::*;

fn peripheral(fx: &curvecx::fixtures::Fixture) -> NormalCoordinates {
    let t = &fx.surface;
    let v = (0..t.num_vertices())
        .find(|&v| t.vertex_kind(v) != VertexKind::Ghost)
        .unwrap();
    let walk: Vec<Side> = t
        .vertex_link(v)
        .iter()
        .map(|&(tri, k)| Side::new(tri as u32, ((k + 2) % 3) as u8))
        .collect();
    NormalCoordinates::from_simple_walk(t, &walk).unwrap()
}

#[test]
fn peripheral_curves_classify() {
    for fx in common::anchored() {
        let p = peripheral(fx);
        let class = classify_component(&p).unwrap();
        assert!(
            matches!(
                class,
                ComponentClass::PuncturePeripheral | ComponentClass::BoundaryParallel
            ),
            "{class:?}"
        );
    }
}

proptest! {
    #![proptest_config(common::config(40))]

    #[test]
    fn strands_match_weights(f in 0usize..6, k in 0usize..64, letters in common::letters(3)) {
        let fx = &common::all()[f];
        let fam = &fx.families[k % fx.families.len()];
        let c = common::act(fx, &letters, &fam.union());
        prop_assert_eq!(trace(&c).strand_counts(fx.surface.num_edges()), c.weights().to_vec());
    }

    #[test]
    fn classification_survives_twists(f in 0usize..4, s in 0usize..40, letters in common::letters(3)) {
        let fx = &common::anchored()[f];
        let c = &fx.seeds[s % fx.seeds.len()];
        let img = common::act(fx, &letters, c);
        prop_assert_eq!(classify_component(&img).unwrap(), classify_component(c).unwrap());
        let p = peripheral(fx);
        prop_assert_eq!(classify_component(&common::act(fx, &letters, &p)).unwrap(), classify_component(&p).unwrap());
    }

    #[test]
    fn generic_family_recognition(f in 0usize..4, k in 0usize..64, letters in common::letters(2), dup in 0usize..8) {
        let fx = &common::anchored()[f];
        let fam = &fx.families[k % fx.families.len()];
        let img = common::act(fx, &letters, &fam.union());
        let got = as_generic_family(&img).unwrap();
        prop_assert_eq!(got.r(), fam.r());
        for c in got.components() {
            prop_assert_eq!(classify_component(c).unwrap(), ComponentClass::Generic);
        }
        let twin = &got.components()[dup % got.r()];
        let doubled = img.union(twin).unwrap();
        prop_assert!(matches!(as_generic_family(&doubled), Err(Error::IsotopicPair(_, _))));
        let with_peripheral = img.union(&common::act(fx, &letters, &peripheral(fx))).unwrap();
        prop_assert!(matches!(as_generic_family(&with_peripheral), Err(Error::NonGenericComponent(_, _))));
    }

    #[test]
    fn canonical_eq_is_an_equivalence(f in 0usize..6, a in 0usize..30, b in 0usize..30, c in 0usize..30) {
        let fx = &common::all()[f];
        let n = fx.seeds.len();
        let (a, b, c) = (&fx.seeds[a % n], &fx.seeds[b % n], &fx.seeds[c % n]);
        prop_assert!(canonical_eq(a, a).unwrap());
        let ab = canonical_eq(a, b).unwrap();
        prop_assert_eq!(ab, canonical_eq(b, a).unwrap());
        if ab && canonical_eq(b, c).unwrap() {
            prop_assert!(canonical_eq(a, c).unwrap());
        }
    }

    #[test]
    fn canonical_eq_is_preserved_by_twists(f in 0usize..4, a in 0usize..30, b in 0usize..30, letters in common::letters(3)) {
        let fx = &common::anchored()[f];
        let n = fx.seeds.len();
        let (a, b) = (&fx.seeds[a % n], &fx.seeds[b % n]);
        let (wa, wb) = (common::act(fx, &letters, a), common::act(fx, &letters, b));
        prop_assert_eq!(canonical_eq(a, b).unwrap(), canonical_eq(&wa, &wb).unwrap());
    }

    #[test]
    fn twist_identity(f in 0usize..4, a in 0usize..40, b in 0usize..40, n in -3i64..=3) {
        let fx = &common::anchored()[f];
        let k = fx.seeds.len();
        let (a, b) = (&fx.seeds[a % k], &fx.seeds[b % k]);
        let i = intersection_number(a, b).unwrap();
        let lhs = intersection_number(&dehn_twist(a, n, b).unwrap(), b).unwrap();
        prop_assert_eq!(lhs, n.unsigned_abs() * i * i);
    }

    #[test]
    fn twist_powers_add(
        f in 0usize..4, a in 0usize..40, c in 0usize..40,
        n in prop_oneof![-3i64..=-1, 1i64..=3], m in prop_oneof![-3i64..=-1, 1i64..=3],
    ) {
        let fx = &common::anchored()[f];
        let k = fx.seeds.len();
        let (a, c) = (&fx.seeds[a % k], &fx.seeds[c % k]);
        let w = TwistWord::new(vec![(a.clone(), n), (a.clone(), m)]).unwrap();
        prop_assert_eq!(apply_word(&w, c).unwrap(), dehn_twist(a, n + m, c).unwrap());
        prop_assert_eq!(dehn_twist(a, n, a).unwrap(), a.clone());
    }

    #[test]
    fn disjoint_twists_commute(f in 0usize..4, k in 0usize..64, c in 0usize..40, n in -2i64..=2, m in -2i64..=2) {
        let fx = &common::anchored()[f];
        let fam = &fx.families[k % fx.families.len()];
        prop_assume!(fam.r() >= 2);
        let (a, b) = (&fam.components()[0], &fam.components()[1]);
        prop_assert_eq!(intersection_number(a, b).unwrap(), 0);
        let c = &fx.seeds[c % fx.seeds.len()];
        let ab = dehn_twist(a, n, &dehn_twist(b, m, c).unwrap()).unwrap();
        let ba = dehn_twist(b, m, &dehn_twist(a, n, c).unwrap()).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn crossing_twists_have_witnesses(
        f in 0usize..4, a in 0usize..40, b in 0usize..40,
        j in prop_oneof![-2i64..=-1, 1i64..=2], k in prop_oneof![-2i64..=-1, 1i64..=2],
    ) {
        let fx = &common::anchored()[f];
        let n = fx.seeds.len();
        let (a, b) = (&fx.seeds[a % n], &fx.seeds[b % n]);
        // transversals separate twists along disjoint curves
        let ta = transversal_curve(&as_generic_family(a).unwrap(), 1).unwrap();
        let tb = transversal_curve(&as_generic_family(b).unwrap(), 1).unwrap();
        let witnesses = [a.clone(), b.clone(), dehn_twist(a, 1, b).unwrap(), ta, tb];
        if intersection_number(a, b).unwrap() > 0 {
            let found = witnesses.iter().any(|c| {
                let x = dehn_twist(a, j, &dehn_twist(b, k, c).unwrap()).unwrap();
                let y = dehn_twist(b, k, &dehn_twist(a, j, c).unwrap()).unwrap();
                x != y
            });
            prop_assert!(found);
        }
        if a != b {
            let found = witnesses.iter().any(|c| dehn_twist(a, j, c).unwrap() != dehn_twist(b, k, c).unwrap());
            prop_assert!(found);
        }
    }
}
