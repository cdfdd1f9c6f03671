mod common;

use std::collections::{BTreeSet, VecDeque};

use curvecx::curve_ops::dehn_twist;
use curvecx::multicurve::as_generic_family;
use curvecx::orbit_enum::{catalogue, enumerate_codes, enumerate_orbits, max_rank, PantalonKind};
use curvecx::orbit_types::{canonicalize, is_face, orbit_type_of, same_orbit};
use curvecx::surface::SurfaceSignature;
use proptest::prelude::*;

#[test]
fn enumeration_stops_at_the_maximal_rank() {
    for g in 0..=2 {
        for m in 0..=3 {
            for q in 0..=2 {
                let sig = SurfaceSignature::new(g, m, q);
                let top = max_rank(sig);
                assert!(enumerate_orbits(sig, top + 1).is_empty(), "{sig}");
                for r in 1..=top {
                    let types = enumerate_orbits(sig, r);
                    assert!(!types.is_empty(), "{sig} r={r}");
                    for ot in &types {
                        assert!(ot.validate().is_ok(), "{sig}");
                        if r == top && sig.admits_pantalon_decomposition() {
                            for v in 0..ot.nodes.len() {
                                assert_ne!(PantalonKind::of(ot.node_signature(v)), PantalonKind::NotPantalon);
                            }
                        }
                    }
                }
                let cat = catalogue(sig);
                assert_eq!(cat.total, cat.counts().iter().sum::<usize>());
            }
        }
    }
}

#[test]
fn sampled_codes_are_enumerated() {
    for fx in common::all() {
        for fam in &fx.families {
            let ot = orbit_type_of(fam).unwrap();
            assert!(ot.validate().is_ok());
            assert!(enumerate_codes(fx.signature, fam.r()).contains(&canonicalize(&ot)));
        }
    }
}

/// Seeds of the once-punctured torus are all one orbit; short twist words
/// along the first few seeds connect them.
#[test]
fn equal_codes_are_connected_by_short_words() {
    let fx = &common::anchored()[0];
    let gens: Vec<_> = fx.seeds.iter().take(4).collect();
    let start = fx.seeds[0].clone();
    let mut seen = BTreeSet::from([start.weights().to_vec()]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((c, d)) = queue.pop_front() {
        if d == 3 {
            continue;
        }
        for a in &gens {
            for n in [-1, 1] {
                let x = dehn_twist(a, n, &c).unwrap();
                if seen.insert(x.weights().to_vec()) {
                    queue.push_back((x, d + 1));
                }
            }
        }
    }
    for s in fx.seeds.iter().take(6) {
        assert!(seen.contains(s.weights()), "{:?} not reached", s.weights());
    }
}

proptest! {
    #![proptest_config(common::config(40))]

    #[test]
    fn twists_preserve_orbit_types(f in 0usize..6, k in 0usize..64, letters in common::letters(4)) {
        let fx = &common::all()[f];
        let fam = &fx.families[k % fx.families.len()];
        let img = as_generic_family(&common::act(fx, &letters, &fam.union())).unwrap();
        prop_assert!(same_orbit(fam, &img).unwrap());
        prop_assert!(orbit_type_of(&img).unwrap().validate().is_ok());
    }

    #[test]
    fn faces_form_a_partial_order(f in 0usize..6, k in 0usize..64, x in any::<u16>(), y in any::<u16>()) {
        let fx = &common::all()[f];
        let fam = &fx.families[k % fx.families.len()];
        let r = fam.r();
        let pick = |mask: u16| {
            let keep: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            fam.face(&keep)
        };
        let (a, b) = (pick(x), pick(x & y));
        prop_assert!(is_face(fam, fam).unwrap());
        prop_assert!(is_face(&b, &a).unwrap());
        prop_assert!(is_face(&a, fam).unwrap());
        prop_assert!(is_face(&b, fam).unwrap());
        if is_face(&a, &b).unwrap() {
            prop_assert_eq!(a.components(), b.components());
        }
    }
}
