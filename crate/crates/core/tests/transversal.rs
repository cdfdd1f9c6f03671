use std::sync::Arc;

use curvecx::curve_ops::{intersection_number, transversal_curve};
use curvecx::fixtures::{seed_curves, Fixture};
use curvecx::multicurve::as_generic_family;
use curvecx::surface::{build_standard_surface, SurfaceSignature};

#[test]
fn transversals_for_single_curves() {
    for (g, m, q) in [
        (1, 1, 0),
        (0, 4, 1),
        (0, 5, 1),
        (1, 0, 1),
        (1, 2, 0),
        (2, 1, 0),
        (0, 6, 0),
        (2, 0, 0),
        (1, 0, 0),
    ] {
        let t = Arc::new(build_standard_surface(SurfaceSignature::new(g, m, q)).unwrap());
        for a in seed_curves(&t, 8).iter().take(15) {
            let fam = as_generic_family(a).unwrap();
            let c = transversal_curve(&fam, 1).unwrap_or_else(|e| panic!("{:?} {:?}: {e}", (g, m, q), a.weights()));
            let i = intersection_number(&c, a).unwrap();
            assert!(i == 1 || i == 2);
        }
    }
}

#[test]
fn transversals_for_every_member_of_realized_families() {
    for (g, m, q) in [
        (1, 1, 0),
        (0, 4, 1),
        (0, 5, 1),
        (1, 0, 1),
        (2, 0, 0),
        (1, 1, 1),
        (0, 6, 1),
    ] {
        let fx = Fixture::new(SurfaceSignature::new(g, m, q)).unwrap();
        for fam in &fx.families {
            for i in 1..=fam.r() {
                let c = transversal_curve(fam, i).unwrap_or_else(|e| panic!("{:?} member {i}: {e}", (g, m, q)));
                for (j, a) in fam.components().iter().enumerate() {
                    let x = intersection_number(&c, a).unwrap();
                    if j + 1 == i {
                        assert!(x == 1 || x == 2);
                    } else {
                        assert_eq!(x, 0);
                    }
                }
            }
        }
    }
}
