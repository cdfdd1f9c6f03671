use std::sync::Arc;

use curvecx::curve_ops::{dehn_twist, intersection_number};
use curvecx::fixtures::seed_curves;
use curvecx::surface::{build_standard_surface, SurfaceSignature};

#[test]
fn twist_identity_on_seeds() {
    for (g, m, q) in [
        (1, 1, 0),
        (0, 4, 1),
        (0, 5, 1),
        (1, 0, 1),
        (1, 2, 0),
        (2, 1, 0),
        (0, 6, 0),
    ] {
        let t = Arc::new(build_standard_surface(SurfaceSignature::new(g, m, q)).unwrap());
        let seeds = seed_curves(&t, 8);
        let seeds: Vec<_> = seeds.into_iter().take(12).collect();
        for a in &seeds {
            for b in &seeds {
                let i = intersection_number(a, b).unwrap();
                assert_eq!(i, intersection_number(b, a).unwrap());
                for n in [-2i64, -1, 1, 3] {
                    let tb = dehn_twist(a, n, b).unwrap();
                    let lhs = intersection_number(&tb, b).unwrap();
                    assert_eq!(
                        lhs,
                        n.unsigned_abs() * i * i,
                        "{:?} {:?} n={n}",
                        a.weights(),
                        b.weights()
                    );
                    assert_eq!(dehn_twist(a, -n, &tb).unwrap(), *b);
                }
            }
        }
    }
}
