mod common;

use curvecx::cut::cut_along;
use curvecx::surface::{build_standard_surface, signature_of, SurfaceSignature};
use proptest::prelude::*;

#[test]
fn euler_characteristic_of_standard_surfaces() {
    for g in 0..=3 {
        for m in 0..=5 {
            for q in 0..=3 {
                let sig = SurfaceSignature::new(g, m, q);
                let Ok(t) = build_standard_surface(sig) else { continue };
                assert_eq!(t.euler_characteristic(), 2 - 2 * g as i64 - q as i64, "{sig}");
                assert_eq!(signature_of(&t).unwrap(), sig);
            }
        }
    }
}

#[test]
fn aliases_parse() {
    assert_eq!(
        "g2".parse::<SurfaceSignature>().unwrap(),
        SurfaceSignature::new(2, 0, 0)
    );
    assert_eq!(
        "t1".parse::<SurfaceSignature>().unwrap(),
        SurfaceSignature::new(1, 1, 0)
    );
    assert_eq!(
        "d5b1".parse::<SurfaceSignature>().unwrap(),
        SurfaceSignature::new(0, 5, 1)
    );
    assert_eq!(
        "d4".parse::<SurfaceSignature>().unwrap(),
        SurfaceSignature::new(0, 4, 1)
    );
    let sig = SurfaceSignature::new(1, 2, 3);
    assert_eq!(sig.alias().parse::<SurfaceSignature>().unwrap(), sig);
    assert!("x3".parse::<SurfaceSignature>().is_err());
    assert!("g".parse::<SurfaceSignature>().is_err());
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn cutting_preserves_euler_characteristic_and_counts_boundaries(
        f in 0usize..6, k in 0usize..64, letters in common::letters(3),
    ) {
        let fx = &common::all()[f];
        let fam = &fx.families[k % fx.families.len()];
        let c = common::act(fx, &letters, &fam.union());
        let cut = cut_along(&c).unwrap();
        let chi: i64 = cut.pieces.iter().map(|p| p.signature.euler_characteristic()).sum();
        prop_assert_eq!(chi, fx.signature.euler_characteristic());
        let b: u32 = cut.pieces.iter().map(|p| p.signature.boundary).sum();
        prop_assert_eq!(b, fx.signature.boundary + 2 * fam.r() as u32);
        let p: u32 = cut.pieces.iter().map(|p| p.signature.punctures).sum();
        prop_assert_eq!(p, fx.signature.punctures);
        let again = cut_along(&c).unwrap();
        prop_assert_eq!(format!("{:?}", cut.pieces), format!("{:?}", again.pieces));
    }
}
