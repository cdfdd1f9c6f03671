#![allow(dead_code)]

use std::sync::OnceLock;

use curvecx::curve_ops::{apply_word, TwistWord};
use curvecx::fixtures::{Fixture, ANCHORED};
use curvecx::multicurve::NormalCoordinates;
use curvecx::surface::SurfaceSignature;
use proptest::prelude::*;

/// Seeds used as twist curves; the smallest ones keep weights modest.
pub const TWIST_SEEDS: usize = 8;

pub fn anchored() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| ANCHORED.iter().map(|&s| Fixture::new(s).unwrap()).collect())
}

/// Anchored fixtures followed by the closed genus-two surface and the torus.
pub fn all() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        let mut v = anchored().to_vec();
        v.push(Fixture::new(SurfaceSignature::new(2, 0, 0)).unwrap());
        v.push(Fixture::new(SurfaceSignature::new(1, 0, 0)).unwrap());
        v
    })
}

/// Letters as (seed index, nonzero power); indices are reduced modulo the
/// available seeds.
pub fn letters(max_len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..TWIST_SEEDS, prop_oneof![-2i64..=-1, 1i64..=2]), 0..=max_len)
}

pub fn word(fx: &Fixture, letters: &[(usize, i64)]) -> TwistWord {
    let k = fx.seeds.len().min(TWIST_SEEDS);
    TwistWord::new(letters.iter().map(|&(i, n)| (fx.seeds[i % k].clone(), n)).collect()).unwrap()
}

pub fn act(fx: &Fixture, letters: &[(usize, i64)], c: &NormalCoordinates) -> NormalCoordinates {
    apply_word(&word(fx, letters), c).unwrap()
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
