//! Small supplies of curves on the standard surfaces.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::construct::family_extensions;
use crate::error::{Error, Result};
use crate::multicurve::{as_generic_family, classify_component, ComponentClass, GenericFamily, NormalCoordinates};
use crate::orbit_types::{canonicalize, orbit_type_of, CanonicalCode};
use crate::spine::{self, Budget};
use crate::surface::{build_standard_surface, Side, SurfaceSignature, Triangulation};

/// Simple closed curves whose walks have at most `max_len` steps, generic
/// ones only, ordered by total weight and then by weights.
pub fn seed_curves(t: &Arc<Triangulation>, max_len: usize) -> Vec<NormalCoordinates> {
    let mut seen: BTreeSet<(u64, Vec<u64>)> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Side> = Vec::new();
    for tri in 0..t.num_triangles() {
        for k in 0..3u8 {
            stack.clear();
            stack.push(Side::new(tri as u32, k));
            extend(t, max_len, &mut stack, &mut seen, &mut out);
        }
    }
    out.sort_by(|a: &NormalCoordinates, b| (a.total_weight(), a.weights()).cmp(&(b.total_weight(), b.weights())));
    out
}

fn extend(
    t: &Arc<Triangulation>,
    max_len: usize,
    stack: &mut Vec<Side>,
    seen: &mut BTreeSet<(u64, Vec<u64>)>,
    out: &mut Vec<NormalCoordinates>,
) {
    let first = stack[0];
    let last = *stack.last().unwrap();
    let enter = t.partner(last);
    if enter.tri == first.tri && enter != first && spine::is_reduced(t, stack) {
        let counts = spine::edge_counts(t, stack);
        let key = (counts.iter().sum::<u64>(), counts);
        if !seen.contains(&key) {
            if let Some(c) = NormalCoordinates::from_simple_walk(t, stack) {
                if c.weights() == key.1.as_slice() && classify_component(&c) == Ok(ComponentClass::Generic) {
                    out.push(c);
                }
            }
            seen.insert(key);
        }
    }
    if stack.len() == max_len {
        return;
    }
    for d in 1..3u8 {
        let next = Side::new(enter.tri, (enter.k + d) % 3);
        // only walks starting at their least side are explored
        if next < first {
            continue;
        }
        stack.push(next);
        extend(t, max_len, stack, seen, out);
        stack.pop();
    }
}

/// One family per orbit type reached by growing seed curves one component
/// at a time, for ranks `1..=max_r`.
pub fn realized_families(
    t: &Arc<Triangulation>,
    max_r: usize,
    budget: &mut Budget,
) -> Result<Vec<BTreeMap<CanonicalCode, GenericFamily>>> {
    let mut layers: Vec<BTreeMap<CanonicalCode, GenericFamily>> = Vec::new();
    let mut first = BTreeMap::new();
    for c in seed_curves(t, 8) {
        let fam = as_generic_family(&c)?;
        let code = canonicalize(&orbit_type_of(&fam)?);
        first.entry(code).or_insert(fam);
    }
    layers.push(first);
    while layers.len() < max_r {
        let mut next = BTreeMap::new();
        for fam in layers.last().unwrap().values() {
            for ext in family_extensions(fam, 24, budget)? {
                let code = canonicalize(&orbit_type_of(&ext)?);
                next.entry(code).or_insert(ext);
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    // faces of larger families reach types the seeds miss
    for r in (1..layers.len()).rev() {
        let mut found = Vec::new();
        for fam in layers[r].values() {
            for drop in 0..fam.r() {
                let keep: Vec<usize> = (0..fam.r()).filter(|&i| i != drop).collect();
                let face = fam.face(&keep);
                found.push((canonicalize(&orbit_type_of(&face)?), face));
            }
        }
        for (code, face) in found {
            layers[r - 1].entry(code).or_insert(face);
        }
    }
    Ok(layers)
}

/// A family on `t` with the given orbit type, if the growth search finds one.
pub fn realize_type(t: &Arc<Triangulation>, code: &CanonicalCode, r: usize) -> Result<Option<GenericFamily>> {
    let layers = realized_families(t, r, &mut Budget::default())?;
    Ok(layers.get(r.wrapping_sub(1)).and_then(|l| l.get(code).cloned()))
}

/// Surfaces with a puncture or boundary circle used for sampling.
pub const ANCHORED: [SurfaceSignature; 4] = [
    SurfaceSignature::new(1, 1, 0),
    SurfaceSignature::new(0, 4, 1),
    SurfaceSignature::new(0, 5, 1),
    SurfaceSignature::new(1, 0, 1),
];

/// A standard surface with its seed curves and one realized family per
/// orbit type reached by the growth search.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub signature: SurfaceSignature,
    pub surface: Arc<Triangulation>,
    pub seeds: Vec<NormalCoordinates>,
    pub families: Vec<GenericFamily>,
}

impl Fixture {
    pub fn new(sig: SurfaceSignature) -> Result<Self> {
        let surface = Arc::new(build_standard_surface(sig)?);
        let seeds = seed_curves(&surface, 8);
        let max_r = crate::orbit_enum::max_rank(sig);
        let families = realized_families(&surface, max_r, &mut Budget::default())?
            .into_iter()
            .flat_map(|l| l.into_values())
            .collect();
        Ok(Fixture {
            signature: sig,
            surface,
            seeds,
            families,
        })
    }
}

/// Named curves on the closed genus-two surface: `a1`, `a2`, `a3` are
/// nonseparating and cut it into two pantalons, `a4` separates and misses
/// `a1`.
#[derive(Debug, Clone)]
pub struct GenusTwo {
    pub surface: Arc<Triangulation>,
    pub a1: NormalCoordinates,
    pub a2: NormalCoordinates,
    pub a3: NormalCoordinates,
    pub a4: NormalCoordinates,
}

pub fn genus_two() -> Result<GenusTwo> {
    let t = Arc::new(build_standard_surface(SurfaceSignature::new(2, 0, 0))?);
    let mut budget = Budget::default();
    let layers = realized_families(&t, 3, &mut budget)?;
    // three nonseparating curves: two nodes joined by three edges
    let theta = layers[2]
        .values()
        .find(|f| {
            let ot = orbit_type_of(f).unwrap();
            ot.nodes.len() == 2 && ot.edges.iter().all(|&(a, b)| a != b)
        })
        .ok_or_else(|| Error::Internal("no theta decomposition found".into()))?;
    let [a1, a2, a3]: [NormalCoordinates; 3] = theta.components().to_vec().try_into().unwrap();
    let single = as_generic_family(&a1)?;
    let a4 = family_extensions(&single, 64, &mut budget)?
        .into_iter()
        .map(|f| f.components().iter().find(|c| **c != a1).unwrap().clone())
        .find(|c| {
            let f = as_generic_family(c).unwrap();
            orbit_type_of(&f).unwrap().nodes.len() == 2
        })
        .ok_or_else(|| Error::Internal("no separating curve found".into()))?;
    Ok(GenusTwo {
        surface: t,
        a1,
        a2,
        a3,
        a4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, SurfaceSignature};

    #[test]
    fn torus_seeds() {
        let t = Arc::new(build_standard_surface(SurfaceSignature::new(1, 1, 0)).unwrap());
        let seeds = seed_curves(&t, 4);
        assert!(seeds.len() >= 3);
        assert!(seeds.iter().all(|c| c.total_weight() <= 4));
    }

    #[test]
    fn genus_two_curves() {
        let g = genus_two().unwrap();
        let fam = as_generic_family(&g.a1.union(&g.a2).unwrap().union(&g.a3).unwrap()).unwrap();
        assert_eq!(fam.r(), 3);
        let sep = orbit_type_of(&as_generic_family(&g.a4).unwrap()).unwrap();
        assert_eq!(sep.nodes.len(), 2);
        assert_eq!(crate::curve_ops::intersection_number(&g.a1, &g.a4).unwrap(), 0);
    }
}
