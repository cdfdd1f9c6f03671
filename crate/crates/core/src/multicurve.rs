//! Normal coordinates, tracing, and genericity.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cut::{cut_along, CutResult, Provenance};
use crate::error::{Error, Result};
use crate::spine::{self, Budget, Walk};
use crate::surface::{Side, Triangulation};

/// An isotopy class of (unoriented) multicurve, as edge weights on a fixed
/// triangulation.
#[derive(Debug, Clone)]
pub struct NormalCoordinates {
    surface: Arc<Triangulation>,
    weights: Vec<u64>,
}

impl PartialEq for NormalCoordinates {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && same_surface(&self.surface, &other.surface)
    }
}

impl Eq for NormalCoordinates {}

pub(crate) fn same_surface(a: &Arc<Triangulation>, b: &Arc<Triangulation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Corner arc counts of one triangle: `c[k]` arcs cut off corner `k`.
pub(crate) fn corner_counts(w: [u64; 3]) -> [u64; 3] {
    [
        (w[2] + w[0] - w[1]) / 2,
        (w[0] + w[1] - w[2]) / 2,
        (w[1] + w[2] - w[0]) / 2,
    ]
}

/// Checks parity and the triangle inequalities and wraps the weights.
pub fn validate(t: &Arc<Triangulation>, weights: Vec<u64>) -> Result<NormalCoordinates> {
    if weights.len() != t.num_edges() {
        return Err(Error::WeightCount {
            expected: t.num_edges(),
            got: weights.len(),
        });
    }
    for tri in 0..t.num_triangles() {
        let e = |k: u8| t.edge(Side::new(tri as u32, k));
        let w = [weights[e(0)], weights[e(1)], weights[e(2)]];
        if (w[0] + w[1] + w[2]) % 2 != 0 {
            return Err(Error::ParityViolation { triangle: tri });
        }
        for k in 0..3 {
            if w[k] > w[(k + 1) % 3] + w[(k + 2) % 3] {
                return Err(Error::TriangleInequalityViolation {
                    triangle: tri,
                    edge: e(k as u8),
                });
            }
        }
    }
    Ok(NormalCoordinates {
        surface: t.clone(),
        weights,
    })
}

impl NormalCoordinates {
    pub fn empty(t: &Arc<Triangulation>) -> Self {
        Self {
            surface: t.clone(),
            weights: vec![0; t.num_edges()],
        }
    }

    /// Coordinates of a simple closed walk. The caller guarantees
    /// simplicity; use [`NormalCoordinates::from_simple_walk`] to check it.
    pub(crate) fn from_walk_unchecked(t: &Arc<Triangulation>, w: &[Side]) -> Self {
        Self {
            surface: t.clone(),
            weights: spine::edge_counts(t, w),
        }
    }

    /// Coordinates of a closed walk, provided its reduced form is a simple
    /// closed curve. Returns `None` for null-homotopic or non-simple walks.
    pub fn from_simple_walk(t: &Arc<Triangulation>, w: &[Side]) -> Option<Self> {
        if !spine::is_closed_walk(t, w) {
            return None;
        }
        let r = spine::reduce(t, w);
        if r.is_empty() {
            return None;
        }
        let c = validate(t, spine::edge_counts(t, &r)).ok()?;
        let traced = trace(&c);
        if traced.components.len() != 1 {
            return None;
        }
        let key = spine::canonical_rotation(t, &r);
        (spine::canonical_rotation(t, &traced.components[0].walk) == key).then_some(c)
    }

    pub fn surface(&self) -> &Arc<Triangulation> {
        &self.surface
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub(crate) fn side_weight(&self, s: Side) -> u64 {
        self.weights[self.surface.edge(s)]
    }

    pub(crate) fn triangle_weights(&self, tri: usize) -> [u64; 3] {
        [0u8, 1, 2].map(|k| self.side_weight(Side::new(tri as u32, k)))
    }

    /// Weights of the disjoint union with `other`. The caller is
    /// responsible for disjointness.
    pub fn union(&self, other: &NormalCoordinates) -> Result<NormalCoordinates> {
        if !same_surface(&self.surface, &other.surface) {
            return Err(Error::SurfaceMismatch);
        }
        let w = self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect();
        validate(&self.surface, w)
    }

    /// Splits into single-curve coordinates, one per traced component.
    pub fn components(&self) -> Vec<NormalCoordinates> {
        trace(self)
            .components
            .iter()
            .map(|c| NormalCoordinates::from_walk_unchecked(&self.surface, &c.walk))
            .collect()
    }
}

/// Traversal of one normal arc: triangle, the corner it cuts off, its layer
/// counted from the corner vertex, and whether it runs from side `corner-1`
/// to side `corner` (the corner vertex is then on its right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcStep {
    pub tri: usize,
    pub corner: usize,
    pub layer: u64,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedComponent {
    /// Exit sides, in order. `walk[i]` leaves the triangle of `arcs[i]`.
    pub walk: Walk,
    pub arcs: Vec<ArcStep>,
    /// Edge crossings `(edge, position along the canonical side)`,
    /// `strands[i]` being where `walk[i]` crosses.
    pub strands: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedMulticurve {
    pub components: Vec<TracedComponent>,
}

impl TracedMulticurve {
    pub fn strand_counts(&self, num_edges: usize) -> Vec<u64> {
        let mut c = vec![0u64; num_edges];
        for comp in &self.components {
            for &(e, _) in &comp.strands {
                c[e] += 1;
            }
        }
        c
    }
}

/// Resolves the corner arcs into closed components. Deterministic: starts
/// from the lowest unvisited strand in (edge, position) order.
pub fn trace(c: &NormalCoordinates) -> TracedMulticurve {
    let t = &*c.surface;
    let mut visited: Vec<Vec<bool>> = c.weights.iter().map(|&w| vec![false; w as usize]).collect();
    let mut components = Vec::new();
    for e in 0..t.num_edges() {
        for p in 0..c.weights[e] {
            if visited[e][p as usize] {
                continue;
            }
            let (start_side, _) = t.edge_sides(e);
            let start = (start_side, p);
            let (mut side, mut pos) = start;
            let mut comp = TracedComponent {
                walk: Vec::new(),
                arcs: Vec::new(),
                strands: Vec::new(),
            };
            loop {
                let tri = side.tri as usize;
                let w = c.triangle_weights(tri);
                let cc = corner_counts(w);
                let k = side.k as usize;
                let (exit_k, exit_pos, arc) = if pos < cc[k] {
                    let out = (k + 2) % 3;
                    (
                        out,
                        w[out] - 1 - pos,
                        ArcStep {
                            tri,
                            corner: k,
                            layer: pos,
                            forward: false,
                        },
                    )
                } else {
                    let layer = w[k] - 1 - pos;
                    let out = (k + 1) % 3;
                    (
                        out,
                        layer,
                        ArcStep {
                            tri,
                            corner: out,
                            layer,
                            forward: true,
                        },
                    )
                };
                let exit = Side::new(tri as u32, exit_k as u8);
                let edge = t.edge(exit);
                let we = c.weights[edge];
                let global = if t.is_canonical(exit) {
                    exit_pos
                } else {
                    we - 1 - exit_pos
                };
                visited[edge][global as usize] = true;
                comp.walk.push(exit);
                comp.arcs.push(arc);
                comp.strands.push((edge, global));
                side = t.partner(exit);
                pos = we - 1 - exit_pos;
                if (side, pos) == start {
                    break;
                }
            }
            components.push(comp);
        }
    }
    TracedMulticurve { components }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentClass {
    Trivial,
    PuncturePeripheral,
    BoundaryParallel,
    Generic,
}

/// Classifies a single curve by the pieces it cuts off.
pub fn classify_component(c: &NormalCoordinates) -> Result<ComponentClass> {
    let traced = trace(c);
    if traced.components.len() != 1 {
        return Err(Error::MultipleComponents(traced.components.len()));
    }
    let cut = cut_along(c)?;
    Ok(classify_in_cut(&cut, 0))
}

/// Classification of traced component `i` read off the pieces of a cut.
pub(crate) fn classify_in_cut(cut: &CutResult, i: usize) -> ComponentClass {
    for piece in &cut.pieces {
        let sides: Vec<_> = piece
            .provenance
            .iter()
            .filter(|p| matches!(p, Provenance::CurveSide(j, _) if *j == i))
            .collect();
        if sides.len() != 1 || piece.signature.genus != 0 {
            continue;
        }
        let b = piece.signature.boundary;
        let p = piece.signature.punctures;
        if b == 1 && p == 0 {
            return ComponentClass::Trivial;
        }
        if b == 1 && p == 1 {
            return ComponentClass::PuncturePeripheral;
        }
        if b == 2 && p == 0 && piece.provenance.iter().any(|q| matches!(q, Provenance::Exterior(_))) {
            return ComponentClass::BoundaryParallel;
        }
    }
    ComponentClass::Generic
}

/// Validated generic multicurve: components ordered lexicographically by
/// weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericFamily {
    surface: Arc<Triangulation>,
    components: Vec<NormalCoordinates>,
}

impl GenericFamily {
    pub fn empty(t: &Arc<Triangulation>) -> Self {
        Self {
            surface: t.clone(),
            components: Vec::new(),
        }
    }

    pub fn surface(&self) -> &Arc<Triangulation> {
        &self.surface
    }

    pub fn components(&self) -> &[NormalCoordinates] {
        &self.components
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn union(&self) -> NormalCoordinates {
        let mut w = vec![0u64; self.surface.num_edges()];
        for c in &self.components {
            for (x, y) in w.iter_mut().zip(c.weights()) {
                *x += y;
            }
        }
        NormalCoordinates {
            surface: self.surface.clone(),
            weights: w,
        }
    }

    /// The sub-family on the given component indices (0-based).
    pub fn face(&self, keep: &[usize]) -> GenericFamily {
        let mut components: Vec<_> = keep.iter().map(|&i| self.components[i].clone()).collect();
        components.sort_by(|a, b| a.weights.cmp(&b.weights));
        components.dedup();
        GenericFamily {
            surface: self.surface.clone(),
            components,
        }
    }

    /// Index of the component equal to `c`, if any.
    pub fn position(&self, c: &NormalCoordinates) -> Option<usize> {
        self.components.iter().position(|x| x == c)
    }

    /// Rebuilds from components already known to form a generic family.
    pub(crate) fn from_parts_unchecked(t: &Arc<Triangulation>, mut components: Vec<NormalCoordinates>) -> Self {
        components.sort_by(|a, b| a.weights.cmp(&b.weights));
        Self {
            surface: t.clone(),
            components,
        }
    }
}

/// Splits a multicurve into a generic family, rejecting non-generic or
/// mutually isotopic components. Error indices are 1-based, in traced order.
pub fn as_generic_family(c: &NormalCoordinates) -> Result<GenericFamily> {
    let t = c.surface.clone();
    let traced = trace(c);
    let comps: Vec<NormalCoordinates> = traced
        .components
        .iter()
        .map(|tc| NormalCoordinates::from_walk_unchecked(&t, &tc.walk))
        .collect();
    for (i, comp) in comps.iter().enumerate() {
        let cut = cut_along(comp)?;
        let class = classify_in_cut(&cut, 0);
        if class != ComponentClass::Generic {
            return Err(Error::NonGenericComponent(i + 1, class));
        }
    }
    if comps.len() > 1 {
        let cut = cut_along(c)?;
        if let Some((i, j)) = parallel_pair(&cut) {
            return Err(Error::IsotopicPair(i + 1, j + 1));
        }
    }
    Ok(GenericFamily::from_parts_unchecked(&t, comps))
}

/// Two distinct traced components cobounding an annulus with no punctures.
pub(crate) fn parallel_pair(cut: &CutResult) -> Option<(usize, usize)> {
    for piece in &cut.pieces {
        let s = piece.signature;
        if s.genus != 0 || s.punctures != 0 || s.boundary != 2 {
            continue;
        }
        let ids: Vec<usize> = piece
            .provenance
            .iter()
            .filter_map(|p| {
                if let Provenance::CurveSide(i, _) = p {
                    Some(*i)
                } else {
                    None
                }
            })
            .collect();
        if ids.len() == 2 && ids[0] != ids[1] {
            return Some((ids[0].min(ids[1]), ids[0].max(ids[1])));
        }
    }
    None
}

/// Equality of isotopy classes.
///
/// On surfaces with a puncture or boundary circle this is equality of
/// coordinates. With a ghost vertex, components that differ only by sliding
/// across the ghost are also identified when they can be drawn disjointly.
pub fn canonical_eq(a: &NormalCoordinates, b: &NormalCoordinates) -> Result<bool> {
    if !same_surface(&a.surface, &b.surface) {
        return Err(Error::SurfaceMismatch);
    }
    if a.weights == b.weights {
        return Ok(true);
    }
    if !a.surface.has_ghost() {
        return Ok(false);
    }
    let ca = a.components();
    let mut cb = b.components();
    if ca.len() != cb.len() {
        return Ok(false);
    }
    let mut budget = Budget::default();
    'outer: for x in &ca {
        for (k, y) in cb.iter().enumerate() {
            if ghost_parallel(x, y, &mut budget)? {
                cb.remove(k);
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

fn ghost_parallel(x: &NormalCoordinates, y: &NormalCoordinates, budget: &mut Budget) -> Result<bool> {
    if x.weights == y.weights {
        return Ok(true);
    }
    let t = &x.surface;
    let (wx, wy) = (&trace(x).components[0].walk, &trace(y).components[0].walk);
    if spine::intersection(t, wx, wy, budget)? != 0 {
        return Ok(false);
    }
    let u = x.union(y)?;
    let cut = cut_along(&u)?;
    Ok(parallel_pair(&cut).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, SurfaceSignature};

    fn torus() -> Arc<Triangulation> {
        Arc::new(build_standard_surface(SurfaceSignature::new(1, 0, 0)).unwrap())
    }

    #[test]
    fn validation_examples() {
        let t = torus();
        assert!(validate(&t, vec![1, 0, 1]).is_ok());
        assert!(validate(&t, vec![0, 0, 0]).is_ok());
        assert!(matches!(
            validate(&t, vec![1, 0, 0]),
            Err(Error::ParityViolation { .. })
        ));
        assert!(matches!(
            validate(&t, vec![4, 0, 2]),
            Err(Error::TriangleInequalityViolation { .. })
        ));
        assert!(matches!(validate(&t, vec![1, 0]), Err(Error::WeightCount { .. })));
    }

    #[test]
    fn trace_examples() {
        let t = torus();
        assert_eq!(trace(&validate(&t, vec![1, 0, 1]).unwrap()).components.len(), 1);
        assert_eq!(trace(&validate(&t, vec![2, 0, 2]).unwrap()).components.len(), 2);
        assert_eq!(trace(&validate(&t, vec![0, 0, 0]).unwrap()).components.len(), 0);
        let c = validate(&t, vec![3, 2, 5]).unwrap();
        let tr = trace(&c);
        assert_eq!(tr.strand_counts(3), vec![3, 2, 5]);
    }

    #[test]
    fn traced_walks_are_reduced() {
        let t = torus();
        for w in [[1u64, 0, 1], [1, 1, 0], [0, 1, 1], [3, 2, 5], [2, 1, 1]] {
            let c = validate(&t, w.to_vec()).unwrap();
            for comp in trace(&c).components {
                assert!(spine::is_reduced(&t, &comp.walk));
                assert!(spine::is_closed_walk(&t, &comp.walk));
            }
        }
    }

    #[test]
    fn torus_family_examples() {
        let t = torus();
        assert_eq!(as_generic_family(&validate(&t, vec![1, 0, 1]).unwrap()).unwrap().r(), 1);
        assert_eq!(
            as_generic_family(&validate(&t, vec![2, 0, 2]).unwrap()).unwrap_err(),
            Error::IsotopicPair(1, 2)
        );
        assert_eq!(as_generic_family(&NormalCoordinates::empty(&t)).unwrap().r(), 0);
    }

    #[test]
    fn canonical_eq_examples() {
        let t = torus();
        let a = validate(&t, vec![1, 0, 1]).unwrap();
        let b = validate(&t, vec![1, 1, 0]).unwrap();
        assert!(canonical_eq(&a, &a).unwrap());
        assert!(!canonical_eq(&a, &b).unwrap());
        let other = Arc::new(build_standard_surface(SurfaceSignature::new(1, 1, 0)).unwrap());
        let c = validate(&other, vec![1, 0, 1]).unwrap();
        assert_eq!(canonical_eq(&a, &c), Err(Error::SurfaceMismatch));
    }

    #[test]
    fn simple_walk_round_trip() {
        let t = torus();
        let c = validate(&t, vec![1, 0, 1]).unwrap();
        let w = trace(&c).components[0].walk.clone();
        assert_eq!(NormalCoordinates::from_simple_walk(&t, &w), Some(c.clone()));
        let doubled: Vec<_> = w.iter().chain(&w).copied().collect();
        assert_eq!(NormalCoordinates::from_simple_walk(&t, &doubled), None);
    }
}
