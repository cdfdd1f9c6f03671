//! Curves built inside the pieces of a cut: transversals, disjoint
//! realizations and extra components for pantalon decompositions.
//!
//! Candidates are drawn as paths in the region graph of a piece (regions
//! glued along edge segments, never across arcs) and read off as walks.
//! Every candidate is re-checked before it is returned.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::curve_ops::intersection_number_with_budget;
use crate::cut::{cut_along, CutResult, Provenance};
use crate::error::{Error, Result};
use crate::multicurve::{as_generic_family, classify_component, ComponentClass, GenericFamily, NormalCoordinates};
use crate::spine::{self, Budget, Walk};
use crate::surface::{Side, Triangulation, VertexKind};

pub(crate) struct RegionGraph {
    adj: Vec<Vec<(usize, Side)>>,
}

impl RegionGraph {
    pub(crate) fn new(t: &Triangulation, cut: &CutResult) -> Self {
        let regions = &cut.regions;
        let mut adj = vec![Vec::new(); regions.len()];
        for tri in 0..t.num_triangles() {
            for k in 0..3u8 {
                let s = Side::new(tri as u32, k);
                let p = t.partner(s);
                let w = regions.side_weight(s);
                for sigma in 0..=w {
                    adj[regions.segment(s, sigma)].push((regions.segment(p, w - sigma), s));
                }
            }
        }
        Self { adj }
    }

    /// Breadth-first tree from `src`: parent region and the side crossed.
    pub(crate) fn bfs(&self, src: usize) -> Vec<Option<(usize, Side)>> {
        let mut parent = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &(v, s) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, s));
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// Sides crossed along the tree path from the root to `dst`, or `None`
    /// when `dst` is unreachable.
    pub(crate) fn path(parent: &[Option<(usize, Side)>], root: usize, dst: usize) -> Option<Vec<Side>> {
        let mut out = Vec::new();
        let mut cur = dst;
        while cur != root {
            let (p, s) = parent[cur]?;
            out.push(s);
            cur = p;
        }
        out.reverse();
        Some(out)
    }
}

/// A closed loop in a piece, entered at `region`.
#[derive(Debug, Clone)]
pub(crate) struct Obstacle {
    pub region: usize,
    pub loop_walk: Walk,
}

/// Loops around the punctures, exterior boundaries and curve copies of a
/// piece, followed by non-trivial fundamental cycles of its region graph.
pub(crate) fn obstacles(
    t: &Arc<Triangulation>,
    cut: &CutResult,
    graph: &RegionGraph,
    piece: usize,
    skip: Option<Provenance>,
    max_cycles: usize,
) -> Vec<Obstacle> {
    let mut out = Vec::new();
    for &v in &cut.pieces[piece].vertices {
        if t.vertex_kind(v) == VertexKind::Ghost {
            continue;
        }
        if let VertexKind::Boundary(l) = t.vertex_kind(v) {
            if skip == Some(Provenance::Exterior(l)) {
                continue;
            }
        }
        let link = t.vertex_link(v);
        let (t0, k0) = link[0];
        let loop_walk = link
            .iter()
            .map(|&(tri, k)| Side::new(tri as u32, ((k + 2) % 3) as u8))
            .collect();
        out.push(Obstacle {
            region: cut.vertex_region(t0, k0),
            loop_walk,
        });
    }
    for &p in &cut.pieces[piece].provenance {
        if let Provenance::CurveSide(j, s) = p {
            if Some(p) == skip {
                continue;
            }
            out.push(Obstacle {
                region: cut.arc_side_region(j, 0, s),
                loop_walk: cut.traced.components[j].walk.clone(),
            });
        }
    }
    let Some(root) = (0..cut.piece_of.len()).find(|&r| cut.piece_of[r] == piece) else {
        return out;
    };
    let parent = graph.bfs(root);
    let mut cycles = 0;
    let mut seen_keys = std::collections::BTreeSet::new();
    'edges: for u in 0..graph.adj.len() {
        if cut.piece_of[u] != piece {
            continue;
        }
        for &(v, s) in &graph.adj[u] {
            if cycles >= max_cycles {
                break 'edges;
            }
            if parent[v] == Some((u, s)) || parent[u].map(|(pu, ps)| pu == v && t.partner(ps) == s).unwrap_or(false) {
                continue;
            }
            let (Some(a), Some(b)) = (RegionGraph::path(&parent, root, u), RegionGraph::path(&parent, root, v)) else {
                continue;
            };
            let mut w = a;
            w.push(s);
            w.extend(spine::reverse(t, &b));
            let r = spine::reduce(t, &w);
            if r.is_empty() {
                continue;
            }
            let key = spine::canonical_rotation(t, &r);
            if !seen_keys.insert(key) {
                continue;
            }
            // loops around the ghost alone are trivial in the surface
            match NormalCoordinates::from_simple_walk(t, &r) {
                Some(c)
                    if classify_component(&c)
                        .map(|x| x != ComponentClass::Trivial)
                        .unwrap_or(false) => {}
                _ => continue,
            }
            cycles += 1;
            out.push(Obstacle {
                region: root,
                loop_walk: w,
            });
        }
    }
    out
}

fn lasso(t: &Triangulation, stem: &[Side], loop_walk: &[Side]) -> Walk {
    let mut w = stem.to_vec();
    w.extend_from_slice(loop_walk);
    w.extend(spine::reverse(t, stem));
    w
}

/// A simple curve with the class of a closed walk, if there is one.
fn realize(t: &Arc<Triangulation>, w: &[Side]) -> Option<NormalCoordinates> {
    if !spine::is_closed_walk(t, w) {
        return None;
    }
    NormalCoordinates::from_simple_walk(t, &spine::reduce(t, w))
}

fn check_transversal(fam: &GenericFamily, i: usize, c: &NormalCoordinates, budget: &mut Budget) -> Result<bool> {
    if classify_component(c)? != ComponentClass::Generic {
        return Ok(false);
    }
    for (j, a) in fam.components().iter().enumerate() {
        let x = intersection_number_with_budget(c, a, budget)?;
        let ok = if j == i { x == 1 || x == 2 } else { x == 0 };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A generic curve meeting member `i` (1-based) once or twice and missing the
/// other members.
pub fn transversal_curve(fam: &GenericFamily, i: usize) -> Result<NormalCoordinates> {
    transversal_curve_with_budget(fam, i, &mut Budget::default())
}

pub fn transversal_curve_with_budget(fam: &GenericFamily, i: usize, budget: &mut Budget) -> Result<NormalCoordinates> {
    if i == 0 || i > fam.r() {
        return Err(Error::IndexOutOfRange { index: i, len: fam.r() });
    }
    let idx = i - 1;
    let t = fam.surface().clone();
    let union = fam.union();
    let cut = cut_along(&union)?;
    // the traced order of the union may differ from the family order
    let comp = (0..cut.traced.components.len())
        .find(|&k| NormalCoordinates::from_walk_unchecked(&t, &cut.traced.components[k].walk) == fam.components()[idx])
        .ok_or_else(|| Error::Internal("family member missing from its union".into()))?;
    let graph = RegionGraph::new(&t, &cut);
    let arcs = cut.traced.components[comp].arcs.len();
    let left = cut.piece_of_side(comp, 0);
    let right = cut.piece_of_side(comp, 1);
    if left == right {
        for x in 0..arcs.min(4) {
            let l = cut.arc_side_region(comp, x, 0);
            let r = cut.arc_side_region(comp, x, 1);
            let parent = graph.bfs(l);
            let Some(path) = RegionGraph::path(&parent, l, r) else {
                continue;
            };
            budget.spend(path.len() as u64 + 1)?;
            if let Some(c) = realize(&t, &path) {
                if check_transversal(fam, idx, &c, budget)? {
                    return Ok(c);
                }
            }
        }
        return Err(Error::NoTransversal(i));
    }
    let o1 = obstacles(&t, &cut, &graph, left, Some(Provenance::CurveSide(comp, 0)), 32);
    let o2 = obstacles(&t, &cut, &graph, right, Some(Provenance::CurveSide(comp, 1)), 32);
    for x in 0..arcs.min(2) {
        let l = cut.arc_side_region(comp, x, 0);
        let r = cut.arc_side_region(comp, x, 1);
        let pl = graph.bfs(l);
        let pr = graph.bfs(r);
        for a in &o1 {
            let Some(s1) = RegionGraph::path(&pl, l, a.region) else {
                continue;
            };
            let lasso1 = lasso(&t, &s1, &a.loop_walk);
            for b in &o2 {
                let Some(s2) = RegionGraph::path(&pr, r, b.region) else {
                    continue;
                };
                let mut w = lasso1.clone();
                w.extend(lasso(&t, &s2, &b.loop_walk));
                budget.spend(w.len() as u64)?;
                if let Some(c) = realize(&t, &w) {
                    if check_transversal(fam, idx, &c, budget)? {
                        return Ok(c);
                    }
                }
            }
        }
    }
    Err(Error::NoTransversal(i))
}

/// The union of the family with `b`, once `b` is known to miss every member.
pub fn realize_disjoint(fam: &GenericFamily, b: &NormalCoordinates) -> Result<NormalCoordinates> {
    let mut budget = Budget::default();
    for (i, a) in fam.components().iter().enumerate() {
        if intersection_number_with_budget(a, b, &mut budget)? > 0 {
            return Err(Error::NotDisjoint(i + 1));
        }
    }
    fam.union().union(b)
}

/// A curve inside a non-pantalon piece of the cut along `fam` that extends
/// the family, or `None` when every piece is a pantalon.
pub fn extend_family(fam: &GenericFamily, budget: &mut Budget) -> Result<Option<GenericFamily>> {
    Ok(family_extensions(fam, 1, budget)?.into_iter().next())
}

/// Up to `limit` distinct one-curve extensions of `fam`, drawn from every
/// non-pantalon piece in turn.
pub fn family_extensions(fam: &GenericFamily, limit: usize, budget: &mut Budget) -> Result<Vec<GenericFamily>> {
    let t = fam.surface().clone();
    let union = fam.union();
    let cut = cut_along(&union)?;
    let graph = RegionGraph::new(&t, &cut);
    let mut out: Vec<GenericFamily> = Vec::new();
    let mut added: Vec<NormalCoordinates> = Vec::new();
    for (p, piece) in cut.pieces.iter().enumerate() {
        let s = piece.signature;
        if s.genus == 0 && s.punctures + s.boundary == 3 {
            continue;
        }
        let obs = obstacles(&t, &cut, &graph, p, None, 64);
        let mut candidates: Vec<Walk> = Vec::new();
        for (x, a) in obs.iter().enumerate() {
            let parent = graph.bfs(a.region);
            for b in &obs[x + 1..] {
                let Some(stem) = RegionGraph::path(&parent, a.region, b.region) else {
                    continue;
                };
                for rev in [false, true] {
                    let lb = if rev {
                        spine::reverse(&t, &b.loop_walk)
                    } else {
                        b.loop_walk.clone()
                    };
                    let mut w = a.loop_walk.clone();
                    w.extend(lasso(&t, &stem, &lb));
                    candidates.push(w);
                }
            }
            candidates.push(a.loop_walk.clone());
        }
        for w in candidates {
            budget.spend(w.len() as u64)?;
            let Some(c) = realize(&t, &w) else { continue };
            if fam.position(&c).is_some() || added.contains(&c) {
                continue;
            }
            let Ok(merged) = union.union(&c) else { continue };
            if let Ok(next) = as_generic_family(&merged) {
                if next.r() == fam.r() + 1 && next.components().iter().all(|x| *x == c || fam.position(x).is_some()) {
                    added.push(c);
                    out.push(next);
                    if out.len() >= limit {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}
