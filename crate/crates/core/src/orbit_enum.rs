//! Enumeration of orbit types, maximal ranks and pantalon decompositions.
//!
//! Types of rank `r` are produced from types of rank `r - 1` by splitting a
//! node, either along a nonseparating curve (genus drops, a self-loop is
//! added) or along a separating one (genus, punctures, labels and attached
//! curve sides are shared out between two nodes). Contracting any edge of a
//! generic type gives a generic type, so every type is reached.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::extend_family;
use crate::cut::cut_along;
use crate::error::{Error, Result};
use crate::multicurve::GenericFamily;
use crate::orbit_types::{canonicalize, node_automorphisms, CanonicalCode, Node, OrbitType};
use crate::spine::Budget;
use crate::surface::{signature_of, SurfaceSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PantalonKind {
    I,
    II,
    III,
    NotPantalon,
}

impl PantalonKind {
    /// Kind of a piece given as (genus, punctures, boundary circles).
    pub fn of(sig: SurfaceSignature) -> Self {
        match (sig.genus, sig.punctures, sig.boundary) {
            (0, 2, 1) => PantalonKind::I,
            (0, 1, 2) => PantalonKind::II,
            (0, 0, 3) => PantalonKind::III,
            _ => PantalonKind::NotPantalon,
        }
    }
}

pub fn max_rank(sig: SurfaceSignature) -> usize {
    if sig.is_example_1_or_2() {
        0
    } else if sig.is_torus_no_marks() {
        1
    } else {
        (3 * sig.genus as i64 + sig.punctures as i64 + sig.boundary as i64 - 3).max(0) as usize
    }
}

pub fn count_pantalons(sig: SurfaceSignature) -> Result<usize> {
    if !sig.admits_pantalon_decomposition() {
        return Err(Error::NoPantalonDecomposition(sig));
    }
    Ok(2 * sig.genus as usize + sig.punctures as usize + sig.boundary as usize - 2)
}

/// The type with nodes and edges in canonical order.
pub fn from_code(code: &CanonicalCode) -> OrbitType {
    let c = &code.0;
    let ambient = SurfaceSignature::new(c[0] as u32, c[1] as u32, c[2] as u32);
    let n = c[3] as usize;
    let mut i = 4;
    let mut nodes = Vec::with_capacity(n);
    for _ in 0..n {
        let (genus, punctures, nl) = (c[i] as u32, c[i + 1] as u32, c[i + 2] as usize);
        let labels = c[i + 3..i + 3 + nl].iter().map(|&l| l as u32).collect();
        i += 3 + nl;
        nodes.push(Node {
            genus,
            punctures,
            labels,
        });
    }
    let ne = c[i] as usize;
    i += 1;
    let edges = (0..ne)
        .map(|k| (c[i + 2 * k] as usize, c[i + 2 * k + 1] as usize))
        .collect();
    OrbitType { nodes, edges, ambient }
}

fn root_type(sig: SurfaceSignature) -> OrbitType {
    OrbitType {
        nodes: vec![Node {
            genus: sig.genus,
            punctures: sig.punctures,
            labels: (1..=sig.boundary).collect(),
        }],
        edges: Vec::new(),
        ambient: sig,
    }
}

/// Genericity of a piece on one side of a new separating curve. Such a
/// piece never carries a self-loop made of its own two new sides.
fn separated_piece_ok(genus: u32, punctures: u32, boundary: usize) -> bool {
    genus > 0 || (punctures + boundary as u32 >= 3 && boundary >= 1)
}

/// Every generic type one rank above `ot`, possibly with repeats.
pub fn splits(ot: &OrbitType) -> Vec<OrbitType> {
    let mut out = Vec::new();
    for x in 0..ot.nodes.len() {
        let node = &ot.nodes[x];
        if node.genus > 0 {
            let mut next = ot.clone();
            next.nodes[x].genus -= 1;
            next.edges.push((x, x));
            if next.node_is_generic(x) {
                out.push(next);
            }
        }
        let nl = node.labels.len();
        let y = ot.nodes.len();
        let b = ot.degree(x) + nl;
        // sides sharing out (genus, punctures, boundary) must both be generic
        let ok = |g1: u32, p1: u32, k: usize| {
            separated_piece_ok(g1, p1, k + 1) && separated_piece_ok(node.genus - g1, node.punctures - p1, b - k + 1)
        };
        let any = (0..=node.genus).any(|g1| (0..=node.punctures).any(|p1| (0..=b).any(|k| ok(g1, p1, k))));
        if !any {
            continue;
        }
        let halves: Vec<(usize, u8)> = ot
            .edges
            .iter()
            .enumerate()
            .flat_map(|(e, &(a, b))| {
                let mut h = Vec::new();
                if a == x {
                    h.push((e, 0u8));
                }
                if b == x {
                    h.push((e, 1u8));
                }
                h
            })
            .collect();
        for hmask in 0u64..(1u64 << halves.len()) {
            for lmask in 0u64..(1u64 << nl) {
                let k = (hmask.count_ones() + lmask.count_ones()) as usize;
                for g1 in 0..=node.genus {
                    for p1 in 0..=node.punctures {
                        if !ok(g1, p1, k) {
                            continue;
                        }
                        let mut next = ot.clone();
                        for (bit, &(e, end)) in halves.iter().enumerate() {
                            if hmask >> bit & 1 == 1 {
                                if end == 0 {
                                    next.edges[e].0 = y;
                                } else {
                                    next.edges[e].1 = y;
                                }
                            }
                        }
                        let (mut moved, mut kept) = (Vec::new(), Vec::new());
                        for (i, &l) in node.labels.iter().enumerate() {
                            if lmask >> i & 1 == 1 {
                                moved.push(l);
                            } else {
                                kept.push(l);
                            }
                        }
                        next.nodes[x] = Node {
                            genus: node.genus - g1,
                            punctures: node.punctures - p1,
                            labels: kept,
                        };
                        next.nodes.push(Node {
                            genus: g1,
                            punctures: p1,
                            labels: moved,
                        });
                        next.edges.push((x, y));
                        for e in next.edges.iter_mut() {
                            if e.0 > e.1 {
                                *e = (e.1, e.0);
                            }
                        }
                        out.push(next);
                    }
                }
            }
        }
    }
    out
}

fn next_layer(layer: &[CanonicalCode]) -> Vec<CanonicalCode> {
    let mut codes: Vec<CanonicalCode> = layer
        .par_iter()
        .flat_map_iter(|c| {
            let mut local: Vec<CanonicalCode> = splits(&from_code(c)).iter().map(canonicalize).collect();
            local.sort_unstable();
            local.dedup();
            local
        })
        .collect();
    codes.par_sort_unstable();
    codes.dedup();
    codes
}

#[derive(Clone, Copy)]
enum Leg {
    Puncture,
    Label(u32),
}

fn fresh_node(leg: Leg, punctures: u32, mut labels: Vec<u32>) -> Node {
    let mut n = Node {
        genus: 0,
        punctures,
        labels: Vec::new(),
    };
    match leg {
        Leg::Puncture => n.punctures += 1,
        Leg::Label(l) => labels.push(l),
    }
    labels.sort_unstable();
    n.labels = labels;
    n
}

fn grown(ot: &OrbitType, leg: Leg) -> OrbitType {
    let mut next = ot.clone();
    match leg {
        Leg::Puncture => next.ambient.punctures += 1,
        Leg::Label(_) => next.ambient.boundary += 1,
    }
    next
}

fn subdivide_edge(ot: &OrbitType, e: usize, leg: Leg) -> OrbitType {
    let w = ot.nodes.len();
    let (u, v) = ot.edges[e];
    let mut next = grown(ot, leg);
    next.nodes.push(fresh_node(leg, 0, Vec::new()));
    next.edges[e] = (u, w);
    next.edges.push((v, w));
    next
}

fn beside_puncture(ot: &OrbitType, u: usize, leg: Leg) -> OrbitType {
    let w = ot.nodes.len();
    let mut next = grown(ot, leg);
    next.nodes[u].punctures -= 1;
    next.nodes.push(fresh_node(leg, 1, Vec::new()));
    next.edges.push((u, w));
    next
}

fn beside_label(ot: &OrbitType, u: usize, i: usize, leg: Leg) -> OrbitType {
    let w = ot.nodes.len();
    let mut next = grown(ot, leg);
    let l = next.nodes[u].labels.remove(i);
    next.nodes.push(fresh_node(leg, 0, vec![l]));
    next.edges.push((u, w));
    next
}

/// Types obtained by putting a new pantalon carrying `leg` on an edge, or
/// next to an existing puncture or label.
fn add_leg(ot: &OrbitType, leg: Leg) -> Vec<OrbitType> {
    let mut out: Vec<OrbitType> = (0..ot.edges.len()).map(|e| subdivide_edge(ot, e, leg)).collect();
    for u in 0..ot.nodes.len() {
        if ot.nodes[u].punctures > 0 {
            out.push(beside_puncture(ot, u, leg));
        }
        for i in 0..ot.nodes[u].labels.len() {
            out.push(beside_label(ot, u, i, leg));
        }
    }
    out
}

fn single_node(sig: SurfaceSignature, loops: usize) -> OrbitType {
    let mut ot = root_type(sig);
    ot.nodes[0].genus -= loops as u32;
    ot.edges = vec![(0, 0); loops];
    ot
}

/// Maximal-rank types, built by adding punctures and then labels one at a
/// time to the smallest surfaces of each genus. Every node is a pantalon.
fn maximal_codes(sig: SurfaceSignature) -> Vec<CanonicalCode> {
    let (g, m, q) = (sig.genus, sig.punctures, sig.boundary);
    if 2 * g as i64 - 2 + m as i64 + q as i64 <= 0 {
        return Vec::new();
    }
    let base = match g {
        0 => m + q == 3,
        1 => m + q == 1,
        _ => m + q == 0,
    };
    if base {
        return match g {
            0 => vec![canonicalize(&root_type(sig))],
            1 => vec![canonicalize(&single_node(sig, 1))],
            _ => enumerate_layers_upto(sig, max_rank(sig)).pop().unwrap_or_default(),
        };
    }
    let (smaller, leg) = if q > 0 {
        (SurfaceSignature::new(g, m, q - 1), Leg::Label(q))
    } else {
        (SurfaceSignature::new(g, m - 1, q), Leg::Puncture)
    };
    let prev = maximal_codes(smaller);
    let mut codes: Vec<CanonicalCode> = prev
        .par_iter()
        .flat_map_iter(|c| add_leg(&from_code(c), leg).iter().map(canonicalize).collect::<Vec<_>>())
        .collect();
    codes.par_sort_unstable();
    codes.dedup();
    codes
}

fn is_base(sig: SurfaceSignature) -> bool {
    let legs = sig.punctures + sig.boundary;
    match sig.genus {
        0 => legs == 3,
        1 => legs == 1,
        _ => legs == 0,
    }
}

/// One child per orbit of attachment slots under the automorphisms of
/// `parent`, each carrying the new label `label`.
fn label_children(parent: &OrbitType, label: u32) -> Vec<OrbitType> {
    let autos = node_automorphisms(parent);
    let mut edge_reps = std::collections::BTreeSet::new();
    let mut node_reps = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (e, &(u, v)) in parent.edges.iter().enumerate() {
        let rep = autos
            .iter()
            .map(|p| (p[u].min(p[v]), p[u].max(p[v])))
            .min()
            .unwrap_or((u.min(v), u.max(v)));
        if edge_reps.insert(rep) {
            out.push(subdivide_edge(parent, e, Leg::Label(label)));
        }
    }
    for u in 0..parent.nodes.len() {
        if parent.nodes[u].punctures > 0 {
            let rep = autos.iter().map(|p| p[u]).min().unwrap_or(u);
            if node_reps.insert(rep) {
                out.push(beside_puncture(parent, u, Leg::Label(label)));
            }
        }
        for i in 0..parent.nodes[u].labels.len() {
            out.push(beside_label(parent, u, i, Leg::Label(label)));
        }
    }
    out
}

/// Calls `f` once for every maximal-rank type, without storing them. Types
/// with exterior labels are streamed from their parents with the last label
/// forgotten, which determines the parent uniquely.
pub fn visit_maximal(sig: SurfaceSignature, f: &mut dyn FnMut(&OrbitType)) {
    if 2 * sig.genus as i64 - 2 + sig.punctures as i64 + sig.boundary as i64 <= 0 {
        return;
    }
    if sig.boundary == 0 || is_base(sig) {
        for c in maximal_codes(sig) {
            f(&from_code(&c));
        }
        return;
    }
    let smaller = SurfaceSignature::new(sig.genus, sig.punctures, sig.boundary - 1);
    visit_maximal(smaller, &mut |parent| {
        for child in label_children(parent, sig.boundary) {
            f(&child);
        }
    });
}

/// Canonical codes of every rank, from the whole surface at rank 0 up to
/// the last non-empty rank.
pub fn enumerate_layers(sig: SurfaceSignature) -> Vec<Vec<CanonicalCode>> {
    enumerate_layers_upto(sig, usize::MAX)
}

fn enumerate_layers_upto(sig: SurfaceSignature, r: usize) -> Vec<Vec<CanonicalCode>> {
    let mut layers = vec![vec![canonicalize(&root_type(sig))]];
    while layers.len() <= r {
        let next = next_layer(layers.last().unwrap());
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    layers
}

/// All orbit types with exactly `r` curves, sorted by canonical code.
pub fn enumerate_orbits(sig: SurfaceSignature, r: usize) -> Vec<OrbitType> {
    enumerate_codes(sig, r).iter().map(from_code).collect()
}

/// Canonical codes of the types with exactly `r` curves, sorted. Ranks at
/// and above the pantalon rank start from the directly built maximal layer.
pub fn enumerate_codes(sig: SurfaceSignature, r: usize) -> Vec<CanonicalCode> {
    if r == 0 {
        return Vec::new();
    }
    let mr = max_rank(sig);
    if sig.admits_pantalon_decomposition() && r >= mr {
        let mut layer = maximal_codes(sig);
        for _ in mr..r {
            layer = next_layer(&layer);
        }
        return layer;
    }
    enumerate_layers_upto(sig, r).get(r).cloned().unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalogue {
    pub signature: SurfaceSignature,
    /// `per_rank[k]` lists the types with `k + 1` curves.
    pub per_rank: Vec<Vec<(CanonicalCode, OrbitType)>>,
    pub total: usize,
    pub max_rank: usize,
}

impl Catalogue {
    pub fn counts(&self) -> Vec<usize> {
        self.per_rank.iter().map(|l| l.len()).collect()
    }

    pub fn codes(&self) -> BTreeMap<CanonicalCode, usize> {
        self.per_rank
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.iter().map(move |(c, _)| (c.clone(), k + 1)))
            .collect()
    }
}

/// Orbit types for every rank `1..=max_rank`. The total is also the number
/// of pairwise inequivalent quasi-regular representations.
pub fn catalogue(sig: SurfaceSignature) -> Catalogue {
    let mr = max_rank(sig);
    let layers = enumerate_layers_upto(sig, mr);
    let mut per_rank: Vec<Vec<(CanonicalCode, OrbitType)>> = layers
        .into_iter()
        .skip(1)
        .map(|l| {
            l.into_iter()
                .map(|c| {
                    let o = from_code(&c);
                    (c, o)
                })
                .collect()
        })
        .collect();
    per_rank.resize(mr, Vec::new());
    let total = per_rank.iter().map(|l| l.len()).sum();
    Catalogue {
        signature: sig,
        per_rank,
        total,
        max_rank: mr,
    }
}

/// Extends the family, one curve at a time, until every piece of its cut is
/// a pantalon.
pub fn complete_to_pantalon_decomposition(fam: &GenericFamily) -> Result<GenericFamily> {
    complete_with_budget(fam, &mut Budget::default())
}

pub fn complete_with_budget(fam: &GenericFamily, budget: &mut Budget) -> Result<GenericFamily> {
    let sig = signature_of(fam.surface())?;
    if !sig.admits_pantalon_decomposition() {
        return Err(Error::NoPantalonDecomposition(sig));
    }
    let target = max_rank(sig);
    let mut cur = fam.clone();
    while cur.r() < target {
        cur = extend_family(&cur, budget)?
            .ok_or_else(|| Error::Internal(format!("no extension found at rank {}", cur.r())))?;
    }
    let cut = cut_along(&cur.union())?;
    if cut
        .pieces
        .iter()
        .any(|p| PantalonKind::of(p.signature) == PantalonKind::NotPantalon)
    {
        return Err(Error::Internal("completed family has a non-pantalon piece".into()));
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u32, m: u32, q: u32) -> SurfaceSignature {
        SurfaceSignature::new(g, m, q)
    }

    #[test]
    fn small_counts() {
        assert_eq!(catalogue(sig(2, 0, 0)).counts(), vec![2, 2, 2]);
        assert_eq!(catalogue(sig(1, 0, 0)).counts(), vec![1]);
        assert_eq!(catalogue(sig(0, 3, 0)).total, 0);
        for m in 3..8 {
            assert_eq!(enumerate_orbits(sig(0, m, 1), 1).len(), m as usize - 2);
        }
    }

    #[test]
    fn formulas() {
        assert_eq!(max_rank(sig(2, 0, 0)), 3);
        assert_eq!(max_rank(sig(0, 2, 0)), 0);
        assert_eq!(max_rank(sig(1, 0, 0)), 1);
        assert_eq!(count_pantalons(sig(2, 0, 0)), Ok(2));
        assert_eq!(count_pantalons(sig(0, 4, 1)), Ok(3));
        assert_eq!(count_pantalons(sig(1, 1, 0)), Ok(1));
        assert!(count_pantalons(sig(1, 0, 0)).is_err());
    }

    #[test]
    fn maximal_layer_agrees_with_splitting() {
        for g in 0..=2 {
            for m in 0..=3 {
                for q in 0..=2 {
                    let s = sig(g, m, q);
                    if !s.admits_pantalon_decomposition() {
                        continue;
                    }
                    let layers = enumerate_layers(s);
                    assert_eq!(layers.len() - 1, max_rank(s), "{s}");
                    assert_eq!(maximal_codes(s), *layers.last().unwrap(), "{s}");
                }
            }
        }
    }

    #[test]
    fn streamed_maximal_types_match_codes() {
        for g in 0..=2 {
            for m in 0..=3 {
                for q in 0..=3 {
                    let s = sig(g, m, q);
                    let mut seen = Vec::new();
                    visit_maximal(s, &mut |ot| {
                        assert!(ot.validate().is_ok());
                        seen.push(canonicalize(ot));
                    });
                    let n = seen.len();
                    seen.sort();
                    seen.dedup();
                    assert_eq!(seen.len(), n, "{s}: repeated type");
                    assert_eq!(seen, maximal_codes(s), "{s}");
                }
            }
        }
    }

    #[test]
    fn codes_round_trip() {
        for c in enumerate_layers(sig(1, 2, 1)).into_iter().flatten() {
            assert_eq!(canonicalize(&from_code(&c)), c);
        }
    }
}
