//! Decorated dual graphs of cut surfaces and their canonical codes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cut::{cut_along, Provenance};
use crate::error::{Error, Result};
use crate::multicurve::{canonical_eq, same_surface, GenericFamily};
use crate::surface::{signature_of, SurfaceSignature};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub genus: u32,
    pub punctures: u32,
    /// Exterior boundary labels carried by the piece, sorted.
    pub labels: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitType {
    pub nodes: Vec<Node>,
    /// One edge per curve; `(u, u)` is a self-loop.
    pub edges: Vec<(usize, usize)>,
    pub ambient: SurfaceSignature,
}

/// Minimal serialization over all relabelings of nodes and edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl OrbitType {
    pub fn r(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn loops(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Signature of the piece at node `v`, counting every attached curve
    /// side as a boundary circle.
    pub fn node_signature(&self, v: usize) -> SurfaceSignature {
        let n = &self.nodes[v];
        SurfaceSignature::new(n.genus, n.punctures, (self.degree(v) + n.labels.len()) as u32)
    }

    /// Checks connectivity, the genus, puncture and label totals, and the
    /// genericity exclusions.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let nv = self.nodes.len();
        if nv == 0 {
            return Err("no nodes".into());
        }
        for &(a, b) in &self.edges {
            if a >= nv || b >= nv {
                return Err(format!("edge ({a}, {b}) out of range"));
            }
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err("disconnected".into());
        }
        let genus: i64 =
            self.nodes.iter().map(|n| n.genus as i64).sum::<i64>() + self.edges.len() as i64 - nv as i64 + 1;
        if genus != self.ambient.genus as i64 {
            return Err(format!("genus {genus} differs from ambient {}", self.ambient.genus));
        }
        let punctures: u32 = self.nodes.iter().map(|n| n.punctures).sum();
        if punctures != self.ambient.punctures {
            return Err(format!("{punctures} punctures, ambient has {}", self.ambient.punctures));
        }
        let mut labels: Vec<u32> = self.nodes.iter().flat_map(|n| n.labels.iter().copied()).collect();
        labels.sort_unstable();
        if labels != (1..=self.ambient.boundary).collect::<Vec<_>>() {
            return Err("exterior labels do not partition the boundary".into());
        }
        for v in 0..nv {
            if let Some(why) = self.node_defect(v) {
                return Err(format!("node {v}: {why}"));
            }
        }
        Ok(())
    }

    pub fn node_is_generic(&self, v: usize) -> bool {
        self.node_defect(v).is_none()
    }

    fn node_defect(&self, v: usize) -> Option<&'static str> {
        let s = self.node_signature(v);
        if self.edges.is_empty() {
            return None;
        }
        if s.genus == 0 && s.punctures <= 1 && s.boundary <= 1 {
            return Some("disc with at most one puncture");
        }
        if s.genus == 0 && s.punctures == 0 && s.boundary == 2 && self.loops(v) != 1 {
            return Some("annulus between distinct curves or a boundary");
        }
        None
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Canon<'a> {
    ot: &'a OrbitType,
    adj: Vec<Vec<usize>>,
    best: Vec<u8>,
    scratch: Vec<u8>,
    /// Colourings reaching the best code so far; together they give every
    /// automorphism.
    leaves: Option<Vec<Vec<u32>>>,
}

impl Canon<'_> {
    /// Splits colour classes by the multiset of neighbour colours until
    /// stable. Colours stay ranks `0..classes`.
    fn refine(&self, colour: &mut [u32]) {
        let n = colour.len();
        let mut classes = count_classes(colour);
        let mut keyed: Vec<(u32, u64, usize)> = Vec::with_capacity(n);
        loop {
            keyed.clear();
            for v in 0..n {
                let h = self.adj[v]
                    .iter()
                    .fold(0u64, |acc, &u| acc.wrapping_add(mix(colour[u] as u64)));
                keyed.push((colour[v], h, v));
            }
            keyed.sort_unstable();
            let mut rank = 0u32;
            for i in 0..n {
                if i > 0 && (keyed[i].0, keyed[i].1) != (keyed[i - 1].0, keyed[i - 1].1) {
                    rank += 1;
                }
                colour[keyed[i].2] = rank;
            }
            let c = rank as usize + 1;
            if c == classes {
                return;
            }
            classes = c;
        }
    }

    fn write_code(&mut self, colour: &[u32]) {
        let n = colour.len();
        let mut order = vec![0usize; n];
        for v in 0..n {
            order[colour[v] as usize] = v;
        }
        let out = &mut self.scratch;
        out.clear();
        out.push(n as u8);
        for &v in &order {
            let node = &self.ot.nodes[v];
            out.push(node.genus as u8);
            out.push(node.punctures as u8);
            out.push(node.labels.len() as u8);
            out.extend(node.labels.iter().map(|&l| l as u8));
        }
        let mut edges: Vec<(u8, u8)> = self
            .ot
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (colour[a] as u8, colour[b] as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        out.push(edges.len() as u8);
        for (a, b) in edges {
            out.push(a);
            out.push(b);
        }
    }

    fn search(&mut self, mut colour: Vec<u32>) {
        self.refine(&mut colour);
        let n = colour.len();
        let mut size = vec![0usize; n];
        for &c in &colour {
            size[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.write_code(&colour);
            let better = self.best.is_empty() || self.scratch < self.best;
            if better {
                std::mem::swap(&mut self.best, &mut self.scratch);
            }
            if let Some(leaves) = self.leaves.as_mut() {
                if better {
                    leaves.clear();
                }
                if better || self.scratch == self.best {
                    leaves.push(colour);
                }
            }
            return;
        };
        for v in 0..n {
            if colour[v] as usize != target {
                continue;
            }
            // individualize v: it keeps the class colour, the rest of the
            // class moves one up
            let next: Vec<u32> = (0..n)
                .map(|u| {
                    if colour[u] > target as u32 || (colour[u] == target as u32 && u != v) {
                        colour[u] + 1
                    } else {
                        colour[u]
                    }
                })
                .collect();
            self.search(next);
        }
    }
}

fn count_classes(c: &[u32]) -> usize {
    c.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn run_search(ot: &OrbitType, keep_leaves: bool) -> (CanonicalCode, Vec<Vec<u32>>) {
    let n = ot.nodes.len();
    assert!(n < 256 && ot.edges.len() < 256, "orbit type too large to encode");
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &ot.edges {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let keys: Vec<(&Node, usize, usize)> = (0..n).map(|v| (&ot.nodes[v], ot.degree(v), ot.loops(v))).collect();
    let base = rank_keys(&keys);
    let mut canon = Canon {
        ot,
        adj,
        best: Vec::new(),
        scratch: Vec::new(),
        leaves: keep_leaves.then(Vec::new),
    };
    canon.search(base);
    let mut code = vec![
        ot.ambient.genus as u8,
        ot.ambient.punctures as u8,
        ot.ambient.boundary as u8,
    ];
    code.extend(canon.best);
    (CanonicalCode(code), canon.leaves.unwrap_or_default())
}

/// Canonical code: invariant under relabeling nodes and edges, sensitive to
/// exterior labels.
pub fn canonicalize(ot: &OrbitType) -> CanonicalCode {
    run_search(ot, false).0
}

/// Node permutations preserving the decorated graph, as `perm[v]`.
pub fn node_automorphisms(ot: &OrbitType) -> Vec<Vec<usize>> {
    let (_, leaves) = run_search(ot, true);
    let n = ot.nodes.len();
    let first = &leaves[0];
    leaves
        .iter()
        .map(|c| {
            let mut at = vec![0usize; n];
            for u in 0..n {
                at[c[u] as usize] = u;
            }
            (0..n).map(|v| at[first[v] as usize]).collect()
        })
        .collect()
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Automorphisms of the decorated multigraph with exterior labels fixed:
/// node permutations, permutations of parallel edges, and loop reversals.
pub fn graph_automorphism_count(ot: &OrbitType) -> u128 {
    canonicalize_with_automorphisms(ot).1
}

/// Canonical code and automorphism count from a single search.
pub fn canonicalize_with_automorphisms(ot: &OrbitType) -> (CanonicalCode, u128) {
    let (code, leaves) = run_search(ot, true);
    let nodes = leaves.len() as u128;
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &e in &ot.edges {
        *mult.entry(e).or_insert(0) += 1;
    }
    let mut edges = 1u128;
    for (&(a, b), &k) in &mult {
        edges *= factorial(k);
        if a == b {
            edges *= 1u128 << k;
        }
    }
    (code, nodes * edges)
}

/// The decorated dual graph of the cut along the family.
pub fn orbit_type_of(fam: &GenericFamily) -> Result<OrbitType> {
    let t = fam.surface();
    let ambient = signature_of(t)?;
    let cut = cut_along(&fam.union())?;
    let nodes = cut
        .pieces
        .iter()
        .map(|p| Node {
            genus: p.signature.genus,
            punctures: p.signature.punctures,
            labels: p
                .provenance
                .iter()
                .filter_map(|x| {
                    if let Provenance::Exterior(l) = x {
                        Some(*l)
                    } else {
                        None
                    }
                })
                .collect(),
        })
        .collect();
    let edges = (0..cut.traced.components.len())
        .map(|i| {
            let (a, b) = (cut.piece_of_side(i, 0), cut.piece_of_side(i, 1));
            (a.min(b), a.max(b))
        })
        .collect();
    let ot = OrbitType { nodes, edges, ambient };
    ot.validate()
        .map_err(|e| Error::Internal(format!("orbit type of a generic family: {e}")))?;
    Ok(ot)
}

pub fn same_orbit(f1: &GenericFamily, f2: &GenericFamily) -> Result<bool> {
    let (s1, s2) = (signature_of(f1.surface())?, signature_of(f2.surface())?);
    if s1 != s2 {
        return Err(Error::SurfaceMismatch);
    }
    if f1.r() != f2.r() {
        return Ok(false);
    }
    if f1.r() == 0 {
        return Ok(true);
    }
    Ok(canonicalize(&orbit_type_of(f1)?) == canonicalize(&orbit_type_of(f2)?))
}

/// Whether every component of `f1` matches a distinct component of `f2`.
pub fn is_face(f1: &GenericFamily, f2: &GenericFamily) -> Result<bool> {
    if !same_surface(f1.surface(), f2.surface()) {
        return Err(Error::SurfaceMismatch);
    }
    let mut used = vec![false; f2.r()];
    'outer: for a in f1.components() {
        for (j, b) in f2.components().iter().enumerate() {
            if !used[j] && canonical_eq(a, b)? {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Sizes of the classes of nodes with equal decoration, for reporting.
pub fn decoration_histogram(ot: &OrbitType) -> BTreeMap<SurfaceSignature, usize> {
    let mut out = BTreeMap::new();
    for v in 0..ot.nodes.len() {
        *out.entry(ot.node_signature(v)).or_insert(0) += 1;
    }
    out
}
