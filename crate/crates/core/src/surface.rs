//! Combinatorial surfaces.
//!
//! A surface `M` of genus `g` with `m` punctures and `q` boundary circles is
//! stored as a triangulation of the closed genus-`g` surface whose vertices are
//! all marked: a puncture vertex is a point of `P`, a boundary vertex stands
//! for a boundary circle of `M` collapsed to a point, and a ghost vertex is an
//! auxiliary point added only where the triangulation needs more vertices than
//! `m + q`. Every triangle side is glued to exactly one other side, so the
//! dual graph is a trivalent ribbon graph onto which the surface minus its
//! vertices retracts. All curve computations happen on that spine.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(genus, punctures, boundary circles)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl SurfaceSignature {
    pub const fn new(genus: u32, punctures: u32, boundary: u32) -> Self {
        Self {
            genus,
            punctures,
            boundary,
        }
    }

    /// Euler characteristic of the compact surface `M` (punctures ignored).
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// The signatures with an empty curve complex: finite and abelian
    /// mapping class groups.
    pub fn is_example_1_or_2(&self) -> bool {
        let (g, m, q) = (self.genus, self.punctures, self.boundary);
        g == 0
            && match q {
                0 => m <= 3,
                1 => m <= 2,
                2 => m <= 1,
                3 => m == 0,
                _ => false,
            }
    }

    pub fn is_torus_no_marks(&self) -> bool {
        *self == SurfaceSignature::new(1, 0, 0)
    }

    /// Pantalon decompositions exist exactly off the empty-complex list and
    /// the unmarked torus.
    pub fn admits_pantalon_decomposition(&self) -> bool {
        !self.is_example_1_or_2() && !self.is_torus_no_marks()
    }

    /// Canonical short name, e.g. `g2p0b0`.
    pub fn alias(&self) -> String {
        format!("g{}p{}b{}", self.genus, self.punctures, self.boundary)
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.genus, self.punctures, self.boundary)
    }
}

/// Parses aliases such as `g2`, `t1` (torus, one puncture), `d5` (disc, five
/// punctures), `d5b2`, `g1p2b1`. Tokens: `g<genus>`, `p<punctures>`,
/// `b<boundary>`, `t<punctures>` (genus one), `d<punctures>` (genus zero, one
/// boundary circle unless a `b` token follows).
impl FromStr for SurfaceSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCoordinates(format!("unrecognised surface alias `{s}`"));
        let bytes = s.as_bytes();
        let mut i = 0;
        let (mut g, mut p, mut b) = (None, None, None);
        let mut disc = false;
        while i < bytes.len() {
            let tag = bytes[i];
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(bad());
            }
            let n: u32 = s[start..i].parse().map_err(|_| bad())?;
            let slot = match tag {
                b'g' => &mut g,
                b'p' | b'm' => &mut p,
                b'b' | b'q' => &mut b,
                b't' => {
                    if g.replace(1).is_some() {
                        return Err(bad());
                    }
                    &mut p
                }
                b'd' => {
                    disc = true;
                    if g.replace(0).is_some() {
                        return Err(bad());
                    }
                    &mut p
                }
                _ => return Err(bad()),
            };
            if slot.replace(n).is_some() {
                return Err(bad());
            }
        }
        if g.is_none() && p.is_none() && b.is_none() {
            return Err(bad());
        }
        let boundary = b.unwrap_or(if disc { 1 } else { 0 });
        Ok(SurfaceSignature::new(g.unwrap_or(0), p.unwrap_or(0), boundary))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    Puncture,
    /// A boundary circle of `M`, carrying its fixed label in `1..=q`.
    Boundary(u32),
    Ghost,
}

/// A side of a triangle: side `k` runs from corner `k` to corner `k + 1`
/// (counter-clockwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub tri: u32,
    pub k: u8,
}

impl Side {
    pub const fn new(tri: u32, k: u8) -> Self {
        Self { tri, k }
    }

    pub fn next(self) -> Side {
        Side::new(self.tri, (self.k + 1) % 3)
    }

    pub fn prev(self) -> Side {
        Side::new(self.tri, (self.k + 2) % 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    glue: Vec<[Side; 3]>,
    corners: Vec<[u32; 3]>,
    kinds: Vec<VertexKind>,
    edge_of: Vec<[u32; 3]>,
    edges: Vec<(Side, Side)>,
}

impl Triangulation {
    /// Builds a triangulation from a side-gluing table, the vertex label of
    /// every corner, and the kind of every vertex label.
    pub fn new(glue: Vec<[Side; 3]>, corners: Vec<[u32; 3]>, kinds: Vec<VertexKind>) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedTriangulation(m));
        let f = glue.len();
        if f == 0 {
            return bad("no triangles".into());
        }
        if corners.len() != f {
            return bad("corner table length differs from triangle count".into());
        }
        for (t, sides) in glue.iter().enumerate() {
            for (k, s) in sides.iter().enumerate() {
                if s.tri as usize >= f || s.k > 2 {
                    return bad(format!("side ({t},{k}) glued out of range"));
                }
                if (s.tri as usize, s.k as usize) == (t, k) {
                    return bad(format!("side ({t},{k}) glued to itself"));
                }
                let back = glue[s.tri as usize][s.k as usize];
                if back != Side::new(t as u32, k as u8) {
                    return bad(format!("gluing of side ({t},{k}) is not an involution"));
                }
            }
        }
        // Gluing side k (v_k -> v_{k+1}) to side k' reversed identifies
        // v_k with v'_{k'+1} and v_{k+1} with v'_{k'}.
        for (t, sides) in glue.iter().enumerate() {
            for (k, s) in sides.iter().enumerate() {
                let a = corners[t][k];
                let b = corners[t][(k + 1) % 3];
                let a2 = corners[s.tri as usize][(s.k as usize + 1) % 3];
                let b2 = corners[s.tri as usize][s.k as usize];
                if a != a2 || b != b2 {
                    return bad(format!("corner labels disagree across side ({t},{k})"));
                }
            }
        }
        let nv = kinds.len();
        let mut seen = vec![false; nv];
        for c in corners.iter().flatten() {
            if *c as usize >= nv {
                return bad(format!("corner vertex {c} has no kind"));
            }
            seen[*c as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return bad("vertex kind listed for a vertex with no corner".into());
        }
        // Distinct labels must be distinct vertices: walk the corner cycle
        // of every vertex and check it exhausts all corners with that label.
        let mut visited = vec![[false; 3]; f];
        let mut cycles_per_label = vec![0usize; nv];
        for t in 0..f {
            for k in 0..3 {
                if visited[t][k] {
                    continue;
                }
                cycles_per_label[corners[t][k] as usize] += 1;
                let (mut ct, mut ck) = (t, k);
                loop {
                    visited[ct][ck] = true;
                    // corner k sits between side k-1 (incoming) and side k.
                    let s = glue[ct][ck];
                    // partner side s runs v'_{s.k} -> v'_{s.k+1} and our
                    // vertex is its end, the corner s.k + 1.
                    ct = s.tri as usize;
                    ck = (s.k as usize + 1) % 3;
                    if (ct, ck) == (t, k) {
                        break;
                    }
                }
            }
        }
        if let Some(v) = cycles_per_label.iter().position(|&c| c != 1) {
            return bad(format!("vertex label {v} does not form a single vertex"));
        }
        let mut labels: Vec<u32> = kinds
            .iter()
            .filter_map(|k| {
                if let VertexKind::Boundary(l) = k {
                    Some(*l)
                } else {
                    None
                }
            })
            .collect();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
            return bad("boundary labels must be exactly 1..=q".into());
        }
        let ghosts = kinds.iter().filter(|k| **k == VertexKind::Ghost).count();
        if ghosts > 0 {
            let marked = nv - ghosts;
            let positive_genus = euler_closed(f, nv) <= 0;
            if (positive_genus && (marked >= 1 || ghosts > 1)) || (!positive_genus && marked >= 3) {
                return bad("ghost vertices on a surface that does not need them".into());
            }
        }
        // connectivity over the dual graph
        let mut reach = vec![false; f];
        let mut stack = vec![0usize];
        reach[0] = true;
        while let Some(t) = stack.pop() {
            for s in &glue[t] {
                if !reach[s.tri as usize] {
                    reach[s.tri as usize] = true;
                    stack.push(s.tri as usize);
                }
            }
        }
        if reach.iter().any(|r| !r) {
            return bad("triangulation is not connected".into());
        }
        let mut edge_of = vec![[u32::MAX; 3]; f];
        let mut edges = Vec::with_capacity(3 * f / 2);
        for t in 0..f {
            for k in 0..3 {
                if edge_of[t][k] == u32::MAX {
                    let e = edges.len() as u32;
                    let p = glue[t][k];
                    edge_of[t][k] = e;
                    edge_of[p.tri as usize][p.k as usize] = e;
                    edges.push((Side::new(t as u32, k as u8), p));
                }
            }
        }
        Ok(Self {
            glue,
            corners,
            kinds,
            edge_of,
            edges,
        })
    }

    pub fn num_triangles(&self) -> usize {
        self.glue.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn partner(&self, s: Side) -> Side {
        self.glue[s.tri as usize][s.k as usize]
    }

    pub fn edge(&self, s: Side) -> usize {
        self.edge_of[s.tri as usize][s.k as usize] as usize
    }

    /// The two sides of an edge; the first is the canonical side, along
    /// which strand positions on the edge are counted.
    pub fn edge_sides(&self, e: usize) -> (Side, Side) {
        self.edges[e]
    }

    pub fn is_canonical(&self, s: Side) -> bool {
        self.edges[self.edge(s)].0 == s
    }

    /// Vertex at corner `k` of triangle `t` (the start of side `k`).
    pub fn corner(&self, t: usize, k: usize) -> usize {
        self.corners[t][k] as usize
    }

    pub fn vertex_kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn vertex_kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn gluing(&self) -> &[[Side; 3]] {
        &self.glue
    }

    pub fn corner_table(&self) -> &[[u32; 3]] {
        &self.corners
    }

    pub fn has_ghost(&self) -> bool {
        self.kinds.contains(&VertexKind::Ghost)
    }

    /// `V - E + F` of the closed triangulated surface.
    pub fn closed_euler_characteristic(&self) -> i64 {
        euler_closed(self.num_triangles(), self.num_vertices())
    }

    /// Euler characteristic of `M`: every boundary vertex is a removed disc.
    pub fn euler_characteristic(&self) -> i64 {
        self.closed_euler_characteristic() - self.boundary_count() as i64
    }

    pub fn boundary_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| matches!(k, VertexKind::Boundary(_)))
            .count()
    }

    pub fn puncture_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == VertexKind::Puncture).count()
    }

    /// The vertex carrying boundary label `label`.
    pub fn boundary_vertex(&self, label: u32) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VertexKind::Boundary(label))
    }

    /// The corners around vertex `v` in counter-clockwise order, as
    /// `(triangle, corner)` pairs.
    pub fn vertex_link(&self, v: usize) -> Vec<(usize, usize)> {
        let Some((t0, k0)) = (0..self.num_triangles())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| self.corner(t, k) == v)
        else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let (mut t, mut k) = (t0, k0);
        loop {
            out.push((t, k));
            // leave corner k through side k-1 (it ends at v), landing in the
            // partner triangle whose side starts at v.
            let s = self.partner(Side::new(t as u32, ((k + 2) % 3) as u8));
            t = s.tri as usize;
            k = s.k as usize;
            if (t, k) == (t0, k0) {
                break;
            }
        }
        out
    }
}

fn euler_closed(f: usize, v: usize) -> i64 {
    // 3F = 2E for closed triangulations
    v as i64 - (3 * f / 2) as i64 + f as i64
}

/// Deterministic triangulation realising `sig`.
///
/// Genus `g >= 1` starts from the one-vertex fan triangulation of the
/// `4g`-gon `a1 b1 a1^-1 b1^-1 ...`; genus zero starts from two triangles
/// glued along their boundary. Further vertices come from stellar
/// subdivision. Vertex kinds are assigned in order: punctures, boundary
/// circles `1..=q`, then ghosts padding the vertex count.
pub fn build_standard_surface(sig: SurfaceSignature) -> Result<Triangulation> {
    if sig.genus > 64 || sig.punctures > 256 || sig.boundary > 256 {
        return Err(Error::UnsupportedSignature(sig));
    }
    let marked = (sig.punctures + sig.boundary) as usize;
    let (mut glue, mut corners, base_vertices) = if sig.genus == 0 {
        sphere_base()
    } else {
        polygon_base(sig.genus as usize)
    };
    let total = marked.max(base_vertices);
    let mut next_vertex = base_vertices as u32;
    let mut target = 0usize;
    while (next_vertex as usize) < total {
        let f = glue.len();
        stellar(&mut glue, &mut corners, target % f, next_vertex);
        next_vertex += 1;
        target += 3;
    }
    let mut kinds = Vec::with_capacity(total);
    kinds.extend(std::iter::repeat(VertexKind::Puncture).take(sig.punctures as usize));
    kinds.extend((1..=sig.boundary).map(VertexKind::Boundary));
    kinds.resize(total, VertexKind::Ghost);
    let t = Triangulation::new(glue, corners, kinds)?;
    debug_assert_eq!(signature_of(&t).ok(), Some(sig));
    Ok(t)
}

fn sphere_base() -> (Vec<[Side; 3]>, Vec<[u32; 3]>, usize) {
    let glue = vec![
        [Side::new(1, 2), Side::new(1, 1), Side::new(1, 0)],
        [Side::new(0, 2), Side::new(0, 1), Side::new(0, 0)],
    ];
    let corners = vec![[0, 1, 2], [0, 2, 1]];
    (glue, corners, 3)
}

fn polygon_base(g: usize) -> (Vec<[Side; 3]>, Vec<[u32; 3]>, usize) {
    let n = 4 * g;
    let f = n - 2;
    let mut glue = vec![[Side::new(0, 0); 3]; f];
    // fan from polygon vertex 0: triangle j = (0, j+1, j+2)
    for j in 0..f - 1 {
        glue[j][2] = Side::new(j as u32 + 1, 0);
        glue[j + 1][0] = Side::new(j as u32, 2);
    }
    let poly_side = |i: usize| -> Side {
        if i == 0 {
            Side::new(0, 0)
        } else if i == n - 1 {
            Side::new(f as u32 - 1, 2)
        } else {
            Side::new(i as u32 - 1, 1)
        }
    };
    for h in 0..g {
        for (x, y) in [(4 * h, 4 * h + 2), (4 * h + 1, 4 * h + 3)] {
            let (sx, sy) = (poly_side(x), poly_side(y));
            glue[sx.tri as usize][sx.k as usize] = sy;
            glue[sy.tri as usize][sy.k as usize] = sx;
        }
    }
    let corners = vec![[0u32; 3]; f];
    (glue, corners, 1)
}

/// Replaces triangle `t` by three triangles coned to a new vertex `x`.
fn stellar(glue: &mut Vec<[Side; 3]>, corners: &mut Vec<[u32; 3]>, t: usize, x: u32) {
    let f = glue.len() as u32;
    let (t1, t2) = (f, f + 1);
    let [v0, v1, v2] = corners[t];
    let old = glue[t];
    // where the old sides now live
    let moved = |s: Side| -> Side {
        if s.tri as usize == t {
            match s.k {
                0 => Side::new(t as u32, 0),
                1 => Side::new(t1, 0),
                _ => Side::new(t2, 0),
            }
        } else {
            s
        }
    };
    let p0 = moved(old[0]);
    let p1 = moved(old[1]);
    let p2 = moved(old[2]);
    glue[t] = [p0, Side::new(t1, 2), Side::new(t2, 1)];
    corners[t] = [v0, v1, x];
    glue.push([p1, Side::new(t2, 2), Side::new(t as u32, 1)]);
    corners.push([v1, v2, x]);
    glue.push([p2, Side::new(t as u32, 2), Side::new(t1, 1)]);
    corners.push([v2, v0, x]);
    for (side, p) in [
        (Side::new(t as u32, 0), p0),
        (Side::new(t1, 0), p1),
        (Side::new(t2, 0), p2),
    ] {
        glue[p.tri as usize][p.k as usize] = side;
    }
}

/// Reads the signature back from a triangulation.
pub fn signature_of(t: &Triangulation) -> Result<SurfaceSignature> {
    let q = t.boundary_count() as i64;
    let chi = t.euler_characteristic();
    let twice_genus = 2 - q - chi;
    if twice_genus % 2 != 0 || twice_genus < 0 {
        return Err(Error::NonIntegerGenus(twice_genus));
    }
    Ok(SurfaceSignature::new(
        (twice_genus / 2) as u32,
        t.puncture_count() as u32,
        q as u32,
    ))
}
