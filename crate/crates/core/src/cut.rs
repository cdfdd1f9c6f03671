//! Cutting a surface along a multicurve.
//!
//! Every triangle is split by the normal arcs into corner regions, layered
//! from the corner vertex outwards, and one central region. Regions glued
//! along edge segments form the pieces of the cut surface; each piece is
//! cellulated by its regions, edge segments, copies of arcs, copies of the
//! crossing points, and triangulation vertices.

use crate::error::{Error, Result};
use crate::multicurve::{corner_counts, trace, NormalCoordinates, TracedMulticurve};
use crate::surface::{Side, SurfaceSignature, Triangulation, VertexKind};

/// Origin of a boundary circle of a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// A boundary circle of the original surface.
    Exterior(u32),
    /// Side of traced component `i`: `0` is its left, `1` its right.
    CurveSide(usize, u8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPiece {
    pub signature: SurfaceSignature,
    pub provenance: Vec<Provenance>,
    pub has_ghost: bool,
    /// Vertices of the triangulation inside the piece.
    pub vertices: Vec<usize>,
}

/// Region layout of a cut, shared by the constructions that search inside
/// pieces.
#[derive(Debug, Clone)]
pub struct RegionMap {
    base: Vec<usize>,
    corner_offset: Vec<[usize; 3]>,
    counts: Vec<[u64; 3]>,
    weights: Vec<[u64; 3]>,
    len: usize,
}

impl RegionMap {
    pub fn new(c: &NormalCoordinates) -> Self {
        let t = &**c.surface();
        let f = t.num_triangles();
        let mut base = Vec::with_capacity(f);
        let mut corner_offset = Vec::with_capacity(f);
        let mut counts = Vec::with_capacity(f);
        let mut weights = Vec::with_capacity(f);
        let mut len = 0usize;
        for tri in 0..f {
            let w = c.triangle_weights(tri);
            let cc = corner_counts(w);
            base.push(len);
            let o0 = len + 1;
            let o1 = o0 + cc[0] as usize;
            let o2 = o1 + cc[1] as usize;
            corner_offset.push([o0, o1, o2]);
            len = o2 + cc[2] as usize;
            counts.push(cc);
            weights.push(w);
        }
        Self {
            base,
            corner_offset,
            counts,
            weights,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn central(&self, tri: usize) -> usize {
        self.base[tri]
    }

    /// Region between corner arcs `l - 1` and `l` at corner `k`; layer 0
    /// touches the vertex. `l == c_k` is the central region.
    pub fn corner(&self, tri: usize, k: usize, l: u64) -> usize {
        if l >= self.counts[tri][k] {
            self.central(tri)
        } else {
            self.corner_offset[tri][k] + l as usize
        }
    }

    pub fn corner_count(&self, tri: usize, k: usize) -> u64 {
        self.counts[tri][k]
    }

    pub fn side_weight(&self, s: Side) -> u64 {
        self.weights[s.tri as usize][s.k as usize]
    }

    /// Region containing segment `sigma` of side `s`, counted from corner
    /// `s.k`.
    pub fn segment(&self, s: Side, sigma: u64) -> usize {
        let (tri, k) = (s.tri as usize, s.k as usize);
        let ck = self.counts[tri][k];
        let w = self.weights[tri][k];
        if sigma <= ck {
            self.corner(tri, k, sigma)
        } else {
            self.corner(tri, (k + 1) % 3, w - sigma)
        }
    }

    /// Regions on the vertex side and on the centre side of a corner arc.
    pub fn arc_sides(&self, tri: usize, k: usize, l: u64) -> (usize, usize) {
        (self.corner(tri, k, l), self.corner(tri, k, l + 1))
    }

    /// Triangle owning a region.
    pub fn triangle_of(&self, r: usize) -> usize {
        self.base.partition_point(|&b| b <= r) - 1
    }
}

#[derive(Debug, Clone)]
pub struct CutResult {
    pub pieces: Vec<CutPiece>,
    pub traced: TracedMulticurve,
    pub regions: RegionMap,
    /// Piece index of every region.
    pub piece_of: Vec<usize>,
}

impl CutResult {
    /// Region on side `side` (0 left, 1 right) of arc `i` of component `comp`.
    pub fn arc_side_region(&self, comp: usize, i: usize, side: u8) -> usize {
        let a = self.traced.components[comp].arcs[i];
        let (vertex_side, centre_side) = self.regions.arc_sides(a.tri, a.corner, a.layer);
        // a forward arc has its corner vertex on the right
        let right = if a.forward { vertex_side } else { centre_side };
        let left = if a.forward { centre_side } else { vertex_side };
        if side == 0 {
            left
        } else {
            right
        }
    }

    pub fn piece_of_side(&self, comp: usize, side: u8) -> usize {
        self.piece_of[self.arc_side_region(comp, 0, side)]
    }

    /// Region holding the corner of vertex `v` at `(tri, k)`.
    pub fn vertex_region(&self, tri: usize, k: usize) -> usize {
        self.regions.corner(tri, k, 0)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Cuts along every component of `c`.
pub fn cut_along(c: &NormalCoordinates) -> Result<CutResult> {
    let t: &Triangulation = c.surface();
    let regions = RegionMap::new(c);
    let mut dsu = Dsu((0..regions.len()).collect());
    for e in 0..t.num_edges() {
        let (s, p) = t.edge_sides(e);
        let w = c.weights()[e];
        for sigma in 0..=w {
            dsu.union(regions.segment(s, sigma), regions.segment(p, w - sigma));
        }
    }
    let mut piece_ids = vec![usize::MAX; regions.len()];
    let mut piece_of = vec![0usize; regions.len()];
    let mut n = 0;
    for r in 0..regions.len() {
        let root = dsu.find(r);
        if piece_ids[root] == usize::MAX {
            piece_ids[root] = n;
            n += 1;
        }
        piece_of[r] = piece_ids[root];
    }

    let mut v = vec![0i64; n];
    let mut e_count = vec![0i64; n];
    let mut f = vec![0i64; n];
    for &p in &piece_of {
        f[p] += 1;
    }
    for e in 0..t.num_edges() {
        let (s, _) = t.edge_sides(e);
        let w = c.weights()[e];
        for sigma in 0..=w {
            e_count[piece_of[regions.segment(s, sigma)]] += 1;
        }
        for p in 0..w {
            v[piece_of[regions.segment(s, p)]] += 1;
            v[piece_of[regions.segment(s, p + 1)]] += 1;
        }
    }
    for tri in 0..t.num_triangles() {
        for k in 0..3 {
            for l in 0..regions.corner_count(tri, k) {
                let (a, b) = regions.arc_sides(tri, k, l);
                e_count[piece_of[a]] += 1;
                e_count[piece_of[b]] += 1;
            }
        }
    }

    let mut vertex_piece = vec![usize::MAX; t.num_vertices()];
    for tri in 0..t.num_triangles() {
        for k in 0..3 {
            let vert = t.corner(tri, k);
            let p = piece_of[regions.corner(tri, k, 0)];
            if vertex_piece[vert] == usize::MAX {
                vertex_piece[vert] = p;
                v[p] += 1;
            } else if vertex_piece[vert] != p {
                return Err(Error::Internal("vertex link split by a cut".into()));
            }
        }
    }

    let traced = trace(c);
    let mut pieces: Vec<CutPiece> = (0..n)
        .map(|_| CutPiece {
            signature: SurfaceSignature::new(0, 0, 0),
            provenance: Vec::new(),
            has_ghost: false,
            vertices: Vec::new(),
        })
        .collect();
    let mut result = CutResult {
        pieces: Vec::new(),
        traced,
        regions,
        piece_of,
    };
    for i in 0..result.traced.components.len() {
        for side in [0u8, 1] {
            let p = result.piece_of_side(i, side);
            pieces[p].provenance.push(Provenance::CurveSide(i, side));
        }
    }
    for (vert, &p) in vertex_piece.iter().enumerate() {
        pieces[p].vertices.push(vert);
        match t.vertex_kind(vert) {
            VertexKind::Puncture => pieces[p].signature.punctures += 1,
            VertexKind::Boundary(label) => pieces[p].provenance.push(Provenance::Exterior(label)),
            VertexKind::Ghost => pieces[p].has_ghost = true,
        }
    }
    for (p, piece) in pieces.iter_mut().enumerate() {
        piece.provenance.sort();
        let b = piece.provenance.len() as i64;
        let curve_b = piece
            .provenance
            .iter()
            .filter(|x| matches!(x, Provenance::CurveSide(..)))
            .count() as i64;
        let chi = v[p] - e_count[p] + f[p];
        let two_g = 2 - curve_b - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Internal(format!("cut piece with Euler characteristic {chi}")));
        }
        piece.signature.genus = (two_g / 2) as u32;
        piece.signature.boundary = b as u32;
    }
    result.pieces = pieces;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::validate;
    use crate::surface::build_standard_surface;
    use std::sync::Arc;

    #[test]
    fn empty_cut_is_the_surface() {
        for sig in [(1, 1, 0), (0, 4, 1), (2, 0, 0), (0, 0, 3)] {
            let sig = SurfaceSignature::new(sig.0, sig.1, sig.2);
            let t = Arc::new(build_standard_surface(sig).unwrap());
            let cut = cut_along(&NormalCoordinates::empty(&t)).unwrap();
            assert_eq!(cut.pieces.len(), 1);
            assert_eq!(cut.pieces[0].signature, sig);
        }
    }

    #[test]
    fn torus_curve_cuts_to_annulus() {
        let t = Arc::new(build_standard_surface(SurfaceSignature::new(1, 1, 0)).unwrap());
        let c = validate(&t, vec![1, 0, 1]).unwrap();
        let cut = cut_along(&c).unwrap();
        assert_eq!(cut.pieces.len(), 1);
        assert_eq!(cut.pieces[0].signature, SurfaceSignature::new(0, 1, 2));
    }
}
