//! Closed walks on the dual ribbon graph.
//!
//! A walk is a cyclic sequence of exit sides: step `h = (t, k)` leaves
//! triangle `t` through side `k` and enters the triangle glued there. A
//! walk with no immediate backtracking is cyclically reduced, and reduced
//! walks are in bijection with free homotopy classes of closed curves in the
//! surface minus its vertices. For simple curves the edge-traversal counts of
//! the reduced walk are its normal coordinates.
//!
//! Two reduced walks meet along maximal common segments. A segment is a
//! crossing exactly when the walks enter and leave it on opposite sides;
//! counting those gives the geometric intersection number, and placing each
//! crossing at the node where its segment starts gives a minimal-position
//! arrangement in which the Dehn twist is a loop insertion.

use crate::error::{Error, Result};
use crate::surface::{Side, Triangulation};

pub type Walk = Vec<Side>;

/// Work counter shared by the long-running curve operations.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_STEPS: u64 = 200_000_000;

    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub fn spend(&mut self, steps: u64) -> Result<()> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            Err(Error::StepBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_STEPS)
    }
}

/// `true` when slots `x, y, z` of a trivalent node appear in that
/// counter-clockwise order.
#[inline]
pub fn ccw(x: u8, y: u8, z: u8) -> bool {
    debug_assert!(x != y && y != z && x != z);
    (y + 3 - x) % 3 == 1
}

#[inline]
fn at<T: Copy>(w: &[T], i: isize) -> T {
    let n = w.len() as isize;
    w[i.rem_euclid(n) as usize]
}

pub fn reverse(t: &Triangulation, w: &[Side]) -> Walk {
    w.iter().rev().map(|&h| t.partner(h)).collect()
}

/// Consecutive steps must chain through triangles.
pub fn is_closed_walk(t: &Triangulation, w: &[Side]) -> bool {
    !w.is_empty()
        && (0..w.len()).all(|i| {
            let h = w[i];
            let nxt = w[(i + 1) % w.len()];
            t.partner(h).tri == nxt.tri
        })
}

/// Free and cyclic reduction.
pub fn reduce(t: &Triangulation, w: &[Side]) -> Walk {
    let mut out: Vec<Side> = Vec::with_capacity(w.len());
    for &h in w {
        match out.last() {
            Some(&last) if t.partner(last) == h => {
                out.pop();
            }
            _ => out.push(h),
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && t.partner(out[hi - 1]) == out[lo] {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

pub fn is_reduced(t: &Triangulation, w: &[Side]) -> bool {
    let n = w.len();
    n > 0 && (0..n).all(|i| t.partner(w[i]) != w[(i + 1) % n])
}

/// Number of times the walk crosses every edge.
pub fn edge_counts(t: &Triangulation, w: &[Side]) -> Vec<u64> {
    let mut c = vec![0u64; t.num_edges()];
    for &h in w {
        c[t.edge(h)] += 1;
    }
    c
}

/// Rotation and orientation independent key of a cyclic walk.
pub fn canonical_rotation(t: &Triangulation, w: &[Side]) -> Walk {
    let mut best = least_rotation(w);
    let r = least_rotation(&reverse(t, w));
    if r < best {
        best = r;
    }
    best
}

fn least_rotation(w: &[Side]) -> Walk {
    let n = w.len();
    (0..n)
        .map(|s| w[s..].iter().chain(&w[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// One crossing of a minimal-position arrangement of walks `b` and `a`,
/// seen from `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Index into `b` of the first edge of the shared segment.
    pub b_pos: usize,
    /// Index of the same edge in `a` (read backwards when `a_reversed`).
    pub a_pos: usize,
    pub a_reversed: bool,
    /// Whether `a`, oriented along the segment, enters on the right of `b`.
    /// Then `b` passes from the left of `a` to its right.
    pub a_starts_right: bool,
    /// Length of the shared segment.
    pub shared: usize,
}

struct Aligned<'a> {
    fwd: &'a [Side],
    rev: Walk,
}

impl<'a> Aligned<'a> {
    fn new(t: &Triangulation, a: &'a [Side]) -> Self {
        Self {
            fwd: a,
            rev: reverse(t, a),
        }
    }

    fn get(&self, reversed: bool) -> &[Side] {
        if reversed {
            &self.rev
        } else {
            self.fwd
        }
    }
}

/// All crossings between reduced walks `b` and `a`.
pub fn crossings(t: &Triangulation, b: &[Side], a: &[Side], budget: &mut Budget) -> Result<Vec<Crossing>> {
    let aligned = Aligned::new(t, a);
    crossings_aligned(t, b, &aligned, budget)
}

fn crossings_aligned(t: &Triangulation, b: &[Side], a: &Aligned<'_>, budget: &mut Budget) -> Result<Vec<Crossing>> {
    let lb = b.len();
    let la = a.fwd.len();
    let bound = (lb + la) as isize;
    let mut out = Vec::new();
    budget.spend((lb + la) as u64)?;
    for reversed in [false, true] {
        let aw = a.get(reversed);
        let mut index: Vec<Vec<usize>> = vec![Vec::new(); 3 * t.num_triangles()];
        for (j, h) in aw.iter().enumerate() {
            index[3 * h.tri as usize + h.k as usize].push(j);
        }
        for i in 0..lb {
            for &j in &index[3 * b[i].tri as usize + b[i].k as usize] {
                let (ii, jj) = (i as isize, j as isize);
                let pb = at(b, ii - 1);
                let pa = at(aw, jj - 1);
                if pb == pa {
                    continue;
                }
                let mut k: isize = 1;
                while k <= bound && at(b, ii + k) == at(aw, jj + k) {
                    k += 1;
                }
                budget.spend(k as u64)?;
                if k > bound {
                    // identical bi-infinite walks never have a start
                    return Err(Error::Internal(
                        "shared segment with a divergent past never ends".into(),
                    ));
                }
                let s = b[i].k;
                let p_b = t.partner(pb).k;
                let p_a = t.partner(pa).k;
                let last = at(b, ii + k - 1);
                let ts = t.partner(last).k;
                let q_b = at(b, ii + k).k;
                let q_a = at(aw, jj + k).k;
                let a_starts_right = ccw(s, p_b, p_a);
                let a_ends_left = ccw(ts, q_b, q_a);
                if a_starts_right == a_ends_left {
                    out.push(Crossing {
                        b_pos: i,
                        a_pos: j,
                        a_reversed: reversed,
                        a_starts_right,
                        shared: k as usize,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Geometric intersection number of the classes of two reduced walks.
pub fn intersection(t: &Triangulation, b: &[Side], a: &[Side], budget: &mut Budget) -> Result<u64> {
    Ok(crossings(t, b, a, budget)?.len() as u64)
}

/// Whether strand `x` lies to the left of strand `y` where both run along
/// the same directed edge (`wx[jx] == wy[jy]`). The strands must not cross.
fn left_of(t: &Triangulation, wx: &[Side], jx: usize, wy: &[Side], jy: usize) -> bool {
    let bound = (wx.len() + wy.len()) as isize;
    let (jx, jy) = (jx as isize, jy as isize);
    let mut k = 1;
    while k <= bound && at(wx, jx + k) == at(wy, jy + k) {
        k += 1;
    }
    if k <= bound {
        let ts = t.partner(at(wx, jx + k - 1)).k;
        return ccw(ts, at(wy, jy + k).k, at(wx, jx + k).k);
    }
    let mut k = 1;
    while k <= bound && at(wx, jx - k) == at(wy, jy - k) {
        k += 1;
    }
    let s = at(wx, jx - k + 1).k;
    let px = t.partner(at(wx, jx - k)).k;
    let py = t.partner(at(wy, jy - k)).k;
    ccw(s, px, py)
}

/// `tau_a^n` applied to the walk `b`, reduced. Positive powers turn left
/// onto `a` at every crossing.
pub fn twist(t: &Triangulation, a: &[Side], n: i64, b: &[Side], budget: &mut Budget) -> Result<Walk> {
    if n == 0 {
        return Ok(b.to_vec());
    }
    let aligned = Aligned::new(t, a);
    let mut cs = crossings_aligned(t, b, &aligned, budget)?;
    if cs.is_empty() {
        return Ok(b.to_vec());
    }
    let la = a.len();
    let reps = n.unsigned_abs() as usize;
    let new_len = b.len() + cs.len() * reps * la;
    budget.spend(new_len as u64)?;
    // Order crossings sharing a start node: the strand nearest to b crosses
    // first. All strands meeting b at one node arrive through the same slot,
    // hence lie on the same side of b.
    cs.sort_by(|x, y| {
        x.b_pos.cmp(&y.b_pos).then_with(|| {
            if (x.a_pos, x.a_reversed) == (y.a_pos, y.a_reversed) {
                return std::cmp::Ordering::Equal;
            }
            let wx = aligned.get(x.a_reversed);
            let wy = aligned.get(y.a_reversed);
            let x_left = left_of(t, wx, x.a_pos, wy, y.a_pos);
            // a-strands on the right of b: nearest is leftmost
            if x.a_starts_right == x_left {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    });
    let mut out = Vec::with_capacity(new_len);
    let mut ci = 0;
    for (i, &h) in b.iter().enumerate() {
        while ci < cs.len() && cs[ci].b_pos == i {
            let c = cs[ci];
            let aw = aligned.get(c.a_reversed);
            let forward = c.a_starts_right == (n > 0);
            for _ in 0..reps {
                if forward {
                    out.extend((0..la).map(|k| aw[(c.a_pos + k) % la]));
                } else {
                    out.extend((1..=la).map(|k| t.partner(aw[(c.a_pos + la - k) % la])));
                }
            }
            ci += 1;
        }
        out.push(h);
    }
    budget.spend(out.len() as u64)?;
    Ok(reduce(t, &out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, SurfaceSignature};

    #[test]
    fn ccw_orders() {
        assert!(ccw(0, 1, 2));
        assert!(ccw(1, 2, 0));
        assert!(!ccw(0, 2, 1));
    }

    #[test]
    fn reduce_cancels_backtracks() {
        let t = build_standard_surface(SurfaceSignature::new(1, 1, 0)).unwrap();
        let h = Side::new(0, 0);
        let p = t.partner(h);
        assert!(reduce(&t, &[h, p]).is_empty());
        let w = vec![
            Side::new(0, 0),
            Side::new(1, 1),
            Side::new(0, 0),
            t.partner(Side::new(0, 0)),
        ];
        let r = reduce(&t, &w);
        assert!(r.len() < w.len());
    }
}
