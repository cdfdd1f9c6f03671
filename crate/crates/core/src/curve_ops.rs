//! Intersection numbers, Dehn twists and twist words.
//!
//! Curves are handled through their traced walks on the dual graph. Reduced
//! walks are already in minimal position with respect to each other, so the
//! crossing list of [`arrange`] is bigon-free by construction.
//!
//! Sign convention: a positive twist turns left onto the twisting curve at
//! every crossing.

use std::sync::Arc;

use crate::cut::cut_along;
use crate::error::{Error, Result};
use crate::multicurve::{classify_in_cut, same_surface, trace, ComponentClass, NormalCoordinates};
use crate::spine::{self, Budget, Crossing, Walk};
use crate::surface::{Side, Triangulation};

pub use crate::construct::{realize_disjoint, transversal_curve, transversal_curve_with_budget};

/// Crossings between two multicurves in minimal position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub a_walks: Vec<Walk>,
    pub b_walks: Vec<Walk>,
    /// `(a component, b component, crossing seen from b)`.
    pub crossings: Vec<(usize, usize, Crossing)>,
}

impl Arrangement {
    pub fn crossing_count(&self) -> u64 {
        self.crossings.len() as u64
    }
}

fn check_same(a: &NormalCoordinates, b: &NormalCoordinates) -> Result<()> {
    if same_surface(a.surface(), b.surface()) {
        Ok(())
    } else {
        Err(Error::SurfaceMismatch)
    }
}

/// Walks of the components that can meet other curves. Components bounding
/// a disc around the ghost vertex are dropped.
fn essential_walks(c: &NormalCoordinates) -> Result<Vec<Walk>> {
    let t = c.surface();
    let walks: Vec<Walk> = trace(c).components.into_iter().map(|x| x.walk).collect();
    if !t.has_ghost() {
        return Ok(walks);
    }
    let mut out = Vec::with_capacity(walks.len());
    for w in walks {
        let single = NormalCoordinates::from_walk_unchecked(t, &w);
        let cut = cut_along(&single)?;
        if classify_in_cut(&cut, 0) != ComponentClass::Trivial {
            out.push(w);
        }
    }
    Ok(out)
}

pub fn arrange(a: &NormalCoordinates, b: &NormalCoordinates, budget: &mut Budget) -> Result<Arrangement> {
    check_same(a, b)?;
    let t = &**a.surface();
    let a_walks = essential_walks(a)?;
    let b_walks = essential_walks(b)?;
    let mut crossings = Vec::new();
    for (i, aw) in a_walks.iter().enumerate() {
        for (j, bw) in b_walks.iter().enumerate() {
            for c in spine::crossings(t, bw, aw, budget)? {
                crossings.push((i, j, c));
            }
        }
    }
    Ok(Arrangement {
        a_walks,
        b_walks,
        crossings,
    })
}

pub fn intersection_number_with_budget(
    a: &NormalCoordinates,
    b: &NormalCoordinates,
    budget: &mut Budget,
) -> Result<u64> {
    Ok(arrange(a, b, budget)?.crossing_count())
}

/// Geometric intersection number, summed over pairs of components.
pub fn intersection_number(a: &NormalCoordinates, b: &NormalCoordinates) -> Result<u64> {
    intersection_number_with_budget(a, b, &mut Budget::default())
}

/// Checks that `a` is a single generic curve and returns its walk.
pub(crate) fn twist_walk(a: &NormalCoordinates) -> Result<Walk> {
    let traced = trace(a);
    if traced.components.len() != 1 {
        return Err(Error::NonGenericTwistCurve);
    }
    let cut = cut_along(a)?;
    if classify_in_cut(&cut, 0) != ComponentClass::Generic {
        return Err(Error::NonGenericTwistCurve);
    }
    Ok(traced.components.into_iter().next().map(|c| c.walk).unwrap_or_default())
}

fn twist_with_walk(
    t: &Arc<Triangulation>,
    aw: &[Side],
    n: i64,
    b: &NormalCoordinates,
    budget: &mut Budget,
) -> Result<NormalCoordinates> {
    let mut w = vec![0u64; t.num_edges()];
    for comp in trace(b).components {
        let img = spine::twist(t, aw, n, &comp.walk, budget)?;
        for (x, y) in w.iter_mut().zip(spine::edge_counts(t, &img)) {
            *x += y;
        }
    }
    crate::multicurve::validate(t, w).map_err(|e| Error::Internal(format!("twist produced invalid coordinates: {e}")))
}

pub fn dehn_twist_with_budget(
    a: &NormalCoordinates,
    n: i64,
    b: &NormalCoordinates,
    budget: &mut Budget,
) -> Result<NormalCoordinates> {
    check_same(a, b)?;
    let aw = twist_walk(a)?;
    if n == 0 {
        return Ok(b.clone());
    }
    twist_with_walk(a.surface(), &aw, n, b, budget)
}

/// `tau_a^n(b)`.
pub fn dehn_twist(a: &NormalCoordinates, n: i64, b: &NormalCoordinates) -> Result<NormalCoordinates> {
    dehn_twist_with_budget(a, n, b, &mut Budget::default())
}

/// A product of twists `tau_{c_1}^{n_1} ... tau_{c_k}^{n_k}`. As a map it
/// applies the last letter first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistWord {
    pub letters: Vec<(NormalCoordinates, i64)>,
}

impl TwistWord {
    pub fn new(letters: Vec<(NormalCoordinates, i64)>) -> Result<Self> {
        for (c, n) in &letters {
            if *n == 0 {
                return Err(Error::InvalidCoordinates("twist exponent must be non-zero".into()));
            }
            twist_walk(c)?;
        }
        if let Some((first, _)) = letters.first() {
            for (c, _) in &letters {
                check_same(first, c)?;
            }
        }
        Ok(Self { letters })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(c: NormalCoordinates, n: i64) -> Result<Self> {
        Self::new(vec![(c, n)])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|(c, n)| (c.clone(), -n)).collect(),
        }
    }

    /// The product `self * other`.
    pub fn then(&self, other: &TwistWord) -> Self {
        Self {
            letters: self.letters.iter().chain(&other.letters).cloned().collect(),
        }
    }
}

pub fn apply_word_with_budget(w: &TwistWord, c: &NormalCoordinates, budget: &mut Budget) -> Result<NormalCoordinates> {
    let mut cur = c.clone();
    for (a, n) in w.letters.iter().rev() {
        check_same(a, &cur)?;
        let aw = twist_walk(a)?;
        cur = twist_with_walk(a.surface(), &aw, *n, &cur, budget)?;
    }
    Ok(cur)
}

pub fn apply_word(w: &TwistWord, c: &NormalCoordinates) -> Result<NormalCoordinates> {
    apply_word_with_budget(w, c, &mut Budget::default())
}
