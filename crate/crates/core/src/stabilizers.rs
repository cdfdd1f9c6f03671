//! Stabilizers of orbit types, certificates of infinite orbits and chains
//! of self-commensurating subgroups.
//!
//! The stabilizer of a family with `r` curves sits in
//! `1 -> Z^r -> Mod(cut surface) -> Stab -> Cub_r`, where the kernel is
//! generated by the differences of the two boundary twists along each curve
//! and `Cub_r` (order `2^r r!`) records how curves and their sides move.

use serde::Serialize;

use crate::curve_ops::{
    dehn_twist_with_budget, intersection_number_with_budget, realize_disjoint, transversal_curve_with_budget,
};
use crate::error::{Error, Result};
use crate::fixtures::realized_families;
use crate::multicurve::{as_generic_family, canonical_eq, GenericFamily, NormalCoordinates};
use crate::orbit_enum::{enumerate_orbits, PantalonKind};
use crate::orbit_types::{
    canonicalize, canonicalize_with_automorphisms, is_face, orbit_type_of, CanonicalCode, Node, OrbitType,
};
use crate::spine::Budget;
use crate::surface::{build_standard_surface, SurfaceSignature};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub signature: SurfaceSignature,
    pub kind: PantalonKind,
    /// Stabilizer of the pantalon rel its boundary, when it is one.
    pub description: Option<&'static str>,
}

/// `T(c+) T(c-)^-1` for curve `c` (1-based): the twist along one side of the
/// cut times the inverse twist along the other. It acts trivially on `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelGenerator {
    pub curve: usize,
}

impl std::fmt::Display for KernelGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T(c{0}+) T(c{0}-)^-1", self.curve)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub orbit_type: CanonicalCode,
    pub r: usize,
    pub q: u32,
    pub twist_lattice_rank: usize,
    pub kernel_rank: usize,
    pub kernel_generators: Vec<KernelGenerator>,
    pub pieces: Vec<PieceReport>,
    pub cub_order: u128,
    pub graph_automorphism_count: u128,
    pub is_pantalon_decomposition: bool,
    pub virtually_abelian: bool,
}

impl StabilizerReport {
    pub fn exact_sequence(&self) -> String {
        format!("1 -> Z^{0} -> Mod(M_A, P) -> Stab([A]) -> Cub_{0}", self.r)
    }
}

fn piece_description(kind: PantalonKind) -> Option<&'static str> {
    match kind {
        PantalonKind::I => Some("infinite cyclic, half-twist generator"),
        PantalonKind::II => Some("Z^2, boundary Dehn twists"),
        PantalonKind::III => Some("Z^3, boundary Dehn twists"),
        PantalonKind::NotPantalon => None,
    }
}

/// `2^r r!`, or `None` past `u128`.
pub fn cub_order(r: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for k in 1..=r as u128 {
        acc = acc.checked_mul(2 * k)?;
    }
    Some(acc)
}

pub fn stabilizer_report(ot: &OrbitType) -> Result<StabilizerReport> {
    ot.validate().map_err(Error::InvalidCoordinates)?;
    let r = ot.r();
    let q = ot.ambient.boundary;
    let (code, autos) = canonicalize_with_automorphisms(ot);
    let pieces: Vec<PieceReport> = (0..ot.nodes.len())
        .map(|v| {
            let signature = ot.node_signature(v);
            let kind = PantalonKind::of(signature);
            PieceReport {
                signature,
                kind,
                description: piece_description(kind),
            }
        })
        .collect();
    let is_pantalon_decomposition = r > 0 && pieces.iter().all(|p| p.kind != PantalonKind::NotPantalon);
    let cub = cub_order(r).ok_or_else(|| Error::Internal(format!("Cub_{r} order overflows")))?;
    Ok(StabilizerReport {
        orbit_type: code,
        r,
        q,
        twist_lattice_rank: r + q as usize,
        kernel_rank: r,
        kernel_generators: (1..=r).map(|curve| KernelGenerator { curve }).collect(),
        pieces,
        cub_order: cub,
        graph_automorphism_count: autos,
        is_pantalon_decomposition,
        virtually_abelian: is_pantalon_decomposition,
    })
}

/// `N` pairwise distinct images of `alpha` under powers of a twist that
/// fixes `beta`, all of the same orbit type.
#[derive(Debug, Clone)]
pub struct LargeActionCertificate {
    /// 1-based index of the member of `alpha` that the twist moves.
    pub moved: usize,
    pub twist_curve: NormalCoordinates,
    /// Whether the twist curve is itself a member of `beta`.
    pub twist_in_beta: bool,
    pub intersection_with_moved: u64,
    /// Intersection of the twist curve with each member of `beta`, all zero.
    pub beta_intersections: Vec<u64>,
    pub orbit_type: CanonicalCode,
    /// `T^n(alpha)` for `n = 1..=N`.
    pub images: Vec<GenericFamily>,
}

pub fn large_action_certificate(
    alpha: &GenericFamily,
    beta: &GenericFamily,
    n: usize,
) -> Result<LargeActionCertificate> {
    large_action_with_budget(alpha, beta, n, &mut Budget::default())
}

pub fn large_action_with_budget(
    alpha: &GenericFamily,
    beta: &GenericFamily,
    n: usize,
    budget: &mut Budget,
) -> Result<LargeActionCertificate> {
    if is_face(alpha, beta)? {
        return Err(Error::FacePrecondition);
    }
    let mut moved = None;
    for (i, a) in alpha.components().iter().enumerate() {
        let mut inside = false;
        for b in beta.components() {
            if canonical_eq(a, b)? {
                inside = true;
                break;
            }
        }
        if !inside {
            moved = Some(i);
            break;
        }
    }
    let i = moved.ok_or_else(|| Error::Internal("a non-face has no member outside".into()))?;
    let a = &alpha.components()[i];
    let mut hit = None;
    for b in beta.components() {
        let x = intersection_number_with_budget(a, b, budget)?;
        if x > 0 {
            hit = Some((b.clone(), x));
            break;
        }
    }
    let (twist_curve, twist_in_beta, x) = match hit {
        Some((b, x)) => (b, true, x),
        None => {
            let merged = as_generic_family(&realize_disjoint(beta, a)?)?;
            let idx = merged
                .position(a)
                .ok_or_else(|| Error::Internal("member lost in union".into()))?;
            let c = transversal_curve_with_budget(&merged, idx + 1, budget)?;
            let x = intersection_number_with_budget(a, &c, budget)?;
            (c, false, x)
        }
    };
    let mut beta_intersections = Vec::with_capacity(beta.r());
    for b in beta.components() {
        beta_intersections.push(intersection_number_with_budget(&twist_curve, b, budget)?);
    }
    if beta_intersections.iter().any(|&y| y != 0) {
        return Err(Error::Internal("twist curve meets beta".into()));
    }
    let orbit_type = canonicalize(&orbit_type_of(alpha)?);
    let mut images: Vec<GenericFamily> = Vec::with_capacity(n);
    let mut cur = alpha.union();
    for _ in 0..n {
        cur = dehn_twist_with_budget(&twist_curve, 1, &cur, budget)?;
        let fam = as_generic_family(&cur)?;
        if canonicalize(&orbit_type_of(&fam)?) != orbit_type {
            return Err(Error::Internal("twist image changed orbit type".into()));
        }
        for prev in &images {
            if canonical_eq(&prev.union(), &cur)? {
                return Err(Error::Internal("twist images repeat".into()));
            }
        }
        images.push(fam);
    }
    Ok(LargeActionCertificate {
        moved: i + 1,
        twist_curve,
        twist_in_beta,
        intersection_with_moved: x,
        beta_intersections,
        orbit_type,
        images,
    })
}

/// Infinite orbits in each direction where the face condition allows one:
/// `forward` moves `alpha` under the stabilizer of `beta`, `backward` the
/// reverse.
#[derive(Debug, Clone)]
pub struct NoncommensurabilityCertificate {
    pub forward: Option<LargeActionCertificate>,
    pub backward: Option<LargeActionCertificate>,
}

pub fn noncommensurability_certificate(
    alpha: &GenericFamily,
    beta: &GenericFamily,
    n: usize,
) -> Result<NoncommensurabilityCertificate> {
    let ab = is_face(alpha, beta)?;
    let ba = is_face(beta, alpha)?;
    if ab && ba {
        return Err(Error::EqualClasses);
    }
    let mut budget = Budget::default();
    let forward = if ab {
        None
    } else {
        Some(large_action_with_budget(alpha, beta, n, &mut budget)?)
    };
    let backward = if ba {
        None
    } else {
        Some(large_action_with_budget(beta, alpha, n, &mut budget)?)
    };
    Ok(NoncommensurabilityCertificate { forward, backward })
}

/// The type left after forgetting edge `e`: its endpoints merge, or a loop
/// adds a handle.
pub fn contract_edge(ot: &OrbitType, e: usize) -> OrbitType {
    let (u, v) = ot.edges[e];
    let mut nodes = ot.nodes.clone();
    let mut edges: Vec<(usize, usize)> = ot
        .edges
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != e)
        .map(|(_, &x)| x)
        .collect();
    if u == v {
        nodes[u].genus += 1;
        return OrbitType {
            nodes,
            edges,
            ambient: ot.ambient,
        };
    }
    let gone = nodes.remove(v);
    let merged = &mut nodes[if u < v { u } else { u - 1 }];
    merged.genus += gone.genus;
    merged.punctures += gone.punctures;
    merged.labels.extend(gone.labels);
    merged.labels.sort_unstable();
    let re = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    for edge in edges.iter_mut() {
        let (a, b) = (re(edge.0), re(edge.1));
        *edge = (a.min(b), a.max(b));
    }
    OrbitType {
        nodes,
        edges,
        ambient: ot.ambient,
    }
}

/// A two-curve family `beta = {a, b}` whose one-curve faces lie in
/// different orbits, with `alpha = {a}`. The stabilizers of `alpha` and
/// `beta` are self-commensurating and non-conjugate, and inducing their
/// quasi-regular representations gives the same representation of the
/// mapping class group.
#[derive(Debug, Clone)]
pub struct ChainExample {
    pub surface: SurfaceSignature,
    pub a: NormalCoordinates,
    pub b: NormalCoordinates,
    pub alpha: GenericFamily,
    pub beta: GenericFamily,
    pub alpha_type: CanonicalCode,
    pub b_type: CanonicalCode,
    pub beta_type: CanonicalCode,
    pub alpha_report: StabilizerReport,
    pub beta_report: StabilizerReport,
    pub identity: String,
}

pub fn self_commensurating_chain(sig: SurfaceSignature) -> Result<ChainExample> {
    let target = enumerate_orbits(sig, 2).into_iter().find_map(|ot| {
        let f0 = canonicalize(&contract_edge(&ot, 1));
        let f1 = canonicalize(&contract_edge(&ot, 0));
        (f0 != f1).then(|| canonicalize(&ot))
    });
    let target = target.ok_or(Error::NoChain(sig))?;
    let t = std::sync::Arc::new(build_standard_surface(sig)?);
    let layers = realized_families(&t, 2, &mut Budget::default())?;
    let beta = layers
        .get(1)
        .and_then(|l| l.get(&target))
        .cloned()
        .ok_or_else(|| Error::Internal(format!("no family of type {target} found on {sig}")))?;
    let mut faces: Vec<(CanonicalCode, usize)> = Vec::new();
    for i in 0..2 {
        faces.push((canonicalize(&orbit_type_of(&beta.face(&[i]))?), i));
    }
    faces.sort();
    let (alpha_type, ia) = faces[0].clone();
    let (b_type, ib) = faces[1].clone();
    let alpha = beta.face(&[ia]);
    let alpha_report = stabilizer_report(&orbit_type_of(&alpha)?)?;
    let beta_report = stabilizer_report(&orbit_type_of(&beta)?)?;
    Ok(ChainExample {
        surface: sig,
        a: beta.components()[ia].clone(),
        b: beta.components()[ib].clone(),
        alpha,
        beta,
        alpha_type,
        b_type,
        beta_type: target,
        alpha_report,
        beta_report,
        identity: "Ind_{Stab(beta)}^{Mod} 1 = Ind_{Stab(alpha)}^{Mod} (Ind_{Stab(beta)}^{Stab(alpha)} 1)".into(),
    })
}

/// Node of a type, for callers building types by hand.
pub fn node(genus: u32, punctures: u32, labels: &[u32]) -> Node {
    Node {
        genus,
        punctures,
        labels: labels.to_vec(),
    }
}
