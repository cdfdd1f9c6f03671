//! JSON documents: `{"kind": ..., "version": ..., "payload": ...}`.
//!
//! Everything is emitted through `serde_json::Value`, whose maps keep keys
//! sorted, so output bytes depend only on content.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use curvecx::multicurve::{as_generic_family, validate, GenericFamily, NormalCoordinates};
use curvecx::orbit_types::{CanonicalCode, Node, OrbitType};
use curvecx::surface::{build_standard_surface, signature_of, Side, SurfaceSignature, Triangulation, VertexKind};

use crate::CliError;

pub const VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Surface,
    Multicurve,
    Family,
    OrbitType,
    Catalogue,
    Report,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub kind: Kind,
    pub version: String,
    pub payload: Value,
}

impl Document {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> Self {
        let payload = serde_json::to_value(payload).expect("payloads serialize");
        Document {
            kind,
            version: VERSION.into(),
            payload,
        }
    }

    pub fn emit(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("not a document: {e}")))?;
        if doc.version != VERSION {
            return Err(CliError::Usage(format!(
                "unsupported document version `{}`",
                doc.version
            )));
        }
        Ok(doc)
    }

    pub fn payload_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_value(self.payload.clone())
            .map_err(|e| CliError::Usage(format!("malformed {:?} payload: {e}", self.kind)))
    }
}

/// Gluing, corner and vertex tables of a triangulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InlineSurface {
    /// `glue[t][k] = [t', k']`: side `k` of triangle `t` meets side `k'` of `t'`.
    pub glue: Vec<[[u32; 2]; 3]>,
    pub corners: Vec<[u32; 3]>,
    pub vertices: Vec<VertexKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceRef {
    Builtin(String),
    Inline(InlineSurface),
}

impl SurfaceRef {
    pub fn builtin(sig: SurfaceSignature) -> Self {
        SurfaceRef::Builtin(sig.alias())
    }

    pub fn resolve(&self) -> Result<Arc<Triangulation>, CliError> {
        match self {
            SurfaceRef::Builtin(alias) => {
                let sig: SurfaceSignature = alias.parse()?;
                Ok(Arc::new(build_standard_surface(sig)?))
            }
            SurfaceRef::Inline(s) => {
                let glue = s
                    .glue
                    .iter()
                    .map(|row| row.map(|[t, k]| Side::new(t, k as u8)))
                    .collect();
                Ok(Arc::new(Triangulation::new(
                    glue,
                    s.corners.clone(),
                    s.vertices.clone(),
                )?))
            }
        }
    }

    /// Builtin references in canonical alias form.
    pub fn canonical(&self) -> Result<Self, CliError> {
        match self {
            SurfaceRef::Builtin(alias) => Ok(SurfaceRef::Builtin(alias.parse::<SurfaceSignature>()?.alias())),
            SurfaceRef::Inline(_) => Ok(self.clone()),
        }
    }
}

pub fn inline_of(t: &Triangulation) -> InlineSurface {
    InlineSurface {
        glue: t.gluing().iter().map(|row| row.map(|s| [s.tri, s.k as u32])).collect(),
        corners: t.corner_table().to_vec(),
        vertices: t.vertex_kinds().to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfacePayload {
    pub signature: SurfaceSignature,
    pub alias: String,
    pub triangulation: InlineSurface,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MulticurvePayload {
    pub surface: SurfaceRef,
    pub weights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyPayload {
    pub surface: SurfaceRef,
    pub components: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitTypePayload {
    pub ambient: SurfaceSignature,
    pub code: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<[usize; 2]>,
}

impl OrbitTypePayload {
    pub fn new(ot: &OrbitType, code: &CanonicalCode) -> Self {
        OrbitTypePayload {
            ambient: ot.ambient,
            code: code.to_string(),
            nodes: ot.nodes.clone(),
            edges: ot.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn orbit_type(&self) -> OrbitType {
        OrbitType {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect(),
            ambient: self.ambient,
        }
    }
}

/// A loaded curve document: the surface reference as written and the
/// validated multicurve.
pub struct Loaded {
    pub surface: SurfaceRef,
    pub curve: NormalCoordinates,
}

impl Loaded {
    pub fn family(&self) -> Result<GenericFamily, CliError> {
        Ok(as_generic_family(&self.curve)?)
    }
}

/// A multicurve or family document as a single multicurve.
pub fn load_curve(doc: &Document) -> Result<Loaded, CliError> {
    match doc.kind {
        Kind::Multicurve => {
            let p: MulticurvePayload = doc.payload_as()?;
            let t = p.surface.resolve()?;
            let curve = validate(&t, p.weights)?;
            Ok(Loaded {
                surface: p.surface.canonical()?,
                curve,
            })
        }
        Kind::Family => {
            let p: FamilyPayload = doc.payload_as()?;
            let t = p.surface.resolve()?;
            let mut curve = NormalCoordinates::empty(&t);
            for w in p.components {
                curve = curve.union(&validate(&t, w)?)?;
            }
            Ok(Loaded {
                surface: p.surface.canonical()?,
                curve,
            })
        }
        k => Err(CliError::Usage(format!(
            "expected a multicurve or family document, got {k:?}"
        ))),
    }
}

pub fn multicurve_doc(surface: &SurfaceRef, c: &NormalCoordinates) -> Document {
    Document::new(
        Kind::Multicurve,
        &MulticurvePayload {
            surface: surface.clone(),
            weights: c.weights().to_vec(),
        },
    )
}

pub fn family_doc(surface: &SurfaceRef, f: &GenericFamily) -> Document {
    Document::new(Kind::Family, &family_payload(surface, f))
}

pub fn family_payload(surface: &SurfaceRef, f: &GenericFamily) -> FamilyPayload {
    FamilyPayload {
        surface: surface.clone(),
        components: f.components().iter().map(|c| c.weights().to_vec()).collect(),
    }
}

pub fn surface_doc(sig: SurfaceSignature) -> Result<Document, CliError> {
    let t = build_standard_surface(sig)?;
    debug_assert_eq!(signature_of(&t).ok(), Some(sig));
    Ok(Document::new(
        Kind::Surface,
        &SurfacePayload {
            signature: sig,
            alias: sig.alias(),
            triangulation: inline_of(&t),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_aliases_canonicalize() {
        let r = SurfaceRef::Builtin("t1".into());
        assert_eq!(r.canonical().unwrap(), SurfaceRef::Builtin("g1p1b0".into()));
        assert!(SurfaceRef::Builtin("zz".into()).resolve().is_err());
    }

    #[test]
    fn inline_tables_rebuild_the_surface() {
        let sig = SurfaceSignature::new(0, 4, 1);
        let t = build_standard_surface(sig).unwrap();
        let back = SurfaceRef::Inline(inline_of(&t)).resolve().unwrap();
        assert_eq!(*back, t);
    }

    #[test]
    fn versions_are_checked() {
        let doc = Document::new(Kind::Report, &serde_json::json!({ "x": 1 }));
        let text = doc.emit();
        assert_eq!(Document::parse(&text).unwrap(), doc);
        let other = text.replace("\"version\": \"1\"", "\"version\": \"2\"");
        assert!(matches!(Document::parse(&other), Err(CliError::Usage(_))));
        assert!(Document::parse("{}").is_err());
    }

    #[test]
    fn orbit_type_payloads_round_trip() {
        let ot = OrbitType {
            nodes: vec![Node { genus: 0, punctures: 0, labels: vec![] }],
            edges: vec![(0, 0)],
            ambient: SurfaceSignature::new(1, 0, 0),
        };
        let code = curvecx::orbit_types::canonicalize(&ot);
        let p = OrbitTypePayload::new(&ot, &code);
        assert_eq!(p.orbit_type(), ot);
        assert_eq!(p.code, code.to_string());
    }

    #[test]
    fn wrong_kinds_are_usage_errors() {
        let doc = Document::new(Kind::Catalogue, &serde_json::json!({}));
        assert!(matches!(load_curve(&doc), Err(CliError::Usage(_))));
    }
}
