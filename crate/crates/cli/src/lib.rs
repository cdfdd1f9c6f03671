//! Command-line front end for `curvecx`.
//!
//! Every command reads and writes JSON documents (see [`doc`]). Exit codes:
//! 0 on success, 1 when the library rejects the input, 2 on usage errors.

pub mod doc;

use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use curvecx::curve_ops::{dehn_twist_with_budget, intersection_number_with_budget};
use curvecx::error::Error;
use curvecx::fixtures::{genus_two, seed_curves};
use curvecx::multicurve::{canonical_eq, GenericFamily, NormalCoordinates};
use curvecx::orbit_enum::{catalogue, complete_with_budget, enumerate_orbits, from_code};
use curvecx::orbit_types::{canonicalize, orbit_type_of};
use curvecx::spine::Budget;
use curvecx::stabilizers::{
    large_action_with_budget, noncommensurability_certificate, self_commensurating_chain, stabilizer_report,
    LargeActionCertificate, StabilizerReport,
};
use curvecx::surface::{build_standard_surface, SurfaceSignature};

use doc::{
    family_doc, family_payload, load_curve, multicurve_doc, surface_doc, Document, Kind, OrbitTypePayload, SurfaceRef,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    /// One-line JSON for standard error.
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Usage(m) => ("Usage", m.clone()),
            CliError::Domain(e) => (e.kind(), e.to_string()),
        };
        json!({ "error": kind, "message": message }).to_string()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "curvecx",
    version,
    about = "Multicurves, orbit types and stabilizers on punctured surfaces"
)]
pub struct Cli {
    /// Cap on elementary steps spent by curve computations.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_STEPS)]
    pub step_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalogue of orbit types of generic families.
    Orbits {
        g: u32,
        m: u32,
        q: u32,
        /// Only the types with this many curves.
        r: Option<usize>,
        /// Leave out the type listings.
        #[arg(long)]
        counts_only: bool,
    },
    /// Orbit type of a family.
    Classify { file: String },
    /// Whether two multicurves are isotopic.
    Equiv { file1: String, file2: String },
    /// Geometric intersection number.
    Intersect { file1: String, file2: String },
    /// Image of a multicurve under a power of a Dehn twist.
    Twist {
        #[arg(long)]
        along: String,
        #[arg(long, allow_hyphen_values = true)]
        power: i64,
        file: String,
    },
    /// Extends a family to a pantalon decomposition.
    Complete { file: String },
    /// Stabilizer structure of an orbit type or family.
    Stabilizer { file: String },
    /// Infinitely many images of the first family under the stabilizer of the second.
    LargeAction {
        file1: String,
        file2: String,
        #[arg(short = 'n', default_value_t = 25)]
        n: usize,
    },
    /// Large-action certificates in both directions.
    Noncommensurable {
        file1: String,
        file2: String,
        #[arg(short = 'n', default_value_t = 25)]
        n: usize,
    },
    /// Nested self-commensurating stabilizers on a surface.
    Chain { g: u32, m: u32, q: u32 },
    /// Standard triangulation of a builtin surface.
    Surface { alias: String },
    /// A fixture curve: `torus-a`, `torus-b`, `g2-a1` .. `g2-a4`, or
    /// `<alias>:<i>` for the i-th seed curve of a builtin surface.
    Fixture { name: String },
}

/// Parses `args` (program name first) and runs the command: exit code,
/// standard output, standard error.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                (0, e.to_string(), String::new())
            } else {
                (2, String::new(), e.to_string())
            };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), e.to_json() + "\n"),
    }
}

fn read(path: &str) -> Result<Document, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Usage(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
    };
    Document::parse(&text)
}

fn big(x: u128) -> Result<u64, CliError> {
    u64::try_from(x).map_err(|_| CliError::Domain(Error::Internal(format!("{x} exceeds 64 bits"))))
}

fn report_value(rep: &StabilizerReport) -> Result<Value, CliError> {
    let ot = from_code(&rep.orbit_type);
    Ok(json!({
        "orbit_type": OrbitTypePayload::new(&ot, &rep.orbit_type),
        "r": rep.r,
        "q": rep.q,
        "twist_lattice_rank": rep.twist_lattice_rank,
        "kernel_rank": rep.kernel_rank,
        "kernel_generators": rep.kernel_generators.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "pieces": rep.pieces,
        "cub_order": big(rep.cub_order)?,
        "graph_automorphism_count": big(rep.graph_automorphism_count)?,
        "is_pantalon_decomposition": rep.is_pantalon_decomposition,
        "virtually_abelian": rep.virtually_abelian,
        "exact_sequence": rep.exact_sequence(),
    }))
}

fn certificate_value(
    surface: &SurfaceRef,
    alpha: &GenericFamily,
    beta: &GenericFamily,
    c: &LargeActionCertificate,
) -> Value {
    json!({
        "type": "large_action",
        "alpha": family_payload(surface, alpha),
        "beta": family_payload(surface, beta),
        "moved": c.moved,
        "twist_curve": c.twist_curve.weights(),
        "twist_in_beta": c.twist_in_beta,
        "intersection_with_moved": c.intersection_with_moved,
        "beta_intersections": c.beta_intersections,
        "orbit_type": c.orbit_type.to_string(),
        "images": c.images.iter().map(|f| f.components().iter().map(|x| x.weights().to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "pairwise_distinct": true,
    })
}

fn two_families(f1: &str, f2: &str) -> Result<(SurfaceRef, GenericFamily, GenericFamily), CliError> {
    let a = load_curve(&read(f1)?)?;
    let b = load_curve(&read(f2)?)?;
    Ok((a.surface.clone(), a.family()?, b.family()?))
}

fn fixture(name: &str) -> Result<(SurfaceRef, NormalCoordinates), CliError> {
    let torus = || -> Result<(Arc<_>, Vec<NormalCoordinates>), CliError> {
        let t = Arc::new(build_standard_surface(SurfaceSignature::new(1, 0, 0))?);
        let seeds = seed_curves(&t, 8);
        Ok((t, seeds))
    };
    let g2 = || SurfaceRef::builtin(SurfaceSignature::new(2, 0, 0));
    match name {
        "torus-a" | "torus-b" => {
            let (_, seeds) = torus()?;
            let a = seeds[0].clone();
            let mut budget = Budget::default();
            let mut b = None;
            for s in &seeds {
                if intersection_number_with_budget(&a, s, &mut budget)? == 1 {
                    b = Some(s.clone());
                    break;
                }
            }
            let b = b.ok_or_else(|| CliError::Domain(Error::Internal("no torus partner".into())))?;
            let c = if name == "torus-a" { a } else { b };
            Ok((SurfaceRef::builtin(SurfaceSignature::new(1, 0, 0)), c))
        }
        "g2-a1" => Ok((g2(), genus_two()?.a1)),
        "g2-a2" => Ok((g2(), genus_two()?.a2)),
        "g2-a3" => Ok((g2(), genus_two()?.a3)),
        "g2-a4" => Ok((g2(), genus_two()?.a4)),
        _ => {
            let (alias, idx) = name
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("unknown fixture `{name}`")))?;
            let sig: SurfaceSignature = alias.parse()?;
            let i: usize = idx
                .parse()
                .map_err(|_| CliError::Usage(format!("bad seed index `{idx}`")))?;
            let t = Arc::new(build_standard_surface(sig)?);
            let seeds = seed_curves(&t, 8);
            let c = seeds.get(i).cloned().ok_or(CliError::Domain(Error::IndexOutOfRange {
                index: i,
                len: seeds.len(),
            }))?;
            Ok((SurfaceRef::builtin(sig), c))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let mut budget = Budget::new(cli.step_budget);
    let doc = match &cli.command {
        Command::Orbits {
            g,
            m,
            q,
            r,
            counts_only,
        } => {
            let sig = SurfaceSignature::new(*g, *m, *q);
            let listing = |types: Vec<curvecx::orbit_types::OrbitType>| -> Vec<OrbitTypePayload> {
                types
                    .iter()
                    .map(|ot| OrbitTypePayload::new(ot, &canonicalize(ot)))
                    .collect()
            };
            let payload = match r {
                Some(r) => {
                    let types = enumerate_orbits(sig, *r);
                    let mut v = json!({ "signature": sig, "r": r, "count": types.len() });
                    if !counts_only {
                        v["types"] = json!(listing(types));
                    }
                    v
                }
                None => {
                    let cat = catalogue(sig);
                    let mut v = json!({
                        "signature": sig,
                        "max_rank": cat.max_rank,
                        "per_rank": cat.counts(),
                        "total": cat.total,
                    });
                    if !counts_only {
                        let types: Vec<_> = (1..=cat.max_rank).flat_map(|r| enumerate_orbits(sig, r)).collect();
                        v["types"] = json!(listing(types));
                    }
                    v
                }
            };
            Document::new(Kind::Catalogue, &payload)
        }
        Command::Classify { file } => {
            let fam = load_curve(&read(file)?)?.family()?;
            let code = canonicalize(&orbit_type_of(&fam)?);
            Document::new(Kind::OrbitType, &OrbitTypePayload::new(&from_code(&code), &code))
        }
        Command::Equiv { file1, file2 } => {
            let a = load_curve(&read(file1)?)?;
            let b = load_curve(&read(file2)?)?;
            let eq = canonical_eq(&a.curve, &b.curve)?;
            Document::new(Kind::Report, &json!({ "equivalent": eq }))
        }
        Command::Intersect { file1, file2 } => {
            let a = load_curve(&read(file1)?)?;
            let b = load_curve(&read(file2)?)?;
            let x = intersection_number_with_budget(&a.curve, &b.curve, &mut budget)?;
            Document::new(Kind::Report, &json!({ "intersection": x }))
        }
        Command::Twist { along, power, file } => {
            let a = load_curve(&read(along)?)?;
            let b = load_curve(&read(file)?)?;
            let out = dehn_twist_with_budget(&a.curve, *power, &b.curve, &mut budget)?;
            multicurve_doc(&b.surface, &out)
        }
        Command::Complete { file } => {
            let l = load_curve(&read(file)?)?;
            let fam = complete_with_budget(&l.family()?, &mut budget)?;
            family_doc(&l.surface, &fam)
        }
        Command::Stabilizer { file } => {
            let d = read(file)?;
            let ot = if d.kind == Kind::OrbitType {
                let p: OrbitTypePayload = d.payload_as()?;
                let ot = p.orbit_type();
                ot.validate()
                    .map_err(|e| CliError::Domain(Error::InvalidCoordinates(e)))?;
                ot
            } else {
                orbit_type_of(&load_curve(&d)?.family()?)?
            };
            Document::new(Kind::Report, &report_value(&stabilizer_report(&ot)?)?)
        }
        Command::LargeAction { file1, file2, n } => {
            let (s, alpha, beta) = two_families(file1, file2)?;
            let c = large_action_with_budget(&alpha, &beta, *n, &mut budget)?;
            Document::new(Kind::Certificate, &certificate_value(&s, &alpha, &beta, &c))
        }
        Command::Noncommensurable { file1, file2, n } => {
            let (s, alpha, beta) = two_families(file1, file2)?;
            let c = noncommensurability_certificate(&alpha, &beta, *n)?;
            Document::new(
                Kind::Certificate,
                &json!({
                    "type": "noncommensurability",
                    "forward": c.forward.as_ref().map(|x| certificate_value(&s, &alpha, &beta, x)),
                    "backward": c.backward.as_ref().map(|x| certificate_value(&s, &beta, &alpha, x)),
                }),
            )
        }
        Command::Chain { g, m, q } => {
            let sig = SurfaceSignature::new(*g, *m, *q);
            let ch = self_commensurating_chain(sig)?;
            let s = SurfaceRef::builtin(sig);
            let disjoint = intersection_number_with_budget(&ch.a, &ch.b, &mut budget)? == 0;
            Document::new(
                Kind::Certificate,
                &json!({
                    "type": "chain",
                    "signature": sig,
                    "a": ch.a.weights(),
                    "b": ch.b.weights(),
                    "alpha": family_payload(&s, &ch.alpha),
                    "beta": family_payload(&s, &ch.beta),
                    "alpha_type": ch.alpha_type.to_string(),
                    "b_type": ch.b_type.to_string(),
                    "beta_type": ch.beta_type.to_string(),
                    "alpha_report": report_value(&ch.alpha_report)?,
                    "beta_report": report_value(&ch.beta_report)?,
                    "identity": ch.identity,
                    "verified": disjoint && ch.alpha_type != ch.b_type,
                }),
            )
        }
        Command::Surface { alias } => surface_doc(alias.parse()?)?,
        Command::Fixture { name } => {
            let (s, c) = fixture(name)?;
            multicurve_doc(&s, &c)
        }
    };
    Ok(doc.emit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_kind() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        let e = CliError::Domain(Error::NoChain(SurfaceSignature::new(1, 0, 0)));
        assert_eq!(e.exit_code(), 1);
        let v: Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["error"], "NoChain");
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run(["curvecx", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("orbits"));
    }

    #[test]
    fn seed_fixtures_are_indexed() {
        assert!(fixture("d4:0").is_ok());
        assert!(matches!(fixture("d4:100000"), Err(CliError::Domain(Error::IndexOutOfRange { .. }))));
        assert!(matches!(fixture("nonsense"), Err(CliError::Usage(_))));
    }
}
