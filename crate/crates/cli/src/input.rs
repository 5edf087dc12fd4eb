//! Surface documents and built-in surfaces.

use std::path::Path;

use clusterskein_core::laurent::{parse, LaurentError};
use clusterskein_core::skein::KnownLoop;
use clusterskein_core::surface::{builtin, validate, Builtin, SurfaceError, Tag, TagSpec, ValidationReport};
use clusterskein_core::{MarkedSurface, TaggedTriangulation, Triangulation};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {msg}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("unknown built-in surface `{0}` (expected disk:N, punctured-torus or punctured-digon)")]
    UnknownBuiltin(String),
    #[error("either a surface file or --builtin is required")]
    NoInput,
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown tag `{0}` (expected plain or notched)")]
    UnknownTag(String),
    #[error("loop `{name}`: {source}")]
    Loop { name: String, source: LaurentError },
    #[error("invalid triangulation: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edges {
    pub interior: Vec<String>,
    #[serde(default)]
    pub boundary: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagDoc {
    pub arc: String,
    pub ends: [String; 2],
    #[serde(default)]
    pub puncture_ends: [Option<String>; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDoc {
    pub name: String,
    pub laurent: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub genus: u32,
    #[serde(default)]
    pub boundary: Vec<u32>,
    #[serde(default)]
    pub punctures: u32,
    pub edges: Edges,
    pub triangles: Vec<[String; 3]>,
    #[serde(default)]
    pub tags: Vec<TagDoc>,
    #[serde(default)]
    pub isotopy_pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<LoopDoc>,
}

/// A loaded surface: the tagged triangulation plus declared data.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub tagged: TaggedTriangulation,
    pub isotopy_pairs: Vec<(usize, usize)>,
    pub loops: Vec<KnownLoop>,
}

impl Loaded {
    pub fn ideal(&self) -> &Triangulation {
        self.tagged.ideal()
    }
}

/// Either a validated load or the report explaining why the triangles do
/// not form a triangulation.
pub enum Checked {
    Valid(Loaded),
    Invalid(ValidationReport),
}

pub fn parse_builtin(spec: &str) -> Result<Builtin, InputError> {
    match spec {
        "punctured-torus" => Ok(Builtin::PuncturedTorus),
        "punctured-digon" => Ok(Builtin::PuncturedDigon),
        _ => spec
            .strip_prefix("disk:")
            .and_then(|n| n.parse().ok())
            .map(Builtin::Disk)
            .ok_or_else(|| InputError::UnknownBuiltin(spec.to_string())),
    }
}

pub fn load(path: Option<&Path>, builtin_spec: Option<&str>) -> Result<Loaded, InputError> {
    match check(path, builtin_spec)? {
        Checked::Valid(l) => Ok(l),
        Checked::Invalid(r) => Err(InputError::Invalid(r)),
    }
}

pub fn check(path: Option<&Path>, builtin_spec: Option<&str>) -> Result<Checked, InputError> {
    if let Some(spec) = builtin_spec {
        let t = builtin(parse_builtin(spec)?)?;
        return Ok(Checked::Valid(Loaded {
            tagged: TaggedTriangulation::from_ideal(t),
            isotopy_pairs: Vec::new(),
            loops: Vec::new(),
        }));
    }
    let path = path.ok_or(InputError::NoInput)?;
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: shown.clone(),
        source,
    })?;
    let doc: SurfaceDoc = serde_json::from_str(&text).map_err(|e| InputError::Json {
        path: shown,
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    from_doc(&doc)
}

fn tag(s: &str) -> Result<Tag, InputError> {
    match s {
        "plain" => Ok(Tag::Plain),
        "notched" => Ok(Tag::Notched),
        _ => Err(InputError::UnknownTag(s.to_string())),
    }
}

pub fn from_doc(doc: &SurfaceDoc) -> Result<Checked, InputError> {
    let surface = MarkedSurface::new(doc.genus, doc.boundary.clone(), doc.punctures)?;
    let names: Vec<String> = doc.edges.interior.iter().chain(&doc.edges.boundary).cloned().collect();
    let flags: Vec<bool> = doc
        .edges
        .interior
        .iter()
        .map(|_| false)
        .chain(doc.edges.boundary.iter().map(|_| true))
        .collect();
    let index = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| InputError::UnknownEdge(name.to_string()))
    };
    let mut triangles = Vec::with_capacity(doc.triangles.len());
    for tri in &doc.triangles {
        triangles.push([index(&tri[0])?, index(&tri[1])?, index(&tri[2])?]);
    }
    let report = validate(&surface, &names, &flags, &triangles);
    if !report.is_valid() {
        return Ok(Checked::Invalid(report));
    }
    let ideal = Triangulation::new(surface, names.clone(), flags, triangles)?;
    let specs = doc
        .tags
        .iter()
        .map(|t| {
            Ok(TagSpec {
                arc: t.arc.clone(),
                ends: [tag(&t.ends[0])?, tag(&t.ends[1])?],
                puncture_ends: t.puncture_ends.clone(),
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let tagged = TaggedTriangulation::from_specs(ideal, &specs)?;
    let isotopy_pairs = doc
        .isotopy_pairs
        .iter()
        .map(|[a, b]| Ok((index(a)?, index(b)?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    let table = tagged.ideal().var_table();
    let loops = doc
        .loops
        .iter()
        .map(|l| {
            let expr = parse(&table, &l.laurent).map_err(|source| InputError::Loop {
                name: l.name.clone(),
                source,
            })?;
            Ok(KnownLoop {
                name: l.name.clone(),
                expr,
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(Checked::Valid(Loaded {
        tagged,
        isotopy_pairs,
        loops,
    }))
}
