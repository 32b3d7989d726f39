//! Command-line surface: subcommands, JSON documents and SVG rendering.
//!
//! Tiling documents store rationals as `"p/q"` strings; certificate
//! documents store every integer as a decimal string so that arbitrarily
//! large plans survive the trip through JSON.

use std::fmt::{Display, Write as _};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{Cube, GeometryError, Tiling};
use crate::highdim::{
    materialize, plan_ratio, theorem2_params, theorem2_threshold, CubePlan, HighDimError,
};
use crate::planar::{plane_tiling, PlanarError};
use crate::rational::Rational;
use crate::threesize::{theorem5_params, theorem5_tiling, ThreeSizeError, ThreeSizePlan};
use crate::verify::{verify_cube_plan, verify_threesize_plan, verify_tiling, VerifyReport};
use crate::DEFAULT_MAX_PIECES;

pub const EXIT_VALID: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Current version written into every document.
pub const DOCUMENT_VERSION: u32 = 1;

/// Viewport edge length of rendered SVGs.
pub const SVG_VIEWPORT: u32 = 1000;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
];

#[derive(Debug, Parser)]
#[command(
    name = "cubetile",
    version,
    about = "Tile cubes with nearly equal subcubes, exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tile a square with n squares of at most two sizes.
    Plane {
        n: u64,
        /// Write the tiling document here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write an SVG drawing here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Certificate for tiling the unit d-cube with n cubes of at most d+2 sizes.
    Cube {
        d: u32,
        n: BigUint,
        /// Also report against the threshold for this ratio slack.
        #[arg(long)]
        epsilon: Option<Rational>,
        /// Build and verify the explicit tiling.
        #[arg(long)]
        materialize: bool,
        /// Largest piece count that may be materialized.
        #[arg(long, env = "CUBETILE_MAX_PIECES", default_value_t = DEFAULT_MAX_PIECES)]
        limit: u64,
        /// Write the certificate document here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Write the materialized tiling document here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tiling of a d-cube with sides 1, 1/2 and 1/(2^d-1) only.
    Threesize {
        d: u32,
        n: BigUint,
        #[arg(long)]
        materialize: bool,
        #[arg(long, env = "CUBETILE_MAX_PIECES", default_value_t = DEFAULT_MAX_PIECES)]
        limit: u64,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Smallest n from which d+2 sizes with ratio at most 1+epsilon suffice.
    Threshold { d: u32, epsilon: Rational },
    /// Verify a tiling or certificate document.
    Verify { file: PathBuf },
    /// Draw a planar tiling document as SVG.
    Render { tiling: PathBuf, svg: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("invalid cube in document: {0}")]
    Geometry(#[from] GeometryError),
    #[error("rendering needs a 2-dimensional tiling, got dimension {0}")]
    RenderDimension(usize),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    HighDim(#[from] HighDimError),
    #[error(transparent)]
    ThreeSize(#[from] ThreeSizeError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDocument {
    pub origin: Vec<Rational>,
    pub side: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingDocument {
    pub version: u32,
    pub dim: usize,
    pub outer: CubeDocument,
    pub pieces: Vec<CubeDocument>,
}

impl CubeDocument {
    fn from_cube(c: &Cube) -> Self {
        CubeDocument {
            origin: c.origin().to_vec(),
            side: c.side().clone(),
        }
    }

    fn into_cube(self) -> Result<Cube, GeometryError> {
        Cube::new(self.origin, self.side)
    }
}

impl TilingDocument {
    pub fn from_tiling(t: &Tiling) -> Self {
        TilingDocument {
            version: DOCUMENT_VERSION,
            dim: t.dim(),
            outer: CubeDocument::from_cube(t.outer()),
            pieces: t.pieces().iter().map(CubeDocument::from_cube).collect(),
        }
    }

    /// Pieces of the wrong dimension are kept so that verification can
    /// report them; nonpositive sides are rejected.
    pub fn into_tiling(self) -> Result<Tiling, CliError> {
        if self.version != DOCUMENT_VERSION {
            return Err(CliError::Version(self.version));
        }
        let outer = self.outer.into_cube()?;
        let pieces = self
            .pieces
            .into_iter()
            .map(CubeDocument::into_cube)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tiling::from_parts(self.dim, outer, pieces))
    }
}

mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateDocument {
    Theorem2 {
        version: u32,
        #[serde(with = "decimal")]
        d: u32,
        #[serde(with = "decimal")]
        n: BigUint,
        #[serde(with = "decimal")]
        a: BigUint,
        #[serde(with = "decimal")]
        c: u32,
        #[serde(with = "decimal")]
        m: BigUint,
        #[serde(with = "decimal")]
        k: BigUint,
        #[serde(with = "decimal_list")]
        x: Vec<BigUint>,
        #[serde(with = "decimal")]
        y1: BigUint,
    },
    Theorem5 {
        version: u32,
        #[serde(with = "decimal")]
        d: u32,
        #[serde(with = "decimal")]
        n: BigUint,
        #[serde(with = "decimal")]
        a: BigUint,
        #[serde(with = "decimal")]
        k: BigUint,
        #[serde(with = "decimal")]
        x1: BigUint,
        #[serde(with = "decimal")]
        x2: BigUint,
    },
}

/// A certificate after loading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Cube(CubePlan),
    ThreeSize(ThreeSizePlan),
}

impl Certificate {
    pub fn verify(&self) -> VerifyReport {
        match self {
            Certificate::Cube(p) => verify_cube_plan(p),
            Certificate::ThreeSize(p) => verify_threesize_plan(p),
        }
    }
}

impl CertificateDocument {
    pub fn from_cube_plan(p: &CubePlan) -> Self {
        CertificateDocument::Theorem2 {
            version: DOCUMENT_VERSION,
            d: p.d,
            n: p.n.clone(),
            a: p.a.clone(),
            c: p.c,
            m: p.m.clone(),
            k: p.k.clone(),
            x: p.x.clone(),
            y1: p.y1.clone(),
        }
    }

    pub fn from_threesize_plan(p: &ThreeSizePlan) -> Self {
        CertificateDocument::Theorem5 {
            version: DOCUMENT_VERSION,
            d: p.d,
            n: p.n.clone(),
            a: p.a.clone(),
            k: p.k.clone(),
            x1: p.x1.clone(),
            x2: p.x2.clone(),
        }
    }

    pub fn into_certificate(self) -> Result<Certificate, CliError> {
        match self {
            CertificateDocument::Theorem2 {
                version,
                d,
                n,
                a,
                c,
                m,
                k,
                x,
                y1,
            } => {
                check_version(version)?;
                Ok(Certificate::Cube(CubePlan {
                    d,
                    n,
                    a,
                    c,
                    m,
                    k,
                    x,
                    y1,
                }))
            }
            CertificateDocument::Theorem5 {
                version,
                d,
                n,
                a,
                k,
                x1,
                x2,
            } => {
                check_version(version)?;
                Ok(Certificate::ThreeSize(ThreeSizePlan { d, n, a, k, x1, x2 }))
            }
        }
    }
}

fn check_version(version: u32) -> Result<(), CliError> {
    if version == DOCUMENT_VERSION {
        Ok(())
    } else {
        Err(CliError::Version(version))
    }
}

/// Either kind of document; certificates carry a `kind` field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tiling(TilingDocument),
    Certificate(CertificateDocument),
}

pub fn parse_document(path: &Path, value: serde_json::Value) -> Result<Document, CliError> {
    let json_err = |source| CliError::Json {
        path: path.to_path_buf(),
        source,
    };
    if value.get("kind").is_some() {
        serde_json::from_value(value)
            .map(Document::Certificate)
            .map_err(json_err)
    } else {
        serde_json::from_value(value)
            .map(Document::Tiling)
            .map_err(json_err)
    }
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let value = serde_json::from_reader(BufReader::new(file)).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    parse_document(path, value)
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    serde_json::to_writer(&mut out, doc).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    out.write_all(b"\n").map_err(io_err)?;
    out.flush().map_err(io_err)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// SVG 1.1 drawing of a planar tiling. The outer square fills the viewport,
/// the y axis points up, and each distinct side gets its own fill.
pub fn render_svg(t: &Tiling) -> Result<String, CliError> {
    if t.dim() != 2 {
        return Err(CliError::RenderDimension(t.dim()));
    }
    let outer = t.outer();
    let scale = Rational::from(SVG_VIEWPORT) / outer.side();
    let top = Rational::from(SVG_VIEWPORT);
    let mut sides: Vec<&Rational> = t.pieces().iter().map(|c| c.side()).collect();
    sides.sort();
    sides.dedup();
    let fmt = |v: Rational| v.to_decimal_string(3);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{v}" height="{v}" viewBox="0 0 {v} {v}">"#,
        v = SVG_VIEWPORT
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{v}" height="{v}" fill="white"/>"#,
        v = SVG_VIEWPORT
    );
    let _ = writeln!(svg, r#"<g stroke="black" stroke-width="0.5">"#);
    for c in t.pieces() {
        let x = (&c.origin()[0] - &outer.origin()[0]) * &scale;
        let y = &top - (&c.origin()[1] - &outer.origin()[1] + c.side()) * &scale;
        let w = c.side() * &scale;
        let class = sides.binary_search(&c.side()).expect("side is listed");
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{}" width="{w}" height="{w}" fill="{}"/>"#,
            fmt(x),
            fmt(y),
            PALETTE[class % PALETTE.len()],
            w = fmt(w),
        );
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

fn print_report(label: &str, report: &VerifyReport) {
    let status = if report.valid { "valid" } else { "INVALID" };
    println!("{label}: {status}");
    println!("  {report}");
    println!("  {} distinct sizes", report.distinct_sides.len());
    for v in &report.violations {
        println!("  violation: {v}");
    }
}

fn exit_for(report: &VerifyReport) -> i32 {
    if report.valid {
        EXIT_VALID
    } else {
        EXIT_INVALID
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_plane(n: u64, json: Option<&Path>, svg: Option<&Path>) -> Result<i32, CliError> {
    if n <= 3 {
        return Err(CliError::Usage(format!(
            "n = {n} is out of range; need n >= 4"
        )));
    }
    let tiling = plane_tiling(n)?;
    let report = verify_tiling(&tiling);
    print_report("tiling", &report);
    if let Some(path) = json {
        write_json(path, &TilingDocument::from_tiling(&tiling))?;
    }
    if let Some(path) = svg {
        write_text(path, &render_svg(&tiling)?)?;
    }
    Ok(exit_for(&report))
}

struct Outputs<'a> {
    materialize: bool,
    limit: u64,
    certificate: Option<&'a Path>,
    json: Option<&'a Path>,
}

fn finish_materialized(tiling: &Tiling, json: Option<&Path>) -> Result<i32, CliError> {
    let report = verify_tiling(tiling);
    print_report("tiling", &report);
    if let Some(path) = json {
        write_json(path, &TilingDocument::from_tiling(tiling))?;
    }
    Ok(exit_for(&report))
}

fn refuse_materialize(n: &BigUint, limit: u64) -> CliError {
    CliError::Usage(format!(
        "materialization refused: {n} pieces exceed the limit {limit}; use the certificate"
    ))
}

fn cmd_cube(
    d: u32,
    n: &BigUint,
    epsilon: Option<&Rational>,
    out: Outputs,
) -> Result<i32, CliError> {
    let plan = theorem2_params(d, n)?;
    println!(
        "plan: d = {}, n = {}, a = {}, c = {}, m = {}, k = {}",
        plan.d, plan.n, plan.a, plan.c, plan.m, plan.k
    );
    let ratio = plan_ratio(&plan);
    println!("ratio: {ratio}");
    if let Some(eps) = epsilon {
        let threshold = theorem2_threshold(d, eps)?;
        println!("threshold for epsilon {eps}: {threshold}");
        println!("n >= threshold: {}", yes_no(*n >= threshold));
        println!(
            "ratio <= 1 + epsilon: {}",
            yes_no(ratio <= Rational::one() + eps)
        );
    }
    let report = verify_cube_plan(&plan);
    print_report("certificate", &report);
    if let Some(path) = out.certificate {
        write_json(path, &CertificateDocument::from_cube_plan(&plan))?;
    }
    if !report.valid || !out.materialize {
        return Ok(exit_for(&report));
    }
    let tiling = materialize(&plan, out.limit).map_err(|e| match e {
        HighDimError::MaterializationRefused { n, limit } => refuse_materialize(&n, limit),
        other => other.into(),
    })?;
    finish_materialized(&tiling, out.json)
}

fn cmd_threesize(d: u32, n: &BigUint, out: Outputs) -> Result<i32, CliError> {
    let plan = theorem5_params(d, n)?;
    println!(
        "plan: d = {}, n = {}, a = {}, k = {}, x1 = {}, x2 = {}",
        plan.d, plan.n, plan.a, plan.k, plan.x1, plan.x2
    );
    for (side, count) in plan.sizes() {
        println!("  side {side}: {count} pieces");
    }
    let report = verify_threesize_plan(&plan);
    print_report("certificate", &report);
    if let Some(path) = out.certificate {
        write_json(path, &CertificateDocument::from_threesize_plan(&plan))?;
    }
    if !report.valid || !out.materialize {
        return Ok(exit_for(&report));
    }
    let tiling = theorem5_tiling(&plan, out.limit).map_err(|e| match e {
        ThreeSizeError::MaterializationRefused { n, limit } => refuse_materialize(&n, limit),
        other => other.into(),
    })?;
    finish_materialized(&tiling, out.json)
}

fn cmd_verify(path: &Path) -> Result<i32, CliError> {
    let report = match read_document(path)? {
        Document::Tiling(doc) => {
            let report = verify_tiling(&doc.into_tiling()?);
            print_report("tiling", &report);
            report
        }
        Document::Certificate(doc) => {
            let report = doc.into_certificate()?.verify();
            print_report("certificate", &report);
            report
        }
    };
    Ok(exit_for(&report))
}

fn cmd_render(tiling: &Path, svg: &Path) -> Result<i32, CliError> {
    let doc = match read_document(tiling)? {
        Document::Tiling(doc) => doc,
        Document::Certificate(_) => {
            return Err(CliError::Usage(
                "render needs a tiling document, not a certificate".into(),
            ))
        }
    };
    write_text(svg, &render_svg(&doc.into_tiling()?)?)?;
    Ok(EXIT_VALID)
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Plane { n, json, svg } => cmd_plane(*n, json.as_deref(), svg.as_deref()),
        Command::Cube {
            d,
            n,
            epsilon,
            materialize,
            limit,
            certificate,
            json,
        } => cmd_cube(
            *d,
            n,
            epsilon.as_ref(),
            Outputs {
                materialize: *materialize,
                limit: *limit,
                certificate: certificate.as_deref(),
                json: json.as_deref(),
            },
        ),
        Command::Threesize {
            d,
            n,
            materialize,
            limit,
            certificate,
            json,
        } => cmd_threesize(
            *d,
            n,
            Outputs {
                materialize: *materialize,
                limit: *limit,
                certificate: certificate.as_deref(),
                json: json.as_deref(),
            },
        ),
        Command::Threshold { d, epsilon } => theorem2_threshold(*d, epsilon)
            .map(|t| {
                println!("{t}");
                EXIT_VALID
            })
            .map_err(CliError::from),
        Command::Verify { file } => cmd_verify(file),
        Command::Render { tiling, svg } => cmd_render(tiling, svg),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}
