//! JSON report model. Rationals serialize as `"num/den"` strings and floats
//! as strings carrying 17 significant digits.

use mskkt::graph::{Graph, VertexSet};
use mskkt::kkt::{KktCertificate, Obstruction};
use mskkt::rational::{format_rational, Rational};
use mskkt::simplex::SimplexPoint;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn floats(v: &[f64]) -> Vec<String> {
    v.iter().map(|&x| float(x)).collect()
}

pub fn labels(s: &VertexSet) -> Vec<usize> {
    s.labels()
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub input: InputInfo,
    pub graph: GraphSummary,
    pub result: CommandResult,
}

impl AnalysisReport {
    pub fn new(input: InputInfo, g: &Graph, result: CommandResult) -> Self {
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool: Tool::current(),
            input,
            graph: GraphSummary::of(g),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: "mskkt",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub format: &'static str,
    pub sha256: String,
}

impl InputInfo {
    pub fn new(path: String, format: &'static str, bytes: &[u8]) -> Self {
        InputInfo {
            path,
            format,
            sha256: format!("{:x}", Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edge_count: usize,
    pub degree_sequence: Vec<usize>,
    pub clique_number: usize,
    pub maximal_clique_count: usize,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edge_count: g.edge_count(),
            degree_sequence: g.degree_sequence(),
            clique_number: g.clique_number(),
            maximal_clique_count: g.maximal_cliques().len(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum CommandResult {
    Classify(ClassifyResult),
    Scan(ScanResult),
    Replicator(ReplicatorResult),
    Structure(StructureResult),
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub verdict: &'static str,
    pub lambda: String,
    pub mu: Vec<String>,
    /// 1-based vertex violating the failed condition.
    pub witness: Option<usize>,
}

impl From<&KktCertificate> for Certificate {
    fn from(c: &KktCertificate) -> Self {
        Certificate {
            verdict: c.verdict.as_str(),
            lambda: rat(&c.lambda),
            mu: rats(&c.mu),
            witness: c.witness.map(|w| w + 1),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyResult {
    pub c: String,
    pub point: Vec<String>,
    pub support: Vec<usize>,
    #[serde(flatten)]
    pub certificate: Certificate,
}

#[derive(Debug, Serialize)]
pub struct ScanResult {
    pub c: String,
    pub max_support: usize,
    pub supports_examined: usize,
    pub supports_realized: usize,
    pub supports: Vec<ScanSupport>,
}

#[derive(Debug, Serialize)]
pub struct ScanSupport {
    pub support: Vec<usize>,
    pub realized: bool,
    /// `unique`, `degenerate` or `none`.
    pub solution: &'static str,
    pub points: Vec<ScanPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineJson>,
    pub obstructions: Vec<ObstructionJson>,
    /// For absent supports, whether an obstruction blocks this `c`.
    pub absence_explained: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct ScanPoint {
    pub coords: Vec<String>,
    pub verdict: &'static str,
    pub lambda: String,
}

#[derive(Debug, Serialize)]
pub struct AffineJson {
    pub base: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ObstructionJson {
    pub case: &'static str,
    pub blocks_c: String,
    /// 1-based `(i1, i2, i3)`.
    pub triple: [usize; 3],
}

impl From<&Obstruction> for ObstructionJson {
    fn from(o: &Obstruction) -> Self {
        let (a, b, c) = o.triple;
        ObstructionJson {
            case: o.case.label(),
            blocks_c: rat(&o.case.blocked_c()),
            triple: [a + 1, b + 1, c + 1],
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReplicatorResult {
    pub c: String,
    pub starts: usize,
    pub seed: u64,
    pub t_end: String,
    pub dt: String,
    pub epsilon: String,
    pub max_denominator: u64,
    pub runs: Vec<ReplicatorRun>,
    pub converged: usize,
    pub monotone: usize,
}

#[derive(Debug, Serialize)]
pub struct ReplicatorRun {
    pub index: usize,
    pub start: Vec<String>,
    pub terminal: Vec<String>,
    pub steps: usize,
    pub time: String,
    pub stopped_early: bool,
    pub residual: String,
    pub stationarity_residual: String,
    pub complementarity_residual: String,
    pub objective_start: String,
    pub objective_end: String,
    pub max_objective_decrease: String,
    pub monotone: bool,
    pub approx_verdict: &'static str,
    pub rationalized: RationalizedPoint,
}

#[derive(Debug, Serialize)]
pub struct RationalizedPoint {
    pub c: String,
    pub point: Vec<String>,
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct StructureResult {
    pub c: String,
    pub family: Vec<Vec<usize>>,
    pub highly_regular: bool,
    pub densities: Vec<Vec<String>>,
    pub class_sizes: Vec<usize>,
    pub reduced_matrix: Vec<Vec<String>>,
    /// `unique`, `degenerate` or `none`.
    pub reduced_solution: &'static str,
    pub reduced_points: Vec<ReducedPoint>,
    /// Barycenter of the family union, checked at every sampled `c`.
    pub samples: Vec<SampleCheck>,
    pub two_block: Option<TwoBlockJson>,
    pub star: Option<StarJson>,
    pub shared_core: Option<SharedCoreJson>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ReducedPoint {
    pub y: Vec<String>,
    pub lifted: Vec<String>,
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SampleCheck {
    pub c: String,
    pub y: Vec<String>,
    pub reduced_stationary: bool,
    pub lifted: Vec<String>,
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct TwoBlockJson {
    pub alpha: String,
    pub beta: String,
    pub regular_case: bool,
    pub c_star: Option<String>,
    pub interval: Option<[String; 2]>,
    pub whole_segment_stationary: bool,
    pub y: Option<[String; 2]>,
    pub point: Option<Vec<String>>,
    pub point_verdict: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct StarJson {
    pub core: Vec<usize>,
    pub periphery: Vec<usize>,
    pub d: usize,
    pub b: usize,
    pub point: Option<Vec<String>>,
    pub verdict: Option<&'static str>,
    pub inapplicable: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SharedCoreJson {
    pub cliques: Vec<Vec<usize>>,
    pub q: usize,
    pub b: usize,
    pub c0: String,
    pub point: Vec<String>,
    pub verdict: &'static str,
    pub outside_hull: bool,
    pub differs_from_mean: bool,
}

pub fn point(x: &SimplexPoint) -> Vec<String> {
    x.to_strings()
}
