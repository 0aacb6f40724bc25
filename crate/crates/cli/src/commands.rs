use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mskkt::graph::{Graph, VertexSet};
use mskkt::kkt::{
    classify_approx, classify_rationalized, obstructions, ParametricProgram, StationarySet, SupportSolution,
};
use mskkt::rational::{int, rationalize, Rational};
use mskkt::replicator::{integrate, Trajectory};
use mskkt::simplex::VertexFamily;
use mskkt::structure::{
    detect_generalized_star, genstar_kkt_point, is_highly_regular, reduce, reduced_kkt_check,
    shared_core_analysis, two_block_analysis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::parse::{parse_family, parse_point, rational_arg, read_graph, GraphFormat};
use crate::report::{self, *};

pub const DEFAULT_MAX_N: usize = 12;
pub const MAX_N_ENV: &str = "MSKKT_MAX_N";
/// Residual below which a replicator run counts as converged.
pub const CONVERGED_RESIDUAL: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(name = "mskkt", version, about = "KKT points of xᵀ(A + cI)x over the simplex of a graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file (DIMACS, edge list or JSON; vertices are 1-based).
    pub graph: PathBuf,

    #[arg(long, value_enum, default_value = "auto")]
    pub format: GraphFormat,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a point as KKT, generalized-only or not stationary.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
        /// Comma-separated rationals, e.g. 1/4,1/4,1/2.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Solve for stationary points on every support.
    Scan {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
        /// Only supports with at most this many vertices.
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// Integrate replicator dynamics from random interior starts.
    Replicator {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 10)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500.0, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
        dt: f64,
        /// Tolerance of the approximate classification.
        #[arg(long, default_value_t = mskkt::kkt::DEFAULT_EPSILON)]
        epsilon: f64,
        /// Denominator bound used when rationalizing terminal states.
        #[arg(long, default_value_t = mskkt::kkt::DEFAULT_MAX_DENOMINATOR)]
        max_denominator: u64,
        /// Write every trajectory as line records to this file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Reduce over a vertex family and run the block, star and shared-core
    /// analyses that apply.
    Structure {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
        /// Classes separated by '|', vertices by ',', e.g. "1,2|3".
        #[arg(long)]
        family: String,
        /// Parameters at which the uniform point of the family is checked.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            value_parser = rational_arg,
            default_values = ["-1", "0", "1/2", "1", "2"]
        )]
        sample_c: Vec<Rational>,
    },
}

struct Loaded {
    graph: Graph,
    info: InputInfo,
}

fn load(input: &GraphInput) -> Result<Loaded> {
    let (graph, bytes, format) = read_graph(&input.graph, input.format)?;
    let info = InputInfo::new(input.graph.display().to_string(), format.as_str(), &bytes);
    Ok(Loaded { graph, info })
}

fn emit(report: &AnalysisReport, out: Option<&Path>) -> Result<()> {
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(json.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Internal(format!("writing report: {e}")))
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let (input, report) = match &cli.command {
        Command::Classify { input, c, point } => (input, classify(input, c, point)?),
        Command::Scan { input, c, max_support } => (input, scan(input, c, *max_support)?),
        Command::Replicator {
            input,
            c,
            starts,
            seed,
            t_end,
            dt,
            epsilon,
            max_denominator,
            records,
        } => {
            let opts = ReplicatorOptions {
                c: *c,
                starts: *starts,
                seed: *seed,
                t_end: *t_end,
                dt: *dt,
                epsilon: *epsilon,
                max_denominator: *max_denominator,
                records: records.as_deref(),
            };
            (input, replicator(input, &opts)?)
        }
        Command::Structure {
            input,
            c,
            family,
            sample_c,
        } => (input, structure(input, c, family, sample_c)?),
    };
    emit(&report, input.out.as_deref())
}

fn classify(input: &GraphInput, c: &Rational, text: &str) -> Result<AnalysisReport> {
    let loaded = load(input)?;
    let x = parse_point(text, loaded.graph.n())?;
    let cert = ParametricProgram::new(&loaded.graph, c.clone()).classify(&x)?;
    let result = ClassifyResult {
        c: report::rat(c),
        point: report::point(&x),
        support: labels(&x.support()),
        certificate: Certificate::from(&cert),
    };
    Ok(AnalysisReport::new(loaded.info, &loaded.graph, CommandResult::Classify(result)))
}

fn max_n() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MAX_N_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn scan(input: &GraphInput, c: &Rational, max_support: Option<usize>) -> Result<AnalysisReport> {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let cap = max_n()?;
    if max_support.is_none() && g.n() > cap {
        return Err(CliError::Input(format!(
            "graph has {} vertices; exhaustive support scans are limited to {cap} \
             (pass --max-support or raise {MAX_N_ENV})",
            g.n()
        )));
    }
    if max_support == Some(0) {
        return Err(CliError::Input("--max-support must be at least 1".into()));
    }
    let limit = max_support.unwrap_or(g.n()).min(g.n());
    let program = ParametricProgram::new(g, c.clone());
    let entries = program.scan_supports(Some(limit))?;
    let supports: Vec<ScanSupport> = entries
        .iter()
        .map(|e| {
            let realized = e.solution.is_realized();
            let found = obstructions(g, &e.support);
            let explained = found.iter().any(|o| o.case.blocked_c() == *c);
            let points = e
                .solution
                .points()
                .iter()
                .zip(&e.certificates)
                .map(|(x, cert)| ScanPoint {
                    coords: report::point(x),
                    verdict: cert.verdict.as_str(),
                    lambda: report::rat(&cert.lambda),
                })
                .collect();
            let (solution, affine) = match &e.solution {
                SupportSolution::Empty => ("none", None),
                SupportSolution::Unique(_) => ("unique", None),
                SupportSolution::NonUnique(f) => (
                    "degenerate",
                    Some(AffineJson {
                        base: rats(&f.base),
                        directions: f.directions.iter().map(|d| rats(d)).collect(),
                    }),
                ),
            };
            ScanSupport {
                support: labels(&e.support),
                realized,
                solution,
                points,
                affine,
                obstructions: found.iter().map(ObstructionJson::from).collect(),
                absence_explained: (!realized).then_some(explained),
            }
        })
        .collect();
    let result = ScanResult {
        c: report::rat(c),
        max_support: limit,
        supports_examined: supports.len(),
        supports_realized: supports.iter().filter(|s| s.realized).count(),
        supports,
    };
    Ok(AnalysisReport::new(loaded.info, g, CommandResult::Scan(result)))
}

pub struct ReplicatorOptions<'a> {
    pub c: f64,
    pub starts: usize,
    pub seed: u64,
    pub t_end: f64,
    pub dt: f64,
    pub epsilon: f64,
    pub max_denominator: u64,
    pub records: Option<&'a Path>,
}

/// Interior starting points, uniform on the simplex.
pub fn random_starts(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-12).collect();
            let total: f64 = w.iter().sum();
            w.iter().map(|v| v / total).collect()
        })
        .collect()
}

fn replicator(input: &GraphInput, o: &ReplicatorOptions<'_>) -> Result<AnalysisReport> {
    let bad = |flag: &str, v: f64| CliError::Input(format!("--{flag} must be positive and finite, got {v}"));
    if !o.c.is_finite() {
        return Err(CliError::Input(format!("--c must be finite, got {}", o.c)));
    }
    if !(o.dt.is_finite() && o.dt > 0.0) {
        return Err(bad("dt", o.dt));
    }
    if !(o.t_end.is_finite() && o.t_end > 0.0) {
        return Err(bad("t-end", o.t_end));
    }
    if !(o.epsilon.is_finite() && o.epsilon > 0.0) {
        return Err(bad("epsilon", o.epsilon));
    }
    if o.max_denominator == 0 {
        return Err(CliError::Input("--max-denominator must be positive".into()));
    }
    let loaded = load(input)?;
    let g = &loaded.graph;
    let c_exact = rationalize(o.c, o.max_denominator);
    let program = ParametricProgram::new(g, c_exact.clone());

    let mut trajectories: Vec<Trajectory> = Vec::with_capacity(o.starts);
    let mut runs = Vec::with_capacity(o.starts);
    for (index, x0) in random_starts(g.n(), o.starts, o.seed).into_iter().enumerate() {
        let t = integrate(g, o.c, &x0, o.t_end, o.dt)?;
        let residual = t.terminal_residual(g);
        let (approx, _) = classify_approx(g, o.c, t.terminal(), o.epsilon)?;
        let (exact_point, cert) = classify_rationalized(&program, t.terminal(), o.max_denominator)?;
        let expected_steps = (o.t_end / o.dt).ceil() as usize;
        runs.push(ReplicatorRun {
            index: index + 1,
            start: floats(&x0),
            terminal: floats(t.terminal()),
            steps: t.steps(),
            time: float(*t.times.last().unwrap_or(&0.0)),
            stopped_early: t.steps() < expected_steps,
            residual: float(residual.total()),
            stationarity_residual: float(residual.stationarity),
            complementarity_residual: float(residual.complementarity),
            objective_start: float(t.objective[0]),
            objective_end: float(*t.objective.last().unwrap_or(&0.0)),
            max_objective_decrease: float(t.max_decrease()),
            monotone: t.is_monotone(1e-9),
            approx_verdict: approx.as_str(),
            rationalized: RationalizedPoint {
                c: report::rat(&c_exact),
                point: report::point(&exact_point),
                verdict: cert.verdict.as_str(),
            },
        });
        if o.records.is_some() {
            trajectories.push(t);
        }
    }
    if let Some(path) = o.records {
        write_records(path, &trajectories)?;
    }
    let converged = runs
        .iter()
        .filter(|r| r.residual.parse::<f64>().is_ok_and(|v| v < CONVERGED_RESIDUAL))
        .count();
    let monotone = runs.iter().filter(|r| r.monotone).count();
    let result = ReplicatorResult {
        c: float(o.c),
        starts: o.starts,
        seed: o.seed,
        t_end: float(o.t_end),
        dt: float(o.dt),
        epsilon: float(o.epsilon),
        max_denominator: o.max_denominator,
        runs,
        converged,
        monotone,
    };
    Ok(AnalysisReport::new(loaded.info, g, CommandResult::Replicator(result)))
}

fn write_records(path: &Path, trajectories: &[Trajectory]) -> Result<()> {
    let io_err = |e: std::io::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    for (k, t) in trajectories.iter().enumerate() {
        writeln!(file, "# run {} c {:.16e} mode {}", k + 1, t.c, t.step_mode.as_str()).map_err(io_err)?;
        t.write_records(&mut file).map_err(io_err)?;
    }
    file.flush().map_err(io_err)
}

fn structure(input: &GraphInput, c: &Rational, text: &str, sample_c: &[Rational]) -> Result<AnalysisReport> {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let n = g.n();
    let fam = parse_family(text, n)?;
    let highly_regular = is_highly_regular(g, &fam)?;
    let rp = reduce(g, c, &fam)?;
    let mut notes = Vec::new();
    if !highly_regular {
        notes.push(
            "family is not highly regular: reduced stationarity need not transfer to the graph".to_string(),
        );
    }

    let program = ParametricProgram::new(g, c.clone());
    let lift_and_classify = |y: &[Rational]| -> Result<ReducedPoint> {
        let x = rp.lift(y, n)?;
        Ok(ReducedPoint {
            y: rats(y),
            lifted: report::point(&x),
            verdict: program.classify(&x)?.verdict.as_str(),
        })
    };
    let (reduced_solution, reduced_points) = match rp.solve() {
        StationarySet::Empty => ("none", vec![]),
        StationarySet::Unique(y) => ("unique", vec![lift_and_classify(&y)?]),
        StationarySet::NonUnique { interior, .. } => (
            "degenerate",
            interior.iter().map(|y| lift_and_classify(y)).collect::<Result<_>>()?,
        ),
    };

    let union = fam.union();
    let total = int(union.len() as i64);
    let uniform: Vec<Rational> = fam
        .classes()
        .iter()
        .map(|v| int(v.len() as i64) / &total)
        .collect();
    let mut samples = Vec::new();
    for s in sample_c {
        let rps = reduce(g, s, &fam)?;
        let x = rps.lift(&uniform, n)?;
        samples.push(SampleCheck {
            c: report::rat(s),
            y: rats(&uniform),
            reduced_stationary: reduced_kkt_check(&rps, &uniform)?,
            lifted: report::point(&x),
            verdict: ParametricProgram::new(g, s.clone()).classify(&x)?.verdict.as_str(),
        });
    }

    let two_block = if fam.k() == 2 && highly_regular {
        let (v1, v2) = (&fam.classes()[0], &fam.classes()[1]);
        let r = two_block_analysis(g, v1, v2)?;
        let weights = r.weights(c);
        let point = r.point(c, n)?;
        let point_verdict = match &point {
            Some(x) => Some(program.classify(x)?.verdict.as_str()),
            None => None,
        };
        Some(TwoBlockJson {
            alpha: report::rat(&r.alpha),
            beta: report::rat(&r.beta),
            regular_case: r.regular_case,
            c_star: r.c_star().map(|v| report::rat(&v)),
            interval: r.interval().map(|(a, b)| [report::rat(&a), report::rat(&b)]),
            whole_segment_stationary: r.whole_segment_stationary(c),
            y: weights.map(|(a, b)| [report::rat(&a), report::rat(&b)]),
            point: point.as_ref().map(report::point),
            point_verdict,
        })
    } else {
        if fam.k() == 2 {
            notes.push("two-block analysis skipped: family is not highly regular".into());
        }
        None
    };

    let star = if fam.k() == 2 { star_report(g, &fam, c, &program)? } else { None };
    let shared_core = shared_core_report(g, &union, c, &mut notes)?;

    let result = StructureResult {
        c: report::rat(c),
        family: fam.classes().iter().map(labels).collect(),
        highly_regular,
        densities: rp.densities.densities.iter().map(|r| rats(r)).collect(),
        class_sizes: rp.densities.sizes.clone(),
        reduced_matrix: rp.matrix().iter().map(|r| rats(r)).collect(),
        reduced_solution,
        reduced_points,
        samples,
        two_block,
        star,
        shared_core,
        notes,
    };
    Ok(AnalysisReport::new(loaded.info, g, CommandResult::Structure(result)))
}

fn star_report(
    g: &Graph,
    fam: &VertexFamily,
    c: &Rational,
    program: &ParametricProgram<'_>,
) -> Result<Option<StarJson>> {
    let (a, b) = (&fam.classes()[0], &fam.classes()[1]);
    let Some(star) = detect_generalized_star(g, b, a).or_else(|| detect_generalized_star(g, a, b)) else {
        return Ok(None);
    };
    let (point, verdict, inapplicable) = match genstar_kkt_point(g, &star, c) {
        Ok(x) => {
            let v = program.classify(&x)?.verdict.as_str();
            (Some(report::point(&x)), Some(v), None)
        }
        Err(mskkt::Error::StarInapplicable { .. }) => (
            None,
            None,
            Some(format!("c lies in [1, {}]", star.b)),
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(Some(StarJson {
        core: labels(&star.core),
        periphery: labels(&star.periphery),
        d: star.d,
        b: star.b,
        point,
        verdict,
        inapplicable,
    }))
}

/// Runs the shared-core analysis on the maximal cliques of the subgraph
/// induced by `union`, when there are at least two of them.
fn shared_core_report(
    g: &Graph,
    union: &VertexSet,
    c: &Rational,
    notes: &mut Vec<String>,
) -> Result<Option<SharedCoreJson>> {
    let sub = g.induced_subgraph(union)?;
    let cliques: Vec<VertexSet> = sub
        .graph
        .maximal_cliques()
        .into_iter()
        .map(|cl| VertexSet::new(cl.iter().map(|v| sub.original[v])))
        .collect();
    if cliques.len() < 2 {
        return Ok(None);
    }
    match shared_core_analysis(g, &cliques, c) {
        Ok(r) => Ok(Some(SharedCoreJson {
            cliques: cliques.iter().map(labels).collect(),
            q: r.q,
            b: r.star.b,
            c0: report::rat(&r.c0),
            point: report::point(&r.point),
            verdict: r.verdict.as_str(),
            outside_hull: r.outside_hull,
            differs_from_mean: r.differs_from_mean,
        })),
        Err(mskkt::Error::SharedCore(reason)) => {
            notes.push(format!("shared-core analysis not applicable: {reason}"));
            Ok(None)
        }
        Err(mskkt::Error::StarInapplicable { b, .. }) => {
            notes.push(format!("shared-core analysis not applicable: c lies in [1, {b}]"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_are_interior_and_reproducible() {
        let a = random_starts(5, 3, 7);
        assert_eq!(a, random_starts(5, 3, 7));
        assert_ne!(a, random_starts(5, 3, 8));
        for x in &a {
            assert!(x.iter().all(|&v| v > 0.0));
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
