//! Command-line front end: problem-file ingestion, subcommand dispatch,
//! and report formatting.
//!
//! Exit codes: 0 for success or a conformant/applicable result, 1 for a
//! failed check, absent path, non-convergence or counterexample, 2 for
//! input errors (bad file, bad flags, unknown labels or demo names).

use std::collections::BTreeSet;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic;
use crate::hypothesis::{HypothesisReport, InstanceError, ProblemInstance, Witness};
use crate::metric::{FiniteMetricSpace, MetricError, Subspace, SubspaceError};
use crate::oracle::{self, CoincidenceSummary};
use crate::relation::{FiniteRelation, MapError, PointId, RelationError, SelfMap};
use crate::solver::{joint_picard, FiniteSystem, IterationTrace, SolveOutcome, SolverConfig};
use crate::validator::{run_conformance, ConformanceOutcome, GeneratorConfig};

/// On-disk problem document. All keys required except `subspace_y` and
/// `alpha`; distances are row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub space: SpaceDoc,
    pub relation: RelationDoc,
    pub maps: MapsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace_y: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub labels: Vec<String>,
    pub distances: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsDoc {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed problem file: {0}")]
    Document(#[from] serde_json::Error),
    #[error("invalid metric: {0}")]
    Metric(#[from] MetricError),
    #[error("invalid relation: {0}")]
    Relation(#[from] RelationError),
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
    #[error("invalid subspace: {0}")]
    Subspace(#[from] SubspaceError),
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceError),
}

/// Parse and validate a problem document into an instance. The metric
/// axioms are re-checked on load and violations name their witnesses.
pub fn parse_problem(text: &str) -> Result<ProblemInstance, ParseError> {
    let doc: ProblemFile = serde_json::from_str(text)?;
    instance_from_file(&doc)
}

pub fn instance_from_file(doc: &ProblemFile) -> Result<ProblemInstance, ParseError> {
    let space = FiniteMetricSpace::new(doc.space.labels.clone(), doc.space.distances.clone())?;
    let n = space.len();
    let relation = FiniteRelation::new(n, doc.relation.edges.iter().copied())?;
    let f = SelfMap::new(doc.maps.f.clone(), n)?;
    let g = SelfMap::new(doc.maps.g.clone(), n)?;
    let y = doc
        .subspace_y
        .as_ref()
        .map(|members| Subspace::new(members.iter().copied(), n))
        .transpose()?;
    Ok(ProblemInstance::new(space, relation, f, g, y, doc.alpha)?)
}

/// Render an instance back into the document form (used to emit fuzz
/// counterexamples as runnable problem files).
pub fn file_from_instance(inst: &ProblemInstance) -> ProblemFile {
    ProblemFile {
        space: SpaceDoc {
            labels: inst.space.labels().to_vec(),
            distances: inst.space.rows(),
        },
        relation: RelationDoc {
            edges: inst
                .relation
                .edges()
                .map(|(a, b)| (a.index(), b.index()))
                .collect(),
        },
        maps: MapsDoc {
            f: inst.f.table().iter().map(|p| p.index()).collect(),
            g: inst.g.table().iter().map(|p| p.index()).collect(),
        },
        subspace_y: Some(inst.y.members().iter().map(|p| p.index()).collect()),
        alpha: inst.alpha,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "coincide",
    version,
    about = "Coincidence points of a map pair on a finite metric space with a binary relation: \
             hypothesis checking, joint Picard iteration, enumeration, and conformance fuzzing"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the instance's relation (property flags and order labels).
    Classify { file: String },
    /// Check every hypothesis and report which claims apply. Exit 0 when
    /// the existence bundle applies.
    Check { file: String },
    /// Run the joint Picard iteration from a labelled starting point.
    Solve {
        file: String,
        /// Label of the starting point.
        #[arg(long)]
        x0: String,
        /// Residual tolerance (analytic mode; finite instances converge
        /// exactly).
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Iteration cap.
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
    },
    /// Enumerate coincidence points, points of coincidence and common
    /// fixed points by brute force.
    Enumerate { file: String },
    /// Shortest relation path between two labelled points.
    Path {
        file: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Fuzz the theorems on seeded random instances against the oracle.
    /// Exit 0 on zero counterexamples.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
    /// Run a built-in demonstration: example1, example2, banach-universal.
    Demo { name: String },
}

/// Entry point used by `main`: parse `argv`, run, print to stdout, and
/// return the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut stdout = std::io::stdout();
    dispatch_to(args, &mut stdout)
}

/// Like [`dispatch`] but writing reports to the supplied writer.
pub fn dispatch_to<I, T, W: Write>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    match run_command(cli, out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn load_instance(path: &str) -> Result<ProblemInstance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    parse_problem(&text).map_err(|e| e.to_string())
}

fn label_to_point(inst: &ProblemInstance, label: &str) -> Result<PointId, String> {
    inst.space
        .index_of_label(label)
        .ok_or_else(|| format!("unknown point label {label:?}"))
}

fn run_command<W: Write>(cli: Cli, out: &mut W) -> Result<i32, String> {
    let emit = |out: &mut W, text: String| {
        writeln!(out, "{text}").map_err(|e| e.to_string())
    };
    match cli.command {
        Command::Classify { file } => {
            let inst = load_instance(&file)?;
            let report = ClassifyReport::new(&inst.relation);
            match cli.format {
                Format::Json => emit(out, to_json(&report)?)?,
                Format::Text => emit(out, report.render())?,
            }
            Ok(0)
        }
        Command::Check { file } => {
            let inst = load_instance(&file)?;
            let report = inst.full_report();
            match cli.format {
                Format::Json => emit(out, to_json(&report)?)?,
                Format::Text => emit(out, render_check(&inst, &report))?,
            }
            Ok(if report.theorem2_applicable { 0 } else { 1 })
        }
        Command::Solve {
            file,
            x0,
            tol,
            max_iter,
        } => {
            if tol <= 0.0 {
                return Err(format!("tolerance must be positive, got {tol}"));
            }
            if max_iter == 0 {
                return Err("max-iter must be at least 1".to_string());
            }
            let inst = load_instance(&file)?;
            let start = label_to_point(&inst, &x0)?;
            let cfg = SolverConfig { tol, max_iter };
            let sys = FiniteSystem::new(&inst);
            let (outcome, trace) = joint_picard(&sys, start, &cfg);
            let report = SolveReport { outcome, trace };
            match cli.format {
                Format::Json => emit(out, to_json(&report)?)?,
                Format::Text => emit(out, render_solve(&inst, &report))?,
            }
            Ok(if report.outcome.status == crate::solver::SolveStatus::Converged {
                0
            } else {
                1
            })
        }
        Command::Enumerate { file } => {
            let inst = load_instance(&file)?;
            let summary = oracle::enumerate(&inst);
            match cli.format {
                Format::Json => emit(out, to_json(&summary)?)?,
                Format::Text => emit(out, render_summary(&inst, &summary))?,
            }
            Ok(0)
        }
        Command::Path { file, from, to } => {
            let inst = load_instance(&file)?;
            let from = label_to_point(&inst, &from)?;
            let to = label_to_point(&inst, &to)?;
            let path = inst.relation.find_path(from, to);
            let report = PathReport {
                found: path.is_some(),
                nodes: path
                    .as_ref()
                    .map(|p| p.nodes().to_vec())
                    .unwrap_or_default(),
                length: path.as_ref().map(|p| p.len()),
            };
            match cli.format {
                Format::Json => emit(out, to_json(&report)?)?,
                Format::Text => {
                    let text = match &path {
                        Some(p) => {
                            let names: Vec<&str> = p
                                .nodes()
                                .iter()
                                .map(|&n| inst.space.label(n))
                                .collect();
                            format!("path of length {}: {}", p.len(), names.join(" -> "))
                        }
                        None => "no path".to_string(),
                    };
                    emit(out, text)?;
                }
            }
            Ok(if report.found { 0 } else { 1 })
        }
        Command::Fuzz {
            seed,
            instances,
            max_points,
            density,
        } => {
            if max_points == 0 {
                return Err("max-points must be at least 1".to_string());
            }
            if !(0.0..=1.0).contains(&density) {
                return Err(format!("density must be in [0, 1], got {density}"));
            }
            let cfg = GeneratorConfig {
                seed,
                instances,
                max_points,
                edge_density: density,
                map_bias: 0.5,
            };
            let outcome = run_conformance(&cfg);
            match cli.format {
                Format::Json => emit(out, to_json(&outcome)?)?,
                Format::Text => emit(out, render_fuzz(&outcome))?,
            }
            Ok(if outcome.conformant() { 0 } else { 1 })
        }
        Command::Demo { name } => {
            let cfg = SolverConfig::default();
            let report = analytic::run_demo(&name, &cfg).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => emit(out, to_json(&report)?)?,
                Format::Text => emit(out, render_demo(&report))?,
            }
            Ok(if report.all_match { 0 } else { 1 })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

/// Relation property flags plus the derived order labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(flatten)]
    pub class: crate::relation::RelationClass,
    #[serde(flatten)]
    pub labels: crate::relation::DerivedLabels,
}

impl ClassifyReport {
    pub fn new(relation: &FiniteRelation) -> ClassifyReport {
        let class = relation.classify();
        ClassifyReport {
            class,
            labels: class.labels(),
        }
    }

    fn render(&self) -> String {
        let c = &self.class;
        let l = &self.labels;
        let flags = [
            ("reflexive", c.reflexive),
            ("irreflexive", c.irreflexive),
            ("symmetric", c.symmetric),
            ("antisymmetric", c.antisymmetric),
            ("transitive", c.transitive),
            ("complete", c.complete),
            ("weakly_complete", c.weakly_complete),
        ];
        let labels = [
            ("preorder", l.preorder),
            ("partial_order", l.partial_order),
            ("equivalence", l.equivalence),
            ("tolerance", l.tolerance),
            ("strict_order", l.strict_order),
            ("near_order", l.near_order),
            ("pseudo_order", l.pseudo_order),
            ("total_order", l.total_order),
        ];
        let on = |items: &[(&str, bool)]| {
            let set: Vec<&str> = items.iter().filter(|(_, v)| *v).map(|(k, _)| *k).collect();
            if set.is_empty() {
                "none".to_string()
            } else {
                set.join(", ")
            }
        };
        format!(
            "properties: {}\nlabels: {}",
            on(&flags),
            on(&labels)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: SolveOutcome<PointId>,
    pub trace: IterationTrace<PointId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub found: bool,
    pub nodes: Vec<PointId>,
    pub length: Option<usize>,
}

fn witness_text(inst: &ProblemInstance, w: &Witness) -> String {
    let name = |p: &PointId| inst.space.label(*p).to_string();
    match w {
        Witness::Point(p) => name(p),
        Witness::Pair(a, b) => format!("({}, {})", name(a), name(b)),
        Witness::Points(ps) => {
            let names: Vec<String> = ps.iter().map(|p| name(p)).collect();
            format!("{{{}}}", names.join(", "))
        }
    }
}

fn render_check(inst: &ProblemInstance, report: &HypothesisReport) -> String {
    let mut lines = Vec::new();
    for c in &report.conditions {
        let mut line = format!("({}) {}", c.id, c.verdict);
        if let Some(w) = &c.witness {
            line.push_str(&format!("  witness: {}", witness_text(inst, w)));
        }
        if let Some(note) = &c.note {
            line.push_str(&format!("  [{note}]"));
        }
        lines.push(line);
    }
    lines.push(String::new());
    lines.push(format!(
        "existence (T2): {}",
        verdict_word(report.theorem2_applicable)
    ));
    lines.push(format!(
        "unique point of coincidence (T3): {}",
        verdict_word(report.theorem3_applicable)
    ));
    lines.push(format!(
        "unique coincidence point (T4): {}",
        verdict_word(report.theorem4_applicable)
    ));
    lines.push(format!(
        "unique common fixed point (T5): {}",
        verdict_word(report.theorem5_applicable)
    ));
    lines.join("\n")
}

fn verdict_word(applicable: bool) -> &'static str {
    if applicable {
        "applicable"
    } else {
        "not applicable"
    }
}

fn render_solve(inst: &ProblemInstance, report: &SolveReport) -> String {
    let o = &report.outcome;
    let t = &report.trace;
    let alpha = inst.effective_alpha();
    let mut lines = vec![format!(
        "status: {}  point: {}  residual: {:e}  iterations: {}  bound: {:e}",
        o.status,
        inst.space.label(o.point),
        o.residual,
        o.iterations,
        o.bound
    )];
    lines.push("n  x_n  g(x_n)  f(x_n)  residual  gap  bound".to_string());
    for n in 0..t.len() {
        let gap = t
            .step_gaps
            .get(n)
            .map(|g| format!("{g:.6}"))
            .unwrap_or_else(|| "-".to_string());
        let bound = match alpha {
            Some(a) if !t.step_gaps.is_empty() => {
                format!(
                    "{:.6}",
                    crate::solver::error_bound(a, t.step_gaps[0], n).unwrap_or(f64::INFINITY)
                )
            }
            _ => "-".to_string(),
        };
        lines.push(format!(
            "{n}  {}  {}  {}  {:.6}  {gap}  {bound}",
            inst.space.label(t.iterates[n]),
            inst.space.label(t.g_images[n]),
            inst.space.label(t.f_images[n]),
            t.residuals[n],
        ));
    }
    lines.join("\n")
}

fn render_summary(inst: &ProblemInstance, summary: &CoincidenceSummary) -> String {
    let names = |set: &BTreeSet<PointId>| {
        let v: Vec<&str> = set.iter().map(|&p| inst.space.label(p)).collect();
        if v.is_empty() {
            "none".to_string()
        } else {
            format!("{{{}}}", v.join(", "))
        }
    };
    let mut lines = vec![
        format!("coincidence points: {}", names(&summary.coincidence_points)),
        format!(
            "points of coincidence: {}",
            names(&summary.points_of_coincidence)
        ),
        format!(
            "common fixed points: {}",
            names(&summary.common_fixed_points)
        ),
    ];
    for (value, class) in &summary.value_classes {
        lines.push(format!(
            "value {}: class {}",
            inst.space.label(*value),
            names(class)
        ));
    }
    lines.join("\n")
}

fn render_fuzz(outcome: &ConformanceOutcome) -> String {
    let s = &outcome.stats;
    let mut lines = vec![
        format!("instances: {}", s.instances),
        format!(
            "hypothesis-bundle hits: T2 {}  T3 {}  T4 {}  T5 {}",
            s.theorem2_hits, s.theorem3_hits, s.theorem4_hits, s.theorem5_hits
        ),
    ];
    match &outcome.counterexample {
        None => lines.push("no counterexamples".to_string()),
        Some(ce) => {
            lines.push(format!(
                "COUNTEREXAMPLE to {} at instance {}: expected {}, observed {}",
                ce.theorem, ce.instance_index, ce.expected, ce.observed
            ));
            if let Ok(doc) = serde_json::to_string_pretty(&file_from_instance(&ce.instance)) {
                lines.push(doc);
            }
        }
    }
    lines.join("\n")
}

fn render_demo(report: &analytic::DemoReport) -> String {
    let mut lines = vec![format!("demo {}", report.name)];
    for c in &report.checks {
        let mark = if c.passed { "ok" } else { "XX" };
        lines.push(format!("[{mark}] {}: {}", c.name, c.details));
    }
    lines.push(format!(
        "existence (T2): {}",
        verdict_word(report.theorem2_applicable)
    ));
    lines.push(format!(
        "unique point of coincidence (T3): {}",
        verdict_word(report.theorem3_applicable)
    ));
    lines.push(format!(
        "unique coincidence point (T4): {}",
        verdict_word(report.theorem4_applicable)
    ));
    lines.push(format!(
        "unique common fixed point (T5): {}",
        verdict_word(report.theorem5_applicable)
    ));
    lines.push(if report.all_match {
        "all checks match".to_string()
    } else {
        "MISMATCH".to_string()
    });
    lines.join("\n")
}
