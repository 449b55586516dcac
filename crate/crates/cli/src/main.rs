//! `schreier`: command-line front end. Exit codes: 0 success, 1 parse or I/O error,
//! 2 precondition violation, 3 search budget exhausted.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use schreier_core::canon::{canonical_key, CanonError};
use schreier_core::factorize::{
    default_budget, extend_structure_with, schreier_structure, ExtendError, ExtendOptions, FactorizeError,
};
use schreier_core::io::{
    graph_to_dot, measure_from_json, measure_to_json, parse_edge_list, parse_schreier, schreier_to_dot,
    write_edge_list, write_schreier, IoError,
};
use schreier_core::lazy::{from_selector, lazy_ball, LazyError, LazyGraph, Reversed};
use schreier_core::measures::{
    check_shift_invariance, check_unimodular, distinctness_witness, estimate_cylinder, reversal_family_count,
    reversal_family_count_lazy, sofic_lift, uniform_root_measure, CylinderMeasure, CylinderSampler, DiracSampler,
    MeasureError, Probability, ReversalFamilyReport, ReversalModel, ReversalSampler, ReversalSource,
};
use schreier_core::neighborhood::Neighborhood;
use schreier_core::schreier::{SchreierError, SubgroupError};
use schreier_core::word::WordParseError;
use schreier_core::{from_subgroup, Membership, RootedMultigraph, SchreierGraph, Word};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WordParseError> for CliError {
    fn from(e: WordParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LazyError> for CliError {
    fn from(e: LazyError) -> Self {
        match e {
            LazyError::UnknownSelector(_) => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::TooLarge { .. } | CanonError::GroupTooLarge { .. } => CliError::Budget(e.to_string()),
            CanonError::Malformed(_) | CanonError::Invalid(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<FactorizeError> for CliError {
    fn from(e: FactorizeError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ExtendError> for CliError {
    fn from(e: ExtendError) -> Self {
        match e {
            ExtendError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            ExtendError::Lazy(l) => l.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<SchreierError> for CliError {
    fn from(e: SchreierError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<SubgroupError> for CliError {
    fn from(e: SubgroupError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::CycleBudget { .. } => CliError::Budget(e.to_string()),
            MeasureError::Canon(c) => c.into(),
            MeasureError::Lazy(l) => l.into(),
            MeasureError::BadProbability(_) => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "schreier", version, about = "Schreier structures, invariant random subgroups and cylinder measures")]
struct Cli {
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label a finite even-regular multigraph (.el) as a Schreier graph (.sg).
    Factorize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label the radius-R ball of an infinite regular graph, consistently with radius R+1.
    Extend {
        #[arg(long)]
        lazy: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search nodes; defaults to SCHREIER_BUDGET or one million.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        lookahead: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a ball out of a lazy graph or a graph file.
    Ball {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        lazy: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        radius: usize,
        /// Center vertex for file inputs (defaults to the root).
        #[arg(long)]
        center: Option<usize>,
        /// Reverse a_i-cycles of a lazy graph, as `i:id,id,...`.
        #[arg(long)]
        reverse: Option<String>,
        /// Drop labels.
        #[arg(long)]
        forget: bool,
        /// Output file; `.sg` writes a labeled ball, anything else an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Schreier rule on a .sg file.
    Verify { file: PathBuf },
    /// Subgroups of free groups: build, list generators, test membership.
    Subgroup {
        #[command(subcommand)]
        action: SubgroupCommand,
    },
    /// Exact uniform-root measure of a finite graph file.
    Uniform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical cylinder measure of a sampler model.
    Estimate {
        /// `reversal:<source>:<i>:p=<p>` (source: lazy selector or .sg file) or
        /// `dirac:<selector>`.
        #[arg(long)]
        model: String,
        #[arg(long)]
        radius: usize,
        #[arg(short = 'N', long = "samples")]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reverse a_i-cycles of a dirac source, as `i:id,id,...`.
        #[arg(long)]
        reverse: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare lifted masses of edge classes of radius r with their root swaps.
    CheckUnimodular {
        file: PathBuf,
        /// Edge-neighbourhood radius; defaults to the measure radius minus one.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Compare the ball law at the root with the law at the end of a word.
    CheckShift {
        #[arg(long)]
        model: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        radius: usize,
        #[arg(short = 'N', long = "samples")]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        reverse: Option<String>,
    },
    /// A word in exactly one of the two subgroups of two labelings of one graph.
    Witness {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Distinct labeled graphs among all reversal patterns of the a_i-cycles.
    CountReversals {
        #[arg(long = "in", conflicts_with = "lazy", required_unless_present = "lazy")]
        input: Option<PathBuf>,
        #[arg(long)]
        lazy: Option<String>,
        #[arg(long)]
        label: u32,
        /// Window radius for lazy graphs.
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Label each graph and report distances between consecutive uniform-root measures.
    SoficLift {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz DOT of a .sg or .el file.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SubgroupCommand {
    /// Schreier graph of the subgroup generated by words (comma separated).
    Build {
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        #[arg(long)]
        rank: usize,
        /// Depth of the tree branches hung on the core.
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Free generators read off a spanning tree.
    Generators { file: PathBuf },
    /// Whether a word lies in the subgroup.
    Contains {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn is_sg(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "sg")
}

enum Loaded {
    Plain(RootedMultigraph),
    Labeled(SchreierGraph),
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let ctx = |e: IoError| CliError::Input(format!("{}: {e}", path.display()));
    Ok(if is_sg(path) {
        Loaded::Labeled(parse_schreier(&text).map_err(ctx)?)
    } else {
        Loaded::Plain(parse_edge_list(&text).map_err(ctx)?)
    })
}

fn load_schreier(path: &Path) -> Result<SchreierGraph, CliError> {
    match load(path)? {
        Loaded::Labeled(sg) => Ok(sg),
        Loaded::Plain(_) => Err(CliError::Input(format!("{}: expected a .sg file", path.display()))),
    }
}

/// Writes `text` to `out`, or prints it when there is no output file.
fn emit(out: Option<&Path>, text: &str) -> Result<bool, CliError> {
    match out {
        Some(p) => write(p, text).map(|_| true),
        None => {
            print!("{text}");
            Ok(false)
        }
    }
}

fn report(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        let mut value = value;
        value.as_object_mut().expect("reports are objects").insert("v".into(), json!(1));
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

/// `i:id,id,...`
fn parse_reverse(text: &str) -> Result<(u32, BTreeSet<i64>), CliError> {
    let bad = || CliError::Input(format!("--reverse expects `i:id,id,...`, got `{text}`"));
    let (i, ids) = text.split_once(':').ok_or_else(bad)?;
    let i = i.parse().map_err(|_| bad())?;
    let ids =
        ids.split(',').filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    Ok((i, ids))
}

fn lazy_graph(selector: &str, reverse: Option<&str>) -> Result<Box<dyn LazyGraph>, CliError> {
    let g = from_selector(selector)?;
    Ok(match reverse {
        None => g,
        Some(text) => {
            let (label, cycles) = parse_reverse(text)?;
            if g.rank().is_none_or(|r| label == 0 || label as usize > r) {
                return Err(CliError::Precondition(format!("{selector} has no generator a{label}")));
            }
            Box::new(Reversed { inner: g, label, cycles })
        }
    })
}

enum Model {
    Reversal(ReversalModel),
    Dirac(Box<dyn LazyGraph>),
}

fn parse_model(text: &str, seed: u64, reverse: Option<&str>) -> Result<Model, CliError> {
    let bad = || CliError::Input(format!("unknown model `{text}`"));
    if let Some(rest) = text.strip_prefix("dirac:") {
        return Ok(Model::Dirac(lazy_graph(rest, reverse)?));
    }
    let rest = text.strip_prefix("reversal:").ok_or_else(bad)?;
    if reverse.is_some() {
        return Err(CliError::Input("--reverse applies to dirac models only".into()));
    }
    let mut parts = rest.rsplitn(3, ':');
    let (p, i, source) = (parts.next().ok_or_else(bad)?, parts.next().ok_or_else(bad)?, parts.next().ok_or_else(bad)?);
    let p: Probability = p.strip_prefix("p=").ok_or_else(bad)?.parse()?;
    let i: u32 = i.parse().map_err(|_| bad())?;
    let source = if source.ends_with(".sg") {
        ReversalSource::Finite(load_schreier(Path::new(source))?)
    } else {
        ReversalSource::Lazy(from_selector(source)?)
    };
    Ok(Model::Reversal(ReversalModel::new(source, i, p, seed)?))
}

fn with_sampler<T>(
    model: &Model,
    radius: usize,
    f: impl FnOnce(&dyn CylinderSampler) -> Result<T, CliError>,
) -> Result<T, CliError> {
    match model {
        Model::Reversal(m) => f(&ReversalSampler::new(m, radius)?),
        Model::Dirac(g) => {
            let ball = lazy_ball(g, &g.root(), radius)?.neighborhood;
            f(&DiracSampler { ball, truncated: true })
        }
    }
}

fn key_summary(nb: &Neighborhood) -> Value {
    json!({"vertices": nb.vertex_count(), "edges": nb.edge_count(), "key": canonical_key(nb).to_base64()})
}

fn family_json(r: &ReversalFamilyReport) -> Value {
    json!({
        "label": r.label,
        "cycles": r.cycles,
        "patterns": r.patterns(),
        "count": r.count,
        "automorphisms": r.automorphisms,
        "loops": r.loops,
        "parallel_edges": r.parallel_edges,
        "rigid": r.rigid,
        "collisions": r.collisions,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.json;
    match cli.command {
        Command::Factorize { input, seed, out } => {
            let g = match load(&input)? {
                Loaded::Plain(g) => g,
                Loaded::Labeled(sg) => sg.forget(),
            };
            let sg = schreier_structure(&g, seed)?;
            let written = emit(out.as_deref(), &write_schreier(&sg))?;
            if written {
                report(json, json!({"vertices": sg.vertex_count(), "rank": sg.rank(), "valid": sg.is_valid()}), || {
                    format!("labeled {} vertices with rank {}", sg.vertex_count(), sg.rank())
                });
            }
        }
        Command::Extend { lazy, radius, seed, budget, lookahead, out } => {
            let g = from_selector(&lazy)?;
            let options = ExtendOptions { budget: budget.unwrap_or_else(default_budget), lookahead, seed };
            let ext = extend_structure_with(&g, radius, options)?;
            let sg = SchreierGraph::from_neighborhood(&ext.ball, true)?;
            if emit(out.as_deref(), &write_schreier(&sg))? {
                report(json, json!({"radius": radius, "vertices": sg.vertex_count(), "nodes": ext.nodes}), || {
                    format!(
                        "labeled the radius-{radius} ball ({} vertices) after {} search nodes",
                        sg.vertex_count(),
                        ext.nodes
                    )
                });
            }
        }
        Command::Ball { lazy, input, radius, center, reverse, forget, out } => {
            let nb = match (lazy, input) {
                (Some(sel), _) => {
                    if center.is_some() {
                        return Err(CliError::Input("--center applies to file inputs".into()));
                    }
                    let g = lazy_graph(&sel, reverse.as_deref())?;
                    lazy_ball(&g, &g.root(), radius)?.neighborhood
                }
                (None, Some(path)) => {
                    if reverse.is_some() {
                        return Err(CliError::Input("--reverse applies to lazy graphs".into()));
                    }
                    let (n, root) = match load(&path)? {
                        Loaded::Plain(g) => (g.vertex_count(), g.root()),
                        Loaded::Labeled(sg) => (sg.vertex_count(), sg.root()),
                    };
                    let c = center.unwrap_or(root);
                    if c >= n {
                        return Err(CliError::Precondition(format!("center {c} out of range 0..{n}")));
                    }
                    match load(&path)? {
                        Loaded::Plain(g) => schreier_core::ball(g.graph(), None, None, c, radius).expect("checked").0,
                        Loaded::Labeled(sg) => sg.ball(c, radius),
                    }
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let nb = if forget { nb.forget() } else { nb };
            let text = match &out {
                Some(p) if is_sg(p) => {
                    if !nb.is_labeled() {
                        return Err(CliError::Precondition("an unlabeled ball cannot be written as .sg".into()));
                    }
                    write_schreier(&SchreierGraph::from_neighborhood(&nb, true)?)
                }
                _ => write_edge_list(&nb.to_rooted()),
            };
            if let Some(p) = &out {
                write(p, &text)?;
            }
            report(json, key_summary(&nb), || {
                format!("ball of radius {radius}: {} vertices, {} edges", nb.vertex_count(), nb.edge_count())
            });
        }
        Command::Verify { file } => {
            let sg = load_schreier(&file)?;
            let r = if sg.is_truncated() { sg.validate_partial() } else { sg.validate() };
            let kind = if sg.is_truncated() { "partial schreier structure (truncated)" } else { "schreier structure" };
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| json!({"vertex": v.vertex, "label": v.label, "outgoing": v.outgoing, "incoming": v.incoming}))
                .collect();
            report(
                json,
                json!({"valid": r.valid, "truncated": sg.is_truncated(), "rank": sg.rank(), "vertices": sg.vertex_count(), "violations": violations}),
                || {
                    if r.valid {
                        format!("valid {kind}, rank {}, {} vertices", sg.rank(), sg.vertex_count())
                    } else {
                        let mut s = format!("invalid {kind}: {} violation(s)", r.violations.len());
                        for v in &r.violations {
                            s.push_str(&format!(
                                "\n  vertex {} a{}: {} outgoing, {} incoming",
                                v.vertex, v.label, v.outgoing, v.incoming
                            ));
                        }
                        s
                    }
                },
            );
            if !r.valid {
                return Err(CliError::Precondition("schreier rule violated".into()));
            }
        }
        Command::Subgroup { action } => match action {
            SubgroupCommand::Build { gens, rank, depth, out } => {
                let words: Vec<Word> = gens.iter().map(|g| g.parse()).collect::<Result<_, _>>()?;
                let sg = from_subgroup(&words, rank, depth)?;
                if emit(out.as_deref(), &write_schreier(&sg))? {
                    report(
                        json,
                        json!({"vertices": sg.vertex_count(), "rank": rank, "truncated": sg.is_truncated()}),
                        || format!("subgroup graph with {} vertices", sg.vertex_count()),
                    );
                }
            }
            SubgroupCommand::Generators { file } => {
                let sg = load_schreier(&file)?;
                if sg.is_truncated() {
                    return Err(CliError::Precondition("generators need a complete Schreier graph".into()));
                }
                let gens: Vec<String> = sg.schreier_generators().iter().map(|w| w.to_string()).collect();
                report(json, json!({"generators": gens}), || gens.join("\n"));
            }
            SubgroupCommand::Contains { file, word } => {
                let sg = load_schreier(&file)?;
                let h: Word = word.parse()?;
                let answer = match sg.contains(&h)? {
                    Membership::Yes => "yes",
                    Membership::No => "no",
                    Membership::Unknown => "unknown",
                };
                report(json, json!({"word": h.to_string(), "member": answer}), || answer.to_string());
            }
        },
        Command::Uniform { input, radius, out } => {
            let m = match load(&input)? {
                Loaded::Plain(g) => uniform_root_measure(&g, radius),
                Loaded::Labeled(sg) => uniform_root_measure(&sg, radius),
            };
            if emit(out.as_deref(), &measure_to_json(&m))? {
                report(json, json!({"keys": m.len()}), || format!("{} classes", m.len()));
            }
        }
        Command::Estimate { model, radius, samples, seed, reverse, out } => {
            let model = parse_model(&model, seed, reverse.as_deref())?;
            let m = with_sampler(&model, radius, |s| Ok(estimate_cylinder(s, radius, samples, seed)?))?;
            if emit(out.as_deref(), &measure_to_json(&m))? {
                report(json, json!({"samples": samples, "keys": m.len()}), || {
                    format!("{samples} samples, {} classes", m.len())
                });
            }
        }
        Command::CheckUnimodular { file, radius } => {
            let m = measure_from_json(&read(&file)?)?;
            let r = match radius {
                Some(r) => r,
                None => m
                    .radius
                    .checked_sub(1)
                    .ok_or_else(|| CliError::Precondition("a radius-0 measure has no edge classes".into()))?,
            };
            let rep = check_unimodular(&m, r)?;
            let comparisons: Vec<Value> = rep
                .comparisons
                .iter()
                .map(|c| {
                    json!({
                        "class": c.class.to_base64(),
                        "swapped": c.swapped.to_base64(),
                        "forward": c.forward,
                        "backward": c.backward,
                        "exact": c.exact.as_ref().map(|(f, b)| [f.to_string(), b.to_string()]),
                        "standard_error": c.standard_error,
                        "forward_weights": c.forward_terms.iter().map(|t| t.0).collect::<Vec<_>>(),
                        "backward_weights": c.backward_terms.iter().map(|t| t.0).collect::<Vec<_>>(),
                        "pass": c.pass,
                    })
                })
                .collect();
            report(
                json,
                json!({"pass": rep.pass, "scope": rep.scope(), "radius": r, "comparisons": comparisons, "worst": rep.worst}),
                || {
                    let mut s = format!(
                        "unimodular: {} ({}), {} edge class pair(s) at radius {r}",
                        if rep.pass { "pass" } else { "FAIL" },
                        rep.scope(),
                        rep.comparisons.len()
                    );
                    if let Some(w) = rep.worst() {
                        let (f, b) = match &w.exact {
                            Some((f, b)) => (f.to_string(), b.to_string()),
                            None => (w.forward.to_string(), w.backward.to_string()),
                        };
                        let weights =
                            |t: &[(usize, _)]| t.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",");
                        s.push_str(&format!(
                            "\nworst: {f} (weights {}) vs {b} (weights {})",
                            weights(&w.forward_terms),
                            weights(&w.backward_terms)
                        ));
                    }
                    s
                },
            );
        }
        Command::CheckShift { model, word, radius, samples, seed, reverse } => {
            let model = parse_model(&model, seed, reverse.as_deref())?;
            let g: Word = word.parse()?;
            let rep = with_sampler(&model, radius + g.reduce().len(), |s| {
                Ok(check_shift_invariance(s, &g, radius, samples, seed)?)
            })?;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| json!({"key": r.key.to_base64(), "at_root": r.at_root, "shifted": r.shifted, "pass": r.pass}))
                .collect();
            report(
                json,
                json!({"pass": rep.pass, "word": rep.word.to_string(), "critical_z": rep.critical_z, "rows": rows}),
                || {
                    format!(
                        "shift by {}: {} ({} classes, z = {:.3})",
                        rep.word,
                        if rep.pass { "pass" } else { "FAIL" },
                        rep.rows.len(),
                        rep.critical_z
                    )
                },
            );
        }
        Command::Witness { a, b, max_len } => {
            let (a, b) = (load_schreier(&a)?, load_schreier(&b)?);
            let h = distinctness_witness(&a, &b, max_len)?;
            let text = h.as_ref().map(|w| w.to_string());
            report(json, json!({"witness": text}), || text.clone().unwrap_or_else(|| "none".into()));
        }
        Command::CountReversals { input, lazy, label, radius } => {
            let rep = match (input, lazy) {
                (Some(path), _) => reversal_family_count(&load_schreier(&path)?, label)?,
                (None, Some(sel)) => reversal_family_count_lazy(from_selector(&sel)?, label, radius)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            report(json, family_json(&rep), || {
                let mut s = format!(
                    "a{} cycles: {}, patterns: {}, distinct: {}, automorphisms: {}, rigid: {}",
                    rep.label,
                    rep.cycles,
                    rep.patterns(),
                    rep.count,
                    rep.automorphisms.map_or("too many".into(), |a| a.to_string()),
                    rep.rigid
                );
                for (p, q) in &rep.collisions {
                    s.push_str(&format!("\ncollision: pattern {p:#b} = pattern {q:#b}"));
                }
                s
            });
        }
        Command::SoficLift { inputs, radius, seed } => {
            let graphs: Vec<RootedMultigraph> = inputs
                .iter()
                .map(|p| match load(p)? {
                    Loaded::Plain(g) => Ok(g),
                    Loaded::Labeled(sg) => Ok(sg.forget()),
                })
                .collect::<Result<_, CliError>>()?;
            let rep = sofic_lift(&graphs, radius, seed)?;
            let tv = |v: &[_]| v.iter().map(|d: &num_rational::BigRational| d.to_string()).collect::<Vec<_>>();
            let keys = |ms: &[CylinderMeasure]| ms.iter().map(|m| m.len()).collect::<Vec<_>>();
            report(
                json,
                json!({
                    "radius": radius,
                    "tv_labeled": tv(&rep.tv_labeled),
                    "tv_unlabeled": tv(&rep.tv_unlabeled),
                    "labeled_classes": keys(&rep.labeled),
                    "unlabeled_classes": keys(&rep.unlabeled),
                }),
                || {
                    format!(
                        "labeled TV: [{}]\nunlabeled TV: [{}]",
                        tv(&rep.tv_labeled).join(", "),
                        tv(&rep.tv_unlabeled).join(", ")
                    )
                },
            );
        }
        Command::ExportDot { file, out } => {
            let dot = match load(&file)? {
                Loaded::Plain(g) => graph_to_dot(&g),
                Loaded::Labeled(sg) => schreier_to_dot(&sg),
            };
            emit(out.as_deref(), &dot)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
