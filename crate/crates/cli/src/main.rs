//! `sfc2bip`: validate, translate, explore and check SFC and BIP models.
//!
//! Exit codes: 0 success or property holds, 1 invalid model, violation or
//! refutation, 2 usage or I/O error, 3 resource limit reached.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sfc2bip::bip::{parse_bip, reachable_states, BipOptions, ComposedModel};
use sfc2bip::diag::Diagnostics;
use sfc2bip::fixtures::{load_fixture, FIXTURES};
use sfc2bip::graph::{Dest, Graph, Limits, PartialGraph};
use sfc2bip::invariants::{
    check_bip_invariant, check_sfc_invariant, parse_bip_inv, parse_bip_inv_names, parse_sfc_inv,
    parse_sfc_inv_names, resolve_bip, resolve_sfc, structural_invariant, t_i, t_r, InvReport, Observe,
};
use sfc2bip::random::{random_translatable_text, Shape};
use sfc2bip::sfc::{parse_sfc, reachable_configs, reachable_cycles, reachable_phased, Dialect, Mode, SemOptions, SfcModel};
use sfc2bip::simcheck::{
    check_cycle_equivalence, check_g1a, check_g1b, static_conflict_warning, static_raw_warning,
    static_reentry_warning, RelationOptions, Rule3, Verdict,
};
use sfc2bip::transform::{transform, TemplateMode, TraceMap, TransformOptions};

#[derive(Parser)]
#[command(name = "sfc2bip", version, about = "SFC to BIP translation and checking")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a .sfc or .bip file.
    Validate {
        path: PathBuf,
        #[arg(long)]
        extended: bool,
    },
    /// Translate an SFC into a BIP model and a trace map.
    Transform {
        path: PathBuf,
        #[command(flatten)]
        t: TransformFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Explore the reachable state space.
    Reach {
        path: PathBuf,
        /// SFC graph to build.
        #[arg(long, value_enum, default_value_t = SfcGraph::Micro)]
        graph: SfcGraph,
        #[command(flatten)]
        sem: SemFlags,
        #[command(flatten)]
        limits: LimitFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Check an invariant over reachable states.
    CheckInv {
        path: PathBuf,
        /// Invariant text, or a file containing it.
        #[arg(conflicts_with = "structural", required_unless_present = "structural")]
        inv: Option<String>,
        /// Use the structural invariant of the chart.
        #[arg(long)]
        structural: bool,
        /// Where SFC invariants are observed.
        #[arg(long, value_enum, default_value_t = ObserveArg::Boundaries)]
        observe: ObserveArg,
        #[command(flatten)]
        sem: SemFlags,
        #[command(flatten)]
        limits: LimitFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Translate an invariant between the two models.
    TranslateInv {
        #[arg(value_enum)]
        direction: Direction,
        /// Invariant text, or a file containing it.
        inv: String,
        /// Trace map written by `transform`.
        #[arg(long, conflicts_with = "sfc", required_unless_present = "sfc")]
        trace: Option<PathBuf>,
        /// Source chart; names are then checked on both sides.
        #[arg(long)]
        sfc: Option<PathBuf>,
        #[command(flatten)]
        t: TransformFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Check initial relatedness and the bounded simulation.
    Simrel {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Rule3Arg::Pending)]
        rule3: Rule3Arg,
        /// Interactions allowed per matched SFC micro-step.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: Option<u64>,
        /// Also compare this many whole cycles.
        #[arg(long, default_value_t = 0)]
        cycles: usize,
        #[command(flatten)]
        t: TransformFlags,
        #[command(flatten)]
        sem: SemFlags,
        #[command(flatten)]
        limits: LimitFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Print a shipped fixture.
    Fixture {
        #[arg(required_unless_present = "list", conflicts_with = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Print a random translatable SFC.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutFlags,
    },
}

#[derive(Args, Clone)]
struct TransformFlags {
    /// Use the qualifier-collecting templates.
    #[arg(long)]
    extended: bool,
    /// Leave guard connectors unordered.
    #[arg(long)]
    no_sfc_priority_in_bip: bool,
    /// Templates exactly as listed, without the GV and step-entry repairs.
    #[arg(long)]
    literal_templates: bool,
}

impl TransformFlags {
    fn options(&self) -> TransformOptions {
        let mut o = if self.literal_templates {
            TransformOptions::as_listed()
        } else {
            TransformOptions::default()
        };
        if self.extended {
            o.mode = TemplateMode::Extended;
        }
        o.sfc_priority_in_bip = !self.no_sfc_priority_in_bip;
        o
    }

    fn dialect(&self) -> Dialect {
        if self.extended {
            Dialect::ExtendedSyntax
        } else {
            Dialect::NonExtended
        }
    }
}

#[derive(Args, Clone)]
struct SemFlags {
    #[arg(long, value_enum, default_value_t = ModeArg::Ordered)]
    mode: ModeArg,
    /// Ignore SFC transition priorities.
    #[arg(long)]
    no_priority: bool,
    /// Apply updates before the transferred value lands.
    #[arg(long)]
    transfer_after: bool,
}

impl SemFlags {
    fn sfc(&self) -> SemOptions {
        SemOptions {
            mode: match self.mode {
                ModeArg::Literal => Mode::Literal,
                ModeArg::Ordered => Mode::Ordered,
            },
            priority: !self.no_priority,
        }
    }

    fn bip(&self) -> BipOptions {
        BipOptions {
            transfer_after: self.transfer_after,
        }
    }
}

#[derive(Args, Clone)]
struct LimitFlags {
    #[arg(long, default_value_t = 200_000)]
    max_states: usize,
    #[arg(long, default_value_t = 2_000_000)]
    max_edges: usize,
}

impl LimitFlags {
    fn limits(&self) -> Limits {
        Limits {
            max_states: self.max_states,
            max_edges: self.max_edges,
        }
    }
}

#[derive(Args, Clone)]
struct OutFlags {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Literal,
    Ordered,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule3Arg {
    Pending,
    Committed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObserveArg {
    Boundaries,
    Micro,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SfcGraph {
    Micro,
    Phased,
    Cycles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    #[value(name = "t_i", alias = "t-i")]
    TI,
    #[value(name = "t_r", alias = "t-r")]
    TR,
}

/// A failure with its exit code.
struct Fail(u8, String);

impl From<Diagnostics> for Fail {
    fn from(d: Diagnostics) -> Self {
        Fail(1, d.to_string())
    }
}

impl From<PartialGraph> for Fail {
    fn from(p: PartialGraph) -> Self {
        Fail(3, p.to_string())
    }
}

type Res = Result<u8, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(2, format!("cannot read {}: {e}", path.display())))
}

fn ext(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

enum Model {
    Sfc(SfcModel),
    Bip(ComposedModel),
}

fn load(path: &Path, dialect: Dialect) -> Result<Model, Fail> {
    let src = read(path)?;
    match ext(path) {
        "sfc" => Ok(Model::Sfc(parse_sfc(&src, dialect)?)),
        "bip" => Ok(Model::Bip(parse_bip(&src)?)),
        other => Err(Fail(2, format!("unknown model extension `.{other}` (expected .sfc or .bip)"))),
    }
}

fn load_sfc(path: &Path, dialect: Dialect) -> Result<SfcModel, Fail> {
    match load(path, dialect)? {
        Model::Sfc(m) => Ok(m),
        Model::Bip(_) => Err(Fail(2, format!("{} is not an SFC", path.display()))),
    }
}

fn emit(out: &OutFlags, text: &str) -> Result<(), Fail> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| Fail(2, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn inv_text(arg: &str) -> Result<String, Fail> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(read(p)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn warn_translation_limits(m: &SfcModel) {
    for w in static_raw_warning(m) {
        eprintln!("warning: {w}");
    }
    for w in static_reentry_warning(m) {
        eprintln!("warning: {w}");
    }
    for (a, b) in static_conflict_warning(m) {
        eprintln!("warning: `{a}` and `{b}` conflict without a priority; the chart takes both, the guards only one");
    }
}

fn cmd_validate(path: &Path, extended: bool) -> Res {
    let dialect = if extended { Dialect::ExtendedSyntax } else { Dialect::NonExtended };
    match load(path, dialect)? {
        Model::Sfc(m) => println!(
            "ok: sfc `{}` with {} steps, {} actions, {} transitions, {} variables",
            m.name,
            m.steps.len(),
            m.actions.len(),
            m.transitions.len(),
            m.vars.len()
        ),
        Model::Bip(b) => println!(
            "ok: bip `{}` with {} atomic components, {} connectors",
            b.name,
            b.atomics.len(),
            b.connectors.len()
        ),
    }
    Ok(0)
}

fn trace_path(out: &Path) -> PathBuf {
    out.with_extension("trace.json")
}

fn cmd_transform(path: &Path, t: &TransformFlags, out: &OutFlags) -> Res {
    let m = load_sfc(path, t.dialect())?;
    let (b, tm) = transform(&m, &t.options()).map_err(|e| Fail(1, e.to_string()))?;
    if t.extended {
        eprintln!("warning: extended templates are generated only; simulation checking does not support them");
    }
    match out.format {
        Format::Json => emit(out, &to_json(&json!({ "model": b.to_string(), "trace": tm })))?,
        _ => {
            emit(out, &b.to_string())?;
            if let Some(o) = &out.output {
                let tp = trace_path(o);
                fs::write(&tp, to_json(&tm)).map_err(|e| Fail(2, format!("cannot write {}: {e}", tp.display())))?;
            }
        }
    }
    eprintln!("{} atomic components, {} connectors", b.atomics.len(), b.connectors.len());
    Ok(0)
}

#[derive(Serialize)]
struct ReachReport {
    model: String,
    graph: &'static str,
    nodes: usize,
    edges: usize,
    complete: bool,
    limit: Option<String>,
    defects: Vec<String>,
}

fn dot<N: Clone + Eq + std::hash::Hash, L>(
    g: &Graph<N, L>,
    node: impl Fn(&N) -> String,
    label: impl Fn(&L) -> String,
) -> String {
    let esc = |s: String| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut s = String::from("digraph reach {\n  node [shape=box];\n");
    for (i, n) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", esc(node(n)));
    }
    if g.has_defect() {
        s.push_str("  defect [label=\"range violation\", color=red];\n");
    }
    for (i, es) in g.edges.iter().enumerate() {
        for e in es {
            let to = match e.to {
                Dest::Node(j) => format!("n{j}"),
                Dest::Defect => "defect".into(),
            };
            let _ = writeln!(s, "  n{i} -> {to} [label=\"{}\"];", esc(label(&e.label)));
        }
    }
    s.push_str("}\n");
    s
}

fn reach_report<N: Clone + Eq + std::hash::Hash, L>(name: &str, kind: &'static str, g: &Graph<N, L>) -> ReachReport {
    ReachReport {
        model: name.to_string(),
        graph: kind,
        nodes: g.node_count(),
        edges: g.edge_count(),
        complete: g.is_complete(),
        limit: g.limit.as_ref().map(|l| l.to_string()),
        defects: g.defects.iter().map(|(_, m)| m.clone()).collect(),
    }
}

fn finish_reach(r: ReachReport, dot_text: Option<String>, out: &OutFlags) -> Res {
    match (out.format, dot_text) {
        (Format::Dot, Some(d)) => emit(out, &d)?,
        (Format::Json, _) => emit(out, &to_json(&r))?,
        _ => {
            let mut s = format!("{} graph of `{}`: {} nodes, {} edges\n", r.graph, r.model, r.nodes, r.edges);
            if !r.defects.is_empty() {
                let _ = writeln!(s, "{} defect edges, first: {}", r.defects.len(), r.defects[0]);
            }
            if let Some(l) = &r.limit {
                let _ = writeln!(s, "incomplete: {l}");
            }
            emit(out, &s)?;
        }
    }
    Ok(if r.complete { 0 } else { 3 })
}

fn cmd_reach(path: &Path, which: SfcGraph, sem: &SemFlags, limits: &LimitFlags, out: &OutFlags) -> Res {
    let want_dot = out.format == Format::Dot;
    match load(path, Dialect::NonExtended)? {
        Model::Sfc(m) => {
            let (o, l) = (sem.sfc(), limits.limits());
            match which {
                SfcGraph::Micro => {
                    let g = reachable_configs(&m, o, l);
                    let d = want_dot.then(|| dot(&g, |c| c.render(&m), |x| x.render(&m)));
                    finish_reach(reach_report(&m.name, "micro", &g), d, out)
                }
                SfcGraph::Phased => {
                    let g = reachable_phased(&m, o, l);
                    let d = want_dot.then(|| dot(&g, |n| format!("{} {}", n.phase, n.c.render(&m)), |x| x.render(&m)));
                    finish_reach(reach_report(&m.name, "phased", &g), d, out)
                }
                SfcGraph::Cycles => {
                    let g = reachable_cycles(&m, o, l);
                    let d = want_dot.then(|| dot(&g, |c| c.render(&m), |_| "cycle".to_string()));
                    finish_reach(reach_report(&m.name, "cycles", &g), d, out)
                }
            }
        }
        Model::Bip(b) => {
            let g = reachable_states(&b, sem.bip(), limits.limits());
            let d = want_dot.then(|| dot(&g, |s| s.render(&b), |i| i.render(&b)));
            finish_reach(reach_report(&b.name, "bip", &g), d, out)
        }
    }
}

fn inv_result(r: InvReport, inv: String, out: &OutFlags) -> Res {
    let code = if r.holds { 0 } else { 1 };
    match out.format {
        Format::Json => emit(out, &to_json(&json!({ "invariant": inv, "report": r })))?,
        _ => {
            let mut s = format!("{}: {inv} ({} states)\n", if r.holds { "holds" } else { "violated" }, r.states);
            if !r.holds {
                s.push_str("counterexample:\n");
                for (i, st) in r.trace.iter().enumerate() {
                    let _ = writeln!(s, "  {i}: {st}");
                }
                if let Some(d) = &r.defect {
                    let _ = writeln!(s, "  -> range violation: {d}");
                }
            }
            emit(out, &s)?;
        }
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check_inv(
    path: &Path,
    inv: Option<&str>,
    structural: bool,
    observe: ObserveArg,
    sem: &SemFlags,
    limits: &LimitFlags,
    out: &OutFlags,
) -> Res {
    match load(path, Dialect::NonExtended)? {
        Model::Sfc(m) => {
            let i = if structural {
                structural_invariant(&m)
            } else {
                parse_sfc_inv(&inv_text(inv.unwrap_or_default())?, &m)?
            };
            let obs = match observe {
                ObserveArg::Boundaries => Observe::Boundaries,
                ObserveArg::Micro => Observe::Micro,
            };
            let r = check_sfc_invariant(&m, &i, obs, sem.sfc(), limits.limits())?;
            inv_result(r, i.to_string(), out)
        }
        Model::Bip(b) => {
            if structural {
                return Err(Fail(2, "--structural applies to SFC models only".into()));
            }
            let i = parse_bip_inv(&inv_text(inv.unwrap_or_default())?, &b)?;
            let r = check_bip_invariant(&b, &i, sem.bip(), limits.limits())?;
            inv_result(r, i.to_string(), out)
        }
    }
}

fn cmd_translate_inv(
    dir: Direction,
    inv: &str,
    trace: Option<&Path>,
    sfc: Option<&Path>,
    t: &TransformFlags,
    out: &OutFlags,
) -> Res {
    let text = inv_text(inv)?;
    let (models, tm) = match (trace, sfc) {
        (Some(p), _) => {
            let tm: TraceMap = serde_json::from_str(&read(p)?).map_err(|e| Fail(2, format!("bad trace map: {e}")))?;
            (None, tm)
        }
        (None, Some(p)) => {
            let m = load_sfc(p, t.dialect())?;
            let (b, tm) = transform(&m, &t.options()).map_err(|e| Fail(1, e.to_string()))?;
            (Some((m, b)), tm)
        }
        (None, None) => return Err(Fail(2, "need --trace or --sfc".into())),
    };
    let result = match dir {
        Direction::TI => {
            let i = match &models {
                Some((_, b)) => parse_bip_inv(&text, b)?,
                None => parse_bip_inv_names(&text)?,
            };
            let mut s = t_i(&i, &tm).map_err(|e| Fail(1, format!("{}: {e}", e.code())))?;
            if let Some((m, _)) = &models {
                resolve_sfc(&mut s, m)?;
            }
            s.to_string()
        }
        Direction::TR => {
            let i = match &models {
                Some((m, _)) => parse_sfc_inv(&text, m)?,
                None => parse_sfc_inv_names(&text)?,
            };
            let mut r = t_r(&i, &tm);
            if let Some((_, b)) = &models {
                resolve_bip(&mut r, b)?;
            }
            r.to_string()
        }
    };
    match out.format {
        Format::Json => emit(out, &to_json(&json!({ "input": text, "output": result })))?,
        _ => emit(out, &format!("{result}\n"))?,
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simrel(
    path: &Path,
    rule3: Rule3Arg,
    depth: Option<u64>,
    cycles: usize,
    t: &TransformFlags,
    sem: &SemFlags,
    limits: &LimitFlags,
    out: &OutFlags,
) -> Res {
    if t.extended {
        return Err(Fail(2, "simulation checking does not support extended templates".into()));
    }
    let m = load_sfc(path, Dialect::NonExtended)?;
    let (b, tm) = transform(&m, &t.options()).map_err(|e| Fail(1, e.to_string()))?;
    warn_translation_limits(&m);
    let ro = RelationOptions {
        rule3: match rule3 {
            Rule3Arg::Pending => Rule3::Pending,
            Rule3Arg::Committed => Rule3::Committed,
        },
        depth: depth.map(|d| d as usize),
    };
    log::info!("{} components, {} connectors", b.atomics.len(), b.connectors.len());
    let g1a = check_g1a(&m, &b, &tm, ro);
    let g1b = check_g1b(&m, &b, &tm, sem.sfc(), sem.bip(), ro, limits.limits());
    let cyc = (cycles > 0).then(|| check_cycle_equivalence(&m, &b, &tm, sem.sfc(), sem.bip(), cycles, limits.limits()));
    let mut code = match g1b.verdict {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::DepthExhausted | Verdict::LimitExceeded => 3,
    };
    if !g1a.holds || cyc.as_ref().is_some_and(|c| !c.holds) {
        code = code.max(1);
    }
    match out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&g1b).expect("report serializes");
            v["g1a"] = serde_json::to_value(&g1a).expect("report serializes");
            if let Some(c) = &cyc {
                v["cycles"] = serde_json::to_value(c).expect("report serializes");
            }
            emit(out, &to_json(&v))?;
        }
        _ => {
            let mut s = format!(
                "G1a: {} (rule3 {})\nG1b: {} ({} pairs, longest match {} of {} interactions)\n",
                if g1a.holds { "holds" } else { "fails" },
                g1a.rule3_variant,
                g1b.verdict,
                g1b.pairs_checked,
                g1b.max_match_depth,
                g1b.depth_bound
            );
            if !g1a.holds {
                let _ = writeln!(s, "  initial mismatch: {}", g1a.settled.mismatches.join("; "));
            }
            for f in &g1b.failures {
                let _ = writeln!(s, "  {} after {} from {}", f.reason, f.sfc_step_label, f.c);
                let _ = writeln!(s, "    expected {}", f.c_prime);
                let _ = writeln!(s, "    from     {}", f.c_hat);
                let _ = writeln!(
                    s,
                    "    closest  {} [{}: {}]",
                    f.closest,
                    f.closest_failed_rules.join(","),
                    f.closest_mismatches.join("; ")
                );
            }
            if let Some(c) = &cyc {
                let _ = writeln!(s, "cycles: {} ({} compared)", if c.holds { "equal" } else { "differ" }, c.steps.len());
            }
            emit(out, &s)?;
        }
    }
    Ok(code)
}

fn cmd_fixture(name: Option<&str>, list: bool, out: &OutFlags) -> Res {
    if list {
        let mut s = String::new();
        for f in FIXTURES {
            let _ = writeln!(s, "{:<22} {:<26} {}", f.name, f.file, f.note);
        }
        emit(out, &s)?;
        return Ok(0);
    }
    let text = load_fixture(name.unwrap_or_default()).map_err(|e| Fail(2, e.to_string()))?;
    emit(out, text)?;
    Ok(0)
}

fn cmd_random(seed: u64, out: &OutFlags) -> Res {
    let text = random_translatable_text(seed, Shape::default());
    match out.format {
        Format::Json => emit(out, &to_json(&json!({ "seed": seed, "sfc": text })))?,
        _ => emit(out, &text)?,
    }
    Ok(0)
}

fn run(cli: Cli) -> Res {
    match &cli.cmd {
        Cmd::Validate { path, extended } => cmd_validate(path, *extended),
        Cmd::Transform { path, t, out } => cmd_transform(path, t, out),
        Cmd::Reach {
            path,
            graph,
            sem,
            limits,
            out,
        } => cmd_reach(path, *graph, sem, limits, out),
        Cmd::CheckInv {
            path,
            inv,
            structural,
            observe,
            sem,
            limits,
            out,
        } => cmd_check_inv(path, inv.as_deref(), *structural, *observe, sem, limits, out),
        Cmd::TranslateInv {
            direction,
            inv,
            trace,
            sfc,
            t,
            out,
        } => cmd_translate_inv(*direction, inv, trace.as_deref(), sfc.as_deref(), t, out),
        Cmd::Simrel {
            path,
            rule3,
            depth,
            cycles,
            t,
            sem,
            limits,
            out,
        } => cmd_simrel(path, *rule3, *depth, *cycles, t, sem, limits, out),
        Cmd::Fixture { name, list, out } => cmd_fixture(name.as_deref(), *list, out),
        Cmd::Random { seed, out } => cmd_random(*seed, out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SFC2BIP_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
