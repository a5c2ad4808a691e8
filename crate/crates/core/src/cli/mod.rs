//! Command-line front end: `count`, `classify`, `bounds`, `verify`, `scan`.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed check, 2 when a
//! resource budget refused the job.

mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::actions::{build_family, Family};
use crate::bounds::{self, BoundReport, ESourceChoice};
use crate::classcount::{self, CountResult};
use crate::error::{Error, Result};
use crate::permgroup::parse_generators;
use crate::{Budgets, PermGroup};

pub use verify::{run_suite, CaseOutcome, Suite};

#[derive(Debug, Parser)]
#[command(name = "wreathcount", version, about = "Exact class numbers of wreath products X ≀ H")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    pub output: Output,
    /// Worker threads for `scan` and `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for sampled probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "WREATHCOUNT_MAX_ORDER")]
    pub budget_group_order: Option<usize>,
    #[arg(long, global = true, env = "WREATHCOUNT_MAX_COLORINGS")]
    pub budget_colorings: Option<u64>,
    #[arg(long, global = true, env = "WREATHCOUNT_MAX_LIFT")]
    pub budget_lift_degree: Option<usize>,
    #[arg(long, global = true, env = "WREATHCOUNT_MAX_LATTICE")]
    pub budget_lattice_order: Option<usize>,
    #[arg(long, global = true, env = "WREATHCOUNT_MAX_NORMAL")]
    pub budget_normal_order: Option<usize>,
}

impl GlobalArgs {
    pub fn budgets(&self) -> Result<Budgets> {
        let d = Budgets::default();
        let b = Budgets {
            max_group_order: self.budget_group_order.unwrap_or(d.max_group_order),
            max_coloring_space: self.budget_colorings.unwrap_or(d.max_coloring_space),
            max_lift_degree: self.budget_lift_degree.unwrap_or(d.max_lift_degree),
            max_lattice_order: self.budget_lattice_order.unwrap_or(d.max_lattice_order),
            max_normal_order: self.budget_normal_order.unwrap_or(d.max_normal_order),
        };
        if b.max_group_order == 0 || b.max_coloring_space == 0 || b.max_lift_degree == 0 {
            return Err(Error::Invalid("budgets must be positive".into()));
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Clifford,
    Brute,
    ClosedForm,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ESourceArg {
    Auto,
    Exact,
    Gm,
    Kr,
}

impl From<ESourceArg> for ESourceChoice {
    fn from(a: ESourceArg) -> Self {
        match a {
            ESourceArg::Auto => ESourceChoice::Auto,
            ESourceArg::Exact => ESourceChoice::Exact,
            ESourceArg::Gm => ESourceChoice::Gm,
            ESourceArg::Kr => ESourceChoice::Kr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    All,
    Ee11,
    Predicates,
    Prop11,
    Prop13,
    Lem15,
    E14,
    Semiprimitive,
    Lem100,
}

#[derive(Debug, Args)]
pub struct KArgs {
    /// Number of conjugacy classes of X.
    #[arg(long, conflicts_with = "x")]
    pub k: Option<u32>,
    /// Generators of X in cycle notation; only its class number is used.
    #[arg(long)]
    pub x: Option<String>,
}

impl KArgs {
    fn resolve(&self, budgets: &Budgets) -> Result<u32> {
        let k = match (&self.k, &self.x) {
            (Some(k), _) => *k,
            (None, Some(text)) => {
                let x = PermGroup::from_generators(parse_generators(text, None)?, budgets.max_group_order)?;
                u32::try_from(x.class_count_usize()?).map_err(|_| Error::Invalid("k(X) too large".into()))?
            }
            (None, None) => return Err(Error::Invalid("one of --k or --x is required".into())),
        };
        if k == 0 {
            return Err(Error::Invalid("k must be at least 1".into()));
        }
        Ok(k)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class number of X ≀ H.
    Count {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        k: KArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Transitivity, primitivity, semiprimitivity and numeric invariants of H.
    Classify {
        #[arg(long)]
        group: String,
        /// Also list every nontrivial block system.
        #[arg(long)]
        blocks: bool,
    },
    /// Evaluate bound reports.
    Bounds {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, value_enum, default_value_t = ESourceArg::Auto)]
        e_source: ESourceArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Upper end of the probe range `m..=m_to` for `lem100`.
        #[arg(long)]
        m_to: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Run a cross-check suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Class numbers for the `C₂ ≀ C_m` family at k = 2, as CSV.
    Scan {
        #[arg(long, default_value_t = 2)]
        m_from: usize,
        #[arg(long, default_value_t = 4)]
        m_to: usize,
    },
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run_with(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the CLI on `args` (including the program name).
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Error::OutputClosed) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                2
            } else {
                1
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::OutputClosed;
    }
    Error::Invalid(format!("write failed: {e}"))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    let budgets = g.budgets()?;
    match &cli.command {
        Command::Count { group, k, method } => {
            let k = k.resolve(&budgets)?;
            let h = build_family(group, &budgets)?;
            let results = count(&h, k, *method, &budgets)?;
            write_counts(&results, g.output, out).map_err(io)?;
            Ok(0)
        }
        Command::Classify { group, blocks } => classify(group, *blocks, g.output, &budgets, out),
        Command::Bounds {
            group,
            k,
            which,
            e_source,
            m,
            l,
            t,
            m_to,
            samples,
        } => {
            if *k == 0 {
                return Err(Error::Invalid("k must be at least 1".into()));
            }
            let req = BoundsRequest {
                group: group.as_deref(),
                k: *k,
                which: *which,
                e_source: (*e_source).into(),
                m: *m,
                l: *l,
                t: *t,
                m_to: *m_to,
                samples: *samples,
                seed: g.seed,
            };
            let reports = bound_reports(&req, &budgets)?;
            write_bounds(&reports, g.output, out).map_err(io)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(*suite, &budgets, g.jobs, g.seed)?;
            verify::write_outcomes(&outcomes, g.output, out).map_err(io)?;
            Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
        }
        Command::Scan { m_from, m_to } => {
            if m_from > m_to {
                return Err(Error::Invalid(format!("empty range {m_from}..={m_to}")));
            }
            let ms: Vec<usize> = (*m_from..=*m_to).collect();
            let rows = bounds::counterexample_scan(&ms, &budgets, g.jobs)?;
            match g.output {
                Output::Json => writeln!(out, "{}", json(&rows)),
                _ => write!(out, "{}", bounds::scan_csv(&rows)),
            }
            .map_err(io)?;
            Ok(0)
        }
    }
}

fn count(h: &PermGroup, k: u32, method: MethodArg, budgets: &Budgets) -> Result<Vec<CountResult>> {
    Ok(match method {
        MethodArg::Auto => vec![classcount::auto_count(h, k, budgets)?],
        MethodArg::Clifford => vec![classcount::clifford_count(h, k, budgets)?],
        MethodArg::Brute => vec![classcount::brute_force_count(k, h, budgets)?],
        MethodArg::ClosedForm => vec![classcount::closed_form_count(h, k)?
            .ok_or_else(|| Error::Invalid(format!("no closed form for `{}`", classcount::group_label(h))))?],
        MethodArg::All => classcount::count_all(h, k, budgets)?,
    })
}

const COUNT_CSV_HEADER: &str = "group,k,n,order,method,value,orbit_count";

fn write_counts(results: &[CountResult], output: Output, out: &mut dyn Write) -> std::io::Result<()> {
    let opt = |v: &Option<num_bigint::BigUint>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
    match output {
        Output::Json if results.len() == 1 => writeln!(out, "{}", results[0].to_json()),
        Output::Json => writeln!(out, "{}", json(&results)),
        Output::Csv => {
            writeln!(out, "{COUNT_CSV_HEADER}")?;
            for r in results {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    csv_field(&r.group),
                    r.k,
                    r.degree,
                    opt(&r.group_order),
                    r.method.as_str(),
                    r.value,
                    opt(&r.orbit_count)
                )?;
            }
            Ok(())
        }
        Output::Table => {
            for r in results {
                writeln!(out, "group        {}", r.group)?;
                writeln!(out, "k            {}", r.k)?;
                writeln!(out, "degree       {}", r.degree)?;
                if let Some(o) = &r.group_order {
                    writeln!(out, "order        {o}")?;
                }
                writeln!(out, "method       {}", r.method.as_str())?;
                writeln!(out, "value        {}", r.value)?;
                if let Some(f) = &r.orbit_count {
                    writeln!(out, "orbits       {f}")?;
                }
            }
            Ok(())
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Serialize)]
struct Classification {
    group: String,
    degree: usize,
    order: String,
    class_count: String,
    transitive: bool,
    semiregular: bool,
    primitive: bool,
    semiprimitive: bool,
    normal_subgroups: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<crate::permgroup::NumericInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_systems: Option<Vec<Vec<Vec<usize>>>>,
}

fn classify(spec: &str, blocks: bool, output: Output, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let h = build_family(spec, budgets)?;
    let s = h.structure_classify(budgets.max_normal_order)?;
    let order = h.order()?;
    let invariants = if h.is_trivial() {
        None
    } else {
        let want_e = h.order_usize()? <= budgets.max_lattice_order;
        Some(h.numeric_invariants(want_e, budgets.max_lattice_order)?)
    };
    let c = Classification {
        group: classcount::group_label(&h),
        degree: h.degree(),
        order: order.to_string(),
        class_count: h.class_count()?.to_string(),
        transitive: s.transitive,
        semiregular: s.semiregular,
        primitive: s.primitive,
        semiprimitive: s.semiprimitive,
        normal_subgroups: s.normal_subgroup_count,
        invariants,
        block_systems: blocks.then(|| h.block_systems().iter().map(|b| one_indexed(&b.blocks())).collect()),
    };
    let yes_no = |b: bool, yes: &str, no: &str| if b { yes.to_string() } else { no.to_string() };
    match output {
        Output::Json => writeln!(out, "{}", json(&c)),
        Output::Csv => {
            writeln!(out, "group,degree,order,class_count,transitive,semiregular,primitive,semiprimitive,normal_subgroups")
                .and_then(|_| {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        csv_field(&c.group),
                        c.degree,
                        c.order,
                        c.class_count,
                        c.transitive,
                        c.semiregular,
                        c.primitive,
                        c.semiprimitive,
                        c.normal_subgroups
                    )
                })
        }
        Output::Table => (|| {
            writeln!(out, "group          {}", c.group)?;
            writeln!(out, "degree         {}", c.degree)?;
            writeln!(out, "order          {}", c.order)?;
            writeln!(out, "classes        {}", c.class_count)?;
            writeln!(out, "transitive     {}", yes_no(c.transitive, "yes", "no"))?;
            writeln!(out, "semiregular    {}", yes_no(c.semiregular, "yes", "no"))?;
            writeln!(out, "primitivity    {}", yes_no(c.primitive, "primitive", "imprimitive"))?;
            writeln!(out, "semiprimitive  {}", yes_no(c.semiprimitive, "yes", "no"))?;
            writeln!(out, "normal subgrps {}", c.normal_subgroups)?;
            if let Some(inv) = &c.invariants {
                writeln!(out, "mu             {}", inv.mu)?;
                writeln!(out, "base size      {}", inv.b)?;
                writeln!(out, "max sigma      {}", inv.max_sigma)?;
                if let Some(e) = &inv.e {
                    writeln!(out, "e              {e}")?;
                }
            }
            if let Some(systems) = &c.block_systems {
                for s in systems {
                    let text: Vec<String> = s
                        .iter()
                        .map(|b| format!("{{{}}}", b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    writeln!(out, "blocks         {}", text.join(" "))?;
                }
            }
            Ok(())
        })(),
    }
    .map_err(io)?;
    Ok(0)
}

fn one_indexed(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.iter().map(|p| p + 1).collect()).collect()
}

struct BoundsRequest<'a> {
    group: Option<&'a str>,
    k: u32,
    which: Which,
    e_source: ESourceChoice,
    m: Option<usize>,
    l: Option<usize>,
    t: Option<usize>,
    m_to: Option<usize>,
    samples: usize,
    seed: u64,
}

/// One rendered block of `bounds` output.
#[derive(Debug, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
enum BoundsItem {
    Report(BoundReport),
    Semiprimitive(Box<bounds::SemiprimitiveReport>),
    Probe(bounds::Lem100Probe),
}

fn bound_reports(req: &BoundsRequest, budgets: &Budgets) -> Result<Vec<BoundsItem>> {
    let group = || -> Result<PermGroup> {
        let spec = req.group.ok_or_else(|| Error::Invalid("--group is required".into()))?;
        build_family(spec, budgets)
    };
    // (m, ℓ, t) from explicit flags, else from the group's family metadata
    let params = || -> Result<(usize, usize, usize)> {
        if let Some(m) = req.m {
            return Ok((m, req.l.unwrap_or(1), req.t.unwrap_or(1)));
        }
        let spec = req.group.ok_or_else(|| Error::Invalid("need --m or a large-base --group".into()))?;
        bounds::large_base_match(&Family::parse(spec)?)
            .ok_or_else(|| Error::Invalid(format!("`{spec}` is not a large-base family; pass --m/--l/--t")))
    };
    let k = req.k;
    let mut items = Vec::new();
    let one = |w: Which| -> Result<Vec<BoundsItem>> {
        Ok(match w {
            Which::Ee11 => vec![BoundsItem::Report(bounds::eq_ee11(&group()?, k, req.e_source, budgets)?)],
            Which::Predicates => bounds::predicates(&group()?, k, budgets)?
                .into_iter()
                .map(BoundsItem::Report)
                .collect(),
            Which::Prop11 => {
                let (m, l, _) = params()?;
                vec![BoundsItem::Report(bounds::prop11_bound(m, l, k, budgets)?)]
            }
            Which::Prop13 => {
                let (m, l, t) = params()?;
                vec![BoundsItem::Report(bounds::prop13_bound(m, l, t, k, budgets)?)]
            }
            Which::Lem15 => {
                let (m, l, t) = params()?;
                vec![BoundsItem::Report(bounds::lem15_check(m, l, t, k, budgets)?)]
            }
            Which::E14 => {
                let (m, l, _) = params()?;
                vec![BoundsItem::Report(bounds::e14_check(m, l, budgets)?)]
            }
            Which::Semiprimitive => vec![BoundsItem::Semiprimitive(Box::new(bounds::semiprimitive_report(
                &group()?,
                k,
                budgets,
            )?))],
            Which::Lem100 => {
                let from = req.m.unwrap_or(5);
                let to = req.m_to.unwrap_or(from);
                if from > to {
                    return Err(Error::Invalid(format!("empty range {from}..={to}")));
                }
                vec![BoundsItem::Probe(bounds::lem100_probe(from..=to, req.samples, req.seed)?)]
            }
            Which::All => unreachable!(),
        })
    };
    if req.which != Which::All {
        return one(req.which);
    }
    // everything applicable to the given group; budget refusals are skipped
    let h = group()?;
    let mut wanted = vec![Which::Ee11, Which::Predicates];
    let matched = h.family().and_then(bounds::large_base_match).is_some() || req.m.is_some();
    if matched {
        wanted.extend([Which::Prop11, Which::Prop13, Which::Lem15, Which::E14]);
    }
    if h.structure_classify(budgets.max_normal_order)?.semiprimitive && !h.is_primitive() {
        wanted.push(Which::Semiprimitive);
    }
    for w in wanted {
        match one(w) {
            Ok(v) => items.extend(v),
            Err(e) if e.is_budget() => {}
            Err(Error::InvalidParams { .. }) if matched => {}
            Err(e) => return Err(e),
        }
    }
    Ok(items)
}

const BOUNDS_CSV_HEADER: &str = "name,lhs,rhs,holds,mode,asymptotic,e_source";

fn report_rows(item: &BoundsItem) -> Vec<&BoundReport> {
    match item {
        BoundsItem::Report(r) => vec![r],
        BoundsItem::Semiprimitive(s) => {
            let mut v = vec![&s.alpha_bound, &s.chain_first_step, &s.chain];
            v.extend(s.gustafson.as_ref());
            v
        }
        BoundsItem::Probe(_) => Vec::new(),
    }
}

fn write_bounds(items: &[BoundsItem], output: Output, out: &mut dyn Write) -> std::io::Result<()> {
    match output {
        Output::Json => writeln!(out, "{}", json(&items)),
        Output::Csv => {
            writeln!(out, "{BOUNDS_CSV_HEADER}")?;
            for r in items.iter().flat_map(report_rows) {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.name,
                    csv_field(&r.lhs.to_string()),
                    csv_field(&r.rhs.to_string()),
                    r.holds.as_str(),
                    r.mode.as_str(),
                    r.asymptotic,
                    r.e_source.map(|e| e.as_str()).unwrap_or("")
                )?;
            }
            for item in items {
                if let BoundsItem::Probe(p) = item {
                    writeln!(out, "m,sampled,checked,counterexamples")?;
                    for row in &p.rows {
                        writeln!(out, "{},{},{},{}", row.m, row.sampled, row.checked, row.counterexamples)?;
                    }
                }
            }
            Ok(())
        }
        Output::Table => {
            for item in items {
                if let BoundsItem::Semiprimitive(s) = item {
                    writeln!(
                        out,
                        "semiprimitive {}: r={} |K|={} |H/K|={} K semiregular={} block sigma={}",
                        s.group, s.r, s.kernel_order, s.quotient_order, s.kernel_semiregular, s.block_sigma_holds
                    )?;
                    if let Some(e) = &s.e_k {
                        writeln!(out, "  e_K = {e}")?;
                    }
                }
                for r in report_rows(item) {
                    write!(out, "{:<28} {}  lhs={}  rhs={}  [{}", r.name, r.holds.as_str(), r.lhs, r.rhs, r.mode.as_str())?;
                    if r.asymptotic {
                        write!(out, ", asymptotic")?;
                    }
                    if let Some(e) = r.e_source {
                        write!(out, ", e={}", e.as_str())?;
                    }
                    writeln!(out, "]")?;
                }
                if let BoundsItem::Probe(p) = item {
                    for row in &p.rows {
                        writeln!(
                            out,
                            "m={:<3} {} checked={} counterexamples={}",
                            row.m,
                            if row.sampled { "sampled   " } else { "exhaustive" },
                            row.checked,
                            row.counterexamples
                        )?;
                    }
                    match p.threshold {
                        Some(m) => writeln!(out, "no counterexample from m={m} on (within the probed range)")?,
                        None => writeln!(out, "counterexamples persist to the end of the range")?,
                    }
                }
            }
            Ok(())
        }
    }
}
