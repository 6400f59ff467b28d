mod cache;

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pbw_core::checks::{self, CheckConfig, CheckReport, CHECK_NAMES};
use pbw_core::dyck_paths::{type1_paths, type2_paths, DyckPath};
use pbw_core::enumeration::{self, EnumOptions, LatticeSetJson};
use pbw_core::minkowski::MinkowskiOptions;
use pbw_core::par::Execution;
use pbw_core::polytopes::{Family, InequalitySystem};
use pbw_core::root_system::{hasse_covers, Kind, Root, RootSystem, Weight};
use pbw_core::Error;

use cache::Cache;

#[derive(Parser)]
#[command(name = "pbw", version, about = "Lattice-point polytopes for PBW bases in types B and G2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Maximum number of materialized lattice points.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_points: Option<u64>,
    /// Maximum pair evaluations per Minkowski sum.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_pairs: Option<u64>,
    /// Directory for cached lattice sets.
    #[arg(long, env = "PBW_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    B,
    G2,
}

#[derive(Args)]
struct Target {
    /// Root system type.
    #[arg(long = "type", value_enum, default_value_t = TypeArg::B)]
    kind: TypeArg,
    /// Rank for type B.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Column of the rectangular family `m·ω_i`.
    #[arg(long)]
    i: Option<usize>,
    /// Highest weight in fundamental coordinates, e.g. `1,0,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<i64>>,
    /// Multiple of `ω_i` for the rectangular family.
    #[arg(long)]
    m: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// List positive roots, or `R_i^+` with --i, and their Hasse cover edges.
    Roots {
        #[arg(long = "type", value_enum, default_value_t = TypeArg::B)]
        kind: TypeArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// List the Dyck paths of column `i` in B_n.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Print the inequality system of a family.
    System {
        #[command(flatten)]
        target: Target,
    },
    /// Count lattice points.
    Count {
        #[command(flatten)]
        target: Target,
    },
    /// Enumerate lattice points.
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Omit the point list.
        #[arg(long)]
        count_only: bool,
    },
    /// Run one named check.
    Verify {
        /// Check name; `pbw reproduce list` shows them all.
        check: String,
        #[command(flatten)]
        params: VerifyParams,
    },
    /// Run every check (`all`) or list their names (`list`).
    Reproduce {
        what: String,
        #[command(flatten)]
        params: VerifyParams,
    },
}

#[derive(Args)]
struct VerifyParams {
    /// Bound on `m1+m2+m3` for the B3 dimension sweep.
    #[arg(long, default_value_t = 6)]
    bound: u64,
    /// Total degree for the B3 simplex check.
    #[arg(long, default_value_t = 9)]
    d: u64,
    /// Random instances per family for the containment check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Largest `k` for the normality check.
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Restrict rectangular checks to one instance; needs --i and --m.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Errors caused by bad arguments rather than failed computations.
fn is_usage_error(e: &anyhow::Error) -> bool {
    e.downcast_ref::<UsageError>().is_some()
        || matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::RankOutOfRange { .. }
                    | Error::InvalidLabel { .. }
                    | Error::ColumnOutOfRange { .. }
                    | Error::TruncationOutOfRange { .. }
                    | Error::NotTypeB
                    | Error::RankMismatch { .. }
                    | Error::NotDominant(_)
                    | Error::Invalid(_)
            )
        )
}

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
    exec: Execution,
    opts: MinkowskiOptions,
    cache: Cache,
}

impl Ctx {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.emit(&s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}

fn execution(workers: Option<u64>) -> Result<Execution> {
    if workers == Some(1) || !cfg!(feature = "parallel") {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    if let Some(w) = workers {
        rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global()?;
    }
    Ok(Execution::Parallel)
}

fn run(cli: Cli) -> Result<bool> {
    let g = cli.global;
    let exec = execution(g.workers)?;
    let ctx = Ctx {
        format: g.format,
        out: g.out,
        exec,
        opts: MinkowskiOptions { exec, max_pairs: g.budget_pairs.map(u128::from), max_points: g.budget_points },
        cache: Cache::new(if g.no_cache { None } else { g.cache_dir }),
    };
    match cli.command {
        Command::Roots { kind, n, i } => cmd_roots(&ctx, kind, n, i).map(|_| true),
        Command::Paths { n, i } => cmd_paths(&ctx, n, i).map(|_| true),
        Command::System { target } => cmd_system(&ctx, &target).map(|_| true),
        Command::Count { target } => cmd_enumerate(&ctx, &target, true, true).map(|_| true),
        Command::Enumerate { target, count_only } => cmd_enumerate(&ctx, &target, count_only, false).map(|_| true),
        Command::Verify { check, params } => cmd_verify(&ctx, &[check.as_str()], &params),
        Command::Reproduce { what, params } => match what.as_str() {
            "list" => {
                let mut s = CHECK_NAMES.join("\n");
                s.push('\n');
                ctx.emit(&s)?;
                Ok(true)
            }
            "all" => cmd_verify(&ctx, CHECK_NAMES, &params),
            other => Err(usage(format!("expected `all` or `list`, got `{other}`"))),
        },
    }
}

fn root_system(kind: TypeArg, n: usize) -> Result<RootSystem> {
    Ok(match kind {
        TypeArg::B => RootSystem::b(n)?,
        TypeArg::G2 => RootSystem::g2(),
    })
}

fn cmd_roots(ctx: &Ctx, kind: TypeArg, n: usize, i: Option<usize>) -> Result<()> {
    let rs = root_system(kind, n)?;
    let roots: Vec<Root> = match i {
        Some(i) => rs.radical_roots(i)?,
        None => rs.positive_roots().to_vec(),
    };
    let covers = hasse_covers(&roots);
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({
            "type": rs.kind().to_string(),
            "rank": rs.rank(),
            "column": i,
            "roots": roots.iter().map(|r| json!({
                "label": r.label,
                "simple_coeffs": r.simple_coeffs,
                "eps_x2": r.eps_x2,
                "height": r.height(),
            })).collect::<Vec<_>>(),
            "covers": covers,
        })),
        Format::Csv => {
            let mut s = String::from("label,simple_coeffs,eps_x2,height\n");
            for r in &roots {
                let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                writeln!(s, "{},{},{},{}", r.label, join(&r.simple_coeffs), join(&r.eps_x2), r.height())?;
            }
            ctx.emit(&s)
        }
        Format::Table => {
            let mut s = String::new();
            let name = if rs.kind() == Kind::G2 { "G2".to_string() } else { format!("B{}", rs.rank()) };
            writeln!(s, "{name}: {} roots", roots.len())?;
            writeln!(s, "{:<10} {:<20} {:<20} height", "label", "simple", "coords")?;
            for r in &roots {
                writeln!(s, "{:<10} {:<20} {:<20} {}", r.label.to_string(), format!("{:?}", r.simple_coeffs), format!("{:?}", r.eps_x2), r.height())?;
            }
            writeln!(s, "covers ({}):", covers.len())?;
            for (a, b) in &covers {
                writeln!(s, "  {a} < {b}")?;
            }
            ctx.emit(&s)
        }
    }
}

fn path_line(p: &DyckPath) -> String {
    p.roots.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_paths(ctx: &Ctx, n: usize, i: usize) -> Result<()> {
    let rs = RootSystem::b(n)?;
    let t1 = type1_paths(&rs, i)?;
    let t2 = type2_paths(&rs, i)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({
            "n": n,
            "i": i,
            "counts": { "type1": t1.len(), "type2": t2.len() },
            "type1": t1,
            "type2": t2,
        })),
        _ => {
            let mut s = String::new();
            writeln!(s, "B{n}, i={i}: {} type-1, {} type-2", t1.len(), t2.len())?;
            for p in &t1 {
                writeln!(s, "type1 {}", path_line(p))?;
            }
            for p in &t2 {
                writeln!(s, "type2 {}", path_line(p))?;
            }
            ctx.emit(&s)
        }
    }
}

fn resolve(target: &Target) -> Result<(Family, InequalitySystem, Option<Weight>)> {
    let family = match (target.kind, target.i) {
        (TypeArg::G2, None) => Family::G2,
        (TypeArg::G2, Some(_)) => return Err(usage("--i only applies to type B")),
        (TypeArg::B, Some(i)) => Family::Rectangular { n: target.n, i },
        (TypeArg::B, None) if target.n == 3 => Family::B3,
        (TypeArg::B, None) => return Err(usage("type B without --i is only available for n = 3")),
    };
    let sys = family.system()?;
    let weight = match (&target.lambda, target.m, family) {
        (Some(_), Some(_), _) => return Err(usage("give either --lambda or --m")),
        (Some(l), None, _) => Some(Weight(l.clone())),
        (None, Some(m), Family::Rectangular { .. }) => family.rectangular_weight(m),
        (None, Some(_), _) => return Err(usage("--m needs --i")),
        (None, None, _) => None,
    };
    if let Some(w) = &weight {
        family.root_system()?.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()).into());
        }
    }
    Ok((family, sys, weight))
}

fn cmd_system(ctx: &Ctx, target: &Target) -> Result<()> {
    let (_, sys, weight) = resolve(target)?;
    match ctx.format {
        Format::Json => {
            let mut doc = serde_json::to_value(sys.to_json())?;
            if let Some(w) = &weight {
                let conc = sys.instantiate(w)?;
                doc["lambda"] = json!(w);
                doc["rhs"] = json!(conc.rows.iter().map(|r| r.rhs).collect::<Vec<_>>());
            }
            ctx.emit_json(&doc)
        }
        _ => {
            let conc = weight.as_ref().map(|w| sys.instantiate(w)).transpose()?;
            let mut s = String::new();
            writeln!(s, "{} over {} coordinates, {} rows", sys.name(), sys.ambient().len(), sys.rows().len())?;
            for (k, row) in sys.rows().iter().enumerate() {
                let lhs = row
                    .coeffs
                    .iter()
                    .map(|&(j, c)| if c == 1 { format!("s[{}]", sys.ambient()[j]) } else { format!("{c}*s[{}]", sys.ambient()[j]) })
                    .collect::<Vec<_>>()
                    .join(" + ");
                let rhs = match &conc {
                    Some(c) => c.rows[k].rhs.to_string(),
                    None => format!("{:?}.lambda", row.rhs_form.0),
                };
                writeln!(s, "{lhs} <= {rhs}    [{}]", row.tag)?;
            }
            ctx.emit(&s)
        }
    }
}

fn cmd_enumerate(ctx: &Ctx, target: &Target, count_only: bool, fast_count: bool) -> Result<()> {
    let (_, sys, weight) = resolve(target)?;
    let weight = weight.ok_or_else(|| usage("need --lambda or --m"))?;
    let key = Cache::key(&json!({
        "system": sys.to_json(),
        "lambda": weight,
        "points": !(count_only && fast_count),
    }));
    let doc = match ctx.cache.get(&key) {
        Some(doc) => doc,
        None => {
            let conc = sys.instantiate(&weight)?;
            let doc = if count_only && fast_count {
                let count = enumeration::count_with(&conc, ctx.exec)?;
                let count = u64::try_from(count).map_err(|_| Error::Overflow("count"))?;
                LatticeSetJson { system: sys.name().to_string(), lambda: weight.clone(), ambient: conc.ambient.clone(), count, points: None }
            } else {
                let set = enumeration::enumerate_with(&conc, &EnumOptions { exec: ctx.exec, max_points: ctx.opts.max_points })?;
                set.to_json(true)
            };
            ctx.cache.put(&key, &doc)?;
            doc
        }
    };
    let mut doc = doc;
    if count_only {
        doc.points = None;
    }
    match ctx.format {
        Format::Json => ctx.emit_json(&doc),
        Format::Csv => match doc.points {
            Some(_) => ctx.emit(&doc.into_set()?.to_csv()),
            None => ctx.emit(&format!("count\n{}\n", doc.count)),
        },
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "{} at {}: {} points", doc.system, doc.lambda, doc.count)?;
            if let Some(points) = &doc.points {
                writeln!(s, "{}", doc.ambient.iter().map(|l| format!("{:>7}", l.to_string())).collect::<String>())?;
                for p in points {
                    writeln!(s, "{}", p.iter().map(|v| format!("{v:>7}")).collect::<String>())?;
                }
            }
            ctx.emit(&s)
        }
    }
}

fn check_config(ctx: &Ctx, p: &VerifyParams) -> Result<CheckConfig> {
    let rectangular = match (p.n, p.i, p.m) {
        (None, None, None) => None,
        (Some(n), Some(i), Some(m)) => Some((n, i, m)),
        (Some(n), None, None) => Some((n, 3, 2)),
        _ => return Err(usage("--n, --i and --m must be given together")),
    };
    if p.k_max < 2 {
        return Err(usage("--k-max must be at least 2"));
    }
    Ok(CheckConfig {
        opts: ctx.opts,
        sweep_bound: p.bound,
        simplex_degree: p.d,
        samples: p.samples,
        seed: p.seed,
        k_max: p.k_max,
        rectangular,
        ..CheckConfig::default()
    })
}

fn cmd_verify(ctx: &Ctx, names: &[&str], params: &VerifyParams) -> Result<bool> {
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(n)) {
        return Err(usage(format!("unknown check `{bad}`; known: {}", CHECK_NAMES.join(", "))));
    }
    let cfg = check_config(ctx, params)?;
    let mut reports: Vec<CheckReport> = Vec::new();
    for name in names {
        reports.push(checks::run_check(name, &cfg)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    match ctx.format {
        Format::Json if reports.len() == 1 => ctx.emit_json(&reports[0])?,
        Format::Json => ctx.emit_json(&json!({ "passed": passed, "checks": reports }))?,
        _ => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{:<4} {:<24} {:>8.2}s  {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.seconds, r.summary)?;
            }
            if reports.len() > 1 {
                let failed = reports.iter().filter(|r| !r.passed).count();
                writeln!(s, "{} checks, {} failed", reports.len(), failed)?;
            }
            ctx.emit(&s)?;
        }
    }
    Ok(passed)
}
