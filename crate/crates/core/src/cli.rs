//! Command-line front end: argument parsing, dispatch, cache wiring and
//! exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::dsl::{parse_laurent, parse_session, DslError, Session, Span};
use crate::hilbert::{CacheError, HilbertEngine, HilbertError, SampleCache, StabilizationConfig};
use crate::lattice::{Monomial, MonomialIdeal};
use crate::rees::{
    check_reduction_equation_bounded, joint_reduction_check, reduction_number_dim1,
    reduction_number_monomial, BoxVerdict, OracleConfig, ReductionNumber, ReesError, ReesInstance,
};
use crate::report;
use crate::theorems::{
    check_equation_strict_g3, check_isw, check_kv2, check_necessary_conditions_g2, check_nog,
    check_scaling, explore_random, CheckKind, CheckResult, ExploreConfig, RingFamily, TheoremError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_STABILIZATION: i32 = 3;

/// Environment variable naming the sample cache file when `--cache` is absent.
pub const CACHE_ENV: &str = "REESMULT_CACHE";

// keeps the bounded reduction check at desk scale
const MAX_BOX_CELLS: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "reesmult", version, about = "Multiplicities of multi-graded extended Rees algebras of monomial ideals")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Sample cache file (falls back to $REESMULT_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Recompute every cached sample on load.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Base points per stabilization level.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub stab_window: u32,
    /// Largest diagonal base point tried.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..=4096))]
    pub stab_cap: u32,
    /// Cross-check e(N) and mu(N) from graded pieces.
    #[arg(long, global = true, value_enum, default_value_t = OracleMode::Off)]
    pub oracle: OracleMode,
    /// Search bound for reduction numbers.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(0..=256))]
    pub nmax: u32,
    /// Box radius |b_j| <= R for the bounded reduction-equation check.
    #[arg(long = "box", global = true, default_value_t = 3, value_name = "R")]
    pub box_radius: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Auto,
    On,
    Off,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal-multiplicity verdict for the extended Rees algebra of the ideals.
    Analyze {
        file: PathBuf,
        /// Comma-separated ideal names (default: every ideal, in order).
        #[arg(long, value_delimiter = ',')]
        ideals: Vec<String>,
    },
    /// One mixed multiplicity e(I1^[w1]|...|Ig^[wg]).
    Mixed {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        ideals: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
    },
    /// Colength of an ideal.
    Colength {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Reduction numbers, joint reductions and the bounded reduction equation.
    Reduction {
        file: PathBuf,
        /// Ideal whose reduction number is wanted.
        #[arg(long, conflicts_with = "ideals")]
        ideal: Option<String>,
        /// Candidate reduction J of --ideal (omit in dimension 1 for r(I)).
        #[arg(long, requires = "ideal")]
        by: Option<String>,
        /// Ideals of a Rees instance, for --elements or --equation.
        #[arg(long, value_delimiter = ',')]
        ideals: Vec<String>,
        /// Joint reduction candidates, e.g. "(1,0);(0,1)" or "4;5".
        #[arg(long, requires = "ideals", conflicts_with = "equation")]
        elements: Option<String>,
        /// Laurent generators, e.g. "t^(-1); (1)t^(1)".
        #[arg(long, requires = "ideals")]
        equation: Option<String>,
    },
    /// Run one theorem checker on named ideals.
    Verify {
        file: PathBuf,
        #[arg(long)]
        theorem: CheckKind,
        #[arg(long, value_delimiter = ',', required = true)]
        ideals: Vec<String>,
        /// kv2: exponent vector q with sum d-1; scaling: the index q.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        /// isw: one monomial per ideal, e.g. "(2,0);(0,3)".
        #[arg(long)]
        elements: Option<String>,
        /// scaling: the power r.
        #[arg(long, default_value_t = 2)]
        power: u32,
    },
    /// Seeded random search for violations.
    Explore {
        #[arg(long, value_enum, default_value_t = Family::Polynomial)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inclusive range of random generators per ideal, e.g. 1..3.
        #[arg(long, default_value = "1..3")]
        gens: String,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Comma-separated checkers (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Polynomial,
    Semigroup,
}

/// A failed command: exit code plus a structured error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
    pub span: Option<Span>,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, kind: kind.into(), message: message.into(), span: None }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure { code: EXIT_USAGE, kind: e.kind().into(), message: e.to_string(), span: Some(e.span()) }
    }
}

fn hilbert_failure(e: &HilbertError) -> Option<Failure> {
    match e {
        HilbertError::StabilizationFailure { .. } => Some(Failure {
            code: EXIT_STABILIZATION,
            kind: "StabilizationFailure".into(),
            message: e.to_string(),
            span: None,
        }),
        HilbertError::NonPositive(..) => {
            Some(Failure { code: EXIT_VIOLATION, kind: "NonPositive".into(), message: e.to_string(), span: None })
        }
        _ => None,
    }
}

impl From<HilbertError> for Failure {
    fn from(e: HilbertError) -> Self {
        hilbert_failure(&e).unwrap_or_else(|| Failure::usage("HilbertError", e.to_string()))
    }
}

impl From<ReesError> for Failure {
    fn from(e: ReesError) -> Self {
        match &e {
            ReesError::Hilbert(h) => {
                hilbert_failure(h).unwrap_or_else(|| Failure::usage("ReesError", e.to_string()))
            }
            ReesError::StabilizationFailure { .. } => Failure {
                code: EXIT_STABILIZATION,
                kind: "StabilizationFailure".into(),
                message: e.to_string(),
                span: None,
            },
            ReesError::NonIntegralResult { .. } => Failure {
                code: EXIT_VIOLATION,
                kind: "NonIntegralResult".into(),
                message: e.to_string(),
                span: None,
            },
            _ => Failure::usage("ReesError", e.to_string()),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Hilbert(h) => h.into(),
            TheoremError::Rees(r) => r.into(),
            other => Failure::usage("TheoremError", other.to_string()),
        }
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        let code = if matches!(e, CacheError::Inconsistency { .. }) { EXIT_VIOLATION } else { EXIT_USAGE };
        let kind = if code == EXIT_VIOLATION { "CacheInconsistency" } else { "CacheError" };
        Failure { code, kind: kind.into(), message: e.to_string(), span: None }
    }
}

/// A successful command's output and exit code (0, or 2 on a violation).
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

struct Context {
    flags: Flags,
    engine: HilbertEngine,
    started: Instant,
}

impl Context {
    fn elapsed(&self) -> u128 {
        self.started.elapsed().as_millis()
    }
}

/// Runs the CLI on explicit arguments; returns the exit code. `env_cache` is
/// the value of `$REESMULT_CACHE`, used only when `--cache` is absent.
pub fn run(args: Vec<OsString>, env_cache: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let json = cli.flags.json;
    match execute(cli, env_cache) {
        Ok(o) => {
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap_or_default())
            } else {
                out.write_all(o.text.as_bytes())
            };
            o.code
        }
        Err(f) => {
            if json {
                let v = report::error_json(&f.kind, &f.message, f.span);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            } else {
                let _ = writeln!(err, "error[{}]: {}", f.kind, f.message);
            }
            f.code
        }
    }
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let env_cache = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os().collect(), env_cache, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: Cli, env_cache: Option<PathBuf>) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let cache_path = cli.flags.cache.clone().or(env_cache);
    let cache = match &cache_path {
        Some(p) if p.exists() => SampleCache::load(p, cli.flags.verify_cache)?,
        _ => SampleCache::new(),
    };
    let config = StabilizationConfig { window: cli.flags.stab_window as usize, cap: cli.flags.stab_cap };
    let ctx = Context { flags: cli.flags, engine: HilbertEngine::with_cache(config, Arc::new(cache)), started };
    let result = dispatch(&ctx, cli.command);
    if let Some(p) = &cache_path {
        ctx.engine.cache().store(p)?;
    }
    result
}

fn dispatch(ctx: &Context, command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Analyze { file, ideals } => analyze(ctx, &load(&file)?, &ideals),
        Command::Mixed { file, ideals, weights } => mixed(ctx, &load(&file)?, &ideals, &weights),
        Command::Colength { file, ideal } => colength(ctx, &load(&file)?, &ideal),
        Command::Reduction { file, ideal, by, ideals, elements, equation } => {
            let session = load(&file)?;
            match (ideal, equation, elements) {
                (Some(i), _, _) => reduction_number(ctx, &session, &i, by.as_deref()),
                (None, Some(eq), _) => reduction_equation(ctx, &session, &ideals, &eq),
                (None, None, Some(el)) => joint_reduction(ctx, &session, &ideals, &el),
                (None, None, None) => Err(Failure::usage(
                    "UsageError",
                    "reduction needs --ideal, or --ideals with --elements or --equation",
                )),
            }
        }
        Command::Verify { file, theorem, ideals, q, elements, power } => {
            verify(ctx, &load(&file)?, theorem, &ideals, &q, elements.as_deref(), power)
        }
        Command::Explore { family, dim, g, trials, seed, gens, bound, checks } => {
            let gen_count = parse_range(&gens)?;
            let config = ExploreConfig {
                family: match family {
                    Family::Polynomial => RingFamily::Polynomial,
                    Family::Semigroup => RingFamily::Semigroup,
                },
                d: dim,
                g,
                gen_count,
                exponent_bound: bound,
                trials,
                seed,
                checks: if checks.is_empty() { CheckKind::ALL.to_vec() } else { checks },
            };
            explore(ctx, config)
        }
    }
}

fn load(path: &PathBuf) -> Result<Session, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage("IoError", format!("{}: {e}", path.display())))?;
    Ok(parse_session(&text)?)
}

fn lookup(session: &Session, names: &[String]) -> Result<Vec<MonomialIdeal>, Failure> {
    if names.is_empty() {
        return Err(Failure::usage("UsageError", "no ideals named"));
    }
    names
        .iter()
        .map(|n| {
            session.ideal(n).cloned().ok_or_else(|| Failure::usage("UndeclaredIdeal", format!("undeclared ideal {n}")))
        })
        .collect()
}

fn instance(session: &Session, names: &[String]) -> Result<ReesInstance, Failure> {
    let names: Vec<String> = if names.is_empty() {
        session.ideal_names().into_iter().map(String::from).collect()
    } else {
        names.to_vec()
    };
    let ideals = lookup(session, &names)?;
    Ok(ReesInstance::with_names(ideals, names)?)
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage("UsageError", format!("invalid range {s:?}; expected LO..HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

/// `"(1,0);(0,2)"` or `"4;5"`.
fn parse_monomials(s: &str, arity: usize) -> Result<Vec<Monomial>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let inner = p.strip_prefix('(').and_then(|q| q.strip_suffix(')')).unwrap_or(p);
            let v: Vec<u32> = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::usage("UsageError", format!("invalid monomial {p:?}")))?;
            if v.len() != arity {
                return Err(Failure::usage(
                    "ArityMismatch",
                    format!("monomial {p:?} has {} entries, ring needs {arity}", v.len()),
                ));
            }
            Ok(Monomial::new(v))
        })
        .collect()
}

fn violation_code(checks: &[CheckResult]) -> i32 {
    if checks.iter().any(CheckResult::is_violation) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn analyze(ctx: &Context, session: &Session, names: &[String]) -> Result<Outcome, Failure> {
    let inst = instance(session, names)?;
    let oracle = match ctx.flags.oracle {
        OracleMode::Off => None,
        OracleMode::On => Some(OracleConfig::default()),
        OracleMode::Auto => (inst.d() + inst.g() <= 4).then(OracleConfig::default),
    };
    let rep = inst.verdict(&ctx.engine, oracle)?;
    let checks = match inst.g() {
        2 => check_necessary_conditions_g2(&ctx.engine, &inst)?,
        g if g >= 3 => vec![check_equation_strict_g3(&ctx.engine, &inst)?],
        _ => Vec::new(),
    };
    let mut code = violation_code(&checks);
    if !rep.oracle_agrees() {
        code = EXIT_VIOLATION;
    }
    Ok(Outcome {
        json: report::analysis_json(&rep, &checks, ctx.elapsed()),
        text: report::analysis_text(&rep, &checks),
        code,
    })
}

fn mixed(ctx: &Context, session: &Session, names: &[String], weights: &[u32]) -> Result<Outcome, Failure> {
    let ideals = lookup(session, names)?;
    let value = ctx.engine.mixed(&ideals, weights)?;
    let echo: Vec<Value> = names
        .iter()
        .zip(&ideals)
        .zip(weights)
        .map(|((n, i), w)| serde_json::json!({ "name": n, "generators": i.to_string(), "weight": w }))
        .collect();
    let mut f = Map::new();
    f.insert("ring".into(), ideals[0].ring().to_string().into());
    f.insert("query".into(), Value::Array(echo));
    f.insert("value".into(), report::uint(&value));
    let query: Vec<String> = names.iter().zip(weights).map(|(n, w)| format!("{n}^[{w}]")).collect();
    let text = report::table(&[
        ("ring".into(), ideals[0].ring().to_string()),
        ("query".into(), format!("e({})", query.join("|"))),
        ("value".into(), value.to_string()),
    ]);
    Ok(Outcome { json: report::envelope("mixed", f, ctx.elapsed()), text, code: EXIT_OK })
}

fn colength(ctx: &Context, session: &Session, name: &str) -> Result<Outcome, Failure> {
    let ideal = lookup(session, &[name.to_string()])?.remove(0);
    let (json_value, text_value) = match &ideal.colength().finite() {
        Some(n) => (report::uint(n), n.to_string()),
        None => (Value::from("infinite"), "infinite".to_string()),
    };
    let mut f = Map::new();
    f.insert("ideal".into(), name.into());
    f.insert("generators".into(), ideal.to_string().into());
    f.insert("colength".into(), json_value);
    let text = report::table(&[
        ("ideal".into(), format!("{name} = {ideal}")),
        ("colength".into(), text_value),
    ]);
    Ok(Outcome { json: report::envelope("colength", f, ctx.elapsed()), text, code: EXIT_OK })
}

fn reduction_number(ctx: &Context, session: &Session, name: &str, by: Option<&str>) -> Result<Outcome, Failure> {
    let i = lookup(session, &[name.to_string()])?.remove(0);
    let mut f = Map::new();
    f.insert("ideal".into(), name.into());
    f.insert("generators".into(), i.to_string().into());
    let mut rows = vec![("ideal".to_string(), format!("{name} = {i}"))];
    let number = match by {
        Some(jn) => {
            let j = lookup(session, &[jn.to_string()])?.remove(0);
            f.insert("by".into(), jn.into());
            rows.push(("reduction".into(), format!("{jn} = {j}")));
            match reduction_number_monomial(&i, &j, ctx.flags.nmax)? {
                ReductionNumber::Exact(r) => Some(r),
                ReductionNumber::NotReduction => None,
            }
        }
        None => Some(reduction_number_dim1(&i)?),
    };
    f.insert("nMax".into(), ctx.flags.nmax.into());
    f.insert("isReduction".into(), number.is_some().into());
    f.insert("reductionNumber".into(), number.map_or(Value::Null, Value::from));
    rows.push((
        "reduction number".into(),
        number.map_or_else(|| format!("not a reduction (n <= {})", ctx.flags.nmax), |r| r.to_string()),
    ));
    Ok(Outcome { json: report::envelope("reduction", f, ctx.elapsed()), text: report::table(&rows), code: EXIT_OK })
}

fn joint_reduction(ctx: &Context, session: &Session, names: &[String], elements: &str) -> Result<Outcome, Failure> {
    let inst = instance(session, names)?;
    let xs = parse_monomials(elements, inst.ring().arity())?;
    let holds = joint_reduction_check(&xs, &inst, ctx.flags.nmax)?;
    let kind = inst.ring().kind();
    let rendered: Vec<String> = xs.iter().map(|x| x.render(kind)).collect();
    let mut f = Map::new();
    f.insert("instance".into(), inst.to_string().into());
    f.insert("elements".into(), rendered.clone().into());
    f.insert("nMax".into(), ctx.flags.nmax.into());
    f.insert("jointReduction".into(), holds.into());
    let text = report::table(&[
        ("instance".into(), inst.to_string()),
        ("elements".into(), rendered.join(", ")),
        ("joint reduction".into(), holds.to_string()),
    ]);
    Ok(Outcome { json: report::envelope("reduction", f, ctx.elapsed()), text, code: EXIT_OK })
}

fn reduction_equation(ctx: &Context, session: &Session, names: &[String], equation: &str) -> Result<Outcome, Failure> {
    let inst = instance(session, names)?;
    let gens = parse_laurent(equation, inst.ring(), inst.g())?;
    let radius = ctx.flags.box_radius;
    let verdict = check_reduction_equation_bounded(&inst, &gens, radius, MAX_BOX_CELLS)?;
    let (holds, at) = match &verdict {
        BoxVerdict::HoldsOnBox { .. } => (true, Value::Null),
        BoxVerdict::FailsAt(b) => (false, Value::from(b.clone())),
    };
    let rendered: Vec<String> = gens.iter().map(ToString::to_string).collect();
    let mut f = Map::new();
    f.insert("instance".into(), inst.to_string().into());
    f.insert("generators".into(), rendered.clone().into());
    f.insert("box".into(), radius.into());
    f.insert("holdsOnBox".into(), holds.into());
    f.insert("failsAt".into(), at);
    let verdict_text = match &verdict {
        BoxVerdict::HoldsOnBox { radius } => format!("holds on |b_j| <= {radius}"),
        BoxVerdict::FailsAt(b) => format!("fails at multidegree {b:?}"),
    };
    let text = report::table(&[
        ("instance".into(), inst.to_string()),
        ("generators".into(), rendered.join("; ")),
        ("J N = N^2".into(), verdict_text),
    ]);
    Ok(Outcome { json: report::envelope("reduction", f, ctx.elapsed()), text, code: EXIT_OK })
}

fn verify(
    ctx: &Context,
    session: &Session,
    theorem: CheckKind,
    names: &[String],
    q: &[u32],
    elements: Option<&str>,
    power: u32,
) -> Result<Outcome, Failure> {
    let ideals = lookup(session, names)?;
    let engine = &ctx.engine;
    let d = ideals[0].ring().dim();
    let checks: Vec<CheckResult> = match theorem {
        CheckKind::Nog => ideals.iter().map(|i| check_nog(engine, i)).collect::<Result<_, _>>()?,
        CheckKind::Kv2 => {
            let q = if q.is_empty() {
                let mut v = vec![0; ideals.len()];
                v[0] = d as u32 - 1;
                v
            } else {
                q.to_vec()
            };
            vec![check_kv2(engine, &ideals, &q)?]
        }
        CheckKind::Isw => {
            let el = elements.ok_or_else(|| Failure::usage("UsageError", "isw needs --elements"))?;
            let xs = parse_monomials(el, ideals[0].ring().arity())?;
            vec![check_isw(engine, &ideals, &xs)?]
        }
        CheckKind::Scaling => {
            let qs: Vec<usize> = if q.is_empty() { (0..d).collect() } else { q.iter().map(|&x| x as usize).collect() };
            let mut out = Vec::new();
            for i in &ideals {
                for &qq in &qs {
                    out.extend(check_scaling(engine, i, power, qq)?);
                }
            }
            out
        }
        CheckKind::G3 => vec![check_equation_strict_g3(engine, &instance(session, names)?)?],
        CheckKind::G2 => check_necessary_conditions_g2(engine, &instance(session, names)?)?,
    };
    let mut f = Map::new();
    f.insert("theorem".into(), theorem.name().into());
    f.insert("checks".into(), report::checks_json(&checks));
    let violations = checks.iter().filter(|c| c.is_violation()).count();
    f.insert("violations".into(), violations.into());
    Ok(Outcome {
        json: report::envelope("verify", f, ctx.elapsed()),
        text: report::checks_text(&checks),
        code: violation_code(&checks),
    })
}

fn explore(ctx: &Context, config: ExploreConfig) -> Result<Outcome, Failure> {
    let summary = explore_random(&ctx.engine, &config)?;
    let code = if summary.total_violations() > 0 { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome { json: report::explore_json(&summary, ctx.elapsed()), text: report::explore_text(&summary), code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_monomials() {
        assert_eq!(parse_range("1..3").unwrap(), (1, 3));
        assert!(parse_range("3").is_err());
        let m = parse_monomials("(1,0); (0,2)", 2).unwrap();
        assert_eq!(m, vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 2])]);
        assert_eq!(parse_monomials("4;5", 1).unwrap().len(), 2);
        assert_eq!(parse_monomials("(1,0,0)", 2).unwrap_err().kind, "ArityMismatch");
        assert!(parse_monomials("x", 1).is_err());
    }

    #[test]
    fn failure_codes() {
        let stab = HilbertError::StabilizationFailure { base: 64, previous: 1.into(), last: 2.into() };
        assert_eq!(Failure::from(stab.clone()).code, EXIT_STABILIZATION);
        assert_eq!(Failure::from(TheoremError::Rees(ReesError::Hilbert(stab))).code, EXIT_STABILIZATION);
        assert_eq!(Failure::from(TheoremError::NotMPrimary("I".into())).code, EXIT_USAGE);
        assert_eq!(Failure::from(HilbertError::EmptyQuery).code, EXIT_USAGE);
    }
}
