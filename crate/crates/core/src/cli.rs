//! Argument parsing and dispatch for the `weakmodel` binary.
//!
//! Options can also come from a JSON file passed with `--config`. Its top-level
//! scalar keys are flag names (`{"n": 2, "N-max": 500}`) and apply to every
//! subcommand that accepts them; a key named after a subcommand holds an object
//! of flags for that subcommand only. Flags given on the command line win.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 resource cap.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adic::SchemeParams;
use crate::error::{invalid, Error, Result};
use crate::euclid::{self, Endpoint, QuadraticScheme};
use crate::format;
use crate::patterns::{self, CensusMode, EntropyInput, Shape};
use crate::sieve::{self, Family, LatticeBox};
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "weakmodel", version, about = "k-free lattice points as weak model sets")]
#[command(args_override_self = true)]
pub struct Cli {
    /// JSON file with default flag values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the points of a family in a box.
    Sieve(SieveArgs),
    /// Relative frequencies along growing boxes, with the window-measure sandwich.
    Density(DensityArgs),
    /// CRT hole certificate, or the smallest hole with --scan.
    Holes(HolesArgs),
    /// Pattern census as JSON.
    Patterns(PatternArgs),
    /// Exact admissible pattern counts.
    Oracle(OracleArgs),
    /// Per-site pattern entropy with analytic bounds.
    Entropy(EntropyArgs),
    /// Reports for the regular quadratic-irrational contrast set.
    Euclid(EuclidArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SchemeArgs {
    /// Lattice dimension.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Power-freeness exponent.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
}

impl SchemeArgs {
    fn params(&self) -> Result<SchemeParams> {
        SchemeParams::new(self.n, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Kfree,
    Truncated,
    Complement,
    Full,
    Empty,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Kfree)]
    pub family: FamilyArg,
    /// Prime bound of the truncated window.
    #[arg(long = "P", default_value_t = 3)]
    pub p: u64,
}

impl FamilyArgs {
    fn family(&self) -> Family {
        match self.family {
            FamilyArg::Kfree => Family::KFree,
            FamilyArg::Truncated => Family::Truncated(self.p),
            FamilyArg::Complement => Family::Complement,
            FamilyArg::Full => Family::Full,
            FamilyArg::Empty => Family::Empty,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    /// Box size: `[1, N]` for n = 1, `[-N, N]^n` otherwise.
    #[arg(long = "N-max")]
    pub n_max: Option<u64>,
    /// Explicit lower corner, comma separated (needs --hi).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "hi")]
    pub lo: Option<Vec<i64>>,
    /// Explicit upper corner, comma separated (needs --lo).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "lo")]
    pub hi: Option<Vec<i64>>,
}

impl RegionArgs {
    fn region(&self, n: usize, default_n: u64) -> Result<LatticeBox> {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => LatticeBox::new(lo.clone(), hi.clone()),
            _ => standard_box(n, self.n_max.unwrap_or(default_n)),
        }
    }
}

fn standard_box(n: usize, size: u64) -> Result<LatticeBox> {
    if n == 1 {
        LatticeBox::interval(1, size as i64)
    } else {
        LatticeBox::cube(n, size)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    /// Interval shape `{0, ..., L-1}` (n = 1).
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Cube shape `{0, ..., side-1}^n`.
    #[arg(long, conflicts_with = "l")]
    pub side: Option<u64>,
    /// Centred cube shape `[-r, r]^n`.
    #[arg(long, conflicts_with_all = ["l", "side"])]
    pub radius: Option<u64>,
}

impl ShapeArgs {
    fn shape(&self, n: usize) -> Result<Shape> {
        match (self.l, self.side, self.radius) {
            (Some(l), _, _) if n == 1 => Shape::interval(l),
            (Some(_), _, _) => Err(invalid("--L needs n = 1; use --side or --radius")),
            (_, Some(s), _) => Shape::cube(n, s),
            (_, _, Some(r)) => Shape::centered_cube(n, r),
            _ => Err(invalid("give a shape with --L, --side or --radius")),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SieveArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub region: RegionArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest box size.
    #[arg(long = "N-max", default_value_t = 1_000_000)]
    pub n_max: u64,
    /// Box sizes to scan (default: powers of ten up to N-max, then N-max).
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<u64>>,
    #[arg(long = "zeta-tol", default_value_t = 1e-9)]
    pub zeta_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct HolesArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Side length of the hole.
    #[arg(long, default_value_t = 3)]
    pub m: u64,
    /// Search for the smallest hole instead of building a CRT certificate.
    #[arg(long)]
    pub scan: bool,
    /// Coordinate bound for --scan.
    #[arg(long, default_value_t = 10_000)]
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Centered,
    Coloured,
}

#[derive(Debug, Clone, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Coloured)]
    pub mode: ModeArg,
    /// Include the pattern list.
    #[arg(long)]
    pub list: bool,
    /// Also census the complement and check colour inversion.
    #[arg(long)]
    pub complement: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Largest shape size to enumerate.
    #[arg(long, default_value_t = patterns::DEFAULT_ORACLE_CAP)]
    pub cap: usize,
    /// Include the admissible patterns.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Oracle,
    Census,
}

#[derive(Debug, Clone, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Shape sides: interval lengths for n = 1, cube sides otherwise.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = SourceArg::Oracle)]
    pub source: SourceArg,
    /// Box size for census counts.
    #[arg(long = "N-max")]
    pub n_max: Option<u64>,
    /// Cylinder prime bounds, one for all rows or one per row.
    #[arg(long = "P-U", value_delimiter = ',', default_value = "1000")]
    pub p_u: Vec<u64>,
    #[arg(long, default_value_t = patterns::DEFAULT_ORACLE_CAP)]
    pub cap: usize,
    #[arg(long = "zeta-tol", default_value_t = 1e-9)]
    pub zeta_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EuclidReport {
    Points,
    Density,
    Entropy,
}

#[derive(Debug, Clone, Args)]
pub struct EuclidArgs {
    /// Non-square `d` of `Z[√d]`.
    #[arg(long, default_value_t = 2)]
    pub d: u64,
    /// Window lower end: an integer, a real, or `u:v:w` for `(u + v√d)/w`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub lo: String,
    /// Window upper end, same forms as --lo.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub hi: String,
    #[arg(long, value_enum, default_value_t = EuclidReport::Density)]
    pub report: EuclidReport,
    /// Segment length for points and entropy.
    #[arg(long = "T", default_value_t = 20_000.0)]
    pub t: f64,
    /// Segment lengths for the density report.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub schedule: Vec<f64>,
    /// Patch lengths for the entropy report.
    #[arg(long = "L", value_delimiter = ',', default_value = "1,10,50,100,200")]
    pub l: Vec<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Smaller problem sizes.
    #[arg(long)]
    pub quick: bool,
    /// JSON instead of one line per check.
    #[arg(long)]
    pub json: bool,
}

/// Parse, run and map the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(e) => return report_error(&e),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

const SUBCOMMANDS: [&str; 8] =
    ["sieve", "density", "holes", "patterns", "oracle", "entropy", "euclid", "verify"];

/// Splice `--config` values in right after the subcommand name.
fn with_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let strs: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut path = None;
    let mut sub = None;
    let mut i = 1;
    while i < strs.len() {
        let a = &strs[i];
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = strs.get(i + 1).cloned();
            i += 1;
        } else if matches!(a.as_str(), "--out" | "--threads") {
            i += 1;
        } else if sub.is_none() && SUBCOMMANDS.contains(&a.as_str()) {
            sub = Some(i);
        }
        i += 1;
    }
    let (Some(path), Some(sub)) = (path, sub) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| invalid(format!("cannot read config {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| invalid(format!("config {path}: {e}")))?;
    let tokens = config_tokens(&value, &strs[sub])?;
    let mut out = args[..=sub].to_vec();
    out.extend(tokens.into_iter().map(OsString::from));
    out.extend_from_slice(&args[sub + 1..]);
    Ok(out)
}

fn config_tokens(config: &Value, sub: &str) -> Result<Vec<String>> {
    let Value::Object(map) = config else {
        return Err(invalid("config must be a JSON object"));
    };
    let cmd = Cli::command();
    let accepted: Vec<String> = cmd
        .find_subcommand(sub)
        .map(|c| c.get_arguments().filter_map(|a| a.get_long().map(str::to_string)).collect())
        .unwrap_or_default();
    let known_anywhere = |key: &str| {
        cmd.get_subcommands()
            .any(|c| c.get_arguments().any(|a| a.get_long() == Some(key)))
    };
    let mut tokens = Vec::new();
    let mut push = |key: &str, v: &Value, strict: bool| -> Result<()> {
        if matches!(key, "config" | "out" | "threads") {
            return Err(invalid(format!("config key {key} must be given on the command line")));
        }
        if !accepted.iter().any(|a| a == key) {
            if strict || !known_anywhere(key) {
                return Err(invalid(format!("config key {key} is not an option of {sub}")));
            }
            return Ok(());
        }
        match v {
            Value::Bool(true) => tokens.push(format!("--{key}")),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_>>()?;
                tokens.push(format!("--{key}={}", parts.join(",")));
            }
            other => tokens.push(format!("--{key}={}", scalar(other)?)),
        }
        Ok(())
    };
    for (key, v) in map {
        if SUBCOMMANDS.contains(&key.as_str()) {
            continue;
        }
        push(key, v, false)?;
    }
    if let Some(section) = map.get(sub) {
        let Value::Object(section) = section else {
            return Err(invalid(format!("config section {sub} must be an object")));
        };
        for (key, v) in section {
            push(key, v, true)?;
        }
    }
    Ok(tokens)
}

fn scalar(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(invalid(format!("unsupported config value {v}"))),
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = cli.threads {
            if t == 0 {
                return Err(invalid("--threads must be at least 1"));
            }
            b = b.num_threads(t);
        }
        b.build().map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?
    };
    let mut out: Box<dyn Write + Send> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| invalid(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let code = pool.install(|| dispatch(&cli.command, out.as_mut()))?;
    out.flush()?;
    Ok(code)
}

fn dispatch(cmd: &Command, out: &mut (dyn Write + Send)) -> Result<i32> {
    match cmd {
        Command::Sieve(a) => sieve_cmd(a, out),
        Command::Density(a) => density_cmd(a, out),
        Command::Holes(a) => holes_cmd(a, out),
        Command::Patterns(a) => patterns_cmd(a, out),
        Command::Oracle(a) => oracle_cmd(a, out),
        Command::Entropy(a) => entropy_cmd(a, out),
        Command::Euclid(a) => euclid_cmd(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }?;
    Ok(EXIT_OK)
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn sieve_cmd(a: &SieveArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    let region = a.region.region(params.n(), if params.n() == 1 { 1000 } else { 20 })?;
    let set = a.family.family().set(params)?;
    let points = sieve::points_in(set.as_ref(), &region)?;
    sieve::write_points(out, &points)?;
    Ok(())
}

/// Powers of ten below `n_max`, then `n_max`.
fn decades(n_max: u64, start: u64) -> Vec<u64> {
    let mut v: Vec<u64> = std::iter::successors(Some(start), |x| x.checked_mul(10))
        .take_while(|&x| x < n_max)
        .collect();
    v.push(n_max);
    v
}

fn density_cmd(a: &DensityArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    let sizes = match &a.schedule {
        Some(s) => s.clone(),
        None => decades(a.n_max, 10),
    };
    let boxes = sizes
        .iter()
        .map(|&s| standard_box(params.n(), s))
        .collect::<Result<Vec<_>>>()?;
    let table = sieve::density_scan(a.family.family(), params, &boxes, a.zeta_tol)?;
    table.write_csv(out)?;
    Ok(())
}

fn holes_cmd(a: &HolesArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    if a.scan {
        let t = sieve::scan_hole(params, a.m, a.limit)?;
        let v = json!({
            "schema": format::HOLE_SCAN_SCHEMA,
            "n": params.n(),
            "k": params.k(),
            "m": a.m,
            "limit": a.limit,
            "found": t.is_some(),
            "t": t,
        });
        return write_json(out, &v);
    }
    let cert = sieve::crt_hole(params, a.m)?;
    cert.verify()
        .map_err(|e| Error::Unsupported(format!("certificate failed its own check: {e}")))?;
    write_json(out, &cert.to_json())
}

fn patterns_cmd(a: &PatternArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    let region = a.region.region(params.n(), if params.n() == 1 { 1_000_000 } else { 200 })?;
    let shape = a.shape.shape(params.n())?;
    let set = a.family.family().set(params)?;
    if a.complement {
        let r = patterns::complement_census(&set, &region, &shape)?;
        let v = json!({
            "schema": format::CENSUS_SCHEMA,
            "primary": r.primary.to_json(a.list),
            "complement": r.complement.to_json(a.list),
            "counts_equal": r.counts_equal,
            "flip_is_bijection": r.flip_is_bijection,
        });
        return write_json(out, &v);
    }
    let mode = match a.mode {
        ModeArg::Centered => CensusMode::Centered,
        ModeArg::Coloured => CensusMode::Coloured,
    };
    let c = patterns::census(&set, &region, &shape, mode)?;
    write_json(out, &c.to_json(a.list))
}

fn oracle_cmd(a: &OracleArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    let shape = a.shape.shape(params.n())?;
    let counted = patterns::admissible_count_capped(&shape, params, a.cap)?;
    let oracle = patterns::AdmissibilityOracle::new(&shape, params)?;
    let mut v = json!({
        "schema": format::ORACLE_SCHEMA,
        "n": params.n(),
        "k": params.k(),
        "shape": { "dim": shape.dim(), "offsets": shape.offsets() },
        "size": shape.len(),
        "relevant_primes": oracle.relevant_primes(),
        "count": counted.count,
        "max_ones": counted.max_ones,
        "per_site_log2": patterns::per_site_log2(counted.count, shape.len() as u64),
    });
    if a.list {
        let list: Vec<String> = patterns::admissible_patterns(&shape, params, a.cap)?
            .into_iter()
            .map(|p| p.to_hex(shape.len()))
            .collect();
        v["patterns"] = json!(list);
    }
    write_json(out, &v)
}

fn entropy_cmd(a: &EntropyArgs, out: &mut dyn Write) -> Result<()> {
    let params = a.scheme.params()?;
    let n = params.n();
    let schedule = match &a.schedule {
        Some(s) => s.clone(),
        None if n == 1 => (1..=20).collect(),
        None => vec![1, 2, 3, 4],
    };
    let shapes = schedule
        .iter()
        .map(|&s| if n == 1 { Shape::interval(s as usize) } else { Shape::cube(n, s) })
        .collect::<Result<Vec<_>>>()?;
    let inputs = match a.source {
        SourceArg::Oracle => shapes
            .iter()
            .map(|s| {
                patterns::admissible_count_capped(s, params, a.cap)
                    .map(|c| EntropyInput::from_oracle(s.len(), c))
            })
            .collect::<Result<Vec<_>>>()?,
        SourceArg::Census => {
            let region = standard_box(n, a.n_max.unwrap_or(if n == 1 { 1_000_000 } else { 200 }))?;
            let set = sieve::KFreeSet::new(params);
            shapes
                .iter()
                .map(|s| {
                    patterns::census(&set, &region, s, CensusMode::Coloured)
                        .map(|c| EntropyInput::from_census(&c))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let report = patterns::entropy_table(&inputs, params, &a.p_u, a.zeta_tol)?;
    report.write_csv(out)?;
    Ok(())
}

fn parse_endpoint(s: &str) -> Result<Endpoint> {
    let s = s.trim();
    if let Ok(u) = s.parse::<i64>() {
        return Ok(Endpoint::int(u));
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let nums: Vec<i64> = parts
            .iter()
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| invalid(format!("bad endpoint {s}: {e}")))?;
        return Endpoint::surd(nums[0], nums[1], nums[2]);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Endpoint::Real(x)),
        _ => Err(invalid(format!("bad endpoint {s}: expected integer, real or u:v:w"))),
    }
}

fn euclid_cmd(a: &EuclidArgs, out: &mut dyn Write) -> Result<()> {
    let scheme = QuadraticScheme::new(a.d, parse_endpoint(&a.lo)?, parse_endpoint(&a.hi)?)?;
    match a.report {
        EuclidReport::Points => euclid::generate(&scheme, a.t)?.write_csv(out)?,
        EuclidReport::Density => euclid::regular_density_check(&scheme, &a.schedule)?.write_csv(out)?,
        EuclidReport::Entropy => euclid::regular_entropy_check(&scheme, &a.l, a.t)?.write_csv(out)?,
    }
    Ok(())
}

/// A failed check is an [`Error::Invariant`], exit code 1.
fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let config = if a.quick { VerifyConfig::quick() } else { VerifyConfig::default() };
    let report = verify::run_suite(&config)?;
    if a.json {
        write_json(out, &report.to_json())?;
    } else {
        report.write_text(out)?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "{} of {} checks failed",
            report.checks.iter().filter(|c| !c.passed).count(),
            report.checks.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decade_schedule() {
        assert_eq!(decades(1_000_000, 10), vec![10, 100, 1000, 10_000, 100_000, 1_000_000]);
        assert_eq!(decades(500, 10), vec![10, 100, 500]);
        assert_eq!(decades(5, 10), vec![5]);
    }

    #[test]
    fn endpoints() {
        assert_eq!(parse_endpoint("3").unwrap(), Endpoint::int(3));
        assert_eq!(parse_endpoint("0:2:1").unwrap(), Endpoint::surd(0, 2, 1).unwrap());
        assert_eq!(parse_endpoint("0.25").unwrap(), Endpoint::Real(0.25));
        assert!(parse_endpoint("x").is_err());
        assert!(parse_endpoint("1:1:0").is_err());
    }

    #[test]
    fn config_is_spliced_before_flags() {
        let v: Value = serde_json::from_str(r#"{"k": 3, "N-max": 50, "oracle": {"L": 4}, "holes": {"m": 2}}"#).unwrap();
        let t = config_tokens(&v, "density").unwrap();
        assert!(t.contains(&"--k=3".to_string()) && t.contains(&"--N-max=50".to_string()));
        let t = config_tokens(&v, "oracle").unwrap();
        assert!(t.contains(&"--L=4".to_string()) && !t.iter().any(|x| x.starts_with("--N-max")));
        let bad: Value = serde_json::from_str(r#"{"oracle": {"N-max": 4}}"#).unwrap();
        assert!(config_tokens(&bad, "oracle").is_err());
        let unknown: Value = serde_json::from_str(r#"{"bogus": 1}"#).unwrap();
        assert!(config_tokens(&unknown, "oracle").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
