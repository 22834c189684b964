//! Command-line front door for the cubic moment toolkit.
//!
//! Eight subcommands walk the pipeline end to end: `sieve` builds prime
//! tables, `family` enumerates characters, `gauss` evaluates a single Gauss
//! sum both ways, `lvalue` computes central values over a family, `mollify`
//! evaluates the mollifier, `moment` assembles the mollified first moment,
//! `constants` prints the arithmetic constants, and `check` runs a built-in
//! invariant battery.
//!
//! Every reporting command emits one JSON document of the form
//! `{"report": ..., "manifest": ...}`. The manifest records the command, its
//! parameters, the cache files consulted, the wall time, the crate version,
//! and a SHA-256 content hash over the report body plus any CSV emitted.
//! Wall time stays out of the hash, so identical inputs hash identically no
//! matter how warm the caches are.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cubic_lmoment::cache::JsonlStore;
use cubic_lmoment::eisenstein::{gcd, primary_associate, EisensteinInt, PrimaryElement};
use cubic_lmoment::family::{
    enumerate_family, family_size_constants, DEFAULT_ZETA_SQ_DERIVATIVE,
};
use cubic_lmoment::gauss::{gauss_direct, GaussContext};
use cubic_lmoment::lfunction::{central_value, central_values_cached};
use cubic_lmoment::mollifier::{
    mollifier_m, mollifier_m_expansion, nu_n_prime_power, truncated_exp, MollifierConfig,
    UpperBoundParams,
};
use cubic_lmoment::moments::{
    euler_constant_c0, euler_constant_c1, euler_constant_cx, first_mollified_moment,
    reproduce_paper_constants, upper_bound_rates, RECOVERED_THETA,
};
use cubic_lmoment::par;
use cubic_lmoment::primes::{li, primary_elements_norm_le, PrimeKind, PrimeTable};
use cubic_lmoment::symbol::{cubic_symbol, cubic_symbol_prime, CubicSymbol};
use cubic_lmoment::{Error, Result};

const CSV_HEADER: &str = "c1_a,c1_b,c2_a,c2_b,conductor_norm,L_re,L_im,M_re,M_im,err_bound";

#[derive(Parser)]
#[command(name = "cubic-lmoment", version, about = "Cubic L-function moments at desk scale")]
struct Cli {
    /// Worker count for the thread pool; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Cache directory; falls back to CUBIC_LMOMENT_CACHE_DIR, then no cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or load a primary-prime table and report its counts.
    Sieve {
        /// Norm bound for the table.
        #[arg(long)]
        limit: i128,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the character family with conductor norm up to X.
    Family {
        #[arg(long = "X")]
        x: i128,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-member table (L and M columns zero here).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate one Gauss sum g(r, n) by the multiplicative route and, when
    /// the modulus is small enough, by the literal character sum.
    Gauss {
        /// Modulus coordinates; any associate of a primary element works.
        #[arg(long)]
        na: i128,
        #[arg(long)]
        nb: i128,
        /// Shift coordinates, default r = 1.
        #[arg(long, default_value_t = 1)]
        ra: i128,
        #[arg(long, default_value_t = 0)]
        rb: i128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Central values L(1/2, χ_c) over the family with conductor norm ≤ X.
    Lvalue {
        #[arg(long = "X")]
        x: i128,
        /// Balance parameter of the functional equation split.
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        /// Truncation tolerance per value.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Mollifier values M(c, κ) over the family.
    Mollify {
        #[arg(long = "X")]
        x: i128,
        /// JSON file with {k, kappa, alpha, beta, theta_big}; desk-mode
        /// defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// First mollified moment over the family with conductor norm ≤ X.
    Moment {
        #[arg(long = "X")]
        x: i128,
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Relative tolerance for the Euler-product constants.
        #[arg(long, default_value_t = 1e-2)]
        euler_tol: f64,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the arithmetic constants of the moment asymptotics.
    Constants {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant battery; exit 0 when everything holds.
    Check {
        /// Skip the slower battery entries.
        #[arg(long)]
        fast: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    par::configure_threads(cli.jobs);
    let cache = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("CUBIC_LMOMENT_CACHE_DIR").map(PathBuf::from));
    match run(cli.command, cache.as_deref()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error {}: {e}", e.name());
            if e.is_capacity() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command, cache: Option<&Path>) -> Result<ExitCode> {
    match command {
        Command::Sieve { limit, out } => cmd_sieve(limit, out, cache),
        Command::Family { x, out, csv } => cmd_family(x, out, csv, cache),
        Command::Gauss { na, nb, ra, rb, out } => cmd_gauss(na, nb, ra, rb, out, cache),
        Command::Lvalue { x, y, tol, out, csv } => cmd_lvalue(x, y, tol, out, csv, cache),
        Command::Mollify { x, config, out, csv } => cmd_mollify(x, config, out, csv, cache),
        Command::Moment { x, y, tol, euler_tol, config, out, csv } => {
            cmd_moment(x, y, tol, euler_tol, config, out, csv, cache)
        }
        Command::Constants { out } => cmd_constants(out),
        Command::Check { fast } => Ok(cmd_check(fast, cache)?),
    }
}

/// One emitted report: body, manifest, optional CSV sidecar.
struct Emission {
    command: &'static str,
    parameters: BTreeMap<String, String>,
    cache_files: Vec<String>,
    started: Instant,
}

impl Emission {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            parameters: BTreeMap::new(),
            cache_files: Vec::new(),
            started: Instant::now(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    fn cache_file(&mut self, name: String) {
        self.cache_files.push(name);
    }

    /// Hashes the compact body plus any CSV, wraps both in the manifest, and
    /// writes the document to `out` or stdout.
    fn finish(self, body: Value, csv: Option<&str>, out: Option<PathBuf>) -> Result<ExitCode> {
        let compact = serde_json::to_string(&body)
            .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
        let mut hasher = Sha256::new();
        hasher.update(compact.as_bytes());
        if let Some(csv) = csv {
            hasher.update(csv.as_bytes());
        }
        let hash = hex_digest(hasher.finalize().as_slice());
        let document = json!({
            "report": body,
            "manifest": {
                "command": self.command,
                "parameters": self.parameters,
                "cache_files": self.cache_files,
                "wall_time_ms": self.started.elapsed().as_millis() as u64,
                "artifact_version": env!("CARGO_PKG_VERSION"),
                "content_hash": hash,
            },
        });
        let text = serde_json::to_string_pretty(&document)
            .map(|s| format!("{s}\n"))
            .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(ExitCode::SUCCESS)
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn primes_cache_name(limit: i128) -> String {
    format!("primes-{limit}.jsonl")
}

/// CSV row in the fixed per-character schema.
struct Row {
    c1: (i128, i128),
    c2: (i128, i128),
    conductor_norm: i128,
    l: Complex64,
    m: Complex64,
    err: f64,
}

fn csv_text(rows: &[Row]) -> String {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.c1.0, r.c1.1, r.c2.0, r.c2.1, r.conductor_norm, r.l.re, r.l.im, r.m.re, r.m.im,
            r.err
        ));
    }
    text
}

fn write_csv(path: Option<&Path>, rows: &[Row]) -> Result<Option<String>> {
    match path {
        Some(path) => {
            let text = csv_text(rows);
            std::fs::write(path, &text)?;
            Ok(Some(text))
        }
        None => Ok(None),
    }
}

fn load_config(path: &Path, x: i128) -> Result<MollifierConfig> {
    #[derive(Deserialize)]
    struct FileConfig {
        k: f64,
        kappa: f64,
        alpha: f64,
        beta: f64,
        theta_big: f64,
    }
    let text = std::fs::read_to_string(path)?;
    let fc: FileConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("bad config file: {e}")))?;
    MollifierConfig::new(fc.k, fc.kappa, fc.alpha, fc.beta, fc.theta_big, x)
}

fn config_json(cfg: &MollifierConfig) -> Value {
    let cuts: Vec<i128> = (0..=cfg.j_max().max(-1))
        .filter(|j| *j >= 0)
        .map(|j| cfg.norm_cut(j))
        .collect();
    json!({
        "x": cfg.x(),
        "k0": cfg.k0(),
        "j_max": cfg.j_max(),
        "norm_cuts": cuts,
        "theta_big": cfg.theta_big(),
    })
}

/// Sieve limit that keeps every Euler-constant cutoff inside the table: c₀
/// wants 6/(tol/2), c₁ and C_X want the power-of-two N^{-3/2} tail cutoff.
fn euler_table_limit(x: i128, tol: f64) -> i128 {
    let mut l: i128 = 64;
    let mut lf = 64.0f64;
    while 7.7 / (lf.sqrt() * lf.ln()) + 1.0 / lf > tol {
        l *= 2;
        lf = l as f64;
    }
    x.max(l).max((12.0 / tol).ceil() as i128)
}

fn cmd_sieve(limit: i128, out: Option<PathBuf>, cache: Option<&Path>) -> Result<ExitCode> {
    let mut emission = Emission::new("sieve");
    emission.param("limit", limit);
    if cache.is_some() {
        emission.cache_file(primes_cache_name(limit));
    }
    let table = PrimeTable::load_or_sieve(limit, cache)?;
    let split = table
        .primes()
        .iter()
        .filter(|p| p.kind() == PrimeKind::Split)
        .count();
    let inert = table.primes().len() - split;
    let body = json!({
        "limit": limit,
        "prime_elements": table.primes().len(),
        "split": split,
        "inert": inert,
        "pi_k": table.pi_k(limit as f64)?,
        "li": li(limit as f64)?,
    });
    emission.finish(body, None, out)
}

fn cmd_family(
    x: i128,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    cache: Option<&Path>,
) -> Result<ExitCode> {
    let mut emission = Emission::new("family");
    emission.param("X", x);
    if cache.is_some() {
        emission.cache_file(primes_cache_name(x));
    }
    let table = PrimeTable::load_or_sieve(x, cache)?;
    let family = enumerate_family(x, &table)?;

    // The product tail scales as 7.2/limit, so ask for exactly what the
    // table can certify.
    let tol = (7.2 / x as f64) * 1.01;
    let constants = family_size_constants(&PrimaryElement::ONE, tol, &table)?;
    let c2 = constants.c2(DEFAULT_ZETA_SQ_DERIVATIVE);
    let xf = x as f64;
    let body = json!({
        "x": x,
        "size": family.len(),
        "c1_constant": constants.c1,
        "c2_constant": c2,
        "f_value": constants.f_value,
        "product_tail_bound": constants.tail_bound,
        "one_term_prediction": constants.c1 * xf * xf.ln(),
        "two_term_prediction": (constants.c1 * xf.ln() + c2) * xf,
    });
    let rows: Vec<Row> = family
        .iter()
        .map(|f| Row {
            c1: (f.c1().value().a(), f.c1().value().b()),
            c2: (f.c2().value().a(), f.c2().value().b()),
            conductor_norm: f.conductor_norm(),
            l: Complex64::new(0.0, 0.0),
            m: Complex64::new(0.0, 0.0),
            err: 0.0,
        })
        .collect();
    let csv_content = write_csv(csv.as_deref(), &rows)?;
    emission.finish(body, csv_content.as_deref(), out)
}

fn cmd_gauss(
    na: i128,
    nb: i128,
    ra: i128,
    rb: i128,
    out: Option<PathBuf>,
    cache: Option<&Path>,
) -> Result<ExitCode> {
    let mut emission = Emission::new("gauss");
    emission.param("na", na);
    emission.param("nb", nb);
    emission.param("ra", ra);
    emission.param("rb", rb);
    let n = primary_associate(&EisensteinInt::new(na, nb))?;
    let norm = n.norm()?;
    let limit = norm.max(64);
    if cache.is_some() {
        emission.cache_file(primes_cache_name(limit));
    }
    let table = PrimeTable::load_or_sieve(limit, cache)?;
    let ctx = GaussContext::new(&table);
    let r = EisensteinInt::new(ra, rb);
    let fast = ctx.fast(&r, &n)?;
    let direct = match gauss_direct(&r, &n) {
        Ok(v) => Some(v),
        Err(e) if e.is_capacity() => None,
        Err(e) => return Err(e),
    };
    let body = json!({
        "modulus": { "a": n.value().a(), "b": n.value().b(), "norm": norm },
        "shift": { "a": ra, "b": rb },
        "fast": complex_json(fast.value),
        "fast_method": format!("{:?}", fast.method),
        "direct": direct.map(|v| complex_json(v.value)),
        "abs_sq_over_norm": fast.value.norm_sqr() / norm as f64,
    });
    emission.finish(body, None, out)
}

fn cmd_lvalue(
    x: i128,
    y: f64,
    tol: f64,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    cache: Option<&Path>,
) -> Result<ExitCode> {
    let mut emission = Emission::new("lvalue");
    emission.param("X", x);
    emission.param("y", y);
    emission.param("tol", tol);
    if cache.is_some() {
        emission.cache_file(primes_cache_name(x));
        emission.cache_file(format!("lvalues-{x}-{tol:e}.jsonl"));
    }
    let table = PrimeTable::load_or_sieve(x, cache)?;
    let ctx = GaussContext::new(&table);
    let store = cache.map(JsonlStore::new);
    let family = enumerate_family(x, &table)?;
    let records = central_values_cached(&family, x, y, tol, &ctx, store.as_ref())?;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_abs = 0.0f64;
    let mut min_abs = f64::INFINITY;
    let mut worst_err = 0.0f64;
    for r in &records {
        sum += r.value;
        max_abs = max_abs.max(r.value.norm());
        min_abs = min_abs.min(r.value.norm());
        worst_err = worst_err.max(r.truncation_error_bound);
    }
    let body = json!({
        "x": x,
        "y": y,
        "tol": tol,
        "count": records.len(),
        "sum": complex_json(sum),
        "mean_abs": if records.is_empty() { 0.0 } else {
            records.iter().map(|r| r.value.norm()).sum::<f64>() / records.len() as f64
        },
        "max_abs": max_abs,
        "min_abs": if records.is_empty() { 0.0 } else { min_abs },
        "worst_truncation_bound": worst_err,
    });
    let rows: Vec<Row> = records
        .iter()
        .map(|r| Row {
            c1: (r.element.c1().value().a(), r.element.c1().value().b()),
            c2: (r.element.c2().value().a(), r.element.c2().value().b()),
            conductor_norm: r.element.conductor_norm(),
            l: r.value,
            m: Complex64::new(0.0, 0.0),
            err: r.truncation_error_bound,
        })
        .collect();
    let csv_content = write_csv(csv.as_deref(), &rows)?;
    emission.finish(body, csv_content.as_deref(), out)
}

fn cmd_mollify(
    x: i128,
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    cache: Option<&Path>,
) -> Result<ExitCode> {
    let mut emission = Emission::new("mollify");
    emission.param("X", x);
    if let Some(path) = &config {
        emission.param("config", path.display());
    }
    if cache.is_some() {
        emission.cache_file(primes_cache_name(x));
    }
    let cfg = match &config {
        Some(path) => load_config(path, x)?,
        None => MollifierConfig::desk_mode(x)?,
    };
    let table = PrimeTable::load_or_sieve(x, cache)?;
    let family = enumerate_family(x, &table)?;
    let values = par::batch_map(&family, |f| mollifier_m(f, &cfg, &table));
    let mut rows = Vec::with_capacity(family.len());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_abs = 0.0f64;
    for (f, v) in family.iter().zip(values) {
        let m = v?;
        sum += m;
        max_abs = max_abs.max(m.norm());
        rows.push(Row {
            c1: (f.c1().value().a(), f.c1().value().b()),
            c2: (f.c2().value().a(), f.c2().value().b()),
            conductor_norm: f.conductor_norm(),
            l: Complex64::new(0.0, 0.0),
            m,
            err: 0.0,
        });
    }
    let body = json!({
        "x": x,
        "config": config_json(&cfg),
        "count": rows.len(),
        "sum": complex_json(sum),
        "mean_abs": if rows.is_empty() { 0.0 } else {
            rows.iter().map(|r| r.m.norm()).sum::<f64>() / rows.len() as f64
        },
        "max_abs": max_abs,
    });
    let csv_content = write_csv(csv.as_deref(), &rows)?;
    emission.finish(body, csv_content.as_deref(), out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_moment(
    x: i128,
    y: f64,
    tol: f64,
    euler_tol: f64,
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    cache: Option<&Path>,
) -> Result<ExitCode> {
    let mut emission = Emission::new("moment");
    emission.param("X", x);
    emission.param("y", y);
    emission.param("tol", tol);
    emission.param("euler_tol", euler_tol);
    if let Some(path) = &config {
        emission.param("config", path.display());
    }
    let limit = euler_table_limit(x, euler_tol);
    if cache.is_some() {
        emission.cache_file(primes_cache_name(limit));
        emission.cache_file(format!("lvalues-{x}-{tol:e}.jsonl"));
    }
    let cfg = match &config {
        Some(path) => load_config(path, x)?,
        None => MollifierConfig::desk_mode(x)?,
    };
    let table = PrimeTable::load_or_sieve(limit, cache)?;
    let ctx = GaussContext::new(&table);
    let store = cache.map(JsonlStore::new);
    let report = first_mollified_moment(&cfg, y, tol, euler_tol, &ctx, store.as_ref())?;

    let body = json!({
        "x": report.x,
        "config": config_json(&cfg),
        "family_size": report.family_size,
        "moment": complex_json(report.moment_value),
        "main_term_prediction": report.main_term_prediction,
        "moment_ratio": report.moment_ratio,
        "c0": report.c0,
        "c1": report.c1,
        "cx": report.cx,
        "nonvanishing_count": report.nonvanishing_count,
        "threshold": report.threshold,
        "second_moment": report.second_moment,
        "second_moment_ratio": report.second_moment_ratio,
    });

    // The per-member table is recomputed on demand; the value cache makes
    // the second pass cheap.
    let csv_content = match csv.as_deref() {
        Some(path) => {
            let family = enumerate_family(x, &table)?;
            let records = central_values_cached(&family, x, y, tol, &ctx, store.as_ref())?;
            let mut rows = Vec::with_capacity(records.len());
            for r in &records {
                let m = mollifier_m(&r.element, &cfg, &table)?;
                rows.push(Row {
                    c1: (r.element.c1().value().a(), r.element.c1().value().b()),
                    c2: (r.element.c2().value().a(), r.element.c2().value().b()),
                    conductor_norm: r.element.conductor_norm(),
                    l: r.value,
                    m,
                    err: r.truncation_error_bound,
                });
            }
            write_csv(Some(path), &rows)?
        }
        None => None,
    };
    emission.finish(body, csv_content.as_deref(), out)
}

fn cmd_constants(out: Option<PathBuf>) -> Result<ExitCode> {
    let emission = Emission::new("constants");
    let c = reproduce_paper_constants();
    let p = UpperBoundParams::paper();
    let (r1_exact, r2_exact) = upper_bound_rates(p.k, p.kappa, p.a, p.beta, RECOVERED_THETA);
    let body = json!({
        "r1": c.r1,
        "r2": c.r2,
        "r1_at_recovered_theta": r1_exact,
        "r2_at_recovered_theta": r2_exact,
        "s_k": c.s_k,
        "d": c.d,
        "d2_input": c.d2_input,
        "d2_combined": c.d2_combined,
        "loglog_bound": c.loglog_bound,
        "proportion_prefactor": c.proportion_prefactor,
        "proportion_loglog_reciprocal": c.proportion_loglog_reciprocal,
        "recovered_theta": RECOVERED_THETA,
    });
    emission.finish(body, None, out)
}

/// One battery entry: name, whether the fast set includes it, and the check
/// itself returning a detail string either way.
struct Check {
    name: &'static str,
    fast: bool,
    run: Box<dyn Fn(Option<&Path>) -> std::result::Result<String, String>>,
}

fn cmd_check(fast: bool, cache: Option<&Path>) -> Result<ExitCode> {
    let checks = check_battery();
    let mut failures = 0usize;
    let mut ran = 0usize;
    let started = Instant::now();
    for check in &checks {
        if fast && !check.fast {
            continue;
        }
        ran += 1;
        match (check.run)(cache) {
            Ok(detail) => println!("ok   {}: {detail}", check.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL {}: {detail}", check.name);
            }
        }
    }
    println!(
        "{ran} checks, {failures} failures ({:.2?})",
        started.elapsed()
    );
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn check_battery() -> Vec<Check> {
    fn ok_or<T: PartialEq + std::fmt::Debug>(
        got: T,
        want: T,
        what: &str,
    ) -> std::result::Result<(), String> {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got:?}, want {want:?}"))
        }
    }

    vec![
        Check {
            name: "paper-constants",
            fast: true,
            run: Box::new(|_| {
                let c = reproduce_paper_constants();
                ok_or((c.r2 / 1e32).round() as i64, 28043085602, "R2 digits")?;
                ok_or((c.s_k / 10.0).round() as i64, 53316663123, "S_2 digits")?;
                if (c.loglog_bound - 101.248586291).abs() > 1e-6 {
                    return Err(format!("loglog bound {}", c.loglog_bound));
                }
                let p = UpperBoundParams::paper();
                let (r1, _) = upper_bound_rates(p.k, p.kappa, p.a, p.beta, RECOVERED_THETA);
                ok_or((r1 / 1e30).round() as i64, -47107876828, "R1 digits")?;
                Ok("printed digits reproduced".into())
            }),
        },
        Check {
            name: "parameter-validator",
            fast: true,
            run: Box::new(|_| {
                let checks = UpperBoundParams::paper().validate();
                let bad: Vec<_> = checks.iter().filter(|c| !c.holds).map(|c| c.name).collect();
                if bad.is_empty() {
                    Ok(format!("{} conditions hold", checks.len()))
                } else {
                    Err(format!("violated: {bad:?}"))
                }
            }),
        },
        Check {
            name: "truncated-exp-bounds",
            fast: true,
            run: Box::new(|_| {
                if truncated_exp(0.0, 4) != 1.0 {
                    return Err("E_4(0) != 1".into());
                }
                let mut points = 0;
                for order in [2u32, 4, 8] {
                    let mut x = -6.0;
                    while x < 0.0 {
                        let e = truncated_exp(x, order);
                        if x.exp() > e * (1.0 + 1e-14) {
                            return Err(format!("exp({x}) > E_{order}({x})"));
                        }
                        points += 1;
                        x += 0.5;
                    }
                }
                Ok(format!("{points} grid points dominated"))
            }),
        },
        Check {
            name: "nu-coefficients",
            fast: true,
            run: Box::new(|_| {
                for n in 1u32..=3 {
                    let mut fact = 1.0f64;
                    for m in 0u32..=6 {
                        if m > 0 {
                            fact *= m as f64;
                        }
                        let want = (n as f64).powi(m as i32) / fact;
                        let got = nu_n_prime_power(n, m);
                        if (got - want).abs() > 1e-12 * want.max(1.0) {
                            return Err(format!("nu_{n}(p^{m}) = {got}, want {want}"));
                        }
                    }
                }
                Ok("nu_n(p^m) = n^m/m! for n <= 3, m <= 6".into())
            }),
        },
        Check {
            name: "reciprocity-pairs",
            fast: true,
            run: Box::new(|cache| {
                let table =
                    PrimeTable::load_or_sieve(1_000, cache).map_err(|e| e.to_string())?;
                let elems: Vec<PrimaryElement> =
                    table.primes().iter().map(|p| p.element()).collect();
                let mut pairs = 0;
                for (i, m) in elems.iter().enumerate() {
                    for n in elems.iter().skip(i + 1).take(4) {
                        let ab = cubic_symbol(&m.value(), n).map_err(|e| e.to_string())?;
                        let ba = cubic_symbol(&n.value(), m).map_err(|e| e.to_string())?;
                        if ab != ba {
                            return Err(format!(
                                "symbol asymmetry at ({}, {}) vs ({}, {})",
                                m.value().a(),
                                m.value().b(),
                                n.value().a(),
                                n.value().b()
                            ));
                        }
                        pairs += 1;
                    }
                }
                Ok(format!("{pairs} prime pairs symmetric"))
            }),
        },
        Check {
            name: "symbol-euler-oracle",
            fast: false,
            run: Box::new(|cache| {
                let table =
                    PrimeTable::load_or_sieve(1_500, cache).map_err(|e| e.to_string())?;
                let alphas = [EisensteinInt::new(2, 0), EisensteinInt::new(-1, 3)];
                let mut checked = 0;
                for (norm, z) in primary_elements_norm_le(1_500).map_err(|e| e.to_string())? {
                    if norm == 1 {
                        continue;
                    }
                    let n = PrimaryElement::from_primary(z).map_err(|e| e.to_string())?;
                    let factorization = table.factor(&n).map_err(|e| e.to_string())?;
                    for alpha in &alphas {
                        let mut want = CubicSymbol::Root(0);
                        for (p, e) in factorization.factors() {
                            let s = cubic_symbol_prime(alpha, &p.element())
                                .map_err(|e| e.to_string())?;
                            for _ in 0..*e {
                                want = want.mul(s);
                            }
                        }
                        let got = cubic_symbol(alpha, &n).map_err(|e| e.to_string())?;
                        if got != want {
                            return Err(format!(
                                "mismatch at n = {} + {}w",
                                n.value().a(),
                                n.value().b()
                            ));
                        }
                        checked += 1;
                    }
                }
                Ok(format!("{checked} factored symbols agree"))
            }),
        },
        Check {
            name: "gauss-fast-vs-direct",
            fast: true,
            run: Box::new(|cache| {
                let table =
                    PrimeTable::load_or_sieve(400, cache).map_err(|e| e.to_string())?;
                let ctx = GaussContext::new(&table);
                let shifts = [
                    EisensteinInt::new(1, 0),
                    EisensteinInt::new(2, 1),
                    EisensteinInt::new(-1, 3),
                ];
                let mut worst = 0.0f64;
                let mut count = 0;
                for (norm, z) in primary_elements_norm_le(200).map_err(|e| e.to_string())? {
                    if norm == 1 {
                        continue;
                    }
                    let n = PrimaryElement::from_primary(z).map_err(|e| e.to_string())?;
                    for r in &shifts {
                        let fast = ctx.fast(r, &n).map_err(|e| e.to_string())?;
                        let direct = gauss_direct(r, &n).map_err(|e| e.to_string())?;
                        let err = (fast.value - direct.value).norm()
                            / direct.value.norm().max(1.0);
                        worst = worst.max(err);
                        count += 1;
                        if err > 1e-9 {
                            return Err(format!(
                                "fast/direct differ by {err:.2e} at norm {norm}"
                            ));
                        }
                    }
                }
                Ok(format!("{count} sums agree, worst {worst:.2e}"))
            }),
        },
        Check {
            name: "gauss-prime-modulus",
            fast: false,
            run: Box::new(|cache| {
                let table =
                    PrimeTable::load_or_sieve(3_000, cache).map_err(|e| e.to_string())?;
                let ctx = GaussContext::new(&table);
                let one = EisensteinInt::new(1, 0);
                let mut worst = 0.0f64;
                for p in table.primes() {
                    let g = ctx.fast(&one, &p.element()).map_err(|e| e.to_string())?;
                    let rel = (g.value.norm_sqr() - p.norm() as f64).abs() / p.norm() as f64;
                    worst = worst.max(rel);
                    if rel > 1e-9 {
                        return Err(format!("|g|^2 off by {rel:.2e} at norm {}", p.norm()));
                    }
                }
                Ok(format!(
                    "|g(1,pi)|^2 = N(pi) for {} primes, worst {worst:.2e}",
                    table.primes().len()
                ))
            }),
        },
        Check {
            name: "family-brute-force",
            fast: true,
            run: Box::new(|cache| {
                let x = 200i128;
                let table = PrimeTable::load_or_sieve(x, cache).map_err(|e| e.to_string())?;
                let family = enumerate_family(x, &table).map_err(|e| e.to_string())?;
                let squarefree = |z: &EisensteinInt| -> bool {
                    let n = z.norm().unwrap();
                    for p in table.primes() {
                        if p.norm() * p.norm() > n {
                            break;
                        }
                        let pe = p.element().value();
                        let square = pe.mul(&pe).unwrap();
                        if square.div_exact(z).unwrap().is_some() {
                            return false;
                        }
                    }
                    true
                };
                let elems = primary_elements_norm_le(x).map_err(|e| e.to_string())?;
                let mut brute = 0usize;
                for (n1, z1) in &elems {
                    if !squarefree(z1) {
                        continue;
                    }
                    for (n2, z2) in &elems {
                        if n1 * n2 > x || !squarefree(z2) {
                            continue;
                        }
                        if gcd(z1, z2).map_err(|e| e.to_string())? != EisensteinInt::ONE {
                            continue;
                        }
                        let c = z2
                            .mul(z1)
                            .and_then(|w| w.mul(z1))
                            .map_err(|e| e.to_string())?;
                        if c.a().rem_euclid(9) == 1
                            && c.b().rem_euclid(9) == 0
                            && c != EisensteinInt::ONE
                        {
                            brute += 1;
                        }
                    }
                }
                ok_or(family.len(), brute, "family size at X = 200")?;
                Ok(format!("enumeration matches brute force ({brute} members)"))
            }),
        },
        Check {
            name: "afe-y-invariance",
            fast: false,
            run: Box::new(|cache| {
                let x = 2_000i128;
                let table = PrimeTable::load_or_sieve(x, cache).map_err(|e| e.to_string())?;
                let ctx = GaussContext::new(&table);
                let family = enumerate_family(x, &table).map_err(|e| e.to_string())?;
                let step = (family.len() / 4).max(1);
                let mut worst = 0.0f64;
                for elem in family.iter().step_by(step).take(4) {
                    let vals: Vec<Complex64> = [0.5, 1.0, 2.0]
                        .iter()
                        .map(|y| central_value(elem, *y, 1e-8, &ctx).map(|r| r.value))
                        .collect::<Result<_>>()
                        .map_err(|e| e.to_string())?;
                    let scale = vals.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
                    for w in vals.windows(2) {
                        worst = worst.max((w[1] - w[0]).norm() / scale);
                    }
                }
                if worst > 1e-6 {
                    return Err(format!("Y-shift moved L by {worst:.2e}"));
                }
                Ok(format!("Y in {{1/2, 1, 2}} agree, worst {worst:.2e}"))
            }),
        },
        Check {
            name: "mollifier-expansion",
            fast: false,
            run: Box::new(|cache| {
                let x = 2_000i128;
                let table = PrimeTable::load_or_sieve(x, cache).map_err(|e| e.to_string())?;
                let cfg = MollifierConfig::desk_mode(x).map_err(|e| e.to_string())?;
                let family = enumerate_family(x, &table).map_err(|e| e.to_string())?;
                let step = (family.len() / 4).max(1);
                let mut worst = 0.0f64;
                for elem in family.iter().step_by(step).take(4) {
                    let product = mollifier_m(elem, &cfg, &table).map_err(|e| e.to_string())?;
                    let expansion =
                        mollifier_m_expansion(elem, &cfg, &table).map_err(|e| e.to_string())?;
                    let err = (product - expansion).norm() / (1.0 + product.norm());
                    worst = worst.max(err);
                    if err > 1e-10 {
                        return Err(format!("product/expansion differ by {err:.2e}"));
                    }
                }
                Ok(format!("product form matches expansion, worst {worst:.2e}"))
            }),
        },
        Check {
            name: "euler-sandwich",
            fast: true,
            run: Box::new(|cache| {
                let x = 10_000i128;
                let tol = 1e-2;
                let limit = euler_table_limit(x, tol);
                let table =
                    PrimeTable::load_or_sieve(limit, cache).map_err(|e| e.to_string())?;
                let cfg = MollifierConfig::desk_mode(x).map_err(|e| e.to_string())?;
                let c0 = euler_constant_c0(&table, tol).map_err(|e| e.to_string())?;
                let c1 = euler_constant_c1(&table, tol).map_err(|e| e.to_string())?;
                let cx = euler_constant_cx(&cfg, &table, tol).map_err(|e| e.to_string())?;
                if !(c0 < cx && cx < c1) {
                    return Err(format!("sandwich violated: {c0} / {cx} / {c1}"));
                }
                Ok(format!("c0 {c0:.6} < C_X {cx:.6} < c1 {c1:.6}"))
            }),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_digest_is_lowercase_pairs() {
        assert_eq!(hex_digest(&[0x00, 0xff, 0x10]), "00ff10");
    }

    #[test]
    fn csv_schema_is_stable() {
        let rows = vec![Row {
            c1: (1, 0),
            c2: (4, 3),
            conductor_norm: 13,
            l: Complex64::new(1.5, -0.25),
            m: Complex64::new(1.0, 0.0),
            err: 1e-7,
        }];
        let text = csv_text(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("1,0,4,3,13,1.5,-0.25,1,0,0.0000001"));
    }

    #[test]
    fn euler_table_limit_covers_tolerances() {
        assert_eq!(euler_table_limit(10_000, 1e-2), 10_000);
        assert!(euler_table_limit(10_000, 1e-3) >= 524_288);
        assert!(euler_table_limit(2_000_000, 1e-2) == 2_000_000);
    }
}
