//! The `crr` command line.
//!
//! Output is line-oriented `key value` pairs unless `--pretty` is given.
//! Exit codes: 0 success, 2 usage or parse error, 3 algorithmic failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::ModuliBase;
use crate::division::{self, Divider, GroupMode};
use crate::error::CrrError;
use crate::reconstruct::{self, GarnerConverter, ProbConfig};
use crate::vector::CrrVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

/// `6 / pi^2`.
pub const COPRIME_DENSITY: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

#[derive(Debug, Parser)]
#[command(
    name = "crr",
    version,
    about = "Residue number system conversion and division"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the base line for the first COUNT moduli 5, 7, 11, ...
    GenBase {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        count: u64,
    },
    /// Encode a decimal integer as a CRR1 file.
    Encode {
        #[arg(long, allow_negative_numbers = true)]
        value: BigInt,
        #[command(flatten)]
        base: BaseSource,
        /// Write the file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a CRR1 file to a decimal integer.
    Decode {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Classical)]
        method: Method,
        #[arg(long, default_value = "0")]
        seed: Seed,
        #[arg(long)]
        n2_bound: Option<u64>,
        #[arg(long, default_value_t = ProbConfig::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u32,
        /// Also report extended-gcd calls and sampling attempts.
        #[arg(long)]
        stats: bool,
    },
    /// Divide with the reciprocal-series pipeline and report the plan.
    Div {
        #[arg(long)]
        x: BigUint,
        #[arg(long)]
        y: BigUint,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Adaptive)]
        mode: Mode,
        /// Cross-check against plain integer division.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Sample random linear forms over the first R moduli.
    ProbStats {
        #[arg(long, default_value_t = 16)]
        r: usize,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value = "0")]
        seed: Seed,
        #[arg(long)]
        n2_bound: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
        jobs: u64,
        #[arg(long)]
        pretty: bool,
    },
    /// Tabulate whether m_{n+1}^r > 2^{n+3} for r = floor(n / log2 n).
    CheckBound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=100_000))]
        n_min: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=100_000))]
        n_max: u32,
        /// Exit 3 if any row with n at or above this value fails.
        #[arg(long)]
        assert_ge: Option<u32>,
        #[arg(long)]
        pretty: bool,
    },
    /// Run a quick battery of internal consistency checks.
    Selftest {
        #[arg(long, default_value = "0")]
        seed: Seed,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BaseSource {
    /// Use the first COUNT moduli 5, 7, 11, ...
    #[arg(long)]
    count: Option<usize>,
    /// Comma-separated pairwise-coprime moduli.
    #[arg(long, value_delimiter = ',')]
    moduli: Option<Vec<u64>>,
    /// File whose first line is a `base` line (or a CRR1 file).
    #[arg(long)]
    base_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Classical,
    Sequential,
    Garner,
    Prob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strict,
    Adaptive,
}

impl From<Mode> for GroupMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => GroupMode::Strict,
            Mode::Adaptive => GroupMode::Adaptive,
        }
    }
}

/// A fixed seed, or `random` for one drawn from entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl Seed {
    pub fn resolve(self) -> u64 {
        match self {
            Seed::Fixed(s) => s,
            Seed::Random => rand::thread_rng().gen(),
        }
    }
}

impl FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            Ok(Seed::Random)
        } else {
            s.parse()
                .map(Seed::Fixed)
                .map_err(|_| format!("`{s}` is neither a u64 nor `random`"))
        }
    }
}

/// A failed command: the exit code and a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn algorithmic(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<CrrError> for Failure {
    fn from(e: CrrError) -> Self {
        let code = match e {
            CrrError::AttemptsExhausted { .. } | CrrError::GroupBound { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut buf = String::new();
    let result = execute(cli.command, &mut buf, err);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut String, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::GenBase { count } => {
            let base = ModuliBase::paper_base(count as usize)?;
            writeln!(out, "{}", base.to_base_line()).unwrap();
            Ok(())
        }
        Command::Encode {
            value,
            base,
            out: path,
        } => cmd_encode(&value, &base, path, out, err),
        Command::Decode {
            file,
            method,
            seed,
            n2_bound,
            max_attempts,
            stats,
        } => {
            let text = read_file(&file)?;
            let v = CrrVector::parse(&text)?;
            cmd_decode(&v, method, seed, n2_bound, max_attempts, stats, out, err)
        }
        Command::Div {
            x,
            y,
            n,
            mode,
            verify,
            pretty,
        } => cmd_div(&x, &y, n, mode.into(), verify, pretty, out),
        Command::ProbStats {
            r,
            trials,
            seed,
            n2_bound,
            jobs,
            pretty,
        } => cmd_prob_stats(
            r,
            trials,
            seed.resolve(),
            n2_bound,
            jobs as usize,
            pretty,
            out,
        ),
        Command::CheckBound {
            n_min,
            n_max,
            assert_ge,
            pretty,
        } => cmd_check_bound(n_min, n_max, assert_ge, pretty, out),
        Command::Selftest { seed } => cmd_selftest(seed.resolve(), out),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_base(src: &BaseSource) -> Result<ModuliBase, Failure> {
    if let Some(count) = src.count {
        return Ok(ModuliBase::paper_base(count)?);
    }
    if let Some(moduli) = &src.moduli {
        return Ok(ModuliBase::new(moduli.clone())?);
    }
    let path = src.base_file.as_ref().expect("clap enforces one source");
    let text = read_file(path)?;
    let mut lines = text.split('\n');
    let mut line_no = 1;
    let mut first = lines.next().unwrap_or("");
    if first == crate::vector::MAGIC {
        first = lines.next().unwrap_or("");
        line_no = 2;
    }
    Ok(ModuliBase::parse_base_line(first, line_no)?)
}

fn cmd_encode(
    value: &BigInt,
    src: &BaseSource,
    path: Option<PathBuf>,
    out: &mut String,
    err: &mut dyn Write,
) -> CmdResult {
    let base = Arc::new(load_base(src)?);
    let v = CrrVector::encode_signed(value, &base);
    let product = BigInt::from(base.product().clone());
    if value.sign() == num_bigint::Sign::Minus || *value >= product {
        let _ = writeln!(err, "reduced true");
    }
    match path {
        Some(p) => std::fs::write(&p, v.serialize())
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?,
        None => out.push_str(&v.serialize()),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_decode(
    v: &CrrVector,
    method: Method,
    seed: Seed,
    n2_bound: Option<u64>,
    max_attempts: u32,
    stats: bool,
    out: &mut String,
    err: &mut dyn Write,
) -> CmdResult {
    let base = v.base();
    let mut report = Vec::new();
    let x = match method {
        Method::Classical | Method::Sequential => {
            let coeffs = if method == Method::Classical {
                reconstruct::classical_coefficients(base)
            } else {
                reconstruct::sequential_coefficients(base).0
            };
            report.push(("egcd_calls", coeffs.egcd_calls().to_string()));
            coeffs.reconstruct(v)?
        }
        Method::Garner => {
            let g = GarnerConverter::new(base);
            report.push(("egcd_calls", g.egcd_calls().to_string()));
            g.decode(v)?
        }
        Method::Prob => {
            let seed = seed.resolve();
            let config = ProbConfig {
                n2_bound: n2_bound.unwrap_or_else(|| ProbConfig::default_n2_bound(base)),
                max_attempts,
            };
            if !stats {
                let _ = writeln!(err, "seed {seed}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, sample) = reconstruct::probabilistic_reconstruct(v, &mut rng, &config)?;
            report.push(("seed", seed.to_string()));
            report.push(("n2_bound", config.n2_bound.to_string()));
            report.push(("egcd_calls", sample.attempts.to_string()));
            report.push(("attempts", sample.attempts.to_string()));
            x
        }
    };
    writeln!(out, "{x}").unwrap();
    if stats {
        let name = format!("{method:?}").to_lowercase();
        writeln!(out, "method {name}").unwrap();
        writeln!(out, "r {}", base.len()).unwrap();
        for (k, val) in report {
            writeln!(out, "{k} {val}").unwrap();
        }
    }
    Ok(())
}

fn emit(out: &mut String, pretty: bool, rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        if pretty {
            writeln!(out, "{k:<width$} : {v}").unwrap();
        } else {
            writeln!(out, "{k} {v}").unwrap();
        }
    }
}

fn cmd_div(
    x: &BigUint,
    y: &BigUint,
    n: u32,
    mode: GroupMode,
    verify: bool,
    pretty: bool,
    out: &mut String,
) -> CmdResult {
    if y.is_zero() {
        return Err(CrrError::DivisionByZero.into());
    }
    let divider = Divider::new(n, mode)?;
    let outcome = divider.divide(x, y)?;
    let q_crr = outcome
        .q_crr
        .residues()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let mut rows = vec![
        ("q", outcome.q.to_string()),
        ("correction_applied", outcome.correction_applied.to_string()),
        ("n", n.to_string()),
        ("mode", mode.to_string()),
        ("N", divider.base().len().to_string()),
        ("N_formula", division::strict_moduli_count(n).to_string()),
        (
            "N_intlog",
            division::integer_log_moduli_count(n).to_string(),
        ),
        ("N_baseline", division::baseline_moduli_count(n).to_string()),
        ("r_used", divider.r_used().to_string()),
        (
            "moduli_used",
            (n as usize + divider.groups().len() * divider.r_used()).to_string(),
        ),
    ];
    match &outcome.plan {
        Some(plan) => {
            let path = if *y == BigUint::from(2u32) {
                "halving"
            } else {
                "general"
            };
            rows.push(("path", path.to_string()));
            rows.push(("j", plan.scaler.j.to_string()));
            rows.push(("k", plan.scaler.k.to_string()));
            rows.push(("D", plan.scaler.d.to_string()));
            rows.push(("min_group_bits", plan.min_group_bits().to_string()));
        }
        None => rows.push(("path", "fast".to_string())),
    }
    rows.push(("q_crr", q_crr));
    let expected = x / y;
    if verify {
        let status = if expected == outcome.q {
            "ok"
        } else {
            "mismatch"
        };
        rows.push(("verify", status.to_string()));
    }
    emit(out, pretty, &rows);
    if verify && expected != outcome.q {
        return Err(Failure::algorithmic(format!(
            "quotient {} differs from {expected}",
            outcome.q
        )));
    }
    Ok(())
}

fn cmd_prob_stats(
    r: usize,
    trials: u64,
    seed: u64,
    n2_bound: Option<u64>,
    jobs: usize,
    pretty: bool,
    out: &mut String,
) -> CmdResult {
    let base = Arc::new(ModuliBase::paper_base(r)?);
    let config = ProbConfig {
        n2_bound: n2_bound.unwrap_or_else(|| ProbConfig::default_n2_bound(&base)),
        max_attempts: ProbConfig::DEFAULT_MAX_ATTEMPTS,
    };
    if config.n2_bound < 2 {
        return Err(CrrError::BoundTooSmall(config.n2_bound).into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let stats = pool.install(|| reconstruct::linear_form_statistics(&base, &config, seed, trials));
    emit(
        out,
        pretty,
        &[
            ("seed", seed.to_string()),
            ("r", r.to_string()),
            ("trials", trials.to_string()),
            ("n2_bound", config.n2_bound.to_string()),
            ("coprime_draws", stats.coprime_draws.to_string()),
            (
                "coprime_fraction",
                format!("{:.6}", stats.coprime_fraction()),
            ),
            ("mean_attempts", format!("{:.6}", stats.mean_attempts)),
            ("exhausted", stats.exhausted.to_string()),
            ("reference", format!("{COPRIME_DENSITY:.4}")),
        ],
    );
    Ok(())
}

fn cmd_check_bound(
    n_min: u32,
    n_max: u32,
    assert_ge: Option<u32>,
    pretty: bool,
    out: &mut String,
) -> CmdResult {
    if n_min > n_max {
        return Err(Failure::usage("--n-min exceeds --n-max"));
    }
    if pretty {
        writeln!(out, "{:>6} {:>4} {:>8}  holds", "n", "r", "m_{n+1}").unwrap();
    }
    let mut failures = Vec::new();
    for n in n_min..=n_max {
        let row = division::check_group_inequality(n)?;
        if pretty {
            writeln!(
                out,
                "{:>6} {:>4} {:>8}  {}",
                row.n, row.r, row.first_extension, row.holds
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "n={} r={} m_next={} holds={}",
                row.n, row.r, row.first_extension, row.holds
            )
            .unwrap();
        }
        if !row.holds && assert_ge.is_some_and(|t| n >= t) {
            failures.push(n);
        }
    }
    if let Some(t) = assert_ge {
        let status = if failures.is_empty() { "ok" } else { "failed" };
        writeln!(out, "assert_ge {t} {status}").unwrap();
        if !failures.is_empty() {
            return Err(Failure::algorithmic(format!(
                "inequality fails for n = {failures:?}"
            )));
        }
    }
    Ok(())
}

fn cmd_selftest(seed: u64, out: &mut String) -> CmdResult {
    writeln!(out, "seed {seed}").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    type Check = fn(&mut ChaCha8Rng) -> bool;
    let checks: [(&str, Check); 7] = [
        ("round_trip", selftest_round_trip),
        ("egcd_counts", selftest_counts),
        ("telescoping", selftest_telescoping),
        ("linear_forms", selftest_linear_forms),
        ("underapprox", selftest_underapprox),
        ("group_bound", |_| selftest_group_bound()),
        ("division", selftest_division),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let pass = check(&mut rng);
        failed += usize::from(!pass);
        writeln!(out, "check {name} {}", if pass { "pass" } else { "FAIL" }).unwrap();
    }
    writeln!(
        out,
        "selftest {}",
        if failed == 0 { "pass" } else { "FAIL" }
    )
    .unwrap();
    if failed > 0 {
        return Err(Failure::algorithmic(format!(
            "{failed} selftest checks failed"
        )));
    }
    Ok(())
}

fn selftest_round_trip(rng: &mut ChaCha8Rng) -> bool {
    let base = Arc::new(ModuliBase::paper_base(16).unwrap());
    let classical = reconstruct::classical_coefficients(&base);
    let (sequential, _) = reconstruct::sequential_coefficients(&base);
    let garner = GarnerConverter::new(&base);
    let config = ProbConfig::for_base(&base);
    (0..200).all(|_| {
        let x = rng.gen_biguint_below(base.product());
        let v = CrrVector::encode(&x, &base);
        let prob = reconstruct::probabilistic_reconstruct(&v, rng, &config).map(|p| p.0);
        classical.reconstruct(&v).as_ref() == Ok(&x)
            && sequential.reconstruct(&v).as_ref() == Ok(&x)
            && garner.decode(&v).as_ref() == Ok(&x)
            && prob.as_ref() == Ok(&x)
    })
}

fn selftest_counts(_: &mut ChaCha8Rng) -> bool {
    [2usize, 8, 32].iter().all(|&r| {
        let base = Arc::new(ModuliBase::paper_base(r).unwrap());
        let r = r as u64;
        reconstruct::classical_coefficients(&base).egcd_calls() == r
            && reconstruct::sequential_coefficients(&base).0.egcd_calls() == r - 1
            && GarnerConverter::new(&base).egcd_calls() == r * (r - 1) / 2
    })
}

fn selftest_telescoping(_: &mut ChaCha8Rng) -> bool {
    [1usize, 2, 5, 24].iter().all(|&r| {
        let base = Arc::new(ModuliBase::paper_base(r).unwrap());
        let (coeffs, chain) = reconstruct::sequential_coefficients(&base);
        chain.telescoping_sum(&base).is_one()
            && coeffs.u() == reconstruct::classical_coefficients(&base).u()
    })
}

fn selftest_linear_forms(_: &mut ChaCha8Rng) -> bool {
    let base = Arc::new(ModuliBase::paper_base(16).unwrap());
    let config = ProbConfig::for_base(&base);
    let stats = reconstruct::linear_form_statistics(&base, &config, 0, 2000);
    (0.55..=0.70).contains(&stats.coprime_fraction()) && stats.mean_attempts < 2.0
}

fn selftest_underapprox(rng: &mut ChaCha8Rng) -> bool {
    let n = 8u32;
    (0..100).all(|_| {
        // alpha = p / q in [1/2, 1).
        let q: u64 = rng.gen_range(2..1 << 20);
        let p: u64 = rng.gen_range(q.div_ceil(2)..q);
        let a: Vec<BigUint> = (0..=n)
            .map(|_| {
                rng.gen_biguint_range(&(BigUint::one() << (n + 3)), &(BigUint::one() << (n + 12)))
                    + 1u32
            })
            .collect();
        let t: Vec<BigUint> = a.iter().map(|ai| ai * (q - p) / q).collect();
        let gamma = division::gamma_series(&t, &a).unwrap().to_rational();
        let gap = BigRational::new(q.into(), p.into()) - gamma;
        gap >= BigRational::zero() && gap <= BigRational::new(1.into(), BigInt::one() << n)
    })
}

fn selftest_group_bound() -> bool {
    (64..=128).all(|n| division::check_group_inequality(n).is_ok_and(|r| r.holds))
        && division::check_group_inequality(8).is_ok_and(|r| !r.holds)
}

fn selftest_division(rng: &mut ChaCha8Rng) -> bool {
    let Ok(divider) = Divider::new(16, GroupMode::Adaptive) else {
        return false;
    };
    (0..2000).all(|_| {
        let x: u64 = rng.gen_range(0..1 << 16);
        let y: u64 = rng.gen_range(1..1 << 16);
        divider
            .divide(&BigUint::from(x), &BigUint::from(y))
            .is_ok_and(|o| o.q == BigUint::from(x / y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("crr").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_base() {
        assert_eq!(
            run_args(&["gen-base", "--count", "3"]),
            (0, "base 3 5 7 11\n".into(), String::new())
        );
        assert_eq!(run_args(&["gen-base", "--count", "1"]).1, "base 1 5\n");
        assert_eq!(run_args(&["gen-base", "--count", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["gen-base"]).0, EXIT_USAGE);
    }

    #[test]
    fn encode_reports_reduction() {
        let (code, out, err) = run_args(&["encode", "--value", "23", "--moduli", "5,7,11"]);
        assert_eq!(
            (code, out.as_str(), err.as_str()),
            (0, "CRR1\nbase 3 5 7 11\nres 3 2 1\n", "")
        );
        let (_, out, err) = run_args(&["encode", "--value", "408", "--count", "3"]);
        assert_eq!(out, "CRR1\nbase 3 5 7 11\nres 3 2 1\n");
        assert_eq!(err, "reduced true\n");
        let (_, out, _) = run_args(&["encode", "--value", "-1", "--moduli", "3,5,7"]);
        assert!(out.ends_with("res 2 4 6\n"));
        assert_eq!(
            run_args(&["encode", "--value", "1", "--moduli", "6,10"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["encode", "--value", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn div_reports() {
        let (code, out, _) = run_args(&[
            "div", "--x", "100", "--y", "7", "--n", "8", "--mode", "adaptive", "--verify",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("q 14\n"));
        assert!(out.contains("\nr_used 3\n") && out.contains("\nmoduli_used 35\n"));
        assert!(out.contains("\nverify ok\n"));

        let (_, out, _) = run_args(&["div", "--x", "5", "--y", "2", "--n", "4"]);
        assert!(
            out.starts_with("q 2\n") && out.contains("\nD 2\n") && out.contains("path halving")
        );

        let (code, out, _) = run_args(&[
            "div", "--x", "1000", "--y", "3", "--n", "64", "--mode", "strict",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\nN 874\n"), "{out}");
    }

    #[test]
    fn div_failures() {
        let (code, _, err) = run_args(&[
            "div", "--x", "3", "--y", "5", "--n", "8", "--mode", "strict",
        ]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(err.contains("A_1 = 1147"), "{err}");
        assert_eq!(
            run_args(&["div", "--x", "3", "--y", "0", "--n", "8"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["div", "--x", "300", "--y", "5", "--n", "8"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn check_bound_rows() {
        let (code, out, _) = run_args(&["check-bound", "--n-min", "8", "--n-max", "8"]);
        assert_eq!((code, out.as_str()), (0, "n=8 r=2 m_next=31 holds=false\n"));
        let (code, out, _) = run_args(&[
            "check-bound",
            "--n-min",
            "4",
            "--n-max",
            "8",
            "--assert-ge",
            "8",
        ]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(out.starts_with("n=4 ") && out.ends_with("assert_ge 8 failed\n"));
        let (code, _, _) = run_args(&[
            "check-bound",
            "--n-min",
            "64",
            "--n-max",
            "80",
            "--assert-ge",
            "64",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn prob_stats_single_trial() {
        let (code, out, _) = run_args(&["prob-stats", "--trials", "1", "--r", "4"]);
        assert_eq!(code, 0);
        let fraction = out
            .lines()
            .find_map(|l| l.strip_prefix("coprime_fraction "))
            .unwrap();
        assert!(fraction == "0.000000" || fraction == "1.000000");
        assert_eq!(run_args(&["prob-stats", "--trials", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn prob_stats_independent_of_jobs() {
        let one = run_args(&["prob-stats", "--trials", "500", "--r", "8", "--seed", "5"]);
        let four = run_args(&[
            "prob-stats",
            "--trials",
            "500",
            "--r",
            "8",
            "--seed",
            "5",
            "--jobs",
            "4",
        ]);
        assert_eq!(one, four);
    }

    #[test]
    fn seed_parsing() {
        assert_eq!("17".parse::<Seed>(), Ok(Seed::Fixed(17)));
        assert_eq!("random".parse::<Seed>(), Ok(Seed::Random));
        assert!("-3".parse::<Seed>().is_err());
    }
}
