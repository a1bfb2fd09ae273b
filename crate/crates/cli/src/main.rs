//! `davenport`: sieves, identity verifications, Fine-query scans and the self-test.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use davenport::arith::{read_custom_csv, sieve, write_table_csv, ChiConvention, FnId, FnTable};
use davenport::fine::{fine_scan, FineMethod, FineReport, FineSpec, Frequency};
use davenport::identities::{
    asymptotic_probe, cross_check_popov_thm11, verify_eq34, verify_lemma31, verify_lemma32, verify_popov,
    verify_theorem11, verify_theorem12, verify_theorem31, AsymptoticModel, DeltaKind, IdentityReport, ProbeRow,
    SignConvention, VerifyConfig, Workspace,
};
use davenport::quad::Phi;
use davenport::suite::{self, Context, Scale};
use davenport::tolerances;
use davenport::zeta::ZeroTable;
use davenport::{Rational, TruncationSpec};

use output::{emit, Format};

const ZEROS_ENV: &str = "DAVENPORT_ZEROS";

#[derive(Parser)]
#[command(name = "davenport", version, about = "Numerical checks of Davenport expansions, Popov's formula and Fine's query")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate an arithmetic function.
    Sieve(SieveArgs),
    /// Verify an identity at one or more arguments.
    Verify(VerifyArgs),
    /// Scan `Σ_{k≤N} φ(k/N)` for a Fine-query family over a range of N.
    Fine(FineArgs),
    /// Tabulate D(x) against candidate asymptotics.
    Asymptotic(AsymptoticArgs),
    /// Run the acceptance grid on bundled data.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CustomArgs {
    /// CSV with header `n,f` for `--fn custom`.
    #[arg(long)]
    custom: Option<PathBuf>,
    /// Declare the custom table completely multiplicative.
    #[arg(long)]
    completely_multiplicative: bool,
}

#[derive(Args)]
struct SieveArgs {
    #[arg(long = "fn", value_parser = parse_fn)]
    fn_id: FnId,
    #[arg(long)]
    limit: u64,
    #[command(flatten)]
    custom: CustomArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Popov,
    Thm11,
    Thm12,
    Thm31,
    Lemma31,
    Lemma32,
    Eq34,
    #[value(alias = "cross_popov_thm11")]
    Cross,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Corrected,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiArg {
    Square,
    Sine,
    Cubic,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    #[arg(long = "fn", value_parser = parse_fn)]
    fn_id: Option<FnId>,
    /// Argument `p/q`, integer or decimal; repeatable.
    #[arg(long = "x", value_parser = parse_rational)]
    xs: Vec<Rational>,
    #[arg(long, default_value_t = 1_000_000)]
    nmax: u64,
    #[arg(long, default_value_t = 80)]
    kmax: u32,
    /// Zero ordinates, one per line; overrides DAVENPORT_ZEROS and the bundled table.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Absolute tolerance added to the pass test.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = SignArg::Corrected)]
    sign: SignArg,
    /// `n` for lemma31, `N` for eq34.
    #[arg(long = "n")]
    n: Option<u32>,
    #[arg(long = "m")]
    m: Option<u32>,
    #[arg(long, value_enum, default_value_t = PhiArg::Square)]
    phi: PhiArg,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 3.0)]
    b: f64,
    #[command(flatten)]
    custom: CustomArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    CosPower,
    SinEvenPower,
    D1,
    D2,
}

#[derive(Clone, Copy, ValueEnum)]
enum FreqArg {
    TwoPi,
    PiLiteral,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Collapsed,
    Brute,
}

#[derive(Args)]
struct FineArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long = "f", alias = "fn", value_parser = parse_fn)]
    fn_id: FnId,
    /// Power for the power families, modulus for d1/d2.
    #[arg(long)]
    m: u64,
    /// Exponent for d1/d2.
    #[arg(long, default_value_t = 2)]
    l: u32,
    /// Range `a..b` (inclusive) or list `a,b,c`.
    #[arg(long = "N", value_parser = parse_range)]
    ns: NRange,
    #[arg(long, value_enum, default_value_t = SignArgChi::Corrected)]
    chi: SignArgChi,
    #[arg(long = "freq", value_enum, default_value_t = FreqArg::TwoPi)]
    freq: FreqArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Collapsed)]
    method: MethodArg,
    #[arg(long, default_value_t = 1_000_000)]
    nmax: u64,
    /// Pass tolerance on |sum|; defaults to 1e-5 for d1/d2 and 5e-2 otherwise.
    #[arg(long)]
    tol: Option<f64>,
    /// Skip the complete-multiplicativity requirement.
    #[arg(long)]
    audit: bool,
    #[command(flatten)]
    custom: CustomArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArgChi {
    Corrected,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Linear,
    Constant,
}

#[derive(Args)]
struct AsymptoticArgs {
    #[arg(long = "fn", value_parser = parse_fn, default_value = "von_mangoldt")]
    fn_id: FnId,
    #[arg(long = "x", value_parser = parse_rational)]
    xs: Vec<Rational>,
    #[arg(long, value_enum, default_value_t = ModelArg::Linear)]
    model: ModelArg,
    #[arg(long, default_value_t = 1_000_000)]
    nmax: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Truncate at 10⁶ instead of 10⁷.
    #[arg(long)]
    quick: bool,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone)]
struct NRange(Vec<u64>);

fn parse_fn(s: &str) -> Result<FnId, String> {
    s.parse().map_err(|e: davenport::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: davenport::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<NRange, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a positive integer: {t:?}"));
    let ns: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if ns.contains(&0) {
        return Err("N must be at least 1".into());
    }
    Ok(NRange(ns))
}

fn zero_table(path: Option<&Path>) -> Result<ZeroTable<f64>> {
    let env = std::env::var_os(ZEROS_ENV).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env) {
        Some(p) => ZeroTable::load(&p).with_context(|| format!("loading zeros from {}", p.display())),
        None => Ok(ZeroTable::bundled()),
    }
}

fn custom_table(args: &CustomArgs) -> Result<Option<FnTable<f64>>> {
    args.custom
        .as_ref()
        .map(|p| read_custom_csv(p, args.completely_multiplicative).with_context(|| format!("reading {}", p.display())))
        .transpose()
}

fn workspace(limit: u64, custom: &CustomArgs, fn_id: Option<FnId>) -> Result<Workspace<f64>> {
    let mut ws = Workspace::<f64>::new(limit)?;
    match custom_table(custom)? {
        Some(t) => ws = ws.with_custom(t)?,
        None if fn_id == Some(FnId::Custom) => bail!("--fn custom needs --custom <csv>"),
        None => {}
    }
    Ok(ws)
}

fn report_rows(reports: &[IdentityReport]) -> Vec<Vec<String>> {
    reports.iter().map(IdentityReport::csv_row).collect()
}

fn run_sieve(args: &SieveArgs, w: &mut dyn std::io::Write, format: Format) -> Result<bool> {
    let table = match args.fn_id {
        FnId::Custom => custom_table(&args.custom)?.context("--fn custom needs --custom <csv>")?,
        f => sieve::<f64>(f, args.limit)?,
    };
    match format {
        Format::Csv => write_table_csv(&table, w)?,
        Format::Json => {
            let doc = serde_json::json!({ "fn": table.fn_id().name(), "limit": table.limit(), "values": table.values() });
            serde_json::to_writer(&mut *w, &doc)?;
            writeln!(w)?;
        }
        Format::Table => {
            let rows: Vec<Vec<String>> =
                (1..=table.limit()).map(|n| vec![n.to_string(), table.value(n).to_string()]).collect();
            output::table(w, &["n", "f"], &rows)?;
        }
    }
    Ok(true)
}

fn run_verify(args: &VerifyArgs, w: &mut dyn std::io::Write, format: Format) -> Result<bool> {
    let mut cfg = VerifyConfig::new(args.nmax).with_tolerance(args.tol);
    cfg.k_max = args.kmax;
    cfg.sign = match args.sign {
        SignArg::Corrected => SignConvention::Corrected,
        SignArg::Literal => SignConvention::Literal,
    };
    let reports: Vec<IdentityReport> = match args.identity {
        IdentityArg::Lemma31 | IdentityArg::Eq34 => {
            let (n, m) = (args.n.context("--n is required")?, args.m.context("--m is required")?);
            vec![match args.identity {
                IdentityArg::Lemma31 => verify_lemma31(n, m, &cfg)?,
                _ => verify_eq34(n, m, &cfg)?,
            }]
        }
        IdentityArg::Lemma32 => {
            let phi = match args.phi {
                PhiArg::Square => Phi::Square,
                PhiArg::Sine => Phi::Sine,
                PhiArg::Cubic => Phi::cubic(),
            };
            vec![verify_lemma32(phi, args.a, args.b, &cfg)?]
        }
        id => {
            if args.xs.is_empty() {
                bail!("at least one --x is required");
            }
            let needs_fn = matches!(id, IdentityArg::Thm11 | IdentityArg::Thm12 | IdentityArg::Thm31);
            let fn_id = match (needs_fn, args.fn_id) {
                (true, Some(f)) => Some(f),
                (true, None) => bail!("--fn is required for this identity"),
                (false, _) => None,
            };
            let mut ws = workspace(args.nmax, &args.custom, fn_id)?;
            if matches!(id, IdentityArg::Popov | IdentityArg::Cross) {
                ws = ws.with_zeros(zero_table(args.zeros.as_deref())?);
            }
            let one = |x: Rational| -> davenport::Result<IdentityReport> {
                match id {
                    IdentityArg::Popov => verify_popov(&ws, x, &cfg),
                    IdentityArg::Cross => cross_check_popov_thm11(&ws, x, &cfg),
                    IdentityArg::Thm11 => verify_theorem11(&ws, fn_id.unwrap(), x, &cfg),
                    IdentityArg::Thm12 => verify_theorem12(&ws, fn_id.unwrap(), x, &cfg),
                    _ => verify_theorem31(&ws, fn_id.unwrap(), x, &cfg),
                }
            };
            if let Some(f) = fn_id {
                ws.pair(f)?;
            } else {
                ws.pair(FnId::VonMangoldt)?;
            }
            args.xs.par_iter().map(|&x| one(x)).collect::<davenport::Result<Vec<_>>>()?
        }
    };
    emit(w, format, &reports, &IdentityReport::CSV_HEADER, &report_rows(&reports))?;
    Ok(reports.iter().all(|r| r.pass))
}

fn run_fine(args: &FineArgs, w: &mut dyn std::io::Write, format: Format) -> Result<bool> {
    let convention = match args.chi {
        SignArgChi::Corrected => ChiConvention::Corrected,
        SignArgChi::Literal => ChiConvention::Literal,
    };
    let power = u32::try_from(args.m).context("--m too large")?;
    let spec = match args.family {
        FamilyArg::CosPower => FineSpec::cos_power(args.fn_id, power)?,
        FamilyArg::SinEvenPower => FineSpec::sin_even_power(args.fn_id, power)?,
        FamilyArg::D1 => FineSpec::d1(args.fn_id, args.m, args.l, convention)?,
        FamilyArg::D2 => FineSpec::d2(args.fn_id, args.m, args.l, convention)?,
    };
    let spec = spec
        .with_frequency(match args.freq {
            FreqArg::TwoPi => Frequency::TwoPi,
            FreqArg::PiLiteral => Frequency::PiLiteral,
        })
        .with_audit(args.audit);
    let t = if spec.is_chi_family() { TruncationSpec::direct(args.nmax) } else { TruncationSpec::cesaro(args.nmax) };
    let method = match args.method {
        MethodArg::Collapsed => FineMethod::Collapsed,
        MethodArg::Brute => FineMethod::Brute,
    };
    let tol = args.tol.unwrap_or(if spec.is_chi_family() { tolerances::FINE_CHI } else { tolerances::FINE_COS_POWER });
    let table = match args.fn_id {
        FnId::Custom => custom_table(&args.custom)?.context("--f custom needs --custom <csv>")?,
        f => sieve::<f64>(f, args.nmax.max(args.m))?,
    };
    let scan = fine_scan(&spec, &table, &args.ns.0, &t, method, tol)?;
    let rows: Vec<Vec<String>> = scan.reports.iter().map(FineReport::csv_row).collect();
    match format {
        Format::Json => output::json_lines(w, &[&scan])?,
        _ => emit(w, format, &scan.reports, &FineReport::<f64>::CSV_HEADER, &rows)?,
    }
    let s = scan.summary;
    eprintln!(
        "{spec}: coprime {}/{} within {tol:e}; non-coprime {}/{} (not judged)",
        s.coprime_pass, s.coprime_total, s.non_coprime_pass, s.non_coprime_total
    );
    Ok(scan.coprime_all_pass())
}

fn run_asymptotic(args: &AsymptoticArgs, w: &mut dyn std::io::Write, format: Format) -> Result<bool> {
    let ws = Workspace::<f64>::new(args.nmax)?;
    let model = AsymptoticModel {
        delta_kind: match args.model {
            ModelArg::Linear => DeltaKind::Linear,
            ModelArg::Constant => DeltaKind::Constant,
        },
        fn_id: args.fn_id,
    };
    let rows = asymptotic_probe(&ws, model, &args.xs, args.nmax)?;
    let cells: Vec<Vec<String>> = rows.iter().map(ProbeRow::csv_row).collect();
    emit(w, format, &rows, &ProbeRow::CSV_HEADER, &cells)?;
    Ok(true)
}

fn run_selftest(args: &SelftestArgs, w: &mut dyn std::io::Write, format: Format) -> Result<bool> {
    let scale = if args.quick { Scale::Quick } else { Scale::Full };
    let started = Instant::now();
    let ws = Context::workspace(scale)?;
    let extra = ZeroTable::bundled_200();
    let ctx = Context { ws: &ws, zeros_extra: Some(&extra), scale };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads.unwrap_or(0)).build()?;
    let result = pool.install(|| suite::run(&ctx))?;
    match format {
        Format::Json => output::json_lines(w, &[&result])?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .checks()
                .map(|c| {
                    vec![c.criterion.to_string(), c.name.clone(), format!("{:e}", c.value), format!("{:e}", c.threshold), c.pass.to_string()]
                })
                .collect();
            output::csv_rows(w, &["criterion", "check", "value", "threshold", "pass"], &rows)?;
        }
        Format::Table => write!(w, "{}", result.summary_table())?,
    }
    eprintln!("selftest finished in {:.1} s", started.elapsed().as_secs_f64());
    Ok(result.all_pass())
}

fn run(cli: &Cli) -> Result<bool> {
    let mut w = output::open(cli.out.as_deref())?;
    let fmt = |default| cli.format.unwrap_or(default);
    let ok = match &cli.command {
        Command::Sieve(a) => run_sieve(a, &mut *w, fmt(Format::Csv))?,
        Command::Verify(a) => run_verify(a, &mut *w, fmt(Format::Json))?,
        Command::Fine(a) => run_fine(a, &mut *w, fmt(Format::Csv))?,
        Command::Asymptotic(a) => run_asymptotic(a, &mut *w, fmt(Format::Csv))?,
        Command::Selftest(a) => run_selftest(a, &mut *w, fmt(Format::Table))?,
    };
    w.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
