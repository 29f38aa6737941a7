//! Batch front-end for the trigsum library: evaluate the finite
//! trigonometric sums by any representation, emit asymptotics/bounds
//! comparison tables as CSV, run the identity corpus, and benchmark
//! direct versus asymptotic evaluation.

mod expr;

use std::fs::File;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use trigsum::asymptotics::{
    asympt_cn, asympt_cn_phi1, asympt_ctg_tg_halfstep, asympt_sn, asympt_sn_0a, asympt_sn_phi1,
    asympt_sn_phi_a, AsymptoticSeries, HalfStepFamily, Regime, SnFlavor, DEFAULT_ONSET,
};
use trigsum::bounds::{
    bounds_cn, bounds_cn_phi1, bounds_sn, bounds_sn_phi1, bounds_sn_phi_a, historical_bounds,
    BoundFlavor, BoundPair,
};
use trigsum::identities::{
    log_derivative_spotcheck, run_identity, sample_params, IdentityId, ALL_IDENTITIES,
};
use trigsum::representations::{
    eval_cotangent_form, eval_digamma_finite, eval_digamma_infinite, eval_integral_form,
    QuadratureConfig, SeriesAccel,
};
use trigsum::sums::{eval_direct, EvalResult, Family, Method, SumSpec};
use trigsum::{Error, Precision};

const EXIT_DOMAIN: u8 = 2;
const EXIT_POLE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "trigsum", version, about = "Finite trigonometric sum evaluator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one sum by a chosen method; prints value,method,err_estimate.
    Eval(EvalArgs),
    /// Evaluate an asymptotic expansion with its leading-term breakdown.
    Asympt(AsymptArgs),
    /// Print lower/upper bounds for a sum.
    Bounds(BoundsArgs),
    /// Run the identity corpus at random in-domain parameter draws.
    #[command(name = "identity-check")]
    IdentityCheck(IdentityArgs),
    /// Emit comparison tables (sum panels, expansion errors, bound gaps) as CSV.
    Figure(FigureArgs),
    /// Benchmark direct O(n) against asymptotic O(1) evaluation.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Csc,
    Sec,
    Tg,
    Ctg,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Csc => Family::Csc,
            FamilyArg::Sec => Family::Sec,
            FamilyArg::Tg => Family::Tan,
            FamilyArg::Ctg => Family::Cot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Native,
    Wide,
}

#[derive(Args)]
struct EvalArgs {
    /// Which trigonometric function is summed.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of lattice points; the sum runs l = 1..n-1.
    #[arg(long)]
    n: u64,
    /// Phase in radians; accepts expressions like "2*ln2" or "pi/3".
    #[arg(long, default_value = "0")]
    phi: String,
    /// Step scale; accepts the same expressions.
    #[arg(long, default_value = "1")]
    a: String,
    /// direct | cotangent | digamma-finite | digamma-infinite | integral | asympt:N
    #[arg(long, default_value = "direct")]
    method: String,
    #[arg(long, value_enum, default_value = "native")]
    precision: PrecisionArg,
    /// Principal value: drop pole-hitting terms instead of failing.
    #[arg(long)]
    pv: bool,
    /// Emit a JSON object instead of a CSV row.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "0")]
    phi: String,
    #[arg(long, default_value = "1")]
    a: String,
    /// Truncation order N (the tail holds r = 1..N-1).
    #[arg(long, default_value_t = 3)]
    order: u32,
    /// Use the harmonic-number centering for S_n-type sums.
    #[arg(long)]
    harmonic: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsTarget {
    /// S_n with harmonic-number centering
    Sn,
    /// S_n with logarithmic centering
    SnLog,
    /// S_n(phi, a) on the strip
    Strip,
    /// S_n(phi, 1)
    Phi1,
    /// C_n(phi, a) on the shifted strip
    Cn,
    /// C_n(phi, 1)
    CnPhi1,
    /// the four classical bounds
    Historical,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    which: BoundsTarget,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "0")]
    phi: String,
    #[arg(long, default_value = "1")]
    a: String,
}

#[derive(Args)]
struct IdentityArgs {
    /// Check only this identity (kebab-case name); all when omitted.
    #[arg(long)]
    id: Option<String>,
    #[arg(long, default_value_t = 50)]
    draws: u32,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

#[derive(Args)]
struct FigureArgs {
    /// Table selector - 2: the four S_n(phi,a) panels; 3: expansion errors;
    /// 5: upper-bound gaps.
    #[arg(long)]
    which: u32,
    #[arg(long, default_value_t = 100)]
    nmax: u64,
    /// Output CSV path.
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1_000_000)]
    nmax: u64,
    #[arg(long, default_value_t = 3)]
    reps: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn usage_err(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn math_err(e: &Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::PoleHit(_) | Error::DigammaPole(_) => EXIT_POLE,
        _ => EXIT_DOMAIN,
    }
}

fn parse_expr(s: &str, what: &str) -> Result<f64, u8> {
    expr::parse(s).map_err(|e| usage_err(&format!("--{what}: {e}")))
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Asympt(args) => cmd_asympt(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::IdentityCheck(args) => cmd_identity_check(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

enum MethodArg {
    Direct,
    Cotangent,
    DigammaFinite,
    DigammaInfinite,
    Integral,
    Asympt(u32),
}

fn parse_method(s: &str) -> Result<MethodArg, u8> {
    match s {
        "direct" => Ok(MethodArg::Direct),
        "cotangent" => Ok(MethodArg::Cotangent),
        "digamma-finite" => Ok(MethodArg::DigammaFinite),
        "digamma-infinite" => Ok(MethodArg::DigammaInfinite),
        "integral" => Ok(MethodArg::Integral),
        other => {
            if let Some(order) = other.strip_prefix("asympt:") {
                let order: u32 = order
                    .parse()
                    .map_err(|_| usage_err(&format!("bad asymptotic order in '{other}'")))?;
                Ok(MethodArg::Asympt(order))
            } else {
                Err(usage_err(&format!(
                    "unknown method '{other}' (direct, cotangent, digamma-finite, \
                     digamma-infinite, integral, asympt:N)"
                )))
            }
        }
    }
}

/// Route an asympt:N evaluation to the expansion that covers (family, phi, a).
fn asympt_dispatch(
    family: Family,
    n: u64,
    phi: f64,
    a: f64,
    order: u32,
) -> Result<AsymptoticSeries, Error> {
    let pi = std::f64::consts::PI;
    match family {
        Family::Csc => {
            if phi == 0.0 && a == 1.0 {
                asympt_sn(n, order, SnFlavor::Log)
            } else if a == 1.0 && phi > 0.0 && phi < pi {
                asympt_sn_phi1(n, phi, order, DEFAULT_ONSET)
            } else if phi == 0.0 && a > 0.0 && a < 2.0 && a != 1.0 {
                asympt_sn_0a(n, a, order, SnFlavor::Log, DEFAULT_ONSET)
            } else {
                asympt_sn_phi_a(n, phi, a, order, DEFAULT_ONSET)
            }
        }
        Family::Sec => {
            if a == 1.0 && phi.abs() < pi / 2.0 {
                asympt_cn_phi1(n, phi, order, DEFAULT_ONSET)
            } else {
                asympt_cn(n, phi, a, order, DEFAULT_ONSET)
            }
        }
        Family::Cot | Family::Tan => {
            if a != 0.5 {
                return Err(Error::Domain(
                    "tangent/cotangent expansions cover the half-step sums (a = 1/2) only"
                        .into(),
                ));
            }
            let hs = if family == Family::Cot {
                HalfStepFamily::Ctg
            } else {
                HalfStepFamily::Tg
            };
            asympt_ctg_tg_halfstep(n, phi, order, hs, DEFAULT_ONSET)
        }
    }
}

fn print_result(r: &EvalResult, json: bool) {
    if json {
        let obj = serde_json::json!({
            "value": r.value,
            "method": r.method.to_string(),
            "err_estimate": r.err_estimate,
            "skipped_terms": r.skipped_terms,
        });
        println!("{obj}");
    } else {
        println!("{},{},{}", r.value, r.method, r.err_estimate);
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), u8> {
    let phi = parse_expr(&args.phi, "phi")?;
    let a = parse_expr(&args.a, "a")?;
    let family: Family = args.family.into();
    let mut spec = SumSpec::new(family, args.n, phi, a);
    if args.pv {
        spec = spec.principal_value();
    }
    let method = parse_method(&args.method)?;
    let result = match method {
        MethodArg::Direct => {
            let precision = match args.precision {
                PrecisionArg::Native => Precision::Native,
                PrecisionArg::Wide => Precision::Wide,
            };
            eval_direct(&spec, precision)
        }
        MethodArg::Cotangent => {
            if family != Family::Csc || a != 1.0 {
                Err(Error::Domain(
                    "the cotangent form covers the cosecant family at a = 1".into(),
                ))
            } else {
                eval_cotangent_form(args.n, phi)
            }
        }
        MethodArg::DigammaFinite => eval_digamma_finite(&spec),
        MethodArg::DigammaInfinite => eval_digamma_infinite(&spec, &SeriesAccel::default()),
        MethodArg::Integral => eval_integral_form(&spec, &QuadratureConfig::default()),
        MethodArg::Asympt(order) => {
            asympt_dispatch(family, args.n, phi, a, order).map(|s| {
                // remainder surrogate: the last tail term, whose magnitude
                // bounds the truncation error of an enveloping series
                let err = s
                    .tail_coeffs
                    .last()
                    .map(|c| (c / (args.n as f64).powi(2 * s.order as i32 - 3)).abs())
                    .unwrap_or(0.0);
                EvalResult {
                    value: s.value_f64(),
                    wide: Some(s.value),
                    method: Method::Asymptotic(s.order),
                    err_estimate: err,
                    skipped_terms: Vec::new(),
                }
            })
        }
    };
    match result {
        Ok(r) => {
            print_result(&r, args.json);
            Ok(())
        }
        Err(e) => Err(math_err(&e)),
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::LogOnly => "log-only",
        Regime::CtgPlusLogUnitA => "ctg-plus-log-unit-a",
        Regime::LogOnlySmallA => "log-only-small-a",
        Regime::CtgPlusLogLargeA => "ctg-plus-log-large-a",
        Regime::General => "general-strip",
    }
}

fn cmd_asympt(args: AsymptArgs) -> Result<(), u8> {
    let phi = parse_expr(&args.phi, "phi")?;
    let a = parse_expr(&args.a, "a")?;
    let family: Family = args.family.into();
    let series = if args.harmonic && family == Family::Csc && phi == 0.0 {
        if a == 1.0 {
            asympt_sn(args.n, args.order, SnFlavor::Harmonic)
        } else {
            asympt_sn_0a(args.n, a, args.order, SnFlavor::Harmonic, DEFAULT_ONSET)
        }
    } else {
        asympt_dispatch(family, args.n, phi, a, args.order)
    }
    .map_err(|e| math_err(&e))?;
    if args.json {
        let obj = serde_json::json!({
            "value": series.value_f64(),
            "order": series.order,
            "regime": regime_name(series.regime),
            "leading": series.leading.iter()
                .map(|t| serde_json::json!({"name": t.name, "value": t.value.to_f64()}))
                .collect::<Vec<_>>(),
            "tail_coeffs": series.tail_coeffs,
            "below_onset": series.below_onset,
            "pole_adjacent": series.unreliable,
        });
        println!("{obj}");
    } else {
        println!(
            "value,order,regime,below_onset,pole_adjacent\n{},{},{},{},{}",
            series.value_f64(),
            series.order,
            regime_name(series.regime),
            series.below_onset,
            series.unreliable
        );
        println!("term,value");
        for t in &series.leading {
            println!("\"{}\",{}", t.name, t.value.to_f64());
        }
        for (i, c) in series.tail_coeffs.iter().enumerate() {
            println!("\"tail r={}\",{}", i + 1, c);
        }
    }
    Ok(())
}

fn print_bound(b: &BoundPair) {
    let flavor = match b.flavor {
        BoundFlavor::HarmonicCentered => "harmonic",
        BoundFlavor::LogCentered => "log",
        BoundFlavor::GeneralStrip => "strip",
        BoundFlavor::UnitAPhi1 => "phi1",
        BoundFlavor::SecantStrip => "secant-strip",
        BoundFlavor::SecantUnitAPhi1 => "secant-phi1",
        BoundFlavor::CochranePeral => "cochrane-peral",
        BoundFlavor::AlzerKoumandos => "alzer-koumandos",
        BoundFlavor::Pomerance => "pomerance",
        BoundFlavor::TongEtAl => "tong-et-al",
    };
    let consts: Vec<String> = b
        .constants
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    println!(
        "{flavor},{},{},{}",
        b.lower.to_f64(),
        b.upper.to_f64(),
        consts.join(";")
    );
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), u8> {
    let phi = parse_expr(&args.phi, "phi")?;
    let a = parse_expr(&args.a, "a")?;
    println!("flavor,lower,upper,constants");
    let pairs = match args.which {
        BoundsTarget::Sn => bounds_sn(args.n, BoundFlavor::HarmonicCentered).map(|b| vec![b]),
        BoundsTarget::SnLog => bounds_sn(args.n, BoundFlavor::LogCentered).map(|b| vec![b]),
        BoundsTarget::Strip => bounds_sn_phi_a(args.n, phi, a).map(|b| vec![b]),
        BoundsTarget::Phi1 => bounds_sn_phi1(args.n, phi).map(|b| vec![b]),
        BoundsTarget::Cn => bounds_cn(args.n, phi, a).map(|b| vec![b]),
        BoundsTarget::CnPhi1 => bounds_cn_phi1(args.n, phi).map(|b| vec![b]),
        BoundsTarget::Historical => historical_bounds(args.n),
    }
    .map_err(|e| math_err(&e))?;
    for b in &pairs {
        print_bound(b);
    }
    Ok(())
}

fn cmd_identity_check(args: IdentityArgs) -> Result<(), u8> {
    use rand::Rng;
    use rand::SeedableRng;
    let ids: Vec<IdentityId> = match &args.id {
        Some(name) => {
            let id = IdentityId::from_name(name)
                .ok_or_else(|| usage_err(&format!("unknown identity '{name}'")))?;
            vec![id]
        }
        None => ALL_IDENTITIES.to_vec(),
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let mut failed = false;
    println!("identity,draws,max_residual,tol,status");
    for id in ids {
        let mut max_residual = 0.0f64;
        let mut status = "pass";
        for _ in 0..args.draws {
            let mut gen = || rng.random::<f64>();
            let p = sample_params(id, &mut gen);
            match run_identity(id, &p) {
                Ok(r) => max_residual = max_residual.max(r),
                Err(e) => {
                    eprintln!("{}: {e}", id.name());
                    status = "error";
                    failed = true;
                    break;
                }
            }
        }
        if status == "pass" && max_residual >= id.default_tol() {
            status = "fail";
            failed = true;
        }
        println!(
            "{},{},{:e},{:e},{}",
            id.name(),
            args.draws,
            max_residual,
            id.default_tol(),
            status
        );
    }
    // the table-misprint guard and the cancellation-prone spot check
    let near_one = log_derivative_spotcheck(4, 1.0 + 1e-6).map_err(|e| math_err(&e))?;
    println!("log-derivative-near-one,1,{near_one:e},1e-14,{}", if near_one < 1e-14 { "pass" } else { "fail" });
    if near_one >= 1e-14 {
        failed = true;
    }
    if failed {
        return Err(1);
    }
    Ok(())
}

fn open_out(path: &str) -> Result<File, u8> {
    File::create(path).map_err(|e| {
        eprintln!("error: cannot write '{path}': {e}");
        EXIT_IO
    })
}

fn wide_value(r: &EvalResult) -> f64 {
    r.wide.map(|w| w.to_f64()).unwrap_or(r.value)
}

fn cmd_figure(args: FigureArgs) -> Result<(), u8> {
    let mut out = open_out(&args.out)?;
    let write_err = |e: std::io::Error| {
        eprintln!("error: write failed: {e}");
        EXIT_IO
    };
    let nmax = args.nmax.max(2);
    match args.which {
        2 => {
            let ln2 = std::f64::consts::LN_2;
            writeln!(out, "n,s_2ln2_1,s_0_1,s_0_2ln2,s_0_ln2").map_err(write_err)?;
            for n in 2..=nmax {
                let panels = [
                    (2.0 * ln2, 1.0),
                    (0.0, 1.0),
                    (0.0, 2.0 * ln2),
                    (0.0, ln2),
                ];
                let mut row = format!("{n}");
                for (phi, a) in panels {
                    let v = eval_direct(&SumSpec::new(Family::Csc, n, phi, a), Precision::Wide)
                        .map(|r| wide_value(&r))
                        .map_err(|e| math_err(&e))?;
                    row.push(',');
                    row.push_str(&format!("{v}"));
                }
                writeln!(out, "{row}").map_err(write_err)?;
            }
        }
        3 => {
            writeln!(
                out,
                "n,err_harmonic_n3,err_log_n3,err_harmonic_n4,err_log_n4"
            )
            .map_err(write_err)?;
            for n in 2..=nmax {
                let s = eval_direct(&SumSpec::new(Family::Csc, n, 0.0, 1.0), Precision::Wide)
                    .map_err(|e| math_err(&e))?
                    .wide
                    .unwrap();
                let mut row = format!("{n}");
                for (order, flavor) in [
                    (3, SnFlavor::Harmonic),
                    (3, SnFlavor::Log),
                    (4, SnFlavor::Harmonic),
                    (4, SnFlavor::Log),
                ] {
                    let approx = asympt_sn(n, order, flavor).map_err(|e| math_err(&e))?;
                    let err = (approx.value - s).to_f64().abs();
                    row.push(',');
                    row.push_str(&format!("{err}"));
                }
                writeln!(out, "{row}").map_err(write_err)?;
            }
        }
        5 => {
            writeln!(out, "n,gap_harmonic,gap_log,gap_pomerance,gap_tong").map_err(write_err)?;
            for n in 2..=nmax {
                let s = eval_direct(&SumSpec::new(Family::Csc, n, 0.0, 1.0), Precision::Wide)
                    .map_err(|e| math_err(&e))?
                    .wide
                    .unwrap();
                let h = (bounds_sn(n, BoundFlavor::HarmonicCentered)
                    .map_err(|e| math_err(&e))?
                    .upper
                    - s)
                    .to_f64();
                let l = (bounds_sn(n, BoundFlavor::LogCentered)
                    .map_err(|e| math_err(&e))?
                    .upper
                    - s)
                    .to_f64();
                let hist = historical_bounds(n).map_err(|e| math_err(&e))?;
                let p = (hist[2].upper - s).to_f64();
                let t = (hist[3].upper - s).to_f64();
                writeln!(out, "{n},{h},{l},{p},{t}").map_err(write_err)?;
            }
        }
        other => return Err(usage_err(&format!("--which must be 2, 3 or 5, got {other}"))),
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), u8> {
    if args.reps == 0 {
        return Err(usage_err("--reps must be positive"));
    }
    println!("n,direct_median_s,asympt_median_s,speedup,asympt_rel_err");
    let mut n = 100u64;
    while n <= args.nmax {
        let spec = SumSpec::new(Family::Csc, n, 0.0, 1.0);
        let mut direct_times = Vec::new();
        let mut direct_value = 0.0;
        for _ in 0..args.reps {
            let t = Instant::now();
            let r = eval_direct(&spec, Precision::Native).map_err(|e| math_err(&e))?;
            direct_value = std::hint::black_box(r.value);
            direct_times.push(t.elapsed().as_secs_f64());
        }
        direct_times.sort_by(f64::total_cmp);
        let direct_median = direct_times[direct_times.len() / 2];

        let asympt_reps = (args.reps * 50).max(50);
        let mut asympt_times = Vec::new();
        let mut asympt_value = 0.0;
        for _ in 0..asympt_reps {
            let t = Instant::now();
            let s = asympt_sn(n, 3, SnFlavor::Log).map_err(|e| math_err(&e))?;
            asympt_value = std::hint::black_box(s.value_f64());
            asympt_times.push(t.elapsed().as_secs_f64());
        }
        asympt_times.sort_by(f64::total_cmp);
        let asympt_median = asympt_times[asympt_times.len() / 2];

        // accuracy against the wide direct oracle at this n
        let oracle = eval_direct(&spec, Precision::Wide)
            .map_err(|e| math_err(&e))?
            .wide
            .unwrap()
            .to_f64();
        let rel = ((asympt_value - oracle) / oracle).abs();
        let _ = direct_value;
        println!(
            "{n},{direct_median},{asympt_median},{:.1},{rel:e}",
            direct_median / asympt_median
        );
        n *= 10;
    }
    Ok(())
}
