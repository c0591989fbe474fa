use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use derivpoly::verify::suite::{run_suite, Suite, SuiteConfig};
use derivpoly::verify::{riccati_series, v_series, OracleInstance, Verdict, Verifier, VerifyError};
use derivpoly::{
    bernoulli_numbers, bernoulli_poly_table, Family, PolyRecord, Rational, RecordParams, RiccatiParams, Table, Tables,
};

const THREADS_VAR: &str = "DERIVPOLY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "derivpoly", version, about = "Derivative polynomials, special-number triangles and identity checks")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a triangle or Bernoulli table
    Table(TableArgs),
    /// Print the coefficients of one polynomial, lowest degree first
    Poly(PolyArgs),
    /// Print Taylor coefficients of u or v at z = 0
    Series(Box<SeriesArgs>),
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableChoice {
    Eulerian,
    Macmahon,
    Bernoulli,
    BernoulliPoly,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableChoice,
    /// Last row (or last index for Bernoulli tables)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_TABLE_N))]
    n: u64,
}

const MAX_TABLE_N: u64 = 500;

#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    r: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    d: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Riccati,
    V,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, conflicts_with_all = ["q", "p", "s"])]
    r: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, conflicts_with_all = ["q", "p", "s"])]
    a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, conflicts_with_all = ["q", "p", "s"])]
    b: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
    d: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    u0: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "1")]
    v0: Rational,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_SERIES_ORDER))]
    order: u64,
    /// Logistic curve q/(1 + p e^{-sz}); replaces --r/--a/--b
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires_all = ["p", "s"])]
    q: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "q")]
    p: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "q")]
    s: Option<Rational>,
}

const MAX_SERIES_ORDER: u64 = 200;

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Series order N for the generating-function checks
    #[arg(long)]
    order: Option<usize>,
    /// Restrict the integral checks to one interval [a, b]
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "b")]
    a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "a")]
    b: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "1/3")]
    d: Rational,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e| format!("{e}; expected one of {}", Suite::NAMES.join(", ")))
}

/// Errors that map to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(Usage(msg)) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), Usage> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Usage> {
    match &cli.command {
        Command::Table(args) => table(args, cli.format),
        Command::Poly(args) => poly(args, cli.format),
        Command::Series(args) => series(args, cli.format),
        Command::Verify(args) => verify(args, cli.format),
    }
}

fn table(args: &TableArgs, format: Format) -> Result<ExitCode, Usage> {
    let n = args.n as usize;
    let tables = Tables::standard();
    let t: Table = match args.kind {
        TableChoice::Eulerian => tables.eulerian_triangle(n).to_table(),
        TableChoice::Macmahon => tables.macmahon_triangle(n).to_table(),
        TableChoice::Bernoulli => bernoulli_numbers(n).to_table(),
        TableChoice::BernoulliPoly => bernoulli_poly_table(n),
    };
    match format {
        Format::Plain => print!("{}", t.to_plain()),
        Format::Csv => print!("{}", t.to_csv()),
        Format::Json => println!("{}", serde_json::to_string(&t)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn require<'a>(value: &'a Option<Rational>, flag: &str, family: Family) -> Result<&'a Rational, Usage> {
    value
        .as_ref()
        .ok_or_else(|| Usage(format!("family {family:?} requires --{flag}")))
}

fn poly(args: &PolyArgs, format: Format) -> Result<ExitCode, Usage> {
    let tables = Tables::standard();
    let family = args.family;
    if let Some(r) = &args.r {
        if r.is_zero() {
            return Err(Usage("r must be nonzero".into()));
        }
    }
    let mut params = RecordParams { r: args.r.clone(), ..RecordParams::default() };
    let coefficients = if family.needs_roots() {
        let a = require(&args.a, "a", family)?;
        let b = require(&args.b, "b", family)?;
        let roots = RiccatiParams::roots(a.clone(), b.clone())?;
        params.a = Some(a.clone());
        params.b = Some(b.clone());
        match family {
            Family::P => tables.build_p(args.n, &roots)?,
            Family::Q => tables.build_q(args.n, &roots)?,
            _ => {
                let d = require(&args.d, "d", family)?;
                params.d = Some(d.clone());
                tables.build_s(args.n, &roots.with_shift(d.clone()))?
            }
        }
    } else {
        match family {
            Family::E => tables.build_e(args.n)?,
            Family::A => tables.build_a(args.n)?,
            _ => tables.build_m(args.n)?,
        }
    };
    let record = PolyRecord { family, n: args.n, params, coefficients };
    let strings: Vec<String> = record.coefficients.coeffs().iter().map(Rational::to_string).collect();
    match format {
        Format::Plain => println!("[{}]", strings.join(", ")),
        Format::Csv => println!("{}", strings.join(",")),
        Format::Json => println!("{}", serde_json::to_string(&record)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn series(args: &SeriesArgs, format: Format) -> Result<ExitCode, Usage> {
    let (base, default_u0) = match (&args.q, &args.p, &args.s) {
        (Some(q), Some(p), Some(s)) => {
            let one_plus_p = Rational::one() + p;
            let u0 = q.checked_div(&one_plus_p).map_err(|_| Usage("p = -1 puts the pole at z = 0".into()))?;
            (RiccatiParams::logistic(q, s)?, Some(u0))
        }
        _ => {
            let missing = |flag: &str| Usage(format!("--{flag} is required unless --q/--p/--s are given"));
            let r = args.r.clone().ok_or_else(|| missing("r"))?;
            let a = args.a.clone().ok_or_else(|| missing("a"))?;
            let b = args.b.clone().ok_or_else(|| missing("b"))?;
            (RiccatiParams::new(r, a, b)?, None)
        }
    };
    let u0 = args
        .u0
        .clone()
        .or(default_u0)
        .ok_or_else(|| Usage("--u0 is required".into()))?;
    let v0 = match args.which {
        Which::Riccati => Rational::one(),
        Which::V => args.v0.clone(),
    };
    let inst = OracleInstance::new(base.with_shift(args.d.clone()), u0, v0, args.order as usize)?;
    let s = match args.which {
        Which::Riccati => riccati_series(&inst),
        Which::V => v_series(&inst),
    };
    let strings: Vec<String> = s.coeffs().iter().map(Rational::to_string).collect();
    match format {
        Format::Plain => println!("[{}]", strings.join(", ")),
        Format::Csv => println!("{}", strings.join(",")),
        Format::Json => println!("{}", serde_json::to_string(&s)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs, format: Format) -> Result<ExitCode, Usage> {
    let mut cfg = SuiteConfig::default();
    if let Some(n) = args.n_max {
        cfg = cfg.with_n_max(n);
    }
    if let Some(m) = args.m_max {
        cfg = cfg.with_m_max(m);
    }
    if let Some(order) = args.order {
        cfg = cfg.with_egf_order(order);
    }
    if let (Some(a), Some(b)) = (&args.a, &args.b) {
        cfg = cfg.with_interval(a.clone(), b.clone(), args.d.clone());
    }
    let verdicts = match run_suite(&Verifier::standard(), args.suite, &cfg) {
        Ok(v) => v,
        Err(e @ VerifyError::Precondition(_)) => return Err(Usage(e.to_string())),
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::FAILURE);
        }
    };
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("identity,outcome,params,first_failure,lhs,rhs\n");
    }
    for v in &verdicts {
        match format {
            Format::Plain => out.push_str(&v.to_plain()),
            Format::Json => out.push_str(&serde_json::to_string(v)?),
            Format::Csv => out.push_str(&csv_line(v)),
        }
        out.push('\n');
    }
    print!("{out}");
    Ok(if verdicts.iter().all(Verdict::passed) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn csv_line(v: &Verdict) -> String {
    let outcome = format!("{:?}", v.outcome).to_lowercase();
    let params: Vec<String> = v.params.iter().map(|(k, p)| format!("{k}={p}")).collect();
    let (lhs, rhs) = v.witness.as_ref().map_or((String::new(), String::new()), |w| (w.lhs.clone(), w.rhs.clone()));
    let first = v.first_failure.map_or(String::new(), |i| i.to_string());
    [v.identity.clone(), outcome, params.join(" "), first, csv_field(&lhs), csv_field(&rhs)].join(",")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
