use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trinogen::monogenity::{sf_bound_from_env, Trinomial, VerdictOptions};
use trinogen::reference::fixture_rows;
use trinogen::{analyze, scan, AnalyzeOptions, BigInt, Error, ScanConfig, ScanRow, Span};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_IRREDUCIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "trinogen", version)]
#[command(about = "Monogenity certificates for trinomials x^n + a x^m + b")]
struct Cli {
    /// Trial-division bound for square-free tests (default: $TRINOGEN_SF_BOUND or 1000000)
    #[arg(long, global = true)]
    sf_bound: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one trinomial and print a report
    Analyze(AnalyzeArgs),
    /// Run the verdict pipeline over a box of (r, a, b)
    #[command(after_help = SCAN_COLUMNS)]
    Scan(ScanArgs),
    /// Recompute the built-in reference examples and compare
    VerifyPaper {
        /// Print rows as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
}

const SCAN_COLUMNS: &str = "\
CSV columns, in order:
  r, m, a, b            the trinomial x^(2^r) + a x^m + b
  verdict               FieldNotMonogenic | PolyNotMonogenicFieldMonogenic |
                        PolyNotMonogenicFieldConditional | Inconclusive | skipped
  theorem_case          Case1 | Case2 | Case3 when a dyadic congruence case holds (m = 1)
  witness_p             prime carrying the evidence
  witness_d             residue degree d with P_d > N_p(d)
  index_lower_bound_2   2-index lower bound of the root
  runtime_micros        wall time per row, only with --timings
JSONL rows carry the same fields as objects.";

#[derive(Args)]
struct AnalyzeArgs {
    /// Degree n
    #[arg(long, conflicts_with = "r", required_unless_present = "r")]
    n: Option<usize>,
    /// Degree as a power of two, n = 2^r
    #[arg(long)]
    r: Option<u32>,
    /// Middle exponent
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Restrict engine evidence to this prime
    #[arg(long)]
    p: Option<u64>,
    /// JSON output (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Plain-text output with polygon tables
    #[arg(long)]
    text: bool,
    /// Proceed without an irreducibility certificate
    #[arg(long)]
    assume_irreducible: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct ScanArgs {
    /// lo:hi, inclusive
    #[arg(long, allow_hyphen_values = true)]
    r_range: Span,
    #[arg(long, allow_hyphen_values = true)]
    a_range: Span,
    #[arg(long, allow_hyphen_values = true)]
    b_range: Span,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Add a runtime_micros column (makes output timing dependent)
    #[arg(long)]
    timings: bool,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("trinogen: {msg}");
    ExitCode::from(code)
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::InternalContradiction(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn parse_int(name: &str, s: &str) -> Result<BigInt, ExitCode> {
    s.trim()
        .parse()
        .map_err(|_| fail(EXIT_USAGE, format!("--{name} {s:?} is not an integer")))
}

fn run_analyze(args: AnalyzeArgs, sf_bound: u64) -> ExitCode {
    let a = match parse_int("a", &args.a) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let b = match parse_int("b", &args.b) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let t = match (args.n, args.r) {
        (Some(n), _) => Trinomial::new(n, args.m, a, b),
        (None, Some(r)) => Trinomial::two_power(r, args.m, a, b),
        (None, None) => unreachable!("clap requires --n or --r"),
    };
    let t = match t {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let opts = AnalyzeOptions {
        prime: args.p,
        verdict: VerdictOptions {
            sf_bound,
            assume_irreducible: args.assume_irreducible,
        },
    };
    let report = match analyze(&t, &opts) {
        Ok(r) => r,
        Err(e) => return fail(error_code(&e), e),
    };
    let out = if args.text {
        report.to_text()
    } else {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    };
    if let Err(e) = io::stdout().write_all(out.as_bytes()) {
        return fail(EXIT_USAGE, e);
    }
    if report.irreducibility.route.is_none() && !args.assume_irreducible {
        return fail(
            EXIT_NOT_IRREDUCIBLE,
            "irreducibility not certified; rerun with --assume-irreducible to proceed",
        );
    }
    ExitCode::SUCCESS
}

fn write_rows(rows: &[ScanRow], format: Format, sink: Box<dyn Write>) -> io::Result<()> {
    let mut w = BufWriter::new(sink);
    match format {
        Format::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut w, row)?;
                w.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            for row in rows {
                csv.serialize(row)?;
            }
            csv.flush()?;
        }
    }
    w.flush()
}

fn run_scan(args: ScanArgs, sf_bound: u64) -> ExitCode {
    let cfg = ScanConfig {
        r: args.r_range,
        a: args.a_range,
        b: args.b_range,
        m: args.m,
        jobs: args.jobs,
        timings: args.timings,
        verdict: VerdictOptions {
            sf_bound,
            assume_irreducible: false,
        },
    };
    if let Err(e) = trinogen::scan::tuples(&cfg) {
        return fail(EXIT_USAGE, e);
    }
    // open the output before doing any work so a bad path fails fast
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", path.display())),
        },
        None => Box::new(io::stdout()),
    };
    let rows = match scan(&cfg) {
        Ok(rows) => rows,
        Err(e) => return fail(error_code(&e), e),
    };
    match write_rows(&rows, args.format, sink) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn run_verify(json: bool, sf_bound: u64) -> ExitCode {
    let opts = VerdictOptions {
        sf_bound,
        assume_irreducible: false,
    };
    let rows = match fixture_rows(&opts) {
        Ok(rows) => rows,
        Err(e) => return fail(EXIT_VERIFY_FAILED, e),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("rows serialize")
        );
    } else {
        for r in &rows {
            println!(
                "[{}] {:<18} {}: {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.polynomial,
                r.check
            );
            println!("       expected: {}", r.expected);
            println!("       computed: {}", r.computed);
        }
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let summary = format!("{} of {} rows pass", rows.len() - failed, rows.len());
    if json {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    if failed > 0 {
        ExitCode::from(EXIT_VERIFY_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sf_bound = cli.sf_bound.unwrap_or_else(sf_bound_from_env);
    match cli.command {
        Command::Analyze(args) => run_analyze(args, sf_bound),
        Command::Scan(args) => run_scan(args, sf_bound),
        Command::VerifyPaper { json } => run_verify(json, sf_bound),
    }
}
