//! Batch-oriented command surface over the indexform library: form and class
//! group queries, local solubility certificates, family enumeration, the
//! statistical reports, and the one-shot `verify-paper` suite.
//!
//! Standard output is machine readable (TSV or JSON); progress goes to
//! standard error. Exit codes: 0 success, 1 verification failure, 2 usage
//! error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use indexform::classgrp::{count_cubic_fields, FormClassGroup};
use indexform::cubicfields::count_cubic_fields_by_enumeration;
use indexform::families::{
    cubic_count_report, enumerate_family, s_class_average_report, mu_bound_report, predicted_density,
    DensityQuantity, FamilyMember, FamilyParams, Sign,
};
use indexform::forms::BinaryForm;
use indexform::localsolve::{
    cubic_locally_represents, default_depth, mod8_unit_check, quartic_locally_represents,
    LocalOutcome, TwoAdicQuarticCatalogue,
};
use indexform::verify::{run_all, run_identities, VerifyConfig};

#[derive(Parser)]
#[command(name = "indexform", version, about = "Exact arithmetic on binary forms, their invariant orders, local solubility of index form equations, and imaginary quadratic class group statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for machine-readable results
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Write the machine-readable output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Worker threads (default: number of processors)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite.
    /// TSV columns: id, status, name, details: one row per criterion
    VerifyPaper(VerifyArgs),
    /// Run the sampled identity suites (seed pair, resolvent, invariant order)
    VerifyIdentities(VerifyArgs),
    /// Local representation of ±1 by the index form of a cubic or quartic.
    /// TSV: outcome, then the certificate record `p k eps x y z v`
    Local(LocalArgs),
    /// Class group of a negative discriminant
    Classgroup(ClassgroupArgs),
    /// Ideal-pair count of cubic fields for a fundamental d < 0 and f | n.
    /// TSV columns: d, f, orbits, pairs, fixed
    Count(CountArgs),
    /// Enumerate cubic fields of one discriminant by reduced binary cubics
    Enumerate(EnumerateArgs),
    /// Stream the members of Σ_n^± with their classification.
    /// TSV columns: D, d, field_disc, h, three_torsion, tag, prime_class_is_cube
    Family(FamilyArgs),
    /// Statistical reports over a family
    Report(ReportArgs),
    /// The fixed 2-adic quartic catalogue: valuations and the mod-8 grid
    Catalogue,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the sampled checks
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count for the sampled identities
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Minimum family size for the statistical averages
    #[arg(long, default_value_t = 10_000)]
    min_members: usize,
    /// Largest prime of the exhaustive curve-point scan
    #[arg(long, default_value_t = 47)]
    prime_bound: u64,
}

#[derive(Args)]
struct LocalArgs {
    /// The form, serialized as deg:a_0,...,a_n (degree 3 or 4)
    #[arg(long)]
    form: String,
    /// The prime p
    #[arg(long)]
    p: u64,
    /// Target ε ∈ {1, -1}
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    eps: i8,
    /// p-adic search depth k (default 6 at p = 2, 3 at odd p)
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct ClassgroupArgs {
    /// Negative discriminant ≡ 0, 1 mod 4
    #[arg(allow_hyphen_values = true)]
    delta: i64,
}

#[derive(Args)]
struct CountArgs {
    /// Negative fundamental discriminant
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Ideal norm f, a squarefree divisor of n = 3·Πp
    #[arg(long)]
    f: u64,
    /// The family primes p_i, comma separated
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Cubic field discriminant (either sign)
    #[arg(allow_hyphen_values = true)]
    discriminant: i64,
}

#[derive(Args)]
struct FamilyArgs {
    /// The family primes p_i (each ≡ 2 mod 3), comma separated
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Family sign: + or -
    #[arg(long)]
    sign: String,
    /// Bound X on |D|; accepts 10^k and plain integers
    #[arg(long = "X")]
    x: String,
}

#[derive(Args)]
struct ReportArgs {
    #[command(subcommand)]
    which: ReportKind,
}

#[derive(Subcommand)]
enum ReportKind {
    /// Average of #Cl_S[3] against 1 + 3^{-|S|}
    SClass {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value = "+")]
        sign: String,
        /// The set S, comma separated (subset of the family primes)
        #[arg(long, value_delimiter = ',')]
        s: Vec<u64>,
        #[arg(long = "X")]
        x: String,
    },
    /// Exact cubic field counts per member against (2∓1)·2^t
    CubicCount {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        sign: String,
        #[arg(long = "X")]
        x: String,
        /// Cap on the members processed
        #[arg(long)]
        max_members: Option<usize>,
    },
    /// Densities of U_n^+ and U_{n,1}^+ against 7/8 − ½·3^{-t}
    MuBound {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long = "X")]
        x: String,
    },
    /// Predicted constants: the exact ratio and the bracketed Euler products
    Density {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        sign: String,
        /// Truncation bound of the Euler products
        #[arg(long, default_value_t = 10_000)]
        truncation: u64,
    },
}

/// Parse an X bound written as a plain integer, `10^k`, or `a*10^k`.
fn parse_x(s: &str) -> Result<i64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<i64>() {
        return Ok(v);
    }
    let (mantissa, exp) = match s.split_once("^") {
        Some((base, exp)) => {
            let (m, b) = match base.split_once('*') {
                Some((m, b)) => (m.trim(), b.trim()),
                None => ("1", base.trim()),
            };
            if b != "10" {
                return Err(format!("unsupported base in {s:?}"));
            }
            (m.to_string(), exp.trim().to_string())
        }
        None => return Err(format!("cannot parse bound {s:?}")),
    };
    let m: i64 = mantissa.parse().map_err(|_| format!("bad mantissa in {s:?}"))?;
    let e: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
    10i64
        .checked_pow(e)
        .and_then(|p| p.checked_mul(m))
        .ok_or_else(|| format!("bound {s:?} overflows"))
}

fn family_params(primes: &[u64], sign: &str, x: &str) -> Result<FamilyParams, String> {
    let sign = Sign::from_str(sign).map_err(|e| e.to_string())?;
    let x = parse_x(x)?;
    FamilyParams::new(primes.to_vec(), sign, x).map_err(|e| e.to_string())
}

fn emit(cli: &Cli, payload: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, payload),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    // `true` means verification-style success where relevant
    match &cli.command {
        Command::VerifyPaper(args) | Command::VerifyIdentities(args) => {
            let cfg = VerifyConfig {
                seed: args.seed,
                samples: args.samples,
                min_members: args.min_members,
                prime_bound: args.prime_bound,
            };
            let identities = matches!(cli.command, Command::VerifyIdentities(_));
            eprintln!(
                "running {} with seed {} and {} samples",
                if identities { "verify-identities" } else { "verify-paper" },
                cfg.seed,
                cfg.samples
            );
            let results = if identities {
                run_identities(&cfg)
            } else {
                run_all(&cfg)
            }
            .map_err(|e| e.to_string())?;
            let all_pass = results.iter().all(|r| r.passed);
            let payload = match cli.format {
                Format::Tsv => {
                    let mut s = String::from("id\tstatus\tname\tdetails\n");
                    for r in &results {
                        writeln!(
                            s,
                            "{}\t{}\t{}\t{}",
                            r.id,
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.details
                        )
                        .unwrap();
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&results).unwrap() + "\n",
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            for r in &results {
                eprintln!("{}", r.line());
            }
            Ok(all_pass)
        }
        Command::Local(args) => {
            let form: BinaryForm = args.form.parse().map_err(|e| format!("{e}"))?;
            let depth = args.depth.unwrap_or_else(|| default_depth(args.p));
            if !matches!(args.eps, 1 | -1) {
                return Err("eps must be 1 or -1".into());
            }
            let outcome = match form.degree() {
                3 => cubic_locally_represents(&form, args.p, args.eps, depth),
                4 => quartic_locally_represents(&form, args.p, args.eps, depth),
                d => return Err(format!("degree {d} is not 3 or 4")),
            }
            .map_err(|e| e.to_string())?;
            let payload = match (&outcome, cli.format) {
                (LocalOutcome::Certified(c), Format::Tsv) => format!("certified\t{}\n", c.serialize()),
                (LocalOutcome::Inconclusive { depth }, Format::Tsv) => {
                    format!("inconclusive (depth-limited)\tdepth={depth}\n")
                }
                (LocalOutcome::ObstructedAtDepth { depth }, Format::Tsv) => {
                    format!("obstructed (depth-limited)\tdepth={depth}\n")
                }
                (_, Format::Json) => {
                    let v = match &outcome {
                        LocalOutcome::Certified(c) => serde_json::json!({
                            "outcome": "certified",
                            "record": c.serialize(),
                        }),
                        LocalOutcome::Inconclusive { depth } => serde_json::json!({
                            "outcome": "inconclusive", "depth": depth,
                        }),
                        LocalOutcome::ObstructedAtDepth { depth } => serde_json::json!({
                            "outcome": "obstructed", "depth": depth,
                        }),
                    };
                    serde_json::to_string_pretty(&v).unwrap() + "\n"
                }
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Classgroup(args) => {
            let g = FormClassGroup::new(args.delta).map_err(|e| e.to_string())?;
            let payload = match cli.format {
                Format::Tsv => g.serialize() + "\n",
                Format::Json => {
                    let (divs, _) = g.structure();
                    serde_json::to_string_pretty(&serde_json::json!({
                        "discriminant": g.discriminant,
                        "fundamental": g.fundamental,
                        "order": g.order(),
                        "elementary_divisors": divs,
                        "forms": g.elements(),
                    }))
                    .unwrap()
                        + "\n"
                }
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Count(args) => {
            let c = count_cubic_fields(args.d, args.f, &args.primes).map_err(|e| e.to_string())?;
            let payload = match cli.format {
                Format::Tsv => format!(
                    "d\tf\torbits\tpairs\tfixed\n{}\t{}\t{}\t{}\t{}\n",
                    args.d, args.f, c.orbits, c.pairs, c.fixed
                ),
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "d": args.d, "f": args.f,
                    "orbits": c.orbits, "pairs": c.pairs, "fixed": c.fixed,
                }))
                .unwrap()
                    + "\n",
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Enumerate(args) => {
            let e = count_cubic_fields_by_enumeration(args.discriminant).map_err(|e| e.to_string())?;
            let payload = match cli.format {
                Format::Tsv => {
                    let mut s = format!("discriminant\t{}\ncount\t{}\n", e.discriminant, e.count());
                    for f in &e.forms {
                        writeln!(s, "form\t{f}").unwrap();
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "discriminant": e.discriminant,
                    "count": e.count(),
                    "forms": e.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                }))
                .unwrap()
                    + "\n",
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Family(args) => {
            let params = family_params(&args.primes, &args.sign, &args.x)?;
            eprintln!("enumerating Σ_{}^{} up to X = {}", params.n(), params.sign, params.x_bound);
            let members = enumerate_family(&params).map_err(|e| e.to_string())?;
            let payload = match cli.format {
                Format::Tsv => {
                    let mut s = String::from(FamilyMember::tsv_header());
                    s.push('\n');
                    for m in &members {
                        s.push_str(&m.tsv_row());
                        s.push('\n');
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&members).unwrap() + "\n",
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Report(report) => {
            let rep = match &report.which {
                ReportKind::SClass { primes, sign, s, x } => {
                    let params = family_params(primes, sign, x)?;
                    s_class_average_report(&params, s).map_err(|e| e.to_string())?
                }
                ReportKind::CubicCount {
                    primes,
                    sign,
                    x,
                    max_members,
                } => {
                    let params = family_params(primes, sign, x)?;
                    cubic_count_report(&params, *max_members).map_err(|e| e.to_string())?
                }
                ReportKind::MuBound { primes, x } => {
                    let params = family_params(primes, "+", x)?;
                    mu_bound_report(&params).map_err(|e| e.to_string())?
                }
                ReportKind::Density {
                    primes,
                    sign,
                    truncation,
                } => {
                    let params = family_params(primes, sign, "0")?;
                    let mut rep = indexform::families::DensityReport {
                        label: "density".into(),
                        primes: params.primes.clone(),
                        sign: params.sign.to_string(),
                        n: params.n(),
                        t: params.t(),
                        x_bound: 0,
                        members: 0,
                        counts: Default::default(),
                        ratios: Default::default(),
                        predicted_exact: Default::default(),
                        predicted_bracket: Default::default(),
                        discrepancy: Default::default(),
                        trend_only: false,
                        notes: vec![],
                    };
                    let ratio = predicted_density(&params, DensityQuantity::FieldCountRatio, *truncation)
                        .map_err(|e| e.to_string())?;
                    rep.predicted_exact
                        .insert("field_count_ratio".into(), ratio.hi);
                    let sigma = predicted_density(&params, DensityQuantity::SigmaCountPerX, *truncation)
                        .map_err(|e| e.to_string())?;
                    rep.predicted_bracket.insert("sigma_count_per_x".into(), sigma);
                    let fields = predicted_density(&params, DensityQuantity::FieldCountPerX, *truncation)
                        .map_err(|e| e.to_string())?;
                    rep.predicted_bracket.insert("field_count_per_x".into(), fields);
                    rep
                }
            };
            let payload = match cli.format {
                Format::Json => rep.to_json() + "\n",
                Format::Tsv => {
                    let mut s = format!("label\t{}\nmembers\t{}\n", rep.label, rep.members);
                    for (k, v) in &rep.counts {
                        writeln!(s, "count:{k}\t{v}").unwrap();
                    }
                    for (k, v) in &rep.ratios {
                        writeln!(s, "ratio:{k}\t{}/{}\t{}", v.num, v.den, v.approx).unwrap();
                    }
                    for (k, v) in &rep.predicted_exact {
                        writeln!(s, "predicted:{k}\t{}/{}\t{}", v.num, v.den, v.approx).unwrap();
                    }
                    for (k, v) in &rep.predicted_bracket {
                        writeln!(
                            s,
                            "bracket:{k}\t[{}/{}, {}/{}]\ttruncation={}",
                            v.lo.num, v.lo.den, v.hi.num, v.hi.den, v.truncation
                        )
                        .unwrap();
                    }
                    for (k, v) in &rep.discrepancy {
                        writeln!(s, "discrepancy:{k}\t{v}").unwrap();
                    }
                    s
                }
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Catalogue => {
            let cat = TwoAdicQuarticCatalogue::new();
            let vals = cat.valuations().map_err(|e| e.to_string())?;
            let rows = mod8_unit_check().map_err(|e| e.to_string())?;
            let payload = match cli.format {
                Format::Tsv => {
                    let mut s = String::new();
                    for (g, v) in cat.quartics.iter().zip(vals.iter()) {
                        writeln!(s, "quartic\t{g}\tv2(Disc)={v}").unwrap();
                    }
                    s.push_str("mod8\tu=1\tu=3\tu=5\tu=7\n");
                    for gi in 0..3 {
                        let mut line = format!("g{gi}");
                        for r in rows.iter().filter(|r| r.quartic_index == gi) {
                            write!(line, "\t{}", if r.attained { "attained" } else { "failed" })
                                .unwrap();
                        }
                        s.push_str(&line);
                        s.push('\n');
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "quartics": cat.quartics.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "valuations": vals,
                    "mod8": rows.iter().map(|r| serde_json::json!({
                        "quartic": r.quartic_index, "unit": r.unit, "attained": r.attained,
                        "points": r.points_scanned,
                    })).collect::<Vec<_>>(),
                }))
                .unwrap()
                    + "\n",
            };
            emit(cli, &payload).map_err(|e| e.to_string())?;
            let failed = rows.iter().filter(|r| !r.attained).count();
            if failed > 0 {
                eprintln!("REPRODUCIBILITY FAILURE: {failed} rows of the mod-8 grid not attained");
            }
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
