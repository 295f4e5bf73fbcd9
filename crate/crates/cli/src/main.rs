//! Command-line workbench for the rational quartic reciprocity laws.
//!
//! Exit codes: 0 all evaluated laws hold, 1 at least one counterexample,
//! 2 invalid arguments or failed preconditions, 3 internal assertion.

use clap::{Parser, Subcommand};
use quartic_recip::arith::quartic_symbol;
use quartic_recip::error::Error;
use quartic_recip::harness::{
    campaign_identities, campaign_m2, campaign_pairs, campaign_whf, run_with_jobs,
    serialize_report, CampaignReport, ReportFormat,
};
use quartic_recip::laws::{
    eval_burde_eq7, eval_eq1, eval_froehlich_eq9, eval_gosset_eq8, eval_m2_eq3, eval_whf_variant,
    splitting_chain, LawReport, Variant,
};
use quartic_recip::quadfield::symbol_surd;
use quartic_recip::represent::{convert_convention, whf_triple, Convention};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const INPUT_BOUND: u64 = 1 << 31;

#[derive(Parser)]
#[command(
    name = "quartic-recip",
    version,
    about = "Evaluate rational quartic reciprocity laws and verify them over prime ranges"
)]
struct CliConfig {
    #[command(subcommand)]
    command: Command,

    /// Output format: text, json or csv (csv for campaigns only)
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Worker threads for campaign evaluation
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the reciprocity triple (A, B, C) for a prime m = 1 mod 4
    Triple {
        #[arg(long)]
        m: u64,
        /// Normalization convention: eq1, eq4 or eq5
        #[arg(long, default_value = "eq1")]
        convention: String,
    },
    /// Evaluate the rational symbol ((x + y*sqrt(m))/p)
    Symbol {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
    },
    /// Evaluate the rational quartic residue symbol (p/m)4
    Quartic {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        m: u64,
    },
    /// Evaluate one law instance and print its report
    Law {
        /// One of eq1, eq3, eq4, eq5, eq6, eq7, eq8, eq9
        #[arg(long)]
        id: String,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Print splitting data (f, g) and the equivalence-chain verdict
    Split {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
    },
    /// Run a sweep campaign
    Campaign {
        /// One of whf, pairs, m2, identities
        #[arg(long)]
        name: String,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        /// 64-bit seed for the identities campaign
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated variant list for whf (default all of eq1,eq4,eq5,eq6)
        #[arg(long)]
        variants: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

enum CliError {
    Usage(String),
    Eval(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Eval(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn exit_code_for_error(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Eval(err) if err.is_internal() => 3,
        CliError::Eval(_) => 2,
    }
}

fn exit_code_for_campaign(report: &CampaignReport) -> u8 {
    if report.has_counterexamples() {
        1
    } else {
        0
    }
}

fn exit_code_for_report(report: &LawReport) -> u8 {
    if report.holds {
        0
    } else {
        1
    }
}

fn parse_format(s: &str) -> CliResult<OutputFormat> {
    match s.to_ascii_lowercase().as_str() {
        "text" => Ok(OutputFormat::Text),
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(usage(format!("unsupported format: {other}"))),
    }
}

fn check_bound(name: &str, value: u64) -> CliResult<()> {
    if value > INPUT_BOUND {
        return Err(usage(format!("{name} = {value} exceeds the 2^31 input bound")));
    }
    Ok(())
}

fn check_bound_i(name: &str, value: i64) -> CliResult<()> {
    check_bound(name, value.unsigned_abs())
}

fn report_line(report: &LawReport, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string(report)
            .map_err(|e| CliError::Eval(Error::InternalAssertion(e.to_string())))?),
        OutputFormat::Text => Ok(report.to_string()),
        OutputFormat::Csv => Err(usage("csv output is only available for campaigns")),
    }
}

fn parse_variants(list: Option<&str>) -> CliResult<Vec<Variant>> {
    let all = vec![Variant::Eq1, Variant::Eq4, Variant::Eq5, Variant::Eq6];
    match list {
        None => Ok(all),
        Some(s) if s.eq_ignore_ascii_case("all") => Ok(all),
        Some(s) => s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<Variant>()
                    .map_err(|_| usage(format!("unknown variant: {part}")))
            })
            .collect(),
    }
}

fn run_command(cfg: &CliConfig, out: &mut dyn Write) -> CliResult<u8> {
    let format = parse_format(&cfg.format)?;
    if cfg.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    match &cfg.command {
        Command::Triple { m, convention } => {
            check_bound("m", *m)?;
            let target: Convention = convention
                .parse()
                .map_err(|_| usage(format!("unknown convention: {convention}")))?;
            let base = whf_triple(*m)?;
            let t = if target == Convention::Eq1 {
                base
            } else {
                convert_convention(&base, target)?
            };
            match format {
                OutputFormat::Json => {
                    let obj = serde_json::json!({
                        "m": t.m, "A": t.a, "B": t.b, "C": t.c,
                        "convention": t.convention.name(),
                    });
                    writeln!(out, "{obj}").map_err(Error::from)?;
                }
                OutputFormat::Text => writeln!(out, "{t}").map_err(Error::from)?,
                OutputFormat::Csv => return Err(usage("csv output is only available for campaigns")),
            }
            Ok(0)
        }
        Command::Symbol { x, y, m, p } => {
            check_bound_i("x", *x)?;
            check_bound_i("y", *y)?;
            check_bound("m", *m)?;
            check_bound("p", *p)?;
            let value = symbol_surd(*x, *y, *m, *p)?;
            match format {
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::json!({ "value": value.as_i8() }))
                        .map_err(Error::from)?
                }
                OutputFormat::Text => writeln!(out, "{value}").map_err(Error::from)?,
                OutputFormat::Csv => return Err(usage("csv output is only available for campaigns")),
            }
            Ok(0)
        }
        Command::Quartic { p, m } => {
            check_bound_i("p", *p)?;
            check_bound("m", *m)?;
            let value = quartic_symbol(*p, *m)?;
            match format {
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::json!({ "value": value.as_i8() }))
                        .map_err(Error::from)?
                }
                OutputFormat::Text => writeln!(out, "{value}").map_err(Error::from)?,
                OutputFormat::Csv => return Err(usage("csv output is only available for campaigns")),
            }
            Ok(0)
        }
        Command::Law { id, m, p, q } => {
            let need = |name: &str, v: &Option<u64>| -> CliResult<u64> {
                let v = v.ok_or_else(|| usage(format!("law {id} requires --{name}")))?;
                check_bound(name, v)?;
                Ok(v)
            };
            let report = match id.to_ascii_lowercase().as_str() {
                "eq1" => eval_eq1(need("m", m)?, need("p", p)?)?,
                "eq3" => eval_m2_eq3(need("p", p)?)?,
                "eq4" => eval_whf_variant(need("m", m)?, need("p", p)?, Variant::Eq4)?,
                "eq5" => eval_whf_variant(need("m", m)?, need("p", p)?, Variant::Eq5)?,
                "eq6" => eval_whf_variant(need("m", m)?, need("p", p)?, Variant::Eq6)?,
                "eq7" => eval_burde_eq7(need("p", p)?, need("q", q)?)?,
                "eq8" => eval_gosset_eq8(need("p", p)?, need("q", q)?)?,
                "eq9" => eval_froehlich_eq9(need("p", p)?, need("q", q)?)?,
                other => return Err(usage(format!("unknown law id: {other}"))),
            };
            writeln!(out, "{}", report_line(&report, format)?).map_err(Error::from)?;
            Ok(exit_code_for_report(&report))
        }
        Command::Split { m, p } => {
            check_bound("m", *m)?;
            check_bound("p", *p)?;
            let (data, report) = splitting_chain(*m, *p)?;
            match format {
                OutputFormat::Text => {
                    writeln!(out, "f={} g={}", data.f, data.g).map_err(Error::from)?;
                    writeln!(out, "{report}").map_err(Error::from)?;
                }
                _ => writeln!(out, "{}", report_line(&report, format)?).map_err(Error::from)?,
            }
            Ok(exit_code_for_report(&report))
        }
        Command::Campaign {
            name,
            m_max,
            p_max,
            bound,
            samples,
            seed,
            variants,
        } => {
            let need = |flag: &str, v: &Option<u64>| -> CliResult<u64> {
                let v = v.ok_or_else(|| usage(format!("campaign {name} requires --{flag}")))?;
                check_bound(flag, v)?;
                Ok(v)
            };
            let report = match name.to_ascii_lowercase().as_str() {
                "whf" => {
                    let vs = parse_variants(variants.as_deref())?;
                    let (mm, pm) = (need("m-max", m_max)?, need("p-max", p_max)?);
                    run_with_jobs(cfg.jobs, || campaign_whf(mm, pm, &vs))
                }
                "pairs" => {
                    let b = need("bound", bound)?;
                    run_with_jobs(cfg.jobs, || campaign_pairs(b))
                }
                "m2" => {
                    let pm = need("p-max", p_max)?;
                    run_with_jobs(cfg.jobs, || campaign_m2(pm))
                }
                "identities" => {
                    let n = need("samples", samples)?;
                    let s = *seed;
                    run_with_jobs(cfg.jobs, || campaign_identities(n, s))
                }
                other => return Err(usage(format!("unknown campaign: {other}"))),
            };
            let report_format = match format {
                OutputFormat::Json => ReportFormat::Jsonl,
                OutputFormat::Csv => ReportFormat::Csv,
                OutputFormat::Text => ReportFormat::Text,
            };
            serialize_report(&report, report_format, out)?;
            Ok(exit_code_for_campaign(&report))
        }
    }
}

fn run(argv: Vec<String>) -> u8 {
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            // clap renders --help/--version through the error path too
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return 2;
            }
        },
        None => Box::new(std::io::stdout()),
    };
    match run_command(&cfg, &mut sink) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Eval(err) => eprintln!("error: {err}"),
            }
            exit_code_for_error(&e)
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args().collect()))
}
