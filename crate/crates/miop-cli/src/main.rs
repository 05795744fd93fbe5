//! Command-line front end for the multi-indexed polynomial library.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use miop::method::Method;
use miop::params::{spec_from_json, spec_to_json};
use miop::query::{compute, IndexSet, PolyResult};
use miop::verify::{self, SuiteConfig, VerifyReport};
use miop::{FamilyId, FamilySpec, MiopError};
use serde_json::json;

#[derive(Parser)]
#[command(name = "miop", version, about = "Exact multi-indexed orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct FamilyArgs {
    /// M, lqL, lqJ, R, qR, W or AW.
    #[arg(long)]
    family: String,
    /// Parameters as a JSON object of rational strings; defaults to the shipped set.
    #[arg(long)]
    params: Option<String>,
    /// Read the parameter object from a file.
    #[arg(long, conflicts_with = "params")]
    params_file: Option<PathBuf>,
    /// Derive the AW square-root witnesses when they are rational.
    #[arg(long)]
    derive_witnesses: bool,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Describe a family: parameters, lattice, energies and coordinates.
    FamilyInfo {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classical polynomial `P_n`.
    Poly {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Denominator polynomial `Xi_D`.
    Xi {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Index set, `1,2` or `1I,2II`.
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value = "original")]
        method: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multi-indexed polynomial `P_{D,n}`.
    Miop {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "original")]
        method: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite.
    Verify {
        /// lemma, identity, equivalence, orthogonality or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Suite configuration JSON; defaults to the built-in configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Keep per-case wall times in JSON output.
        #[arg(long)]
        timing: bool,
        /// Print the built-in configuration and exit.
        #[arg(long)]
        dump_config: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check one determinant lemma instance.
    Lemma {
        #[arg(long, value_parser = ["rdqm", "idqm"])]
        kind: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Failure with an exit code.
struct Fail {
    code: u8,
    err: anyhow::Error,
}

impl From<MiopError> for Fail {
    fn from(e: MiopError) -> Self {
        let code = match e {
            MiopError::Inadmissible(_) => 3,
            MiopError::Parse(_) | MiopError::Config(_) | MiopError::MissingWitness(_) | MiopError::Unsupported(_) => 2,
            _ => 1,
        };
        let hint = match e {
            MiopError::MissingWitness(_) => {
                "\nhint: add \"rho\": [\"r1\", \"r2\"] with r1^2 = a1 a2 / q and r2^2 = a3 a4 / q, or pass --derive-witnesses"
            }
            MiopError::Parse(_) => "\nhint: rationals are strings such as \"3\", \"-1/2\"",
            _ => "",
        };
        Fail { code, err: anyhow!("{e}{hint}") }
    }
}

impl From<anyhow::Error> for Fail {
    fn from(err: anyhow::Error) -> Self {
        Fail { code: 2, err }
    }
}

type Run<T> = std::result::Result<T, Fail>;

fn default_spec(id: FamilyId) -> FamilySpec {
    use miop::presets::*;
    match id {
        FamilyId::M => meixner(),
        FamilyId::LqL => little_q_laguerre(),
        FamilyId::LqJ => little_q_jacobi(),
        FamilyId::R => racah(),
        FamilyId::QR => q_racah(),
        FamilyId::W => wilson_generic(),
        FamilyId::AW => askey_wilson_split(),
    }
}

fn family(a: &FamilyArgs) -> Run<FamilySpec> {
    let id = FamilyId::parse(&a.family)?;
    let text = match (&a.params, &a.params_file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => return Ok(default_spec(id)),
    };
    let v: serde_json::Value = serde_json::from_str(&text).context("--params is not valid JSON")?;
    Ok(spec_from_json(id, &v, a.derive_witnesses)?)
}

fn emit(out: &OutArgs, text: String) -> Run<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn poly_text(r: &PolyResult, f: Format) -> Run<String> {
    Ok(match f {
        Format::Json => serde_json::to_string_pretty(r).map_err(anyhow::Error::from)? + "\n",
        Format::Csv => {
            let mut s = String::from("power,coefficient\n");
            for (k, c) in sorted_terms(r) {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "{} {} D={} n={} method={}\n",
                r.family,
                r.params,
                r.d,
                r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                r.method
            );
            let terms: Vec<String> = sorted_terms(r).into_iter().map(|(k, c)| format!("({c}) eta^{k}")).collect();
            s.push_str(&if terms.is_empty() { "0".to_string() } else { terms.join(" + ") });
            s.push('\n');
            s
        }
    })
}

fn sorted_terms(r: &PolyResult) -> Vec<(usize, String)> {
    let mut v: Vec<(usize, String)> = r.eta_poly.iter().map(|(k, c)| (k.parse().unwrap_or(0), c.clone())).collect();
    v.sort();
    v
}

fn report_text(r: &VerifyReport, f: Format, timing: bool) -> Run<String> {
    Ok(match f {
        Format::Json => r.to_json(timing)? + "\n",
        Format::Csv => r.to_csv(),
        Format::Pretty => r.to_pretty(),
    })
}

fn finish_report(r: &VerifyReport, out: &OutArgs, timing: bool) -> Run<ExitCode> {
    emit(out, report_text(r, out.format, timing)?)?;
    let s = &r.summary;
    eprintln!("{}: {} cases, {} passed, {} failed, {} skipped", r.suite, s.total, s.passed, s.failed, s.skipped);
    Ok(if r.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn family_info(spec: &FamilySpec) -> serde_json::Value {
    let energies: Vec<String> = (0..=4).map(|n| spec.energy(n).to_string()).collect();
    json!({
        "family": spec.id.code(),
        "params": spec_to_json(spec),
        "description": spec.describe(),
        "kind": if spec.id.is_idqm() { "idQM" } else { "rdQM" },
        "lattice_size": spec.size,
        "kappa": spec.kappa().to_string(),
        "energies": energies,
        "eta": spec.eta().to_string(),
        "phi": spec.phi().to_string(),
        "methods": if spec.id.is_idqm() { Method::ALL.to_vec() } else { miop::rdqm::methods().to_vec() }
            .iter().map(|m| m.code()).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Run<ExitCode> {
    match cli.verb {
        Verb::FamilyInfo { fam, out } => {
            let spec = family(&fam)?;
            let info = family_info(&spec);
            let text = match out.format {
                Format::Json | Format::Csv => serde_json::to_string_pretty(&info).map_err(anyhow::Error::from)? + "\n",
                Format::Pretty => {
                    let obj = info.as_object().expect("object");
                    obj.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
                }
            };
            emit(&out, text)?;
        }
        Verb::Poly { fam, n, out } => {
            let spec = family(&fam)?;
            let d = IndexSet::parse("", spec.id.is_idqm())?;
            let (_, r) = compute(&spec, &d, Some(n), Method::Original)?;
            emit(&out, poly_text(&r, out.format)?)?;
        }
        Verb::Xi { fam, d, method, out } => {
            let spec = family(&fam)?;
            let d = IndexSet::parse(&d, spec.id.is_idqm())?;
            let (_, r) = compute(&spec, &d, None, Method::parse(&method)?)?;
            emit(&out, poly_text(&r, out.format)?)?;
        }
        Verb::Miop { fam, d, n, method, out } => {
            let spec = family(&fam)?;
            let d = IndexSet::parse(&d, spec.id.is_idqm())?;
            let (_, r) = compute(&spec, &d, Some(n), Method::parse(&method)?)?;
            emit(&out, poly_text(&r, out.format)?)?;
        }
        Verb::Verify { suite, config, timing, dump_config, out } => {
            if dump_config {
                emit(&out, SuiteConfig::default().to_json() + "\n")?;
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = match config {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    SuiteConfig::from_json(&text)?
                }
                None => SuiteConfig::default(),
            };
            let report = verify::run_suite(&suite, &cfg)?;
            return finish_report(&report, &out, timing || cfg.record_timing);
        }
        Verb::Lemma { kind, n, seed, out } => {
            let report = match kind.as_str() {
                "rdqm" => verify::check_casoratian_lemma_rdqm(n as usize, seed),
                _ => verify::check_casoratian_lemma_idqm(n as usize, seed),
            };
            return finish_report(&report, &out, false);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
