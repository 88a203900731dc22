use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use xprod::algebra::validate_algebra;
use xprod::crossed::validate_crossed;
use xprod::harness::{self, CheckId, Context, Report, Status, DEFAULT_SEED};
use xprod::homology::{gldim, wdim, DEFAULT_CAP};
use xprod::hopf::validate_hopf;
use xprod::io::{parse_document, read_algebra, read_json, read_system, write_json, AlgebraJson, Document, SystemJson};
use xprod::{CrossedSystem, Error};

#[derive(Parser)]
#[command(name = "xprod", version, about = "Exact homological computations for crossed products R #σ H")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of an algebra, Hopf algebra, crossed system or module file.
    Validate { file: PathBuf },
    /// Left and right global dimension and weak dimension of an algebra.
    Gldim {
        algebra: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Crossed product construction.
    Crossed {
        #[command(subcommand)]
        command: CrossedCommand,
    },
    /// Run one check on a system file or a catalog entry (`catalog:<name>`).
    Verify {
        #[arg(long)]
        check: CheckId,
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The bundled catalog of systems.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CrossedCommand {
    /// Build R #σ H and print (or write) it as an algebra file.
    Build {
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Run every check on every entry matching the filter (a name or a tag).
    Run {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Names, tags and descriptions of the entries.
    List,
    /// Write an entry as a system file.
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status: a check failed (1) or the input could not be used (2).
enum Failure {
    Check,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &Value) {
    // a closed pipe (`xprod ... | head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(write_json(p, value)?),
        None => {
            print_json(value);
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Gldim { algebra, cap } => {
            let a = Arc::new(read_algebra(&algebra)?);
            let op = Arc::new(a.opposite());
            let dims = [("left", gldim(&a, cap)), ("right", gldim(&op, cap)), ("weak", wdim(&a, cap))];
            let mut out = json!({ "cap": cap });
            let mut failed = false;
            for (name, d) in dims {
                match d {
                    Ok(d) => out[name] = json!(d),
                    Err(e @ Error::InternalInconsistency(_)) => {
                        failed = true;
                        out[name] = json!({ "error": e.to_string() });
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            print_json(&out);
            if failed {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
        Command::Crossed { command: CrossedCommand::Build { system, out } } => {
            let sys = read_system(&system)?;
            let value = serde_json::to_value(AlgebraJson::from_algebra(sys.product())).map_err(Error::from)?;
            emit(&value, out.as_deref())
        }
        Command::Verify { check, system, cap, seed, json } => {
            let (name, sys, partner, expected) = load_system(&system)?;
            let ctx = Context::new(&name, &system, &sys, cap, seed).with_partner(partner);
            let report = Report::new(cap, seed, harness::run_checks(&ctx, &[check], &expected));
            finish(&report, json.as_deref())
        }
        Command::Catalog { command } => match command {
            CatalogCommand::Run { filter, cap, seed, json } => {
                let report = harness::run_catalog(filter.as_deref(), cap, seed)?;
                finish(&report, json.as_deref())
            }
            CatalogCommand::List => {
                for e in harness::catalog()? {
                    println!("{:28} [{}] {}", e.name, e.tags.join(", "), e.description);
                }
                Ok(())
            }
            CatalogCommand::Export { name, out } => {
                let entry = harness::catalog_entry(&name)?
                    .ok_or_else(|| Failure::Input(format!("no catalog entry named '{name}'")))?;
                let value = serde_json::to_value(SystemJson::from_system(&entry.system)).map_err(Error::from)?;
                emit(&value, out.as_deref())
            }
        },
    }
}

type Loaded = (String, CrossedSystem, Option<Arc<xprod::Algebra>>, Vec<(CheckId, Status)>);

fn load_system(source: &str) -> Result<Loaded, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let e = harness::catalog_entry(name)?.ok_or_else(|| Failure::Input(format!("no catalog entry named '{name}'")))?;
        return Ok((e.name, e.system, e.morita_partner, e.expected));
    }
    let sys = read_system(Path::new(source))?;
    Ok((source.to_string(), sys, None, Vec::new()))
}

fn finish(report: &Report, json: Option<&Path>) -> Result<(), Failure> {
    for r in &report.records {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDETERMINATE",
            Status::SkippedHypothesis => "SKIPPED",
        };
        println!("{status:14} {:28} {}", r.entry, r.check);
        if let Some(cmd) = &r.reproduce {
            println!("               reproduce: {cmd}");
        }
    }
    let s = &report.summary;
    println!(
        "pass {} fail {} indeterminate {} skipped {} unexpected {}",
        s.pass, s.fail, s.indeterminate, s.skipped_hypothesis, s.unexpected
    );
    if let Some(p) = json {
        write_json(p, report)?;
    }
    if report.has_failures() {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn validate(file: &Path) -> Result<(), Failure> {
    let value = read_json(file)?;
    let doc = match parse_document(value) {
        Ok(d) => d,
        // a system whose data fail the crossed product axioms is a failed validation
        Err(e @ (Error::NotMeasuring(_)
        | Error::NotNormalCocycle(_)
        | Error::NotInvertibleCocycle(_)
        | Error::NotAssociative { .. }
        | Error::MalformedHopf(_))) => {
            print_json(&json!({ "valid": false, "error": e.to_string() }));
            return Err(Failure::Check);
        }
        Err(e) => return Err(e.into()),
    };
    let (kind, result) = match &doc {
        Document::Algebra(a) => ("algebra", validate_algebra(a)),
        Document::Hopf(h) => ("hopf", validate_hopf(h)),
        Document::System(s) => ("system", validate_crossed(s)),
        Document::Module(m) => ("module", Ok(xprod::Certificate::new([format!("module over a {}-dimensional algebra", m.algebra().dim())]))),
    };
    match result {
        Ok(cert) => {
            print_json(&json!({ "kind": kind, "valid": true, "checked": cert.checked }));
            Ok(())
        }
        Err(v) => {
            print_json(&json!({ "kind": kind, "valid": false, "violation": v }));
            Err(Failure::Check)
        }
    }
}
