use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bockstein::catalog::{self, CatalogEntry};
use bockstein::dimension::{dim_abelian, dim_nilpotent_le1, validate_profile, DimensionProfile};
use bockstein::io::{parse_group, parse_profile};
use bockstein::nilpotent::{sigma_nilpotent, NilpotentGroupDesc};
use bockstein::verify::{self, SuiteResult, DEFAULT_SEED, DEFAULT_TRIALS, SUITES};
use bockstein::Error;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Bockstein bases of nilpotent groups and the dimension calculus over them.
#[derive(Parser)]
#[command(name = "bock", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Bockstein basis of a group.
    Sigma {
        /// Group file (JSON)
        file: Option<PathBuf>,
        /// Use a catalog entry instead of a file
        #[arg(long, value_name = "NAME", conflicts_with = "file")]
        catalog: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a dimension profile on a group.
    Dim {
        profile: PathBuf,
        group: PathBuf,
        /// Decide whether the dimension is at most 1 (any nilpotent group)
        #[arg(long)]
        le1: bool,
    },
    /// Check a dimension profile against rules R0 to R4.
    ValidateProfile { profile: PathBuf },
    /// Run verification suites.
    Verify {
        /// Run only this suite
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries and templates.
    Catalog,
}

/// A failed command: exit 1 for unusable input, 2 for a semantic rejection.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }

    fn rejected(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::UnwitnessedTower { .. }
            | Error::NotNilpotent { .. }
            | Error::NotFinitelyGenerated(_)
            | Error::NotAbelian
            | Error::NotNormal
            | Error::PrimaryPartNotSubgroup(_) => Failure::rejected(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<NilpotentGroupDesc, Failure> {
    Ok(parse_group(&read(path)?)?)
}

fn load_valid_profile(path: &Path) -> Result<DimensionProfile, Failure> {
    let d = parse_profile(&read(path)?)?;
    let violations = validate_profile(&d);
    if violations.is_empty() {
        Ok(d)
    } else {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Failure::rejected(format!("invalid profile:\n{}", lines.join("\n"))))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn sigma(file: Option<PathBuf>, name: Option<String>, json: bool) -> Result<(), Failure> {
    let g = match (file, name) {
        (Some(path), None) => load_group(&path)?,
        (None, Some(name)) => catalog::build(&name)?.value,
        _ => return Err(Failure::usage("give a group file or --catalog NAME")),
    };
    let basis = sigma_nilpotent(&g)?;
    if json {
        println!("{}", to_json(&basis));
    } else {
        println!("{basis}");
    }
    Ok(())
}

fn dim(profile: &Path, group: &Path, le1: bool) -> Result<(), Failure> {
    let d = load_valid_profile(profile)?;
    let g = load_group(group)?;
    if le1 {
        println!("{}", dim_nilpotent_le1(&d, &g)?);
        return Ok(());
    }
    match g {
        NilpotentGroupDesc::Abelian(a) => {
            println!("{}", dim_abelian(&d, &a));
            Ok(())
        }
        _ => Err(Failure::usage("dim needs an Abelian group; use --le1 for nilpotent groups")),
    }
}

fn validate(profile: &Path) -> Result<(), Failure> {
    let d = parse_profile(&read(profile)?)?;
    let violations = validate_profile(&d);
    if violations.is_empty() {
        println!("valid");
        return Ok(());
    }
    for v in &violations {
        println!("{v}");
    }
    Err(Failure { code: 2, message: String::new() })
}

fn run_verify(suite: Option<String>, trials: usize, seed: u64, json: bool) -> Result<(), Failure> {
    let results: Vec<SuiteResult> = match suite {
        Some(name) => vec![verify::run_suite(&name, trials, seed).map_err(|e| {
            Failure::usage(format!("{e}; available suites: {}", SUITES.join(", ")))
        })?],
        None => verify::run_all(trials, seed),
    };
    if json {
        match results.as_slice() {
            [one] => println!("{}", to_json(one)),
            all => println!("{}", to_json(&all)),
        }
    } else {
        for r in &results {
            print!("{r}");
        }
    }
    if results.iter().all(SuiteResult::passed) {
        Ok(())
    } else {
        Err(Failure { code: 2, message: String::new() })
    }
}

fn describe(e: &CatalogEntry) -> String {
    let m = &e.metadata;
    let kind = match m.order {
        Some(n) => format!("order {n}"),
        None => "tower".to_string(),
    };
    let class = match m.class {
        Some(c) => format!("class {c}"),
        None => "not nilpotent".to_string(),
    };
    format!("{} ({kind}, {class}, ab {})", e.name, m.ab)
}

fn list_catalog() {
    for e in catalog::standard() {
        println!("{}", describe(e));
    }
    for t in catalog::TEMPLATES {
        println!("{t} (template)");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Sigma { file, catalog, json } => sigma(file, catalog, json),
        Command::Dim { profile, group, le1 } => dim(&profile, &group, le1),
        Command::ValidateProfile { profile } => validate(&profile),
        Command::Verify { suite, trials, seed, json } => run_verify(suite, trials, seed, json),
        Command::Catalog => {
            list_catalog();
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("bock: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
