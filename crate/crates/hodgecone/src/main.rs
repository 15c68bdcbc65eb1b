use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hodgecone::catalog::{self, CatalogEntry};
use hodgecone::determinantal::{sweep_cases, DeterminantalCase, Family};
use hodgecone::report::{build_cone_report, build_determinantal_row, render_cone_text, render_determinantal_text};
use hodgecone::verify::{run_suites, Suite};
use hodgecone::{ConeSetup, ExtendedLevel};

const INPUT_ERROR: u8 = 1;
const CHECK_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(name = "hodgecone", version, about = "Hodge-theoretic invariants of cone singularities and determinantal varieties")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of the cone (or bundle contraction) over a diamond
    Cone(ConeArgs),
    /// Local cohomology of determinantal varieties
    Determinantal(DetArgs),
    /// Inspect the builtin diamonds
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Run the property suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConeArgs {
    /// Builtin diamond name
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    catalog: Option<String>,
    /// Diamond JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Rank e of the contracted bundle (1 for the affine cone)
    #[arg(long, conflicts_with = "delta")]
    rank: Option<u32>,
    /// delta = e - 1
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long, default_value_t = 1)]
    embed_codim: u32,
    /// Lower bound for HRH of the base; defaults to the diamond's own bound
    #[arg(long)]
    hrh_base: Option<ExtendedLevel>,
}

#[derive(Args)]
struct DetArgs {
    /// generic | odd-skew | even-skew | symmetric
    family: Option<String>,
    /// generic: M N P; other families: N P
    nums: Vec<u32>,
    /// Run every case up to the bounds instead
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 6)]
    max_generic: u32,
    #[arg(long, default_value_t = 9)]
    max_skew: u32,
    #[arg(long, default_value_t = 6)]
    max_symmetric: u32,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every suite (the default when no --suite is given)
    #[arg(long)]
    all: bool,
    #[arg(long)]
    suite: Vec<Suite>,
    /// Extra diamond files to include in the sweeps
    #[arg(long)]
    fixture: Vec<PathBuf>,
}

struct Failure(u8, String);

fn input(msg: impl ToString) -> Failure {
    Failure(INPUT_ERROR, msg.to_string())
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn cone(format: Format, a: ConeArgs) -> Result<(), Failure> {
    let entry: CatalogEntry = match (&a.catalog, &a.file) {
        (Some(name), _) => catalog::lookup(name).map_err(input)?,
        (None, Some(path)) => catalog::load_diamond(path).map_err(input)?,
        (None, None) => return Err(input("one of --catalog or --file is required")),
    };
    let delta = match (a.rank, a.delta) {
        (Some(0), _) => return Err(input("--rank must be at least 1")),
        (Some(e), _) => e - 1,
        (None, Some(d)) => d,
        (None, None) => 0,
    };
    let base = a.hrh_base.unwrap_or(entry.hrh_bound);
    let setup = ConeSetup::new(entry.diamond.dim(), delta, a.embed_codim, base).map_err(input)?;
    let report = build_cone_report(&entry, setup).map_err(input)?;
    emit(format, &report, || render_cone_text(&report));
    if report.all_agree() {
        Ok(())
    } else {
        Err(Failure(CHECK_FAILURE, "cross-check disagreement".into()))
    }
}

fn parse_case(family: &str, nums: &[u32]) -> Result<DeterminantalCase, Failure> {
    let (fam, p) = match (family, nums) {
        ("generic", &[m, n, p]) => (Family::Generic { m, n }, p),
        ("odd-skew", &[n, p]) => (Family::OddSkew { n }, p),
        ("even-skew", &[n, p]) => (Family::EvenSkew { n }, p),
        ("skew", &[n, p]) if n % 2 == 1 => (Family::OddSkew { n }, p),
        ("skew", &[n, p]) => (Family::EvenSkew { n }, p),
        ("symmetric", &[n, p]) => (Family::Symmetric { n }, p),
        ("generic" | "odd-skew" | "even-skew" | "skew" | "symmetric", _) => {
            return Err(input(format!("wrong number of arguments for {family}")))
        }
        _ => return Err(input(format!("unknown family '{family}'"))),
    };
    DeterminantalCase::new(fam, p).map_err(input)
}

fn determinantal(format: Format, a: DetArgs) -> Result<(), Failure> {
    let cases = if a.sweep {
        sweep_cases(a.max_generic, a.max_skew, a.max_symmetric)
    } else {
        let family = a.family.as_deref().ok_or_else(|| input("give a family and sizes, or --sweep"))?;
        vec![parse_case(family, &a.nums)?]
    };
    let mut rows = Vec::new();
    for c in cases {
        rows.push(build_determinantal_row(c).map_err(|e| Failure(CHECK_FAILURE, format!("{c:?}: {e}")))?);
    }
    emit(format, &rows, || render_determinantal_text(&rows));
    if rows.iter().all(|r| r.cross_checks.iter().all(|c| c.agree)) {
        Ok(())
    } else {
        Err(Failure(CHECK_FAILURE, "cross-check disagreement".into()))
    }
}

fn catalog_cmd(format: Format, cmd: CatalogCmd) -> Result<(), Failure> {
    match cmd {
        CatalogCmd::List => {
            let entries = catalog::builtin();
            let list: Vec<_> = entries
                .iter()
                .map(|e| serde_json::json!({"name": e.name, "dim": e.diamond.dim(), "provenance": e.provenance}))
                .collect();
            emit(format, &list, || {
                entries.iter().map(|e| format!("{:<10} dim {}  {}\n", e.name, e.diamond.dim(), e.provenance)).collect()
            });
        }
        CatalogCmd::Show { name } => {
            let e = catalog::lookup(&name).map_err(input)?;
            emit(format, &catalog::to_json(&e), || {
                let mut s = format!("{} ({}), dim {}\n", e.name, e.provenance, e.diamond.dim());
                for k in 0..=2 * e.diamond.dim() as i64 {
                    s.push_str(&format!("  H^{k}: {}\n", e.diamond.level(k)));
                }
                s
            });
        }
        CatalogCmd::Export { name, output } => {
            let e = catalog::lookup(&name).map_err(input)?;
            let text = serde_json::to_string_pretty(&catalog::to_json(&e)).expect("serializable");
            match output {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|err| input(format!("{}: {err}", path.display())))?,
                None => println!("{text}"),
            }
        }
    }
    Ok(())
}

fn verify(format: Format, a: VerifyArgs) -> Result<(), Failure> {
    let suites = if a.all || a.suite.is_empty() { Suite::ALL.to_vec() } else { a.suite };
    let mut fixtures = Vec::new();
    for path in &a.fixture {
        fixtures.push(catalog::read_diamond_unchecked(path).map_err(input)?);
    }
    let results = run_suites(&suites, &fixtures);
    emit(format, &results, || {
        results
            .iter()
            .map(|r| {
                let status = if r.passed() { "pass" } else { "FAIL" };
                let mut line = format!("{:<14} {status}  {} checked, {} failed\n", r.suite.to_string(), r.checked, r.failed);
                if let Some(c) = &r.counterexample {
                    line.push_str(&format!("  counterexample: {c}\n"));
                }
                line
            })
            .collect()
    });
    if results.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure(CHECK_FAILURE, "verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Cone(a) => cone(cli.format, a),
        Command::Determinantal(a) => determinantal(cli.format, a),
        Command::Catalog(c) => catalog_cmd(cli.format, c),
        Command::Verify(a) => verify(cli.format, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
