use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use motivium_core::json::{self, GroupRef, ModuleJson, SubgroupGens, TitsBundleJson, TitsCheck, TraceBundleJson};
use motivium_core::{Error, GModule};

mod report;

use report::Report;

/// Modular representations, Artin motives and Tits index comparison from JSON descriptions.
#[derive(Parser, Debug)]
#[command(name = "motivium", version)]
struct Cli {
    /// Prime for documents that do not fix one (must agree with those that do).
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decompose the resulting module.
    #[arg(long, global = true)]
    decompose: bool,
    /// Do not print the report on stdout.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Krull-Schmidt decomposition of a module.
    Decompose { input: PathBuf },
    /// Tensor product of two modules over the same group.
    Tensor { left: PathBuf, right: PathBuf },
    /// Induce a module over a subgroup up to GROUP (a name like `S3` or a group file).
    Induce {
        input: PathBuf,
        #[arg(long)]
        group: String,
    },
    /// Restrict a module to a subgroup given as JSON generators or generator indices.
    Restrict {
        input: PathBuf,
        #[arg(long)]
        subgroup: String,
    },
    /// Order of a rank-one module in the Picard group.
    PicardOrder { input: PathBuf },
    /// Compare two Tits p-index tables.
    TitsEquiv { input: PathBuf },
    /// Compare the higher Artin-Tate traces of two formal motives.
    TraceCompare { input: PathBuf },
    /// Load any supported document and report what it is.
    Validate { input: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// A relative path is taken from `MOTIVIUM_FIXTURES` when that is set.
fn locate(path: &Path) -> PathBuf {
    match std::env::var_os("MOTIVIUM_FIXTURES") {
        Some(root) if path.is_relative() => PathBuf::from(root).join(path),
        _ => path.to_path_buf(),
    }
}

struct Inputs {
    hasher: report::InputHash,
}

impl Inputs {
    fn new() -> Self {
        Self { hasher: report::InputHash::default() }
    }

    fn read(&mut self, path: &Path) -> Result<(String, PathBuf), Failure> {
        let path = locate(path);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.hasher.add(text.as_bytes());
        Ok((text, json::base_dir(&path)))
    }

    fn parse<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<(T, PathBuf), Failure> {
        let (text, dir) = self.read(path)?;
        let value = json::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok((value, dir))
    }

    fn module(&mut self, path: &Path, prime: Option<u32>) -> Result<GModule, Failure> {
        let (m, dir): (ModuleJson, _) = self.parse(path)?;
        Ok(m.build(None, prime, &dir)?)
    }
}

fn run(cli: &Cli) -> Result<(Report, ExitCode), Failure> {
    let mut inputs = Inputs::new();
    let seed = cli.seed;
    let mut pass = true;
    let (name, body) = match &cli.command {
        Command::Decompose { input } => {
            let m = inputs.module(input, cli.prime)?;
            ("decompose", report::decomposition(&m, seed))
        }
        Command::Tensor { left, right } => {
            let a = inputs.module(left, cli.prime)?;
            let b = inputs.module(right, cli.prime)?;
            ("tensor", report::module(&a.tensor(&b)?, cli.decompose, seed))
        }
        Command::Induce { input, group } => {
            let m = inputs.module(input, cli.prime)?;
            let g = GroupRef::Name(group.clone()).resolve(&locate(Path::new(".")))?;
            ("induce", report::module(&m.induce(&g)?, cli.decompose, seed))
        }
        Command::Restrict { input, subgroup } => {
            let m = inputs.module(input, cli.prime)?;
            let gens: SubgroupGens = json::parse(subgroup)?;
            let h = gens.build(m.group())?;
            ("restrict", report::module(&m.restrict(&h)?, cli.decompose, seed))
        }
        Command::PicardOrder { input } => {
            let m = inputs.module(input, cli.prime)?;
            ("picard-order", report::picard(&m, seed)?)
        }
        Command::TitsEquiv { input } => {
            let (b, dir): (TitsBundleJson, _) = inputs.parse(input)?;
            let bundle = b.build(&dir)?;
            let verdict = match bundle.check {
                TitsCheck::Motivic => motivium_core::titsdex::motivic_equiv_check(&bundle.left, &bundle.right, &bundle.phi)?,
                TitsCheck::ConditionI => motivium_core::titsdex::condition_i_check(
                    &bundle.left,
                    &bundle.right,
                    &bundle.phi,
                    &bundle.tau0,
                )?,
            };
            pass = verdict.is_pass();
            ("tits-equiv", report::tits(&bundle, &verdict))
        }
        Command::TraceCompare { input } => {
            let (b, dir): (TraceBundleJson, _) = inputs.parse(input)?;
            let bundle = b.build(cli.prime, &dir)?;
            let (body, ok) = report::traces(&bundle)?;
            pass = ok;
            ("trace-compare", body)
        }
        Command::Validate { input } => {
            let (text, dir) = inputs.read(input)?;
            ("validate", report::validate(&text, &dir, cli.prime)?)
        }
    };
    let code = if pass { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((Report::new(name, seed, inputs.hasher.finish(), body), code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let text = json::to_string(&report);
            if let Some(out) = &cli.out {
                if let Err(e) = std::fs::write(out, &text) {
                    eprintln!("error: {}: {e}", out.display());
                    return ExitCode::from(2);
                }
            }
            if !cli.quiet {
                print!("{text}");
            }
            code
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}
