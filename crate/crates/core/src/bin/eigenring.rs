use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eigenring::cli::{
    build_corpus, check_ring, default_corpus, inspect_module, run_suite, similarity_classes,
    CommandOutput, Instance, InstanceSpec, RunOptions, Suite,
};
use eigenring::{Budget, DEFAULT_ENUMERATION, DEFAULT_TRIALS};

#[derive(Parser)]
#[command(name = "eigenring", version, about = "Similarity, eigenrings and maximal submodules over finite algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Maximum number of candidates per enumeration.
    #[arg(long)]
    budget: Option<u64>,
    /// Randomized isomorphism trials.
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON document here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra and report its ideals, radical and length.
    CheckRing {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions, radical, length, projectivity and Max count of a module.
    InspectModule {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Partition Max(M) into similarity classes.
    SimilarityClasses {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite over the default corpus or a corpus file.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corpus file: one instance or an array of instances.
        #[arg(long, value_name = "PATH")]
        spec: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        /// Count skipped checks as failures.
        #[arg(long)]
        strict: bool,
        /// Record wall time per check in the JSON report.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Input(String),
    Run(String),
}

impl Common {
    fn apply(&self, base: Budget) -> Result<Budget, Failure> {
        let b = Budget {
            enumeration: self.budget.unwrap_or(base.enumeration),
            trials: self.trials.unwrap_or(base.trials),
            seed: self.seed.unwrap_or(base.seed),
        };
        if b.enumeration == 0 || b.trials == 0 {
            return Err(Failure::Input("budgets must be positive".into()));
        }
        Ok(b)
    }
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Run(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_one(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    InstanceSpec::from_json(&text)
        .and_then(|s| s.build())
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn single(
    spec: &Path,
    common: &Common,
    f: fn(&Instance, &Budget) -> eigenring::Result<CommandOutput>,
) -> Result<bool, Failure> {
    let inst = load_one(spec)?;
    let b = common.apply(inst.budget)?;
    let out = f(&inst, &b).map_err(|e| Failure::Run(e.to_string()))?;
    print!("{}", out.table);
    let text = serde_json::to_string_pretty(&out.json).map_err(|e| Failure::Run(e.to_string()))?;
    write_json(&common.json, &text)?;
    Ok(out.pass)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::CheckRing { spec, common } => single(&spec, &common, check_ring),
        Cmd::InspectModule { spec, common } => single(&spec, &common, inspect_module),
        Cmd::SimilarityClasses { spec, common } => single(&spec, &common, similarity_classes),
        Cmd::Verify {
            suite,
            spec,
            common,
            strict,
            timing,
        } => {
            let suite: Suite = suite.parse().map_err(|e: eigenring::Error| Failure::Input(e.to_string()))?;
            let budget = common.apply(Budget {
                enumeration: DEFAULT_ENUMERATION,
                trials: DEFAULT_TRIALS,
                seed: 0,
            })?;
            let specs = match &spec {
                Some(p) => InstanceSpec::load_list(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => default_corpus(),
            };
            let corpus = build_corpus(&specs).map_err(|e| Failure::Input(e.to_string()))?;
            let report = run_suite(suite, &corpus, &RunOptions { budget, timing });
            print!("{}", report.table());
            write_json(&common.json, &report.to_json().map_err(|e| Failure::Run(e.to_string()))?)?;
            Ok(report.exit_code(strict) == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
