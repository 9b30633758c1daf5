use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mtlab_cli::commands::{self, Overrides};
use mtlab_cli::CliError;

/// Marginally trapped surfaces in the spaces of oriented geodesics.
#[derive(Parser)]
#[command(name = "mtlab", version)]
struct Cli {
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Directory for output files (default: current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Jet order, overriding the configuration.
    #[arg(long)]
    order: Option<usize>,
    /// Marginally-trapped tolerance, overriding the configuration.
    #[arg(long = "tol-mt")]
    tol_mt: Option<f64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            out: self.out.clone(),
            order: self.order,
            tol_mt: self.tol_mt,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the grid and write an MTReport; exit 2 if a required verdict fails.
    Check(Common),
    /// Compare closed-form quantities with the generic engine.
    Compare(Common),
    /// Export OBJ and CSV surface samples.
    Mesh(Common),
    /// Repeat `check` over values of one family parameter.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Parameter name: a key of `params`, or `tau`.
        #[arg(long)]
        param: String,
        /// JSON array of values; `tau` also takes `[re, im]` pairs.
        #[arg(long)]
        values: String,
    },
    /// List the built-in family kinds with their expression slots.
    Families,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Check(c) => commands::check(&c.config, &c.overrides()),
        Command::Compare(c) => commands::compare_cmd(&c.config, &c.overrides()),
        Command::Mesh(c) => commands::mesh(&c.config, &c.overrides()),
        Command::Scan {
            common,
            param,
            values,
        } => commands::scan(&common.config, &param, &values, &common.overrides()),
        Command::Families => {
            print!("{}", commands::families_text());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
