use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibcheck::commands::{self, WeierstrassOpts};
use fibcheck::{Report, UsageError};

#[derive(Parser)]
#[command(name = "fibcheck", version, about = "Verification reports for abelian-surface fibrations over P^2")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify admissible R^1 bundles for a holonomy class, or `all`.
    Classify {
        class: String,
        /// First-Chern window `lo,hi` for split enumeration.
        #[arg(long, value_parser = parse_window, default_value = "-30,0", allow_hyphen_values = true)]
        c1_window: (i64, i64),
    },
    /// Run a torus quotient scenario (bundled name or file path).
    Torus { scenario: String },
    /// Sample Weierstrass families over F_p.
    Weierstrass {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        l: i64,
        #[arg(long, default_value_t = 101)]
        p: u32,
        #[arg(long, env = "FIBCHECK_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        fibre_product: bool,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        l2: i64,
    },
    /// Jacobian fibration table with Leray cross-checks.
    Jacfib,
    /// Cohomology of a bundle expression, with `--let NAME=EXPR` bindings.
    Coh {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "let")]
        lets: Vec<String>,
    },
    /// Smoothness of a plane curve over F_p, or transversality with `--with`.
    Smooth {
        poly: String,
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        p: u32,
    },
    /// Every check in one report.
    Report {
        #[arg(value_parser = ["all"])]
        what: String,
        #[arg(long, env = "FIBCHECK_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

fn run(cli: &Cli) -> Result<Report, UsageError> {
    match &cli.command {
        Command::Classify { class, c1_window } => commands::classify(class, *c1_window),
        Command::Torus { scenario } => commands::torus(scenario),
        Command::Weierstrass { l, p, seed, trials, fibre_product, l2 } => commands::weierstrass(WeierstrassOpts {
            l: *l,
            p: *p,
            seed: *seed,
            trials: *trials,
            l2: fibre_product.then_some(*l2),
        }),
        Command::Jacfib => Ok(commands::jacfib()),
        Command::Coh { expr, lets } => commands::coh_command(expr, lets),
        Command::Smooth { poly, with, p } => commands::smooth(poly, with.as_deref(), *p),
        Command::Report { seed, .. } => Ok(commands::report_all(*seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            match cli.format {
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
