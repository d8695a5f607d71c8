//! `parity-ca`: simulate, verify and search circular binary cellular automata.

mod rule_arg;
mod spacetime;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use parity_ca::debruijn::{
    build_debruijn, certify_pairwise_parity, preimage_necklaces, Certification,
};
use parity_ca::impossibility::{
    r2_cycle_tables, r2_enumerate_candidates_with, radius1_eliminate_with,
};
use parity_ca::{
    check_size, classify, verify_perfect, Configuration, SearchError, StepBudget, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "parity-ca",
    version,
    about = "Circular binary cellular automata and the parity problem"
)]
struct Cli {
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configuration after each of `--steps` steps.
    Simulate {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 20)]
        steps: u64,
    },
    /// Run one configuration until it converges, cycles or exhausts the budget.
    Classify {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: String,
        /// Accept even lattice sizes (diagnostic only).
        #[arg(long)]
        allow_even: bool,
    },
    /// Check every configuration of each listed size.
    Verify {
        #[arg(long)]
        rule: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        allow_even: bool,
    },
    /// Decide whether every step preserves parity.
    ParityCert {
        #[arg(long)]
        rule: String,
        /// Write the de Bruijn edge list (`u v output active`) here.
        #[arg(long)]
        export_graph: Option<PathBuf>,
    },
    /// Pre-images of a homogeneous configuration, up to rotation.
    Preimages {
        #[arg(long)]
        rule: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        target: u8,
        #[arg(long)]
        length: usize,
    },
    /// Radius-2 pre-image cycles of lengths 5 and 7.
    R2Tables,
    /// Radius-2 candidate elimination.
    R2Search {
        /// Require perfection on prime lattice sizes only.
        #[arg(long)]
        prime_only: bool,
    },
    /// Radius-1 candidate elimination.
    R1Search,
    /// Space-time diagram of an evolution.
    Spacetime {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 40)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Pbm,
}

enum Failure {
    Usage(anyhow::Error),
    Verification,
    Escalation(SearchError),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Escalation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Run {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let budget = StepBudget::from_env()
        .map_err(|e| anyhow!("{}: {e}", parity_ca::dynamics::MAX_STEPS_FACTOR_ENV))?;
    match cli.command {
        Command::Simulate {
            rule,
            config,
            steps,
        } => {
            let rule = rule_arg::load_rule(&rule)?;
            for (t, row) in evolve(&rule, &parse_config(&config)?, steps)
                .iter()
                .enumerate()
            {
                println!("{t} {row}");
            }
            Ok(())
        }
        Command::Classify {
            rule,
            config,
            allow_even,
        } => {
            let rule = rule_arg::load_rule(&rule)?;
            let config = parse_config(&config)?;
            check_odd(config.len(), allow_even)?;
            let outcome = classify(&rule, &config, budget.steps_for(config.len()));
            println!("{outcome}");
            if config.len() % 2 == 1 && !outcome.solves(config.parity()) {
                println!("counterexample={config} parity={}", config.parity());
                return Err(Failure::Verification);
            }
            Ok(())
        }
        Command::Verify {
            rule,
            sizes,
            allow_even,
        } => {
            let rule = rule_arg::load_rule(&rule)?;
            for &n in &sizes {
                check_odd(n, allow_even)?;
            }
            let report = if allow_even {
                let sizes = sizes
                    .iter()
                    .map(|&n| check_size(&rule, n, budget))
                    .collect::<Result<_, _>>()
                    .map_err(anyhow::Error::from)?;
                VerifyReport { sizes }
            } else {
                verify_perfect(&rule, &sizes, budget).map_err(anyhow::Error::from)?
            };
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::ParityCert { rule, export_graph } => {
            let rule = rule_arg::load_rule(&rule)?;
            if rule.radius() == 0 {
                return Err(anyhow!("parity-cert needs a rule of radius at least 1").into());
            }
            let graph = build_debruijn(&rule);
            if let Some(path) = export_graph {
                std::fs::write(&path, graph.edge_list())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match certify_pairwise_parity(&graph) {
                Certification::Certified { .. } => {
                    println!(
                        "certified nodes={} edges={}",
                        graph.node_count(),
                        graph.edge_count()
                    );
                    Ok(())
                }
                Certification::Refuted(w) => {
                    println!(
                        "refuted walk={w} config={} active={}",
                        w.configuration(),
                        w.weight
                    );
                    Err(Failure::Verification)
                }
            }
        }
        Command::Preimages {
            rule,
            target,
            length,
        } => {
            if length == 0 {
                return Err(anyhow!("--length must be at least 1").into());
            }
            let rule = rule_arg::load_rule(&rule)?;
            let found = preimage_necklaces(&rule, target, length);
            for c in &found {
                println!("{c}");
            }
            println!("count={}", found.len());
            Ok(())
        }
        Command::R2Tables => {
            print!("{}", r2_cycle_tables());
            Ok(())
        }
        Command::R2Search { prime_only } => {
            let report =
                r2_enumerate_candidates_with(prime_only, budget).map_err(Failure::Escalation)?;
            print!("{report}");
            Ok(())
        }
        Command::R1Search => {
            let reports = radius1_eliminate_with(budget);
            for r in &reports {
                println!("{r}");
            }
            let refuted = reports.iter().all(|r| r.counterexample.is_some());
            println!("candidates={} all_refuted={refuted}", reports.len());
            Ok(())
        }
        Command::Spacetime {
            rule,
            config,
            steps,
            format,
            output,
        } => {
            let rule = rule_arg::load_rule(&rule)?;
            let rows = evolve(&rule, &parse_config(&config)?, steps);
            let text = match format {
                Format::Ascii => spacetime::ascii(&rows),
                Format::Pbm => spacetime::pbm(&rows),
            };
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn parse_config(text: &str) -> anyhow::Result<Configuration> {
    text.parse()
        .with_context(|| format!("invalid configuration {text:?}"))
}

fn check_odd(n: usize, allow_even: bool) -> anyhow::Result<()> {
    if n.is_multiple_of(2) && !allow_even {
        return Err(anyhow!(
            "lattice size {n} is even: the parity problem is ill-defined on even lattices \
             (use --allow-even for diagnostics)"
        ));
    }
    Ok(())
}

fn evolve(rule: &parity_ca::LocalRule, start: &Configuration, steps: u64) -> Vec<Configuration> {
    let mut rows = vec![start.clone()];
    for _ in 0..steps {
        let next = rule.step(rows.last().expect("rows start non-empty"));
        rows.push(next);
    }
    rows
}
