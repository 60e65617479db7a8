use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use polytrack::{estimate_viterbi_cost, GtSchedule};
use polytrack_cli::{
    canonical_text, compare_run, generate_scenario, load_scenario, load_scenario_dir,
    solve_single, CompareOptions, GeneratorConfig, ScenarioFailure, Solver,
};

/// Joint multi-object tracking and description scoring over detection streams.
#[derive(Parser)]
#[command(name = "polytrack", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Gt,
    Viterbi,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Random restarts for the local search.
    #[arg(long, default_value_t = 150)]
    restarts: usize,
    /// Iterations per restart.
    #[arg(long, default_value_t = 300)]
    iters: usize,
    /// Extra refinement iterations on the best restart.
    #[arg(long, default_value_t = 5000)]
    refine: usize,
    /// Positive constant added to lift negative coefficients.
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ScheduleArgs {
    fn schedule(&self) -> GtSchedule {
        GtSchedule {
            restarts: self.restarts,
            iters_per_restart: self.iters,
            refine_iters: self.refine,
            epsilon: self.epsilon,
            early_stop_rel_tol: 0.0,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scenario and report its tracks and objective value.
    Track {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "gt")]
        solver: SolverArg,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Joint-lattice row cap for the exact solver.
        #[arg(long, default_value_t = polytrack::exact::JOINT_ROW_CAP)]
        cap: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exact-vs-local-search study over a directory of scenarios.
    Compare {
        scenario_dir: PathBuf,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Joint-lattice row cap; larger scenarios are flagged intractable.
        #[arg(long, default_value_t = polytrack::exact::JOINT_ROW_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact lattice-comparison count of a joint Viterbi solve.
    Cost {
        #[arg(long)]
        frames: u64,
        #[arg(long)]
        detections: u64,
        #[arg(long)]
        participants: u32,
        /// Per-word state counts, comma separated.
        #[arg(long, value_delimiter = ',')]
        states: Vec<u64>,
    },
    /// Generate a synthetic scenario file.
    Gen {
        #[arg(long, default_value_t = 8)]
        frames: usize,
        #[arg(long, default_value_t = 2)]
        participants: usize,
        #[arg(long, default_value_t = 2)]
        words: usize,
        #[arg(long, default_value_t = 8)]
        detections_per_class: usize,
        #[arg(long, default_value_t = 3)]
        classes: usize,
        #[arg(long, default_value_t = 2.0)]
        noise_sigma: f64,
        /// Distractor detections per class per frame.
        #[arg(long, default_value_t = 1)]
        distractors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Track {
            scenario,
            solver,
            schedule,
            cap,
            out,
        } => {
            let name = scenario
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| scenario.display().to_string());
            let spec = load_scenario(&scenario)?;
            let solver = match solver {
                SolverArg::Gt => Solver::Gt,
                SolverArg::Viterbi => Solver::Viterbi,
            };
            let report = solve_single(&name, &spec, solver, &schedule.schedule(), cap)?;
            emit(&report.to_json(), out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            scenario_dir,
            schedule,
            cap,
            out,
        } => {
            let (scenarios, load_failures) = load_scenario_dir(&scenario_dir)?;
            let options = CompareOptions {
                schedule: schedule.schedule(),
                row_cap: cap,
            };
            let mut report = compare_run(&scenarios, &options);
            for (name, error) in load_failures {
                report.errors.push(ScenarioFailure { name, error });
            }
            report.errors.sort_by(|a, b| a.name.cmp(&b.name));
            let failed = !report.errors.is_empty();
            emit(&report.to_json(), out.as_ref())?;
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Cost {
            frames,
            detections,
            participants,
            states,
        } => {
            let estimate = estimate_viterbi_cost(frames, detections, participants, &states);
            println!("{}", estimate.comparisons);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            frames,
            participants,
            words,
            detections_per_class,
            classes,
            noise_sigma,
            distractors,
            seed,
            out,
        } => {
            let config = GeneratorConfig {
                frames,
                participants,
                words,
                detections_per_class,
                classes,
                noise_sigma,
                distractor_count: distractors,
                seed,
            };
            let scenario = generate_scenario(&config)?;
            emit(&canonical_text(&scenario), out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
