//! The oracle-comparison study: exact joint-lattice solves where tractable,
//! growth-transform solves everywhere, relative errors, and single-scenario
//! solving for the `track` command.

use std::time::Instant;

use polytrack::{
    estimate_viterbi_cost, optimize_with_restarts, round_solution, viterbi_joint_capped, Error,
    GtSchedule, ScenarioSpec, TrackCollection,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{relative_error, ScenarioFailure, ScenarioRecord, SolveReport};
use crate::Result;

#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub schedule: GtSchedule,
    /// Joint-lattice row cap; scenarios above it are flagged intractable.
    pub row_cap: u64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            schedule: GtSchedule::default(),
            row_cap: polytrack::exact::JOINT_ROW_CAP,
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn cost_estimate_string(scenario: &ScenarioSpec) -> String {
    let max_detections = scenario
        .frames
        .iter()
        .map(|f| f.detections.len())
        .max()
        .unwrap_or(0) as u64;
    let states: Vec<u64> = scenario.words.iter().map(|w| w.states as u64).collect();
    estimate_viterbi_cost(
        scenario.frame_count() as u64,
        max_detections,
        scenario.participant_count() as u32,
        &states,
    )
    .comparisons
    .to_string()
}

fn solve_one(name: &str, scenario: &ScenarioSpec, options: &CompareOptions) -> Result<ScenarioRecord> {
    let start = Instant::now();
    scenario.validate()?;
    let cost_estimate = cost_estimate_string(scenario);
    let (exact, intractable) = match viterbi_joint_capped(scenario, options.row_cap) {
        Ok((_, value)) => (Some(value), false),
        Err(Error::JointLatticeTooLarge { .. }) => (None, true),
        Err(other) => return Err(other.into()),
    };
    let objective = scenario.sentence_objective()?;
    let schedule = GtSchedule {
        seed: options.schedule.seed ^ fnv1a(name.as_bytes()),
        ..options.schedule.clone()
    };
    let (trace, dists) = optimize_with_restarts(&objective, &schedule)?;
    let relaxed = trace.final_value();
    let (labeling, _) = round_solution(&objective, &dists)?;
    let tracks = scenario.extract_tracks(&labeling)?;
    let rounded = scenario.score_discrete(&tracks)?;
    let rel_err_pct = match exact {
        Some(value) => Some(relative_error(value, rounded)?),
        None => None,
    };
    Ok(ScenarioRecord {
        name: name.to_string(),
        exact,
        relaxed,
        rounded,
        rel_err_pct,
        intractable,
        cost_estimate,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs the study over a batch. Scenario failures are isolated into the
/// report's error list; the batch itself never aborts.
pub fn compare_run(scenarios: &[(String, ScenarioSpec)], options: &CompareOptions) -> SolveReport {
    let outcomes: Vec<(String, Result<ScenarioRecord>)> = scenarios
        .par_iter()
        .map(|(name, scenario)| (name.clone(), solve_one(name, scenario, options)))
        .collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (name, outcome) in outcomes {
        match outcome {
            Ok(record) => records.push(record),
            Err(err) => failures.push(ScenarioFailure {
                name,
                error: err.to_string(),
            }),
        }
    }
    SolveReport::assemble(records, failures)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Gt,
    Viterbi,
}

/// Report for a single-scenario solve.
#[derive(Debug, Clone, Serialize)]
pub struct TrackReport {
    pub scenario: String,
    pub solver: String,
    /// Discrete objective value of the reported tracks.
    pub value: f64,
    /// Final relaxed objective (growth-transform solver only).
    pub relaxed: Option<f64>,
    /// Growth-transform iterations actually run (restart phase plus
    /// refinement of the winner).
    pub iterations: Option<usize>,
    pub restart_index: Option<usize>,
    pub seconds: f64,
    pub tracks: TrackCollection,
}

/// Solves one scenario with the requested solver.
pub fn solve_single(
    name: &str,
    scenario: &ScenarioSpec,
    solver: Solver,
    schedule: &GtSchedule,
    row_cap: u64,
) -> Result<TrackReport> {
    let start = Instant::now();
    scenario.validate()?;
    match solver {
        Solver::Viterbi => {
            let (tracks, value) = viterbi_joint_capped(scenario, row_cap)?;
            Ok(TrackReport {
                scenario: name.to_string(),
                solver: "viterbi".into(),
                value,
                relaxed: None,
                iterations: None,
                restart_index: None,
                seconds: start.elapsed().as_secs_f64(),
                tracks,
            })
        }
        Solver::Gt => {
            let objective = scenario.sentence_objective()?;
            let (trace, dists) = optimize_with_restarts(&objective, schedule)?;
            let (labeling, _) = round_solution(&objective, &dists)?;
            let tracks = scenario.extract_tracks(&labeling)?;
            let value = scenario.score_discrete(&tracks)?;
            Ok(TrackReport {
                scenario: name.to_string(),
                solver: "gt".into(),
                value,
                relaxed: Some(trace.final_value()),
                iterations: Some(trace.values.len() - 1),
                restart_index: Some(trace.restart_index),
                seconds: start.elapsed().as_secs_f64(),
                tracks,
            })
        }
    }
}

impl TrackReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_scenario, GeneratorConfig};

    fn tiny_config(seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            frames: 3,
            participants: 1,
            words: 1,
            detections_per_class: 3,
            classes: 1,
            noise_sigma: 1.0,
            distractor_count: 1,
            seed,
        }
    }

    fn small_schedule() -> GtSchedule {
        GtSchedule {
            restarts: 10,
            iters_per_restart: 60,
            refine_iters: 200,
            ..GtSchedule::default()
        }
    }

    #[test]
    fn single_tiny_scenario_reaches_the_optimum() {
        let scenario = generate_scenario(&tiny_config(3)).unwrap();
        let batch = vec![("tiny".to_string(), scenario)];
        let options = CompareOptions {
            schedule: small_schedule(),
            row_cap: 10_000,
        };
        let report = compare_run(&batch, &options);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        let record = &report.scenarios[0];
        assert_eq!(record.rel_err_pct, Some(0.0));
        assert!(!record.intractable);
    }

    #[test]
    fn intractable_scenarios_are_flagged_but_still_solved() {
        let scenario = generate_scenario(&GeneratorConfig {
            frames: 3,
            participants: 2,
            words: 1,
            detections_per_class: 12,
            classes: 2,
            noise_sigma: 1.0,
            distractor_count: 11,
            seed: 4,
        })
        .unwrap();
        let batch = vec![("wide".to_string(), scenario)];
        let options = CompareOptions {
            schedule: small_schedule(),
            row_cap: 50,
        };
        let report = compare_run(&batch, &options);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        let record = &report.scenarios[0];
        assert!(record.intractable);
        assert_eq!(record.exact, None);
        assert_eq!(record.rel_err_pct, None);
        assert!(record.rounded.is_finite());
        assert!(record.cost_estimate.parse::<u128>().unwrap() > 50);
        assert_eq!(report.aggregate.intractable_count, 1);
        assert_eq!(report.aggregate.tractable_count, 0);
    }

    #[test]
    fn batch_reports_are_deterministic_modulo_timing() {
        let scenarios: Vec<(String, ScenarioSpec)> = (0..3)
            .map(|i| {
                (
                    format!("s{i}"),
                    generate_scenario(&tiny_config(i as u64)).unwrap(),
                )
            })
            .collect();
        let options = CompareOptions {
            schedule: small_schedule(),
            row_cap: 10_000,
        };
        let mut a = compare_run(&scenarios, &options);
        let mut b = compare_run(&scenarios, &options);
        for record in a.scenarios.iter_mut().chain(b.scenarios.iter_mut()) {
            record.seconds = 0.0;
        }
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn gt_and_viterbi_agree_on_a_tiny_scenario() {
        let scenario = generate_scenario(&tiny_config(5)).unwrap();
        let gt = solve_single("t", &scenario, Solver::Gt, &small_schedule(), 10_000).unwrap();
        let exact =
            solve_single("t", &scenario, Solver::Viterbi, &small_schedule(), 10_000).unwrap();
        assert!(gt.value <= exact.value + 1e-9 * exact.value.abs().max(1.0));
        assert_eq!(exact.solver, "viterbi");
        assert_eq!(gt.solver, "gt");
        // Winner's restart-phase iterations plus refinement.
        assert_eq!(gt.iterations, Some(60 + 200));
    }
}
