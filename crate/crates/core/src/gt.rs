//! Growth-transform local search on product simplices, with restart
//! scheduling and single-pass rounding to a discrete labeling.
//!
//! The update multiplies each entry by its shifted partial derivative and
//! renormalizes the block. The shift constants make every polynomial
//! coefficient nonnegative, and padding deficient terms with fresh sum-to-one
//! factors would make the polynomial homogeneous without changing these
//! derivatives, so the classical monotonicity of the update applies to the
//! raw gradient plus per-vertex constants used here.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{LabelDistributions, Labeling, PolynomialObjective, ShiftConstants};

/// Fractional entries at least this close to one are treated as one-hot by
/// the rounding pass.
pub const ONE_HOT_THRESHOLD: f64 = 1.0 - 1e-9;

/// Restart schedule for the local search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GtSchedule {
    pub restarts: usize,
    pub iters_per_restart: usize,
    pub refine_iters: usize,
    pub epsilon: f64,
    /// Relative objective change below which an optimize run stops early.
    /// Zero disables early stopping.
    pub early_stop_rel_tol: f64,
    pub seed: u64,
}

impl Default for GtSchedule {
    fn default() -> Self {
        Self {
            restarts: 150,
            iters_per_restart: 300,
            refine_iters: 5000,
            epsilon: 0.01,
            early_stop_rel_tol: 0.0,
            seed: 0,
        }
    }
}

impl GtSchedule {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Parameter("schedule needs at least one restart".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.early_stop_rel_tol < 0.0 {
            return Err(Error::Parameter(
                "early_stop_rel_tol must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// Result of a single multiplicative update.
#[derive(Debug, Clone)]
pub struct GtStep {
    pub dists: LabelDistributions,
    /// Vertices whose block had zero multiplicative mass and was left as-is.
    pub stalled_vertices: Vec<usize>,
}

/// Objective values along one optimize run, at the original (unshifted) scale.
#[derive(Debug, Clone)]
pub struct OptimizeTrace {
    /// Value before the first step, then after each step.
    pub values: Vec<f64>,
    /// Index of the restart this trace belongs to.
    pub restart_index: usize,
    pub final_dists: LabelDistributions,
    /// Union of vertices ever flagged as stalled during the run.
    pub stalled_vertices: Vec<usize>,
}

impl OptimizeTrace {
    /// Steps on which the value decreased by more than the allowed slack.
    pub fn monotonicity_violations(&self, rel_slack: f64) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] < w[0] - rel_slack * w[0].abs().max(1.0))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().expect("trace always holds the initial value")
    }
}

/// One growth-transform update: scale each entry by its shifted derivative
/// and renormalize the block.
pub fn gt_step(
    objective: &PolynomialObjective,
    dists: &LabelDistributions,
    constants: &ShiftConstants,
) -> Result<GtStep> {
    let grad = objective.gradient(dists)?;
    apply_update(dists, &grad, constants)
}

fn apply_update(
    dists: &LabelDistributions,
    grad: &[Vec<f64>],
    constants: &ShiftConstants,
) -> Result<GtStep> {
    let mut blocks = Vec::with_capacity(grad.len());
    let mut stalled = Vec::new();
    for (u, (block, g)) in dists.blocks().iter().zip(grad).enumerate() {
        let shift = constants.per_vertex()[u];
        let mut updated = Vec::with_capacity(block.len());
        let mut mass = 0.0;
        for (&x, &d) in block.iter().zip(g) {
            if !d.is_finite() {
                return Err(Error::NonFiniteGradient { vertex: u });
            }
            let w = x * (d + shift);
            updated.push(w);
            mass += w;
        }
        if mass == 0.0 {
            stalled.push(u);
            blocks.push(block.clone());
            continue;
        }
        for w in &mut updated {
            *w /= mass;
        }
        blocks.push(updated);
    }
    Ok(GtStep {
        dists: LabelDistributions::from_blocks_unchecked(blocks),
        stalled_vertices: stalled,
    })
}

/// Runs `iters` growth-transform steps from `init`, recording the objective
/// after every step. Stops early once the relative change drops below
/// `early_stop_rel_tol` when that is positive.
pub fn optimize(
    objective: &PolynomialObjective,
    init: LabelDistributions,
    iters: usize,
    constants: &ShiftConstants,
    early_stop_rel_tol: f64,
) -> Result<OptimizeTrace> {
    let mut dists = init;
    let (mut value, mut grad) = objective.value_and_gradient(&dists)?;
    let mut values = Vec::with_capacity(iters + 1);
    values.push(value);
    let mut stalled = Vec::new();
    for _ in 0..iters {
        let step = apply_update(&dists, &grad, constants)?;
        dists = step.dists;
        for u in step.stalled_vertices {
            if !stalled.contains(&u) {
                stalled.push(u);
            }
        }
        let (next_value, next_grad) = objective.value_and_gradient(&dists)?;
        values.push(next_value);
        let converged = early_stop_rel_tol > 0.0
            && (next_value - value).abs() < early_stop_rel_tol * value.abs().max(1.0);
        value = next_value;
        grad = next_grad;
        if converged {
            break;
        }
    }
    Ok(OptimizeTrace {
        values,
        restart_index: 0,
        final_dists: dists,
        stalled_vertices: stalled,
    })
}

/// Random-restart local search: independently seeded strictly-positive
/// starts, a fixed number of iterations each, then extra refinement on the
/// restart that reached the highest objective. Ties go to the lowest restart
/// index, so the result does not depend on parallel execution order.
pub fn optimize_with_restarts(
    objective: &PolynomialObjective,
    schedule: &GtSchedule,
) -> Result<(OptimizeTrace, LabelDistributions)> {
    schedule.validate()?;
    let constants = objective.shift_constants(schedule.epsilon)?;
    let traces: Vec<Result<OptimizeTrace>> = (0..schedule.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
            rng.set_stream(restart as u64);
            let init = LabelDistributions::random(objective.vertex_set(), &mut rng);
            let mut trace = optimize(
                objective,
                init,
                schedule.iters_per_restart,
                &constants,
                schedule.early_stop_rel_tol,
            )?;
            trace.restart_index = restart;
            Ok(trace)
        })
        .collect();
    let mut winner: Option<OptimizeTrace> = None;
    for trace in traces {
        let trace = trace?;
        let better = match &winner {
            None => true,
            Some(best) => trace.final_value() > best.final_value(),
        };
        if better {
            winner = Some(trace);
        }
    }
    let winner = winner.expect("at least one restart ran");
    let restart_index = winner.restart_index;
    let refined = optimize(
        objective,
        winner.final_dists,
        schedule.refine_iters,
        &constants,
        schedule.early_stop_rel_tol,
    )?;
    let mut values = winner.values;
    values.extend_from_slice(&refined.values[1..]);
    let mut stalled = winner.stalled_vertices;
    for u in refined.stalled_vertices {
        if !stalled.contains(&u) {
            stalled.push(u);
        }
    }
    let trace = OptimizeTrace {
        values,
        restart_index,
        final_dists: refined.final_dists.clone(),
        stalled_vertices: stalled,
    };
    let dists = refined.final_dists;
    Ok((trace, dists))
}

/// Single-pass rounding: vertices already one-hot keep their label; the rest
/// are visited in ascending id order and assigned the label that maximizes
/// the objective with all other blocks held fixed, which by multilinearity is
/// the argmax of that vertex's gradient block. The value never decreases.
pub fn round_solution(
    objective: &PolynomialObjective,
    dists: &LabelDistributions,
) -> Result<(Labeling, f64)> {
    let vertex_set = objective.vertex_set();
    let mut blocks = dists.blocks().to_vec();
    if blocks.len() != vertex_set.len() {
        return Err(Error::Shape(format!(
            "{} distribution blocks for {} vertices",
            blocks.len(),
            vertex_set.len()
        )));
    }
    let mut labels = vec![usize::MAX; vertex_set.len()];
    let mut pending = Vec::new();
    for (u, block) in blocks.iter_mut().enumerate() {
        let mut argmax = 0usize;
        for (l, &p) in block.iter().enumerate() {
            if p > block[argmax] {
                argmax = l;
            }
        }
        if block[argmax] >= ONE_HOT_THRESHOLD {
            labels[u] = argmax;
            block.iter_mut().for_each(|p| *p = 0.0);
            block[argmax] = 1.0;
        } else {
            pending.push(u);
        }
    }
    for u in pending {
        let work = LabelDistributions::from_blocks_unchecked(blocks);
        let g = objective.gradient_block(&work, u)?;
        blocks = work.into_blocks();
        let mut best = 0usize;
        for (l, &d) in g.iter().enumerate() {
            if d > g[best] {
                best = l;
            }
        }
        labels[u] = best;
        let block = &mut blocks[u];
        block.iter_mut().for_each(|p| *p = 0.0);
        block[best] = 1.0;
    }
    let labeling = Labeling(labels);
    let rounded = LabelDistributions::from_blocks_unchecked(blocks);
    let value = objective.evaluate(&rounded)?;
    Ok((labeling, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{Hyperedge, Tensor, VertexSet};

    fn unary_objective(values: &[f64]) -> PolynomialObjective {
        let vs = VertexSet::new(vec![values.len()]).unwrap();
        let edge = Hyperedge::new(
            vec![0],
            Tensor::new(vec![values.len()], values.to_vec()).unwrap(),
        )
        .unwrap();
        PolynomialObjective::new(vs, vec![edge]).unwrap()
    }

    #[test]
    fn gt_step_matches_hand_computation() {
        // Unary phi (1, 3), C = 0.01, start (0.5, 0.5):
        // unnormalized (0.5 * 1.01, 0.5 * 3.01), mass 2.01.
        let obj = unary_objective(&[1.0, 3.0]);
        let constants = obj.shift_constants(0.01).unwrap();
        let dists = LabelDistributions::uniform(obj.vertex_set());
        let step = gt_step(&obj, &dists, &constants).unwrap();
        let block = step.dists.block(0);
        assert!((block[0] - 0.2512437810945274).abs() < 1e-15);
        assert!((block[1] - 0.7487562189054726).abs() < 1e-15);
        assert!(step.stalled_vertices.is_empty());
    }

    #[test]
    fn one_hot_is_a_fixed_point() {
        let obj = unary_objective(&[1.0, 3.0]);
        let constants = obj.shift_constants(0.01).unwrap();
        let labeling = Labeling(vec![0]);
        let mut dists = LabelDistributions::one_hot(obj.vertex_set(), &labeling).unwrap();
        for _ in 0..5 {
            dists = gt_step(&obj, &dists, &constants).unwrap().dists;
            assert_eq!(dists.block(0), &[1.0, 0.0]);
        }
    }

    #[test]
    fn isolated_vertex_stalls_and_is_flagged() {
        let vs = VertexSet::new(vec![2, 2]).unwrap();
        let edge = Hyperedge::new(vec![0], Tensor::new(vec![2], vec![1.0, 2.0]).unwrap()).unwrap();
        let obj = PolynomialObjective::new(vs.clone(), vec![edge]).unwrap();
        let constants = obj.shift_constants(0.01).unwrap();
        let dists = LabelDistributions::uniform(&vs);
        let step = gt_step(&obj, &dists, &constants).unwrap();
        assert_eq!(step.stalled_vertices, vec![1]);
        assert_eq!(step.dists.block(1), &[0.5, 0.5]);
    }

    #[test]
    fn optimize_zero_iters_records_initial_value_only() {
        let obj = unary_objective(&[1.0, 3.0]);
        let constants = obj.shift_constants(0.01).unwrap();
        let dists = LabelDistributions::uniform(obj.vertex_set());
        let trace = optimize(&obj, dists.clone(), 0, &constants, 0.0).unwrap();
        assert_eq!(trace.values, vec![2.0]);
        assert_eq!(trace.final_dists, dists);
    }

    #[test]
    fn linear_objective_converges_to_argmax_label() {
        let obj = unary_objective(&[0.5, 2.0, 1.0]);
        let constants = obj.shift_constants(0.01).unwrap();
        let init = LabelDistributions::uniform(obj.vertex_set());
        let trace = optimize(&obj, init, 200, &constants, 0.0).unwrap();
        let greedy = trace.final_dists.greedy_labeling();
        let (best, _) = obj.brute_force_max().unwrap();
        assert_eq!(greedy, best);
        assert!(trace.monotonicity_violations(1e-9).is_empty());
    }

    #[test]
    fn restarts_are_deterministic_per_seed() {
        let obj = unary_objective(&[1.0, 4.0, 2.0]);
        let schedule = GtSchedule {
            restarts: 4,
            iters_per_restart: 20,
            refine_iters: 10,
            seed: 99,
            ..GtSchedule::default()
        };
        let (trace_a, dists_a) = optimize_with_restarts(&obj, &schedule).unwrap();
        let (trace_b, dists_b) = optimize_with_restarts(&obj, &schedule).unwrap();
        assert_eq!(trace_a.values, trace_b.values);
        assert_eq!(trace_a.restart_index, trace_b.restart_index);
        assert_eq!(dists_a, dists_b);
    }

    #[test]
    fn single_restart_equals_seeded_optimize_plus_refinement() {
        let obj = unary_objective(&[1.0, 4.0, 2.0]);
        let schedule = GtSchedule {
            restarts: 1,
            iters_per_restart: 15,
            refine_iters: 5,
            seed: 7,
            ..GtSchedule::default()
        };
        let (trace, _) = optimize_with_restarts(&obj, &schedule).unwrap();

        let constants = obj.shift_constants(schedule.epsilon).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
        rng.set_stream(0);
        let init = LabelDistributions::random(obj.vertex_set(), &mut rng);
        let first = optimize(&obj, init, 15, &constants, 0.0).unwrap();
        let second = optimize(&obj, first.final_dists, 5, &constants, 0.0).unwrap();
        let mut expected = first.values;
        expected.extend_from_slice(&second.values[1..]);
        assert_eq!(trace.values, expected);
        assert_eq!(trace.final_dists, second.final_dists);
    }

    #[test]
    fn rounding_keeps_one_hot_input() {
        let obj = unary_objective(&[1.0, 3.0]);
        let labeling = Labeling(vec![0]);
        let dists = LabelDistributions::one_hot(obj.vertex_set(), &labeling).unwrap();
        let (rounded, value) = round_solution(&obj, &dists).unwrap();
        assert_eq!(rounded, labeling);
        assert_eq!(value, 1.0);
    }

    #[test]
    fn rounding_uniform_unary_picks_max() {
        let obj = unary_objective(&[1.0, 3.0]);
        let dists = LabelDistributions::uniform(obj.vertex_set());
        let (labeling, value) = round_solution(&obj, &dists).unwrap();
        assert_eq!(labeling.0, vec![1]);
        assert_eq!(value, 3.0);
    }

    #[test]
    fn rounding_breaks_ties_to_lowest_label() {
        let obj = unary_objective(&[0.0, 0.0, 0.0]);
        let dists = LabelDistributions::uniform(obj.vertex_set());
        let (labeling, value) = round_solution(&obj, &dists).unwrap();
        assert_eq!(labeling.0, vec![0]);
        assert_eq!(value, 0.0);
    }
}
