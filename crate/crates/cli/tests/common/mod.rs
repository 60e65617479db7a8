//! Helpers shared by the acceptance suite: independent oracles and random
//! assignment drawing.

use polytrack::{ChainProblem, LabelDistributions, PolynomialObjective, ScenarioSpec, TrackCollection};
use rand::Rng;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Exhaustive best path through a chain, summing scores left to right.
pub fn enumerate_chain_best<P: ChainProblem>(problem: &P) -> f64 {
    let columns = problem.columns();
    let mut path = vec![0usize; columns];
    let mut best = f64::NEG_INFINITY;
    loop {
        let mut score = problem.node_score(0, path[0]);
        for t in 1..columns {
            score += problem.edge_score(t, path[t - 1], path[t]);
            score += problem.node_score(t, path[t]);
        }
        if score > best {
            best = score;
        }
        let mut column = columns;
        loop {
            if column == 0 {
                return best;
            }
            column -= 1;
            path[column] += 1;
            if path[column] < problem.rows(column) {
                break;
            }
            path[column] = 0;
        }
    }
}

/// Central finite differences of the objective, entry by entry.
pub fn finite_difference_gradient(
    objective: &PolynomialObjective,
    dists: &LabelDistributions,
    step: f64,
) -> Vec<Vec<f64>> {
    let blocks = dists.blocks().to_vec();
    let mut grad: Vec<Vec<f64>> = blocks.iter().map(|b| vec![0.0; b.len()]).collect();
    for u in 0..blocks.len() {
        for l in 0..blocks[u].len() {
            let mut plus = blocks.clone();
            plus[u][l] += step;
            let mut minus = blocks.clone();
            minus[u][l] -= step;
            let high = objective
                .evaluate(&LabelDistributions::from_blocks_unchecked(plus))
                .unwrap();
            let low = objective
                .evaluate(&LabelDistributions::from_blocks_unchecked(minus))
                .unwrap();
            grad[u][l] = (high - low) / (2.0 * step);
        }
    }
    grad
}

/// Uniformly random valid track collection for a scenario.
pub fn random_tracks<R: Rng>(rng: &mut R, scenario: &ScenarioSpec) -> TrackCollection {
    let pools = scenario.candidate_pools().unwrap();
    let detection_ids = pools
        .iter()
        .map(|per_frame| {
            per_frame
                .iter()
                .enumerate()
                .map(|(t, pool)| {
                    let pick = pool[rng.gen_range(0..pool.len())];
                    scenario.frames[t].detections[pick].id
                })
                .collect()
        })
        .collect();
    let states = scenario
        .words
        .iter()
        .map(|word| {
            (0..scenario.frame_count())
                .map(|_| rng.gen_range(0..word.states))
                .collect()
        })
        .collect();
    TrackCollection {
        detection_ids,
        states,
    }
}
