//! Shared fixtures and independent oracles for the integration tests.
//!
//! Everything here recomputes results through deliberately naive paths —
//! full tuple loops, path enumeration, finite differences — so the library's
//! optimized routines are checked against code that shares none of their
//! structure.

use polytrack::{
    ChainProblem, Detection, Frame, Hyperedge, LabelDistributions, Participant,
    PolynomialObjective, PrimitiveKind, PrimitiveSpec, ScenarioSpec, Tensor, VertexSet, WordModel,
};
use rand::Rng;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Random objective with the requested number of edges; every edge degree is
/// drawn from `1..=max_degree`, capped by the vertex count.
pub fn random_objective<R: Rng>(
    rng: &mut R,
    vertices: usize,
    max_labels: usize,
    max_degree: usize,
    edge_count: usize,
) -> PolynomialObjective {
    let label_counts: Vec<usize> = (0..vertices).map(|_| rng.gen_range(1..=max_labels)).collect();
    let vertex_set = VertexSet::new(label_counts.clone()).unwrap();
    let mut edges = Vec::with_capacity(edge_count);
    for e in 0..edge_count {
        // Guarantee at least one edge of the maximal degree.
        let degree = if e == 0 {
            max_degree.min(vertices)
        } else {
            rng.gen_range(1..=max_degree.min(vertices))
        };
        let mut members: Vec<usize> = Vec::with_capacity(degree);
        while members.len() < degree {
            let u = rng.gen_range(0..vertices);
            if !members.contains(&u) {
                members.push(u);
            }
        }
        let dims: Vec<usize> = members.iter().map(|&u| label_counts[u]).collect();
        let total: usize = dims.iter().product();
        let data: Vec<f64> = (0..total).map(|_| rng.gen_range(-2.0..2.0)).collect();
        edges.push(Hyperedge::new(members, Tensor::new(dims, data).unwrap()).unwrap());
    }
    PolynomialObjective::new(vertex_set, edges).unwrap()
}

/// Term-by-term evaluation: loops over every label tuple of every edge and
/// multiplies probabilities explicitly.
pub fn naive_evaluate(objective: &PolynomialObjective, dists: &LabelDistributions) -> f64 {
    let mut total = 0.0;
    for edge in objective.hyperedges() {
        let dims = edge.phi().dims();
        let mut idx = vec![0usize; dims.len()];
        let entries: usize = dims.iter().product();
        for _ in 0..entries {
            let mut term = edge.phi().get(&idx);
            for (pos, &u) in edge.vertices().iter().enumerate() {
                term *= dists.block(u)[idx[pos]];
            }
            total += term;
            for axis in (0..dims.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < dims[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
    }
    total
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

/// A copy of the objective with every tensor entry lifted by its edge's shift
/// constant. Evaluating this materialized form checks the analytic identity.
pub fn materialize_shift(objective: &PolynomialObjective, per_edge: &[f64]) -> PolynomialObjective {
    let edges: Vec<Hyperedge> = objective
        .hyperedges()
        .iter()
        .zip(per_edge)
        .map(|(edge, &c)| {
            let data: Vec<f64> = edge.phi().data().iter().map(|&v| v + c).collect();
            Hyperedge::new(
                edge.vertices().to_vec(),
                Tensor::new(edge.phi().dims().to_vec(), data).unwrap(),
            )
            .unwrap()
        })
        .collect();
    PolynomialObjective::new(objective.vertex_set().clone(), edges).unwrap()
}

/// Exhaustive best path through a chain, enumerated in lexicographic order
/// with strict improvement, summing scores left to right.
pub fn enumerate_chain_best<P: ChainProblem>(problem: &P) -> (Vec<usize>, f64) {
    let columns = problem.columns();
    let mut path = vec![0usize; columns];
    let mut best_path = path.clone();
    let mut best = f64::NEG_INFINITY;
    loop {
        let mut score = problem.node_score(0, path[0]);
        for t in 1..columns {
            score += problem.edge_score(t, path[t - 1], path[t]);
            score += problem.node_score(t, path[t]);
        }
        if score > best {
            best = score;
            best_path = path.clone();
        }
        let mut column = columns;
        loop {
            if column == 0 {
                return (best_path, best);
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

pub fn random_detection<R: Rng>(rng: &mut R, id: i64, class: &str) -> Detection {
    Detection {
        id,
        class: class.to_string(),
        x: rng.gen_range(0.0..100.0),
        y: rng.gen_range(0.0..100.0),
        w: rng.gen_range(5.0..20.0),
        h: rng.gen_range(5.0..20.0),
        vx: rng.gen_range(-5.0..5.0),
        vy: rng.gen_range(-5.0..5.0),
        score: rng.gen_range(-3.0..3.0),
    }
}

pub fn random_word<R: Rng>(
    rng: &mut R,
    index: usize,
    participants: usize,
    max_states: usize,
) -> WordModel {
    let arity = if participants >= 2 && rng.gen_bool(0.5) { 2 } else { 1 };
    let mut theta = vec![rng.gen_range(0..participants)];
    if arity == 2 {
        loop {
            let other = rng.gen_range(0..participants);
            if other != theta[0] {
                theta.push(other);
                break;
            }
        }
    }
    let states = rng.gen_range(1..=max_states);
    let log_transition = (0..states)
        .map(|_| (0..states).map(|_| rng.gen_range(-2.0..0.0)).collect())
        .collect();
    let outputs = (0..states)
        .map(|_| {
            if arity == 1 {
                match rng.gen_range(0..2) {
                    0 => PrimitiveSpec {
                        kind: PrimitiveKind::Const,
                        params: vec![rng.gen_range(-1.0..1.0)],
                    },
                    _ => {
                        let lo = rng.gen_range(0.0..5.0);
                        PrimitiveSpec {
                            kind: PrimitiveKind::SpeedBand,
                            params: vec![lo, lo + rng.gen_range(1.0..5.0), rng.gen_range(0.01..0.2)],
                        }
                    }
                }
            } else {
                match rng.gen_range(0..5) {
                    0 => PrimitiveSpec {
                        kind: PrimitiveKind::LeftOf,
                        params: vec![rng.gen_range(5.0..50.0)],
                    },
                    1 => PrimitiveSpec {
                        kind: PrimitiveKind::RightOf,
                        params: vec![rng.gen_range(5.0..50.0)],
                    },
                    2 => PrimitiveSpec {
                        kind: PrimitiveKind::Approaching,
                        params: vec![rng.gen_range(1.0..10.0)],
                    },
                    3 => PrimitiveSpec {
                        kind: PrimitiveKind::Departing,
                        params: vec![rng.gen_range(1.0..10.0)],
                    },
                    _ => {
                        let lo = rng.gen_range(0.0..50.0);
                        PrimitiveSpec {
                            kind: PrimitiveKind::DistBand,
                            params: vec![lo, lo + rng.gen_range(5.0..50.0), rng.gen_range(0.01..0.2)],
                        }
                    }
                }
            }
        })
        .collect();
    WordModel {
        name: format!("word{index}"),
        arity,
        theta,
        states,
        log_transition,
        outputs,
    }
}

/// Uniform-random scenario. Detections alternate between two classes when
/// `class_filters` is set, and participants then filter on one of them.
pub fn random_scenario<R: Rng>(
    rng: &mut R,
    frames: usize,
    detections_per_frame: usize,
    participants: usize,
    words: usize,
    max_states: usize,
    class_filters: bool,
) -> ScenarioSpec {
    let classes = ["a", "b"];
    let frames: Vec<Frame> = (0..frames)
        .map(|_| Frame {
            detections: (0..detections_per_frame)
                .map(|j| {
                    let class = if class_filters && detections_per_frame >= 2 {
                        classes[j % 2]
                    } else {
                        classes[0]
                    };
                    random_detection(rng, j as i64, class)
                })
                .collect(),
        })
        .collect();
    let participants: Vec<Participant> = (0..participants)
        .map(|l| Participant {
            name: format!("p{l}"),
            classes: if class_filters && detections_per_frame >= 2 && rng.gen_bool(0.4) {
                vec![classes[l % 2].to_string()]
            } else {
                vec![]
            },
        })
        .collect();
    let word_models = (0..words)
        .map(|w| random_word(rng, w, participants.len(), max_states))
        .collect();
    ScenarioSpec {
        frames,
        participants,
        words: word_models,
        coherence_sigma: rng.gen_range(5.0..50.0),
    }
}

/// Uniformly random valid track collection for a scenario.
pub fn random_tracks<R: Rng>(rng: &mut R, scenario: &ScenarioSpec) -> polytrack::TrackCollection {
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
    polytrack::TrackCollection {
        detection_ids,
        states,
    }
}
