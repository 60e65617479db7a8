//! Synthetic scenario generation: planted smooth trajectories with flow-
//! consistent velocities, jittered true detections, and per-class distractor
//! detections, all deterministic per seed.

use polytrack::{
    Detection, Frame, Participant, PrimitiveKind, PrimitiveSpec, ScenarioSpec, WordModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{HarnessError, Result};

const ARENA: f64 = 500.0;
const SCORE_SCALE: f64 = 60.0;
/// Log-confidence baseline of a detection: scores are log-likelihood-like,
/// peaking at `SCORE_BASE` on the planted trajectory and falling off with
/// squared distance.
const SCORE_BASE: f64 = -3.0;
const COHERENCE_SIGMA: f64 = 30.0;
const WORD_STATES: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub frames: usize,
    pub participants: usize,
    pub words: usize,
    /// Cap on detections kept per class per frame, lowest scores dropped —
    /// the "top-scoring detections per class" regime.
    pub detections_per_class: usize,
    /// Number of object classes; participant `l` is of class `l % classes`.
    pub classes: usize,
    /// Positional jitter of true detections; also scales velocity and score
    /// noise. Zero produces exact planted detections.
    pub noise_sigma: f64,
    /// Distractor detections emitted per class per frame.
    pub distractor_count: usize,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            frames: 8,
            participants: 2,
            words: 2,
            detections_per_class: 8,
            classes: 3,
            noise_sigma: 2.0,
            distractor_count: 1,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        if self.frames < 2 {
            return Err(HarnessError::Config(format!(
                "frames must be at least 2, got {}",
                self.frames
            )));
        }
        if self.participants == 0 {
            return Err(HarnessError::Config("participants must be positive".into()));
        }
        if self.classes == 0 {
            return Err(HarnessError::Config("classes must be positive".into()));
        }
        if self.detections_per_class == 0 {
            return Err(HarnessError::Config(
                "detections_per_class must be positive".into(),
            ));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return Err(HarnessError::Config(format!(
                "noise_sigma must be finite and nonnegative, got {}",
                self.noise_sigma
            )));
        }
        Ok(())
    }
}

fn jitter<R: Rng>(rng: &mut R, half_width: f64) -> f64 {
    half_width * (2.0 * rng.gen::<f64>() - 1.0)
}

struct Candidate {
    class_id: usize,
    truth_of: Option<usize>,
    x: f64,
    y: f64,
    w: f64,
    h: f64,
    vx: f64,
    vy: f64,
    score: f64,
}

/// Generates a scenario plus the planted detection ids per participant per
/// frame, so tests can check recovery of the ground truth.
pub fn generate_scenario_with_truth(
    config: &GeneratorConfig,
) -> Result<(ScenarioSpec, Vec<Vec<i64>>)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let t_count = config.frames;
    let steps = (t_count - 1) as f64;

    // Linear planted trajectories; endpoints inside the arena keep every
    // intermediate position inside it as well.
    let mut starts = Vec::with_capacity(config.participants);
    let mut velocities = Vec::with_capacity(config.participants);
    for _ in 0..config.participants {
        let start = (rng.gen_range(80.0..420.0), rng.gen_range(80.0..420.0));
        let end = (rng.gen_range(80.0..420.0), rng.gen_range(80.0..420.0));
        starts.push(start);
        velocities.push(((end.0 - start.0) / steps, (end.1 - start.1) / steps));
    }
    let position = |l: usize, t: usize| -> (f64, f64) {
        (
            starts[l].0 + velocities[l].0 * t as f64,
            starts[l].1 + velocities[l].1 * t as f64,
        )
    };

    let noise = config.noise_sigma;
    let mut frames = Vec::with_capacity(t_count);
    let mut planted: Vec<Vec<i64>> = vec![Vec::with_capacity(t_count); config.participants];
    for t in 0..t_count {
        let mut per_class: Vec<Vec<Candidate>> = (0..config.classes).map(|_| Vec::new()).collect();
        for (l, &(vx, vy)) in velocities.iter().enumerate() {
            let truth = position(l, t);
            let (x, y) = (truth.0 + jitter(&mut rng, noise), truth.1 + jitter(&mut rng, noise));
            let dx = x - truth.0;
            let dy = y - truth.1;
            per_class[l % config.classes].push(Candidate {
                class_id: l % config.classes,
                truth_of: Some(l),
                x,
                y,
                w: rng.gen_range(25.0..55.0),
                h: rng.gen_range(25.0..55.0),
                vx: vx + jitter(&mut rng, 0.1 * noise),
                vy: vy + jitter(&mut rng, 0.1 * noise),
                score: SCORE_BASE - (dx * dx + dy * dy) / (2.0 * SCORE_SCALE * SCORE_SCALE)
                    + jitter(&mut rng, 0.05 * noise),
            });
        }
        for (class_id, pool) in per_class.iter_mut().enumerate() {
            for _ in 0..config.distractor_count {
                let x = rng.gen_range(0.0..ARENA);
                let y = rng.gen_range(0.0..ARENA);
                let nearest = (0..config.participants)
                    .map(|l| {
                        let p = position(l, t);
                        (x - p.0) * (x - p.0) + (y - p.1) * (y - p.1)
                    })
                    .fold(f64::INFINITY, f64::min);
                pool.push(Candidate {
                    class_id,
                    truth_of: None,
                    x,
                    y,
                    w: rng.gen_range(25.0..55.0),
                    h: rng.gen_range(25.0..55.0),
                    vx: rng.gen_range(-8.0..8.0),
                    vy: rng.gen_range(-8.0..8.0),
                    score: -nearest / (2.0 * SCORE_SCALE * SCORE_SCALE)
                        + jitter(&mut rng, 0.05 * noise),
                });
            }
            if pool.len() > config.detections_per_class {
                pool.sort_by(|a, b| b.score.total_cmp(&a.score));
                pool.truncate(config.detections_per_class);
            }
        }
        let mut detections = Vec::new();
        for pool in per_class {
            for candidate in pool {
                let id = detections.len() as i64;
                if let Some(l) = candidate.truth_of {
                    planted[l].push(id);
                }
                detections.push(Detection {
                    id,
                    class: format!("c{}", candidate.class_id),
                    x: candidate.x,
                    y: candidate.y,
                    w: candidate.w,
                    h: candidate.h,
                    vx: candidate.vx,
                    vy: candidate.vy,
                    score: candidate.score,
                });
            }
        }
        frames.push(Frame { detections });
    }

    let participants = (0..config.participants)
        .map(|l| Participant {
            name: format!("p{l}"),
            classes: vec![format!("c{}", l % config.classes)],
        })
        .collect();
    let words = (0..config.words)
        .map(|w| make_word(w, config.participants))
        .collect();
    let scenario = ScenarioSpec {
        frames,
        participants,
        words,
        coherence_sigma: COHERENCE_SIGMA,
    };
    scenario.validate()?;
    Ok((scenario, planted))
}

pub fn generate_scenario(config: &GeneratorConfig) -> Result<ScenarioSpec> {
    Ok(generate_scenario_with_truth(config)?.0)
}

fn make_word(index: usize, participants: usize) -> WordModel {
    let binary = participants >= 2 && index % 2 == 0;
    let (arity, theta) = if binary {
        (2, vec![index % participants, (index + 1) % participants])
    } else {
        (1, vec![index % participants])
    };
    let stay = 0.8f64.ln();
    let leave = (0.2 / (WORD_STATES - 1) as f64).ln();
    let log_transition = (0..WORD_STATES)
        .map(|i| {
            (0..WORD_STATES)
                .map(|j| if i == j { stay } else { leave })
                .collect()
        })
        .collect();
    let outputs = (0..WORD_STATES)
        .map(|k| {
            let k = k as f64;
            if binary {
                match (index / 2) % 5 {
                    0 => PrimitiveSpec {
                        kind: PrimitiveKind::DistBand,
                        params: vec![80.0 * k, 80.0 * k + 80.0, 0.02],
                    },
                    1 => PrimitiveSpec {
                        kind: PrimitiveKind::LeftOf,
                        params: vec![20.0 + 30.0 * k],
                    },
                    2 => PrimitiveSpec {
                        kind: PrimitiveKind::Approaching,
                        params: vec![2.0 + 3.0 * k],
                    },
                    3 => PrimitiveSpec {
                        kind: PrimitiveKind::RightOf,
                        params: vec![20.0 + 30.0 * k],
                    },
                    _ => PrimitiveSpec {
                        kind: PrimitiveKind::Departing,
                        params: vec![2.0 + 3.0 * k],
                    },
                }
            } else if index % 2 == 1 {
                PrimitiveSpec {
                    kind: PrimitiveKind::SpeedBand,
                    params: vec![4.0 * k, 4.0 * k + 4.0, 0.1],
                }
            } else {
                PrimitiveSpec {
                    kind: PrimitiveKind::Const,
                    params: vec![-0.3 * k],
                }
            }
        })
        .collect();
    WordModel {
        name: format!("w{index}"),
        arity,
        theta,
        states: WORD_STATES,
        log_transition,
        outputs,
    }
}
