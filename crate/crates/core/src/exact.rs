//! Exact dynamic-programming oracles: generic chain Viterbi, the joint
//! detection-and-state lattice, and the lattice-comparison cost estimator.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{motion_coherence, primitive_score, Detection, ScenarioSpec, TrackCollection};

/// Default cap on joint lattice rows per frame.
pub const JOINT_ROW_CAP: u64 = 10_000;

/// A column-structured maximization problem: one label per column, scored by
/// per-node and consecutive-column edge terms.
pub trait ChainProblem {
    fn columns(&self) -> usize;
    fn rows(&self, column: usize) -> usize;
    fn node_score(&self, column: usize, row: usize) -> f64;
    /// Score of the transition between `column - 1` and `column`.
    fn edge_score(&self, column: usize, prev_row: usize, row: usize) -> f64;
}

/// Chain problem with explicitly stored score tables.
#[derive(Debug, Clone)]
pub struct DenseChain {
    node_scores: Vec<Vec<f64>>,
    /// `edge_scores[t-1][prev][cur]` scores the move from column `t-1` to `t`.
    edge_scores: Vec<Vec<Vec<f64>>>,
}

impl DenseChain {
    pub fn new(node_scores: Vec<Vec<f64>>, edge_scores: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if node_scores.is_empty() {
            return Err(Error::Parameter("chain needs at least one column".into()));
        }
        if node_scores.iter().any(Vec::is_empty) {
            return Err(Error::Parameter("every column needs at least one row".into()));
        }
        if edge_scores.len() + 1 != node_scores.len() {
            return Err(Error::Shape(format!(
                "{} edge tables for {} columns",
                edge_scores.len(),
                node_scores.len()
            )));
        }
        for (t, table) in edge_scores.iter().enumerate() {
            if table.len() != node_scores[t].len()
                || table.iter().any(|row| row.len() != node_scores[t + 1].len())
            {
                return Err(Error::Shape(format!(
                    "edge table between columns {t} and {} has the wrong shape",
                    t + 1
                )));
            }
        }
        Ok(Self {
            node_scores,
            edge_scores,
        })
    }
}

impl ChainProblem for DenseChain {
    fn columns(&self) -> usize {
        self.node_scores.len()
    }

    fn rows(&self, column: usize) -> usize {
        self.node_scores[column].len()
    }

    fn node_score(&self, column: usize, row: usize) -> f64 {
        self.node_scores[column][row]
    }

    fn edge_score(&self, column: usize, prev_row: usize, row: usize) -> f64 {
        self.edge_scores[column - 1][prev_row][row]
    }
}

/// Maximizing path through a chain problem by dynamic programming. Ties break
/// to the lowest row index, both at backpointers and at the final column.
pub fn viterbi_chain<P: ChainProblem + ?Sized>(problem: &P) -> (Vec<usize>, f64) {
    let columns = problem.columns();
    let mut values: Vec<f64> = (0..problem.rows(0))
        .map(|r| problem.node_score(0, r))
        .collect();
    let mut backpointers: Vec<Vec<usize>> = Vec::with_capacity(columns.saturating_sub(1));
    for t in 1..columns {
        let rows = problem.rows(t);
        let mut next = Vec::with_capacity(rows);
        let mut back = Vec::with_capacity(rows);
        for cur in 0..rows {
            let mut best_prev = 0usize;
            let mut best = values[0] + problem.edge_score(t, 0, cur);
            for prev in 1..values.len() {
                let candidate = values[prev] + problem.edge_score(t, prev, cur);
                if candidate > best {
                    best = candidate;
                    best_prev = prev;
                }
            }
            next.push(best + problem.node_score(t, cur));
            back.push(best_prev);
        }
        values = next;
        backpointers.push(back);
    }
    let mut last = 0usize;
    for r in 1..values.len() {
        if values[r] > values[last] {
            last = r;
        }
    }
    let total = values[last];
    let mut path = vec![0usize; columns];
    path[columns - 1] = last;
    for t in (1..columns).rev() {
        path[t - 1] = backpointers[t - 1][path[t]];
    }
    (path, total)
}

/// The joint lattice over all participants and words: each row of a column is
/// a tuple of one candidate detection per participant and one state per word.
struct JointLattice<'a> {
    scenario: &'a ScenarioSpec,
    pools: Vec<Vec<Vec<usize>>>,
    /// Row decomposition per column: participant pool sizes then word state
    /// counts, most significant digit first.
    strides: Vec<Vec<usize>>,
    radices: Vec<Vec<usize>>,
    rows: Vec<usize>,
}

impl<'a> JointLattice<'a> {
    fn build(scenario: &'a ScenarioSpec, cap: u64) -> Result<Self> {
        let pools = scenario.candidate_pools()?;
        let t_count = scenario.frame_count();
        let l_count = scenario.participant_count();
        let w_count = scenario.word_count();
        let mut strides = Vec::with_capacity(t_count);
        let mut radices = Vec::with_capacity(t_count);
        let mut rows = Vec::with_capacity(t_count);
        for t in 0..t_count {
            let mut radix = Vec::with_capacity(l_count + w_count);
            for pool in &pools {
                radix.push(pool[t].len());
            }
            for word in &scenario.words {
                radix.push(word.states);
            }
            let count = radix
                .iter()
                .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
                .unwrap_or(u128::MAX);
            if count > cap as u128 {
                let max_detections = scenario
                    .frames
                    .iter()
                    .map(|f| f.detections.len())
                    .max()
                    .unwrap_or(0) as u64;
                let states: Vec<u64> = scenario.words.iter().map(|w| w.states as u64).collect();
                let estimate = estimate_viterbi_cost(
                    t_count as u64,
                    max_detections,
                    l_count as u32,
                    &states,
                );
                return Err(Error::JointLatticeTooLarge {
                    rows: count,
                    frame: t,
                    cap,
                    comparisons: estimate.comparisons,
                });
            }
            let mut stride = vec![1usize; radix.len()];
            for i in (0..radix.len().saturating_sub(1)).rev() {
                stride[i] = stride[i + 1] * radix[i + 1];
            }
            strides.push(stride);
            radices.push(radix);
            rows.push(count as usize);
        }
        Ok(Self {
            scenario,
            pools,
            strides,
            radices,
            rows,
        })
    }

    fn digit(&self, column: usize, row: usize, index: usize) -> usize {
        (row / self.strides[column][index]) % self.radices[column][index]
    }

    fn detection(&self, column: usize, row: usize, participant: usize) -> &Detection {
        let j = self.digit(column, row, participant);
        let det = self.pools[participant][column][j];
        &self.scenario.frames[column].detections[det]
    }

    fn decode(&self, path: &[usize]) -> TrackCollection {
        let l_count = self.scenario.participant_count();
        let detection_ids = (0..l_count)
            .map(|l| {
                path.iter()
                    .enumerate()
                    .map(|(t, &row)| self.detection(t, row, l).id)
                    .collect()
            })
            .collect();
        let states = (0..self.scenario.word_count())
            .map(|w| {
                path.iter()
                    .enumerate()
                    .map(|(t, &row)| self.digit(t, row, l_count + w))
                    .collect()
            })
            .collect();
        TrackCollection {
            detection_ids,
            states,
        }
    }
}

impl ChainProblem for JointLattice<'_> {
    fn columns(&self) -> usize {
        self.scenario.frame_count()
    }

    fn rows(&self, column: usize) -> usize {
        self.rows[column]
    }

    fn node_score(&self, column: usize, row: usize) -> f64 {
        let l_count = self.scenario.participant_count();
        let mut acc = 0.0;
        for l in 0..l_count {
            acc += self.detection(column, row, l).score;
        }
        for (w, word) in self.scenario.words.iter().enumerate() {
            let state = self.digit(column, row, l_count + w);
            let dets: Vec<&Detection> = word
                .theta
                .iter()
                .map(|&l| self.detection(column, row, l))
                .collect();
            acc += primitive_score(&word.outputs[state], &dets)
                .expect("scenario validation fixed the arity");
        }
        acc
    }

    fn edge_score(&self, column: usize, prev_row: usize, row: usize) -> f64 {
        let l_count = self.scenario.participant_count();
        let mut acc = 0.0;
        for l in 0..l_count {
            acc += motion_coherence(
                self.detection(column - 1, prev_row, l),
                self.detection(column, row, l),
                self.scenario.coherence_sigma,
            );
        }
        for (w, word) in self.scenario.words.iter().enumerate() {
            let prev_state = self.digit(column - 1, prev_row, l_count + w);
            let state = self.digit(column, row, l_count + w);
            acc += word.log_transition[prev_state][state];
        }
        acc
    }
}

/// Globally optimal track collection under the default row cap.
pub fn viterbi_joint(scenario: &ScenarioSpec) -> Result<(TrackCollection, f64)> {
    viterbi_joint_capped(scenario, JOINT_ROW_CAP)
}

/// Globally optimal track collection by Viterbi over the joint lattice. The
/// returned value is the discrete cost of the decoded assignment, recomputed
/// with [`ScenarioSpec::score_discrete`]. Refuses scenarios whose lattice
/// exceeds `cap` rows in any frame, reporting the estimated comparison count.
pub fn viterbi_joint_capped(
    scenario: &ScenarioSpec,
    cap: u64,
) -> Result<(TrackCollection, f64)> {
    scenario.validate()?;
    let lattice = JointLattice::build(scenario, cap)?;
    let (path, _) = viterbi_chain(&lattice);
    let tracks = lattice.decode(&path);
    let value = scenario.score_discrete(&tracks)?;
    Ok((tracks, value))
}

/// Exact lattice-comparison count for a joint Viterbi run: `T * (J^L * prod
/// K_w)^2`, in arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostEstimate {
    #[serde(with = "biguint_decimal")]
    pub comparisons: BigUint,
    pub frames: u64,
    pub detections: u64,
    pub participants: u32,
    pub states: Vec<u64>,
}

pub fn estimate_viterbi_cost(
    frames: u64,
    detections: u64,
    participants: u32,
    states: &[u64],
) -> CostEstimate {
    let mut rows = BigUint::from(detections).pow(participants);
    for &k in states {
        rows *= BigUint::from(k);
    }
    let comparisons = BigUint::from(frames) * rows.pow(2u32);
    CostEstimate {
        comparisons,
        frames,
        detections,
        participants,
        states: states.to_vec(),
    }
}

mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(D::Error::custom)
    }
}
