//! Detection streams, word models, and the objective builders that turn a
//! scenario into a polynomial over label distributions.
//!
//! Vertices are per-frame choices: one vertex per participant per frame
//! (labels are candidate detections) and one per word per frame (labels are
//! HMM states). Edges score detection confidence, temporal coherence, word
//! output compatibility, and state transitions. At one-hot distributions the
//! polynomial equals the direct discrete cost, which [`ScenarioSpec::score_discrete`]
//! computes without building the hypergraph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{Hyperedge, Labeling, PolynomialObjective, Tensor, VertexSet};

/// A scored candidate bounding box in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub id: i64,
    pub class: String,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
    /// Flow-predicted motion, in pixels per frame.
    pub vx: f64,
    pub vy: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub detections: Vec<Detection>,
}

/// An event role requiring its own track.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Participant {
    pub name: String,
    /// Candidate filter: only detections of these classes may be selected.
    /// Empty means any detection qualifies.
    pub classes: Vec<String>,
}

/// Output scorer kinds for word-model states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrimitiveKind {
    Const,
    LeftOf,
    RightOf,
    DistBand,
    Approaching,
    Departing,
    SpeedBand,
}

impl PrimitiveKind {
    /// Number of detections the scorer takes.
    pub fn arity(self) -> usize {
        match self {
            PrimitiveKind::Const | PrimitiveKind::SpeedBand => 1,
            _ => 2,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            PrimitiveKind::Const
            | PrimitiveKind::LeftOf
            | PrimitiveKind::RightOf
            | PrimitiveKind::Approaching
            | PrimitiveKind::Departing => 1,
            PrimitiveKind::DistBand | PrimitiveKind::SpeedBand => 3,
        }
    }
}

/// One state's output scorer: a kind plus its scale or band parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    pub kind: PrimitiveKind,
    pub params: Vec<f64>,
}

/// An HMM modeling one content word: per-state output scorers over the
/// linked participants' detections plus a log transition matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordModel {
    pub name: String,
    pub arity: usize,
    /// Participant indices filling the word's argument slots, in order.
    pub theta: Vec<usize>,
    pub states: usize,
    pub log_transition: Vec<Vec<f64>>,
    pub outputs: Vec<PrimitiveSpec>,
}

/// The full input: frames of scored detections plus participants, word
/// models, and the coherence scale for the motion term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub frames: Vec<Frame>,
    pub participants: Vec<Participant>,
    pub words: Vec<WordModel>,
    pub coherence_sigma: f64,
}

/// Discrete output: one detection id per participant per frame and one state
/// index per word per frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackCollection {
    pub detection_ids: Vec<Vec<i64>>,
    pub states: Vec<Vec<usize>>,
}

/// Temporal coherence between adjacent-frame detections: the squared gap
/// between the flow-predicted position of `prev` and the position of `cur`,
/// negated and scaled by `sigma^2`. `sigma` must be positive.
pub fn motion_coherence(prev: &Detection, cur: &Detection, sigma: f64) -> f64 {
    debug_assert!(sigma > 0.0);
    let dx = prev.x + prev.vx - cur.x;
    let dy = prev.y + prev.vy - cur.y;
    -(dx * dx + dy * dy) / (sigma * sigma)
}

fn log_sigmoid(z: f64) -> f64 {
    // -softplus(-z), stable on both tails.
    let t = -z;
    if t > 0.0 {
        -(t + (-t).exp().ln_1p())
    } else {
        -t.exp().ln_1p()
    }
}

fn centroid_distance(a: &Detection, b: &Detection) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

fn band_penalty(value: f64, lo: f64, hi: f64, rate: f64) -> f64 {
    if value < lo {
        -rate * (lo - value)
    } else if value > hi {
        -rate * (value - hi)
    } else {
        0.0
    }
}

/// Scores one or two detections under a state's output model.
pub fn primitive_score(spec: &PrimitiveSpec, detections: &[&Detection]) -> Result<f64> {
    if detections.len() != spec.kind.arity() {
        return Err(Error::Parameter(format!(
            "{:?} takes {} detections, got {}",
            spec.kind,
            spec.kind.arity(),
            detections.len()
        )));
    }
    if spec.params.len() != spec.kind.param_count() {
        return Err(Error::Parameter(format!(
            "{:?} takes {} params, got {}",
            spec.kind,
            spec.kind.param_count(),
            spec.params.len()
        )));
    }
    let p = &spec.params;
    Ok(match spec.kind {
        PrimitiveKind::Const => p[0],
        PrimitiveKind::LeftOf => log_sigmoid((detections[1].x - detections[0].x) / p[0]),
        PrimitiveKind::RightOf => log_sigmoid((detections[0].x - detections[1].x) / p[0]),
        PrimitiveKind::DistBand => {
            band_penalty(centroid_distance(detections[0], detections[1]), p[0], p[1], p[2])
        }
        PrimitiveKind::Approaching | PrimitiveKind::Departing => {
            let (a, b) = (detections[0], detections[1]);
            let now = centroid_distance(a, b);
            let ndx = (a.x + a.vx) - (b.x + b.vx);
            let ndy = (a.y + a.vy) - (b.y + b.vy);
            let next = (ndx * ndx + ndy * ndy).sqrt();
            match spec.kind {
                PrimitiveKind::Approaching => log_sigmoid((now - next) / p[0]),
                _ => log_sigmoid((next - now) / p[0]),
            }
        }
        PrimitiveKind::SpeedBand => {
            let d = detections[0];
            band_penalty((d.vx * d.vx + d.vy * d.vy).sqrt(), p[0], p[1], p[2])
        }
    })
}

impl ScenarioSpec {
    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn participant_count(&self) -> usize {
        self.participants.len()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Full semantic validation of the scenario structure.
    pub fn validate(&self) -> Result<()> {
        if self.frames.len() < 2 {
            return Err(Error::Parameter(format!(
                "scenario needs at least 2 frames, got {}",
                self.frames.len()
            )));
        }
        if !(self.coherence_sigma > 0.0) || !self.coherence_sigma.is_finite() {
            return Err(Error::Parameter(format!(
                "coherence_sigma must be positive and finite, got {}",
                self.coherence_sigma
            )));
        }
        if self.participants.is_empty() {
            return Err(Error::Parameter("scenario needs at least one participant".into()));
        }
        for (t, frame) in self.frames.iter().enumerate() {
            if frame.detections.is_empty() {
                return Err(Error::Parameter(format!("frame {t} has no detections")));
            }
            for (i, det) in frame.detections.iter().enumerate() {
                if frame.detections[..i].iter().any(|d| d.id == det.id) {
                    return Err(Error::Parameter(format!(
                        "frame {t} repeats detection id {}",
                        det.id
                    )));
                }
                let fields = [det.x, det.y, det.w, det.h, det.vx, det.vy, det.score];
                if fields.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Parameter(format!(
                        "frame {t} detection {} has a non-finite field",
                        det.id
                    )));
                }
                if det.w <= 0.0 || det.h <= 0.0 {
                    return Err(Error::Parameter(format!(
                        "frame {t} detection {} has non-positive extent",
                        det.id
                    )));
                }
            }
        }
        for (i, participant) in self.participants.iter().enumerate() {
            if self.participants[..i].iter().any(|p| p.name == participant.name) {
                return Err(Error::Parameter(format!(
                    "participant name {:?} repeats",
                    participant.name
                )));
            }
        }
        for word in &self.words {
            if word.arity != 1 && word.arity != 2 {
                return Err(Error::Parameter(format!(
                    "word {:?} has arity {}, only 1 and 2 are supported",
                    word.name, word.arity
                )));
            }
            if word.theta.len() != word.arity {
                return Err(Error::Parameter(format!(
                    "word {:?} has arity {} but {} linked participants",
                    word.name,
                    word.arity,
                    word.theta.len()
                )));
            }
            for (i, &l) in word.theta.iter().enumerate() {
                if l >= self.participants.len() {
                    return Err(Error::Parameter(format!(
                        "word {:?} links participant {l} but there are only {}",
                        word.name,
                        self.participants.len()
                    )));
                }
                if word.theta[..i].contains(&l) {
                    return Err(Error::Parameter(format!(
                        "word {:?} links participant {l} twice",
                        word.name
                    )));
                }
            }
            if word.states == 0 {
                return Err(Error::Parameter(format!("word {:?} has no states", word.name)));
            }
            if word.log_transition.len() != word.states
                || word.log_transition.iter().any(|row| row.len() != word.states)
            {
                return Err(Error::Parameter(format!(
                    "word {:?} transition matrix is not {} x {}",
                    word.name, word.states, word.states
                )));
            }
            if word
                .log_transition
                .iter()
                .flatten()
                .any(|v| !v.is_finite())
            {
                return Err(Error::Parameter(format!(
                    "word {:?} transition matrix has a non-finite entry",
                    word.name
                )));
            }
            if word.outputs.len() != word.states {
                return Err(Error::Parameter(format!(
                    "word {:?} has {} states but {} output scorers",
                    word.name,
                    word.states,
                    word.outputs.len()
                )));
            }
            for output in &word.outputs {
                if output.kind.arity() != word.arity {
                    return Err(Error::Parameter(format!(
                        "word {:?} has arity {} but output {:?} takes {} detections",
                        word.name,
                        word.arity,
                        output.kind,
                        output.kind.arity()
                    )));
                }
                if output.params.len() != output.kind.param_count() {
                    return Err(Error::Parameter(format!(
                        "word {:?} output {:?} takes {} params, got {}",
                        word.name,
                        output.kind,
                        output.kind.param_count(),
                        output.params.len()
                    )));
                }
                if output.params.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Parameter(format!(
                        "word {:?} output {:?} has a non-finite param",
                        word.name, output.kind
                    )));
                }
            }
        }
        self.candidate_pools()?;
        Ok(())
    }

    /// Per participant, per frame: the indices of its candidate detections.
    pub fn candidate_pools(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut pools = Vec::with_capacity(self.participants.len());
        for participant in &self.participants {
            let mut per_frame = Vec::with_capacity(self.frames.len());
            for (t, frame) in self.frames.iter().enumerate() {
                let pool: Vec<usize> = frame
                    .detections
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| {
                        participant.classes.is_empty() || participant.classes.contains(&d.class)
                    })
                    .map(|(i, _)| i)
                    .collect();
                if pool.is_empty() {
                    return Err(Error::Build(format!(
                        "participant {:?} has no candidate detections in frame {t}",
                        participant.name
                    )));
                }
                per_frame.push(pool);
            }
            pools.push(per_frame);
        }
        Ok(pools)
    }

    /// Detection-score and coherence objective for a single participant:
    /// one vertex per frame, unary detection-score edges, and binary
    /// coherence edges between consecutive frames.
    pub fn tracker_objective(&self, participant_index: usize) -> Result<PolynomialObjective> {
        if participant_index >= self.participants.len() {
            return Err(Error::Index(format!(
                "participant {participant_index} out of range for {}",
                self.participants.len()
            )));
        }
        let pools = self.candidate_pools()?;
        let pool = &pools[participant_index];
        let t_count = self.frames.len();
        let vertex_set = VertexSet::new(pool.iter().map(Vec::len).collect())?;
        let mut edges = Vec::with_capacity(2 * t_count - 1);
        for t in 0..t_count {
            edges.push(self.score_edge(t, &pool[t])?);
        }
        for t in 1..t_count {
            edges.push(self.coherence_edge(t, &pool[t - 1], &pool[t], t - 1, t)?);
        }
        PolynomialObjective::new(vertex_set, edges)
    }

    /// Joint objective for a one-participant, one-unary-word scenario: track
    /// vertices then state vertices, with detection-score, coherence, output,
    /// and transition edges.
    pub fn event_objective(&self) -> Result<PolynomialObjective> {
        if self.participants.len() != 1 || self.words.len() != 1 {
            return Err(Error::Build(format!(
                "event objective requires exactly one participant and one word, got {} and {}",
                self.participants.len(),
                self.words.len()
            )));
        }
        if self.words[0].arity != 1 {
            return Err(Error::Build(format!(
                "event objective requires a unary word, {:?} has arity {}",
                self.words[0].name, self.words[0].arity
            )));
        }
        self.sentence_objective()
    }

    /// The full joint objective. Vertex layout: track vertex `(l, t)` at id
    /// `l*T + t`, then state vertex `(w, t)` at id `L*T + w*T + t`. Edge
    /// order matches the discrete cost's summation order: per participant all
    /// detection-score then coherence edges, then per word all output then
    /// transition edges.
    pub fn sentence_objective(&self) -> Result<PolynomialObjective> {
        self.validate()?;
        let pools = self.candidate_pools()?;
        let t_count = self.frames.len();
        let l_count = self.participants.len();

        let mut label_counts = Vec::with_capacity((l_count + self.words.len()) * t_count);
        for pool in &pools {
            label_counts.extend(pool.iter().map(Vec::len));
        }
        for word in &self.words {
            label_counts.extend(std::iter::repeat(word.states).take(t_count));
        }
        let vertex_set = VertexSet::new(label_counts)?;
        let track_vertex = |l: usize, t: usize| l * t_count + t;
        let state_vertex = |w: usize, t: usize| l_count * t_count + w * t_count + t;

        let mut edges = Vec::new();
        for (l, pool) in pools.iter().enumerate() {
            for t in 0..t_count {
                let mut edge = self.score_edge(t, &pool[t])?;
                edge = retarget(edge, vec![track_vertex(l, t)])?;
                edges.push(edge);
            }
            for t in 1..t_count {
                let edge = self.coherence_edge(
                    t,
                    &pool[t - 1],
                    &pool[t],
                    track_vertex(l, t - 1),
                    track_vertex(l, t),
                )?;
                edges.push(edge);
            }
        }
        for (w, word) in self.words.iter().enumerate() {
            for t in 0..t_count {
                edges.push(self.output_edge(word, w, t, &pools, track_vertex, state_vertex)?);
            }
            for t in 1..t_count {
                let phi = Tensor::from_fn(&[word.states, word.states], |idx| {
                    word.log_transition[idx[0]][idx[1]]
                })?;
                edges.push(Hyperedge::new(
                    vec![state_vertex(w, t - 1), state_vertex(w, t)],
                    phi,
                )?);
            }
        }
        PolynomialObjective::new(vertex_set, edges)
    }

    fn score_edge(&self, t: usize, pool: &[usize]) -> Result<Hyperedge> {
        let frame = &self.frames[t];
        let phi = Tensor::new(
            vec![pool.len()],
            pool.iter().map(|&i| frame.detections[i].score).collect(),
        )?;
        Hyperedge::new(vec![t], phi)
    }

    fn coherence_edge(
        &self,
        t: usize,
        prev_pool: &[usize],
        cur_pool: &[usize],
        prev_vertex: usize,
        cur_vertex: usize,
    ) -> Result<Hyperedge> {
        let prev_frame = &self.frames[t - 1];
        let cur_frame = &self.frames[t];
        let sigma = self.coherence_sigma;
        let phi = Tensor::from_fn(&[prev_pool.len(), cur_pool.len()], |idx| {
            motion_coherence(
                &prev_frame.detections[prev_pool[idx[0]]],
                &cur_frame.detections[cur_pool[idx[1]]],
                sigma,
            )
        })?;
        Hyperedge::new(vec![prev_vertex, cur_vertex], phi)
    }

    fn output_edge(
        &self,
        word: &WordModel,
        w: usize,
        t: usize,
        pools: &[Vec<Vec<usize>>],
        track_vertex: impl Fn(usize, usize) -> usize,
        state_vertex: impl Fn(usize, usize) -> usize,
    ) -> Result<Hyperedge> {
        let frame = &self.frames[t];
        let mut vertices = vec![state_vertex(w, t)];
        let mut dims = vec![word.states];
        for &l in &word.theta {
            vertices.push(track_vertex(l, t));
            dims.push(pools[l][t].len());
        }
        let phi = Tensor::from_fn(&dims, |idx| {
            let output = &word.outputs[idx[0]];
            let dets: Vec<&Detection> = word
                .theta
                .iter()
                .zip(&idx[1..])
                .map(|(&l, &j)| &frame.detections[pools[l][t][j]])
                .collect();
            primitive_score(output, &dets).expect("scenario validation fixed the arity")
        })?;
        Hyperedge::new(vertices, phi)
    }

    /// Direct evaluation of the discrete cost: detection scores and coherence
    /// per participant, then output and transition scores per word, with the
    /// pairwise sums starting at the second frame.
    pub fn score_discrete(&self, tracks: &TrackCollection) -> Result<f64> {
        let pools = self.candidate_pools()?;
        let chosen = self.resolve_tracks(tracks, &pools)?;
        let t_count = self.frames.len();
        let mut acc = 0.0;
        for per_frame in &chosen {
            for t in 0..t_count {
                acc += self.frames[t].detections[per_frame[t]].score;
            }
            for t in 1..t_count {
                acc += motion_coherence(
                    &self.frames[t - 1].detections[per_frame[t - 1]],
                    &self.frames[t].detections[per_frame[t]],
                    self.coherence_sigma,
                );
            }
        }
        for (w, word) in self.words.iter().enumerate() {
            let states = &tracks.states[w];
            for t in 0..t_count {
                let dets: Vec<&Detection> = word
                    .theta
                    .iter()
                    .map(|&l| &self.frames[t].detections[chosen[l][t]])
                    .collect();
                acc += primitive_score(&word.outputs[states[t]], &dets)?;
            }
            for t in 1..t_count {
                acc += word.log_transition[states[t - 1]][states[t]];
            }
        }
        Ok(acc)
    }

    /// Maps detection ids to frame indices, validating pool membership and
    /// state ranges.
    fn resolve_tracks(
        &self,
        tracks: &TrackCollection,
        pools: &[Vec<Vec<usize>>],
    ) -> Result<Vec<Vec<usize>>> {
        let t_count = self.frames.len();
        if tracks.detection_ids.len() != self.participants.len() {
            return Err(Error::Shape(format!(
                "{} tracks for {} participants",
                tracks.detection_ids.len(),
                self.participants.len()
            )));
        }
        if tracks.states.len() != self.words.len() {
            return Err(Error::Shape(format!(
                "{} state sequences for {} words",
                tracks.states.len(),
                self.words.len()
            )));
        }
        let mut chosen = Vec::with_capacity(tracks.detection_ids.len());
        for (l, ids) in tracks.detection_ids.iter().enumerate() {
            if ids.len() != t_count {
                return Err(Error::Shape(format!(
                    "track {l} has {} frames, expected {t_count}",
                    ids.len()
                )));
            }
            let mut per_frame = Vec::with_capacity(t_count);
            for (t, &id) in ids.iter().enumerate() {
                let index = pools[l][t]
                    .iter()
                    .copied()
                    .find(|&i| self.frames[t].detections[i].id == id)
                    .ok_or_else(|| {
                        Error::Index(format!(
                            "detection id {id} is not a candidate for participant {l} in frame {t}"
                        ))
                    })?;
                per_frame.push(index);
            }
            chosen.push(per_frame);
        }
        for (w, states) in tracks.states.iter().enumerate() {
            if states.len() != t_count {
                return Err(Error::Shape(format!(
                    "word {w} has {} states recorded, expected {t_count}",
                    states.len()
                )));
            }
            if let Some(&bad) = states.iter().find(|&&k| k >= self.words[w].states) {
                return Err(Error::Index(format!(
                    "state {bad} out of range for word {w} with {} states",
                    self.words[w].states
                )));
            }
        }
        Ok(chosen)
    }

    /// Maps a labeling of the sentence objective back to detection ids and
    /// state indices.
    pub fn extract_tracks(&self, labeling: &Labeling) -> Result<TrackCollection> {
        let pools = self.candidate_pools()?;
        let t_count = self.frames.len();
        let l_count = self.participants.len();
        let expected = (l_count + self.words.len()) * t_count;
        if labeling.0.len() != expected {
            return Err(Error::Shape(format!(
                "labeling has {} vertices, sentence objective has {expected}",
                labeling.0.len()
            )));
        }
        let mut detection_ids = Vec::with_capacity(l_count);
        for (l, pool) in pools.iter().enumerate() {
            let mut ids = Vec::with_capacity(t_count);
            for t in 0..t_count {
                let label = labeling.0[l * t_count + t];
                let index = *pool[t].get(label).ok_or_else(|| {
                    Error::Index(format!(
                        "label {label} out of range for participant {l} in frame {t}"
                    ))
                })?;
                ids.push(self.frames[t].detections[index].id);
            }
            detection_ids.push(ids);
        }
        let mut states = Vec::with_capacity(self.words.len());
        for (w, word) in self.words.iter().enumerate() {
            let mut seq = Vec::with_capacity(t_count);
            for t in 0..t_count {
                let state = labeling.0[l_count * t_count + w * t_count + t];
                if state >= word.states {
                    return Err(Error::Index(format!(
                        "state {state} out of range for word {w} with {} states",
                        word.states
                    )));
                }
                seq.push(state);
            }
            states.push(seq);
        }
        Ok(TrackCollection {
            detection_ids,
            states,
        })
    }

    /// Inverse of [`extract_tracks`](Self::extract_tracks): the sentence-objective
    /// labeling selecting the given detection ids and states.
    pub fn tracks_to_labeling(&self, tracks: &TrackCollection) -> Result<Labeling> {
        let pools = self.candidate_pools()?;
        let chosen = self.resolve_tracks(tracks, &pools)?;
        let t_count = self.frames.len();
        let mut labels = Vec::with_capacity((chosen.len() + tracks.states.len()) * t_count);
        for (l, per_frame) in chosen.iter().enumerate() {
            for (t, &index) in per_frame.iter().enumerate() {
                let label = pools[l][t]
                    .iter()
                    .position(|&i| i == index)
                    .expect("resolved index came from this pool");
                labels.push(label);
            }
        }
        for states in &tracks.states {
            labels.extend_from_slice(states);
        }
        Ok(Labeling(labels))
    }
}

impl WordModel {
    /// MAP-style objective for this word along a fixed track: one vertex per
    /// frame with state labels, unary output edges, and binary transition
    /// edges between consecutive frames.
    pub fn map_objective(&self, fixed_track: &[Vec<Detection>]) -> Result<PolynomialObjective> {
        if fixed_track.is_empty() {
            return Err(Error::Build("fixed track must cover at least one frame".into()));
        }
        for (t, dets) in fixed_track.iter().enumerate() {
            if dets.len() != self.arity {
                return Err(Error::Build(format!(
                    "word {:?} has arity {} but frame {t} of the fixed track holds {} detections",
                    self.name,
                    self.arity,
                    dets.len()
                )));
            }
        }
        let t_count = fixed_track.len();
        let vertex_set = VertexSet::new(vec![self.states; t_count])?;
        let mut edges = Vec::with_capacity(2 * t_count - 1);
        for (t, dets) in fixed_track.iter().enumerate() {
            let refs: Vec<&Detection> = dets.iter().collect();
            let mut values = Vec::with_capacity(self.states);
            for output in &self.outputs {
                values.push(primitive_score(output, &refs)?);
            }
            edges.push(Hyperedge::new(vec![t], Tensor::new(vec![self.states], values)?)?);
        }
        for t in 1..t_count {
            let phi = Tensor::from_fn(&[self.states, self.states], |idx| {
                self.log_transition[idx[0]][idx[1]]
            })?;
            edges.push(Hyperedge::new(vec![t - 1, t], phi)?);
        }
        PolynomialObjective::new(vertex_set, edges)
    }
}

/// Rebinds an edge built with local vertex ids onto global ids.
fn retarget(edge: Hyperedge, vertices: Vec<usize>) -> Result<Hyperedge> {
    Hyperedge::new(vertices, edge.phi().clone())
}
