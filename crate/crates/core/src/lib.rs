//! Joint multi-object tracking and description scoring.
//!
//! A detection stream (scored candidate boxes per frame) is matched against a
//! structured description: a set of participants, each requiring a track, and
//! a set of word models (HMMs over spatiotemporal primitives) that constrain
//! those tracks jointly. The combinatorial assignment problem is expressed as
//! a polynomial over per-vertex label distributions ([`objective`]), maximized
//! by multiplicative growth-transform updates with restarts ([`gt`]), and
//! rounded to a discrete track collection. Exact dynamic-programming solvers
//! over the joint lattice ([`exact`]) serve as oracles at small scale.

pub mod error;
pub mod exact;
pub mod gt;
pub mod model;
pub mod objective;

pub use error::{Error, Result};
pub use exact::{
    estimate_viterbi_cost, viterbi_chain, viterbi_joint, viterbi_joint_capped, ChainProblem,
    CostEstimate, DenseChain,
};
pub use gt::{gt_step, optimize, optimize_with_restarts, round_solution, GtSchedule, GtStep, OptimizeTrace};
pub use model::{
    motion_coherence, primitive_score, Detection, Frame, Participant, PrimitiveKind, PrimitiveSpec,
    ScenarioSpec, TrackCollection, WordModel,
};
pub use objective::{
    Hyperedge, LabelDistributions, Labeling, PolynomialObjective, ShiftConstants, Tensor, VertexSet,
};
