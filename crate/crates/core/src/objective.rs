//! Simplex-constrained polynomial objectives over labeled hypergraphs.
//!
//! An objective is a sum of terms, one per hyperedge: the expectation of the
//! edge's compatibility tensor under the product of the member vertices' label
//! distributions. At one-hot distributions this reduces to the plain sum of
//! the selected tensor entries, so maximizing over distributions relaxes the
//! discrete labeling problem without moving the optimum.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when validating that a distribution block sums to one.
pub const SIMPLEX_SUM_TOLERANCE: f64 = 1e-9;

/// Default cap on exhaustive enumeration, in labeling configurations.
pub const BRUTE_FORCE_CAP: u64 = 1_000_000;

const PAD_LABELS: usize = 2;

/// The vertices of the hypergraph, each carrying a finite label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    label_counts: Vec<usize>,
}

impl VertexSet {
    pub fn new(label_counts: Vec<usize>) -> Result<Self> {
        if label_counts.is_empty() {
            return Err(Error::Parameter("vertex set must be nonempty".into()));
        }
        if let Some(u) = label_counts.iter().position(|&c| c == 0) {
            return Err(Error::Parameter(format!("vertex {u} has no labels")));
        }
        Ok(Self { label_counts })
    }

    pub fn len(&self) -> usize {
        self.label_counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label_counts.is_empty()
    }

    pub fn label_count(&self, vertex: usize) -> usize {
        self.label_counts[vertex]
    }

    pub fn label_counts(&self) -> &[usize] {
        &self.label_counts
    }

    /// Number of discrete labelings, saturating at `u128::MAX`.
    pub fn configurations(&self) -> u128 {
        self.label_counts
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
            .unwrap_or(u128::MAX)
    }
}

/// Dense row-major tensor of compatibility values, one axis per edge vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let expected: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape("tensor axes must all be nonempty".into()));
        }
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "tensor with dims {dims:?} needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    /// Builds a tensor by calling `f` on every index tuple in row-major order.
    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape("tensor axes must all be nonempty".into()));
        }
        let total: usize = dims.iter().product();
        let mut data = Vec::with_capacity(total);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..total {
            data.push(f(&idx));
            for axis in (0..dims.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < dims[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(Self {
            dims: dims.to_vec(),
            data,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        let mut off = 0usize;
        for (axis, &i) in index.iter().enumerate() {
            debug_assert!(i < self.dims[axis]);
            off = off * self.dims[axis] + i;
        }
        off
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[self.offset(index)]
    }

    fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// One term of the objective: an ordered tuple of distinct vertices and the
/// compatibility tensor scoring their joint label choice.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    vertices: Vec<usize>,
    phi: Tensor,
}

impl Hyperedge {
    pub fn new(vertices: Vec<usize>, phi: Tensor) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Parameter("hyperedge must touch at least one vertex".into()));
        }
        for (i, u) in vertices.iter().enumerate() {
            if vertices[..i].contains(u) {
                return Err(Error::Parameter(format!(
                    "hyperedge vertices must be distinct, vertex {u} repeats"
                )));
            }
        }
        if phi.dims().len() != vertices.len() {
            return Err(Error::Shape(format!(
                "hyperedge over {} vertices carries a rank-{} tensor",
                vertices.len(),
                phi.dims().len()
            )));
        }
        if let Some(bad) = phi.data().iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!(
                "tensor entry {bad} is not finite"
            )));
        }
        Ok(Self { vertices, phi })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn phi(&self) -> &Tensor {
        &self.phi
    }

    pub fn degree(&self) -> usize {
        self.vertices.len()
    }
}

/// A labeling of every vertex by one label index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling(pub Vec<usize>);

/// Per-vertex label distributions: the relaxed unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelDistributions {
    blocks: Vec<Vec<f64>>,
}

impl LabelDistributions {
    /// Validates nonnegativity and the sum-to-one constraint per block.
    pub fn new(vertex_set: &VertexSet, blocks: Vec<Vec<f64>>) -> Result<Self> {
        if blocks.len() != vertex_set.len() {
            return Err(Error::Shape(format!(
                "{} blocks for {} vertices",
                blocks.len(),
                vertex_set.len()
            )));
        }
        for (u, block) in blocks.iter().enumerate() {
            if block.len() != vertex_set.label_count(u) {
                return Err(Error::Shape(format!(
                    "vertex {u} has {} labels but block has {} entries",
                    vertex_set.label_count(u),
                    block.len()
                )));
            }
            if block.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::Parameter(format!(
                    "vertex {u} block has a negative or non-finite entry"
                )));
            }
            let sum: f64 = block.iter().sum();
            if (sum - 1.0).abs() > SIMPLEX_SUM_TOLERANCE {
                return Err(Error::Parameter(format!(
                    "vertex {u} block sums to {sum}, not 1"
                )));
            }
        }
        Ok(Self { blocks })
    }

    /// Skips the simplex checks. Intended for numerical probes such as
    /// finite-difference perturbations that leave the simplex slightly.
    pub fn from_blocks_unchecked(blocks: Vec<Vec<f64>>) -> Self {
        Self { blocks }
    }

    pub fn uniform(vertex_set: &VertexSet) -> Self {
        let blocks = vertex_set
            .label_counts()
            .iter()
            .map(|&c| vec![1.0 / c as f64; c])
            .collect();
        Self { blocks }
    }

    pub fn one_hot(vertex_set: &VertexSet, labeling: &Labeling) -> Result<Self> {
        if labeling.0.len() != vertex_set.len() {
            return Err(Error::Shape(format!(
                "labeling of {} vertices for a vertex set of {}",
                labeling.0.len(),
                vertex_set.len()
            )));
        }
        let mut blocks = Vec::with_capacity(vertex_set.len());
        for (u, &label) in labeling.0.iter().enumerate() {
            let count = vertex_set.label_count(u);
            if label >= count {
                return Err(Error::Index(format!(
                    "label {label} out of range for vertex {u} with {count} labels"
                )));
            }
            let mut block = vec![0.0; count];
            block[label] = 1.0;
            blocks.push(block);
        }
        Ok(Self { blocks })
    }

    /// Strictly positive random start: i.i.d. uniform(0,1] entries, normalized.
    pub fn random<R: Rng + ?Sized>(vertex_set: &VertexSet, rng: &mut R) -> Self {
        let blocks = vertex_set
            .label_counts()
            .iter()
            .map(|&c| {
                let mut block: Vec<f64> = (0..c).map(|_| 1.0 - rng.gen::<f64>()).collect();
                let sum: f64 = block.iter().sum();
                for p in &mut block {
                    *p /= sum;
                }
                block
            })
            .collect();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<f64>] {
        &self.blocks
    }

    pub fn block(&self, vertex: usize) -> &[f64] {
        &self.blocks[vertex]
    }

    pub fn into_blocks(self) -> Vec<Vec<f64>> {
        self.blocks
    }

    /// Total number of stored entries across all blocks.
    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// The labeling obtained by per-vertex argmax, lowest index on ties.
    pub fn greedy_labeling(&self) -> Labeling {
        Labeling(
            self.blocks
                .iter()
                .map(|block| {
                    let mut best = 0usize;
                    for (i, &p) in block.iter().enumerate() {
                        if p > block[best] {
                            best = i;
                        }
                    }
                    best
                })
                .collect(),
        )
    }
}

/// Per-edge constants that make every coefficient nonnegative when added,
/// shifting the objective by `total` without moving its optima.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftConstants {
    per_edge: Vec<f64>,
    per_vertex: Vec<f64>,
    total: f64,
}

impl ShiftConstants {
    pub fn per_edge(&self) -> &[f64] {
        &self.per_edge
    }

    /// For each vertex, the sum of edge constants over edges containing it —
    /// the uniform amount added to that block's gradient on the simplex.
    pub fn per_vertex(&self) -> &[f64] {
        &self.per_vertex
    }

    pub fn total(&self) -> f64 {
        self.total
    }
}

/// The full polynomial objective: a vertex set plus compatibility hyperedges.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialObjective {
    vertex_set: VertexSet,
    hyperedges: Vec<Hyperedge>,
    max_degree: usize,
}

impl PolynomialObjective {
    pub fn new(vertex_set: VertexSet, hyperedges: Vec<Hyperedge>) -> Result<Self> {
        for (e, edge) in hyperedges.iter().enumerate() {
            for (axis, &u) in edge.vertices().iter().enumerate() {
                if u >= vertex_set.len() {
                    return Err(Error::Shape(format!(
                        "edge {e} references vertex {u}, but there are {}",
                        vertex_set.len()
                    )));
                }
                let extent = edge.phi().dims()[axis];
                let labels = vertex_set.label_count(u);
                if extent != labels {
                    return Err(Error::Shape(format!(
                        "edge {e} axis {axis} has extent {extent} but vertex {u} has {labels} labels"
                    )));
                }
            }
        }
        let max_degree = hyperedges.iter().map(Hyperedge::degree).max().unwrap_or(0);
        Ok(Self {
            vertex_set,
            hyperedges,
            max_degree,
        })
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertex_set
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_dists(&self, dists: &LabelDistributions) -> Result<()> {
        if dists.blocks.len() != self.vertex_set.len() {
            return Err(Error::Shape(format!(
                "{} distribution blocks for {} vertices",
                dists.blocks.len(),
                self.vertex_set.len()
            )));
        }
        for (u, block) in dists.blocks.iter().enumerate() {
            if block.len() != self.vertex_set.label_count(u) {
                return Err(Error::Shape(format!(
                    "vertex {u} block has {} entries, expected {}",
                    block.len(),
                    self.vertex_set.label_count(u)
                )));
            }
        }
        Ok(())
    }

    /// Exact multilinear evaluation: the sum over hyperedges of the expected
    /// compatibility under the product of the member distributions.
    pub fn evaluate(&self, dists: &LabelDistributions) -> Result<f64> {
        self.check_dists(dists)?;
        let mut total = 0.0;
        for edge in &self.hyperedges {
            total += edge_value(edge, &dists.blocks);
        }
        Ok(total)
    }

    /// Analytic gradient: for every vertex and label, the expectation of the
    /// touching edges' tensors over the other member distributions.
    pub fn gradient(&self, dists: &LabelDistributions) -> Result<Vec<Vec<f64>>> {
        Ok(self.value_and_gradient(dists)?.1)
    }

    /// Evaluation and gradient in one pass over the edge tensors.
    pub fn value_and_gradient(&self, dists: &LabelDistributions) -> Result<(f64, Vec<Vec<f64>>)> {
        self.check_dists(dists)?;
        let mut grad: Vec<Vec<f64>> = self
            .vertex_set
            .label_counts()
            .iter()
            .map(|&c| vec![0.0; c])
            .collect();
        let mut total = 0.0;
        for edge in &self.hyperedges {
            total += edge_value_and_gradient(edge, &dists.blocks, &mut grad);
        }
        Ok((total, grad))
    }

    /// The gradient restricted to one vertex block, touching only the edges
    /// that contain it.
    pub fn gradient_block(&self, dists: &LabelDistributions, vertex: usize) -> Result<Vec<f64>> {
        self.check_dists(dists)?;
        if vertex >= self.vertex_set.len() {
            return Err(Error::Index(format!("vertex {vertex} out of range")));
        }
        let mut block = vec![0.0; self.vertex_set.label_count(vertex)];
        for edge in &self.hyperedges {
            if let Some(axis) = edge.vertices().iter().position(|&u| u == vertex) {
                edge_partial(edge, &dists.blocks, axis, &mut block);
            }
        }
        Ok(block)
    }

    /// The plain compatibility sum of a discrete labeling, accumulated in
    /// hyperedge order.
    pub fn labeling_value(&self, labeling: &Labeling) -> Result<f64> {
        if labeling.0.len() != self.vertex_set.len() {
            return Err(Error::Shape(format!(
                "labeling of {} vertices for a vertex set of {}",
                labeling.0.len(),
                self.vertex_set.len()
            )));
        }
        for (u, &label) in labeling.0.iter().enumerate() {
            if label >= self.vertex_set.label_count(u) {
                return Err(Error::Index(format!(
                    "label {label} out of range for vertex {u}"
                )));
            }
        }
        let mut index = Vec::new();
        let mut total = 0.0;
        for edge in &self.hyperedges {
            index.clear();
            index.extend(edge.vertices().iter().map(|&u| labeling.0[u]));
            total += edge.phi().get(&index);
        }
        Ok(total)
    }

    /// Per-edge constants `max(epsilon, -min phi)`, their per-vertex sums, and
    /// the total shift of the objective.
    pub fn shift_constants(&self, epsilon: f64) -> Result<ShiftConstants> {
        if !(epsilon > 0.0) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let per_edge: Vec<f64> = self
            .hyperedges
            .iter()
            .map(|edge| epsilon.max(-edge.phi().min_entry()))
            .collect();
        let mut per_vertex = vec![0.0; self.vertex_set.len()];
        for (edge, &c) in self.hyperedges.iter().zip(&per_edge) {
            for &u in edge.vertices() {
                per_vertex[u] += c;
            }
        }
        let total = per_edge.iter().sum();
        Ok(ShiftConstants {
            per_edge,
            per_vertex,
            total,
        })
    }

    /// Explicitly homogenized copy: every term of degree `m < N` gains
    /// `N - m` fresh padding vertices whose label sums are one on the simplex.
    /// A testing aid; optimization never materializes this form.
    pub fn homogenize(&self) -> Self {
        let target = self.max_degree;
        if self.hyperedges.iter().all(|e| e.degree() == target) {
            return self.clone();
        }
        let mut label_counts = self.vertex_set.label_counts().to_vec();
        let mut edges = Vec::with_capacity(self.hyperedges.len());
        for edge in &self.hyperedges {
            let missing = target - edge.degree();
            if missing == 0 {
                edges.push(edge.clone());
                continue;
            }
            let mut vertices = edge.vertices().to_vec();
            let mut dims = edge.phi().dims().to_vec();
            for _ in 0..missing {
                vertices.push(label_counts.len());
                label_counts.push(PAD_LABELS);
                dims.push(PAD_LABELS);
            }
            let copies = PAD_LABELS.pow(missing as u32);
            let data: Vec<f64> = edge
                .phi()
                .data()
                .iter()
                .flat_map(|&v| std::iter::repeat(v).take(copies))
                .collect();
            let phi = Tensor::new(dims, data).expect("padded tensor is well formed");
            edges.push(Hyperedge::new(vertices, phi).expect("padded edge is well formed"));
        }
        let vertex_set = VertexSet::new(label_counts).expect("padded vertex set is well formed");
        Self::new(vertex_set, edges).expect("homogenized objective is well formed")
    }

    /// Number of discrete labelings, saturating at `u128::MAX`.
    pub fn configurations(&self) -> u128 {
        self.vertex_set.configurations()
    }

    /// Exhaustive maximization under the default configuration cap.
    pub fn brute_force_max(&self) -> Result<(Labeling, f64)> {
        self.brute_force_max_capped(BRUTE_FORCE_CAP)
    }

    /// Exhaustive maximization; ties go to the lexicographically smallest
    /// labeling because enumeration is ascending and replacement is strict.
    pub fn brute_force_max_capped(&self, cap: u64) -> Result<(Labeling, f64)> {
        let count = self.configurations();
        if count > cap as u128 {
            return Err(Error::BruteForceCapExceeded { count, cap });
        }
        let n = self.vertex_set.len();
        let mut current = Labeling(vec![0usize; n]);
        let mut best = current.clone();
        let mut best_value = self.labeling_value(&current)?;
        let mut remaining = count - 1;
        while remaining > 0 {
            remaining -= 1;
            for u in (0..n).rev() {
                current.0[u] += 1;
                if current.0[u] < self.vertex_set.label_count(u) {
                    break;
                }
                current.0[u] = 0;
            }
            let value = self.labeling_value(&current)?;
            if value > best_value {
                best_value = value;
                best = current.clone();
            }
        }
        Ok((best, best_value))
    }
}

fn edge_value(edge: &Hyperedge, blocks: &[Vec<f64>]) -> f64 {
    let phi = edge.phi();
    match edge.vertices() {
        [u] => {
            let x = &blocks[*u];
            let mut acc = 0.0;
            for (p, &v) in phi.data().iter().zip(x) {
                acc += p * v;
            }
            acc
        }
        [u1, u2] => {
            let x1 = &blocks[*u1];
            let x2 = &blocks[*u2];
            let d2 = phi.dims()[1];
            let mut acc = 0.0;
            for (i, &xi) in x1.iter().enumerate() {
                let row = &phi.data()[i * d2..(i + 1) * d2];
                let mut s = 0.0;
                for (j, &xj) in x2.iter().enumerate() {
                    s += row[j] * xj;
                }
                acc += xi * s;
            }
            acc
        }
        vertices => {
            let axis_blocks: Vec<&[f64]> = vertices.iter().map(|&u| blocks[u].as_slice()).collect();
            value_rec(phi.data(), phi.dims(), &axis_blocks, 0, 0)
        }
    }
}

fn value_rec(data: &[f64], dims: &[usize], axis_blocks: &[&[f64]], depth: usize, offset: usize) -> f64 {
    let x = axis_blocks[depth];
    let extent = dims[depth];
    let mut total = 0.0;
    if depth + 1 == dims.len() {
        let row = &data[offset..offset + extent];
        for (l, &xl) in x.iter().enumerate() {
            total += row[l] * xl;
        }
    } else {
        let stride: usize = dims[depth + 1..].iter().product();
        for (l, &xl) in x.iter().enumerate() {
            let s = value_rec(data, dims, axis_blocks, depth + 1, offset + l * stride);
            total += xl * s;
        }
    }
    total
}

fn edge_value_and_gradient(edge: &Hyperedge, blocks: &[Vec<f64>], grad: &mut [Vec<f64>]) -> f64 {
    let phi = edge.phi();
    match edge.vertices() {
        [u] => {
            let x = &blocks[*u];
            let g = &mut grad[*u];
            let mut acc = 0.0;
            for (l, &p) in phi.data().iter().enumerate() {
                acc += p * x[l];
                g[l] += p;
            }
            acc
        }
        [u1, u2] => {
            let x1 = &blocks[*u1];
            let x2 = &blocks[*u2];
            let d2 = phi.dims()[1];
            // Local buffers so the two gradient blocks need not alias-check.
            let mut g1 = vec![0.0; x1.len()];
            let mut g2 = vec![0.0; d2];
            let mut acc = 0.0;
            for (i, &xi) in x1.iter().enumerate() {
                let row = &phi.data()[i * d2..(i + 1) * d2];
                let mut s = 0.0;
                for (j, &p) in row.iter().enumerate() {
                    s += p * x2[j];
                    g2[j] += xi * p;
                }
                g1[i] = s;
                acc += xi * s;
            }
            add_into(&mut grad[*u1], &g1);
            add_into(&mut grad[*u2], &g2);
            acc
        }
        vertices => {
            let axis_blocks: Vec<&[f64]> = vertices.iter().map(|&u| blocks[u].as_slice()).collect();
            let mut local: Vec<Vec<f64>> = axis_blocks.iter().map(|b| vec![0.0; b.len()]).collect();
            let acc = grad_rec(phi.data(), phi.dims(), &axis_blocks, &mut local, 0, 0, 1.0);
            for (&u, g) in vertices.iter().zip(&local) {
                add_into(&mut grad[u], g);
            }
            acc
        }
    }
}

/// Recursively sums `phi * prod(x)` over the axes at `depth..`, accumulating
/// into `local[d][l]` the derivative contribution `prefix * (sum over the
/// remaining axes)` for each axis `d` and label `l`.
fn grad_rec(
    data: &[f64],
    dims: &[usize],
    axis_blocks: &[&[f64]],
    local: &mut [Vec<f64>],
    depth: usize,
    offset: usize,
    prefix: f64,
) -> f64 {
    let x = axis_blocks[depth];
    let extent = dims[depth];
    let mut total = 0.0;
    if depth + 1 == dims.len() {
        let row = &data[offset..offset + extent];
        let g = &mut local[depth];
        for (l, &p) in row.iter().enumerate() {
            total += p * x[l];
            g[l] += prefix * p;
        }
    } else {
        let stride: usize = dims[depth + 1..].iter().product();
        for l in 0..extent {
            let xl = x[l];
            let s = grad_rec(
                data,
                dims,
                axis_blocks,
                local,
                depth + 1,
                offset + l * stride,
                prefix * xl,
            );
            total += xl * s;
            local[depth][l] += prefix * s;
        }
    }
    total
}

/// Partial derivative of one edge with respect to the block on `axis`.
fn edge_partial(edge: &Hyperedge, blocks: &[Vec<f64>], axis: usize, out: &mut [f64]) {
    let phi = edge.phi();
    let vertices = edge.vertices();
    match (vertices.len(), axis) {
        (1, _) => add_into(out, phi.data()),
        (2, 0) => {
            let x2 = &blocks[vertices[1]];
            let d2 = phi.dims()[1];
            for (i, o) in out.iter_mut().enumerate() {
                let row = &phi.data()[i * d2..(i + 1) * d2];
                let mut s = 0.0;
                for (j, &xj) in x2.iter().enumerate() {
                    s += row[j] * xj;
                }
                *o += s;
            }
        }
        (2, 1) => {
            let x1 = &blocks[vertices[0]];
            let d2 = phi.dims()[1];
            for (i, &xi) in x1.iter().enumerate() {
                let row = &phi.data()[i * d2..(i + 1) * d2];
                for (j, o) in out.iter_mut().enumerate() {
                    *o += xi * row[j];
                }
            }
        }
        _ => {
            let axis_blocks: Vec<&[f64]> = vertices.iter().map(|&u| blocks[u].as_slice()).collect();
            let mut local: Vec<Vec<f64>> = axis_blocks.iter().map(|b| vec![0.0; b.len()]).collect();
            grad_rec(phi.data(), phi.dims(), &axis_blocks, &mut local, 0, 0, 1.0);
            add_into(out, &local[axis]);
        }
    }
}

fn add_into(dst: &mut [f64], src: &[f64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}
