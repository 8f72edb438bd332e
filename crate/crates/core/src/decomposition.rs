//! Ordered k-tree decompositions of labelled multigraphs and their
//! signatures.
//!
//! A decomposition is a layer index for every labelled edge, in the
//! multigraph's canonical `(label, slot)` order. Two decompositions are equal
//! exactly when their layer vectors are, so layers are ordered and parallel
//! edges with distinct slots are distinguished.

use std::collections::BTreeMap;
use std::fmt;

use crate::assignment::{flatten, LabelledMultigraph, TreeAssignment};
use crate::error::{Error, Result};
use crate::hypergraph::{is_k_critical, total_excess, Hypergraph};
use crate::limits::Limits;
use crate::unionfind::{RollbackUnionFind, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTreeDecomposition {
    k: usize,
    layer_of: Vec<usize>,
}

impl KTreeDecomposition {
    pub fn new(k: usize, layer_of: Vec<usize>) -> Self {
        KTreeDecomposition { k, layer_of }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn layer_of(&self) -> &[usize] {
        &self.layer_of
    }

    /// Edge positions in layer `i`.
    pub fn layer(&self, i: usize) -> Vec<usize> {
        (0..self.layer_of.len()).filter(|&j| self.layer_of[j] == i).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionDiagnostic {
    LengthMismatch { edges: usize, entries: usize },
    LayerOutOfRange { edge: usize, layer: usize, k: usize },
    EdgeCount { edges: usize, expected: usize },
    Cyclic { layer: usize },
    Disconnected { layer: usize },
}

impl fmt::Display for DecompositionDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::LengthMismatch { edges, entries } => {
                write!(f, "{entries} layer entries for {edges} edges")
            }
            Self::LayerOutOfRange { edge, layer, k } => {
                write!(f, "edge {edge} placed in layer {layer}, but k = {k}")
            }
            Self::EdgeCount { edges, expected } => {
                write!(f, "edge count {edges} != k(t-1) = {expected}")
            }
            Self::Cyclic { layer } => write!(f, "layer {layer} is not acyclic"),
            Self::Disconnected { layer } => write!(f, "layer {layer} is not connected"),
        }
    }
}

/// `Ok` iff `|E(g)| = k(t-1)` and every layer is a spanning tree.
pub fn validate_decomposition(g: &LabelledMultigraph, d: &KTreeDecomposition) -> std::result::Result<(), DecompositionDiagnostic> {
    let (t, k) = (g.t(), d.k);
    if d.layer_of.len() != g.edges.len() {
        return Err(DecompositionDiagnostic::LengthMismatch {
            edges: g.edges.len(),
            entries: d.layer_of.len(),
        });
    }
    if let Some((edge, &layer)) = d.layer_of.iter().enumerate().find(|(_, &l)| l >= k) {
        return Err(DecompositionDiagnostic::LayerOutOfRange { edge, layer, k });
    }
    if g.edges.len() != k * (t - 1) {
        return Err(DecompositionDiagnostic::EdgeCount {
            edges: g.edges.len(),
            expected: k * (t - 1),
        });
    }
    for layer in 0..k {
        let mut uf = UnionFind::new(t);
        for (e, _) in g.edges.iter().zip(&d.layer_of).filter(|(_, &l)| l == layer) {
            if !uf.union(e.u, e.v) {
                return Err(DecompositionDiagnostic::Cyclic { layer });
            }
        }
        if uf.components() != 1 {
            return Err(DecompositionDiagnostic::Disconnected { layer });
        }
    }
    Ok(())
}

/// Per-label `sum_i i * |E(T_i) ∩ E(F_e)|`, in host label order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignatureVector(pub Vec<usize>);

impl fmt::Display for SignatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn signature_of(g: &LabelledMultigraph, d: &KTreeDecomposition) -> SignatureVector {
    let mut sig = vec![0usize; g.labels.len()];
    for (e, &layer) in g.edges.iter().zip(&d.layer_of) {
        sig[e.label] += layer;
    }
    SignatureVector(sig)
}

pub fn signature(a: &TreeAssignment, d: &KTreeDecomposition) -> Result<SignatureVector> {
    let g = flatten(a)?;
    validate_decomposition(&g, d).map_err(Error::InvalidDecomposition)?;
    Ok(signature_of(&g, d))
}

/// `a_i(e)`: how many edges of each label sit in each layer.
pub fn layer_counts(g: &LabelledMultigraph, d: &KTreeDecomposition) -> Vec<Vec<usize>> {
    let mut counts = vec![vec![0usize; d.k]; g.labels.len()];
    for (e, &layer) in g.edges.iter().zip(&d.layer_of) {
        counts[e.label][layer] += 1;
    }
    counts
}

/// Backtracking stream of ordered decompositions.
///
/// Edges are placed in canonical order and layers are tried `0..k`, so the
/// stream is lexicographic in the layer vector. A branch is cut when an edge
/// would close a cycle or overfill a layer, or when some layer's remaining
/// undecided edges cannot join its current components.
#[derive(Debug, Clone)]
pub struct Decompositions {
    edges: Vec<(usize, usize)>,
    t: usize,
    k: usize,
    layers: Vec<RollbackUnionFind>,
    sizes: Vec<usize>,
    assigned: Vec<usize>,
    cursor: Vec<usize>,
    depth: usize,
    backtrack: bool,
    done: bool,
    count_prune: bool,
    nodes: u64,
}

/// All ordered `k`-tree decompositions of `g`; empty unless
/// `|E(g)| = k(t-1)`.
pub fn enumerate_decompositions(g: &LabelledMultigraph, k: usize) -> Decompositions {
    let mut d = Decompositions::exhaustive(g, k);
    d.count_prune = true;
    if g.edges.len() != k * (g.t() - 1) {
        d.done = true;
    }
    d
}

impl Decompositions {
    /// The search without any edge-count reasoning: neither the up-front
    /// check nor the per-node test that undecided edges exactly fill the
    /// layers. On a graph with the wrong edge count the backtracking runs to
    /// exhaustion and yields nothing.
    pub fn exhaustive(g: &LabelledMultigraph, k: usize) -> Self {
        let m = g.edges.len();
        Decompositions {
            edges: g.edges.iter().map(|e| (e.u, e.v)).collect(),
            t: g.t(),
            k,
            layers: vec![RollbackUnionFind::new(g.t()); k],
            sizes: vec![0; k],
            assigned: vec![0; m],
            cursor: vec![0; m + 1],
            depth: 0,
            backtrack: false,
            done: k == 0,
            count_prune: false,
            nodes: 0,
        }
    }

    /// Search nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn undo(&mut self, j: usize) {
        let layer = self.assigned[j];
        self.layers[layer].rollback();
        self.sizes[layer] -= 1;
    }

    // Each layer needs `t - 1 - size` more edges, each joining two of its
    // current components; the undecided edges from `from` on must provide a
    // spanning set of the layer's quotient.
    fn feasible(&self, from: usize) -> bool {
        if self.count_prune {
            let need_total: usize = self.sizes.iter().map(|&s| self.t - 1 - s).sum();
            if need_total != self.edges.len() - from {
                return false;
            }
        }
        for (layer, uf) in self.layers.iter().enumerate() {
            let need = self.t - 1 - self.sizes[layer];
            if need == 0 {
                continue;
            }
            let mut quotient = UnionFind::new(self.t);
            let mut joined = 0;
            for &(u, v) in &self.edges[from..] {
                if quotient.union(uf.find(u), uf.find(v)) {
                    joined += 1;
                    if joined == need {
                        break;
                    }
                }
            }
            if joined < need {
                return false;
            }
        }
        true
    }
}

impl Iterator for Decompositions {
    type Item = KTreeDecomposition;

    fn next(&mut self) -> Option<KTreeDecomposition> {
        let m = self.edges.len();
        loop {
            if self.done {
                return None;
            }
            if self.backtrack {
                self.backtrack = false;
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                self.undo(self.depth);
            }
            let j = self.depth;
            if j == m {
                self.backtrack = true;
                if self.sizes.iter().all(|&s| s == self.t - 1) {
                    return Some(KTreeDecomposition {
                        k: self.k,
                        layer_of: self.assigned.clone(),
                    });
                }
                continue;
            }
            let (u, v) = self.edges[j];
            let mut placed = false;
            while self.cursor[j] < self.k {
                let layer = self.cursor[j];
                self.cursor[j] += 1;
                self.nodes += 1;
                if self.sizes[layer] + 1 > self.t - 1 || !self.layers[layer].union(u, v) {
                    continue;
                }
                self.sizes[layer] += 1;
                self.assigned[j] = layer;
                if self.feasible(j + 1) {
                    placed = true;
                    break;
                }
                self.undo(j);
            }
            if placed {
                self.depth += 1;
                self.cursor[self.depth] = 0;
            } else {
                self.cursor[j] = 0;
                self.backtrack = true;
            }
        }
    }
}

/// Decompositions grouped by signature.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiberReport {
    pub fibers: BTreeMap<SignatureVector, Vec<KTreeDecomposition>>,
}

impl FiberReport {
    pub fn total(&self) -> usize {
        self.fibers.values().map(Vec::len).sum()
    }

    pub fn singletons(&self) -> impl Iterator<Item = (&SignatureVector, &KTreeDecomposition)> {
        self.fibers
            .iter()
            .filter(|(_, ds)| ds.len() == 1)
            .map(|(s, ds)| (s, &ds[0]))
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }
}

fn capped_graph(a: &TreeAssignment, k: usize, limits: &Limits) -> Result<LabelledMultigraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let g = flatten(a)?;
    limits.check_decomposition(g.edges.len(), k)?;
    Ok(g)
}

/// Group every ordered `k`-tree decomposition of `flatten(a)` by signature.
pub fn fibers(a: &TreeAssignment, k: usize, limits: &Limits) -> Result<FiberReport> {
    let g = capped_graph(a, k, limits)?;
    Ok(fibers_of(&g, k))
}

pub(crate) fn fibers_of(g: &LabelledMultigraph, k: usize) -> FiberReport {
    let mut report = FiberReport::default();
    for d in enumerate_decompositions(g, k) {
        report.fibers.entry(signature_of(g, &d)).or_default().push(d);
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDistinguishability {
    pub distinguishable: bool,
    /// Earliest decomposition (in enumeration order) alone in its fiber.
    pub witness: Option<KTreeDecomposition>,
    pub decompositions: usize,
    pub fibers: usize,
}

pub fn is_k_distinguishable_graph(a: &TreeAssignment, k: usize, limits: &Limits) -> Result<GraphDistinguishability> {
    let g = capped_graph(a, k, limits)?;
    Ok(distinguishability_of(&g, k))
}

pub(crate) fn distinguishability_of(g: &LabelledMultigraph, k: usize) -> GraphDistinguishability {
    let all: Vec<KTreeDecomposition> = enumerate_decompositions(g, k).collect();
    let mut sizes: BTreeMap<SignatureVector, usize> = BTreeMap::new();
    let sigs: Vec<SignatureVector> = all.iter().map(|d| signature_of(g, d)).collect();
    for s in &sigs {
        *sizes.entry(s.clone()).or_default() += 1;
    }
    let witness = all
        .iter()
        .zip(&sigs)
        .find(|(_, s)| sizes[*s] == 1)
        .map(|(d, _)| d.clone());
    GraphDistinguishability {
        distinguishable: witness.is_some(),
        witness,
        decompositions: all.len(),
        fibers: sizes.len(),
    }
}

/// Result of searching a hypergraph for a distinguishable tree assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignmentSearch {
    /// `rho(H) != k(t-1)`: no full tree assignment has the right edge count.
    ExcessObstruction { rho: usize, budget: usize },
    Found {
        assignment: TreeAssignment,
        decomposition: KTreeDecomposition,
        assignments_tried: u64,
    },
    NotFound { assignments_tried: u64 },
}

impl AssignmentSearch {
    pub fn found(&self) -> bool {
        matches!(self, AssignmentSearch::Found { .. })
    }
}

/// Whether some tree assignment of `h` is `k`-distinguishable.
pub fn has_k_distinguishable_assignment(h: &Hypergraph, k: usize, limits: &Limits) -> Result<AssignmentSearch> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !is_k_critical(h, k) {
        return Ok(AssignmentSearch::ExcessObstruction {
            rho: total_excess(h),
            budget: k * (h.t() - 1),
        });
    }
    limits.check_decomposition(total_excess(h), k)?;
    let mut tried = 0;
    for a in crate::assignment::enumerate_assignments(h, limits)? {
        tried += 1;
        let g = flatten(&a)?;
        if let Some(d) = distinguishability_of(&g, k).witness {
            return Ok(AssignmentSearch::Found {
                assignment: a,
                decomposition: d,
                assignments_tried: tried,
            });
        }
    }
    Ok(AssignmentSearch::NotFound { assignments_tried: tried })
}

/// The non-concentrated point `a_{c-1} = a_{c+1} = 1, a_c = n - 2` of the
/// interior fiber `{sum a_i = n, sum i a_i = c n}`.
pub fn interior_point(k: usize, c: usize, n: usize) -> Result<Vec<usize>> {
    if !(1..=k.saturating_sub(2)).contains(&c) || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "interior point needs 1 <= c <= k-2 and n >= 2 (k={k}, c={c}, n={n})"
        )));
    }
    let mut a = vec![0; k];
    a[c - 1] = 1;
    a[c] = n - 2;
    a[c + 1] = 1;
    Ok(a)
}

/// All `n` units at layer `c`.
pub fn concentrated_point(k: usize, c: usize, n: usize) -> Vec<usize> {
    let mut b = vec![0; k];
    b[c] = n;
    b
}

/// `(sum_i a_i, sum_i i a_i)`.
pub fn count_and_weight(a: &[usize]) -> (usize, usize) {
    (a.iter().sum(), a.iter().enumerate().map(|(i, x)| i * x).sum())
}

/// Two decompositions of one assignment that give a label the same layer
/// total at interior layer `c`, one concentrated there and one split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorSplit {
    pub label: String,
    pub concentrated: KTreeDecomposition,
    pub split: KTreeDecomposition,
    pub concentrated_counts: Vec<usize>,
    pub split_counts: Vec<usize>,
}

/// Search the decompositions of `flatten(a)` for an [`InteriorSplit`].
pub fn find_interior_split(a: &TreeAssignment, k: usize, c: usize, limits: &Limits) -> Result<Option<InteriorSplit>> {
    let g = capped_graph(a, k, limits)?;
    let all: Vec<(KTreeDecomposition, Vec<Vec<usize>>)> = enumerate_decompositions(&g, k)
        .map(|d| {
            let counts = layer_counts(&g, &d);
            (d, counts)
        })
        .collect();
    for (label, name) in g.labels.iter().enumerate() {
        let n = a.tree(label).len();
        if n < 2 {
            continue;
        }
        let want = concentrated_point(k, c, n);
        let Some((dc, cc)) = all.iter().find(|(_, counts)| counts[label] == want) else {
            continue;
        };
        let split = all.iter().find(|(_, counts)| {
            let x = &counts[label];
            x != &want && count_and_weight(x) == (n, c * n)
        });
        if let Some((ds, cs)) = split {
            return Ok(Some(InteriorSplit {
                label: name.clone(),
                concentrated: dc.clone(),
                split: ds.clone(),
                concentrated_counts: cc[label].clone(),
                split_counts: cs[label].clone(),
            }));
        }
    }
    Ok(None)
}
