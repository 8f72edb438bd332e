//! Tree assignments, their flattened labelled multigraphs, star realizations
//! and crossing numbers.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::Limits;
use crate::partition::{enumerate_partitions_capped, Partition};
use crate::unionfind::UnionFind;

/// A graph edge carrying the hyperedge label it came from. `slot` numbers the
/// edges of one label in tree order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledEdge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
    pub slot: usize,
}

impl LabelledEdge {
    pub fn crosses(&self, p: &Partition) -> bool {
        p.block_of(self.u) != p.block_of(self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledMultigraph {
    pub vertices: Vec<String>,
    /// Label names, indexed by `LabelledEdge::label`.
    pub labels: Vec<String>,
    /// Canonical `(label, slot)` order.
    pub edges: Vec<LabelledEdge>,
}

impl LabelledMultigraph {
    pub fn t(&self) -> usize {
        self.vertices.len()
    }

    /// Position of `(label, slot)` in the edge list.
    pub fn position(&self, label: usize, slot: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label && e.slot == slot)
    }

    /// `label/slot` key used by the JSON documents.
    pub fn edge_key(&self, index: usize) -> String {
        let e = &self.edges[index];
        format!("{}/{}", self.labels[e.label], e.slot)
    }
}

/// One tree per hyperedge, as vertex-id pairs, indexed like `host.edges()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAssignment {
    host: Hypergraph,
    trees: Vec<Vec<(usize, usize)>>,
}

impl TreeAssignment {
    /// Pair a host with per-label edge lists. Tree validity is checked by
    /// [`validate_assignment`], not here.
    pub fn new(host: Hypergraph, trees: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if trees.len() != host.edges().len() {
            return Err(Error::InvalidParameter(format!(
                "{} trees given for {} hyperedges",
                trees.len(),
                host.edges().len()
            )));
        }
        let t = host.t();
        for tree in &trees {
            for &(u, v) in tree {
                if u >= t || v >= t {
                    return Err(Error::VertexOutOfRange { id: u.max(v), t });
                }
            }
        }
        Ok(TreeAssignment { host, trees })
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn trees(&self) -> &[Vec<(usize, usize)>] {
        &self.trees
    }

    pub fn tree(&self, label: usize) -> &[(usize, usize)] {
        &self.trees[label]
    }

    /// Rename labels and vertices as in [`Hypergraph::disjoint_copy`].
    pub fn disjoint_copy(&self, suffix: &str, keep: Option<usize>) -> Self {
        TreeAssignment {
            host: self.host.disjoint_copy(suffix, keep),
            trees: self.trees.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignmentFault {
    Disconnected,
    Cyclic,
    WrongVertexSet,
    WrongEdgeCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentDiagnostic {
    pub label: String,
    pub fault: AssignmentFault,
}

impl fmt::Display for AssignmentDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.fault {
            AssignmentFault::Disconnected => "disconnected".to_string(),
            AssignmentFault::Cyclic => "cyclic".to_string(),
            AssignmentFault::WrongVertexSet => "wrong vertex set".to_string(),
            AssignmentFault::WrongEdgeCount { expected, got } => {
                format!("wrong edge count (expected {expected}, got {got})")
            }
        };
        write!(f, "tree for `{}`: {what}", self.label)
    }
}

/// Check that a tree on `support` (sorted) is given by `edges`.
pub(crate) fn check_spanning_tree(support: &[usize], edges: &[(usize, usize)]) -> Option<AssignmentFault> {
    let local = |x: usize| support.binary_search(&x).ok();
    let mut mapped = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        match (local(u), local(v)) {
            (Some(a), Some(b)) if a != b => mapped.push((a, b)),
            (Some(a), Some(b)) if a == b => return Some(AssignmentFault::Cyclic),
            _ => return Some(AssignmentFault::WrongVertexSet),
        }
    }
    if edges.len() != support.len() - 1 {
        return Some(AssignmentFault::WrongEdgeCount {
            expected: support.len() - 1,
            got: edges.len(),
        });
    }
    let mut uf = UnionFind::new(support.len());
    for (a, b) in mapped {
        if !uf.union(a, b) {
            return Some(AssignmentFault::Cyclic);
        }
    }
    if uf.components() != 1 {
        return Some(AssignmentFault::Disconnected);
    }
    None
}

/// Confirm every `F_e` is a spanning tree of `support(e)`; the diagnostic
/// names the first offending label.
pub fn validate_assignment(a: &TreeAssignment) -> std::result::Result<(), AssignmentDiagnostic> {
    for (edge, tree) in a.host.edges().iter().zip(&a.trees) {
        if let Some(fault) = check_spanning_tree(&edge.support, tree) {
            return Err(AssignmentDiagnostic {
                label: edge.label.clone(),
                fault,
            });
        }
    }
    Ok(())
}

/// The disjoint union `G` of all assigned trees.
pub fn flatten(a: &TreeAssignment) -> Result<LabelledMultigraph> {
    validate_assignment(a).map_err(Error::InvalidAssignment)?;
    let edges = a
        .trees
        .iter()
        .enumerate()
        .flat_map(|(label, tree)| {
            tree.iter().enumerate().map(move |(slot, &(u, v))| LabelledEdge {
                u: u.min(v),
                v: u.max(v),
                label,
                slot,
            })
        })
        .collect();
    Ok(LabelledMultigraph {
        vertices: a.host.vertices().to_vec(),
        labels: a.host.labels().map(str::to_string).collect(),
        edges,
    })
}

/// A chosen center for every hyperedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterMap(Vec<usize>);

impl CenterMap {
    pub fn new(h: &Hypergraph, centers: Vec<usize>) -> Result<Self> {
        if centers.len() != h.edges().len() {
            return Err(Error::InvalidParameter(format!(
                "{} centers given for {} hyperedges",
                centers.len(),
                h.edges().len()
            )));
        }
        for (e, &c) in h.edges().iter().zip(&centers) {
            if !e.contains(c) {
                return Err(Error::CenterNotInSupport {
                    label: e.label.clone(),
                    center: c,
                });
            }
        }
        Ok(CenterMap(centers))
    }

    /// Every edge centered at its smallest vertex.
    pub fn first_vertex(h: &Hypergraph) -> Self {
        CenterMap(h.edges().iter().map(|e| e.support[0]).collect())
    }

    pub fn center(&self, label: usize) -> usize {
        self.0[label]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Edges of the star `S_e(c)`, in support order.
pub fn star_edges(support: &[usize], center: usize) -> Vec<(usize, usize)> {
    support.iter().filter(|&&u| u != center).map(|&u| (center, u)).collect()
}

/// Assign every hyperedge the star at its center. Rank-two edges get their
/// unique edge whatever the center.
pub fn star_assignment(h: &Hypergraph, centers: &CenterMap) -> Result<TreeAssignment> {
    let checked = CenterMap::new(h, centers.0.clone())?;
    let trees = h
        .edges()
        .iter()
        .zip(&checked.0)
        .map(|(e, &c)| {
            if e.rank() == 2 {
                vec![(e.support[0], e.support[1])]
            } else {
                star_edges(&e.support, c)
            }
        })
        .collect();
    TreeAssignment::new(h.clone(), trees)
}

/// If every tree of `a` is a star, the centers (rank-two edges report their
/// smaller endpoint).
pub fn star_centers(a: &TreeAssignment) -> Option<CenterMap> {
    let mut centers = Vec::with_capacity(a.trees.len());
    for (e, tree) in a.host.edges().iter().zip(&a.trees) {
        if check_spanning_tree(&e.support, tree).is_some() {
            return None;
        }
        if e.rank() == 2 {
            centers.push(e.support[0]);
            continue;
        }
        let center = e
            .support
            .iter()
            .copied()
            .find(|&c| tree.iter().all(|&(u, v)| u == c || v == c))?;
        centers.push(center);
    }
    Some(CenterMap(centers))
}

/// Number of edges of `g` whose endpoints lie in distinct blocks.
pub fn crossing_count(g: &LabelledMultigraph, p: &Partition) -> Result<usize> {
    p.expect_len(g.t())?;
    Ok(g.edges.iter().filter(|e| e.crosses(p)).count())
}

/// [`crossing_count`] restricted to one label.
pub fn crossing_count_label(g: &LabelledMultigraph, label: &str, p: &Partition) -> Result<usize> {
    p.expect_len(g.t())?;
    let id = g
        .labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    Ok(g.edges.iter().filter(|e| e.label == id && e.crosses(p)).count())
}

/// Crossing number of a plain edge list.
pub fn tree_crossing(edges: &[(usize, usize)], p: &Partition) -> usize {
    edges.iter().filter(|&&(u, v)| p.block_of(u) != p.block_of(v)).count()
}

/// The three terms of the star crossing formula
/// `cr = (p_P(e) - 1) + lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarCrossing {
    /// `sum over noncenter blocks P of |P ∩ e|`.
    pub crossing: usize,
    pub incidence_minus_one: usize,
    /// `sum over noncenter blocks P of max(0, |P ∩ e| - 1)`.
    pub lambda: usize,
}

pub fn star_crossing_decomposition(support: &[usize], center: usize, p: &Partition) -> Result<StarCrossing> {
    if !support.contains(&center) {
        return Err(Error::CenterNotInSupport {
            label: format!("{support:?}"),
            center,
        });
    }
    if let Some(&v) = support.iter().find(|&&v| v >= p.len()) {
        return Err(Error::VertexOutOfRange { id: v, t: p.len() });
    }
    let center_block = p.block_of(center);
    let mut meet = vec![0usize; p.num_blocks()];
    for &v in support {
        meet[p.block_of(v)] += 1;
    }
    let noncenter = meet
        .iter()
        .enumerate()
        .filter(|&(b, &m)| b != center_block && m > 0)
        .map(|(_, &m)| m);
    let (mut crossing, mut blocks, mut lambda) = (0, 0, 0);
    for m in noncenter {
        crossing += m;
        blocks += 1;
        lambda += m - 1;
    }
    Ok(StarCrossing {
        crossing,
        incidence_minus_one: blocks,
        lambda,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessVerdict {
    pub holds: bool,
    pub witness: Option<(String, Partition)>,
}

/// Whether `cr_{F_e}(P) = p_P(e) - 1` for every label and every partition.
pub fn is_partition_tight(a: &TreeAssignment, limits: &Limits) -> Result<TightnessVerdict> {
    validate_assignment(a).map_err(Error::InvalidAssignment)?;
    let t = a.host.t();
    enumerate_partitions_capped(t, limits)?;
    for (index, tree) in a.trees.iter().enumerate() {
        for p in enumerate_partitions_capped(t, limits)? {
            if tree_crossing(tree, &p) != a.host.incidence_at(index, &p) - 1 {
                return Ok(TightnessVerdict {
                    holds: false,
                    witness: Some((a.host.edge(index).label.clone(), p)),
                });
            }
        }
    }
    Ok(TightnessVerdict {
        holds: true,
        witness: None,
    })
}

/// Decode a Prüfer sequence over local indices `0..n` into tree edges.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All labelled spanning trees on `support`, in lexicographic Prüfer order.
pub fn labelled_trees(support: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = support.len();
    if n == 2 {
        return vec![vec![(support[0], support[1])]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let tree = prufer_decode(&seq, n)
            .into_iter()
            .map(|(a, b)| (support[a], support[b]))
            .collect();
        out.push(tree);
        // odometer increment
        let mut i = seq.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Stream of every tree assignment of a hypergraph: labels combined in order,
/// the first label most significant, each label's trees in Prüfer order.
#[derive(Debug, Clone)]
pub struct Assignments {
    host: Hypergraph,
    choices: Vec<Vec<Vec<(usize, usize)>>>,
    cursor: Vec<usize>,
    done: bool,
}

impl Assignments {
    /// Number of assignments still ahead of a fresh stream.
    pub fn total(&self) -> u128 {
        self.choices.iter().map(|c| c.len() as u128).product()
    }
}

pub fn enumerate_assignments(h: &Hypergraph, limits: &Limits) -> Result<Assignments> {
    for e in h.edges() {
        limits.check_support(e.rank())?;
    }
    let choices: Vec<_> = h.edges().iter().map(|e| labelled_trees(&e.support)).collect();
    Ok(Assignments {
        host: h.clone(),
        cursor: vec![0; choices.len()],
        choices,
        done: false,
    })
}

impl Iterator for Assignments {
    type Item = TreeAssignment;

    fn next(&mut self) -> Option<TreeAssignment> {
        if self.done {
            return None;
        }
        let trees = self
            .cursor
            .iter()
            .zip(&self.choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let mut i = self.cursor.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cursor[i] += 1;
            if self.cursor[i] < self.choices[i].len() {
                break;
            }
            self.cursor[i] = 0;
        }
        Some(TreeAssignment {
            host: self.host.clone(),
            trees,
        })
    }
}
