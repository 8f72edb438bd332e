//! Named instances and the one-vertex sum.

use std::collections::HashSet;

use crate::assignment::{check_spanning_tree, star_assignment, CenterMap, TreeAssignment};
use crate::certificate::{LayerMap, TwoSidedStarCertificate};
use crate::decomposition::KTreeDecomposition;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::Limits;

fn numbered_vertices(t: usize) -> Vec<String> {
    (1..=t).map(|i| format!("v{i}")).collect()
}

/// `k + q` labelled copies `e1, e2, ..` of the full hyperedge on `t` vertices.
pub fn full_edge_bundle(t: usize, k: usize, q: usize) -> Result<Hypergraph> {
    if t < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("bundle needs t >= 2 and k >= 1 (t={t}, k={k})")));
    }
    let vertices = if t == 2 {
        vec!["a".to_string(), "b".to_string()]
    } else {
        numbered_vertices(t)
    };
    let edges = (1..=k + q).map(|j| (format!("e{j}"), (0..t).collect())).collect();
    Hypergraph::new(vertices, edges)
}

/// `m` labelled copies of `{x, y}`.
pub fn parallel_lines(m: usize) -> Result<Hypergraph> {
    if m < 1 {
        return Err(Error::InvalidParameter("parallel lines need m >= 1".into()));
    }
    let edges = (1..=m).map(|j| (format!("l{j}"), vec![0, 1])).collect();
    Hypergraph::new(vec!["x", "y"], edges)
}

/// Vertices `r, u1, .., u{t-1}`; two full hyperedges `e-`, `e+` realized as
/// stars at `c_minus` and `c_plus` in layers `0` and `k-1`, and the middle
/// spanning trees `middle[i-1]` as rank-two labels `m{i}.{j}` in layer `i`.
pub fn saturated_star_block(
    t: usize,
    k: usize,
    c_minus: usize,
    c_plus: usize,
    middle: &[Vec<(usize, usize)>],
) -> Result<(Hypergraph, TwoSidedStarCertificate)> {
    if t < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!("saturated block needs t >= 2 and k >= 2 (t={t}, k={k})")));
    }
    if middle.len() != k - 2 {
        return Err(Error::InvalidParameter(format!("{} middle trees given, k - 2 = {}", middle.len(), k - 2)));
    }
    if c_minus >= t || c_plus >= t {
        return Err(Error::VertexOutOfRange { id: c_minus.max(c_plus), t });
    }
    let all: Vec<usize> = (0..t).collect();
    for (i, tree) in middle.iter().enumerate() {
        if let Some(fault) = check_spanning_tree(&all, tree) {
            return Err(Error::InvalidParameter(format!("middle tree {} is not a spanning tree: {fault:?}", i + 1)));
        }
    }
    let vertices: Vec<String> = std::iter::once("r".to_string())
        .chain((1..t).map(|i| format!("u{i}")))
        .collect();
    let mut edges = vec![("e-".to_string(), all.clone())];
    let mut centers = vec![c_minus];
    let mut layers = vec![0];
    for (i, tree) in middle.iter().enumerate() {
        for (j, &(u, v)) in tree.iter().enumerate() {
            edges.push((format!("m{}.{}", i + 1, j + 1), vec![u, v]));
            centers.push(u.min(v));
            layers.push(i + 1);
        }
    }
    edges.push(("e+".to_string(), all));
    centers.push(c_plus);
    layers.push(k - 1);
    let h = Hypergraph::new(vertices, edges)?;
    let assignment = star_assignment(&h, &CenterMap::new(&h, centers)?)?;
    let cert = certificate_from_layers(assignment, k, LayerMap(layers));
    Ok((h, cert))
}

/// The fixed three-vertex block: `e- = {r,a,b}` as the star at `r` in layer
/// 0, `fa = {r,a}` and `fb = {r,b}` in layer 1.
pub fn nongraphic_triple_block() -> (Hypergraph, TwoSidedStarCertificate) {
    let h = Hypergraph::from_names(
        &["r", "a", "b"],
        &[("e-", &["r", "a", "b"]), ("fa", &["r", "a"]), ("fb", &["r", "b"])],
    )
    .expect("fixed instance");
    let assignment = star_assignment(&h, &CenterMap::new(&h, vec![0, 0, 0]).expect("r is in every edge"))
        .expect("fixed instance");
    let cert = certificate_from_layers(assignment, 2, LayerMap(vec![0, 1, 1]));
    (h, cert)
}

/// Two hyperedges `{1,2,3}` and `{1,2,4}` on four vertices.
pub fn subhypergraph_pruning_counterexample() -> Hypergraph {
    Hypergraph::from_names(&["1", "2", "3", "4"], &[("e1", &["1", "2", "3"]), ("e2", &["1", "2", "4"])])
        .expect("fixed instance")
}

/// Nonempty edge subsets whose total excess equals `target`, as label lists.
pub fn subhypergraphs_with_excess(h: &Hypergraph, target: usize, limits: &Limits) -> Result<Vec<Vec<String>>> {
    let m = h.edges().len();
    Limits::check("edge count for subset scan", m, limits.max_subset_t)?;
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) {
        let chosen: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let excess: usize = chosen.iter().map(|&i| h.edge(i).rank() - 1).sum();
        if excess == target {
            out.push(chosen.iter().map(|&i| h.edge(i).label.clone()).collect());
        }
    }
    Ok(out)
}

fn certificate_from_layers(assignment: TreeAssignment, k: usize, layers: LayerMap) -> TwoSidedStarCertificate {
    let mut cert = TwoSidedStarCertificate {
        assignment,
        decomposition: KTreeDecomposition::new(k, Vec::new()),
        layers,
    };
    cert.decomposition = cert.induced_decomposition();
    cert
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVertexSum {
    pub hypergraph: Hypergraph,
    pub certificate: Option<TwoSidedStarCertificate>,
    /// Glued id of every side-2 vertex.
    pub side2_map: Vec<usize>,
}

/// Glue `h1` and `h2` by identifying vertex `r1` of `h1` with `r2` of `h2`.
///
/// The glued vertex order is all of `h1`, then `h2` without `r2`; the shared
/// vertex keeps its side-1 name. All other vertex names and all labels must
/// be disjoint. When certificates for both sides are given (with equal `k`),
/// layers are glued index by index.
pub fn one_vertex_sum(
    h1: &Hypergraph,
    h2: &Hypergraph,
    r1: usize,
    r2: usize,
    certificates: Option<(&TwoSidedStarCertificate, &TwoSidedStarCertificate)>,
) -> Result<OneVertexSum> {
    if r1 >= h1.t() {
        return Err(Error::VertexOutOfRange { id: r1, t: h1.t() });
    }
    if r2 >= h2.t() {
        return Err(Error::VertexOutOfRange { id: r2, t: h2.t() });
    }
    let labels1: HashSet<&str> = h1.labels().collect();
    if let Some(shared) = h2.labels().find(|l| labels1.contains(l)) {
        return Err(Error::Gluing(format!("label `{shared}` occurs on both sides")));
    }
    let names1: HashSet<&str> = h1.vertices().iter().map(String::as_str).collect();
    if let Some((_, name)) = h2
        .vertices()
        .iter()
        .enumerate()
        .find(|(i, n)| *i != r2 && names1.contains(n.as_str()))
    {
        return Err(Error::Gluing(format!(
            "vertex `{name}` occurs on both sides; the sides may share only the glued vertex"
        )));
    }

    let mut side2_map = Vec::with_capacity(h2.t());
    let mut next = h1.t();
    for v in 0..h2.t() {
        if v == r2 {
            side2_map.push(r1);
        } else {
            side2_map.push(next);
            next += 1;
        }
    }
    let vertices: Vec<String> = h1
        .vertices()
        .iter()
        .cloned()
        .chain(h2.vertices().iter().enumerate().filter(|&(v, _)| v != r2).map(|(_, n)| n.clone()))
        .collect();
    let edges = h1
        .edges()
        .iter()
        .map(|e| (e.label.clone(), e.support.clone()))
        .chain(
            h2.edges()
                .iter()
                .map(|e| (e.label.clone(), e.support.iter().map(|&v| side2_map[v]).collect())),
        )
        .collect();
    let hypergraph = Hypergraph::new(vertices, edges)?;

    let certificate = match certificates {
        None => None,
        Some((c1, c2)) => {
            if c1.k() != c2.k() {
                return Err(Error::Gluing(format!("certificates have k = {} and k = {}", c1.k(), c2.k())));
            }
            if c1.assignment.host() != h1 || c2.assignment.host() != h2 {
                return Err(Error::Gluing("certificate hosts differ from the glued hypergraphs".into()));
            }
            let trees = c1
                .assignment
                .trees()
                .iter()
                .cloned()
                .chain(
                    c2.assignment
                        .trees()
                        .iter()
                        .map(|t| t.iter().map(|&(u, v)| (side2_map[u], side2_map[v])).collect()),
                )
                .collect();
            let assignment = TreeAssignment::new(hypergraph.clone(), trees)?;
            let layer_of = c1
                .decomposition
                .layer_of()
                .iter()
                .chain(c2.decomposition.layer_of())
                .copied()
                .collect();
            let layers = LayerMap(c1.layers.0.iter().chain(&c2.layers.0).copied().collect());
            Some(TwoSidedStarCertificate {
                assignment,
                decomposition: KTreeDecomposition::new(c1.k(), layer_of),
                layers,
            })
        }
    };
    Ok(OneVertexSum {
        hypergraph,
        certificate,
        side2_map,
    })
}
