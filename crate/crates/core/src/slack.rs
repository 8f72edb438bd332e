//! Exact slack bookkeeping between a tree assignment and an ordered k-tree
//! decomposition of its flattening.
//!
//! For a partition `P` with `s` blocks,
//! `Λ_F(P) = sum_e (cr_{F_e}(P) - p_P(e) + 1)` and
//! `B(P) = sum_i cr_{T_i}(P) - k(s-1)`, and always
//! `w_H(P) - k(s-1) = B(P) - Λ_F(P)`.

use crate::assignment::{
    flatten, star_assignment, star_crossing_decomposition, tree_crossing, validate_assignment, CenterMap,
    LabelledMultigraph, TreeAssignment,
};
use crate::decomposition::{validate_decomposition, KTreeDecomposition};
use crate::error::{Error, Result};
use crate::hypergraph::{is_k_wpc, weak_partition_excess};
use crate::limits::Limits;
use crate::partition::{enumerate_partitions_capped, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentSlack {
    pub total: usize,
    /// `cr_{F_e}(P) - p_P(e) + 1` per label, in host order.
    pub per_label: Vec<usize>,
}

/// Blocks met by the vertex set of a tree. For a spanning tree of `e` this
/// is `p_P(e)`, obtained here without consulting the host.
fn blocks_met_by_tree(tree: &[(usize, usize)], p: &Partition) -> usize {
    let mut seen = vec![false; p.num_blocks()];
    for &(u, v) in tree {
        seen[p.block_of(u)] = true;
        seen[p.block_of(v)] = true;
    }
    seen.iter().filter(|&&b| b).count()
}

pub fn assignment_slack(a: &TreeAssignment, p: &Partition) -> Result<AssignmentSlack> {
    validate_assignment(a).map_err(Error::InvalidAssignment)?;
    p.expect_len(a.host().t())?;
    let per_label: Vec<usize> = a
        .trees()
        .iter()
        .map(|tree| tree_crossing(tree, p) + 1 - blocks_met_by_tree(tree, p))
        .collect();
    Ok(AssignmentSlack {
        total: per_label.iter().sum(),
        per_label,
    })
}

/// `B(P) = sum_i cr_{T_i}(P) - k(s-1)`.
pub fn graphical_surplus(g: &LabelledMultigraph, d: &KTreeDecomposition, p: &Partition) -> Result<usize> {
    validate_decomposition(g, d).map_err(Error::InvalidDecomposition)?;
    p.expect_len(g.t())?;
    let mut per_layer = vec![0usize; d.k()];
    for (e, &layer) in g.edges.iter().zip(d.layer_of()) {
        if p.block_of(e.u) != p.block_of(e.v) {
            per_layer[layer] += 1;
        }
    }
    let crossings: usize = per_layer.iter().sum();
    Ok(crossings - d.k() * (p.num_blocks() - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlackIdentity {
    /// `w_H(P) - k(s-1)`.
    pub lhs: i64,
    /// `B(P) - Λ_F(P)`.
    pub rhs: i64,
    pub surplus: usize,
    pub lambda: usize,
    pub equal: bool,
}

pub fn slack_identity_check(a: &TreeAssignment, d: &KTreeDecomposition, p: &Partition) -> Result<SlackIdentity> {
    let g = flatten(a)?;
    let surplus = graphical_surplus(&g, d, p)?;
    let lambda = assignment_slack(a, p)?.total;
    let w = weak_partition_excess(a.host(), p)?;
    let lhs = w as i64 - (d.k() * (p.num_blocks() - 1)) as i64;
    let rhs = surplus as i64 - lambda as i64;
    Ok(SlackIdentity {
        lhs,
        rhs,
        surplus,
        lambda,
        equal: lhs == rhs,
    })
}

/// `Λ_F(P) = sum_e λ_{e,c(e)}(P)` for the star assignment at `centers`.
pub fn star_lambda_closed_form(a: &TreeAssignment, centers: &CenterMap, p: &Partition) -> Result<usize> {
    let stars = star_assignment(a.host(), centers)?;
    for (i, (mine, star)) in a.trees().iter().zip(stars.trees()).enumerate() {
        let mut mine: Vec<(usize, usize)> = mine.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut star: Vec<(usize, usize)> = star.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        mine.sort_unstable();
        star.sort_unstable();
        if mine != star {
            return Err(Error::NotStar(a.host().edge(i).label.clone()));
        }
    }
    p.expect_len(a.host().t())?;
    a.host()
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| star_crossing_decomposition(&e.support, centers.center(i), p).map(|s| s.lambda))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackViolation {
    pub partition: Partition,
    pub lambda: usize,
    pub surplus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSystem {
    /// `Λ_F(P) <= B(P)` for every partition.
    pub holds: bool,
    /// First violated partition in enumeration order.
    pub violation: Option<SlackViolation>,
    /// Whether `holds` matches an independent k-WPC check of the host.
    pub wpc_agrees: bool,
}

pub fn finite_system_check(
    a: &TreeAssignment,
    d: &KTreeDecomposition,
    k: usize,
    limits: &Limits,
) -> Result<FiniteSystem> {
    if d.k() != k {
        return Err(Error::InvalidParameter(format!("decomposition has {} layers, expected {k}", d.k())));
    }
    let g = flatten(a)?;
    validate_decomposition(&g, d).map_err(Error::InvalidDecomposition)?;
    let mut violation = None;
    for p in enumerate_partitions_capped(a.host().t(), limits)? {
        let lambda = assignment_slack(a, &p)?.total;
        let surplus = graphical_surplus(&g, d, &p)?;
        if lambda > surplus {
            violation = Some(SlackViolation {
                partition: p,
                lambda,
                surplus,
            });
            break;
        }
    }
    let holds = violation.is_none();
    let wpc = is_k_wpc(a.host(), k, limits)?;
    Ok(FiniteSystem {
        holds,
        violation,
        wpc_agrees: wpc.holds == holds,
    })
}
