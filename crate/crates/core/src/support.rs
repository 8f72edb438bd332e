//! Support hypergraphs of index families and their weight calculus.
//!
//! For sets `I_1..I_t` of `{1..n}`, coordinate `s` yields the support
//! `e_s = {j : s ∈ I_j}`, kept as an edge labelled `s` when it has at least
//! two members. Family members are addressed by 0-based position here; the
//! support hypergraph names them `1..t`.

use crate::assignment::{flatten, TreeAssignment};
use crate::decomposition::{validate_decomposition, KTreeDecomposition};
use crate::error::{Error, Result};
use crate::hypergraph::{total_excess, weak_partition_excess, Hypergraph};
use crate::limits::Limits;
use crate::partition::Partition;

/// Only the monomial grouping of the determinant expansion is checked here;
/// its coefficients are outside what this library computes.
pub const COEFFICIENT_LIMITATION: &str =
    "determinant coefficients are not computed; only the exponent (signature) grouping is verified";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl IndexFamily {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::InvalidFamily(format!("need at least two sets, got {}", sets.len())));
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(j, mut set)| {
                if let Some(&x) = set.iter().find(|&&x| x == 0 || x > n) {
                    return Err(Error::InvalidFamily(format!("set {} contains {x}, outside 1..={n}", j + 1)));
                }
                set.sort_unstable();
                set.dedup();
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IndexFamily { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// `e_s` as 0-based member positions.
    pub fn support_of(&self, s: usize) -> Vec<usize> {
        (0..self.t()).filter(|&j| self.sets[j].binary_search(&s).is_ok()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportHypergraph {
    pub hypergraph: Hypergraph,
    /// Coordinates whose support had fewer than two members.
    pub dropped: Vec<usize>,
}

pub fn support_hypergraph(f: &IndexFamily) -> SupportHypergraph {
    let mut edges = Vec::new();
    let mut dropped = Vec::new();
    for s in 1..=f.n {
        let support = f.support_of(s);
        if support.len() >= 2 {
            edges.push((s.to_string(), support));
        } else {
            dropped.push(s);
        }
    }
    let vertices: Vec<String> = (1..=f.t()).map(|j| j.to_string()).collect();
    SupportHypergraph {
        hypergraph: Hypergraph::new(vertices, edges).expect("supports are valid by construction"),
        dropped,
    }
}

fn check_subfamily(f: &IndexFamily, members: &[usize]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::InvalidParameter("weight of an empty subfamily".into()));
    }
    if let Some(&j) = members.iter().find(|&&j| j >= f.t()) {
        return Err(Error::InvalidParameter(format!("member {j} out of range for {} sets", f.t())));
    }
    Ok(())
}

/// `wt(I_J) = sum_{j∈J} |I_j| - |∪_{j∈J} I_j|`.
pub fn weight(f: &IndexFamily, members: &[usize]) -> Result<usize> {
    check_subfamily(f, members)?;
    let mut union = vec![false; f.n + 1];
    let mut total = 0;
    for &j in members {
        total += f.sets[j].len();
        for &s in &f.sets[j] {
            union[s] = true;
        }
    }
    Ok(total - union.iter().filter(|&&b| b).count())
}

/// `wt(I_J) = sum_s max(0, |e_s ∩ J| - 1)`.
pub fn weight_by_supports(f: &IndexFamily, members: &[usize]) -> Result<usize> {
    check_subfamily(f, members)?;
    Ok((1..=f.n)
        .map(|s| {
            let hits = f.support_of(s).iter().filter(|j| members.contains(j)).count();
            hits.saturating_sub(1)
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightConditions {
    pub holds: bool,
    /// The full family when its weight is not `k(t-1)`; otherwise the
    /// lexicographically least proper subfamily with `wt(I_J) > k(|J|-1)`.
    pub violation: Option<Vec<usize>>,
    pub full_weight: usize,
}

/// Check `wt(I_J) <= k(|J|-1)` for proper nonempty `J` and
/// `wt(I_[t]) = k(t-1)`.
pub fn check_weight_conditions(f: &IndexFamily, k: usize, limits: &Limits) -> Result<WeightConditions> {
    let t = f.t();
    limits.check_subset_t(t)?;
    let everyone: Vec<usize> = (0..t).collect();
    let full_weight = weight(f, &everyone)?;
    if full_weight != k * (t - 1) {
        return Ok(WeightConditions {
            holds: false,
            violation: Some(everyone),
            full_weight,
        });
    }
    // Gray-code walk with incremental union counts.
    let mut hits = vec![0usize; f.n + 1];
    let (mut union, mut total, mut mask) = (0usize, 0usize, 0u64);
    let full = (1u64 << t) - 1;
    let mut least: Option<Vec<usize>> = None;
    for i in 1u64..(1u64 << t) {
        let j = i.trailing_zeros() as usize;
        mask ^= 1 << j;
        if mask >> j & 1 == 1 {
            total += f.sets[j].len();
            for &s in &f.sets[j] {
                hits[s] += 1;
                union += usize::from(hits[s] == 1);
            }
        } else {
            total -= f.sets[j].len();
            for &s in &f.sets[j] {
                hits[s] -= 1;
                union -= usize::from(hits[s] == 0);
            }
        }
        if mask == full {
            continue;
        }
        let size = mask.count_ones() as usize;
        if total - union > k * (size - 1) {
            let members: Vec<usize> = (0..t).filter(|b| mask >> b & 1 == 1).collect();
            if least.as_ref().is_none_or(|l| members < *l) {
                least = Some(members);
            }
        }
    }
    Ok(WeightConditions {
        holds: least.is_none(),
        violation: least,
        full_weight,
    })
}

/// Both sides of `w_H(P) = rho(H) - sum_a wt(I_{P_a})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPartitionIdentity {
    pub excess: usize,
    pub rho: usize,
    pub block_weights: Vec<usize>,
    /// `rho - sum_a wt(I_{P_a})`.
    pub rhs: i64,
    /// `k(t-1) - sum_a wt(I_{P_a})`; equals `rhs` on critical families.
    pub critical_rhs: i64,
    pub equal: bool,
}

pub fn weight_partition_identity(f: &IndexFamily, k: usize, p: &Partition) -> Result<WeightPartitionIdentity> {
    p.expect_len(f.t())?;
    let h = support_hypergraph(f).hypergraph;
    let excess = weak_partition_excess(&h, p)?;
    let everyone: Vec<usize> = (0..f.t()).collect();
    let rho = weight(f, &everyone)?;
    let block_weights = p.blocks().iter().map(|b| weight(f, b)).collect::<Result<Vec<_>>>()?;
    let sum: usize = block_weights.iter().sum();
    let rhs = rho as i64 - sum as i64;
    Ok(WeightPartitionIdentity {
        excess,
        rho,
        block_weights,
        rhs,
        critical_rhs: (k * (f.t() - 1)) as i64 - sum as i64,
        equal: excess as i64 == rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowsetSize {
    /// `rho` of the support hypergraph.
    pub rho: usize,
    /// `wt(I_[t])`.
    pub full_weight: usize,
    /// `k(t-1)`.
    pub budget: usize,
    pub square: bool,
}

/// Whether a full tree assignment of the support hypergraph supplies exactly
/// `k(t-1)` labelled edges.
pub fn full_rowset_size(f: &IndexFamily, k: usize) -> RowsetSize {
    let rho = total_excess(&support_hypergraph(f).hypergraph);
    let everyone: Vec<usize> = (0..f.t()).collect();
    let full_weight = weight(f, &everyone).expect("family is nonempty");
    let budget = k * (f.t() - 1);
    RowsetSize {
        rho,
        full_weight,
        budget,
        square: rho == budget,
    }
}

/// Exponent of every label in the monomial of an ordered decomposition:
/// `sum_i i |Q_i ∩ E(F_s)|`, computed layer by layer.
pub fn monomial_exponents(a: &TreeAssignment, d: &KTreeDecomposition) -> Result<Vec<usize>> {
    let g = flatten(a)?;
    validate_decomposition(&g, d).map_err(Error::InvalidDecomposition)?;
    let mut exponents = vec![0usize; g.labels.len()];
    for i in 0..d.k() {
        for position in d.layer(i) {
            exponents[g.edges[position].label] += i;
        }
    }
    Ok(exponents)
}
