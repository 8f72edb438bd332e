//! Labelled multihypergraphs and the weak-partition-connectivity calculus.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{enumerate_partitions_capped, Partition};

/// One labelled hyperedge. Two occurrences may share a support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: String,
    /// Sorted vertex ids.
    pub support: Vec<usize>,
}

impl Hyperedge {
    pub fn rank(&self) -> usize {
        self.support.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.support.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Hyperedge>,
    vertex_index: HashMap<String, usize>,
    label_index: HashMap<String, usize>,
}

impl Hypergraph {
    /// Build from vertex names and `(label, support ids)` pairs.
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let t = vertices.len();
        if t < 2 {
            return Err(Error::TooFewVertices(t));
        }
        let mut vertex_index = HashMap::with_capacity(t);
        for (i, name) in vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut label_index = HashMap::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for (label, mut support) in edges {
            if let Some(&id) = support.iter().find(|&&v| v >= t) {
                return Err(Error::VertexOutOfRange { id, t });
            }
            support.sort_unstable();
            if let Some(w) = support.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedSupportVertex { label, vertex: w[0] });
            }
            if support.len() < 2 {
                return Err(Error::EdgeTooSmall { label, size: support.len() });
            }
            if label_index.insert(label.clone(), out.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            out.push(Hyperedge { label, support });
        }
        Ok(Hypergraph {
            vertices,
            edges: out,
            vertex_index,
            label_index,
        })
    }

    /// Build from names only.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &[&str])]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = edges
            .iter()
            .map(|(label, support)| {
                let ids = support
                    .iter()
                    .map(|v| index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((label.to_string(), ids))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices.to_vec(), edges)
    }

    pub fn t(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Hyperedge {
        &self.edges[index]
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn label_id(&self, label: &str) -> Result<usize> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.label.as_str())
    }

    /// Same structure with every label and every vertex name except `keep`
    /// suffixed by `suffix`; used to make disjoint copies before gluing.
    pub fn disjoint_copy(&self, suffix: &str, keep: Option<usize>) -> Self {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| if Some(i) == keep { v.clone() } else { format!("{v}{suffix}") })
            .collect::<Vec<_>>();
        let edges = self
            .edges
            .iter()
            .map(|e| (format!("{}{suffix}", e.label), e.support.clone()))
            .collect();
        Self::new(vertices, edges).expect("suffixing preserves validity")
    }

    /// `p_P(e)`: number of blocks of `p` meeting edge `index`.
    pub(crate) fn incidence_at(&self, index: usize, p: &Partition) -> usize {
        let mut seen: Vec<usize> = self.edges[index].support.iter().map(|&v| p.block_of(v)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub(crate) fn excess_unchecked(&self, p: &Partition) -> usize {
        (0..self.edges.len()).map(|i| self.incidence_at(i, p) - 1).sum()
    }
}

/// Number of blocks of `p` that meet the support of edge `label`; at least 1.
pub fn partition_incidence(h: &Hypergraph, p: &Partition, label: &str) -> Result<usize> {
    let index = h.label_id(label)?;
    p.expect_len(h.t())?;
    Ok(h.incidence_at(index, p))
}

/// `w_H(P) = sum_e (p_P(e) - 1)`.
pub fn weak_partition_excess(h: &Hypergraph, p: &Partition) -> Result<usize> {
    p.expect_len(h.t())?;
    Ok(h.excess_unchecked(p))
}

/// `rho(H) = sum_e (|e| - 1)`.
pub fn total_excess(h: &Hypergraph) -> usize {
    h.edges.iter().map(|e| e.rank() - 1).sum()
}

/// Outcome of the exhaustive `k`-WPC test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpcVerdict {
    pub holds: bool,
    /// A violating partition of least block count, ties broken by the least
    /// restricted-growth string.
    pub witness: Option<Partition>,
    pub partitions_checked: u64,
}

/// Test `w_H(P) >= k(|P| - 1)` over every partition of the vertex set.
pub fn is_k_wpc(h: &Hypergraph, k: usize, limits: &Limits) -> Result<WpcVerdict> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut witness: Option<Partition> = None;
    let mut checked = 0u64;
    for p in enumerate_partitions_capped(h.t(), limits)? {
        checked += 1;
        let s = p.num_blocks();
        if h.excess_unchecked(&p) < k * (s - 1) {
            // the stream is lexicographic, so the first violator per block
            // count is already the least one
            let better = witness.as_ref().is_none_or(|w| s < w.num_blocks());
            if better {
                witness = Some(p);
            }
        }
    }
    Ok(WpcVerdict {
        holds: witness.is_none(),
        witness,
        partitions_checked: checked,
    })
}

/// `rho(H) = k(t - 1)`.
pub fn is_k_critical(h: &Hypergraph, k: usize) -> bool {
    total_excess(h) == k * (h.t() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn nongraphic() -> Hypergraph {
        Hypergraph::from_names(
            &["r", "a", "b"],
            &[("e-", &["r", "a", "b"]), ("fa", &["r", "a"]), ("fb", &["r", "b"])],
        )
        .unwrap()
    }

    fn lines(m: usize) -> Hypergraph {
        let edges = (0..m).map(|i| (format!("l{i}"), vec![0, 1])).collect();
        Hypergraph::new(vec!["x", "y"], edges).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let h = nongraphic();
        let p = Partition::discrete(3);
        assert_eq!(partition_incidence(&h, &p, "e-").unwrap(), 3);
        assert_eq!(partition_incidence(&h, &Partition::trivial(3), "fa").unwrap(), 1);
        let r_ab = Partition::from_rgs(vec![0, 1, 1]).unwrap();
        assert_eq!(partition_incidence(&h, &r_ab, "e-").unwrap(), 2);
    }

    #[test]
    fn excess_examples() {
        let h = nongraphic();
        assert_eq!(weak_partition_excess(&h, &Partition::discrete(3)).unwrap(), 4);
        let r_ab = Partition::from_rgs(vec![0, 1, 1]).unwrap();
        assert_eq!(weak_partition_excess(&h, &r_ab).unwrap(), 3);
        assert_eq!(weak_partition_excess(&h, &Partition::trivial(3)).unwrap(), 0);
        assert_eq!(total_excess(&h), 4);
        assert_eq!(total_excess(&lines(2)), 2);
        assert_eq!(total_excess(&lines(1)), 1);
    }

    #[test]
    fn errors() {
        let h = nongraphic();
        assert_eq!(
            partition_incidence(&h, &Partition::discrete(3), "nope"),
            Err(Error::UnknownLabel("nope".into()))
        );
        assert!(matches!(
            weak_partition_excess(&h, &Partition::discrete(4)),
            Err(Error::PartitionMismatch { expected: 3, got: 4 })
        ));
        assert!(matches!(Hypergraph::new(vec!["x"], vec![]), Err(Error::TooFewVertices(1))));
        assert!(matches!(
            Hypergraph::new(vec!["x", "y"], vec![("e".into(), vec![0])]),
            Err(Error::EdgeTooSmall { .. })
        ));
        assert!(matches!(
            Hypergraph::new(vec!["x", "y"], vec![("e".into(), vec![0, 1]), ("e".into(), vec![0, 1])]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            Hypergraph::new(vec!["x", "x"], vec![]),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            Hypergraph::new(vec!["x", "y"], vec![("e".into(), vec![0, 2])]),
            Err(Error::VertexOutOfRange { id: 2, t: 2 })
        ));
        assert!(matches!(
            Hypergraph::new(vec!["x", "y"], vec![("e".into(), vec![1, 1])]),
            Err(Error::RepeatedSupportVertex { .. })
        ));
    }

    #[test]
    fn wpc_examples() {
        let limits = Limits::default();
        let v = is_k_wpc(&lines(1), 2, &limits).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().rgs(), &[0, 1]);
        assert!(is_k_wpc(&nongraphic(), 2, &limits).unwrap().holds);
        assert!(!is_k_wpc(&nongraphic(), 3, &limits).unwrap().holds);
        assert!(is_k_critical(&nongraphic(), 2));
        assert!(is_k_critical(&lines(3), 3));
        assert!(!is_k_critical(&lines(3), 2));
    }

    #[test]
    fn witness_prefers_fewest_blocks() {
        // two disjoint rank-two edges on four vertices: the bipartition
        // {0,1 | 2,3} separates them with zero excess
        let h = Hypergraph::new(vec!["a", "b", "c", "d"], vec![("x".into(), vec![0, 1]), ("y".into(), vec![2, 3])])
            .unwrap();
        let v = is_k_wpc(&h, 1, &Limits::default()).unwrap();
        assert_eq!(v.witness.unwrap().rgs(), &[0, 0, 1, 1]);
        assert_eq!(v.partitions_checked, 15);
    }

    #[test]
    fn discrete_partition_is_total_excess() {
        let h = nongraphic();
        for p in enumerate_partitions(3) {
            let w = weak_partition_excess(&h, &p).unwrap();
            if p.num_blocks() == 3 {
                assert_eq!(w, total_excess(&h));
            }
        }
    }

    #[test]
    fn partition_cap_reported() {
        let limits = Limits { max_t: 2, ..Limits::default() };
        assert!(is_k_wpc(&nongraphic(), 1, &limits).unwrap_err().is_limit());
    }
}
