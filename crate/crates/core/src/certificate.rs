//! Two-sided star certificates.
//!
//! A certificate is a star-minimal tree assignment, an ordered decomposition
//! of it, and a layer map `l` such that every tree `F_e` lies inside layer
//! `l(e)` and only rank-two labels use the interior layers `1..=k-2`. From
//! that data weak partition connectivity follows layer by layer through the
//! quotient rank of each tree, and the signature pins every edge to its
//! layer: signature `0` forces layer `0`, signature `(k-1)(|e|-1)` forces
//! layer `k-1`, and a single interior edge is pinned by its own index.

use std::fmt;

use crate::assignment::{check_spanning_tree, flatten, star_centers, AssignmentDiagnostic, TreeAssignment};
use crate::decomposition::{
    fibers_of, signature_of, validate_decomposition, DecompositionDiagnostic, KTreeDecomposition, SignatureVector,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{enumerate_partitions_capped, Partition};
use crate::unionfind::graphic_rank;

/// Layer of every hyperedge label, in host label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerMap(pub Vec<usize>);

impl LayerMap {
    pub fn layer(&self, label: usize) -> usize {
        self.0[label]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedStarCertificate {
    pub assignment: TreeAssignment,
    pub decomposition: KTreeDecomposition,
    pub layers: LayerMap,
}

impl TwoSidedStarCertificate {
    pub fn k(&self) -> usize {
        self.decomposition.k()
    }

    /// The decomposition induced by the layer map: every edge goes to the
    /// layer of its label.
    pub fn induced_decomposition(&self) -> KTreeDecomposition {
        let layer_of = self
            .assignment
            .trees()
            .iter()
            .enumerate()
            .flat_map(|(label, tree)| std::iter::repeat_n(self.layers.layer(label), tree.len()))
            .collect();
        KTreeDecomposition::new(self.k(), layer_of)
    }

    /// Rename as in [`crate::hypergraph::Hypergraph::disjoint_copy`].
    pub fn disjoint_copy(&self, suffix: &str, keep: Option<usize>) -> Self {
        TwoSidedStarCertificate {
            assignment: self.assignment.disjoint_copy(suffix, keep),
            decomposition: self.decomposition.clone(),
            layers: self.layers.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Star-minimal assignments only.
    Strict,
    /// Any layer-contained assignment; star-minimality is not checked.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateDiagnostic {
    LayerMapLength { labels: usize, entries: usize },
    LayerOutOfRange { label: String, layer: usize, k: usize },
    Assignment(AssignmentDiagnostic),
    NotStarMinimal { label: String },
    Decomposition(DecompositionDiagnostic),
    LayerContainment { label: String, slot: usize, expected: usize, found: usize },
    InteriorRankTwo { label: String, layer: usize, rank: usize },
    LayerAccounting { layer: usize, edges: usize, expected: usize },
}

impl fmt::Display for CertificateDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LayerMapLength { labels, entries } => {
                write!(f, "layer map has {entries} entries for {labels} labels")
            }
            Self::LayerOutOfRange { label, layer, k } => {
                write!(f, "label `{label}` mapped to layer {layer}, but k = {k}")
            }
            Self::Assignment(d) => write!(f, "{d}"),
            Self::NotStarMinimal { label } => write!(f, "star-minimality violated at `{label}`"),
            Self::Decomposition(d) => write!(f, "{d}"),
            Self::LayerContainment { label, slot, expected, found } => write!(
                f,
                "layer containment violated: `{label}/{slot}` is in layer {found}, expected {expected}"
            ),
            Self::InteriorRankTwo { label, layer, rank } => write!(
                f,
                "interior rank-two violated: `{label}` has rank {rank} in interior layer {layer}"
            ),
            Self::LayerAccounting { layer, edges, expected } => {
                write!(f, "layer {layer} collects {edges} label edges, expected {expected}")
            }
        }
    }
}

/// Check every certificate condition; the diagnostic names the first failure.
pub fn verify_certificate(c: &TwoSidedStarCertificate, mode: VerifyMode) -> std::result::Result<(), CertificateDiagnostic> {
    let host = c.assignment.host();
    let k = c.k();
    if c.layers.0.len() != host.edges().len() {
        return Err(CertificateDiagnostic::LayerMapLength {
            labels: host.edges().len(),
            entries: c.layers.0.len(),
        });
    }
    for (e, &layer) in host.edges().iter().zip(&c.layers.0) {
        if layer >= k {
            return Err(CertificateDiagnostic::LayerOutOfRange {
                label: e.label.clone(),
                layer,
                k,
            });
        }
    }
    for (e, tree) in host.edges().iter().zip(c.assignment.trees()) {
        if let Some(fault) = check_spanning_tree(&e.support, tree) {
            return Err(CertificateDiagnostic::Assignment(AssignmentDiagnostic {
                label: e.label.clone(),
                fault,
            }));
        }
    }
    if mode == VerifyMode::Strict && star_centers(&c.assignment).is_none() {
        let label = host
            .edges()
            .iter()
            .zip(c.assignment.trees())
            .find(|(e, tree)| !e.support.iter().any(|&x| tree.iter().all(|&(u, v)| u == x || v == x)))
            .map(|(e, _)| e.label.clone())
            .unwrap_or_default();
        return Err(CertificateDiagnostic::NotStarMinimal { label });
    }
    let g = flatten(&c.assignment).expect("trees checked above");
    validate_decomposition(&g, &c.decomposition).map_err(CertificateDiagnostic::Decomposition)?;
    for (e, &found) in g.edges.iter().zip(c.decomposition.layer_of()) {
        let expected = c.layers.layer(e.label);
        if found != expected {
            return Err(CertificateDiagnostic::LayerContainment {
                label: g.labels[e.label].clone(),
                slot: e.slot,
                expected,
                found,
            });
        }
    }
    for (e, &layer) in host.edges().iter().zip(&c.layers.0) {
        if (1..k.saturating_sub(1)).contains(&layer) && e.rank() != 2 {
            return Err(CertificateDiagnostic::InteriorRankTwo {
                label: e.label.clone(),
                layer,
                rank: e.rank(),
            });
        }
    }
    // With containment, layer i is exactly the union of the trees mapped to
    // it, so its size must be the sum of |e| - 1 over those labels.
    let t = host.t();
    for layer in 0..k {
        let edges: usize = host
            .edges()
            .iter()
            .zip(&c.layers.0)
            .filter(|(_, &l)| l == layer)
            .map(|(e, _)| e.rank() - 1)
            .sum();
        if edges != t - 1 {
            return Err(CertificateDiagnostic::LayerAccounting {
                layer,
                edges,
                expected: t - 1,
            });
        }
    }
    Ok(())
}

/// One class `A_e` of a layer: the hyperedge support and the tree edges
/// attributed to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerClass {
    pub support: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Both sides of `s - 1 <= sum_e (p_P(e) - 1)` for one spanning tree, with
/// the graphic ranks of the contracted classes in between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRank {
    /// Rank of the tree after contracting the blocks: `s - 1`.
    pub lhs: usize,
    /// `sum_e (p_P(e) - 1)`.
    pub rhs: usize,
    /// `r_Q(Q_e)` per class.
    pub class_ranks: Vec<usize>,
    pub holds: bool,
}

pub fn layer_quotient_rank_bound(t: usize, tree: &[(usize, usize)], classes: &[LayerClass], p: &Partition) -> Result<QuotientRank> {
    p.expect_len(t)?;
    let all: Vec<usize> = (0..t).collect();
    if let Some(fault) = check_spanning_tree(&all, tree) {
        return Err(Error::InvalidLayerClasses(format!("tree is not spanning: {fault:?}")));
    }
    let norm = |&(u, v): &(usize, usize)| (u.min(v), u.max(v));
    let mut tree_edges: Vec<_> = tree.iter().map(norm).collect();
    let mut class_edges: Vec<_> = classes.iter().flat_map(|c| c.edges.iter().map(norm)).collect();
    tree_edges.sort_unstable();
    class_edges.sort_unstable();
    if tree_edges != class_edges {
        return Err(Error::InvalidLayerClasses("classes do not partition the tree edges".into()));
    }
    for c in classes {
        if let Some(&(u, v)) = c.edges.iter().find(|&&(u, v)| !c.support.contains(&u) || !c.support.contains(&v)) {
            return Err(Error::InvalidLayerClasses(format!("edge ({u},{v}) leaves its hyperedge")));
        }
    }
    let s = p.num_blocks();
    let contract = |edges: &[(usize, usize)]| {
        graphic_rank(s, edges.iter().map(|&(u, v)| (p.block_of(u), p.block_of(v))))
    };
    let lhs = contract(tree);
    let class_ranks: Vec<usize> = classes.iter().map(|c| contract(&c.edges)).collect();
    let bounds: Vec<usize> = classes
        .iter()
        .map(|c| {
            let mut b: Vec<usize> = c.support.iter().map(|&v| p.block_of(v)).collect();
            b.sort_unstable();
            b.dedup();
            b.len() - 1
        })
        .collect();
    let rhs = bounds.iter().sum();
    let holds = lhs == s - 1
        && lhs <= class_ranks.iter().sum::<usize>()
        && class_ranks.iter().zip(&bounds).all(|(r, b)| r <= b)
        && lhs <= rhs;
    Ok(QuotientRank {
        lhs,
        rhs,
        class_ranks,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub partition: Partition,
    /// `sum_{l(e)=i} (p_P(e) - 1) - (s - 1)` per layer.
    pub layer_slack: Vec<i64>,
    /// `w_H(P) - k(s - 1)`.
    pub total_slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpcLedger {
    pub holds: bool,
    pub entries: Vec<LedgerEntry>,
}

impl WpcLedger {
    pub fn entry(&self, p: &Partition) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| &e.partition == p)
    }
}

/// Re-derive `k`-WPC of the host from the certificate, one layer at a time,
/// for every partition.
pub fn certified_wpc(c: &TwoSidedStarCertificate, limits: &Limits) -> Result<WpcLedger> {
    verify_certificate(c, VerifyMode::Relaxed).map_err(Error::InvalidCertificate)?;
    let host = c.assignment.host();
    let (t, k) = (host.t(), c.k());
    let mut entries = Vec::new();
    let mut holds = true;
    for p in enumerate_partitions_capped(t, limits)? {
        let s = p.num_blocks() as i64;
        let mut layer_slack = Vec::with_capacity(k);
        for layer in 0..k {
            let members: Vec<usize> = (0..host.edges().len()).filter(|&e| c.layers.layer(e) == layer).collect();
            let tree: Vec<(usize, usize)> = members.iter().flat_map(|&e| c.assignment.tree(e).iter().copied()).collect();
            let classes: Vec<LayerClass> = members
                .iter()
                .map(|&e| LayerClass {
                    support: host.edge(e).support.clone(),
                    edges: c.assignment.tree(e).to_vec(),
                })
                .collect();
            let bound = layer_quotient_rank_bound(t, &tree, &classes, &p)?;
            holds &= bound.holds;
            layer_slack.push(bound.rhs as i64 - (s - 1));
        }
        let total_slack = host.excess_unchecked(&p) as i64 - k as i64 * (s - 1);
        holds &= layer_slack.iter().all(|&x| x >= 0) && layer_slack.iter().sum::<i64>() == total_slack;
        entries.push(LedgerEntry {
            partition: p,
            layer_slack,
            total_slack,
        });
    }
    Ok(WpcLedger { holds, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub signature: SignatureVector,
    /// Every edge's layer was recovered from the signature alone and the
    /// result equals the certified decomposition.
    pub forced: bool,
    /// Size of the certified signature's fiber found by enumeration, when
    /// the instance is within the decomposition caps.
    pub fiber_size: Option<usize>,
    /// The enumerated fiber is exactly `{certified}`.
    pub brute_force_confirms: Option<bool>,
}

impl UniquenessReport {
    pub fn unique(&self) -> bool {
        self.forced && self.brute_force_confirms != Some(false)
    }
}

pub fn certified_uniqueness(c: &TwoSidedStarCertificate, limits: &Limits) -> Result<UniquenessReport> {
    verify_certificate(c, VerifyMode::Relaxed).map_err(Error::InvalidCertificate)?;
    let g = flatten(&c.assignment)?;
    let k = c.k();
    let sig = signature_of(&g, &c.decomposition);

    // Pin each label from its signature value alone.
    let mut forced_layer = Vec::with_capacity(g.labels.len());
    for (label, tree) in c.assignment.trees().iter().enumerate() {
        let n = tree.len();
        let value = sig.0[label];
        let layer = if value == 0 {
            Some(0)
        } else if value == (k - 1) * n {
            Some(k - 1)
        } else if n == 1 {
            Some(value)
        } else {
            None
        };
        forced_layer.push(layer);
    }
    let forced = forced_layer.iter().all(Option::is_some) && {
        let rebuilt: Vec<usize> = g.edges.iter().map(|e| forced_layer[e.label].unwrap()).collect();
        rebuilt == c.decomposition.layer_of()
    };

    let (fiber_size, brute_force_confirms) = match limits.check_decomposition(g.edges.len(), k) {
        Ok(()) => {
            let report = fibers_of(&g, k);
            let fiber = report.fibers.get(&sig).cloned().unwrap_or_default();
            (Some(fiber.len()), Some(fiber == vec![c.decomposition.clone()]))
        }
        Err(_) => (None, None),
    };
    Ok(UniquenessReport {
        signature: sig,
        forced,
        fiber_size,
        brute_force_confirms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::{star_assignment, CenterMap};
    use crate::hypergraph::Hypergraph;

    fn nongraphic() -> TwoSidedStarCertificate {
        let h = Hypergraph::from_names(
            &["r", "a", "b"],
            &[("e-", &["r", "a", "b"]), ("fa", &["r", "a"]), ("fb", &["r", "b"])],
        )
        .unwrap();
        let assignment = star_assignment(&h, &CenterMap::new(&h, vec![0, 0, 0]).unwrap()).unwrap();
        TwoSidedStarCertificate {
            assignment,
            decomposition: KTreeDecomposition::new(2, vec![0, 0, 1, 1]),
            layers: LayerMap(vec![0, 1, 1]),
        }
    }

    #[test]
    fn nongraphic_certificate_verifies() {
        let c = nongraphic();
        assert_eq!(verify_certificate(&c, VerifyMode::Strict), Ok(()));
        assert_eq!(c.induced_decomposition(), c.decomposition);
    }

    #[test]
    fn violations_are_named() {
        let mut c = nongraphic();
        c.layers = LayerMap(vec![1, 1, 1]);
        assert!(matches!(
            verify_certificate(&c, VerifyMode::Strict),
            Err(CertificateDiagnostic::LayerContainment { .. })
        ));

        let mut c = nongraphic();
        c.decomposition = KTreeDecomposition::new(2, vec![0, 1, 0, 1]);
        assert!(matches!(
            verify_certificate(&c, VerifyMode::Strict),
            Err(CertificateDiagnostic::Decomposition(_))
        ));

        let mut c = nongraphic();
        c.layers = LayerMap(vec![0, 2, 1]);
        assert!(matches!(
            verify_certificate(&c, VerifyMode::Strict),
            Err(CertificateDiagnostic::LayerOutOfRange { .. })
        ));
    }

    #[test]
    fn interior_layer_needs_rank_two() {
        // k = 3 on {0,1,2}: the triple sits in the interior layer 1
        let h = Hypergraph::new(
            vec!["a", "b", "c"],
            vec![
                ("x".into(), vec![0, 1]),
                ("y".into(), vec![1, 2]),
                ("big".into(), vec![0, 1, 2]),
                ("z".into(), vec![0, 1]),
                ("w".into(), vec![0, 2]),
            ],
        )
        .unwrap();
        let a = star_assignment(&h, &CenterMap::first_vertex(&h)).unwrap();
        let c = TwoSidedStarCertificate {
            assignment: a,
            decomposition: KTreeDecomposition::new(3, vec![0, 0, 1, 1, 2, 2]),
            layers: LayerMap(vec![0, 0, 1, 2, 2]),
        };
        let err = verify_certificate(&c, VerifyMode::Strict).unwrap_err();
        assert!(matches!(err, CertificateDiagnostic::InteriorRankTwo { layer: 1, rank: 3, .. }));
        assert!(err.to_string().contains("interior rank-two violated"));
    }

    #[test]
    fn relaxed_mode_skips_star_minimality() {
        let h = Hypergraph::new(
            vec!["a", "b", "c", "d"],
            vec![("p".into(), vec![0, 1, 2, 3]), ("q".into(), vec![0, 1, 2, 3])],
        )
        .unwrap();
        let path = vec![(0, 1), (1, 2), (2, 3)];
        let star = vec![(0, 1), (0, 2), (0, 3)];
        let a = crate::assignment::TreeAssignment::new(h, vec![path, star]).unwrap();
        let c = TwoSidedStarCertificate {
            assignment: a,
            decomposition: KTreeDecomposition::new(2, vec![0, 0, 0, 1, 1, 1]),
            layers: LayerMap(vec![0, 1]),
        };
        assert!(matches!(
            verify_certificate(&c, VerifyMode::Strict),
            Err(CertificateDiagnostic::NotStarMinimal { .. })
        ));
        assert_eq!(verify_certificate(&c, VerifyMode::Relaxed), Ok(()));
        assert!(certified_wpc(&c, &Limits::default()).unwrap().holds);
        assert!(certified_uniqueness(&c, &Limits::default()).unwrap().unique());
    }

    #[test]
    fn quotient_rank_examples() {
        let star = vec![(0, 1), (0, 2)];
        let class = LayerClass { support: vec![0, 1, 2], edges: star.clone() };
        let q = layer_quotient_rank_bound(3, &star, std::slice::from_ref(&class), &Partition::discrete(3)).unwrap();
        assert_eq!((q.lhs, q.rhs, q.holds), (2, 2, true));
        let q = layer_quotient_rank_bound(3, &star, &[class], &Partition::trivial(3)).unwrap();
        assert_eq!((q.lhs, q.rhs, q.holds), (0, 0, true));

        // path 0-1-2-3, classes {01,12} on {0,1,2} and {23}, middle pair merged
        let path = vec![(0, 1), (1, 2), (2, 3)];
        let classes = vec![
            LayerClass { support: vec![0, 1, 2], edges: vec![(0, 1), (1, 2)] },
            LayerClass { support: vec![2, 3], edges: vec![(2, 3)] },
        ];
        let p = Partition::from_rgs(vec![0, 1, 1, 2]).unwrap();
        let q = layer_quotient_rank_bound(4, &path, &classes, &p).unwrap();
        assert_eq!((q.lhs, q.rhs, q.class_ranks.clone(), q.holds), (2, 2, vec![1, 1], true));

        let wrong = vec![LayerClass { support: vec![0, 1], edges: vec![(0, 1), (1, 2)] }];
        assert!(layer_quotient_rank_bound(3, &[(0, 1), (1, 2)], &wrong, &Partition::discrete(3)).is_err());
        let partial = vec![LayerClass { support: vec![0, 1, 2], edges: vec![(0, 1)] }];
        assert!(layer_quotient_rank_bound(3, &[(0, 1), (1, 2)], &partial, &Partition::discrete(3)).is_err());
    }

    #[test]
    fn ledger_of_nongraphic_block() {
        let ledger = certified_wpc(&nongraphic(), &Limits::default()).unwrap();
        assert!(ledger.holds);
        assert_eq!(ledger.entries.len(), 5);
        let r_ab = ledger.entry(&Partition::from_rgs(vec![0, 1, 1]).unwrap()).unwrap();
        assert_eq!(r_ab.layer_slack, vec![0, 1]);
        assert_eq!(r_ab.total_slack, 1);
        assert_eq!(ledger.entry(&Partition::discrete(3)).unwrap().total_slack, 0);
        assert_eq!(ledger.entry(&Partition::trivial(3)).unwrap().total_slack, 0);
    }

    #[test]
    fn uniqueness_of_nongraphic_block() {
        let u = certified_uniqueness(&nongraphic(), &Limits::default()).unwrap();
        assert_eq!(u.signature.0, vec![0, 1, 1]);
        assert!(u.forced);
        assert_eq!(u.fiber_size, Some(1));
        assert_eq!(u.brute_force_confirms, Some(true));

        let tight = Limits { max_edges: 2, ..Limits::default() };
        let u = certified_uniqueness(&nongraphic(), &tight).unwrap();
        assert!(u.forced && u.fiber_size.is_none() && u.unique());
    }

    #[test]
    fn single_layer_certificate() {
        let h = Hypergraph::new(vec!["a", "b", "c"], vec![("e".into(), vec![0, 1, 2])]).unwrap();
        let a = star_assignment(&h, &CenterMap::first_vertex(&h)).unwrap();
        let c = TwoSidedStarCertificate {
            assignment: a,
            decomposition: KTreeDecomposition::new(1, vec![0, 0]),
            layers: LayerMap(vec![0]),
        };
        assert_eq!(verify_certificate(&c, VerifyMode::Strict), Ok(()));
        let u = certified_uniqueness(&c, &Limits::default()).unwrap();
        assert!(u.forced);
        assert_eq!(u.fiber_size, Some(1));
    }
}
