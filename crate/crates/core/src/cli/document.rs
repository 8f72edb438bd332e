//! JSON instance and family documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assignment::{flatten, star_assignment, star_centers, CenterMap, TreeAssignment};
use crate::certificate::{LayerMap, TwoSidedStarCertificate};
use crate::decomposition::KTreeDecomposition;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::support::IndexFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub label: String,
    pub vertices: Vec<String>,
}

/// Exactly one of `centers` and `trees`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trees: Option<BTreeMap<String, Vec<[String; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub k: usize,
    /// `"label/slot"` to layer.
    pub layers: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub layer_map: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl FamilyDocument {
    pub fn family(&self) -> Result<IndexFamily> {
        IndexFamily::new(self.n, self.sets.clone())
    }
}

/// A resolved instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub hypergraph: Hypergraph,
    pub assignment: Option<TreeAssignment>,
    pub decomposition: Option<KTreeDecomposition>,
    pub certificate: Option<TwoSidedStarCertificate>,
}

fn per_label<V: Clone>(h: &Hypergraph, map: &BTreeMap<String, V>, what: &str) -> Result<Vec<V>> {
    if let Some(extra) = map.keys().find(|l| h.label_id(l).is_err()) {
        return Err(Error::UnknownLabel(extra.clone()));
    }
    h.labels()
        .map(|l| {
            map.get(l)
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("{what} has no entry for label `{l}`")))
        })
        .collect()
}

impl InstanceDocument {
    pub fn resolve(&self) -> Result<Instance> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let ids = e.vertices.iter().map(|v| vertex_id(&self.vertices, v)).collect::<Result<Vec<_>>>()?;
                Ok((e.label.clone(), ids))
            })
            .collect::<Result<Vec<_>>>()?;
        let hypergraph = Hypergraph::new(self.vertices.clone(), edges)?;

        let assignment = match &self.assignment {
            None => None,
            Some(doc) => Some(resolve_assignment(&hypergraph, doc)?),
        };

        let decomposition = match (&self.decomposition, &assignment) {
            (None, _) => None,
            (Some(_), None) => {
                return Err(Error::InvalidParameter("a decomposition needs an assignment".into()));
            }
            (Some(doc), Some(a)) => {
                let g = flatten(a)?;
                if let Some(extra) = doc.layers.keys().find(|key| (0..g.edges.len()).all(|i| g.edge_key(i) != **key)) {
                    return Err(Error::DecompositionMismatch(format!("unknown edge key `{extra}`")));
                }
                let layer_of = (0..g.edges.len())
                    .map(|i| {
                        let key = g.edge_key(i);
                        doc.layers
                            .get(&key)
                            .copied()
                            .ok_or_else(|| Error::DecompositionMismatch(format!("no layer for edge `{key}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(KTreeDecomposition::new(doc.k, layer_of))
            }
        };

        let certificate = match (&self.certificate, &assignment, &decomposition) {
            (None, ..) => None,
            (Some(doc), Some(a), Some(d)) => Some(TwoSidedStarCertificate {
                assignment: a.clone(),
                decomposition: d.clone(),
                layers: LayerMap(per_label(&hypergraph, &doc.layer_map, "layer_map")?),
            }),
            (Some(_), ..) => {
                return Err(Error::InvalidParameter("a certificate needs an assignment and a decomposition".into()));
            }
        };

        Ok(Instance {
            hypergraph,
            assignment,
            decomposition,
            certificate,
        })
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        InstanceDocument {
            vertices: h.vertices().to_vec(),
            edges: h
                .edges()
                .iter()
                .map(|e| EdgeDocument {
                    label: e.label.clone(),
                    vertices: e.support.iter().map(|&v| h.vertices()[v].clone()).collect(),
                })
                .collect(),
            assignment: None,
            decomposition: None,
            certificate: None,
        }
    }

    pub fn with_assignment(mut self, a: &TreeAssignment) -> Self {
        self.assignment = Some(assignment_document(a));
        self
    }

    pub fn with_decomposition(mut self, a: &TreeAssignment, d: &KTreeDecomposition) -> Result<Self> {
        let g = flatten(a)?;
        if d.layer_of().len() != g.edges.len() {
            return Err(Error::DecompositionMismatch(format!(
                "{} layers for {} edges",
                d.layer_of().len(),
                g.edges.len()
            )));
        }
        self.decomposition = Some(DecompositionDocument {
            k: d.k(),
            layers: layer_map_document(&g, d),
        });
        Ok(self)
    }

    pub fn from_certificate(c: &TwoSidedStarCertificate) -> Result<Self> {
        let h = c.assignment.host();
        let doc = Self::from_hypergraph(h)
            .with_assignment(&c.assignment)
            .with_decomposition(&c.assignment, &c.decomposition)?;
        Ok(InstanceDocument {
            certificate: Some(CertificateDocument {
                layer_map: h.labels().map(str::to_string).zip(c.layers.0.iter().copied()).collect(),
            }),
            ..doc
        })
    }
}

/// `"label/slot"` keys of a decomposition.
pub fn layer_map_document(g: &crate::assignment::LabelledMultigraph, d: &KTreeDecomposition) -> BTreeMap<String, usize> {
    (0..g.edges.len()).map(|i| (g.edge_key(i), d.layer_of()[i])).collect()
}

fn vertex_id(vertices: &[String], name: &str) -> Result<usize> {
    vertices
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVertex(name.to_string()))
}

fn resolve_assignment(h: &Hypergraph, doc: &AssignmentDocument) -> Result<TreeAssignment> {
    match (&doc.centers, &doc.trees) {
        (Some(centers), None) => {
            let names = per_label(h, centers, "centers")?;
            let ids = names.iter().map(|n| h.vertex_id(n)).collect::<Result<Vec<_>>>()?;
            star_assignment(h, &CenterMap::new(h, ids)?)
        }
        (None, Some(trees)) => {
            let trees = per_label(h, trees, "trees")?
                .iter()
                .map(|tree| {
                    tree.iter()
                        .map(|[u, v]| Ok((h.vertex_id(u)?, h.vertex_id(v)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            TreeAssignment::new(h.clone(), trees)
        }
        _ => Err(Error::InvalidParameter(
            "an assignment gives exactly one of `centers` and `trees`".into(),
        )),
    }
}

/// Centers when the assignment is exactly a star assignment, trees otherwise.
fn assignment_document(a: &TreeAssignment) -> AssignmentDocument {
    let h = a.host();
    let names = h.vertices();
    if let Some(centers) = star_centers(a) {
        if star_assignment(h, &centers).map(|s| s.trees() == a.trees()).unwrap_or(false) {
            return AssignmentDocument {
                centers: Some(
                    h.labels()
                        .map(str::to_string)
                        .zip(centers.as_slice().iter().map(|&c| names[c].clone()))
                        .collect(),
                ),
                trees: None,
            };
        }
    }
    AssignmentDocument {
        centers: None,
        trees: Some(
            h.labels()
                .map(str::to_string)
                .zip(
                    a.trees()
                        .iter()
                        .map(|t| t.iter().map(|&(u, v)| [names[u].clone(), names[v].clone()]).collect()),
                )
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::nongraphic_triple_block;

    #[test]
    fn certificate_round_trip() {
        let (_, c) = nongraphic_triple_block();
        let doc = InstanceDocument::from_certificate(&c).unwrap();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: InstanceDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let inst = back.resolve().unwrap();
        assert_eq!(inst.certificate.unwrap(), c);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"vertices":["a","b"],"edges":[],"colour":1}"#;
        let err = serde_json::from_str::<InstanceDocument>(text).unwrap_err();
        assert!(err.to_string().contains("colour"));
    }

    #[test]
    fn trees_form() {
        let text = r#"{"vertices":["a","b","c"],"edges":[{"label":"e","vertices":["a","b","c"]}],
            "assignment":{"trees":{"e":[["a","b"],["b","c"]]}},
            "decomposition":{"k":1,"layers":{"e/0":0,"e/1":0}}}"#;
        let doc: InstanceDocument = serde_json::from_str(text).unwrap();
        let inst = doc.resolve().unwrap();
        assert_eq!(inst.assignment.as_ref().unwrap().tree(0), &[(0, 1), (1, 2)]);
        let again = InstanceDocument::from_hypergraph(&inst.hypergraph)
            .with_assignment(inst.assignment.as_ref().unwrap())
            .with_decomposition(inst.assignment.as_ref().unwrap(), inst.decomposition.as_ref().unwrap())
            .unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn resolution_errors() {
        let bad_vertex = r#"{"vertices":["a","b"],"edges":[{"label":"e","vertices":["a","z"]}]}"#;
        let doc: InstanceDocument = serde_json::from_str(bad_vertex).unwrap();
        assert!(matches!(doc.resolve(), Err(Error::UnknownVertex(_))));
        let missing = r#"{"vertices":["a","b"],"edges":[{"label":"e","vertices":["a","b"]}],
            "assignment":{"centers":{}}}"#;
        let doc: InstanceDocument = serde_json::from_str(missing).unwrap();
        assert!(doc.resolve().is_err());
        let both = r#"{"vertices":["a","b"],"edges":[{"label":"e","vertices":["a","b"]}],
            "assignment":{"centers":{"e":"a"},"trees":{"e":[["a","b"]]}}}"#;
        let doc: InstanceDocument = serde_json::from_str(both).unwrap();
        assert!(doc.resolve().is_err());
    }
}
