use thiserror::Error;

use crate::assignment::AssignmentDiagnostic;
use crate::certificate::CertificateDiagnostic;
use crate::decomposition::DecompositionDiagnostic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a hypergraph needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex id {id} out of range for {t} vertices")]
    VertexOutOfRange { id: usize, t: usize },
    #[error("duplicate edge label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown edge label `{0}`")]
    UnknownLabel(String),
    #[error("edge `{label}` has support of size {size}; hyperedges need at least two vertices")]
    EdgeTooSmall { label: String, size: usize },
    #[error("edge `{label}` lists vertex {vertex} twice")]
    RepeatedSupportVertex { label: String, vertex: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition covers {got} vertices but the instance has {expected}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("center {center} is not in the support of `{label}`")]
    CenterNotInSupport { label: String, center: usize },
    #[error("label `{0}` is not realized by a star")]
    NotStar(String),
    #[error("invalid tree assignment: {0}")]
    InvalidAssignment(AssignmentDiagnostic),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(DecompositionDiagnostic),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(CertificateDiagnostic),
    #[error("decomposition does not match the multigraph: {0}")]
    DecompositionMismatch(String),
    #[error("one-vertex sum: {0}")]
    Gluing(String),
    #[error("invalid index family: {0}")]
    InvalidFamily(String),
    #[error("invalid layer-rank input: {0}")]
    InvalidLayerClasses(String),
}

impl Error {
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
