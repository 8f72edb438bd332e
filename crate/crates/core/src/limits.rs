use crate::error::{Error, Result};

/// Caps for the exhaustive searches. Exceeding a cap is always reported as
/// [`Error::LimitExceeded`]; nothing is truncated silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for loops over all set partitions.
    pub max_t: usize,
    /// Largest hyperedge support for loops over all labelled trees.
    pub max_support: usize,
    /// Largest labelled-edge count for exhaustive decomposition runs.
    pub max_edges: usize,
    /// Largest layer count for exhaustive decomposition runs.
    pub max_k: usize,
    /// Largest family size for loops over all index subsets.
    pub max_subset_t: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_t: 12,
            max_support: 6,
            max_edges: 16,
            max_k: 4,
            max_subset_t: 20,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            Err(Error::LimitExceeded { what, value, cap })
        } else {
            Ok(())
        }
    }

    pub fn check_t(&self, t: usize) -> Result<()> {
        Self::check("vertex count", t, self.max_t)
    }

    pub fn check_support(&self, size: usize) -> Result<()> {
        Self::check("support size", size, self.max_support)
    }

    pub fn check_decomposition(&self, edges: usize, k: usize) -> Result<()> {
        Self::check("labelled edge count", edges, self.max_edges)?;
        Self::check("layer count", k, self.max_k)
    }

    pub fn check_subset_t(&self, t: usize) -> Result<()> {
        Self::check("family size", t, self.max_subset_t)
    }
}
