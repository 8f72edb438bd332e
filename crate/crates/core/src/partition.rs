//! Set partitions of `{0, .., t-1}` in restricted-growth form.
//!
//! A partition is stored as the string `rgs` where `rgs[v]` is the block of
//! vertex `v`, block indices are numbered by first occurrence, and
//! `rgs[v] <= 1 + max(rgs[..v])`. Every partition has exactly one such
//! string, so equality of partitions is equality of strings.

use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    rgs: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Validate a restricted-growth string.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        if rgs.is_empty() {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        let mut blocks = 0;
        for (v, &b) in rgs.iter().enumerate() {
            if b > blocks {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} has block {b} but only {blocks} blocks precede it"
                )));
            }
            if b == blocks {
                blocks += 1;
            }
        }
        Ok(Partition { rgs, blocks })
    }

    /// Canonicalize an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        let mut seen = std::collections::HashMap::new();
        let rgs = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Self::from_rgs(rgs)
    }

    /// Build from explicit blocks; the blocks must cover `0..t` exactly once.
    pub fn from_blocks(t: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; t];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= t {
                    return Err(Error::VertexOutOfRange { id: v, t });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        Self::from_labels(&labels)
    }

    /// Parse either a compact digit string (`"0112"`, base 36) or a
    /// comma-separated list (`"0,1,1,2"`).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let rgs: Option<Vec<usize>> = if text.contains(',') {
            text.split(',').map(|s| s.trim().parse().ok()).collect()
        } else {
            text.chars().map(|c| c.to_digit(36).map(|d| d as usize)).collect()
        };
        match rgs {
            Some(rgs) => Self::from_rgs(rgs),
            None => Err(Error::InvalidPartition(format!("cannot parse `{text}`"))),
        }
    }

    pub fn trivial(t: usize) -> Self {
        Partition {
            rgs: vec![0; t],
            blocks: usize::from(t > 0),
        }
    }

    pub fn discrete(t: usize) -> Self {
        Partition {
            rgs: (0..t).collect(),
            blocks: t,
        }
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.rgs[v]
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in self.rgs.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    pub(crate) fn expect_len(&self, t: usize) -> Result<()> {
        if self.rgs.len() != t {
            Err(Error::PartitionMismatch {
                expected: t,
                got: self.rgs.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Blocks rendered with the given vertex names, e.g. `r|ab` style lists.
    pub fn named_blocks(&self, names: &[String]) -> Vec<Vec<String>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|v| names[v].clone()).collect())
            .collect()
    }
}

impl fmt::Display for Partition {
    /// Compact base-36 restricted-growth string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.rgs {
            let c = std::char::from_digit(b as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All set partitions of `{0..t-1}` in lexicographic restricted-growth order.
#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Vec<usize>,
    // maxima[i] = max(rgs[..=i])
    maxima: Vec<usize>,
    started: bool,
    done: bool,
}

/// Stream every set partition of a `t`-element set exactly once.
pub fn enumerate_partitions(t: usize) -> Partitions {
    Partitions {
        rgs: vec![0; t],
        maxima: vec![0; t],
        started: false,
        done: t == 0,
    }
}

/// Like [`enumerate_partitions`], refusing ground sets above `limits.max_t`.
pub fn enumerate_partitions_capped(t: usize, limits: &Limits) -> Result<Partitions> {
    limits.check_t(t)?;
    Ok(enumerate_partitions(t))
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            let t = self.rgs.len();
            // rightmost position that can still grow
            let pos = (1..t).rev().find(|&i| self.rgs[i] <= self.maxima[i - 1]);
            let Some(i) = pos else {
                self.done = true;
                return None;
            };
            self.rgs[i] += 1;
            self.maxima[i] = self.maxima[i - 1].max(self.rgs[i]);
            for j in i + 1..t {
                self.rgs[j] = 0;
                self.maxima[j] = self.maxima[i];
            }
        }
        let blocks = self.maxima.last().map_or(0, |m| m + 1);
        Some(Partition {
            rgs: self.rgs.clone(),
            blocks,
        })
    }
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    // Independent oracle: recursively place each element in an existing block
    // or a new one.
    fn brute(t: usize) -> BTreeSet<Vec<usize>> {
        fn go(i: usize, t: usize, cur: &mut Vec<usize>, nblocks: usize, out: &mut BTreeSet<Vec<usize>>) {
            if i == t {
                out.insert(cur.clone());
                return;
            }
            for b in 0..=nblocks {
                cur.push(b);
                go(i + 1, t, cur, nblocks.max(b + 1), out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        go(0, t, &mut Vec::new(), 0, &mut out);
        out
    }

    #[test]
    fn counts_match_bell_numbers() {
        assert_eq!(enumerate_partitions(1).count(), 1);
        assert_eq!(enumerate_partitions(3).count(), 5);
        assert_eq!(enumerate_partitions(4).count(), 15);
        for t in 1..=8 {
            assert_eq!(enumerate_partitions(t).count() as u64, bell(t));
        }
        assert_eq!(bell(12), 4_213_597);
    }

    #[test]
    fn stream_matches_recursive_oracle_in_order() {
        for t in 1..=6 {
            let got: Vec<Vec<usize>> = enumerate_partitions(t).map(|p| p.rgs().to_vec()).collect();
            let want: Vec<Vec<usize>> = brute(t).into_iter().collect();
            assert_eq!(got, want, "t = {t}");
        }
    }

    #[test]
    fn canonicalization() {
        let p = Partition::from_labels(&[7, 3, 7, 9]).unwrap();
        assert_eq!(p.rgs(), &[0, 1, 0, 2]);
        assert_eq!(p.num_blocks(), 3);
        let q = Partition::from_blocks(4, &[vec![3], vec![1], vec![0, 2]]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string(), "0102");
        assert_eq!(Partition::parse("0,1,0,2").unwrap(), p);
        assert_eq!(Partition::parse("0102").unwrap(), p);
    }

    #[test]
    fn rejects_non_canonical_strings() {
        assert!(Partition::from_rgs(vec![1, 0]).is_err());
        assert!(Partition::from_rgs(vec![0, 2]).is_err());
        assert!(Partition::from_rgs(vec![]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![0, 1], vec![1]]).is_err());
        assert!(Partition::parse("0x").is_err());
    }

    #[test]
    fn cap_is_an_error() {
        let limits = Limits { max_t: 5, ..Limits::default() };
        assert!(enumerate_partitions_capped(5, &limits).is_ok());
        assert!(enumerate_partitions_capped(6, &limits).unwrap_err().is_limit());
    }
}
