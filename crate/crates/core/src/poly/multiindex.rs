use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `dn`-dimensional multi-index α selecting the partial derivative `D^α`.
/// Entry `(i, j)` (zero-based) lives at flat position `d·i + j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    n: usize,
    d: usize,
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(n: usize, d: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * d {
            return Err(Error::InvalidArgument(format!(
                "multi-index needs {} entries for n={n}, d={d}, got {}",
                n * d,
                entries.len()
            )));
        }
        Ok(Self { n, d, entries })
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            entries: vec![0; n * d],
        }
    }

    /// `e_{i+1, j+1}` (zero-based arguments).
    pub fn unit(n: usize, d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n, d);
        m.entries[i * d + j] = 1;
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.d + j]
    }

    /// `|α|`.
    pub fn order(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.shape() != other.shape() {
            return Err(Error::shape(self.shape(), other.shape()));
        }
        Ok(MultiIndex {
            n: self.n,
            d: self.d,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, k: u32) -> MultiIndex {
        MultiIndex {
            n: self.n,
            d: self.d,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    /// Every multi-index with `|α| ≤ k`, ordered by order then
    /// lexicographically descending (so `e_{1,1}` precedes `e_{1,2}`).
    pub fn all_up_to(n: usize, d: usize, k: u32) -> Vec<MultiIndex> {
        let len = n * d;
        let mut out = Vec::new();
        for order in 0..=k {
            let mut cur = vec![0u32; len];
            compositions(len, order, 0, &mut cur, &mut out);
        }
        out.into_iter()
            .map(|entries| MultiIndex { n, d, entries })
            .collect()
    }
}

fn compositions(len: usize, remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == len {
        cur[pos] = remaining;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for v in (0..=remaining).rev() {
        cur[pos] = v;
        compositions(len, remaining - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening_follows_row_major_blocks() {
        let e = MultiIndex::unit(3, 2, 1, 0);
        assert_eq!(e.entries(), &[0, 0, 1, 0, 0, 0]);
        assert_eq!(e.get(1, 0), 1);
    }

    #[test]
    fn enumeration_counts() {
        // number of α with |α| ≤ k in m variables is C(m+k, k)
        assert_eq!(MultiIndex::all_up_to(2, 1, 1).len(), 3);
        assert_eq!(MultiIndex::all_up_to(2, 2, 2).len(), 15);
        let all = MultiIndex::all_up_to(2, 1, 1);
        assert_eq!(all[1], MultiIndex::unit(2, 1, 0, 0));
        assert_eq!(all[2], MultiIndex::unit(2, 1, 1, 0));
    }

    #[test]
    fn add_checks_shape() {
        let a = MultiIndex::unit(2, 1, 0, 0);
        let b = MultiIndex::unit(1, 2, 0, 0);
        assert!(a.add(&b).is_err());
        assert_eq!(a.add(&a).unwrap().order(), 2);
    }
}
