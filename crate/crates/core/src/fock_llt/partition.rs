//! Integer partitions: enumeration, residues, dominance and `d`-cores.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Weakly decreasing positive parts. The derived order is lexicographic on
/// parts, a total order refining dominance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    /// `lambda >= mu` in dominance order (same size assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0usize, 0usize);
        for r in 0..self.len().max(other.len()) {
            a += self.part(r);
            b += other.part(r);
            if a < b {
                return false;
            }
        }
        true
    }

    /// No part repeated `d` or more times.
    pub fn is_d_regular(&self, d: usize) -> bool {
        self.parts.windows(d).all(|w| w[0] != w[d - 1])
    }

    /// Rows `r` where a node can be added, with its column.
    pub fn addable(&self) -> Vec<(usize, usize)> {
        (0..=self.len())
            .filter(|&r| r == 0 || self.part(r) < self.part(r - 1))
            .map(|r| (r, self.part(r)))
            .collect()
    }

    pub fn removable(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .map(|r| (r, self.part(r) - 1))
            .collect()
    }

    pub fn with_node(&self, r: usize) -> Partition {
        let mut p = self.parts.clone();
        if r == p.len() {
            p.push(1);
        } else {
            p[r] += 1;
        }
        Partition { parts: p }
    }

    /// The `d`-core, by sliding beads on a `d`-runner abacus.
    pub fn core(&self, d: usize) -> Partition {
        let k = self.len();
        let beta: Vec<usize> = (0..k).map(|i| self.parts[i] + (k - 1 - i)).collect();
        let mut runners = vec![0usize; d];
        for &b in &beta {
            runners[b % d] += 1;
        }
        let mut beads: Vec<usize> = Vec::new();
        for (r, &c) in runners.iter().enumerate() {
            beads.extend((0..c).map(|j| r + j * d));
        }
        beads.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(beads.iter().enumerate().map(|(i, &b)| b - (k - 1 - i)).collect())
    }

    /// Number of nodes on each ladder `r + (d - 1) c`; ladder `l` has residue `-l mod d`.
    pub fn ladders(&self, d: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 0..p {
                let l = r + (d - 1) * c;
                if out.len() <= l {
                    out.resize(l + 1, 0);
                }
                out[l] += 1;
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Residue `c - r mod d` of the node in row `r`, column `c`.
pub fn residue(r: usize, c: usize, d: usize) -> usize {
    (c as i64 - r as i64).rem_euclid(d as i64) as usize
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
