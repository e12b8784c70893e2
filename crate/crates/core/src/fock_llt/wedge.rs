//! The bar involution of the Fock space through semi-infinite `q`-wedges,
//! truncated to `r` factors with charge 0. `|lambda>` is
//! `u_{k_1} ^ ... ^ u_{k_r}` with `k_i = lambda_i - i + 1`.
//!
//! Straightening, for `l < m` and `i = (m - l) mod d`:
//! `u_l ^ u_m = -u_m ^ u_l` when `i = 0`, and otherwise
//! `u_l ^ u_m = -v^{-1} u_m ^ u_l + (v^{-2} - 1) sum_k (-v^{-1})^k u_{m - s_k} ^ u_{l + s_k}`
//! with shifts `s = i, d, d + i, 2d, ...` while the pair stays decreasing.
//! Bar is antilinear and sends an ordered wedge to its reversal times
//! `(-1)^{r(r-1)/2} v^{#pairs incongruent mod d}`, which makes it
//! unitriangular.

use std::collections::{BTreeMap, HashMap};

use super::partition::Partition;
use crate::arith::laurent::Laurent;

type Wedge = Vec<i64>;
type Expansion = BTreeMap<Wedge, Laurent>;

pub struct WedgeSpace {
    pub d: usize,
    pub r: usize,
    memo: HashMap<Wedge, Expansion>,
}

fn add_into(acc: &mut Expansion, e: &Expansion, c: &Laurent) {
    for (w, a) in e {
        let entry = acc.entry(w.clone()).or_default();
        *entry += &(a * c);
        if entry.is_zero() {
            acc.remove(w);
        }
    }
}

impl WedgeSpace {
    pub fn new(d: usize, r: usize) -> Self {
        WedgeSpace {
            d,
            r,
            memo: HashMap::new(),
        }
    }

    pub fn wedge_of(&self, p: &Partition) -> Wedge {
        (0..self.r).map(|i| p.part(i) as i64 - i as i64).collect()
    }

    pub fn partition_of(&self, w: &[i64]) -> Partition {
        Partition::new(w.iter().enumerate().map(|(i, &k)| (k + i as i64) as usize).collect())
    }

    /// Expansion of an arbitrary wedge in the ordered basis.
    pub fn straighten(&mut self, w: &[i64]) -> Expansion {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let Some(a) = (0..w.len().saturating_sub(1)).find(|&a| w[a] <= w[a + 1]) else {
            return BTreeMap::from([(w.to_vec(), Laurent::one())]);
        };
        let mut out = Expansion::new();
        let (l, m) = (w[a], w[a + 1]);
        if l != m {
            let d = self.d as i64;
            let i = (m - l).rem_euclid(d);
            let with_pair = |x: i64, y: i64| {
                let mut t = w.to_vec();
                t[a] = x;
                t[a + 1] = y;
                t
            };
            if i == 0 {
                let e = self.straighten(&with_pair(m, l));
                add_into(&mut out, &e, &Laurent::constant(-1));
            } else {
                let e = self.straighten(&with_pair(m, l));
                add_into(&mut out, &e, &Laurent::monomial(-1, -1));
                let front = &Laurent::monomial(1, -2) - &Laurent::one();
                let mut k = 0i64;
                loop {
                    let s = if k % 2 == 0 { (k / 2) * d + i } else { (k + 1) / 2 * d };
                    let (x, y) = (m - s, l + s);
                    if x <= y {
                        break;
                    }
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let c = &front * &Laurent::monomial(sign, -(k as i32));
                    let e = self.straighten(&with_pair(x, y));
                    add_into(&mut out, &e, &c);
                    k += 1;
                }
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    /// `bar |lambda>` expanded over partitions.
    pub fn bar(&mut self, p: &Partition) -> BTreeMap<Partition, Laurent> {
        let w = self.wedge_of(p);
        let d = self.d as i64;
        let mut incongruent = 0i32;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if (w[a] - w[b]).rem_euclid(d) != 0 {
                    incongruent += 1;
                }
            }
        }
        let sign = if (self.r * (self.r.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
        let factor = Laurent::monomial(sign, incongruent);
        let rev: Wedge = w.iter().rev().copied().collect();
        let e = self.straighten(&rev);
        e.into_iter()
            .map(|(x, c)| (self.partition_of(&x), &c * &factor))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}
