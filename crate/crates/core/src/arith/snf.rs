//! Smith normal form over the integers and finite abelian quotients `Z^n / R`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

/// Result of `U * A * V = D`: the diagonal of `D` and the left transform `U`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
}

fn row_combine(m: &mut [Vec<i128>], dst: usize, src: usize, c: i128) {
    if c == 0 {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= c * y;
    }
}

/// Smith normal form of an `m x k` matrix given by rows. The column
/// transform is discarded since quotient maps only need `U`.
pub fn smith(a: &[Vec<i128>]) -> SmithForm {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();
    let steps = m.min(k);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..k {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let c = a[i][t] / p;
                row_combine(&mut a, i, t, c);
                row_combine(&mut u, i, t, c);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..k {
                let c = a[t][j] / p;
                for row in a.iter_mut() {
                    row[j] -= c * row[t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..k).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_combine(&mut a, t, i, -1);
                    row_combine(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..m).map(|i| if i < k { a[i][i] } else { 0 }).collect();
    SmithForm { diagonal, left: u }
}

/// The group `Z^n / <columns of R>`, with canonical coordinates against its
/// nontrivial invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianQuotient {
    pub n: usize,
    /// Invariant factors different from 1; `0` marks a free summand.
    pub invariants: Vec<i128>,
    /// Rows of the left transform matching `invariants`.
    rows: Vec<Vec<i128>>,
}

impl AbelianQuotient {
    /// Quotient of `Z^n` by the span of `relations` (each of length `n`).
    pub fn new(n: usize, relations: &[Vec<i128>]) -> Self {
        // relations as columns of an n x r matrix
        let mat: Vec<Vec<i128>> = (0..n)
            .map(|i| relations.iter().map(|r| r[i]).collect())
            .collect();
        let sf = if relations.is_empty() {
            SmithForm {
                diagonal: vec![0; n],
                left: (0..n)
                    .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
                    .collect(),
            }
        } else {
            smith(&mat)
        };
        let mut invariants = Vec::new();
        let mut rows = Vec::new();
        for (i, &d) in sf.diagonal.iter().enumerate() {
            if d != 1 {
                invariants.push(d);
                rows.push(sf.left[i].clone());
            }
        }
        AbelianQuotient {
            n,
            invariants,
            rows,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.invariants.iter().all(|&d| d != 0)
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.invariants
            .iter()
            .try_fold(1u128, |acc, &d| (d != 0).then(|| acc * d as u128))
    }

    /// Canonical coordinates of the class of `x`.
    pub fn class(&self, x: &[i128]) -> Vec<i128> {
        self.rows
            .iter()
            .zip(&self.invariants)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                if d == 0 {
                    v
                } else {
                    v.rem_euclid(d)
                }
            })
            .collect()
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.invariants.len()]
    }

    pub fn add(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        a.iter()
            .zip(b)
            .zip(&self.invariants)
            .map(|((x, y), &d)| if d == 0 { x + y } else { (x + y).rem_euclid(d) })
            .collect()
    }

    /// Elements of the subgroup generated by the classes of `gens`, by closure.
    /// Only for finite groups.
    pub fn subgroup(&self, gens: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
        assert!(self.is_finite());
        let gens: Vec<Vec<i128>> = gens.iter().map(|g| self.class(g)).collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.zero());
        queue.push_back(self.zero());
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Order of the subgroup generated by `gens`, as a lattice index
    /// `[Z^n : R] / [Z^n : R + <gens>]`.
    pub fn subgroup_order(&self, relations: &[Vec<i128>], gens: &[Vec<i128>]) -> Option<u128> {
        let total = self.order()?;
        let mut all = relations.to_vec();
        all.extend(gens.iter().cloned());
        let smaller = AbelianQuotient::new(self.n, &all).order()?;
        Some(total / smaller)
    }
}

/// Index `[Z^n : span(relations)]`, `None` when the span has lower rank.
pub fn lattice_index(n: usize, relations: &[Vec<i128>]) -> Option<u128> {
    AbelianQuotient::new(n, relations).order()
}
