//! The dg algebra `A = F_l[t] (x) Lambda(V) (x) S(V)` with
//! `d(v_j) = t x_j^{N_j}`, and its cohomology over `F_l(t)`.
//!
//! `d` preserves the multidegree in which `v_j` has weight `N_j e_j`. The
//! component of multidegree `b` is the Koszul complex on the generators
//! `{j : b_j >= N_j}`, and relabelling those in increasing order gives the
//! same matrices; so ranks are computed once per support size `m`, and the
//! components of each internal degree are counted exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{AbelianLGroup, MODULE};
use super::iso::TruncatedAlgebra;
use crate::error::{Error, Result};

/// Sparse polynomial in `t` over `F_l`, ascending degrees, no zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TPoly(pub Vec<(u32, u64)>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(Vec::new())
    }
    pub fn monomial(c: u64, k: u32, l: u64) -> Self {
        if c.is_multiple_of(l) { TPoly::zero() } else { TPoly(vec![(k, c % l)]) }
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn from_map(m: BTreeMap<u32, u64>) -> Self {
        TPoly(m.into_iter().filter(|&(_, c)| c != 0).collect())
    }
    pub fn add(&self, o: &TPoly, l: u64) -> TPoly {
        let mut m: BTreeMap<u32, u64> = self.0.iter().copied().collect();
        for &(k, c) in &o.0 {
            let e = m.entry(k).or_insert(0);
            *e = (*e + c) % l;
        }
        TPoly::from_map(m)
    }
    pub fn neg(&self, l: u64) -> TPoly {
        TPoly(self.0.iter().map(|&(k, c)| (k, (l - c) % l)).collect())
    }
    pub fn sub(&self, o: &TPoly, l: u64) -> TPoly {
        self.add(&o.neg(l), l)
    }
    pub fn mul(&self, o: &TPoly, l: u64) -> TPoly {
        let mut m = BTreeMap::new();
        for &(a, x) in &self.0 {
            for &(b, y) in &o.0 {
                let e = m.entry(a + b).or_insert(0);
                *e = (*e + x * y) % l;
            }
        }
        TPoly::from_map(m)
    }
    fn lead(&self) -> Option<(u32, u64)> {
        self.0.last().copied()
    }
    /// Exact division; `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &TPoly, l: u64) -> Option<TPoly> {
        let (db, cb) = o.lead()?;
        let inv = pow_mod(cb, l - 2, l);
        let mut rem = self.clone();
        let mut q = BTreeMap::new();
        while let Some((da, ca)) = rem.lead() {
            if da < db {
                return None;
            }
            let c = ca * inv % l;
            q.insert(da - db, c);
            rem = rem.sub(&TPoly::monomial(c, da - db, l).mul(o, l), l);
        }
        Some(TPoly::from_map(q))
    }
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    acc
}

/// Rank over `F_l(t)` by fraction-free elimination over `F_l[t]`.
pub fn bareiss_rank(mut m: Vec<Vec<TPoly>>, l: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = TPoly::monomial(1, 0, l);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let f = m[i][c].clone();
            for j in c + 1..cols {
                let num = piv.mul(&m[i][j], l).sub(&f.mul(&m[r][j], l), l);
                m[i][j] = num.div_exact(&prev, l).expect("Bareiss division is exact");
            }
            m[i][c] = TPoly::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Basis element `v_S x^a` of `A` over `F_l[t]`.
pub type DgMonomial = (u32, Vec<u32>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgElement {
    pub terms: BTreeMap<DgMonomial, TPoly>,
}

impl DgElement {
    fn push(&mut self, key: DgMonomial, c: TPoly, l: u64) {
        let e = self.terms.entry(key.clone()).or_default();
        *e = e.add(&c, l);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgAlgebra {
    pub ell: u64,
    pub nilpotency: Vec<u64>,
}

/// Sign of moving the exterior factors of `t` past those of `s`.
fn wedge_sign(s: u32, t: u32) -> bool {
    let mut odd = false;
    for j in 0..32 {
        if t >> j & 1 == 1 {
            odd ^= (s >> (j + 1)).count_ones() % 2 == 1;
        }
    }
    odd
}

impl DgAlgebra {
    pub fn new(p: &AbelianLGroup) -> Self {
        DgAlgebra { ell: p.ell, nilpotency: p.moduli().to_vec() }
    }

    pub fn basis(&self, mask: u32, exps: Vec<u32>) -> DgElement {
        let mut e = DgElement::default();
        e.push((mask, exps), TPoly::monomial(1, 0, self.ell), self.ell);
        e
    }

    /// Cohomological degree `-|S|` of a homogeneous term.
    pub fn degree(key: &DgMonomial) -> i32 {
        -(key.0.count_ones() as i32)
    }

    pub fn add(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let mut out = a.clone();
        for (k, c) in &b.terms {
            out.push(k.clone(), c.clone(), self.ell);
        }
        out
    }

    pub fn scale(&self, a: &DgElement, c: &TPoly) -> DgElement {
        let mut out = DgElement::default();
        for (k, x) in &a.terms {
            out.push(k.clone(), x.mul(c, self.ell), self.ell);
        }
        out
    }

    pub fn mul(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let l = self.ell;
        let mut out = DgElement::default();
        for ((s, xa), ca) in &a.terms {
            for ((t, xb), cb) in &b.terms {
                if s & t != 0 {
                    continue;
                }
                let mut c = ca.mul(cb, l);
                if wedge_sign(*s, *t) {
                    c = c.neg(l);
                }
                let x: Vec<u32> = xa.iter().zip(xb).map(|(p, q)| p + q).collect();
                out.push((s | t, x), c, l);
            }
        }
        out
    }

    /// `d(v_S x^a) = sum_{j in S} (-1)^{#{i in S, i < j}} t x_j^{N_j} v_{S - j} x^a`.
    pub fn d(&self, a: &DgElement) -> DgElement {
        let l = self.ell;
        let mut out = DgElement::default();
        for ((s, x), c) in &a.terms {
            let mut before = 0;
            for j in 0..self.nilpotency.len() {
                if s >> j & 1 == 0 {
                    continue;
                }
                let mut coef = c.mul(&TPoly::monomial(1, 1, l), l);
                if before % 2 == 1 {
                    coef = coef.neg(l);
                }
                let mut y = x.clone();
                y[j] += self.nilpotency[j] as u32;
                out.push((s & !(1 << j), y), coef, l);
                before += 1;
            }
        }
        out
    }
}

/// Matrix of `d: C^{-k} -> C^{-k+1}` on the Koszul component generated by
/// `m` variables, columns indexed by `k`-subsets and rows by `(k-1)`-subsets.
fn koszul_matrix(alg: &DgAlgebra, m: usize, k: usize) -> Vec<Vec<TPoly>> {
    let subsets = |size: usize| -> Vec<u32> { (0u32..1 << m).filter(|s| s.count_ones() as usize == size).collect() };
    let src = subsets(k);
    let dst = subsets(k - 1);
    let base: Vec<u32> = alg.nilpotency[..m].iter().map(|&x| x as u32).collect();
    let pad = |v: Vec<u32>| -> Vec<u32> {
        let mut w = vec![0; alg.nilpotency.len()];
        w[..m].copy_from_slice(&v);
        w
    };
    let mut mat = vec![vec![TPoly::zero(); src.len()]; dst.len()];
    for (c, &s) in src.iter().enumerate() {
        // x^{b - N_S} with b = sum_{j < m} N_j e_j, the minimal multidegree
        let exps: Vec<u32> = (0..m).map(|j| if s >> j & 1 == 1 { 0 } else { base[j] }).collect();
        let img = alg.d(&alg.basis(s, pad(exps)));
        for ((t, _), coef) in img.terms {
            let r = dst.iter().position(|&x| x == t).unwrap();
            mat[r][c] = coef;
        }
    }
    mat
}

fn mat_mul(a: &[Vec<TPoly>], b: &[Vec<TPoly>], l: u64) -> Vec<Vec<TPoly>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(TPoly::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j], l), l)))
                .collect()
        })
        .collect()
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgDegreeRow {
    pub internal_degree: usize,
    /// `dim C^{-k}` for `k = 0..=N`.
    #[serde(with = "crate::arith::decimal::list")]
    pub chain_dims: Vec<u128>,
    /// `dim H^{-k}` over `F_l(t)`.
    #[serde(with = "crate::arith::decimal::list")]
    pub cohomology: Vec<u128>,
    #[serde(with = "crate::arith::decimal")]
    pub truncated_dim: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgReport {
    pub ell: u64,
    pub degree_bound: usize,
    pub d_squared_zero: bool,
    pub higher_vanish: bool,
    pub h0_matches: bool,
    pub rows: Vec<DgDegreeRow>,
}

pub fn dg_cohomology_check(p: &AbelianLGroup, degree_bound: usize) -> Result<DgReport> {
    let l = p.ell;
    let n = p.rank();
    let big = p.moduli().iter().copied().max().unwrap_or(0) as usize;
    if degree_bound < big {
        return Err(Error::bad(MODULE, format!("inconclusive at bound {degree_bound}: need at least {big}")));
    }
    let alg = DgAlgebra::new(p);
    let min_n = p.moduli().iter().copied().min().unwrap_or(1) as usize;
    let max_support = n.min(degree_bound / min_n.max(1));

    // ranks[m][k] = rank of d: C^{-k} -> C^{-k+1} on the m-generator Koszul complex
    let mut ranks = vec![vec![0usize; n + 2]; n + 1];
    let mut d_squared_zero = true;
    for m in 0..=max_support {
        let mut prev: Option<Vec<Vec<TPoly>>> = None;
        for k in 1..=m {
            let mat = koszul_matrix(&alg, m, k);
            ranks[m][k] = bareiss_rank(mat.clone(), l);
            if let Some(pm) = &prev {
                if mat_mul(pm, &mat, l).iter().flatten().any(|c| !c.is_zero()) {
                    d_squared_zero = false;
                }
            }
            prev = Some(mat);
        }
    }

    // counts[delta][m]: multidegrees b with |b| = delta and m indices b_j >= N_j
    let mut counts = vec![vec![0u128; n + 1]; degree_bound + 1];
    counts[0][0] = 1;
    for &nj in p.moduli() {
        let nj = nj as usize;
        let mut next = vec![vec![0u128; n + 1]; degree_bound + 1];
        for (delta, row) in counts.iter().enumerate() {
            for (m, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for b in 0..=degree_bound - delta {
                    let hit = usize::from(b >= nj);
                    if m + hit <= n {
                        next[delta + b][m + hit] += c;
                    }
                }
            }
        }
        counts = next;
    }

    let graded = TruncatedAlgebra::new(p).graded_dims();
    let mut rows = Vec::new();
    let (mut higher_vanish, mut h0_matches) = (true, true);
    for (delta, row) in counts.iter().enumerate() {
        let mut chain_dims = vec![0u128; n + 1];
        let mut rank_k = vec![0u128; n + 2];
        for (m, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            assert!(m <= max_support, "support bound");
            for k in 0..=m {
                chain_dims[k] += c * binom(m, k);
                rank_k[k] += c * ranks[m][k] as u128;
            }
        }
        let cohomology: Vec<u128> = (0..=n).map(|k| chain_dims[k] - rank_k[k] - rank_k[k + 1]).collect();
        let truncated_dim = graded.get(delta).copied().unwrap_or(0);
        higher_vanish &= cohomology[1..].iter().all(|&h| h == 0);
        h0_matches &= cohomology[0] == truncated_dim;
        rows.push(DgDegreeRow { internal_degree: delta, chain_dims, cohomology, truncated_dim });
    }
    let report = DgReport { ell: l, degree_bound, d_squared_zero, higher_vanish, h0_matches, rows };
    if !(d_squared_zero && higher_vanish && h0_matches) {
        return Err(Error::breach(
            MODULE,
            "H^i = 0 for i != 0 and H^0 = truncated algebra",
            format!("d^2=0 {d_squared_zero}, vanishing {higher_vanish}, H^0 {h0_matches}"),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_term_complex() {
        let p = AbelianLGroup::new(5, vec![(1, 1)], vec![]).unwrap();
        let r = dg_cohomology_check(&p, 10).unwrap();
        assert_eq!(r.rows[3].cohomology, vec![1, 0]);
        assert_eq!(r.rows[7].chain_dims, vec![1, 1]);
        assert_eq!(r.rows[7].cohomology, vec![0, 0]);
    }

    #[test]
    fn trivial_group() {
        let p = AbelianLGroup::new(3, vec![], vec![]).unwrap();
        let r = dg_cohomology_check(&p, 0).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].cohomology, vec![1]);
    }

    #[test]
    fn inconclusive_below_generator_order() {
        let p = AbelianLGroup::new(3, vec![(2, 1)], vec![]).unwrap();
        assert!(matches!(dg_cohomology_check(&p, 8), Err(Error::BadInput { .. })));
    }

    #[test]
    fn bareiss_ranks() {
        let l = 7;
        let t = |k| TPoly::monomial(1, k, l);
        let m = vec![vec![t(1), t(2)], vec![t(2), t(3)]];
        assert_eq!(bareiss_rank(m, l), 1);
        let m = vec![vec![t(1), t(0)], vec![t(0), t(1)]];
        assert_eq!(bareiss_rank(m, l), 2);
    }

    #[test]
    fn d_squares_to_zero_on_generators() {
        let p = AbelianLGroup::new(2, vec![(1, 2), (2, 1)], vec![]).unwrap();
        let a = DgAlgebra::new(&p);
        for s in 0u32..8 {
            let x = a.basis(s, vec![1, 0, 2]);
            assert!(a.d(&a.d(&x)).terms.is_empty());
        }
    }
}
