//! `S(V)/(v^{l^{r_i}}) -> F_l P` from an `E`-equivariant section of
//! `J -> J/J^2`, with an exact certificate.

use serde::{Deserialize, Serialize};

use super::group::{AbelianLGroup, GroupAlgebra, Sparse, MODULE};
use crate::arith::field::PrimeField;
use crate::error::{Error, Result};

/// `F_l[x_1..x_N] / (x_j^{N_j})`; the monomial `x^a` has the mixed-radix
/// index of `a`, matching the indexing of the group algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedAlgebra {
    pub ell: u64,
    pub nilpotency: Vec<u64>,
}

impl TruncatedAlgebra {
    pub fn new(p: &AbelianLGroup) -> Self {
        TruncatedAlgebra { ell: p.ell, nilpotency: p.moduli().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.nilpotency.iter().map(|&m| m as usize).product()
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<u64> {
        self.nilpotency
            .iter()
            .map(|&m| {
                let e = idx as u64 % m;
                idx /= m as usize;
                e
            })
            .collect()
    }

    /// `None` when some exponent reaches its bound, i.e. the product is 0.
    pub fn index(&self, exps: &[u64]) -> Option<usize> {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&e, &m) in exps.iter().zip(&self.nilpotency) {
            if e >= m {
                return None;
            }
            idx += e as usize * stride;
            stride *= m as usize;
        }
        Some(idx)
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ei = self.exponents(i);
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let s: Vec<u64> = ei.iter().zip(self.exponents(j)).map(|(p, q)| p + q).collect();
                if let Some(k) = self.index(&s) {
                    out[k] = (out[k] + a * b) % self.ell;
                }
            }
        }
        out
    }

    /// Number of monomials of each total degree.
    pub fn graded_dims(&self) -> Vec<u128> {
        let top: u64 = self.nilpotency.iter().map(|m| m - 1).sum();
        let mut dims = vec![0u128; top as usize + 1];
        for i in 0..self.dim() {
            dims[self.exponents(i).iter().sum::<u64>() as usize] += 1;
        }
        dims
    }
}

/// `sigma(x_j)` for the basis `x_j = [g_j - 1]` of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalSection {
    pub images: Vec<Sparse>,
}

fn sigma0(alg: &GroupAlgebra, v: &[u64]) -> Sparse {
    let l = alg.ell;
    let mut out = Vec::new();
    let mut constant = 0u64;
    for (j, &c) in v.iter().enumerate() {
        if c != 0 {
            out.push((alg.generator(j), c));
            constant = (constant + l - c) % l;
        }
    }
    if constant != 0 {
        out.push((0, constant));
    }
    out
}

fn mat_vec(m: &[Vec<u64>], col: usize, l: u64) -> Vec<u64> {
    m.iter().map(|row| row[col] % l).collect()
}

/// `sigma = |E|^{-1} sum_e e sigma_0 e^{-1}` with `sigma_0(x_j) = g_j - 1`.
pub fn radical_section(p: &AbelianLGroup) -> Result<RadicalSection> {
    let alg = GroupAlgebra::new(p);
    let l = p.ell;
    let f = PrimeField::new(l);
    let e_inv = f.pow(p.e_order() as u64 % l, l - 2);
    let mut images = Vec::new();
    for j in 0..p.rank() {
        let mut acc = vec![0u64; alg.size];
        for e in p.e_elements() {
            let inv = p.inverse(e);
            let v = mat_vec(&p.on_v(&inv), j, l);
            for (g, c) in sigma0(&alg, &v) {
                let h = alg.act(e, g);
                acc[h] = (acc[h] + c) % l;
            }
        }
        images.push(
            acc.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(g, &c)| (g, c * e_inv % l))
                .collect(),
        );
    }
    let s = RadicalSection { images };
    for j in 0..p.rank() {
        let x = alg.to_dense(&s.images[j]);
        let mut unit = vec![0u64; p.rank()];
        unit[j] = 1 % l;
        if alg.augmentation(&x) != 0 || alg.radical_class(&x) != unit {
            return Err(Error::breach(MODULE, "section is a right inverse", format!("at x_{j}")));
        }
    }
    if !section_is_equivariant(p, &alg, &s) {
        return Err(Error::breach(MODULE, "averaged section is E-equivariant", "generator check"));
    }
    Ok(s)
}

fn section_image(alg: &GroupAlgebra, s: &RadicalSection, v: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; alg.size];
    for (j, &c) in v.iter().enumerate() {
        for &(g, a) in &s.images[j] {
            out[g] = (out[g] + a * c) % alg.ell;
        }
    }
    out
}

fn section_is_equivariant(p: &AbelianLGroup, alg: &GroupAlgebra, s: &RadicalSection) -> bool {
    let gens: Vec<_> = p
        .e_action
        .iter()
        .map(|m| {
            (0..p.rank())
                .map(|i| (0..p.rank()).map(|j| m[i][j].rem_euclid(p.moduli()[i] as i64) as u64).collect())
                .collect::<Vec<Vec<u64>>>()
        })
        .collect();
    gens.iter().all(|e| {
        (0..p.rank()).all(|j| {
            let lhs = section_image(alg, s, &mat_vec(&p.on_v(e), j, p.ell));
            let rhs = alg.act_on(e, &alg.to_dense(&s.images[j]));
            lhs == rhs
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ell: u64,
    pub factors: Vec<(u32, usize)>,
    #[serde(with = "crate::arith::decimal")]
    pub group_order: u128,
    #[serde(with = "crate::arith::decimal")]
    pub algebra_dim: u128,
    pub e_order: usize,
    pub dimension_ok: bool,
    /// `sigma(x_j)^{N_j} = 0`; Frobenius then kills every `v^{N_i}`, `v in V_i`.
    pub relations_ok: bool,
    /// Image of `x^a` is `prod (g_j - 1)^{a_j}` modulo strictly higher degree.
    pub triangular_ok: bool,
    pub equivariant_ok: bool,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct DegenerationIso {
    pub group: AbelianLGroup,
    pub algebra: TruncatedAlgebra,
    pub section: RadicalSection,
    pub certificate: Certificate,
    images: Vec<Vec<u64>>,
    target: GroupAlgebra,
}

impl DegenerationIso {
    pub fn group_algebra(&self) -> &GroupAlgebra {
        &self.target
    }

    /// Image of the monomial with index `idx`.
    pub fn monomial_image(&self, idx: usize) -> &[u64] {
        &self.images[idx]
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let l = self.group.ell;
        let mut out = vec![0u64; self.target.size];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                for (o, &y) in out.iter_mut().zip(&self.images[i]) {
                    *o = (*o + c * y) % l;
                }
            }
        }
        out
    }
}

pub fn build_isomorphism(p: &AbelianLGroup) -> Result<DegenerationIso> {
    let section = radical_section(p)?;
    let alg = GroupAlgebra::new(p);
    let trunc = TruncatedAlgebra::new(p);
    let n = p.rank();
    let dimension_ok = trunc.dim() as u128 == p.order() && alg.size == trunc.dim();

    let relations_ok = (0..n).all(|j| {
        let x = alg.to_dense(&section.images[j]);
        alg.pow(&x, p.moduli()[j]).iter().all(|&c| c == 0)
    });

    // x^a = x^{a - e_j} * sigma(x_j), j the first nonzero exponent
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(trunc.dim());
    for idx in 0..trunc.dim() {
        if idx == 0 {
            images.push(alg.one());
            continue;
        }
        let mut e = trunc.exponents(idx);
        let j = e.iter().position(|&x| x > 0).unwrap();
        e[j] -= 1;
        let prev = trunc.index(&e).unwrap();
        images.push(alg.mul_sparse(&images[prev], &section.images[j]));
    }

    let degree: Vec<u64> = (0..trunc.dim()).map(|i| trunc.exponents(i).iter().sum()).collect();
    let triangular_ok = images.iter().enumerate().all(|(a, img)| {
        let r = alg.to_radical_basis(img);
        r.iter().enumerate().all(|(b, &c)| {
            if b == a {
                c == 1
            } else {
                degree[b] > degree[a] || c == 0
            }
        })
    });

    let equivariant_ok = section_is_equivariant(p, &alg, &section);
    let certificate = Certificate {
        ell: p.ell,
        factors: p.factors.clone(),
        group_order: p.order(),
        algebra_dim: trunc.dim() as u128,
        e_order: p.e_order(),
        dimension_ok,
        relations_ok,
        triangular_ok,
        equivariant_ok,
        passed: dimension_ok && relations_ok && triangular_ok && equivariant_ok,
    };
    if !certificate.passed {
        return Err(Error::breach(MODULE, "degeneration certificate", format!("{certificate:?}")));
    }
    Ok(DegenerationIso { group: p.clone(), algebra: trunc, section, certificate, images, target: alg })
}
