//! Finite abelian `l`-groups `prod (Z/l^{r_i})^{n_i}` with an `l'`-group of
//! automorphisms, and their group algebras over `F_l`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::arith::field::{rank, PrimeField};
use crate::arith::numtheory::is_prime;
use crate::error::{Error, Result};

pub(super) const MODULE: &str = "degeneration";
pub const DEFAULT_GROUP_LIMIT: u128 = 2187;
const E_LIMIT: usize = 100_000;

/// Automorphism matrix acting on exponent columns, entry `(i, j)` reduced
/// modulo the order of coordinate `i`.
pub type AutMatrix = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianLGroup {
    pub ell: u64,
    /// `(r_i, n_i)`: `n_i` cyclic factors of order `l^{r_i}`.
    pub factors: Vec<(u32, usize)>,
    /// Generators of `E` in the natural coordinates.
    pub e_action: Vec<Vec<Vec<i64>>>,
    #[serde(skip)]
    moduli: Vec<u64>,
    #[serde(skip)]
    e_elements: Vec<AutMatrix>,
}

impl AbelianLGroup {
    pub fn new(ell: u64, factors: Vec<(u32, usize)>, e_action: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        Self::with_limit(ell, factors, e_action, DEFAULT_GROUP_LIMIT)
    }

    pub fn with_limit(
        ell: u64,
        factors: Vec<(u32, usize)>,
        e_action: Vec<Vec<Vec<i64>>>,
        limit: u128,
    ) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::bad(MODULE, format!("{ell} is not prime")));
        }
        let factors: Vec<(u32, usize)> = factors.into_iter().filter(|&(_, n)| n > 0).collect();
        if factors.iter().any(|&(r, _)| r == 0) {
            return Err(Error::bad(MODULE, "exponents r_i must be positive"));
        }
        let mut order: u128 = 1;
        let mut moduli = Vec::new();
        for &(r, n) in &factors {
            let m = (ell as u128).checked_pow(r).filter(|&m| m <= u64::MAX as u128);
            let Some(m) = m else {
                return Err(Error::GuardExceeded { module: MODULE, predicted: u128::MAX, limit });
            };
            for _ in 0..n {
                order = order.saturating_mul(m);
                moduli.push(m as u64);
            }
        }
        if order > limit {
            return Err(Error::GuardExceeded { module: MODULE, predicted: order, limit });
        }
        let mut g = AbelianLGroup { ell, factors, e_action, moduli, e_elements: Vec::new() };
        g.e_elements = g.close_e()?;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Order `l^{r}` of each coordinate.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// Factor index of each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        self.factors.iter().enumerate().flat_map(|(i, &(_, n))| std::iter::repeat_n(i, n)).collect()
    }

    /// Every element of the image of `E` in `Aut(P)`.
    pub fn e_elements(&self) -> &[AutMatrix] {
        &self.e_elements
    }

    pub fn e_order(&self) -> usize {
        self.e_elements.len()
    }

    pub fn identity(&self) -> AutMatrix {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % self.moduli[i]).collect()).collect()
    }

    pub fn compose(&self, a: &AutMatrix, b: &AutMatrix) -> AutMatrix {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let m = self.moduli[i] as u128;
                (0..n)
                    .map(|j| ((0..n).map(|k| a[i][k] as u128 * b[k][j] as u128 % m).sum::<u128>() % m) as u64)
                    .collect()
            })
            .collect()
    }

    pub fn inverse(&self, a: &AutMatrix) -> AutMatrix {
        let mut p = a.clone();
        let id = self.identity();
        loop {
            let next = self.compose(&p, a);
            if next == id {
                return p;
            }
            p = next;
        }
    }

    /// `M mod l`: the action on `V = J/J^2`.
    pub fn on_v(&self, a: &AutMatrix) -> Vec<Vec<u64>> {
        a.iter().map(|row| row.iter().map(|&x| x % self.ell).collect()).collect()
    }

    fn close_e(&self) -> Result<Vec<AutMatrix>> {
        let n = self.rank();
        let block = self.block_of();
        let mut gens = Vec::new();
        for (gi, m) in self.e_action.iter().enumerate() {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::bad(MODULE, format!("E generator {gi} is not {n}x{n}")));
            }
            let red: AutMatrix = (0..n)
                .map(|i| (0..n).map(|j| m[i][j].rem_euclid(self.moduli[i] as i64) as u64).collect())
                .collect();
            for i in 0..n {
                for j in 0..n {
                    if block[i] != block[j] && red[i][j] != 0 {
                        return Err(Error::bad(MODULE, format!("E generator {gi} does not preserve the factor decomposition")));
                    }
                }
            }
            for b in 0..self.factors.len() {
                let idx: Vec<usize> = (0..n).filter(|&i| block[i] == b).collect();
                let f = PrimeField::new(self.ell);
                let sub: Vec<Vec<u64>> = idx.iter().map(|&i| idx.iter().map(|&j| red[i][j] % self.ell).collect()).collect();
                if rank(&f, &sub) < idx.len() {
                    return Err(Error::bad(MODULE, format!("E generator {gi} is not invertible on factor {b}")));
                }
            }
            gens.push(red);
        }
        let id = self.identity();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > E_LIMIT {
                        return Err(Error::GuardExceeded { module: MODULE, predicted: seen.len() as u128, limit: E_LIMIT as u128 });
                    }
                    queue.push_back(y);
                }
            }
        }
        if (seen.len() as u64).is_multiple_of(self.ell) {
            return Err(Error::bad(MODULE, format!("l = {} divides |E| = {}", self.ell, seen.len())));
        }
        Ok(seen.into_iter().collect())
    }
}

/// `F_l P` with elements as dense coefficient vectors over mixed-radix
/// indices; coordinate 0 varies fastest.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub ell: u64,
    pub moduli: Vec<u64>,
    pub size: usize,
    strides: Vec<usize>,
    table: Vec<Vec<u64>>,
}

pub type Sparse = Vec<(usize, u64)>;

impl GroupAlgebra {
    pub fn new(p: &AbelianLGroup) -> Self {
        let moduli = p.moduli().to_vec();
        let mut strides = Vec::with_capacity(moduli.len());
        let mut s = 1usize;
        for &m in &moduli {
            strides.push(s);
            s *= m as usize;
        }
        let mut a = GroupAlgebra { ell: p.ell, moduli, size: s, strides, table: Vec::new() };
        a.table = (0..s).map(|i| a.compute_coords(i)).collect();
        a
    }

    pub fn coords(&self, idx: usize) -> Vec<u64> {
        self.table[idx].clone()
    }

    fn compute_coords(&self, mut idx: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = idx as u64 % m;
                idx /= m as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.moduli).zip(&self.strides).map(|((&c, &m), &s)| (c % m) as usize * s).sum()
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index(&c)
    }

    pub fn generator(&self, j: usize) -> usize {
        self.strides[j]
    }

    /// Image of a group element under an automorphism.
    pub fn act(&self, a: &AutMatrix, idx: usize) -> usize {
        let c = &self.table[idx];
        let n = c.len();
        let img: Vec<u64> = (0..n)
            .map(|i| {
                let m = self.moduli[i] as u128;
                ((0..n).map(|k| a[i][k] as u128 * c[k] as u128 % m).sum::<u128>() % m) as u64
            })
            .collect();
        self.index(&img)
    }

    pub fn act_on(&self, a: &AutMatrix, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.size];
        for (g, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.act(a, g)] = c;
            }
        }
        out
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.size];
        v[0] = 1 % self.ell;
        v
    }

    pub fn to_dense(&self, s: &Sparse) -> Vec<u64> {
        let mut v = vec![0; self.size];
        for &(g, c) in s {
            v[g] = (v[g] + c) % self.ell;
        }
        v
    }

    pub fn mul_sparse(&self, x: &[u64], s: &Sparse) -> Vec<u64> {
        let l = self.ell;
        let mut out = vec![0; self.size];
        for (g, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let cg = &self.table[g];
            for &(h, c) in s {
                let k: usize = cg
                    .iter()
                    .zip(&self.table[h])
                    .zip(self.moduli.iter().zip(&self.strides))
                    .map(|((u, v), (&m, &st))| ((u + v) % m) as usize * st)
                    .sum();
                out[k] = (out[k] + a * c) % l;
            }
        }
        out
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let s: Sparse = y.iter().enumerate().filter(|(_, &c)| c != 0).map(|(g, &c)| (g, c)).collect();
        self.mul_sparse(x, &s)
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn augmentation(&self, x: &[u64]) -> u64 {
        x.iter().fold(0, |a, &c| (a + c) % self.ell)
    }

    /// Class in `V = J/J^2` of an augmentation-zero element:
    /// `g - 1 = sum_j a_j (g_j - 1) mod J^2` for `g = sum a_j e_j`.
    pub fn radical_class(&self, x: &[u64]) -> Vec<u64> {
        let l = self.ell;
        let mut v = vec![0u64; self.moduli.len()];
        for (g, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (vj, &a) in v.iter_mut().zip(&self.table[g]) {
                *vj = (*vj + c * (a % l)) % l;
            }
        }
        v
    }

    /// Coefficients in the basis `prod (g_j - 1)^{a_j}`, from
    /// `g^k = sum_i binom(k, i) (g - 1)^i`.
    pub fn to_radical_basis(&self, x: &[u64]) -> Vec<u64> {
        let l = self.ell;
        let binom = LucasBinomial::new(l);
        let mut cur = x.to_vec();
        for (axis, &m) in self.moduli.iter().enumerate() {
            let m = m as usize;
            let stride = self.strides[axis];
            let mut next = vec![0u64; self.size];
            for base in 0..self.size {
                if !(base / stride).is_multiple_of(m) {
                    continue;
                }
                for k in 0..m {
                    let c = cur[base + k * stride];
                    if c == 0 {
                        continue;
                    }
                    for i in 0..=k {
                        let b = binom.get(k as u64, i as u64);
                        if b != 0 {
                            let t = base + i * stride;
                            next[t] = (next[t] + c * b) % l;
                        }
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

/// `binom(a, b) mod l` by Lucas' theorem.
struct LucasBinomial {
    l: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl LucasBinomial {
    fn new(l: u64) -> Self {
        let f = PrimeField::new(l);
        let mut fact = vec![1u64; l as usize];
        for i in 1..l as usize {
            fact[i] = fact[i - 1] * i as u64 % l;
        }
        let inv_fact = fact.iter().map(|&x| f.pow(x, l - 2)).collect();
        LucasBinomial { l, fact, inv_fact }
    }

    fn get(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 1u64;
        while a > 0 || b > 0 {
            let (x, y) = ((a % self.l) as usize, (b % self.l) as usize);
            if y > x {
                return 0;
            }
            acc = acc * self.fact[x] % self.l * self.inv_fact[y] % self.l * self.inv_fact[x - y] % self.l;
            a /= self.l;
            b /= self.l;
        }
        acc
    }
}
