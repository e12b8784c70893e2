//! Simply connected root data with a diagram automorphism.
//!
//! Cartan convention: `cartan[i][j] = <alpha_i, alpha_j^vee>`, so the simple
//! root `alpha_i` written in the fundamental-weight basis is row `i`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MODULE: &str = "root_datum";
pub const MAX_RANK: usize = 8;

/// A dominant-or-not weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    /// The fundamental weight `omega_i` (0-based).
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Weight { coords }
    }
}

/// One simple factor of the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
    /// Index of the first node of this factor.
    pub offset: usize,
}

/// Orbit of `phi` on the simple factors, with the twist induced on a single
/// factor by `phi^copies`. Drives the generic order tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOrbit {
    pub letter: char,
    pub rank: usize,
    pub copies: usize,
    pub inner_twist: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub type_label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// 0-based permutation of the simple roots.
    pub phi: Vec<usize>,
    pub delta: usize,
    /// Positive roots in the simple-root basis.
    pub pos_roots: Vec<Vec<i64>>,
    /// Matching positive coroots in the simple-coroot basis.
    pub pos_coroots: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n_pos: usize,
    pub rho: Vec<i64>,
    /// Gram matrix of the invariant form on simple roots, short roots of
    /// squared length 2.
    pub form: Vec<Vec<i64>>,
    pub components: Vec<Component>,
    pub factor_orbits: Vec<FactorOrbit>,
}

/// The JSON shape `{type, rank, cartan, phi, N}`; `phi` is 1-based there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSummary {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub phi: Vec<usize>,
    #[serde(rename = "N")]
    pub n_pos: usize,
}

fn chain(n: usize, len2: &[i64]) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        b[i][i] = len2[i];
    }
    b
}

fn link(b: &mut [Vec<i64>], i: usize, j: usize, v: i64) {
    b[i][j] = v;
    b[j][i] = v;
}

/// Gram matrix of a simple type in Bourbaki labelling.
fn simple_form(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let valid = match letter {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 3,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !valid {
        return None;
    }
    let b = match letter {
        'A' => {
            let mut b = chain(n, &vec![2; n]);
            for i in 0..n.saturating_sub(1) {
                link(&mut b, i, i + 1, -1);
            }
            b
        }
        'B' => {
            let mut len = vec![4; n];
            len[n - 1] = 2;
            let mut b = chain(n, &len);
            for i in 0..n - 1 {
                link(&mut b, i, i + 1, -2);
            }
            b
        }
        'C' => {
            let mut len = vec![2; n];
            len[n - 1] = 4;
            let mut b = chain(n, &len);
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 2, n - 1, -2);
            b
        }
        'D' => {
            let mut b = chain(n, &vec![2; n]);
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 3, n - 1, -1);
            b
        }
        'E' => {
            let mut b = chain(n, &vec![2; n]);
            link(&mut b, 0, 2, -1);
            link(&mut b, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut b, i, i + 1, -1);
            }
            b
        }
        'F' => {
            let mut b = chain(4, &[4, 4, 2, 2]);
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
            b
        }
        'G' => {
            let mut b = chain(2, &[2, 6]);
            link(&mut b, 0, 1, -3);
            b
        }
        _ => unreachable!(),
    };
    Some(b)
}

/// Nontrivial diagram automorphism of order `k` on a simple factor, if any.
fn simple_twist(letter: char, n: usize, k: usize) -> Option<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    match (letter, k) {
        (_, 1) => Some(id),
        ('A', 2) if n >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        ('D', 2) => {
            let mut p = id;
            p.swap(n - 2, n - 1);
            Some(p)
        }
        ('D', 3) if n == 4 => Some(vec![2, 1, 3, 0]),
        ('E', 2) if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    }
}

/// Degrees of the basic invariants of a simple Weyl group, ascending.
pub fn classical_degrees(letter: char, n: usize) -> Vec<usize> {
    let mut d = match letter {
        'A' => (2..=n + 1).collect(),
        'B' | 'C' => (1..=n).map(|k| 2 * k).collect(),
        'D' => {
            let mut v: Vec<usize> = (1..n).map(|k| 2 * k).collect();
            v.push(n);
            v
        }
        'E' => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        'F' => vec![2, 6, 8, 12],
        'G' => vec![2, 6],
        _ => unreachable!("letter checked at construction"),
    };
    d.sort_unstable();
    d
}

fn parse_simple(s: &str) -> Option<(char, usize)> {
    let mut chars = s.chars();
    let letter = chars.next()?;
    if !letter.is_ascii_uppercase() {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some((letter, rest.parse().ok()?))
}

fn perm_order(p: &[usize]) -> usize {
    let mut k = 1;
    let mut q: Vec<usize> = p.to_vec();
    while q.iter().enumerate().any(|(i, &x)| i != x) {
        q = q.iter().map(|&x| p[x]).collect();
        k += 1;
    }
    k
}

impl RootDatum {
    /// Parse a type label. Accepted: simple labels such as `A3`, `G2`,
    /// twisted `2A3`, `2D4`, `3D4`, `2E6`, products `A1xA2` and cyclic
    /// products of identical factors `2(A1xA1)`.
    pub fn build(label: &str) -> Result<RootDatum> {
        let label = label.trim();
        let unsupported = || Error::UnsupportedType(label.to_string());
        if matches!(label, "2B2" | "2G2" | "2F4") {
            return Err(Error::NotFrobenius(label.to_string()));
        }
        // cyclic product k(XxXx...)
        if let Some(inner) = label.strip_suffix(')') {
            let (k, body) = inner.split_once('(').ok_or_else(unsupported)?;
            let k: usize = k.parse().map_err(|_| unsupported())?;
            let factors: Vec<&str> = body.split('x').collect();
            if factors.len() != k || k < 2 || factors.iter().any(|f| *f != factors[0]) {
                return Err(unsupported());
            }
            let (letter, n) = parse_simple(factors[0]).ok_or_else(unsupported)?;
            let comps = vec![(letter, n); k];
            // factor j goes to factor j+1
            let phi: Vec<usize> = (0..k * n).map(|i| (i + n) % (k * n)).collect();
            return Self::from_parts(label, &comps, phi);
        }
        if label.contains('x') {
            let mut comps = Vec::new();
            for f in label.split('x') {
                comps.push(parse_simple(f).ok_or_else(unsupported)?);
            }
            let r: usize = comps.iter().map(|c| c.1).sum();
            return Self::from_parts(label, &comps, (0..r).collect());
        }
        let (twist, body) = match label.as_bytes().first() {
            Some(b'2') => (2, &label[1..]),
            Some(b'3') => (3, &label[1..]),
            _ => (1, label),
        };
        let (letter, n) = parse_simple(body).ok_or_else(unsupported)?;
        simple_form(letter, n).ok_or_else(unsupported)?;
        let phi = simple_twist(letter, n, twist).ok_or_else(unsupported)?;
        if twist > 1 && perm_order(&phi) != twist {
            return Err(unsupported());
        }
        Self::from_parts(label, &[(letter, n)], phi)
    }

    /// Assemble a datum from simple factors and a permutation of all nodes.
    pub fn from_parts(label: &str, comps: &[(char, usize)], phi: Vec<usize>) -> Result<RootDatum> {
        let rank: usize = comps.iter().map(|c| c.1).sum();
        if rank == 0 {
            return Err(Error::UnsupportedType(label.to_string()));
        }
        if rank > MAX_RANK {
            return Err(Error::bad(
                MODULE,
                format!("rank {rank} exceeds the cap {MAX_RANK}"),
            ));
        }
        let mut form = vec![vec![0i64; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &(letter, n) in comps {
            let b = simple_form(letter, n).ok_or_else(|| Error::UnsupportedType(label.to_string()))?;
            for i in 0..n {
                for j in 0..n {
                    form[offset + i][offset + j] = b[i][j];
                }
            }
            components.push(Component {
                letter,
                rank: n,
                offset,
            });
            offset += n;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[j][j]).collect())
            .collect();
        let mut sorted = phi.clone();
        sorted.sort_unstable();
        if phi.len() != rank || sorted != (0..rank).collect::<Vec<_>>() {
            return Err(Error::bad(MODULE, "phi is not a permutation of the simple roots"));
        }
        for i in 0..rank {
            for j in 0..rank {
                if form[phi[i]][phi[j]] != form[i][j] {
                    return Err(Error::bad(MODULE, "phi does not preserve the Dynkin diagram"));
                }
            }
        }
        let factor_orbits = Self::factor_orbits(&components, &phi);
        let delta = perm_order(&phi);
        let mut datum = RootDatum {
            type_label: label.to_string(),
            rank,
            cartan,
            phi,
            delta,
            pos_roots: vec![],
            pos_coroots: vec![],
            n_pos: 0,
            rho: vec![1; rank],
            form,
            components,
            factor_orbits,
        };
        datum.pos_roots = datum.close_roots();
        datum.pos_coroots = datum.pos_roots.iter().map(|c| datum.coroot_of(c)).collect();
        datum.n_pos = datum.pos_roots.len();
        datum.check_invariants()?;
        Ok(datum)
    }

    fn factor_orbits(components: &[Component], phi: &[usize]) -> Vec<FactorOrbit> {
        let which = |node: usize| {
            components
                .iter()
                .position(|c| node >= c.offset && node < c.offset + c.rank)
                .unwrap()
        };
        let mut seen = vec![false; components.len()];
        let mut out = Vec::new();
        for (ci, c) in components.iter().enumerate() {
            if seen[ci] {
                continue;
            }
            let mut copies = 0;
            let mut cur = ci;
            loop {
                seen[cur] = true;
                copies += 1;
                cur = which(phi[components[cur].offset]);
                if cur == ci {
                    break;
                }
            }
            // phi^copies restricted to this factor
            let local: Vec<usize> = (0..c.rank)
                .map(|i| {
                    let mut x = c.offset + i;
                    for _ in 0..copies {
                        x = phi[x];
                    }
                    x - c.offset
                })
                .collect();
            out.push(FactorOrbit {
                letter: c.letter,
                rank: c.rank,
                copies,
                inner_twist: perm_order(&local),
            });
        }
        out
    }

    /// Pairing `<beta, alpha_i^vee>` for a root in root-basis coordinates.
    fn root_pair_simple(&self, c: &[i64], i: usize) -> i64 {
        c.iter().enumerate().map(|(j, &cj)| cj * self.cartan[j][i]).sum()
    }

    /// Reflection `s_i` applied to a root in root-basis coordinates.
    pub fn reflect_root(&self, c: &[i64], i: usize) -> Vec<i64> {
        let k = self.root_pair_simple(c, i);
        let mut out = c.to_vec();
        out[i] -= k;
        out
    }

    fn close_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..n {
                let r = self.reflect_root(&c, i);
                if r.iter().all(|&x| x >= 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
        roots
    }

    /// Invariant form of two roots in root-basis coordinates.
    pub fn form_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    /// Coroot of a root, in simple-coroot coordinates.
    pub fn coroot_of(&self, c: &[i64]) -> Vec<i64> {
        let len = self.form_roots(c, c);
        c.iter()
            .enumerate()
            .map(|(i, &ci)| ci * self.form[i][i] / len)
            .collect()
    }

    /// Root in fundamental-weight coordinates: `c^T cartan`.
    pub fn root_weight(&self, c: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| self.root_pair_simple(c, j)).collect()
    }

    /// All roots, positive then negative, in root coordinates.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.pos_roots.clone();
        out.extend(self.pos_roots.iter().map(|c| c.iter().map(|x| -x).collect()));
        out
    }

    /// `<lambda, beta^vee>` for a weight and a coroot in coroot coordinates.
    pub fn pairing(&self, lam: &Weight, coroot: &[i64]) -> Result<i64> {
        if lam.coords.len() != self.rank || coroot.len() != self.rank {
            return Err(Error::bad(
                MODULE,
                format!(
                    "dimension mismatch: weight {} and coroot {} for rank {}",
                    lam.coords.len(),
                    coroot.len(),
                    self.rank
                ),
            ));
        }
        Ok(lam.coords.iter().zip(coroot).map(|(a, b)| a * b).sum())
    }

    /// `<lambda, alpha_j^vee>`, the `j`-th coordinate.
    pub fn pairing_simple(&self, lam: &Weight, j: usize) -> Result<i64> {
        if j >= self.rank {
            return Err(Error::bad(MODULE, format!("no simple coroot {j}")));
        }
        let mut e = vec![0; self.rank];
        e[j] = 1;
        self.pairing(lam, &e)
    }

    /// Image of a weight under the lattice map induced by `phi`.
    pub fn phi_weight(&self, lam: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for i in 0..self.rank {
            out[self.phi[i]] = lam[i];
        }
        out
    }

    /// Same map on root-basis coordinates.
    pub fn phi_root(&self, c: &[i64]) -> Vec<i64> {
        self.phi_weight(c)
    }

    /// Orbits of `phi` on the simple roots, each sorted.
    pub fn phi_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for i in 0..self.rank {
            if seen[i] {
                continue;
            }
            let mut orb = vec![];
            let mut x = i;
            while !seen[x] {
                seen[x] = true;
                orb.push(x);
                x = self.phi[x];
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// All `phi`-stable subsets of the simple roots as bitmasks, sorted.
    pub fn phi_stable_subsets(&self) -> Vec<u32> {
        let orbits = self.phi_orbits();
        let mut out: Vec<u32> = (0..1u32 << orbits.len())
            .map(|m| {
                orbits
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m >> k & 1 == 1)
                    .flat_map(|(_, o)| o.iter())
                    .fold(0u32, |acc, &i| acc | 1 << i)
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_split(&self) -> bool {
        self.delta == 1
    }

    pub fn summary(&self) -> RootDatumSummary {
        RootDatumSummary {
            type_label: self.type_label.clone(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            phi: self.phi.iter().map(|&x| x + 1).collect(),
            n_pos: self.n_pos,
        }
    }

    /// Indices of the simple roots in a bitmask.
    pub fn nodes_of(&self, mask: u32) -> Vec<usize> {
        (0..self.rank).filter(|i| mask >> i & 1 == 1).collect()
    }

    /// `|W|` from the degree tables, used as a size guard before enumeration.
    pub fn predicted_weyl_order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| {
                classical_degrees(c.letter, c.rank)
                    .iter()
                    .map(|&d| d as u128)
                    .product::<u128>()
            })
            .product()
    }

    /// The classical count of positive roots for the factor list.
    pub fn classical_positive_roots(&self) -> usize {
        self.components
            .iter()
            .map(|c| {
                let n = c.rank;
                match c.letter {
                    'A' => n * (n + 1) / 2,
                    'B' | 'C' => n * n,
                    'D' => n * (n - 1),
                    'E' => [36, 63, 120][n - 6],
                    'F' => 24,
                    'G' => 6,
                    _ => unreachable!(),
                }
            })
            .sum()
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                return Err(Error::breach(MODULE, "cartan diagonal", format!("entry ({i},{i})")));
            }
            for j in 0..n {
                let a = self.cartan[i][j];
                if i != j && (a > 0 || (a == 0) != (self.cartan[j][i] == 0)) {
                    return Err(Error::breach(MODULE, "cartan sign pattern", format!("({i},{j})")));
                }
                if self.cartan[self.phi[i]][self.phi[j]] != a {
                    return Err(Error::breach(MODULE, "phi preserves cartan", format!("({i},{j})")));
                }
            }
        }
        if self.n_pos != self.classical_positive_roots() {
            return Err(Error::breach(
                MODULE,
                "positive root count",
                format!("{} vs classical {}", self.n_pos, self.classical_positive_roots()),
            ));
        }
        let all: BTreeSet<Vec<i64>> = self.all_roots().into_iter().collect();
        for c in &self.pos_roots {
            for i in 0..n {
                if !all.contains(&self.reflect_root(c, i)) {
                    return Err(Error::breach(MODULE, "reflection closure", format!("{c:?}")));
                }
            }
            if !all.contains(&self.phi_root(c)) {
                return Err(Error::breach(MODULE, "phi permutes roots", format!("{c:?}")));
            }
        }
        Ok(())
    }
}
