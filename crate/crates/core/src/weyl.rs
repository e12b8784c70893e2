//! Exhaustive Weyl group enumeration, twisted conjugacy, and `d`-regular
//! elements.
//!
//! Elements are identified by the image `w(rho)`, which is a regular weight
//! and therefore determines `w`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::field::{integer_rank, kernel, CyclotomicField, Field, Matrix, Rationals};
use crate::arith::intpoly::{cyclotomic, totient, IntPoly};
use crate::error::{Error, Result};
use crate::root_datum::RootDatum;

const MODULE: &str = "weyl";
pub const DEFAULT_WEYL_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    /// Action on `X` in the fundamental-weight basis (columns are images).
    pub matrix: Vec<Vec<i64>>,
    /// The lexicographically least reduced word, letters 0-based.
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedClass {
    /// Indices into the group's element list, ascending.
    pub members: Vec<usize>,
    pub twisted: bool,
}

impl TwistedClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularReport {
    pub d: usize,
    pub zeta_order: usize,
    pub witness_w: WeylElement,
    pub eigenspace_dim: usize,
    pub centralizer_order: usize,
    pub centralizer_is_reflection_group: bool,
}

/// The full group together with the datum it came from.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    pub elements: Vec<WeylElement>,
    rho_images: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    let k = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| (0..n).map(|t| row[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Evaluate an integer polynomial at a square integer matrix.
pub(crate) fn poly_at_matrix(p: &IntPoly, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut acc = vec![vec![0i64; n]; n];
    for &c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c as i64;
        }
    }
    acc
}

impl WeylGroup {
    pub fn generate(datum: &RootDatum) -> Result<WeylGroup> {
        Self::generate_with_limit(datum, DEFAULT_WEYL_LIMIT)
    }

    pub fn generate_with_limit(datum: &RootDatum, limit: u128) -> Result<WeylGroup> {
        let predicted = datum.predicted_weyl_order();
        if predicted > limit {
            return Err(Error::GuardExceeded {
                module: MODULE,
                predicted,
                limit,
            });
        }
        let n = datum.rank;
        let mut matrices = vec![identity(n)];
        let mut rho_images = vec![datum.rho.clone()];
        let mut lengths = vec![0usize];
        let mut index = HashMap::new();
        index.insert(datum.rho.clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                if rho_images[w][i] < 0 {
                    continue;
                }
                let img = datum_reflect_weight(datum, &rho_images[w], i);
                if index.contains_key(&img) {
                    continue;
                }
                let mut m = matrices[w].clone();
                left_reflect_rows(datum, &mut m, i);
                let id = matrices.len();
                index.insert(img.clone(), id);
                matrices.push(m);
                rho_images.push(img);
                lengths.push(lengths[w] + 1);
                queue.push_back(id);
            }
        }
        if matrices.len() as u128 != predicted {
            return Err(Error::breach(
                MODULE,
                "|W| matches the degree product",
                format!("enumerated {} vs predicted {predicted}", matrices.len()),
            ));
        }
        // lex-least reduced words, built along increasing length
        let mut order: Vec<usize> = (0..matrices.len()).collect();
        order.sort_by_key(|&i| lengths[i]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); matrices.len()];
        for &v in &order {
            if lengths[v] == 0 {
                continue;
            }
            let j = (0..n).find(|&j| rho_images[v][j] < 0).unwrap();
            let u = index[&datum_reflect_weight(datum, &rho_images[v], j)];
            let mut word = vec![j];
            word.extend_from_slice(&words[u]);
            words[v] = word;
        }
        let elements = matrices
            .into_iter()
            .zip(words)
            .zip(lengths)
            .map(|((matrix, word), length)| WeylElement {
                matrix,
                word,
                length,
            })
            .collect();
        Ok(WeylGroup {
            datum: datum.clone(),
            elements,
            rho_images,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Index of the element mapping `rho` to `img`.
    pub fn find_by_rho_image(&self, img: &[i64]) -> Option<usize> {
        self.index.get(img).copied()
    }

    pub fn longest(&self) -> usize {
        (0..self.order())
            .max_by_key(|&i| self.elements[i].length)
            .unwrap()
    }

    pub fn simple(&self, i: usize) -> usize {
        self.index[&datum_reflect_weight(&self.datum, &self.datum.rho, i)]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&mat_vec(&self.elements[a].matrix, &self.rho_images[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut v = self.datum.rho.clone();
        for &i in &self.elements[a].word {
            v = datum_reflect_weight(&self.datum, &v, i);
        }
        self.index[&v]
    }

    /// Element with the given word, applied as a product left to right.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let mut v = self.datum.rho.clone();
        for &i in word.iter().rev() {
            if i >= self.rank() {
                return Err(Error::bad(MODULE, format!("letter {i} out of range")));
            }
            v = datum_reflect_weight(&self.datum, &v, i);
        }
        Ok(self.index[&v])
    }

    /// Left descent set: `l(s_i w) < l(w)`.
    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.rho_images[w][i] < 0)
            .collect()
    }

    /// Right descent set: `l(w s_i) < l(w)`.
    pub fn right_descents(&self, w: usize) -> Vec<usize> {
        self.left_descents(self.inverse(w))
    }

    /// `phi(w) = P w P^{-1}`.
    pub fn phi(&self, w: usize) -> usize {
        self.index[&self.datum.phi_weight(&self.rho_images[w])]
    }

    /// Inversion count: positive roots sent to negative roots.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.datum
            .pos_roots
            .iter()
            .filter(|c| {
                let img = mat_vec(&self.elements[w].matrix, &self.datum.root_weight(c));
                self.weight_root_height(&img) < 0
            })
            .count()
    }

    /// Height of a root given in weight coordinates.
    fn weight_root_height(&self, wt: &[i64]) -> i64 {
        let c = self.root_coords(wt);
        c.iter().sum()
    }

    /// Root-basis coordinates of a root lattice element given in weight
    /// coordinates. Looks the answer up among the roots.
    pub fn root_coords(&self, wt: &[i64]) -> Vec<i64> {
        self.datum
            .all_roots()
            .into_iter()
            .find(|c| self.datum.root_weight(c) == wt)
            .expect("image of a root is a root")
    }

    /// Matrix of `w phi` on `X`.
    pub fn twisted_matrix(&self, w: usize) -> Vec<Vec<i64>> {
        let m = &self.elements[w].matrix;
        let phi = &self.datum.phi;
        m.iter()
            .map(|row| (0..self.rank()).map(|c| row[phi[c]]).collect())
            .collect()
    }

    /// Orbits of `w -> v^{-1} w phi(v)`; generated by `w -> s w phi(s)`.
    pub fn f_conjugacy_classes(&self) -> Vec<TwistedClass> {
        let n = self.rank();
        let simples: Vec<usize> = (0..n).map(|i| self.simple(i)).collect();
        let phis: Vec<usize> = (0..n).map(|i| self.simple(self.datum.phi[i])).collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let w = members[k];
                k += 1;
                for i in 0..n {
                    let x = self.mul(self.mul(simples[i], w), phis[i]);
                    if class_of[x] == usize::MAX {
                        class_of[x] = id;
                        members.push(x);
                    }
                }
            }
            members.sort_unstable();
            classes.push(TwistedClass {
                members,
                twisted: !self.datum.is_split(),
            });
        }
        classes
    }

    /// `C_W(w phi) = {c : c w = w phi(c)}` by brute force.
    pub fn centralizer(&self, w: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&c| self.mul(c, w) == self.mul(w, self.phi(c)))
            .collect()
    }

    /// `dim_Q ker Phi_d(w phi) / phi(d)`: the dimension of the
    /// `zeta_d`-eigenspace, computed over the rationals.
    pub fn phi_d_eigenspace_dim(&self, w: usize, d: usize) -> usize {
        let m = poly_at_matrix(&cyclotomic(d), &self.twisted_matrix(w));
        let kdim = self.rank() - integer_rank(&m);
        kdim / totient(d)
    }

    /// Basis of `ker Phi_d(w phi)` on `X (x) Q`.
    pub fn phi_d_kernel(&self, w: usize, d: usize) -> Vec<Vec<BigRational>> {
        let q = Rationals;
        let m = poly_at_matrix(&cyclotomic(d), &self.twisted_matrix(w));
        let mq: Matrix<BigRational> = m
            .iter()
            .map(|r| r.iter().map(|&x| q.from_int(x)).collect())
            .collect();
        kernel(&q, &mq, self.rank())
    }

    /// Basis of `ker(w phi - zeta_d)` over `Q(zeta_d)`.
    pub fn zeta_eigenspace(&self, k: &CyclotomicField, w: usize) -> Vec<Vec<Vec<BigRational>>> {
        let n = self.rank();
        let zeta = k.zeta();
        let tm = self.twisted_matrix(w);
        let m: Matrix<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = k.from_int(tm[i][j]);
                        if i == j {
                            k.sub(&x, &zeta)
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        kernel(k, &m, n)
    }

    /// True when the eigenspace lies in no reflecting hyperplane
    /// `ker <., beta^vee>`.
    pub fn eigenspace_is_regular(&self, k: &CyclotomicField, basis: &[Vec<Vec<BigRational>>]) -> bool {
        if basis.is_empty() {
            return false;
        }
        self.datum.pos_coroots.iter().all(|cv| {
            basis.iter().any(|v| {
                let s = v
                    .iter()
                    .zip(cv)
                    .fold(k.zero(), |acc, (x, &c)| k.add(&acc, &k.mul(x, &k.from_int(c))));
                !k.is_zero(&s)
            })
        })
    }

    fn tie_key(&self, w: usize) -> (usize, &[usize]) {
        (self.elements[w].length, &self.elements[w].word)
    }

    /// Least element of `cands` by (length, word).
    fn canonical(&self, cands: impl IntoIterator<Item = usize>) -> Option<usize> {
        cands.into_iter().min_by(|&a, &b| self.tie_key(a).cmp(&self.tie_key(b)))
    }

    /// Maximal `Phi_d`-eigenspace over all `w`, with canonical witness.
    pub fn max_phi_d_eigenspace(&self, d: usize) -> Result<(usize, usize)> {
        if d == 0 {
            return Err(Error::bad(MODULE, "d must be positive"));
        }
        let classes = self.f_conjugacy_classes();
        self.max_phi_d_eigenspace_in(&classes, d)
    }

    pub fn max_phi_d_eigenspace_in(&self, classes: &[TwistedClass], d: usize) -> Result<(usize, usize)> {
        let dims: Vec<usize> = classes
            .iter()
            .map(|c| self.phi_d_eigenspace_dim(c.representative(), d))
            .collect();
        let best = *dims.iter().max().unwrap();
        let w = self
            .canonical(
                classes
                    .iter()
                    .zip(&dims)
                    .filter(|(_, &dm)| dm == best)
                    .flat_map(|(c, _)| c.members.iter().copied()),
            )
            .unwrap();
        Ok((w, best))
    }

    /// Scan for `d`-regular `w phi`; `None` when there is none.
    pub fn regular_elements(&self, d: usize) -> Result<Option<RegularReport>> {
        if d == 0 {
            return Err(Error::bad(MODULE, "d must be positive"));
        }
        let k = CyclotomicField::new(d);
        let classes = self.f_conjugacy_classes();
        let mut regular: Vec<(usize, &TwistedClass)> = Vec::new();
        for c in &classes {
            let basis = self.zeta_eigenspace(&k, c.representative());
            if self.eigenspace_is_regular(&k, &basis) {
                regular.push((basis.len(), c));
            }
        }
        let Some(best) = regular.iter().map(|r| r.0).max() else {
            return Ok(None);
        };
        let w = self
            .canonical(
                regular
                    .iter()
                    .filter(|r| r.0 == best)
                    .flat_map(|r| r.1.members.iter().copied()),
            )
            .unwrap();
        let cent = self.centralizer(w);
        let refl = self.centralizer_is_reflection_group(&k, w, &cent);
        Ok(Some(RegularReport {
            d,
            zeta_order: d,
            witness_w: self.elements[w].clone(),
            eigenspace_dim: best,
            centralizer_order: cent.len(),
            centralizer_is_reflection_group: refl,
        }))
    }

    /// Image of `c` on the eigenspace, as the list of `c v_j`.
    fn restrict(&self, k: &CyclotomicField, c: usize, basis: &[Vec<Vec<BigRational>>]) -> Vec<Vec<Vec<BigRational>>> {
        let m = &self.elements[c].matrix;
        basis
            .iter()
            .map(|v| {
                m.iter()
                    .map(|row| {
                        row.iter()
                            .zip(v)
                            .fold(k.zero(), |acc, (&a, x)| k.add(&acc, &k.mul(&k.from_int(a), x)))
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether the image of `C_W(w phi)` in `GL(V_zeta)` is generated by the
    /// elements fixing a hyperplane of `V_zeta`.
    pub fn centralizer_is_reflection_group(&self, k: &CyclotomicField, w: usize, cent: &[usize]) -> bool {
        let basis = self.zeta_eigenspace(k, w);
        let dim = basis.len();
        if dim == 0 {
            return false;
        }
        let images: Vec<_> = cent.iter().map(|&c| self.restrict(k, c, &basis)).collect();
        let ident = self.restrict(k, self.identity(), &basis);
        let all: HashSet<_> = images.iter().cloned().collect();
        let mut gens = Vec::new();
        for (idx, img) in images.iter().enumerate() {
            if *img == ident {
                continue;
            }
            // fixed space of c on V_zeta, via (c - 1) on basis coordinates
            let diff: Matrix<Vec<BigRational>> = (0..self.rank())
                .map(|r| (0..dim).map(|j| k.sub(&img[j][r], &basis[j][r])).collect())
                .collect();
            let fixed = kernel(k, &diff, dim).len();
            if fixed + 1 == dim {
                gens.push(cent[idx]);
            }
        }
        // subgroup generated inside W, then compared through restriction
        let mut seen: BTreeSet<usize> = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let generated: HashSet<_> = seen.iter().map(|&c| self.restrict(k, c, &basis)).collect();
        generated == all
    }

    /// `sum_w x^{l(w)}` as coefficients.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let top = self.elements.iter().map(|e| e.length).max().unwrap_or(0);
        let mut p = vec![0u64; top + 1];
        for e in &self.elements {
            p[e.length] += 1;
        }
        p
    }

    /// Degrees from the factorisation `P(x) (x-1)^n = prod (x^{d_i} - 1)`.
    pub fn degrees(&self) -> Result<Vec<usize>> {
        let p = IntPoly::new(self.poincare_polynomial().iter().map(|&c| c as i128).collect());
        let n = self.rank();
        let mut full = p;
        for _ in 0..n {
            full = full.mul(&IntPoly::new(vec![-1, 1]));
        }
        let top = full.degree().unwrap_or(0);
        // count[k] = #{i : k | d_i}
        let mut count = vec![0i64; top + 1];
        let mut rest = full;
        for k in 1..=top {
            let phi = cyclotomic(k);
            while let Some(q) = rest.div_exact_monic(&phi) {
                rest = q;
                count[k] += 1;
            }
        }
        if rest != IntPoly::one() && rest != IntPoly::new(vec![-1]) {
            return Err(Error::breach(MODULE, "Poincare polynomial factorisation", "leftover factor"));
        }
        let mut degrees = Vec::new();
        for m in (1..=top).rev() {
            while count[m] > 0 {
                degrees.push(m);
                for k in 1..=m {
                    if m % k == 0 {
                        count[k] -= 1;
                    }
                }
                if count.iter().any(|&c| c < 0) {
                    return Err(Error::breach(MODULE, "Poincare polynomial factorisation", "negative multiplicity"));
                }
            }
        }
        degrees.sort_unstable();
        Ok(degrees)
    }
}

/// `s_i(lambda) = lambda - lambda_i alpha_i`.
fn datum_reflect_weight(datum: &RootDatum, lam: &[i64], i: usize) -> Vec<i64> {
    let li = lam[i];
    lam.iter()
        .enumerate()
        .map(|(j, &x)| x - li * datum.cartan[i][j])
        .collect()
}

/// Replace `m` by `s_i m`.
fn left_reflect_rows(datum: &RootDatum, m: &mut [Vec<i64>], i: usize) {
    let row_i = m[i].clone();
    for (j, row) in m.iter_mut().enumerate() {
        let c = datum.cartan[i][j];
        if c != 0 {
            for (x, y) in row.iter_mut().zip(&row_i) {
                *x -= c * y;
            }
        }
    }
}
