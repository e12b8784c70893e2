//! Sylow structure away from the defining characteristic: the maximal
//! `Phi_d`-eigenspace, its centraliser Levi, the orthogonal subsystem and
//! the abelian-defect test.

use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::field::{kernel, CyclotomicField, Field, Matrix, Rationals};
use crate::arith::intpoly::cyclotomic;
use crate::arith::numtheory::{is_prime, multiplicative_order, valuation_u};
use crate::error::{Error, Result};
use crate::generic_order::{generic_order, generic_order_gl, phi_valuation, CycloFactorization};
use crate::root_datum::RootDatum;
use crate::weyl::{poly_at_matrix, WeylGroup};

const MODULE: &str = "ell_local";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviData {
    pub d: usize,
    /// Witness `w` (as a reduced word) whose `w phi` realises the eigenspace.
    pub witness_word: Vec<usize>,
    pub eigenspace_dim: usize,
    /// Positive roots of `Phi_L`, in simple-root coordinates.
    pub root_subsystem: Vec<Vec<i64>>,
    pub w_l_order: usize,
    /// Positive roots of `Phi'`.
    pub orthogonal_system: Vec<Vec<i64>>,
    pub w_prime_order: usize,
    /// `|C_{W'}(w phi)|`, the part of `W'` visible in `G^F`.
    pub w_prime_fixed_order: usize,
    /// Number of twisted classes reaching the maximal dimension.
    pub witness_classes: usize,
}

impl LeviData {
    pub fn is_torus(&self) -> bool {
        self.root_subsystem.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSplitFlag {
    pub levi: Vec<usize>,
    pub d_split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowReport {
    pub label: String,
    pub ell: u64,
    pub q: u64,
    pub d: usize,
    pub nu: u32,
    pub abelian: bool,
    /// `|(N_W(W_L) / W_L)^{w phi}|`.
    pub relative_weyl_order: usize,
    /// `|C_W(w phi)|` for the witness.
    pub centralizer_order: usize,
    /// Reflection-group check on the eigenspace, run when `L` is a torus.
    pub reflection_group: Option<bool>,
    /// `a(d) nu_ell(Phi_d(q))`.
    pub nu_torus: u32,
    /// `nu == nu_torus`, the second abelian characterisation.
    pub nu_matches_torus: bool,
    pub levi: LeviData,
    pub d_split: Vec<DSplitFlag>,
    pub outside_hypotheses: bool,
}

/// Reflection subgroup utilities over an enumerated `W`.
struct Refl<'a> {
    w: &'a WeylGroup,
}

impl Refl<'_> {
    fn reflection(&self, root: &[i64]) -> usize {
        let d = &self.w.datum;
        let cv = d.coroot_of(root);
        let beta = d.root_weight(root);
        let rho = &d.rho;
        let k: i64 = rho.iter().zip(&cv).map(|(a, b)| a * b).sum();
        let img: Vec<i64> = rho.iter().zip(&beta).map(|(r, b)| r - k * b).collect();
        self.w.find_by_rho_image(&img).expect("reflection lies in W")
    }

    fn generate(&self, gens: &[usize]) -> BTreeSet<usize> {
        let id = self.w.identity();
        let mut seen = BTreeSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.w.mul(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

fn vanishes_on(datum: &RootDatum, root: &[i64], basis: &[Vec<BigRational>]) -> bool {
    let cv = datum.coroot_of(root);
    basis.iter().all(|u| {
        u.iter()
            .zip(&cv)
            .fold(BigRational::zero(), |acc, (x, &c)| acc + x * BigRational::from_integer(c.into()))
            .is_zero()
    })
}

fn rational_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let q = Rationals;
    let cols = m.first().map_or(0, |r| r.len());
    let mq: Matrix<BigRational> = m.iter().map(|r| r.iter().map(|&x| q.from_int(x)).collect()).collect();
    kernel(&q, &mq, cols)
}

/// Whether `x` permutes the root set.
fn maps_set_to_itself(w: &WeylGroup, x: usize, set: &BTreeSet<Vec<i64>>) -> bool {
    let d = &w.datum;
    let m = &w.element(x).matrix;
    set.iter().all(|c| {
        let wt = d.root_weight(c);
        let img: Vec<i64> = m.iter().map(|row| row.iter().zip(&wt).map(|(a, b)| a * b).sum()).collect();
        let rc = w.root_coords(&img);
        set.contains(&rc)
    })
}

pub fn centralizer_levi(w: &WeylGroup, d: usize) -> Result<LeviData> {
    let levi = levi_allowing_trivial(w, d)?;
    if levi.eigenspace_dim == 0 {
        return Err(Error::bad(MODULE, format!("no Phi_{d}-torus: a({d}) = 0")));
    }
    Ok(levi)
}

/// With `a(d) = 0` the torus is trivial and `L = G`, `W' = 1`.
fn levi_allowing_trivial(w: &WeylGroup, d: usize) -> Result<LeviData> {
    let datum = &w.datum;
    let classes = w.f_conjugacy_classes();
    let (wit, dim) = w.max_phi_d_eigenspace_in(&classes, d)?;
    let witness_classes = classes
        .iter()
        .filter(|c| w.phi_d_eigenspace_dim(c.representative(), d) == dim)
        .count();
    let basis = w.phi_d_kernel(wit, d);
    let roots = datum.all_roots();
    let phi_l: Vec<Vec<i64>> = roots.iter().filter(|c| vanishes_on(datum, c, &basis)).cloned().collect();
    let phi_prime: Vec<Vec<i64>> = roots
        .iter()
        .filter(|c| phi_l.iter().all(|b| datum.form_roots(c, b) == 0))
        .cloned()
        .collect();
    let r = Refl { w };
    let gens_l: Vec<usize> = phi_l.iter().map(|c| r.reflection(c)).collect();
    let gens_p: Vec<usize> = phi_prime.iter().map(|c| r.reflection(c)).collect();
    let w_l = r.generate(&gens_l);
    let w_p = r.generate(&gens_p);
    if w_l.intersection(&w_p).count() != 1 {
        return Err(Error::breach(MODULE, "W_L meets W' trivially", format!("{}", w_l.intersection(&w_p).count())));
    }
    let fixed = w_p
        .iter()
        .filter(|&&c| w.mul(c, wit) == w.mul(wit, w.phi(c)))
        .count();
    let positive = |v: &[Vec<i64>]| -> Vec<Vec<i64>> { v.iter().filter(|c| c.iter().all(|&x| x >= 0)).cloned().collect() };
    Ok(LeviData {
        d,
        witness_word: w.element(wit).word.clone(),
        eigenspace_dim: dim,
        root_subsystem: positive(&phi_l),
        w_l_order: w_l.len(),
        orthogonal_system: positive(&phi_prime),
        w_prime_order: w_p.len(),
        w_prime_fixed_order: fixed,
        witness_classes,
    })
}

/// `|(N_W(W_L)/W_L)^{w phi}|` with `W_L` the reflection subgroup of `levi`.
pub fn relative_weyl_order(w: &WeylGroup, levi: &LeviData) -> Result<usize> {
    let wit = w.from_word(&levi.witness_word)?;
    let r = Refl { w };
    let phi_l: BTreeSet<Vec<i64>> = levi
        .root_subsystem
        .iter()
        .flat_map(|c| [c.clone(), c.iter().map(|x| -x).collect()])
        .collect();
    let w_l = r.generate(&phi_l.iter().map(|c| r.reflection(c)).collect::<Vec<_>>());
    let normaliser: Vec<usize> = (0..w.order()).filter(|&x| maps_set_to_itself(w, x, &phi_l)).collect();
    let winv = w.inverse(wit);
    let mut seen = BTreeSet::new();
    let mut fixed = 0;
    for &n in &normaliser {
        let coset: BTreeSet<usize> = w_l.iter().map(|&l| w.mul(n, l)).collect();
        let key = *coset.iter().next().unwrap();
        if !seen.insert(key) {
            continue;
        }
        let image = w.mul(w.mul(wit, w.phi(n)), winv);
        if coset.contains(&image) {
            fixed += 1;
        }
    }
    Ok(fixed)
}

/// Whether each `phi`-stable standard Levi `L_I` is the centraliser of the
/// `Phi_d`-part of its own central torus.
pub fn d_split_flags(datum: &RootDatum, d: usize) -> Vec<DSplitFlag> {
    let n = datum.rank;
    let roots = datum.all_roots();
    datum
        .phi_stable_subsets()
        .into_iter()
        .map(|mask| {
            let comp: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            // phi on span{omega_j : j not in I}
            let m: Vec<Vec<i64>> = comp
                .iter()
                .map(|&r| comp.iter().map(|&c| i64::from(datum.phi[c] == r)).collect())
                .collect();
            let local = if comp.is_empty() { Vec::new() } else { rational_kernel(&poly_at_matrix(&cyclotomic(d), &m)) };
            let basis: Vec<Vec<BigRational>> = local
                .iter()
                .map(|v| {
                    let mut full = vec![BigRational::zero(); n];
                    for (k, &j) in comp.iter().enumerate() {
                        full[j] = v[k].clone();
                    }
                    full
                })
                .collect();
            let d_split = roots.iter().all(|c| {
                let inside = c.iter().enumerate().all(|(i, &x)| x == 0 || mask >> i & 1 == 1);
                vanishes_on(datum, c, &basis) == inside
            });
            DSplitFlag {
                levi: datum.nodes_of(mask),
                d_split,
            }
        })
        .collect()
}

fn check_ell(q: u64, ell: u64) -> Result<usize> {
    if !is_prime(ell) {
        return Err(Error::bad(MODULE, format!("ell = {ell} is not prime")));
    }
    multiplicative_order(q, ell)
        .map(|d| d as usize)
        .ok_or_else(|| Error::bad(MODULE, format!("ell = {ell} divides q = {q}: defining characteristic")))
}

fn report(label: String, w: &WeylGroup, order: &CycloFactorization, q: u64, ell: u64) -> Result<SylowReport> {
    let d = check_ell(q, ell)?;
    let (_, nu) = order.ell_part(q, ell)?;
    let levi = levi_allowing_trivial(w, d)?;
    let relative = relative_weyl_order(w, &levi)?;
    let wit = w.from_word(&levi.witness_word)?;
    let cent = w.centralizer(wit);
    let reflection_group = levi.is_torus().then(|| {
        let k = CyclotomicField::new(d);
        w.centralizer_is_reflection_group(&k, wit, &cent)
    });
    let abelian = !(levi.w_prime_fixed_order as u64).is_multiple_of(ell);
    let nu_torus = order.a(d) * phi_valuation(d, q, ell);
    let nu_matches_torus = nu == nu_torus;
    let outside_hypotheses = ell <= 3;
    if !outside_hypotheses {
        if abelian != nu_matches_torus {
            return Err(Error::breach(
                MODULE,
                "abelian iff nu = a(d) nu(Phi_d(q))",
                format!("{label} q={q} ell={ell}: abelian {abelian}, nu {nu} vs {nu_torus}"),
            ));
        }
        if levi.is_torus() && relative != cent.len() {
            return Err(Error::breach(MODULE, "relative Weyl group = C_W(w phi) for a torus", format!("{relative} vs {}", cent.len())));
        }
        if abelian && valuation_u(relative as u128, ell as u128) != 0 {
            return Err(Error::breach(MODULE, "relative Weyl order prime to ell", format!("{relative}")));
        }
    }
    Ok(SylowReport {
        label,
        ell,
        q,
        d,
        nu,
        abelian,
        relative_weyl_order: relative,
        centralizer_order: cent.len(),
        reflection_group,
        nu_torus,
        nu_matches_torus,
        d_split: d_split_flags(&w.datum, d),
        levi,
        outside_hypotheses,
    })
}

/// Sylow `ell`-structure of `G^F` for `ell` not dividing `q`.
pub fn sylow_structure(datum: &RootDatum, q: u64, ell: u64) -> Result<SylowReport> {
    sylow_structure_in(&WeylGroup::generate(datum)?, q, ell)
}

/// As `sylow_structure`, reusing an enumerated Weyl group.
pub fn sylow_structure_in(w: &WeylGroup, q: u64, ell: u64) -> Result<SylowReport> {
    let order = generic_order(&w.datum)?;
    report(w.datum.type_label.clone(), w, &order, q, ell)
}

/// Same for `GL_n(q)` or `U_n(q)`; the central torus adds no roots, so the
/// Levi data come from `A_{n-1}` or `2A_{n-1}`.
pub fn sylow_structure_gl(n: usize, unitary: bool, q: u64, ell: u64) -> Result<SylowReport> {
    if n < 2 {
        return Err(Error::bad(MODULE, "GL-mode needs n >= 2"));
    }
    let label = format!("{}A{}", if unitary { "2" } else { "" }, n - 1);
    let datum = RootDatum::build(&label)?;
    let w = WeylGroup::generate(&datum)?;
    let order = generic_order_gl(n, unitary)?;
    report(order.label.clone(), &w, &order, q, ell)
}
