//! Simple modules in defining characteristic: restricted weights, blocks by
//! central character, the per-block count formula, the Alperin weight
//! bijection and the Knörr-Robinson alternating sum over parabolic chains.
//!
//! With `F = q phi` on `X`, the torus dual is `T_0^vee = X / (F - 1) X` and
//! the centre dual is `Z(G)^vee = X / (Q + (F - 1) X)`, both held in Smith
//! coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::numtheory::prime_power;
use crate::arith::snf::AbelianQuotient;
use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, Weight};

const MODULE: &str = "defining_char";
pub const DEFAULT_WEIGHT_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedWeightSet {
    pub q: u64,
    pub weights: Vec<Weight>,
    pub steinberg: Weight,
}

/// An element of `Z(G)^vee` by residues against `invariants`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CentralCharacter {
    pub value: Vec<i128>,
    pub invariants: Vec<i128>,
}

impl CentralCharacter {
    pub fn is_trivial(&self) -> bool {
        self.value.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaBlock {
    pub zeta: CentralCharacter,
    pub weights: Vec<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTable {
    pub q: u64,
    pub center_invariants: Vec<i128>,
    /// Positive-defect blocks, trivial character first.
    pub blocks: Vec<ZetaBlock>,
    pub defect_zero: Vec<Weight>,
}

impl BlockTable {
    pub fn counts(&self) -> Vec<(CentralCharacter, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.zeta.clone(), b.weights.len()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub zeta: CentralCharacter,
    pub formula_count: usize,
    pub direct_count: usize,
    pub equal_to_principal: bool,
    /// `zeta` lies in the intersection of the `gamma_bar(Z omega_alpha)`.
    pub in_fundamental_intersection: bool,
}

/// One Alperin weight stratum: the standard Levi `L_I` whose projective
/// simples `St_{L_I} (x) zeta` account for `count` simple `kG`-modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDatum {
    /// `I`, 0-based simple roots; `I = Delta` means `Q = 1`, `I = {}` means `Q = U_0`.
    pub levi: Vec<usize>,
    /// Size of the stratum of restricted weights attached to `I`.
    pub count: usize,
    /// `|L_I^vee|`, computed as a lattice index.
    #[serde(with = "crate::arith::decimal")]
    pub levi_characters: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionRow {
    pub lambda: Weight,
    pub levi: Vec<usize>,
    /// Smith coordinates of `gamma(lambda)` in `T_0^vee`.
    pub character: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlperinReport {
    pub q: u64,
    pub strata: Vec<WeightDatum>,
    pub total: usize,
    pub simple_count: usize,
    pub bijection: Vec<BijectionRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    /// Strictly decreasing proper `phi`-stable subsets.
    pub chain: Vec<Vec<usize>>,
    pub sign: i8,
    #[serde(with = "crate::arith::decimal")]
    pub value: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrReport {
    pub q: u64,
    #[serde(with = "crate::arith::decimal")]
    pub l_prime_g: u128,
    pub terms: Vec<ChainTerm>,
    #[serde(with = "crate::arith::decimal")]
    pub sum: i128,
}

/// Lattice data for a fixed `(datum, q)`.
pub struct DefiningContext<'a> {
    pub datum: &'a RootDatum,
    pub q: u64,
    torus_rel: Vec<Vec<i128>>,
    center_rel: Vec<Vec<i128>>,
    pub torus: AbelianQuotient,
    pub center: AbelianQuotient,
}

fn mask_nodes(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn unit(n: usize, i: usize) -> Vec<i128> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

impl<'a> DefiningContext<'a> {
    pub fn new(datum: &'a RootDatum, q: u64) -> Result<Self> {
        Self::with_limit(datum, q, DEFAULT_WEIGHT_LIMIT)
    }

    pub fn with_limit(datum: &'a RootDatum, q: u64, limit: u128) -> Result<Self> {
        if q < 2 || prime_power(q).is_none() {
            return Err(Error::bad(MODULE, format!("q = {q} is not a prime power")));
        }
        let n = datum.rank;
        let predicted = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if predicted > limit {
            return Err(Error::GuardExceeded {
                module: MODULE,
                predicted,
                limit,
            });
        }
        let q128 = q as i128;
        // (F - 1) e_j = q e_{phi(j)} - e_j
        let torus_rel: Vec<Vec<i128>> = (0..n)
            .map(|j| {
                let mut r = vec![0i128; n];
                r[datum.phi[j]] += q128;
                r[j] -= 1;
                r
            })
            .collect();
        let mut center_rel = torus_rel.clone();
        center_rel.extend(
            datum
                .cartan
                .iter()
                .map(|row| row.iter().map(|&x| x as i128).collect::<Vec<_>>()),
        );
        let torus = AbelianQuotient::new(n, &torus_rel);
        let center = AbelianQuotient::new(n, &center_rel);
        if !torus.is_finite() || !center.is_finite() {
            return Err(Error::breach(MODULE, "finite torus dual", "infinite quotient"));
        }
        Ok(DefiningContext {
            datum,
            q,
            torus_rel,
            center_rel,
            torus,
            center,
        })
    }

    fn n(&self) -> usize {
        self.datum.rank
    }

    fn steinberg(&self) -> Weight {
        Weight::new(vec![self.q as i64 - 1; self.n()])
    }

    pub fn zeta_of(&self, lam: &Weight) -> CentralCharacter {
        let x: Vec<i128> = lam.coords.iter().map(|&c| c as i128).collect();
        CentralCharacter {
            value: self.center.class(&x),
            invariants: self.center.invariants.clone(),
        }
    }

    pub fn torus_class(&self, lam: &Weight) -> Vec<i128> {
        let x: Vec<i128> = lam.coords.iter().map(|&c| c as i128).collect();
        self.torus.class(&x)
    }

    fn gens(&self, mask: u32) -> Vec<Vec<i128>> {
        mask_nodes(mask, self.n()).into_iter().map(|i| unit(self.n(), i)).collect()
    }

    /// `|gamma(sum_{alpha in mask} Z omega_alpha)|` in `T_0^vee`.
    pub fn torus_image_order(&self, mask: u32) -> u128 {
        self.torus
            .subgroup_order(&self.torus_rel, &self.gens(mask))
            .expect("finite")
    }

    /// `|gamma_bar(sum_{alpha in mask} Z omega_alpha)|` in `Z(G)^vee`.
    pub fn center_image_order(&self, mask: u32) -> u128 {
        self.center
            .subgroup_order(&self.center_rel, &self.gens(mask))
            .expect("finite")
    }

    pub fn center_image(&self, mask: u32) -> BTreeSet<Vec<i128>> {
        self.center.subgroup(&self.gens(mask))
    }

    pub fn all_elements_of_center(&self) -> Vec<CentralCharacter> {
        let full = (1u32 << self.n()) - 1;
        self.center_image(full)
            .into_iter()
            .map(|value| CentralCharacter {
                value,
                invariants: self.center.invariants.clone(),
            })
            .collect()
    }

    /// Union of the `phi`-orbits on which every coordinate equals `q - 1`.
    pub fn saturated_orbits(&self, lam: &Weight) -> u32 {
        let top = self.q as i64 - 1;
        self.datum
            .phi_orbits()
            .iter()
            .filter(|o| o.iter().all(|&i| lam.coords[i] == top))
            .flat_map(|o| o.iter())
            .fold(0, |m, &i| m | 1 << i)
    }

    pub fn restricted_weights(&self) -> RestrictedWeightSet {
        let n = self.n();
        let q = self.q as i64;
        let total = (self.q as usize).pow(n as u32);
        let weights: Vec<Weight> = (0..total)
            .map(|mut x| {
                let mut c = vec![0i64; n];
                for slot in c.iter_mut().rev() {
                    *slot = (x % q as usize) as i64;
                    x /= q as usize;
                }
                Weight::new(c)
            })
            .collect();
        RestrictedWeightSet {
            q: self.q,
            weights,
            steinberg: self.steinberg(),
        }
    }

    pub fn block_partition(&self) -> Result<BlockTable> {
        let set = self.restricted_weights();
        let mut by_zeta: BTreeMap<CentralCharacter, Vec<Weight>> = self
            .all_elements_of_center()
            .into_iter()
            .map(|z| (z, Vec::new()))
            .collect();
        for lam in &set.weights {
            if *lam == set.steinberg {
                continue;
            }
            let z = self.zeta_of(lam);
            by_zeta
                .get_mut(&z)
                .ok_or_else(|| Error::breach(MODULE, "gamma_bar lands in Z(G)^vee", format!("{z:?}")))?
                .push(lam.clone());
        }
        let blocks: Vec<ZetaBlock> = by_zeta
            .into_iter()
            .map(|(zeta, weights)| ZetaBlock { zeta, weights })
            .collect();
        let total: usize = blocks.iter().map(|b| b.weights.len()).sum();
        if total + 1 != set.weights.len() {
            return Err(Error::breach(MODULE, "blocks partition X_q", format!("{total} + 1")));
        }
        Ok(BlockTable {
            q: self.q,
            center_invariants: self.center.invariants.clone(),
            blocks,
            defect_zero: vec![set.steinberg],
        })
    }

    fn nonempty_stable_subsets(&self) -> Vec<u32> {
        self.datum
            .phi_stable_subsets()
            .into_iter()
            .filter(|&m| m != 0)
            .collect()
    }

    /// Formula count for `zeta`: sum over nonempty `phi`-stable `I` with
    /// `zeta in gamma_bar(sum_I Z omega)` of `|ker gamma_I|`.
    pub fn formula_count(&self, zeta: &CentralCharacter) -> usize {
        self.nonempty_stable_subsets()
            .into_iter()
            .filter(|&m| self.center_image(m).contains(&zeta.value))
            .map(|m| (self.torus_image_order(m) / self.center_image_order(m)) as usize)
            .sum()
    }

    /// Check that `gamma` maps the stratum `X'_I` bijectively onto
    /// `gamma(sum_I Z omega)` for every nonempty `phi`-stable `I`.
    pub fn verify_strata_bijection(&self) -> Result<()> {
        let set = self.restricted_weights();
        let n = self.n();
        let full = (1u32 << n) - 1;
        let mut images: HashMap<u32, Vec<Vec<i128>>> = HashMap::new();
        for lam in &set.weights {
            let i_mask = full & !self.saturated_orbits(lam);
            images.entry(i_mask).or_default().push(self.torus_class(lam));
        }
        for m in self.nonempty_stable_subsets() {
            let got = images.remove(&m).unwrap_or_default();
            let distinct: BTreeSet<Vec<i128>> = got.iter().cloned().collect();
            let expect = self.torus.subgroup(&self.gens(m));
            if distinct.len() != got.len() || distinct != expect {
                return Err(Error::breach(
                    MODULE,
                    "gamma restricts to a bijection on X'_I",
                    format!("I = {:?}: {} weights, image {} vs subgroup {}", mask_nodes(m, n), got.len(), distinct.len(), expect.len()),
                ));
            }
        }
        Ok(())
    }

    pub fn lemma_counts(&self) -> Result<Vec<LemmaRow>> {
        self.verify_strata_bijection()?;
        let table = self.block_partition()?;
        let n = self.n();
        let fundamental: Vec<BTreeSet<Vec<i128>>> = (0..n).map(|i| self.center_image(1 << i)).collect();
        let principal = table
            .blocks
            .iter()
            .find(|b| b.zeta.is_trivial())
            .map(|b| self.formula_count(&b.zeta))
            .unwrap();
        let mut rows = Vec::new();
        for b in &table.blocks {
            let formula = self.formula_count(&b.zeta);
            let direct = b.weights.len();
            if formula != direct {
                return Err(Error::breach(
                    MODULE,
                    "formula count = block size",
                    format!("zeta {:?}: {formula} vs {direct}", b.zeta.value),
                ));
            }
            if formula > principal {
                return Err(Error::breach(MODULE, "count bounded by the principal block", format!("{formula} > {principal}")));
            }
            let in_cap = fundamental.iter().all(|s| s.contains(&b.zeta.value));
            let equal = formula == principal;
            if equal != in_cap {
                return Err(Error::breach(
                    MODULE,
                    "equality iff zeta in the fundamental intersection",
                    format!("zeta {:?}: equal {equal}, in intersection {in_cap}", b.zeta.value),
                ));
            }
            rows.push(LemmaRow {
                zeta: b.zeta.clone(),
                formula_count: formula,
                direct_count: direct,
                equal_to_principal: equal,
                in_fundamental_intersection: in_cap,
            });
        }
        Ok(rows)
    }

    /// `|L_I^vee| = |gamma(sum_{alpha not in I} Z omega_alpha)|`.
    pub fn levi_characters(&self, levi: u32) -> u128 {
        let full = (1u32 << self.n()) - 1;
        self.torus_image_order(full & !levi)
    }

    pub fn alperin_weights(&self) -> Result<AlperinReport> {
        let set = self.restricted_weights();
        let n = self.n();
        let mut strata: BTreeMap<u32, usize> = self.datum.phi_stable_subsets().into_iter().map(|m| (m, 0)).collect();
        let mut bijection = Vec::with_capacity(set.weights.len());
        let mut seen: HashMap<u32, BTreeSet<Vec<i128>>> = HashMap::new();
        for lam in &set.weights {
            let levi = self.saturated_orbits(lam);
            *strata
                .get_mut(&levi)
                .ok_or_else(|| Error::breach(MODULE, "strata are phi-stable", format!("{levi:b}")))? += 1;
            let character = self.torus_class(lam);
            if !seen.entry(levi).or_default().insert(character.clone()) {
                return Err(Error::breach(MODULE, "characters distinct within a stratum", format!("{lam:?}")));
            }
            bijection.push(BijectionRow {
                lambda: lam.clone(),
                levi: mask_nodes(levi, n),
                character,
            });
        }
        let mut out = Vec::new();
        for (m, count) in strata {
            let chars = self.levi_characters(m);
            if count as u128 != chars {
                return Err(Error::breach(
                    MODULE,
                    "stratum size = |L_I^vee|",
                    format!("I = {:?}: {count} vs {chars}", mask_nodes(m, n)),
                ));
            }
            out.push(WeightDatum {
                levi: mask_nodes(m, n),
                count,
                levi_characters: chars,
            });
        }
        let total = out.iter().map(|w| w.count).sum();
        if total != set.weights.len() {
            return Err(Error::breach(MODULE, "weights total q^rank", format!("{total}")));
        }
        Ok(AlperinReport {
            q: self.q,
            strata: out,
            total,
            simple_count: set.weights.len(),
            bijection,
        })
    }

    /// `l(kL_I)`: simple modules of the Levi, through its own Alperin
    /// strata `sum_{J subset I} |L_J^vee|`, checked against
    /// `q^{|I|} |det(q P - 1)|` on the complement of `I`.
    pub fn levi_simple_count(&self, levi: u32, memo: &mut HashMap<u32, u128>) -> Result<u128> {
        if let Some(&v) = memo.get(&levi) {
            return Ok(v);
        }
        let n = self.n();
        let by_strata: u128 = self
            .datum
            .phi_stable_subsets()
            .into_iter()
            .filter(|&j| j & !levi == 0)
            .map(|j| self.levi_characters(j))
            .sum();
        let comp = mask_nodes(((1u32 << n) - 1) & !levi, n);
        let rel: Vec<Vec<i128>> = comp
            .iter()
            .map(|&j| {
                let pos = |x: usize| comp.iter().position(|&c| c == x).unwrap();
                let mut r = vec![0i128; comp.len()];
                r[pos(self.datum.phi[j])] += self.q as i128;
                r[pos(j)] -= 1;
                r
            })
            .collect();
        let det = if comp.is_empty() {
            1
        } else {
            AbelianQuotient::new(comp.len(), &rel).order().expect("finite")
        };
        let closed = (self.q as u128).pow(levi.count_ones()) * det;
        if closed != by_strata {
            return Err(Error::breach(
                MODULE,
                "l(kL_I) by strata = closed form",
                format!("I = {:?}: {by_strata} vs {closed}", mask_nodes(levi, n)),
            ));
        }
        memo.insert(levi, by_strata);
        Ok(by_strata)
    }

    /// `sum_c (-1)^{|c|} l'(k Stab(c))` over chains of parabolic radicals.
    /// The empty chain gives `+l'(kG) = q^n - 1`; a chain `I_0 > ... > I_m`
    /// of proper `phi`-stable subsets has `m + 1` subgroups, stabiliser
    /// `P_{I_m}` and `l'(kP_{I_m}) = l(kL_{I_m})`.
    pub fn knorr_robinson_sum(&self) -> Result<KrReport> {
        let n = self.n();
        let full = (1u32 << n) - 1;
        let proper: Vec<u32> = self.datum.phi_stable_subsets().into_iter().filter(|&m| m != full).collect();
        let l_prime_g = (self.q as u128).pow(n as u32) - 1;
        let mut memo = HashMap::new();
        let mut terms = Vec::new();
        let mut sum: i128 = l_prime_g as i128;
        // depth-first over chains, each extended by a strictly smaller subset
        let mut stack: Vec<Vec<u32>> = proper.iter().map(|&m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            let value = self.levi_simple_count(last, &mut memo)?;
            let sign: i8 = if chain.len() % 2 == 1 { -1 } else { 1 };
            sum += sign as i128 * value as i128;
            for &m in &proper {
                if m != last && m & !last == 0 {
                    let mut next = chain.clone();
                    next.push(m);
                    stack.push(next);
                }
            }
            terms.push(ChainTerm {
                chain: chain.iter().map(|&m| mask_nodes(m, n)).collect(),
                sign,
                value,
            });
        }
        terms.sort_by(|a, b| (a.chain.len(), &a.chain).cmp(&(b.chain.len(), &b.chain)));
        Ok(KrReport {
            q: self.q,
            l_prime_g,
            terms,
            sum,
        })
    }
}

pub fn restricted_weights(datum: &RootDatum, q: u64) -> Result<RestrictedWeightSet> {
    Ok(DefiningContext::new(datum, q)?.restricted_weights())
}

pub fn block_partition(datum: &RootDatum, q: u64) -> Result<BlockTable> {
    DefiningContext::new(datum, q)?.block_partition()
}

pub fn lemma_counts(datum: &RootDatum, q: u64) -> Result<Vec<LemmaRow>> {
    DefiningContext::new(datum, q)?.lemma_counts()
}

pub fn alperin_weights(datum: &RootDatum, q: u64) -> Result<AlperinReport> {
    DefiningContext::new(datum, q)?.alperin_weights()
}

pub fn knorr_robinson_sum(datum: &RootDatum, q: u64) -> Result<KrReport> {
    DefiningContext::new(datum, q)?.knorr_robinson_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(l: &str) -> RootDatum {
        RootDatum::build(l).unwrap()
    }

    #[test]
    fn restricted_boxes() {
        let a1 = restricted_weights(&datum("A1"), 5).unwrap();
        assert_eq!(a1.weights.len(), 5);
        assert_eq!(a1.steinberg, Weight::new(vec![4]));
        let a2 = restricted_weights(&datum("A2"), 2).unwrap();
        assert_eq!(a2.weights.len(), 4);
        assert_eq!(a2.steinberg, Weight::new(vec![1, 1]));
        assert_eq!(restricted_weights(&datum("C2"), 3).unwrap().weights.len(), 9);
        assert!(restricted_weights(&datum("A1"), 6).is_err());
    }

    #[test]
    fn sl2_blocks() {
        let t = block_partition(&datum("A1"), 5).unwrap();
        assert_eq!(t.blocks.len(), 2);
        let w = |b: &ZetaBlock| b.weights.iter().map(|w| w.coords[0]).collect::<Vec<_>>();
        assert!(t.blocks[0].zeta.is_trivial());
        assert_eq!(w(&t.blocks[0]), vec![0, 2]);
        assert_eq!(w(&t.blocks[1]), vec![1, 3]);
        assert_eq!(t.defect_zero, vec![Weight::new(vec![4])]);
    }

    #[test]
    fn sl3_q4_blocks_equal() {
        let t = block_partition(&datum("A2"), 4).unwrap();
        assert_eq!(t.blocks.iter().map(|b| b.weights.len()).collect::<Vec<_>>(), vec![5, 5, 5]);
    }

    #[test]
    fn lemma_examples() {
        let rows = lemma_counts(&datum("A1"), 5).unwrap();
        let nt = rows.iter().find(|r| !r.zeta.is_trivial()).unwrap();
        assert_eq!((nt.formula_count, nt.direct_count, nt.equal_to_principal), (2, 2, true));
        let rows = lemma_counts(&datum("C2"), 3).unwrap();
        assert!(rows.iter().any(|r| !r.zeta.is_trivial() && !r.equal_to_principal));
        let rows = lemma_counts(&datum("2A2"), 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.equal_to_principal));
    }

    #[test]
    fn alperin_examples() {
        let a = alperin_weights(&datum("A1"), 5).unwrap();
        let counts: Vec<(Vec<usize>, usize)> = a.strata.iter().map(|s| (s.levi.clone(), s.count)).collect();
        assert_eq!(counts, vec![(vec![], 4), (vec![0], 1)]);
        assert_eq!(alperin_weights(&datum("A2"), 2).unwrap().total, 4);
        let tw = alperin_weights(&datum("2A2"), 2).unwrap();
        assert_eq!(tw.strata.len(), 2);
        assert_eq!(tw.total, 4);
    }

    #[test]
    fn kr_examples() {
        let r = knorr_robinson_sum(&datum("A1"), 5).unwrap();
        assert_eq!(r.l_prime_g, 4);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].value, 4);
        assert_eq!(r.sum, 0);
        assert_eq!(knorr_robinson_sum(&datum("A2"), 2).unwrap().sum, 0);
        assert_eq!(knorr_robinson_sum(&datum("2A2"), 2).unwrap().sum, 0);
    }
}
