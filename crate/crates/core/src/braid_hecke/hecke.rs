//! The Iwahori-Hecke algebra over `Z[x, x^{-1}]` in the `T_w` basis, with
//! `(T_s - x)(T_s + 1) = 0`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::laurent::Laurent;
use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::weyl::WeylGroup;

const MODULE: &str = "braid_hecke";

/// Finite sum of `c_w T_w`, keyed by the index of `w` in the group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeElement {
    pub support: BTreeMap<usize, Laurent>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, w: usize, c: &Laurent) {
        let entry = self.support.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.support.remove(&w);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (&w, c) in &other.support {
            out.add_term(w, c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&w, a) in &self.support {
            out.add_term(w, &(a * c));
        }
        out
    }

    pub fn coeff(&self, w: usize) -> Laurent {
        self.support.get(&w).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialTarget {
    Integers,
    Modulo(u64),
}

/// Image of a Hecke element under `x -> x0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedElement {
    pub target: SpecialTarget,
    pub x0: i64,
    pub support: BTreeMap<usize, i64>,
}

pub struct HeckeAlgebra {
    pub weyl: WeylGroup,
}

impl HeckeAlgebra {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        Ok(HeckeAlgebra {
            weyl: WeylGroup::generate(datum)?,
        })
    }

    pub fn from_weyl(weyl: WeylGroup) -> Self {
        HeckeAlgebra { weyl }
    }

    pub fn t(&self, w: usize) -> HeckeElement {
        let mut e = HeckeElement::zero();
        e.add_term(w, &Laurent::one());
        e
    }

    pub fn one(&self) -> HeckeElement {
        self.t(self.weyl.identity())
    }

    pub fn t_word(&self, word: &[usize]) -> Result<HeckeElement> {
        Ok(self.t(self.weyl.from_word(word)?))
    }

    /// `T_s h`.
    pub fn left_mul_simple(&self, s: usize, h: &HeckeElement) -> HeckeElement {
        let x = Laurent::monomial(1, 1);
        let xm1 = &x - &Laurent::one();
        let g = self.weyl.simple(s);
        let mut out = HeckeElement::zero();
        for (&w, c) in &h.support {
            let sw = self.weyl.mul(g, w);
            if self.weyl.element(sw).length > self.weyl.element(w).length {
                out.add_term(sw, c);
            } else {
                out.add_term(sw, &(c * &x));
                out.add_term(w, &(c * &xm1));
            }
        }
        out
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&u, c) in &a.support {
            let mut acc = b.clone();
            for &s in self.weyl.element(u).word.iter().rev() {
                acc = self.left_mul_simple(s, &acc);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `sum_w x^{l(w)}`.
    pub fn poincare(&self) -> Laurent {
        Laurent::from_terms(
            self.weyl
                .poincare_polynomial()
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as i32, c as i64)),
        )
    }

    pub fn specialize(&self, h: &HeckeElement, x0: i64, target: SpecialTarget) -> Result<SpecializedElement> {
        let negative = h.support.values().any(|c| c.min_degree().is_some_and(|k| k < 0));
        let mut support = BTreeMap::new();
        match target {
            SpecialTarget::Integers => {
                if x0 == 0 || (negative && x0.abs() != 1) {
                    return Err(Error::bad(MODULE, format!("x0 = {x0} is not invertible in Z")));
                }
                for (&w, c) in &h.support {
                    let v = c
                        .eval(x0)
                        .ok_or_else(|| Error::bad(MODULE, "integer overflow in specialization"))?;
                    if v != 0 {
                        support.insert(w, v);
                    }
                }
            }
            SpecialTarget::Modulo(m) => {
                if m < 2 {
                    return Err(Error::bad(MODULE, "modulus must be at least 2"));
                }
                let m = m as i128;
                let r = (x0 as i128).rem_euclid(m);
                if r.gcd(&m) != 1 {
                    return Err(Error::bad(MODULE, format!("x0 = {x0} is not a unit mod {m}")));
                }
                let inv = mod_inverse(r, m);
                for (&w, c) in &h.support {
                    let mut acc = 0i128;
                    for (k, a) in c.terms() {
                        let base = if k >= 0 { r } else { inv };
                        acc = (acc + a as i128 * mod_pow(base, k.unsigned_abs(), m)).rem_euclid(m);
                    }
                    if acc != 0 {
                        support.insert(w, acc as i64);
                    }
                }
            }
        }
        Ok(SpecializedElement { target, x0, support })
    }
}

fn mod_pow(mut b: i128, mut e: u32, m: i128) -> i128 {
    let mut acc = 1 % m;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hecke(l: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(&RootDatum::build(l).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let h = hecke("A1");
        let ts = h.t_word(&[0]).unwrap();
        let sq = h.multiply(&ts, &ts);
        let s = h.weyl.simple(0);
        assert_eq!(sq.coeff(s), Laurent::from_terms([(1, 1), (0, -1)]));
        assert_eq!(sq.coeff(h.weyl.identity()), Laurent::monomial(1, 1));
        assert_eq!(h.multiply(&h.one(), &ts), ts);
    }

    #[test]
    fn specializations() {
        let h = hecke("A1");
        let ts = h.t_word(&[0]).unwrap();
        let sq = h.multiply(&ts, &ts);
        let at1 = h.specialize(&sq, 1, SpecialTarget::Integers).unwrap();
        assert_eq!(at1.support, BTreeMap::from([(h.weyl.identity(), 1)]));
        let atm1 = h.specialize(&sq, -1, SpecialTarget::Integers).unwrap();
        assert_eq!(atm1.support, BTreeMap::from([(h.weyl.identity(), -1), (h.weyl.simple(0), -2)]));
        // q = 6 == 1 mod 5 collapses to the group algebra over F_5
        let mod5 = h.specialize(&sq, 6, SpecialTarget::Modulo(5)).unwrap();
        assert_eq!(mod5.support, BTreeMap::from([(h.weyl.identity(), 1)]));
        assert!(h.specialize(&sq, 5, SpecialTarget::Modulo(5)).is_err());
        assert!(h.specialize(&sq, 0, SpecialTarget::Integers).is_err());
    }

    #[test]
    fn poincare_at_one() {
        let h = hecke("A2");
        assert_eq!(h.poincare(), Laurent::from_terms([(0, 1), (1, 2), (2, 2), (3, 1)]));
        assert_eq!(h.poincare().eval(1), Some(6));
    }

    #[test]
    fn braid_relation_in_hecke() {
        let h = hecke("B2");
        let a = h.t_word(&[0, 1, 0, 1]).unwrap();
        let b = h.t_word(&[1, 0, 1, 0]).unwrap();
        assert_eq!(a, b);
        let t0 = h.t_word(&[0]).unwrap();
        let t1 = h.t_word(&[1]).unwrap();
        let lhs = h.multiply(&h.multiply(&t0, &t1), &h.multiply(&t0, &t1));
        assert_eq!(lhs, a);
    }
}
