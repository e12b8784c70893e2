//! The level-one Fock space with the action of the `f_i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::partition::{residue, Partition};
use crate::arith::laurent::Laurent;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockVector {
    pub coeffs: BTreeMap<Partition, Laurent>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(p: Partition) -> Self {
        let mut v = Self::zero();
        v.add_term(&p, &Laurent::one());
        v
    }

    pub fn add_term(&mut self, p: &Partition, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(p);
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Laurent) {
        for (p, a) in &other.coeffs {
            self.add_term(p, &(a * c));
        }
    }

    pub fn coeff(&self, p: &Partition) -> Laurent {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `f_i |lambda>`: sum over addable `i`-nodes `g` of
/// `v^{#addable i-nodes right of g - #removable i-nodes right of g}`.
/// "Right of" means larger content `c - r`.
pub fn f_basis(i: usize, lam: &Partition, d: usize) -> FockVector {
    let content = |&(r, c): &(usize, usize)| c as i64 - r as i64;
    let add: Vec<(usize, usize)> = lam.addable().into_iter().filter(|&(r, c)| residue(r, c, d) == i).collect();
    let rem: Vec<(usize, usize)> = lam.removable().into_iter().filter(|&(r, c)| residue(r, c, d) == i).collect();
    let mut out = FockVector::zero();
    for g in &add {
        let cg = content(g);
        let a = add.iter().filter(|x| content(x) > cg).count() as i32;
        let b = rem.iter().filter(|x| content(x) > cg).count() as i32;
        out.add_term(&lam.with_node(g.0), &Laurent::monomial(1, a - b));
    }
    out
}

pub fn f_apply(i: usize, v: &FockVector, d: usize) -> FockVector {
    let mut out = FockVector::zero();
    for (p, c) in &v.coeffs {
        out.add_scaled(&f_basis(i, p, d), c);
    }
    out
}

/// Divided power `f_i^k / [k]!`.
pub fn f_action(i: usize, k: u32, v: &FockVector, d: usize) -> FockVector {
    let mut acc = v.clone();
    for _ in 0..k {
        acc = f_apply(i, &acc, d);
    }
    let fact = Laurent::quantum_factorial(k);
    let mut out = FockVector::zero();
    for (p, c) in &acc.coeffs {
        let q = c.div_exact(&fact).expect("divided powers are integral");
        out.add_term(p, &q);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = FockVector::basis(Partition::empty());
        assert_eq!(f_action(0, 1, &e, 2), FockVector::basis(Partition::new(vec![1])));
        let one = FockVector::basis(Partition::new(vec![1]));
        let got = f_action(1, 1, &one, 2);
        assert_eq!(got.coeff(&Partition::new(vec![2])), Laurent::one());
        assert_eq!(got.coeff(&Partition::new(vec![1, 1])), Laurent::monomial(1, 1));
        assert!(f_action(0, 1, &one, 2).is_zero());
    }

    #[test]
    fn divided_square() {
        // f_1^(2) (1) for d = 2 adds both 1-nodes: (2,1)
        let one = FockVector::basis(Partition::new(vec![1]));
        let got = f_action(1, 2, &one, 2);
        assert_eq!(got, FockVector::basis(Partition::new(vec![2, 1])));
    }
}
