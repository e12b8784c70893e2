//! Sylow subgroups of `GL_n(q)` for tiny `n, q`, by greedy growth.
//!
//! A single pass over the `l`-elements, keeping each one whose adjunction
//! still generates an `l`-group, ends in a maximal `l`-subgroup, which is a
//! Sylow subgroup.

#![allow(dead_code)]

use std::collections::HashSet;

use super::gf::Gf;
use super::groups::{gl_elements, mat_mul};

fn identity(n: usize) -> Vec<usize> {
    (0..n * n).map(|i| usize::from(i / n == i % n)).collect()
}

fn element_order(f: &Gf, g: &[usize], n: usize) -> usize {
    let id = identity(n);
    let mut x = g.to_vec();
    let mut k = 1;
    while x != id {
        x = mat_mul(f, &x, g, n);
        k += 1;
    }
    k
}

fn is_power_of(mut m: usize, l: usize) -> bool {
    while m.is_multiple_of(l) {
        m /= l;
    }
    m == 1
}

fn closure(f: &Gf, gens: &[Vec<usize>], n: usize) -> HashSet<Vec<usize>> {
    let mut set: HashSet<Vec<usize>> = HashSet::from([identity(n)]);
    let mut frontier = vec![identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mat_mul(f, &x, g, n);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub struct SylowOracle {
    pub group_order: usize,
    pub sylow_order: usize,
    pub abelian: bool,
}

pub fn gl_sylow(q: usize, n: usize, l: usize) -> SylowOracle {
    let f = Gf::new(q);
    let elems = gl_elements(&f, n);
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut h: HashSet<Vec<usize>> = HashSet::from([identity(n)]);
    for g in &elems {
        if h.contains(g) || !is_power_of(element_order(&f, g, n), l) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(g.clone());
        let k = closure(&f, &trial, n);
        if is_power_of(k.len(), l) {
            gens = trial;
            h = k;
        }
    }
    let members: Vec<&Vec<usize>> = h.iter().collect();
    let abelian = members
        .iter()
        .all(|a| members.iter().all(|b| mat_mul(&f, a, b, n) == mat_mul(&f, b, a, n)));
    SylowOracle {
        group_order: elems.len(),
        sylow_order: h.len(),
        abelian,
    }
}
