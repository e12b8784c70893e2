//! Generic orders `q^N prod (q^{d_i} - eps_i)` and their cyclotomic
//! factorisation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::intpoly::{cyclotomic, cyclotomic_multiplicities, cyclotomic_value, divisors, totient};
use crate::arith::numtheory::{is_prime, multiplicative_order, prime_power, valuation};
use crate::error::{Error, Result};
use crate::root_datum::{classical_degrees, FactorOrbit, RootDatum};

const MODULE: &str = "generic_order";

/// A factor `q^degree - eps` with `eps = exp(2 pi i exp / order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorPair {
    pub degree: usize,
    pub eps_order: usize,
    pub eps_exp: usize,
}

impl FactorPair {
    fn new(degree: usize, eps_order: usize, eps_exp: usize) -> Self {
        let g = num_integer::gcd(eps_order, eps_exp % eps_order);
        let g = if eps_exp.is_multiple_of(eps_order) { eps_order } else { g };
        FactorPair {
            degree,
            eps_order: eps_order / g,
            eps_exp: (eps_exp % eps_order) / g,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloFactorization {
    pub label: String,
    pub qpower: usize,
    pub exponents: BTreeMap<usize, u32>,
    pub factor_pairs: Vec<FactorPair>,
    /// Semisimple rank plus the central torus rank in GL-mode.
    pub rank: usize,
    pub torus_rank: usize,
}

/// Degree table of one simple factor with the eigenvalues of its own twist.
fn factor_pairs_simple(letter: char, n: usize, twist: usize) -> Vec<FactorPair> {
    let degs = classical_degrees(letter, n);
    let plain = |d: usize| FactorPair::new(d, 1, 0);
    let minus = |d: usize| FactorPair::new(d, 2, 1);
    match (letter, twist) {
        (_, 1) => degs.into_iter().map(plain).collect(),
        ('A', 2) => degs
            .into_iter()
            .map(|d| if d % 2 == 1 { minus(d) } else { plain(d) })
            .collect(),
        ('D', 2) => {
            // the Pfaffian has degree n; any other degree-n invariant is plain
            let mut out: Vec<FactorPair> = (1..n).map(|k| plain(2 * k)).collect();
            out.push(minus(n));
            out
        }
        ('D', 3) => vec![
            plain(2),
            FactorPair::new(4, 3, 1),
            FactorPair::new(4, 3, 2),
            plain(6),
        ],
        ('E', 2) => degs
            .into_iter()
            .map(|d| if d == 5 || d == 9 { minus(d) } else { plain(d) })
            .collect(),
        _ => unreachable!("twist validated by root_datum"),
    }
}

/// Pairs for an orbit of `k` cycled copies: each `q^{kd} - eps` splits as
/// the product of `q^d - eta` over the `k`-th roots `eta` of `eps`.
fn factor_pairs_orbit(o: &FactorOrbit) -> Vec<FactorPair> {
    let k = o.copies;
    factor_pairs_simple(o.letter, o.rank, o.inner_twist)
        .into_iter()
        .flat_map(|p| {
            (0..k).map(move |j| FactorPair::new(p.degree, p.eps_order * k, p.eps_exp + p.eps_order * j))
        })
        .collect()
}

fn sorted(mut v: Vec<FactorPair>) -> Vec<FactorPair> {
    v.sort();
    v
}

/// Galois-orbit products `Phi_e(x^m)` factored into `Phi_k(x)`.
fn exponents_from_pairs(pairs: &[FactorPair]) -> Result<BTreeMap<usize, u32>> {
    let mut by_class: BTreeMap<(usize, usize), BTreeMap<usize, u32>> = BTreeMap::new();
    for p in pairs {
        *by_class
            .entry((p.degree, p.eps_order))
            .or_default()
            .entry(p.eps_exp)
            .or_default() += 1;
    }
    let mut out: BTreeMap<usize, u32> = BTreeMap::new();
    for ((m, e), exps) in by_class {
        // every primitive e-th root must occur equally often
        let prims: Vec<usize> = (0..e.max(1))
            .filter(|&a| num_integer::gcd(a, e) == 1 || e == 1)
            .collect();
        let mult = exps.values().next().copied().unwrap_or(0);
        if exps.len() != prims.len() || exps.values().any(|&c| c != mult) {
            return Err(Error::breach(
                MODULE,
                "eps_i closed under Galois conjugation",
                format!("degree {m}, order {e}: {exps:?}"),
            ));
        }
        let poly = cyclotomic(e).compose_power(m);
        let facs = cyclotomic_multiplicities(&poly, &divisors(e * m)).ok_or_else(|| {
            Error::breach(MODULE, "cyclotomic factorisation", format!("Phi_{e}(x^{m})"))
        })?;
        for (k, c) in facs {
            *out.entry(k).or_default() += c * mult;
        }
    }
    Ok(out)
}

fn finish(label: String, qpower: usize, rank: usize, torus_rank: usize, pairs: Vec<FactorPair>) -> Result<CycloFactorization> {
    let pairs = sorted(pairs);
    let exponents = exponents_from_pairs(&pairs)?;
    let f = CycloFactorization {
        label,
        qpower,
        exponents,
        factor_pairs: pairs,
        rank,
        torus_rank,
    };
    let degree_sum: usize = f.factor_pairs.iter().map(|p| p.degree).sum();
    if degree_sum != f.qpower + f.rank {
        return Err(Error::breach(
            MODULE,
            "sum of degrees = N + rank",
            format!("{degree_sum} vs {} + {}", f.qpower, f.rank),
        ));
    }
    let cyc_degree: usize = f.exponents.iter().map(|(&k, &a)| totient(k) * a as usize).sum();
    if cyc_degree != degree_sum {
        return Err(Error::breach(MODULE, "factorisation degree", format!("{cyc_degree} vs {degree_sum}")));
    }
    Ok(f)
}

/// Generic order of the finite group attached to a root datum.
pub fn generic_order(datum: &RootDatum) -> Result<CycloFactorization> {
    let pairs: Vec<FactorPair> = datum.factor_orbits.iter().flat_map(factor_pairs_orbit).collect();
    finish(datum.type_label.clone(), datum.n_pos, datum.rank, 0, pairs)
}

/// `GL_n` (or `U_n` when `unitary`): the `A_{n-1}` data plus a central torus
/// factor `q - 1` (resp. `q + 1`).
pub fn generic_order_gl(n: usize, unitary: bool) -> Result<CycloFactorization> {
    if n == 0 {
        return Err(Error::bad(MODULE, "GL-mode needs n >= 1"));
    }
    if unitary && n < 3 {
        return Err(Error::bad(MODULE, "U_n needs n >= 3 in this model"));
    }
    let mut pairs = if n == 1 {
        vec![]
    } else {
        factor_pairs_simple('A', n - 1, if unitary { 2 } else { 1 })
    };
    pairs.push(if unitary {
        FactorPair::new(1, 2, 1)
    } else {
        FactorPair::new(1, 1, 0)
    });
    let label = format!("{}{n}", if unitary { "U" } else { "GL" });
    finish(label, n * (n - 1) / 2, n, 1, pairs)
}

impl CycloFactorization {
    /// `a(d)`, zero when `Phi_d` does not occur.
    pub fn a(&self, d: usize) -> u32 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    /// Exact value at `q`; needs `q >= 2` a prime power.
    pub fn evaluate(&self, q: u64) -> Result<BigInt> {
        check_q(q)?;
        Ok(self.evaluate_unchecked(&BigInt::from(q)))
    }

    /// Value at any integer, no primality requirement.
    pub fn evaluate_unchecked(&self, q: &BigInt) -> BigInt {
        let mut acc = num_traits::pow(q.clone(), self.qpower);
        for (&k, &a) in &self.exponents {
            acc *= num_traits::pow(cyclotomic_value(k, q), a as usize);
        }
        acc
    }

    /// Value of `q^N prod (q^{d_i} - eps_i)` computed straight from the pairs,
    /// with Galois-conjugate factors multiplied together.
    pub fn evaluate_from_pairs(&self, q: &BigInt) -> BigInt {
        let mut acc = num_traits::pow(q.clone(), self.qpower);
        let mut by_class: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in &self.factor_pairs {
            *by_class.entry((p.degree, p.eps_order)).or_default() += 1;
        }
        for ((m, e), c) in by_class {
            let v = cyclotomic(e).compose_power(m).eval_big(q);
            acc *= num_traits::pow(v, c / totient(e));
        }
        acc
    }

    /// `(d, nu)`: the order of `q` mod `ell` and `nu_ell(|G|)`.
    pub fn ell_part(&self, q: u64, ell: u64) -> Result<(u64, u32)> {
        check_q(q)?;
        if !is_prime(ell) {
            return Err(Error::bad(MODULE, format!("ell = {ell} is not prime")));
        }
        let d = multiplicative_order(q, ell).ok_or_else(|| {
            Error::bad(MODULE, "defining characteristic: use defining_char")
        })?;
        let qb = BigInt::from(q);
        let nu: u32 = self
            .exponents
            .iter()
            .map(|(&k, &a)| a * valuation(&cyclotomic_value(k, &qb), ell))
            .sum();
        let direct = valuation(&self.evaluate_unchecked(&qb), ell);
        if nu != direct {
            return Err(Error::breach(
                MODULE,
                "nu from factorisation = nu of the order",
                format!("{nu} vs {direct}"),
            ));
        }
        Ok((d, nu))
    }

    /// Integer polynomial `prod_d Phi_d^{a(d)}` (without `q^N`), low degree first.
    pub fn polynomial(&self) -> Vec<i128> {
        let mut p = crate::arith::intpoly::IntPoly::one();
        for (&k, &a) in &self.exponents {
            p = p.mul(&cyclotomic(k).pow(a));
        }
        p.coeffs().to_vec()
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::bad(MODULE, format!("q = {q} must be at least 2")));
    }
    if prime_power(q).is_none() {
        return Err(Error::bad(MODULE, format!("q = {q} is not a prime power")));
    }
    Ok(())
}

/// `nu_ell` of the order of a cyclotomic value, exposed for reports.
pub fn phi_valuation(k: usize, q: u64, ell: u64) -> u32 {
    let v = cyclotomic_value(k, &BigInt::from(q));
    if v.is_zero() {
        return 0;
    }
    valuation(&v, ell)
}
