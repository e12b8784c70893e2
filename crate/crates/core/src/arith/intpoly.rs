//! Dense integer polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense polynomial, `coeffs[k]` is the coefficient of `x^k`. Trailing zeros
/// are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> Self {
        IntPoly::new(vec![1])
    }

    /// `x^m - c`.
    pub fn binomial(m: usize, c: i128) -> Self {
        let mut coeffs = vec![0; m + 1];
        coeffs[m] = 1;
        coeffs[0] -= c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Substitute `x -> x^m`.
    pub fn compose_power(&self, m: usize) -> IntPoly {
        let mut out = vec![0; self.degree().map_or(0, |d| d * m + 1)];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k * m] = c;
        }
        IntPoly::new(out)
    }

    /// Exact quotient by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        assert_eq!(divisor.coeffs[dd], 1, "divisor must be monic");
        let Some(n) = self.degree() else {
            return Some(IntPoly::new(vec![]));
        };
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd];
            quot[k] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= c * b;
                }
            }
        }
        if rem.iter().any(|&r| r != 0) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigInt::from(*c);
        }
        acc
    }

    pub fn eval(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Some(acc)
    }
}

fn cyclo_cache() -> &'static Mutex<HashMap<usize, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, via `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::binomial(n, 1);
    for d in divisors(n) {
        if d < n {
            p = p
                .div_exact_monic(&cyclotomic(d))
                .expect("cyclotomic divisibility");
        }
    }
    cyclo_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// `Phi_n(q)` as a big integer.
pub fn cyclotomic_value(n: usize, q: &BigInt) -> BigInt {
    cyclotomic(n).eval_big(q)
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// Factor a monic integer polynomial into cyclotomic factors whose indices are
/// drawn from `candidates`. Returns the multiplicities or `None` if something
/// is left over.
pub fn cyclotomic_multiplicities(
    poly: &IntPoly,
    candidates: &[usize],
) -> Option<Vec<(usize, u32)>> {
    let mut rest = poly.clone();
    let mut out = Vec::new();
    for &k in candidates {
        let phi = cyclotomic(k);
        let mut m = 0;
        while let Some(q) = rest.div_exact_monic(&phi) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            out.push((k, m));
        }
    }
    (rest == IntPoly::one()).then_some(out)
}

pub fn big_pow(base: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn big_one() -> BigInt {
    BigInt::one()
}
