//! Laurent polynomials in one variable with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Sparse Laurent polynomial `sum c_k v^k`. Zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut out = Laurent::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, c * s)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when every exponent is strictly positive (membership in `vZ[v]`).
    pub fn in_positive_part(&self) -> bool {
        self.min_degree().is_none_or(|k| k > 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Part with exponents `> 0`.
    pub fn positive_part(&self) -> Self {
        Laurent {
            terms: self.terms.range(1..).map(|(&k, &c)| (k, c)).collect(),
        }
    }

    /// Evaluation at an integer; only meaningful for `x = ±1` when negative
    /// exponents are present, so that case is checked.
    pub fn eval(&self, x: i64) -> Option<i64> {
        let mut acc: i64 = 0;
        for (&k, &c) in &self.terms {
            let term = if k >= 0 {
                c.checked_mul(x.checked_pow(k as u32)?)?
            } else if x == 1 || x == -1 {
                c * x.pow((-k) as u32)
            } else {
                return None;
            };
            acc = acc.checked_add(term)?;
        }
        Some(acc)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let dlo = divisor.min_degree().unwrap();
        let dhi = divisor.max_degree().unwrap();
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().unwrap();
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let q = Laurent::monomial(c / lead, hi - dhi);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Symmetric quantum integer `[k] = (v^k - v^{-k}) / (v - v^{-1})`.
    pub fn quantum_int(k: u32) -> Laurent {
        let k = k as i32;
        Laurent::from_terms((0..k).map(|j| (k - 1 - 2 * j, 1)))
    }

    /// `[k]! = [1][2]...[k]`.
    pub fn quantum_factorial(k: u32) -> Laurent {
        (1..=k).fold(Laurent::one(), |acc, j| &acc * &Laurent::quantum_int(j))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &c) in self.terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "v")?,
                (1, m) => write!(f, "{m}v")?,
                (k, 1) => write!(f, "v^{k}")?,
                (k, m) => write!(f, "{m}v^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&k, &c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (&k, &c) in &rhs.terms {
            self.add_term(k, -c);
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&a, &c) in &self.terms {
            for (&b, &d) in &rhs.terms {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}
