use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` with `q = p^k`, `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Order of `q` in `(Z/l)^*`; `None` if `l | q`.
pub fn multiplicative_order(q: u64, l: u64) -> Option<u64> {
    if l < 2 || q.is_multiple_of(l) {
        return None;
    }
    let q = q % l;
    let mut x = q;
    let mut k = 1;
    while x != 1 % l {
        x = x * q % l;
        k += 1;
        if k > l {
            return None;
        }
    }
    Some(k)
}

/// `l`-adic valuation of a nonzero big integer.
pub fn valuation(n: &BigInt, l: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let l = BigInt::from(l);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation_u(mut n: u128, l: u128) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    v
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(4, 3), Some(1));
        assert_eq!(multiplicative_order(5, 3), Some(2));
        assert_eq!(multiplicative_order(9, 3), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(216), 3), 3);
        assert_eq!(valuation(&BigInt::from(-120), 2), 3);
    }
}
