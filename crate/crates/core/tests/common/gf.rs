//! Finite fields `GF(p^k)` by lookup tables, for the matrix-group oracles.

#![allow(dead_code)]

pub struct Gf {
    pub p: usize,
    pub k: u32,
    pub q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

fn digits(mut x: usize, p: usize, k: u32) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Gf {
    /// The field with `q = p^k` elements; elements are `0..q`, with `1` the
    /// unit and base-`p` digits as polynomial coefficients.
    pub fn new(q: usize) -> Gf {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        assert_eq!(r, 1, "{q} is not a prime power");
        // search for a modulus making the multiplication table a field
        for tail in 0..q {
            let m = digits(tail, p, k);
            let mul_tab = Self::mul_table(p, k, q, &m);
            let mut inv = vec![0; q];
            let mut is_field = true;
            for a in 1..q {
                match (1..q).find(|&b| mul_tab[a * q + b] == 1) {
                    Some(b) => inv[a] = b,
                    None => {
                        is_field = false;
                        break;
                    }
                }
            }
            if !is_field {
                continue;
            }
            let mut add = vec![0; q * q];
            let mut neg = vec![0; q];
            for a in 0..q {
                let da = digits(a, p, k);
                for b in 0..q {
                    let db = digits(b, p, k);
                    let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[a * q + b] = undigits(&s, p);
                }
                let n: Vec<usize> = da.iter().map(|x| (p - x) % p).collect();
                neg[a] = undigits(&n, p);
            }
            return Gf {
                p,
                k,
                q,
                add,
                mul: mul_tab,
                neg,
                inv,
            };
        }
        unreachable!("an irreducible modulus exists")
    }

    /// `x^k = -sum m_j x^j`.
    fn mul_table(p: usize, k: u32, q: usize, m: &[usize]) -> Vec<usize> {
        let k = k as usize;
        let mut tab = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k as u32);
            for b in 0..q {
                let db = digits(b, p, k as u32);
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for j in 0..k {
                        prod[deg - k + j] = (prod[deg - k + j] + (p - c) * m[j]) % p;
                    }
                }
                tab[a * q + b] = undigits(&prod[..k], p);
            }
        }
        tab
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0);
        self.inv[a]
    }
    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn dot(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// All vectors of length `n` over the field.
    pub fn vectors(&self, n: usize) -> Vec<Vec<usize>> {
        let total = self.q.pow(n as u32);
        (0..total)
            .map(|mut x| {
                (0..n)
                    .map(|_| {
                        let d = x % self.q;
                        x /= self.q;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of `{x : rows . x = 0}` by Gaussian elimination.
    pub fn nullspace(&self, rows: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
        let mut a: Vec<Vec<usize>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let inv = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..n {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|fc| {
                let mut v = vec![0; n];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(a[row][fc]);
                }
                v
            })
            .collect()
    }

    /// Every vector in the span of `basis`.
    pub fn span(&self, basis: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
        self.vectors(basis.len())
            .into_iter()
            .map(|coef| {
                let mut v = vec![0; n];
                for (c, b) in coef.iter().zip(basis) {
                    for j in 0..n {
                        v[j] = self.add(v[j], self.mul(*c, b[j]));
                    }
                }
                v
            })
            .collect()
    }
}
