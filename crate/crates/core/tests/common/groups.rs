//! Brute-force orders of small classical matrix groups.
//!
//! The symplectic and unitary counts enumerate frames column by column, each
//! column drawn from an explicitly computed orthogonal complement. With
//! `fix_first` the first column is pinned to `e_1` and the count multiplied by
//! the number of admissible first columns; this uses only transitivity of the
//! group on those vectors (Witt), and the full count checks it at small `q`.

#![allow(dead_code)]

use super::gf::Gf;

pub fn sl2_order(q: usize) -> u128 {
    let f = Gf::new(q);
    let mut count = 0u128;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if f.sub(f.mul(a, d), f.mul(b, c)) == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn det3(f: &Gf, c: [&[usize]; 3]) -> usize {
    let m = |i: usize, j: usize| c[j][i];
    let t1 = f.mul(m(0, 0), f.sub(f.mul(m(1, 1), m(2, 2)), f.mul(m(1, 2), m(2, 1))));
    let t2 = f.mul(m(0, 1), f.sub(f.mul(m(1, 0), m(2, 2)), f.mul(m(1, 2), m(2, 0))));
    let t3 = f.mul(m(0, 2), f.sub(f.mul(m(1, 0), m(2, 1)), f.mul(m(1, 1), m(2, 0))));
    f.add(f.sub(t1, t2), t3)
}

/// Every 3x3 matrix is visited.
pub fn sl3_order(q: usize) -> u128 {
    let f = Gf::new(q);
    let vs = f.vectors(3);
    let mut count = 0u128;
    for a in &vs {
        for b in &vs {
            for c in &vs {
                if det3(&f, [a, b, c]) == 1 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Symplectic form with Gram matrix `[[0, I], [-I, 0]]` on `F_q^4`.
fn symp(f: &Gf, x: &[usize], y: &[usize]) -> usize {
    let a = f.add(f.mul(x[0], y[2]), f.mul(x[1], y[3]));
    let b = f.add(f.mul(x[2], y[0]), f.mul(x[3], y[1]));
    f.sub(a, b)
}

fn symp_row(f: &Gf, x: &[usize]) -> Vec<usize> {
    // <x, y> = row . y
    vec![f.neg(x[2]), f.neg(x[3]), x[0], x[1]]
}

/// Frames `(e1, e2, f1, f2)` with `<e_i, f_j> = delta_ij`, other pairings 0.
pub fn sp4_order(q: usize, fix_first: bool) -> u128 {
    let f = Gf::new(q);
    let all = f.vectors(4);
    let nonzero: Vec<Vec<usize>> = all.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let firsts: Vec<Vec<usize>> = if fix_first {
        vec![vec![1, 0, 0, 0]]
    } else {
        nonzero.clone()
    };
    let mut count = 0u128;
    for e1 in &firsts {
        for f1 in &all {
            if symp(&f, e1, f1) != 1 {
                continue;
            }
            let comp = f.span(&f.nullspace(&[symp_row(&f, e1), symp_row(&f, f1)], 4), 4);
            for e2 in &comp {
                if e2.iter().all(|&x| x == 0) {
                    continue;
                }
                for f2 in &comp {
                    if symp(&f, e2, f2) == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    if fix_first {
        count * nonzero.len() as u128
    } else {
        count
    }
}

/// `SU_3(q)` inside `GL_3(q^2)` for the form `sum x_i conj(y_i)`,
/// `conj(x) = x^q`.
pub fn su3_order(q: usize, fix_first: bool) -> u128 {
    let f = Gf::new(q * q);
    let conj: Vec<usize> = (0..f.q).map(|x| f.pow(x, q)).collect();
    let herm = |x: &[usize], y: &[usize]| {
        (0..3).fold(0, |acc, i| f.add(acc, f.mul(x[i], conj[y[i]])))
    };
    let herm_row = |y: &[usize]| -> Vec<usize> { y.iter().map(|&c| conj[c]).collect() };
    let all = f.vectors(3);
    let unit: Vec<&Vec<usize>> = all.iter().filter(|v| herm(v, v) == 1).collect();
    let e1 = vec![1, 0, 0];
    let firsts: Vec<&Vec<usize>> = if fix_first { vec![&e1] } else { unit.clone() };
    let mut count = 0u128;
    for v1 in firsts {
        let c1 = f.span(&f.nullspace(&[herm_row(v1)], 3), 3);
        for v2 in &c1 {
            if herm(v2, v2) != 1 {
                continue;
            }
            let c2 = f.span(&f.nullspace(&[herm_row(v1), herm_row(v2)], 3), 3);
            for v3 in &c2 {
                if herm(v3, v3) == 1 && det3(&f, [v1, v2, v3]) == 1 {
                    count += 1;
                }
            }
        }
    }
    if fix_first {
        count * unit.len() as u128
    } else {
        count
    }
}

/// All invertible `n x n` matrices over `F_q` as row-major vectors.
pub fn gl_elements(f: &Gf, n: usize) -> Vec<Vec<usize>> {
    let total = f.q.pow((n * n) as u32);
    (0..total)
        .map(|mut x| {
            (0..n * n)
                .map(|_| {
                    let d = x % f.q;
                    x /= f.q;
                    d
                })
                .collect::<Vec<usize>>()
        })
        .filter(|m| rank(f, m, n) == n)
        .collect()
}

fn rank(f: &Gf, m: &[usize], n: usize) -> usize {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
    n - f.nullspace(&rows, n).len()
}

pub fn mat_mul(f: &Gf, a: &[usize], b: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = s;
        }
    }
    out
}
