use std::collections::BTreeMap;
use std::time::Instant;

use genlie::arith::laurent::Laurent;
use genlie::fock_llt::llt::{bar_matrix, ladder_monomial};
use genlie::fock_llt::wedge::WedgeSpace;
use genlie::fock_llt::{
    ladder_canonical_basis, llt_canonical_basis, partitions, shape_check, FockVector, Partition,
};

fn apply_bar(space: &mut WedgeSpace, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (p, c) in &v.coeffs {
        for (q, b) in space.bar(p) {
            out.add_term(&q, &(&c.bar() * &b));
        }
    }
    out
}

/// Number of d-regular partitions of n by the generating function
/// prod (1 - x^{di}) / (1 - x^i), i.e. parts occur fewer than d times.
fn regular_count(n: usize, d: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        let mut next = vec![0usize; n + 1];
        for (s, &w) in ways.iter().enumerate() {
            for m in 0..d {
                if s + m * part <= n {
                    next[s + m * part] += w;
                }
            }
        }
        ways = next;
    }
    ways[n]
}

#[test]
fn canonical_bases_have_the_expected_shape() {
    let start = Instant::now();
    for d in [2usize, 3, 4] {
        for n in 1..=8 {
            let m = llt_canonical_basis(n, d).unwrap();
            let r = shape_check(&m);
            assert!(r.unitriangular && r.off_diagonal_in_v_zv && r.block_refined, "n={n} d={d}: {:?}", r.violations);
            assert!(r.nonnegative, "positivity fails at n={n} d={d}");
            assert_eq!(r.bijection.len(), m.partitions.len());
        }
    }
    assert!(start.elapsed().as_secs() < 300);
}

#[test]
fn wedge_bar_fixes_ladder_monomials_and_columns() {
    for d in [2usize, 3, 4] {
        for n in 1..=7 {
            let mut space = WedgeSpace::new(d, n);
            let m = llt_canonical_basis(n, d).unwrap();
            for mu in partitions(n) {
                let g = m.column(&mu).unwrap();
                assert_eq!(apply_bar(&mut space, &g), g, "G{mu} n={n} d={d}");
                if mu.is_d_regular(d) {
                    let a = ladder_monomial(&mu, d);
                    assert_eq!(apply_bar(&mut space, &a), a, "A{mu} d={d}");
                }
            }
        }
    }
}

#[test]
fn ladder_route_matches_wedge_route() {
    for d in [2usize, 3, 4] {
        for n in 1..=8 {
            let m = llt_canonical_basis(n, d).unwrap();
            let cols = ladder_canonical_basis(n, d).unwrap();
            assert_eq!(cols.len(), regular_count(n, d), "n={n} d={d}");
            for col in cols {
                assert_eq!(m.column(&col.mu).unwrap(), col.g, "G{} n={n} d={d}", col.mu);
                let mut re = FockVector::zero();
                for (nu, beta) in &col.expansion {
                    assert!(beta.is_bar_invariant(), "beta at {nu}");
                    re.add_scaled(&ladder_monomial(nu, d), beta);
                }
                assert_eq!(re, col.g);
            }
        }
    }
}

#[test]
fn bar_matrix_is_stable_in_the_number_of_factors() {
    for d in [2usize, 3] {
        for n in 1..=6 {
            let base = bar_matrix(n, d).unwrap();
            for extra in [1usize, d, 2 * d + 1] {
                let mut space = WedgeSpace::new(d, n + extra);
                for (p, col) in &base {
                    let wide: BTreeMap<Partition, Laurent> = space.bar(p);
                    assert_eq!(&wide, col, "{p} with {} factors", n + extra);
                }
            }
        }
    }
}

#[test]
fn matrices_are_identity_beyond_n() {
    for n in 1..=6 {
        let m = llt_canonical_basis(n, n + 1).unwrap();
        let ones = m.at_one();
        for (r, row) in ones.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(r == c));
            }
        }
    }
}

#[test]
fn weight_one_columns_have_two_entries() {
    // In the principal block of n = d every column has exactly two nonzero
    // entries except the last, and the entries are v-powers.
    for d in [2usize, 3, 4, 5] {
        let m = llt_canonical_basis(d, d).unwrap();
        let hooks: Vec<usize> = (0..m.partitions.len())
            .filter(|&i| m.partitions[i].core(d).is_empty())
            .collect();
        assert_eq!(hooks.len(), d);
        for (k, &c) in hooks.iter().enumerate() {
            let nz: Vec<&Laurent> = hooks.iter().map(|&r| &m.entries[r][c]).filter(|e| !e.is_zero()).collect();
            assert_eq!(nz.len(), if k + 1 < d { 2 } else { 1 }, "d={d} column {k}");
        }
    }
}

#[test]
fn guard_and_bad_input() {
    assert!(llt_canonical_basis(13, 2).is_err());
    assert!(llt_canonical_basis(3, 1).is_err());
}
