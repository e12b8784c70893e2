use genlie::arith::field::{rank, PrimeField};
use genlie::arith::numtheory::is_prime;
use genlie::degeneration::{
    build_isomorphism, dg_cohomology_check, radical_section, AbelianLGroup, DgAlgebra, DgElement, GroupAlgebra,
    TruncatedAlgebra,
};
use proptest::prelude::*;

/// Partitions of `k` as multisets of exponents, grouped into `(r, n)`.
fn exponent_types(k: u32) -> Vec<Vec<(u32, usize)>> {
    fn go(k: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for r in (1..=max.min(k)).rev() {
            cur.push(r);
            go(k - r, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| {
            let mut f: Vec<(u32, usize)> = Vec::new();
            for r in p {
                match f.last_mut() {
                    Some((s, n)) if *s == r => *n += 1,
                    _ => f.push((r, 1)),
                }
            }
            f
        })
        .collect()
}

fn every_abelian_group_up_to(limit: u64) -> Vec<(u64, Vec<(u32, usize)>)> {
    let mut out = Vec::new();
    for l in (2..=limit).filter(|&l| is_prime(l)) {
        let mut k = 1;
        while l.pow(k) <= limit {
            for f in exponent_types(k) {
                out.push((l, f));
            }
            k += 1;
        }
    }
    out
}

#[test]
fn certificates_for_every_group_up_to_729() {
    let groups = every_abelian_group_up_to(729);
    // 128 primes below 729 contribute Z/l; the rest are small l
    assert!(groups.len() > 180);
    for (l, f) in groups {
        let p = AbelianLGroup::new(l, f.clone(), vec![]).unwrap();
        let iso = build_isomorphism(&p).unwrap_or_else(|e| panic!("l={l} {f:?}: {e}"));
        assert!(iso.certificate.passed);
        assert_eq!(iso.certificate.algebra_dim, p.order());
    }
}

#[test]
fn dg_cohomology_for_every_group_up_to_729() {
    for (l, f) in every_abelian_group_up_to(729) {
        let p = AbelianLGroup::new(l, f.clone(), vec![]).unwrap();
        let bound = 2 * p.moduli().iter().copied().max().unwrap() as usize;
        let r = dg_cohomology_check(&p, bound).unwrap_or_else(|e| panic!("l={l} {f:?}: {e}"));
        assert!(r.higher_vanish && r.h0_matches && r.d_squared_zero);
        assert_eq!(r.rows.len(), bound + 1);
    }
}

fn actions() -> Vec<(u64, Vec<(u32, usize)>, Vec<Vec<Vec<i64>>>, usize)> {
    vec![
        // Z/3 on (Z/2)^2 permuting the nonzero elements
        (2, vec![(1, 2)], vec![vec![vec![0, 1], vec![1, 1]]], 3),
        // coordinate swap on (Z/3)^2
        (3, vec![(1, 2)], vec![vec![vec![0, 1], vec![1, 0]]], 2),
        // Singer cycle of order 8 on (Z/3)^2 (F_9^x, x^2 = x + 1)
        (3, vec![(1, 2)], vec![vec![vec![0, 1], vec![1, 1]]], 8),
        // quaternion group of order 8 in SL_2(F_3)
        (3, vec![(1, 2)], vec![vec![vec![0, -1], vec![1, 0]], vec![vec![1, 1], vec![1, -1]]], 8),
        // inversion on Z/9 and on (Z/3)^2 x Z/9, Z/3 on (Z/4)^2
        (3, vec![(2, 1)], vec![vec![vec![-1]]], 2),
        (3, vec![(1, 2), (2, 1)], vec![vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]], 2),
        (2, vec![(2, 2)], vec![vec![vec![0, -1], vec![1, -1]]], 3),
        // Aut(Z/7) and Aut(Z/5)^2 diagonal
        (7, vec![(1, 1)], vec![vec![vec![3]]], 6),
        (5, vec![(1, 2)], vec![vec![vec![2, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 3]]], 16),
        // Z/3 on the Klein factor of (Z/2)^2 x Z/8
        (2, vec![(1, 2), (3, 1)], vec![vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]], 3),
        // S_3 permuting (Z/5)^3
        (5, vec![(1, 3)], vec![vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]], vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]], 6),
    ]
}

#[test]
fn equivariant_isomorphisms() {
    for (l, f, e, order) in actions() {
        let p = AbelianLGroup::new(l, f.clone(), e).unwrap();
        assert_eq!(p.e_order(), order, "l={l} {f:?}");
        let iso = build_isomorphism(&p).unwrap();
        assert!(iso.certificate.equivariant_ok);
        // full equivariance on every monomial image: e(phi(x^a)) = phi(e . x^a)
        let alg = iso.group_algebra().clone();
        let trunc = &iso.algebra;
        for e in p.e_elements() {
            let v = p.on_v(e);
            let images: Vec<Vec<u64>> = (0..p.rank())
                .map(|j| {
                    let mut x = vec![0u64; trunc.dim()];
                    for (k, row) in v.iter().enumerate() {
                        let mut ex = vec![0u64; p.rank()];
                        ex[k] = 1;
                        let idx = trunc.index(&ex).unwrap();
                        x[idx] = (x[idx] + row[j]) % l;
                    }
                    x
                })
                .collect();
            for a in 0..trunc.dim() {
                let mut x = vec![0u64; trunc.dim()];
                x[0] = 1;
                for (j, &k) in trunc.exponents(a).iter().enumerate() {
                    for _ in 0..k {
                        x = trunc.mul(&x, &images[j]);
                    }
                }
                assert_eq!(iso.apply(&x), alg.act_on(e, iso.monomial_image(a)), "l={l} {f:?}");
            }
        }
    }
}

#[test]
fn ell_dividing_e_is_rejected() {
    // swap on (Z/2)^2 has order 2
    assert!(AbelianLGroup::new(2, vec![(1, 2)], vec![vec![vec![0, 1], vec![1, 0]]]).is_err());
    // an order-3 element on (Z/3)^2
    assert!(AbelianLGroup::new(3, vec![(1, 2)], vec![vec![vec![1, 1], vec![0, 1]]]).is_err());
}

#[test]
fn image_matrix_has_full_rank() {
    // independent of the triangularity argument: Gaussian elimination over F_l
    for (l, f) in [(2u64, vec![(1u32, 2usize)]), (2, vec![(2, 1), (1, 1)]), (3, vec![(1, 2)]), (5, vec![(1, 1)]), (3, vec![(2, 1)]), (2, vec![(1, 4)])] {
        let p = AbelianLGroup::new(l, f, vec![]).unwrap();
        let iso = build_isomorphism(&p).unwrap();
        let m: Vec<Vec<u64>> = (0..iso.algebra.dim()).map(|a| iso.monomial_image(a).to_vec()).collect();
        assert_eq!(rank(&PrimeField::new(l), &m), m.len());
    }
}

#[test]
fn nine_squared_and_klein_bound_eight() {
    let p = AbelianLGroup::new(3, vec![(2, 2)], vec![]).unwrap();
    let iso = build_isomorphism(&p).unwrap();
    assert_eq!((iso.certificate.group_order, iso.certificate.algebra_dim), (81, 81));
    let k = AbelianLGroup::new(2, vec![(1, 2)], vec![]).unwrap();
    let r = dg_cohomology_check(&k, 8).unwrap();
    for row in &r.rows {
        assert_eq!(row.cohomology[1..], [0, 0]);
    }
    assert_eq!(r.rows[2].cohomology[0], 1);
    assert_eq!(r.rows[3].cohomology[0], 0);
}

#[test]
fn guard_on_group_size() {
    assert!(AbelianLGroup::new(2, vec![(1, 12)], vec![]).is_err());
    assert!(AbelianLGroup::with_limit(2, vec![(1, 12)], vec![], 1 << 12).is_ok());
}

fn dense_strategy(size: usize, l: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..l, size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_additive(a in dense_strategy(27, 3), b in dense_strategy(27, 3)) {
        let p = AbelianLGroup::new(3, vec![(1, 1), (2, 1)], vec![]).unwrap();
        let g = GroupAlgebra::new(&p);
        let s: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % 3).collect();
        let lhs = g.pow(&s, 3);
        let rhs: Vec<u64> = g.pow(&a, 3).iter().zip(g.pow(&b, 3)).map(|(x, y)| (x + y) % 3).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn map_is_multiplicative(a in dense_strategy(16, 2), b in dense_strategy(16, 2)) {
        let p = AbelianLGroup::new(2, vec![(1, 2), (2, 1)], vec![vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]]).unwrap();
        let iso = build_isomorphism(&p).unwrap();
        let t = TruncatedAlgebra::new(&p);
        let g = iso.group_algebra();
        prop_assert_eq!(iso.apply(&t.mul(&a, &b)), g.mul(&iso.apply(&a), &iso.apply(&b)));
    }

    #[test]
    fn section_commutes_with_the_swap(c in prop::collection::vec(0u64..3, 2)) {
        let p = AbelianLGroup::new(3, vec![(1, 2)], vec![vec![vec![0, 1], vec![1, 0]]]).unwrap();
        let s = radical_section(&p).unwrap();
        let g = GroupAlgebra::new(&p);
        let img = |v: &[u64]| {
            let mut out = vec![0u64; g.size];
            for (j, &cj) in v.iter().enumerate() {
                for &(h, a) in &s.images[j] {
                    out[h] = (out[h] + a * cj) % 3;
                }
            }
            out
        };
        let swap = &p.e_elements().iter().find(|e| e[0][0] == 0).unwrap().clone();
        prop_assert_eq!(img(&[c[1], c[0]]), g.act_on(swap, &img(&c)));
    }

    #[test]
    fn leibniz_rule(s in 0u32..16, t in 0u32..16, xa in prop::collection::vec(0u32..4, 4), xb in prop::collection::vec(0u32..4, 4), k in 1u64..5) {
        let p = AbelianLGroup::new(5, vec![(1, 3), (2, 1)], vec![]).or_else(|_| AbelianLGroup::with_limit(5, vec![(1, 3), (2, 1)], vec![], 3125)).unwrap();
        let a = DgAlgebra::new(&p);
        let x = a.add(&a.basis(s, xa.clone()), &a.scale(&a.basis(t, xb.clone()), &genlie::degeneration::dg::TPoly::monomial(k, 1, 5)));
        let y = a.basis(t ^ s, xb);
        let lhs = a.d(&a.mul(&x, &y));
        // x is homogeneous only when |s| and |t| have equal parity; split it
        let parts: Vec<DgElement> = x.terms.iter().map(|(key, c)| {
            let mut e = DgElement::default();
            e.terms.insert(key.clone(), c.clone());
            e
        }).collect();
        let mut rhs = DgElement::default();
        for part in parts {
            let deg = DgAlgebra::degree(part.terms.keys().next().unwrap());
            let first = a.mul(&a.d(&part), &y);
            let mut second = a.mul(&part, &a.d(&y));
            if deg % 2 != 0 {
                second = a.scale(&second, &genlie::degeneration::dg::TPoly::monomial(4, 0, 5));
            }
            rhs = a.add(&rhs, &a.add(&first, &second));
        }
        prop_assert_eq!(lhs, rhs);
    }
}
