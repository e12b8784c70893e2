mod common;

use genlie::generic_order::{generic_order, generic_order_gl};
use genlie::root_datum::RootDatum;
use genlie::weyl::WeylGroup;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use common::groups::{sl2_order, sl3_order, sp4_order, su3_order};

fn order_of(label: &str, q: u64) -> BigInt {
    generic_order(&RootDatum::build(label).unwrap())
        .unwrap()
        .evaluate(q)
        .unwrap()
}

#[test]
fn sl2_and_sl3_match_matrix_counts() {
    for q in [2u64, 3, 4, 5, 7] {
        assert_eq!(order_of("A1", q), BigInt::from(sl2_order(q as usize)), "SL2({q})");
        assert_eq!(order_of("A2", q), BigInt::from(sl3_order(q as usize)), "SL3({q})");
    }
}

#[test]
fn symplectic_and_unitary_match_frame_counts() {
    for q in [2u64, 3, 4, 5, 7] {
        let qs = q as usize;
        assert_eq!(order_of("C2", q), BigInt::from(sp4_order(qs, true)), "Sp4({q})");
        assert_eq!(order_of("B2", q), BigInt::from(sp4_order(qs, true)), "Spin5({q})");
        assert_eq!(order_of("2A2", q), BigInt::from(su3_order(qs, true)), "SU3({q})");
    }
}

#[test]
fn pinned_first_column_agrees_with_full_enumeration() {
    for q in [2usize, 3] {
        assert_eq!(sp4_order(q, true), sp4_order(q, false));
        assert_eq!(su3_order(q, true), su3_order(q, false));
    }
}

/// Bruhat decomposition: `|G^F| = q^N |T^F| sum_{w in W^phi} q^{l(w)}`, with
/// `|T^F| = prod over phi-cycles of (q^c - 1)`.
fn bruhat_order(w: &WeylGroup, q: i64) -> BigInt {
    let d = &w.datum;
    let qb = BigInt::from(q);
    let mut torus = BigInt::one();
    for orbit in d.phi_orbits() {
        torus *= num_traits::pow(qb.clone(), orbit.len()) - 1;
    }
    let mut bruhat = BigInt::zero();
    for i in 0..w.order() {
        if w.phi(i) == i {
            bruhat += num_traits::pow(qb.clone(), w.element(i).length);
        }
    }
    num_traits::pow(qb, d.n_pos) * torus * bruhat
}

#[test]
fn eps_tables_agree_with_bruhat_counts() {
    let labels = [
        "A1", "A2", "A3", "A4", "B2", "B3", "C3", "B4", "C4", "D4", "D5", "F4", "G2", "E6", "2A2",
        "2A3", "2A4", "2A5", "2D4", "2D5", "3D4", "2E6", "A1xA1", "2(A1xA1)", "2(A2xA2)", "A1xG2",
    ];
    for l in labels {
        let datum = RootDatum::build(l).unwrap();
        let w = WeylGroup::generate(&datum).unwrap();
        let f = generic_order(&datum).unwrap();
        for q in [2i64, 3, 4, 5, 7, 11] {
            let expect = bruhat_order(&w, q);
            assert_eq!(f.evaluate_unchecked(&BigInt::from(q)), expect, "{l} at q={q}");
            assert_eq!(f.evaluate_from_pairs(&BigInt::from(q)), expect, "{l} pairs at q={q}");
        }
    }
}

#[test]
fn ell_part_matches_integer_valuation() {
    for l in ["A1", "A2", "2A2", "C2", "G2", "3D4", "2A3"] {
        let f = generic_order(&RootDatum::build(l).unwrap()).unwrap();
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for ell in [5u64, 7, 11, 13] {
                if q % ell == 0 {
                    continue;
                }
                let (d, nu) = f.ell_part(q, ell).unwrap();
                let mut n = f.evaluate(q).unwrap();
                let mut v = 0;
                while (&n % BigInt::from(ell)).is_zero() {
                    n /= BigInt::from(ell);
                    v += 1;
                }
                assert_eq!(nu, v, "{l} q={q} ell={ell}");
                assert_eq!(q.pow(d as u32) % ell, 1);
            }
        }
    }
}

#[test]
fn gl_mode_orders() {
    // |GL_n(q)| = prod_{i<n} (q^n - q^i)
    for n in 1..=5usize {
        let f = generic_order_gl(n, false).unwrap();
        for q in [2u64, 3, 5] {
            let qb = BigInt::from(q);
            let qn = num_traits::pow(qb.clone(), n);
            let expect = (0..n).fold(BigInt::one(), |acc, i| acc * (&qn - num_traits::pow(qb.clone(), i)));
            assert_eq!(f.evaluate(q).unwrap(), expect);
        }
        assert_eq!(f.a(3), (n / 3) as u32);
    }
    // |U_3(2)| = 648
    assert_eq!(generic_order_gl(3, true).unwrap().evaluate(2).unwrap(), BigInt::from(648));
}
