//! Canonical bases of the Fock space and the triangular-shape checks.
//!
//! `llt_canonical_basis` solves `bar G(mu) = G(mu)` column by column against
//! the wedge bar matrix, which covers every partition. The ladder route
//! (monomials in divided powers followed by elimination) gives the
//! `d`-regular columns independently and is compared against it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fock::{f_action, FockVector};
use super::partition::{partitions, Partition};
use super::wedge::WedgeSpace;
use crate::arith::laurent::Laurent;
use crate::error::{Error, Result};

const MODULE: &str = "fock_llt";
pub const MAX_N: usize = 12;

/// `entries[row][col]` is `d_{lambda mu}(v)`, the coefficient of `|lambda>`
/// in `G(mu)`, with `lambda = partitions[row]`, `mu = partitions[col]`.
/// Partitions run in decreasing lexicographic order, so the matrix is lower
/// unitriangular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockMatrix {
    pub d: usize,
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub entries: Vec<Vec<Laurent>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeViolation {
    pub row: Partition,
    pub col: Partition,
    pub entry: Laurent,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub passed: bool,
    pub unitriangular: bool,
    pub off_diagonal_in_v_zv: bool,
    /// Reported as an observed property.
    pub nonnegative: bool,
    pub block_refined: bool,
    pub violations: Vec<ShapeViolation>,
    /// Row `lambda` matched to the column carrying its unit diagonal entry.
    pub bijection: Vec<(Partition, Partition)>,
}

fn check_guard(n: usize, d: usize) -> Result<()> {
    check_guard_with(n, d, MAX_N)
}

fn check_guard_with(n: usize, d: usize, limit: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::bad(MODULE, "d must be at least 2"));
    }
    if n == 0 {
        return Err(Error::bad(MODULE, "n must be at least 1"));
    }
    if n > limit {
        return Err(Error::GuardExceeded {
            module: MODULE,
            predicted: n as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Columns `bar |mu>` over all partitions of `n`, with unitriangularity and
/// the involution property checked.
pub fn bar_matrix(n: usize, d: usize) -> Result<BTreeMap<Partition, BTreeMap<Partition, Laurent>>> {
    let parts = partitions(n);
    let mut space = WedgeSpace::new(d, n);
    let mut cols = BTreeMap::new();
    for p in &parts {
        let col = space.bar(p);
        for (q, c) in &col {
            let ok = if q == p { *c == Laurent::one() } else { q < p && p.dominates(q) };
            if !ok {
                return Err(Error::breach(MODULE, "bar is unitriangular for dominance", format!("bar {p} has {c} at {q}")));
            }
        }
        if col.get(p) != Some(&Laurent::one()) {
            return Err(Error::breach(MODULE, "bar has unit diagonal", format!("{p}")));
        }
        cols.insert(p.clone(), col);
    }
    // bar(bar u_k) = sum_nu bar(b_{nu k}) bar(u_nu)
    for (k, col) in &cols {
        let mut acc: BTreeMap<Partition, Laurent> = BTreeMap::new();
        for (nu, b) in col {
            for (mu, c) in &cols[nu] {
                let e = acc.entry(mu.clone()).or_default();
                *e += &(&b.bar() * c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        if acc != BTreeMap::from([(k.clone(), Laurent::one())]) {
            return Err(Error::breach(MODULE, "bar is an involution", format!("at {k}")));
        }
    }
    Ok(cols)
}

/// Every canonical-basis vector `G(mu)`, `mu` a partition of `n`.
pub fn llt_canonical_basis(n: usize, d: usize) -> Result<FockMatrix> {
    llt_canonical_basis_with_limit(n, d, MAX_N)
}

pub fn llt_canonical_basis_with_limit(n: usize, d: usize, max_n: usize) -> Result<FockMatrix> {
    check_guard_with(n, d, max_n)?;
    let parts = partitions(n);
    let bar = bar_matrix(n, d)?;
    let m = parts.len();
    let mut entries = vec![vec![Laurent::zero(); m]; m];
    for (col, lam) in parts.iter().enumerate() {
        entries[col][col] = Laurent::one();
        for row in col + 1..m {
            let mu = &parts[row];
            // c - bar(c) = sum_{nu > mu} b_{mu nu} bar(c_{nu lam})
            let mut rhs = Laurent::zero();
            for (r2, nu) in parts.iter().enumerate().take(row).skip(col) {
                let c = &entries[r2][col];
                if c.is_zero() {
                    continue;
                }
                if let Some(b) = bar[nu].get(mu) {
                    rhs += &(b * &c.bar());
                }
            }
            if rhs.coeff(0) != 0 || rhs.bar() != -&rhs {
                return Err(Error::breach(MODULE, "bar equation is solvable", format!("G{lam} at {mu}: {rhs}")));
            }
            entries[row][col] = rhs.positive_part();
        }
    }
    Ok(FockMatrix {
        d,
        n,
        partitions: parts,
        entries,
    })
}

/// `A(mu)` for `d`-regular `mu`: divided powers along the ladders.
pub fn ladder_monomial(mu: &Partition, d: usize) -> FockVector {
    let mut v = FockVector::basis(Partition::empty());
    for (l, &k) in mu.ladders(d).iter().enumerate() {
        if k > 0 {
            v = f_action((d - l % d) % d, k as u32, &v, d);
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderColumn {
    pub mu: Partition,
    pub g: FockVector,
    /// `G(mu) = sum beta_nu A(nu)`, each `beta_nu` bar-invariant.
    pub expansion: BTreeMap<Partition, Laurent>,
}

/// The `d`-regular columns by the ladder algorithm.
pub fn ladder_canonical_basis(n: usize, d: usize) -> Result<Vec<LadderColumn>> {
    check_guard(n, d)?;
    let regular: Vec<Partition> = partitions(n).into_iter().filter(|p| p.is_d_regular(d)).rev().collect();
    let mut done: Vec<LadderColumn> = Vec::new();
    for mu in regular {
        let a = ladder_monomial(&mu, d);
        if a.coeff(&mu) != Laurent::one() || a.coeffs.keys().any(|p| p > &mu) {
            return Err(Error::breach(MODULE, "A(mu) = |mu> + lower terms", format!("{mu}")));
        }
        let mut g = a;
        let mut expansion = BTreeMap::from([(mu.clone(), Laurent::one())]);
        for prev in done.iter().rev() {
            let c = g.coeff(&prev.mu);
            if c.is_zero() || c.min_degree().unwrap() > 0 {
                continue;
            }
            let gamma = Laurent::from_terms(c.terms().filter(|&(k, _)| k <= 0).flat_map(|(k, a)| {
                if k == 0 { vec![(0, a)] } else { vec![(k, a), (-k, a)] }
            }));
            g.add_scaled(&prev.g, &-&gamma);
            for (nu, b) in &prev.expansion {
                let e = expansion.entry(nu.clone()).or_default();
                *e -= &(&gamma * b);
            }
        }
        expansion.retain(|_, c| !c.is_zero());
        for (p, c) in &g.coeffs {
            if p != &mu && !c.in_positive_part() {
                return Err(Error::breach(MODULE, "ladder elimination reaches vZ[v]", format!("G{mu} at {p}: {c}")));
            }
        }
        done.push(LadderColumn { mu, g, expansion });
    }
    Ok(done)
}

impl FockMatrix {
    pub fn column(&self, mu: &Partition) -> Option<FockVector> {
        let c = self.partitions.iter().position(|p| p == mu)?;
        let mut v = FockVector::zero();
        for (r, p) in self.partitions.iter().enumerate() {
            v.add_term(p, &self.entries[r][c]);
        }
        Some(v)
    }

    /// `v -> 1`.
    pub fn at_one(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|c| c.eval(1).expect("small entries")).collect())
            .collect()
    }
}

/// The generic unipotent decomposition matrix: entries at `v = 1`.
pub fn generic_decomposition_matrix(n: usize, d: usize) -> Result<Vec<Vec<i64>>> {
    Ok(llt_canonical_basis(n, d)?.at_one())
}

pub fn shape_check(m: &FockMatrix) -> ShapeReport {
    let mut violations = Vec::new();
    let mut unitriangular = true;
    let mut vzv = true;
    let mut nonneg = true;
    let mut blocks = true;
    let cores: Vec<Partition> = m.partitions.iter().map(|p| p.core(m.d)).collect();
    let mut push = |r: usize, c: usize, e: &Laurent, why: &str| {
        violations.push(ShapeViolation {
            row: m.partitions[r].clone(),
            col: m.partitions[c].clone(),
            entry: e.clone(),
            reason: why.to_string(),
        })
    };
    for (r, row) in m.entries.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if r == c {
                if *e != Laurent::one() {
                    unitriangular = false;
                    push(r, c, e, "diagonal entry is not 1");
                }
                continue;
            }
            if e.is_zero() {
                continue;
            }
            if r < c {
                unitriangular = false;
                push(r, c, e, "nonzero entry above the diagonal");
            }
            if !e.in_positive_part() {
                vzv = false;
                push(r, c, e, "off-diagonal entry not in vZ[v]");
            }
            if !e.has_nonnegative_coefficients() {
                nonneg = false;
                push(r, c, e, "negative coefficient");
            }
            if cores[r] != cores[c] {
                blocks = false;
                push(r, c, e, "different d-cores");
            }
        }
    }
    let bijection = if unitriangular {
        m.partitions.iter().map(|p| (p.clone(), p.clone())).collect()
    } else {
        Vec::new()
    };
    ShapeReport {
        passed: unitriangular && vzv && nonneg && blocks,
        unitriangular,
        off_diagonal_in_v_zv: vzv,
        nonnegative: nonneg,
        block_refined: blocks,
        violations,
        bijection,
    }
}
