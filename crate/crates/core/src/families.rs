//! Generator families and component enumeration.
//!
//! Builds the row-product sums `h_k`, the column-minor determinants and
//! their cycle products, row products of a single-row template, orbit-sum
//! bases for multidegree components of the symmetric subring, and the
//! determinant-product spanning sets for components of the two-row minor
//! subalgebra.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::actions::row_orbit;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MultiDegree, Variable};
use crate::poly::Polynomial;
use crate::ring::CoefficientRing;

/// `h_k` at row bound `n`: the sum over rows of the product of the first
/// `k` columns. Symmetric, with multidegree (1,...,1).
pub fn h_family(ring: CoefficientRing, n: u16, k: u32) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut terms = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let m = Monomial::from_exps((1..=k).map(|j| (Variable::X { row: i, col: j }, 1)))?;
        terms.push((m, ring.one()));
    }
    Polynomial::from_terms(ring, n, terms)
}

/// The n x n determinant on the given columns of the variable matrix,
/// expanded as a signed sum over permutations. Alternating in its
/// arguments; repeated columns give zero.
pub fn determinant_gen(ring: CoefficientRing, n: u16, cols: &[u32]) -> Result<Polynomial> {
    if cols.len() != n as usize {
        return Err(Error::WrongColumnCount {
            expected: n,
            got: cols.len(),
        });
    }
    if cols.iter().any(|&c| c == 0) {
        return Err(Error::ZeroIndex);
    }
    let mut det = Polynomial::zero(ring, n)?;
    for perm in (0..n as usize).permutations(n as usize) {
        let m = Monomial::from_exps(
            perm.iter()
                .enumerate()
                .map(|(i, &j)| (Variable::X { row: i as u16 + 1, col: cols[j] }, 1)),
        )?;
        let sign = if permutation_parity(&perm) { -1 } else { 1 };
        let term = Polynomial::from_terms(ring, n, [(m, ring.from_i64(sign))])?;
        det = det.try_add(&term)?;
    }
    Ok(det)
}

/// True for odd permutations of `0..len`.
fn permutation_parity(perm: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The cycle product `d_{12} d_{23} ... d_{(k-1)k} d_{1k}` in two rows.
/// Every column index appears in exactly two factors, so each term has
/// multidegree (2,...,2).
pub fn cycle_product(ring: CoefficientRing, k: u32) -> Result<Polynomial> {
    if k < 3 {
        return Err(Error::CycleTooShort(k));
    }
    let mut product = Polynomial::one(ring, 2)?;
    for a in 1..k {
        product = product.try_mul(&determinant_gen(ring, 2, &[a, a + 1])?)?;
    }
    product.try_mul(&determinant_gen(ring, 2, &[1, k])?)
}

/// The product over rows `i = 1..=n` of the template `f` with
/// `t[j] -> x[i,j]`. Row permutations permute the factors, so the result
/// is always symmetric.
pub fn tilde_product(n: u16, f: &Polynomial) -> Result<Polynomial> {
    if !f.is_t_kind() {
        return Err(Error::ExpectedTKind);
    }
    let ring = f.ring();
    let mut product = Polynomial::one(ring, n)?;
    for i in 1..=n {
        let factor = f.map_monomials(ring, n, |m| {
            let image = Monomial::from_exps(
                m.exponents()
                    .iter()
                    .map(|&(v, e)| (Variable::X { row: i, col: v.col() }, e)),
            )?;
            Ok(Some(image))
        })?;
        product = product.try_mul(&factor)?;
    }
    Ok(product)
}

/// All length-`n` vectors of nonnegative integers summing to `total`.
fn compositions(total: u32, n: u16) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every x-monomial with row indices at most `n` and the given multidegree.
pub fn monomials_of_multidegree(n: u16, degree: &MultiDegree) -> Vec<Monomial> {
    let columns: Vec<(u32, u32)> = degree
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > 0)
        .map(|(i, d)| (i as u32 + 1, *d))
        .collect();
    let per_column: Vec<Vec<Vec<u32>>> = columns
        .iter()
        .map(|&(_, d)| compositions(d, n))
        .collect();
    per_column
        .iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut pairs = Vec::new();
            for ((col, _), rows) in columns.iter().zip(choice) {
                for (i, &e) in rows.iter().enumerate() {
                    if e > 0 {
                        pairs.push((Variable::X { row: i as u16 + 1, col: *col }, e));
                    }
                }
            }
            Monomial::from_exps(pairs).expect("x-variables only")
        })
        .collect()
}

/// Orbit-sums of one representative per row orbit of the monomials of
/// multidegree `degree`: a basis of that component of the symmetric
/// subring, with pairwise distinct leading monomials. Sorted by leading
/// monomial, descending.
pub fn symmetric_component_basis(
    ring: CoefficientRing,
    n: u16,
    degree: &MultiDegree,
) -> Result<Vec<Polynomial>> {
    let mut representatives: BTreeSet<Monomial> = BTreeSet::new();
    for m in monomials_of_multidegree(n, degree) {
        let rep = row_orbit(&m, n)?
            .into_iter()
            .next_back()
            .expect("orbit is nonempty");
        representatives.insert(rep);
    }
    let mut basis = Vec::with_capacity(representatives.len());
    for rep in representatives.into_iter().rev() {
        basis.push(crate::actions::orbit_sum(ring, &rep, n)?);
    }
    Ok(basis)
}

/// All distinct products of two-row determinants `d_{ab}` (a < b) whose
/// multidegrees sum to `degree`: a spanning set for that component of the
/// minor subalgebra. Empty when no pair multiset fits (in particular for
/// odd total degree or a single supported column).
pub fn l2_component_span(ring: CoefficientRing, degree: &MultiDegree) -> Result<Vec<Polynomial>> {
    let mut remaining: Vec<(u32, u32)> = degree
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > 0)
        .map(|(i, d)| (i as u32 + 1, *d))
        .collect();
    if degree.total() % 2 != 0 {
        return Ok(Vec::new());
    }
    let mut multisets = Vec::new();
    enumerate_pair_multisets(&mut remaining, None, &mut Vec::new(), &mut multisets);

    let mut seen = BTreeSet::new();
    let mut span = Vec::new();
    for pairs in multisets {
        let mut product = Polynomial::one(ring, 2)?;
        for (a, b) in pairs {
            product = product.try_mul(&determinant_gen(ring, 2, &[a, b])?)?;
        }
        if product.is_zero() {
            continue;
        }
        if seen.insert(product.to_string()) {
            span.push(product);
        }
    }
    Ok(span)
}

/// Enumerate multisets of column pairs consuming `remaining`, kept in
/// nondecreasing lexicographic order so each multiset appears once.
fn enumerate_pair_multisets(
    remaining: &mut Vec<(u32, u32)>,
    last: Option<(u32, u32)>,
    current: &mut Vec<(u32, u32)>,
    out: &mut Vec<Vec<(u32, u32)>>,
) {
    let Some(first) = remaining.iter().position(|&(_, d)| d > 0) else {
        out.push(current.clone());
        return;
    };
    let a = remaining[first].0;
    for i in first + 1..remaining.len() {
        let (b, d) = remaining[i];
        if d == 0 {
            continue;
        }
        if let Some(prev) = last {
            if (a, b) < prev {
                continue;
            }
        }
        remaining[first].1 -= 1;
        remaining[i].1 -= 1;
        current.push((a, b));
        enumerate_pair_multisets(remaining, Some((a, b)), current, out);
        current.pop();
        remaining[first].1 += 1;
        remaining[i].1 += 1;
    }
}
