//! Row-permutation and column-relabeling actions, orbits, and the
//! symmetrization operator.
//!
//! Rows are acted on by S_n (full permutations of `1..=n`). Columns are
//! acted on by finitely supported injective relabelings; identity off the
//! listed support. Any such injection extends to a permutation of the
//! column indices, so ideal-membership questions are unaffected by the
//! restriction to finite support.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variable};
use crate::poly::Polynomial;
use crate::ring::CoefficientRing;

/// A permutation of the rows `1..=n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowPermutation {
    images: Vec<u16>,
}

impl RowPermutation {
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let n = images.len() as u16;
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v == 0 || v > n || seen[v as usize - 1] {
                return Err(Error::NotAPermutation(images.clone(), n));
            }
            seen[v as usize - 1] = true;
        }
        Ok(RowPermutation { images })
    }

    pub fn identity(n: u16) -> Self {
        RowPermutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition swapping rows `a` and `b` in S_n.
    pub fn transposition(n: u16, a: u16, b: u16) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::NotAPermutation(vec![a, b], n));
        }
        let mut images: Vec<u16> = (1..=n).collect();
        images.swap(a as usize - 1, b as usize - 1);
        Ok(RowPermutation { images })
    }

    pub fn degree(&self) -> u16 {
        self.images.len() as u16
    }

    pub fn image(&self, row: u16) -> u16 {
        self.images[row as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// All n! permutations of `1..=n`, in a fixed deterministic order.
    pub fn all(n: u16) -> impl Iterator<Item = RowPermutation> {
        (1..=n)
            .permutations(n as usize)
            .map(|images| RowPermutation { images })
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Monomial> {
        let pairs: Result<Vec<_>> = m
            .exponents()
            .iter()
            .map(|&(v, e)| match v {
                Variable::X { row, col } => Ok((Variable::X { row: self.image(row), col }, e)),
                Variable::T { .. } => Err(Error::ExpectedXKind),
            })
            .collect();
        Monomial::from_exps(pairs?)
    }

    /// Apply the row substitution `x[i,j] -> x[perm(i),j]`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.degree() != f.rows() {
            return Err(Error::PermutationSizeMismatch {
                perm: self.images.len(),
                bound: f.rows(),
            });
        }
        if !f.is_x_kind() {
            return Err(Error::ExpectedXKind);
        }
        f.map_monomials(f.ring(), f.rows(), |m| self.apply_monomial(m).map(Some))
    }

    /// Parse the one-line form `[2,1,3]`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "expected a permutation like [2,1,3]".into(),
            })?;
        let mut images = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let v: u16 = part.trim().parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("bad permutation entry '{part}'"),
                })?;
                images.push(v);
            }
        }
        RowPermutation::new(images)
    }
}

impl fmt::Display for RowPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().map(|v| v.to_string()).join(","))
    }
}

/// A finitely supported injective column relabeling; identity off the
/// listed support. The identity map is the empty association.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColumnMap {
    pairs: Vec<(u32, u32)>,
}

impl ColumnMap {
    /// Build from source/target pairs. Fixed points are dropped; duplicate
    /// sources and duplicate targets are rejected.
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|(src, dst)| src != dst)
            .collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NonInjectiveColumnMap(w[0].0, w[1].0, w[1].1));
            }
        }
        for &(src, dst) in &pairs {
            if src == 0 || dst == 0 {
                return Err(Error::ZeroIndex);
            }
            if let Some(&(other, _)) = pairs.iter().find(|&&(s, d)| d == dst && s != src) {
                return Err(Error::NonInjectiveColumnMap(src.min(other), src.max(other), dst));
            }
        }
        Ok(ColumnMap { pairs })
    }

    pub fn identity() -> Self {
        ColumnMap::default()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The image of a column (identity off the support).
    pub fn map(&self, col: u32) -> u32 {
        self.pairs
            .binary_search_by_key(&col, |(src, _)| *src)
            .map(|i| self.pairs[i].1)
            .unwrap_or(col)
    }

    pub fn map_cols(&self, cols: &[u32]) -> Vec<u32> {
        cols.iter().map(|&c| self.map(c)).collect()
    }

    /// `self` after `inner` on the union of supports.
    pub fn compose(&self, inner: &ColumnMap) -> Result<ColumnMap> {
        let mut support: BTreeSet<u32> = inner.pairs.iter().map(|(s, _)| *s).collect();
        support.extend(self.pairs.iter().map(|(s, _)| *s));
        ColumnMap::new(support.into_iter().map(|j| (j, self.map(inner.map(j)))))
    }

    fn checked_images(&self, cols: &[u32]) -> Result<Vec<u32>> {
        let images = self.map_cols(cols);
        let mut seen: std::collections::BTreeMap<u32, u32> = Default::default();
        for (&col, &img) in cols.iter().zip(&images) {
            if let Some(&prev) = seen.get(&img) {
                return Err(Error::NonInjectiveColumnMap(prev, col, img));
            }
            seen.insert(img, col);
        }
        Ok(images)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Monomial> {
        Monomial::from_exps(m.exponents().iter().map(|&(v, e)| {
            let moved = match v {
                Variable::X { row, col } => Variable::X { row, col: self.map(col) },
                Variable::T { col } => Variable::T { col: self.map(col) },
            };
            (moved, e)
        }))
    }

    /// Apply the column substitution `x[i,j] -> x[i,map(j)]` (or
    /// `t[j] -> t[map(j)]`). The induced map must be injective on the
    /// columns that actually occur in `f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.checked_images(&f.column_support())?;
        f.map_monomials(f.ring(), f.rows(), |m| self.apply_monomial(m).map(Some))
    }

    /// Parse the textual form `{1->3,2->1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "expected a column map like {1->3,2->1}".into(),
            })?;
        let mut pairs = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let (src, dst) = part.split_once("->").ok_or_else(|| Error::Parse {
                    position: 0,
                    message: format!("bad column map entry '{part}'"),
                })?;
                let parse = |s: &str| -> Result<u32> {
                    s.trim().parse().map_err(|_| Error::Parse {
                        position: 0,
                        message: format!("bad column index '{s}'"),
                    })
                };
                pairs.push((parse(src)?, parse(dst)?));
            }
        }
        ColumnMap::new(pairs)
    }
}

impl fmt::Display for ColumnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.pairs
                .iter()
                .map(|(s, d)| format!("{s}->{d}"))
                .join(",")
        )
    }
}

/// True when every adjacent row transposition fixes `f`; equivalent to
/// invariance under all of S_n. Values without x-variables are fixed by
/// the row action and count as symmetric.
pub fn is_symmetric(f: &Polynomial) -> bool {
    if !f.is_x_kind() {
        return true;
    }
    let n = f.rows();
    (1..n).all(|i| {
        let tau = RowPermutation::transposition(n, i, i + 1).expect("indices in range");
        tau.apply(f).map(|g| g == *f).unwrap_or(false)
    })
}

/// The set `{tau(m) : tau in S_n}`; its size divides n!.
pub fn row_orbit(m: &Monomial, n: u16) -> Result<BTreeSet<Monomial>> {
    if m.kind() == Some(crate::monomial::VarKind::T) {
        return Err(Error::ExpectedXKind);
    }
    if m.max_row() > n {
        return Err(Error::RowOutOfBounds {
            row: m.max_row(),
            bound: n,
        });
    }
    let mut orbit = BTreeSet::new();
    for tau in RowPermutation::all(n) {
        orbit.insert(tau.apply_monomial(m)?);
    }
    Ok(orbit)
}

/// Sum of the row orbit of `m` with coefficient 1; always symmetric.
pub fn orbit_sum(ring: CoefficientRing, m: &Monomial, n: u16) -> Result<Polynomial> {
    let orbit = row_orbit(m, n)?;
    Polynomial::from_terms(ring, n, orbit.into_iter().map(|m| (m, ring.one())))
}

/// The averaging operator `(1/n!) sum_tau tau(f)`, a retraction onto the
/// symmetric subring. Requires n! invertible: rationals, or a prime field
/// with p > n.
pub fn symmetrize(f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let n = f.rows();
    match ring {
        CoefficientRing::Integers => return Err(Error::NotAField(ring)),
        CoefficientRing::PrimeField(p) if p.get() <= n as u32 => {
            return Err(Error::CharacteristicObstruction { p: p.get(), n });
        }
        _ => {}
    }
    let mut sum = Polynomial::zero(ring, n)?;
    for tau in RowPermutation::all(n) {
        sum = sum.try_add(&tau.apply(f)?)?;
    }
    let factorial: i64 = (1..=n as i64).product();
    let inv = ring
        .inv(&ring.from_i64(factorial))?
        .expect("n! is nonzero in the ring");
    Ok(sum.scale(&inv))
}
