//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial carries its coefficient ring and a row bound `n`; every
//! x-variable it mentions must have row index at most `n`. Terms are kept
//! normalized: no zero coefficients, prime-field values in `0..p`,
//! rationals reduced. Term storage is ordered by grevlex, so the leading
//! term is the last map entry.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MultiDegree, VarKind, Variable};
use crate::ring::{Coeff, CoefficientRing};

/// Largest supported row bound; row-orbit machinery enumerates S_n.
pub const MAX_ROWS: u16 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: CoefficientRing,
    rows: u16,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: CoefficientRing, rows: u16) -> Result<Self> {
        if rows == 0 || rows > MAX_ROWS {
            return Err(Error::RowBoundOutOfRange(rows));
        }
        Ok(Polynomial {
            ring,
            rows,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(ring: CoefficientRing, rows: u16) -> Result<Self> {
        Self::constant(ring, rows, ring.one())
    }

    pub fn constant(ring: CoefficientRing, rows: u16, value: Coeff) -> Result<Self> {
        let mut f = Self::zero(ring, rows)?;
        f.accumulate(Monomial::one(), value)?;
        Ok(f)
    }

    pub fn constant_i64(ring: CoefficientRing, rows: u16, value: i64) -> Result<Self> {
        Self::constant(ring, rows, ring.from_i64(value))
    }

    /// The polynomial `x[row,col]`.
    pub fn x_var(ring: CoefficientRing, rows: u16, row: u16, col: u32) -> Result<Self> {
        let mut f = Self::zero(ring, rows)?;
        f.accumulate(Monomial::var(Variable::x(row, col)?), ring.one())?;
        Ok(f)
    }

    /// The polynomial `t[col]`.
    pub fn t_var(ring: CoefficientRing, rows: u16, col: u32) -> Result<Self> {
        let mut f = Self::zero(ring, rows)?;
        f.accumulate(Monomial::var(Variable::t(col)?), ring.one())?;
        Ok(f)
    }

    pub fn from_terms(
        ring: CoefficientRing,
        rows: u16,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Result<Self> {
        let mut f = Self::zero(ring, rows)?;
        for (m, c) in terms {
            f.accumulate(m, c)?;
        }
        Ok(f)
    }

    /// Add `c * m` into the term map, keeping every invariant.
    fn accumulate(&mut self, m: Monomial, c: Coeff) -> Result<()> {
        if self.ring.is_zero(&c) {
            return Ok(());
        }
        let row = m.max_row();
        if row > self.rows {
            return Err(Error::RowOutOfBounds {
                row,
                bound: self.rows,
            });
        }
        if let (Some(kind), Some(existing)) = (m.kind(), self.kind()) {
            if kind != existing {
                return Err(Error::MixedKinds);
            }
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> u16 {
        self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// The variable kind of the polynomial, `None` for constants.
    pub fn kind(&self) -> Option<VarKind> {
        self.terms.keys().find_map(|m| m.kind())
    }

    pub fn is_x_kind(&self) -> bool {
        self.kind() != Some(VarKind::T)
    }

    pub fn is_t_kind(&self) -> bool {
        self.kind() != Some(VarKind::X)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Columns appearing in any term, ascending.
    pub fn column_support(&self) -> Vec<u32> {
        let mut cols: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.column_support())
            .collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }

    /// The shared multidegree when every monomial has the same one.
    /// `Ok(None)` means the polynomial is not multihomogeneous.
    pub fn uniform_multidegree(&self) -> Result<Option<MultiDegree>> {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return Ok(Some(MultiDegree::zero())),
            Some(m) => m.multidegree()?,
        };
        for m in iter {
            if m.multidegree()? != first {
                return Ok(None);
            }
        }
        Ok(Some(first))
    }

    /// Split into multidegree-homogeneous components, keyed by multidegree.
    /// X-kind polynomials only.
    pub fn multidegree_components(&self) -> Result<BTreeMap<MultiDegree, Polynomial>> {
        let mut components: BTreeMap<MultiDegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.multidegree()?;
            components
                .entry(d)
                .or_insert(Polynomial::zero(self.ring, self.rows)?)
                .accumulate(m.clone(), c.clone())?;
        }
        Ok(components)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.rows != other.rows {
            return Err(Error::RowBoundMismatch(self.rows, other.rows));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), self.ring.neg(c))?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        Polynomial {
            ring: self.ring,
            rows: self.rows,
            terms,
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.ring, self.rows)?;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate(ma.mul(mb)?, self.ring.mul(ca, cb))?;
            }
        }
        Ok(out)
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ring, self.rows)?;
        for (mf, cf) in &self.terms {
            out.accumulate(mf.mul(m)?, self.ring.mul(cf, c))?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, cf) in &self.terms {
            let prod = self.ring.mul(cf, c);
            if !self.ring.is_zero(&prod) {
                terms.insert(m.clone(), prod);
            }
        }
        Polynomial {
            ring: self.ring,
            rows: self.rows,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(self.ring, self.rows)?;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Rebuild each monomial through `map`, accumulating into a fresh
    /// polynomial. Used by the substitution homomorphisms.
    pub fn map_monomials(
        &self,
        ring: CoefficientRing,
        rows: u16,
        mut map: impl FnMut(&Monomial) -> Result<Option<Monomial>>,
    ) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring, rows)?;
        for (m, c) in &self.terms {
            if let Some(image) = map(m)? {
                out.accumulate(image, c.clone())?;
            }
        }
        Ok(out)
    }

    /// Largest e such that p^e divides every coefficient; `None` (infinity)
    /// for the zero polynomial. Integer coefficients only.
    pub fn valuation_p(&self, p: u32) -> Result<Option<u32>> {
        if self.ring != CoefficientRing::Integers {
            return Err(Error::WrongRing {
                expected: "ZZ",
                found: self.ring,
            });
        }
        let p = BigInt::from(p);
        let mut min: Option<u32> = None;
        for c in self.terms.values() {
            let Coeff::Int(n) = c else { unreachable!() };
            let mut n = n.clone();
            let mut e = 0u32;
            while min.map_or(true, |m| e < m) && (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            min = Some(min.map_or(e, |m| m.min(e)));
            if min == Some(0) {
                break;
            }
        }
        Ok(min)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = self.ring.is_negative(c);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mag = self.ring.abs(c);
            if m.is_constant() {
                write!(f, "{}", self.ring.format(&mag))?;
            } else if self.ring.is_one(&mag) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", self.ring.format(&mag))?;
            }
        }
        Ok(())
    }
}
