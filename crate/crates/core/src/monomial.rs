//! Variables, monomials, multidegrees, and the monomial order.
//!
//! Variables come in two kinds: matrix variables `x[i,j]` (row i, column j)
//! and collapse variables `t[j]`. The canonical variable order is column
//! ascending, then row ascending; the monomial order used everywhere is
//! graded reverse-lexicographic over that variable order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Which family of variables a monomial or polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    X,
    T,
}

/// A single variable: `x[row,col]` or `t[col]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    X { row: u16, col: u32 },
    T { col: u32 },
}

impl Variable {
    pub fn x(row: u16, col: u32) -> Result<Self> {
        if row == 0 || col == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(Variable::X { row, col })
    }

    pub fn t(col: u32) -> Result<Self> {
        if col == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(Variable::T { col })
    }

    pub fn kind(&self) -> VarKind {
        match self {
            Variable::X { .. } => VarKind::X,
            Variable::T { .. } => VarKind::T,
        }
    }

    pub fn col(&self) -> u32 {
        match self {
            Variable::X { col, .. } | Variable::T { col } => *col,
        }
    }

    pub fn row(&self) -> Option<u16> {
        match self {
            Variable::X { row, .. } => Some(*row),
            Variable::T { .. } => None,
        }
    }

    fn order_key(&self) -> (u32, u16) {
        (self.col(), self.row().unwrap_or(0))
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X { row, col } => write!(f, "x[{row},{col}]"),
            Variable::T { col } => write!(f, "t[{col}]"),
        }
    }
}

/// The monomial order tag recorded in reduction artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GrevLex => write!(f, "grevlex"),
        }
    }
}

/// A power product with positive exponents, sorted by the canonical
/// variable order. The empty product is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Build from (variable, exponent) pairs; zero exponents are dropped,
    /// repeats are merged, and kinds must not mix.
    pub fn from_exps(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Result<Self> {
        let mut exps: Vec<(Variable, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.binary_search_by(|(w, _)| w.cmp(&v)) {
                Ok(i) => exps[i].1 += e,
                Err(i) => exps.insert(i, (v, e)),
            }
        }
        let m = Monomial { exps };
        if m.kind_conflict() {
            return Err(Error::MixedKinds);
        }
        Ok(m)
    }

    fn kind_conflict(&self) -> bool {
        let mut kinds = self.exps.iter().map(|(v, _)| v.kind());
        match kinds.next() {
            Some(first) => kinds.any(|k| k != first),
            None => false,
        }
    }

    /// The variable kind, if any variable is present.
    pub fn kind(&self) -> Option<VarKind> {
        self.exps.first().map(|(v, _)| v.kind())
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(Variable, u32)] {
        &self.exps
    }

    pub fn exponent_of(&self, v: Variable) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn max_row(&self) -> u16 {
        self.exps
            .iter()
            .filter_map(|(v, _)| v.row())
            .max()
            .unwrap_or(0)
    }

    /// Columns appearing with positive degree, ascending.
    pub fn column_support(&self) -> Vec<u32> {
        let mut cols: Vec<u32> = self.exps.iter().map(|(v, _)| v.col()).collect();
        cols.dedup();
        cols
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        Monomial::from_exps(self.exps.iter().chain(other.exps.iter()).copied())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .all(|&(v, e)| other.exponent_of(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let q = e - self.exponent_of(v);
                (q > 0).then_some((v, q))
            })
            .collect();
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        let mut pairs: Vec<(Variable, u32)> = self.exps.clone();
        for &(v, e) in &other.exps {
            match pairs.binary_search_by(|(w, _)| w.cmp(&v)) {
                Ok(i) => pairs[i].1 = pairs[i].1.max(e),
                Err(i) => pairs.insert(i, (v, e)),
            }
        }
        Monomial::from_exps(pairs)
    }

    /// Per-column total degrees; x-monomials only.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        if self.kind() == Some(VarKind::T) {
            return Err(Error::ExpectedXKind);
        }
        let mut degrees: Vec<u32> = Vec::new();
        for &(v, e) in &self.exps {
            let j = v.col() as usize;
            if degrees.len() < j {
                degrees.resize(j, 0);
            }
            degrees[j - 1] += e;
        }
        Ok(MultiDegree::new(degrees))
    }

    fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse-lex tie break: walk from the largest variable down; at the
        // first difference, the monomial with the larger exponent is smaller.
        let mut a = self.exps.iter().rev().peekable();
        let mut b = other.exps.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Compare two monomials under the given order; the kinds must agree.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    match (a.kind(), b.kind()) {
        (Some(ka), Some(kb)) if ka != kb => return Err(Error::MixedKinds),
        _ => {}
    }
    let MonomialOrder::GrevLex = order;
    Ok(a.grevlex_cmp(b))
}

/// A finite-support vector of per-column total degrees. Trailing zeros are
/// trimmed; the empty vector is the multidegree of constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiDegree {
    degrees: Vec<u32>,
}

impl MultiDegree {
    pub fn new(mut degrees: Vec<u32>) -> Self {
        while degrees.last() == Some(&0) {
            degrees.pop();
        }
        MultiDegree { degrees }
    }

    pub fn zero() -> Self {
        MultiDegree::default()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.degrees
    }

    /// Degree of the given 1-based column.
    pub fn degree(&self, col: u32) -> u32 {
        self.degrees.get(col as usize - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// Columns with positive degree, ascending 1-based.
    pub fn support(&self) -> Vec<u32> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        let len = self.degrees.len().max(other.degrees.len());
        let degrees = (0..len)
            .map(|i| {
                self.degrees.get(i).copied().unwrap_or(0) + other.degrees.get(i).copied().unwrap_or(0)
            })
            .collect();
        MultiDegree::new(degrees)
    }

    /// Componentwise difference, `None` unless `other <= self` everywhere.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if !other.leq(self) {
            return None;
        }
        let degrees = (0..self.degrees.len())
            .map(|i| self.degrees[i] - other.degrees.get(i).copied().unwrap_or(0))
            .collect();
        Some(MultiDegree::new(degrees))
    }

    /// Componentwise comparison.
    pub fn leq(&self, other: &MultiDegree) -> bool {
        self.degrees
            .iter()
            .enumerate()
            .all(|(i, d)| *d <= other.degrees.get(i).copied().unwrap_or(0))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
