//! Ring homomorphisms between the ambient rings: row truncation,
//! coefficient reduction and its canonical lift, column collapse, and the
//! column-doubling endomorphisms.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variable};
use crate::poly::Polynomial;
use crate::ring::{Coeff, CoefficientRing, Prime};

/// Kill every monomial containing a row index above `target`; the image
/// lives at row bound `target`. A surjective ring homomorphism.
pub fn row_truncate(f: &Polynomial, target: u16) -> Result<Polynomial> {
    if target == 0 || target > f.rows() {
        return Err(Error::TruncationOutOfRange {
            target,
            bound: f.rows(),
        });
    }
    f.map_monomials(f.ring(), target, |m| {
        Ok((m.max_row() <= target).then(|| m.clone()))
    })
}

/// Reduce integer coefficients modulo `p`.
pub fn reduce_mod_p(f: &Polynomial, p: u32) -> Result<Polynomial> {
    if f.ring() != CoefficientRing::Integers {
        return Err(Error::WrongRing {
            expected: "ZZ",
            found: f.ring(),
        });
    }
    let target = CoefficientRing::PrimeField(Prime::new(p as u64)?);
    let terms = f.terms().map(|(m, c)| {
        let Coeff::Int(n) = c else { unreachable!() };
        (m.clone(), target.from_bigint(n.clone()))
    });
    Polynomial::from_terms(target, f.rows(), terms.collect::<Vec<_>>())
}

/// Lift prime-field coefficients to their representatives in `0..p`.
/// The unique section of [`reduce_mod_p`] with nonnegative representatives;
/// monomials are untouched, so symmetry is preserved.
pub fn lift_canonical(f: &Polynomial) -> Result<Polynomial> {
    let CoefficientRing::PrimeField(_) = f.ring() else {
        return Err(Error::WrongRing {
            expected: "GF(p)",
            found: f.ring(),
        });
    };
    let terms = f.terms().map(|(m, c)| {
        let Coeff::Mod(r) = c else { unreachable!() };
        (m.clone(), Coeff::Int(BigInt::from(*r)))
    });
    Polynomial::from_terms(
        CoefficientRing::Integers,
        f.rows(),
        terms.collect::<Vec<_>>(),
    )
}

/// The column collapse `x[i,j] -> t[j]` over the integers. Constant on
/// row orbits, which is what makes the p-adic valuation argument work;
/// other coefficient rings are rejected to keep that argument exact.
pub fn collapse_columns(f: &Polynomial) -> Result<Polynomial> {
    if f.ring() != CoefficientRing::Integers {
        return Err(Error::WrongRing {
            expected: "ZZ",
            found: f.ring(),
        });
    }
    if !f.is_x_kind() {
        return Err(Error::ExpectedXKind);
    }
    f.map_monomials(f.ring(), f.rows(), |m| {
        let image = Monomial::from_exps(
            m.exponents()
                .iter()
                .map(|&(v, e)| (Variable::T { col: v.col() }, e)),
        )?;
        Ok(Some(image))
    })
}

/// The endomorphism substituting `x[i,l] -> x[i,k]*x[i,l]` in every row.
pub fn psi_kl(f: &Polynomial, k: u32, l: u32) -> Result<Polynomial> {
    if k == l {
        return Err(Error::EqualColumns(k));
    }
    if k == 0 || l == 0 {
        return Err(Error::ZeroIndex);
    }
    if !f.is_x_kind() {
        return Err(Error::ExpectedXKind);
    }
    f.map_monomials(f.ring(), f.rows(), |m| {
        let mut pairs: Vec<(Variable, u32)> = Vec::with_capacity(m.exponents().len() * 2);
        for &(v, e) in m.exponents() {
            pairs.push((v, e));
            if let Variable::X { row, col } = v {
                if col == l {
                    pairs.push((Variable::X { row, col: k }, e));
                }
            }
        }
        Ok(Some(Monomial::from_exps(pairs)?))
    })
}
