//! Shared generators for the randomized suites. Everything is seeded, so
//! every run sees the same instances.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symideal_core::actions::orbit_sum;
use symideal_core::families::{monomials_of_multidegree, symmetric_component_basis};
use symideal_core::monomial::{Monomial, MultiDegree, Variable};
use symideal_core::poly::Polynomial;
use symideal_core::ring::{Coeff, CoefficientRing};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff(rng: &mut ChaCha8Rng, ring: CoefficientRing) -> Coeff {
    match ring {
        CoefficientRing::Integers => ring.from_i64(rng.random_range(-6..=6)),
        CoefficientRing::Rationals => {
            let numer = rng.random_range(-6..=6);
            let denom = rng.random_range(1..=4);
            ring.from_ratio(numer.into(), denom.into()).unwrap()
        }
        CoefficientRing::PrimeField(p) => ring.from_i64(rng.random_range(0..p.get() as i64)),
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, rows: u16, width: u32, max_degree: u32) -> Monomial {
    let degree = rng.random_range(0..=max_degree);
    let vars = (0..degree).map(|_| {
        let row = rng.random_range(1..=rows);
        let col = rng.random_range(1..=width);
        (Variable::X { row, col }, 1)
    });
    Monomial::from_exps(vars).unwrap()
}

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    rows: u16,
    width: u32,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let count = rng.random_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            (
                random_monomial(rng, rows, width, max_degree),
                random_coeff(rng, ring),
            )
        })
        .collect();
    Polynomial::from_terms(ring, rows, terms).unwrap()
}

pub fn random_t_poly(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    rows: u16,
    width: u32,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let count = rng.random_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let degree = rng.random_range(0..=max_degree);
            let m = Monomial::from_exps(
                (0..degree).map(|_| (Variable::T { col: rng.random_range(1..=width) }, 1)),
            )
            .unwrap();
            (m, random_coeff(rng, ring))
        })
        .collect();
    Polynomial::from_terms(ring, rows, terms).unwrap()
}

/// A random symmetric polynomial: a combination of row-orbit sums.
pub fn random_symmetric(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    rows: u16,
    width: u32,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let mut out = Polynomial::zero(ring, rows).unwrap();
    for _ in 0..rng.random_range(0..=max_terms) {
        let m = random_monomial(rng, rows, width, max_degree);
        let sum = orbit_sum(ring, &m, rows).unwrap();
        out = out.try_add(&sum.scale(&random_coeff(rng, ring))).unwrap();
    }
    out
}

/// A random nonzero multidegree over `width` columns with the given total.
pub fn random_multidegree(rng: &mut ChaCha8Rng, width: u32, total: u32) -> MultiDegree {
    let mut degrees = vec![0u32; width as usize];
    for _ in 0..total {
        let col = rng.random_range(0..width as usize);
        degrees[col] += 1;
    }
    MultiDegree::new(degrees)
}

/// A random symmetric polynomial in one multidegree component.
pub fn random_symmetric_component(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    rows: u16,
    degree: &MultiDegree,
) -> Polynomial {
    let basis = symmetric_component_basis(ring, rows, degree).unwrap();
    let mut out = Polynomial::zero(ring, rows).unwrap();
    for b in basis {
        if rng.random_range(0..3) > 0 {
            out = out.try_add(&b.scale(&random_coeff(rng, ring))).unwrap();
        }
    }
    out
}

/// A random multihomogeneous polynomial of the given multidegree.
pub fn random_component_poly(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    rows: u16,
    degree: &MultiDegree,
) -> Polynomial {
    let monos = monomials_of_multidegree(rows, degree);
    let mut terms = Vec::new();
    for m in monos {
        if rng.random_range(0..3) > 0 {
            terms.push((m, random_coeff(rng, ring)));
        }
    }
    Polynomial::from_terms(ring, rows, terms).unwrap()
}
