//! Multivariate division, Buchberger's algorithm, and ideal membership
//! over field coefficients in finitely many variables.
//!
//! Every reduction tracks cofactors over the original generator list, so a
//! membership verdict can hand back an exact identity `f = sum c_i * g_i`.
//! Cofactors are verified by re-evaluation before they leave this module.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{MonomialOrder, Variable};
use crate::poly::Polynomial;
use crate::ring::CoefficientRing;

/// A reduced Groebner basis together with the expression of each element
/// in terms of the original generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: CoefficientRing,
    rows: u16,
    elements: Vec<Polynomial>,
    /// `elements[i] = sum_j representations[i][j] * generators[j]`.
    representations: Vec<Vec<Polynomial>>,
    universe: BTreeSet<Variable>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn universe(&self) -> &BTreeSet<Variable> {
        &self.universe
    }

    /// The normal form of `f` modulo this basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(divide(f, &self.elements, self.order)?.1)
    }
}

/// The outcome of an ideal membership test at a fixed truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipOutcome {
    /// `f = sum cofactors[i] * generators[i]`, re-evaluated exactly.
    Member { cofactors: Vec<Polynomial> },
    NotMember,
}

fn require_field(f: &Polynomial) -> Result<()> {
    if !f.ring().is_field() {
        return Err(Error::NotAField(f.ring()));
    }
    Ok(())
}

/// Multivariate division with remainder: `f = sum q_i * d_i + r`, where no
/// monomial of `r` is divisible by any leading monomial of the divisors.
/// Deterministic in the divisor list order.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    let MonomialOrder::GrevLex = order;
    require_field(f)?;
    let ring = f.ring();
    let rows = f.rows();
    let mut quotients = vec![Polynomial::zero(ring, rows)?; divisors.len()];
    let mut remainder = Polynomial::zero(ring, rows)?;
    let mut p = f.clone();

    'outer: while let Some((lm, lc)) = p.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        for (i, d) in divisors.iter().enumerate() {
            let Some((dm, dc)) = d.leading_term() else {
                continue;
            };
            if let Some(t) = dm.div_into(&lm) {
                let c = ring
                    .div(&lc, dc)?
                    .expect("leading coefficients are nonzero");
                let step = Polynomial::from_terms(ring, rows, [(t.clone(), c.clone())])?;
                quotients[i] = quotients[i].try_add(&step)?;
                p = p.try_sub(&d.mul_term(&t, &c)?)?;
                continue 'outer;
            }
        }
        let step = Polynomial::from_terms(ring, rows, [(lm, lc)])?;
        remainder = remainder.try_add(&step)?;
        p = p.try_sub(&step)?;
    }

    // Reconstruction identity, asserted on every call.
    let mut check = remainder.clone();
    for (q, d) in quotients.iter().zip(divisors) {
        check = check.try_add(&q.try_mul(d)?)?;
    }
    assert_eq!(&check, f, "division reconstruction identity violated");

    Ok((quotients, remainder))
}

/// Divide while updating a representation vector: on entry `rep` expresses
/// `f`; on exit it expresses the returned remainder.
fn divide_tracked(
    f: &Polynomial,
    divisors: &[Polynomial],
    divisor_reps: &[Vec<Polynomial>],
    rep: &mut [Polynomial],
    order: MonomialOrder,
) -> Result<Polynomial> {
    let (quotients, remainder) = divide(f, divisors, order)?;
    for (q, drep) in quotients.iter().zip(divisor_reps) {
        if q.is_zero() {
            continue;
        }
        for (slot, d) in rep.iter_mut().zip(drep) {
            *slot = slot.try_sub(&q.try_mul(d)?)?;
        }
    }
    Ok(remainder)
}

struct BasisBuilder {
    order: MonomialOrder,
    ring: CoefficientRing,
    rows: u16,
    generators: Vec<Polynomial>,
    elements: Vec<Polynomial>,
    reps: Vec<Vec<Polynomial>>,
}

impl BasisBuilder {
    fn zero_rep(&self) -> Result<Vec<Polynomial>> {
        Ok(vec![Polynomial::zero(self.ring, self.rows)?; self.generators.len()])
    }

    /// Scale to leading coefficient 1 and push with its representation.
    fn push_monic(&mut self, f: Polynomial, rep: Vec<Polynomial>) -> Result<()> {
        let lc = f.leading_term().expect("nonzero").1.clone();
        let inv = self.ring.inv(&lc)?.expect("nonzero leading coefficient");
        let f = f.scale(&inv);
        let rep = rep.into_iter().map(|r| r.scale(&inv)).collect();
        self.elements.push(f);
        self.reps.push(rep);
        Ok(())
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Result<(Polynomial, Vec<Polynomial>)> {
        let (lm_i, _) = self.elements[i].leading_term().expect("nonzero");
        let (lm_j, _) = self.elements[j].leading_term().expect("nonzero");
        let lcm = lm_i.lcm(lm_j)?;
        let u_i = lm_i.div_into(&lcm).expect("lcm is divisible");
        let u_j = lm_j.div_into(&lcm).expect("lcm is divisible");
        let one = self.ring.one();
        let s = self.elements[i]
            .mul_term(&u_i, &one)?
            .try_sub(&self.elements[j].mul_term(&u_j, &one)?)?;
        let mut rep = self.zero_rep()?;
        for (slot, (a, b)) in rep
            .iter_mut()
            .zip(self.reps[i].iter().zip(self.reps[j].iter()))
        {
            *slot = a.mul_term(&u_i, &one)?.try_sub(&b.mul_term(&u_j, &one)?)?;
        }
        Ok((s, rep))
    }

    /// Normal pair selection: smallest lcm total degree, then pair indices.
    fn select_pair(&self, pairs: &BTreeSet<(usize, usize)>) -> (usize, usize) {
        *pairs
            .iter()
            .min_by_key(|(i, j)| {
                let lm_i = self.elements[*i].leading_term().unwrap().0;
                let lm_j = self.elements[*j].leading_term().unwrap().0;
                (lm_i.lcm(lm_j).unwrap().total_degree(), *i, *j)
            })
            .expect("pair set is nonempty")
    }

    fn run(mut self) -> Result<GroebnerBasis> {
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (j, g) in self.generators.clone().into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut rep = self.zero_rep()?;
            rep[j] = Polynomial::one(self.ring, self.rows)?;
            let idx = self.elements.len();
            for i in 0..idx {
                pairs.insert((i, idx));
            }
            self.push_monic(g, rep)?;
        }

        while !pairs.is_empty() {
            let (i, j) = self.select_pair(&pairs);
            pairs.remove(&(i, j));
            let lm_i = self.elements[i].leading_term().unwrap().0;
            let lm_j = self.elements[j].leading_term().unwrap().0;
            // Product criterion: coprime leading monomials reduce to zero.
            if lm_i.lcm(lm_j)?.total_degree() == lm_i.total_degree() + lm_j.total_degree() {
                continue;
            }
            let (s, mut rep) = self.s_polynomial(i, j)?;
            let remainder = divide_tracked(&s, &self.elements, &self.reps, &mut rep, self.order)?;
            if remainder.is_zero() {
                continue;
            }
            let idx = self.elements.len();
            for k in 0..idx {
                pairs.insert((k, idx));
            }
            self.push_monic(remainder, rep)?;
        }

        self.reduce();
        self.interreduce()?;
        self.sort_canonically();

        let universe = self
            .generators
            .iter()
            .flat_map(|g| g.terms().flat_map(|(m, _)| m.exponents().iter().map(|(v, _)| *v)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();

        let basis = GroebnerBasis {
            order: self.order,
            ring: self.ring,
            rows: self.rows,
            elements: self.elements,
            representations: self.reps,
            universe,
        };

        // Each original generator must reduce to zero.
        for g in &self.generators {
            debug_assert!(basis.normal_form(g)?.is_zero());
        }
        Ok(basis)
    }

    /// Drop elements whose leading monomial is divisible by another's.
    fn reduce(&mut self) {
        let mut keep = vec![true; self.elements.len()];
        for i in 0..self.elements.len() {
            if !keep[i] {
                continue;
            }
            let lm_i = self.elements[i].leading_term().unwrap().0.clone();
            for j in 0..self.elements.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let lm_j = self.elements[j].leading_term().unwrap().0;
                if lm_j.divides(&lm_i) && (lm_j != &lm_i || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut elements = Vec::new();
        let mut reps = Vec::new();
        for (i, k) in keep.iter().enumerate() {
            if *k {
                elements.push(self.elements[i].clone());
                reps.push(self.reps[i].clone());
            }
        }
        self.elements = elements;
        self.reps = reps;
    }

    /// Reduce every element's tail against the others until stable.
    fn interreduce(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for i in 0..self.elements.len() {
                let mut others = self.elements.clone();
                let mut other_reps = self.reps.clone();
                others.remove(i);
                other_reps.remove(i);
                let mut rep = self.reps[i].clone();
                let reduced =
                    divide_tracked(&self.elements[i], &others, &other_reps, &mut rep, self.order)?;
                if reduced != self.elements[i] {
                    changed = true;
                    self.elements[i] = reduced;
                    self.reps[i] = rep;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn sort_canonically(&mut self) {
        let mut order: Vec<usize> = (0..self.elements.len()).collect();
        order.sort_by(|&a, &b| {
            let lm_a = self.elements[a].leading_term().unwrap().0;
            let lm_b = self.elements[b].leading_term().unwrap().0;
            lm_b.cmp(lm_a)
        });
        self.elements = order.iter().map(|&i| self.elements[i].clone()).collect();
        self.reps = order.iter().map(|&i| self.reps[i].clone()).collect();
    }
}

/// Compute the reduced Groebner basis of the ideal generated by
/// `generators`, unique for the given order.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    require_field(first)?;
    for g in generators {
        if g.ring() != first.ring() {
            return Err(Error::RingMismatch(first.ring(), g.ring()));
        }
        if g.rows() != first.rows() {
            return Err(Error::RowBoundMismatch(first.rows(), g.rows()));
        }
    }
    BasisBuilder {
        order,
        ring: first.ring(),
        rows: first.rows(),
        generators: generators.to_vec(),
        elements: Vec::new(),
        reps: Vec::new(),
    }
    .run()
}

/// Decide membership of `f` in the ideal generated by `generators`. On
/// `Member`, the returned cofactors satisfy `f = sum c_i * g_i` over the
/// original generators and have been re-evaluated.
pub fn ideal_member(
    f: &Polynomial,
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<MembershipOutcome> {
    require_field(f)?;
    let basis = buchberger(generators, order)?;
    member_against(f, generators, &basis)
}

/// Membership against a precomputed basis of the same generator list.
pub fn member_against(
    f: &Polynomial,
    generators: &[Polynomial],
    basis: &GroebnerBasis,
) -> Result<MembershipOutcome> {
    let mut rep = vec![Polynomial::zero(basis.ring, basis.rows)?; generators.len()];
    let remainder = divide_tracked(f, &basis.elements, &basis.representations, &mut rep, basis.order)?;
    if !remainder.is_zero() {
        return Ok(MembershipOutcome::NotMember);
    }
    // rep now expresses f - remainder = f with a sign flip from the update
    // direction: divide_tracked subtracts quotient contributions, so negate.
    let cofactors: Vec<Polynomial> = rep.into_iter().map(|r| r.neg()).collect();
    let mut check = Polynomial::zero(basis.ring, basis.rows)?;
    for (c, g) in cofactors.iter().zip(generators) {
        check = check.try_add(&c.try_mul(g)?)?;
    }
    assert_eq!(&check, f, "membership cofactors failed re-evaluation");
    Ok(MembershipOutcome::Member { cofactors })
}
