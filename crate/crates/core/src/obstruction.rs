//! The p-adic valuation obstruction pipeline and the desk-scale
//! non-membership drivers.
//!
//! The mechanism: lift a mod-p membership identity for `h_k` to the
//! integers, collapse columns with `x[i,j] -> t[j]`, and compare p-adic
//! valuations. The left side collapses to `p * t_1...t_k` (valuation
//! exactly 1), while every right-hand term is a product of a relabeled
//! `h_l` (one factor of p) and a symmetric squarefree-column cofactor
//! (another factor of p, by the orbit-size divisibility lemma). A genuine
//! identity would force 1 >= 2, so none exists; the report exhibits the
//! computed valuations on both sides.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::actions::{is_symmetric, orbit_sum, row_orbit};
use crate::equivariant::{
    member_multigraded, EquivariantIdealSpec, MembershipCertificate, MembershipVerdict,
};
use crate::error::{Error, Result};
use crate::families::h_family;
use crate::monomial::{Monomial, MultiDegree, Variable};
use crate::morphisms::{collapse_columns, lift_canonical, row_truncate};
use crate::poly::Polynomial;
use crate::ring::{CoefficientRing, Prime};

/// What an obstruction run concluded about a candidate identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionConclusion {
    /// The identity is exact mod p and every right-hand term collapses to a
    /// multiple of p^2 while the left side has valuation 1.
    ContradictionEstablished,
    /// The candidate is simply not a certificate: its residual mod p is
    /// nonzero.
    ResidualNonzero,
}

impl ObstructionConclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionConclusion::ContradictionEstablished => "contradiction_established",
            ObstructionConclusion::ResidualNonzero => "residual_nonzero",
        }
    }
}

/// The record of one obstruction run.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub k: u32,
    pub p: u32,
    /// Valuation of the collapsed left side; always 1.
    pub lhs_valuation: u32,
    /// Valuation of each collapsed right-hand term.
    pub term_valuations: Vec<u32>,
    /// Residual of the analyzed identity mod p (zero when exact).
    pub residual_mod_p: Polynomial,
    /// Valuation of the collapsed integer-level residual slot (the `p*g`
    /// seat of the lifted identity); `None` when that slot is zero or when
    /// the candidate already failed mod p.
    pub residual_slot_valuation: Option<u32>,
    /// True when the mod-p residual was absorbed into the integer slot to
    /// synthesize an exact identity.
    pub residual_absorbed: bool,
    /// The absorbed residual, when `residual_absorbed` is set.
    pub absorbed_residual: Option<Polynomial>,
    pub conclusion: ObstructionConclusion,
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "p": self.p,
            "lhs_valuation": self.lhs_valuation,
            "term_valuations": self.term_valuations,
            "residual_mod_p": self.residual_mod_p.to_string(),
            "residual_slot_valuation": self.residual_slot_valuation,
            "residual_absorbed": self.residual_absorbed,
            "absorbed_residual": self.absorbed_residual.as_ref().map(|p| p.to_string()),
            "conclusion": self.conclusion.as_str(),
        })
    }
}

/// Recognize each spec generator as some `h_l` with `l != k`; returns the
/// recognized indices.
fn recognize_h_generators(
    spec: &EquivariantIdealSpec,
    p: u16,
    k: u32,
) -> Result<Vec<u32>> {
    let mut indices = Vec::with_capacity(spec.generators().len());
    for g in spec.generators() {
        let l = g.total_degree();
        if *g != h_family(spec.ring(), p, l)? {
            return Err(Error::MalformedCandidate(format!(
                "generator {g} is not an h-family member"
            )));
        }
        if l == k {
            return Err(Error::MalformedCandidate(
                "generator index k is not allowed".into(),
            ));
        }
        indices.push(l);
    }
    Ok(indices)
}

/// Classify a candidate certificate for `h_k` against `{h_l : l != k}` at
/// `n = p` rows over GF(p), exhibiting the valuation contradiction.
///
/// With `absorb_residual` set, the mod-p residual is folded into the
/// integer-level `p*g` slot, synthesizing an exact identity whose report
/// exercises the full valuation mechanism even though no genuine
/// certificate exists.
pub fn obstruction_check(
    k: u32,
    p: u32,
    spec: &EquivariantIdealSpec,
    candidate: &MembershipCertificate,
    absorb_residual: bool,
) -> Result<ObstructionReport> {
    let prime = Prime::new(p as u64)?;
    let ring = CoefficientRing::PrimeField(prime);
    let rows = p as u16;
    if spec.ring() != ring || spec.rows() != rows {
        return Err(Error::MalformedCandidate(format!(
            "spec must live over GF({p}) with {p} rows"
        )));
    }
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    recognize_h_generators(spec, rows, k)?;

    let target = h_family(ring, rows, k)?;
    if candidate.target() != &target {
        return Err(Error::MalformedCandidate(format!(
            "target must be h_{k} at {p} rows over GF({p})"
        )));
    }
    let full_degree = MultiDegree::new(vec![1; k as usize]);

    // Validate shape and collect the mod-p sum and integer-level terms.
    let mut fp_sum = Polynomial::zero(ring, rows)?;
    let mut z_terms: Vec<Polynomial> = Vec::new();
    for (i, term) in candidate.terms().iter().enumerate() {
        if term.cofactor.is_zero() {
            continue;
        }
        if !is_symmetric(&term.cofactor) {
            return Err(Error::MalformedCandidate(format!(
                "term {i}: asymmetric cofactor"
            )));
        }
        let g = spec
            .generators()
            .get(term.generator)
            .ok_or(Error::GeneratorIndexOutOfRange {
                index: term.generator,
                count: spec.generators().len(),
            })?;
        let moved = term.sigma.apply(g)?;
        let product = moved.try_mul(&term.cofactor)?;
        match product.uniform_multidegree()? {
            Some(d) if d == full_degree => {}
            _ => {
                return Err(Error::MalformedCandidate(format!(
                    "term {i}: wrong multidegree (expected {full_degree})"
                )));
            }
        }
        fp_sum = fp_sum.try_add(&product)?;

        // Integer level: the relabeled h over ZZ times the canonical lift
        // of the cofactor.
        let g_int = h_family(CoefficientRing::Integers, rows, g.total_degree())?;
        let moved_int = term.sigma.apply(&g_int)?;
        z_terms.push(moved_int.try_mul(&lift_canonical(&term.cofactor)?)?);
    }

    let residual_fp = target.try_sub(&fp_sum)?;

    let lhs_int = h_family(CoefficientRing::Integers, rows, k)?;
    let lhs_valuation = collapse_columns(&lhs_int)?
        .valuation_p(p)?
        .expect("h_k is nonzero");
    let term_valuations = z_terms
        .iter()
        .map(|t| {
            Ok(collapse_columns(t)?
                .valuation_p(p)?
                .expect("nonzero term"))
        })
        .collect::<Result<Vec<u32>>>()?;

    let mut z_residual = lhs_int.clone();
    for t in &z_terms {
        z_residual = z_residual.try_sub(t)?;
    }

    if !residual_fp.is_zero() && !absorb_residual {
        return Ok(ObstructionReport {
            k,
            p,
            lhs_valuation,
            term_valuations,
            residual_mod_p: residual_fp,
            residual_slot_valuation: None,
            residual_absorbed: false,
            absorbed_residual: None,
            conclusion: ObstructionConclusion::ResidualNonzero,
        });
    }

    let residual_slot_valuation = collapse_columns(&z_residual)?.valuation_p(p)?;
    let all_terms_squared = term_valuations.iter().all(|&v| v >= 2);
    let (residual_mod_p, absorbed) = if residual_fp.is_zero() {
        (residual_fp, None)
    } else {
        (Polynomial::zero(ring, rows)?, Some(residual_fp))
    };
    Ok(ObstructionReport {
        k,
        p,
        lhs_valuation,
        term_valuations,
        residual_mod_p,
        residual_slot_valuation,
        residual_absorbed: absorbed.is_some(),
        absorbed_residual: absorbed,
        conclusion: if all_terms_squared {
            ObstructionConclusion::ContradictionEstablished
        } else {
            ObstructionConclusion::ResidualNonzero
        },
    })
}

/// The generating spec `{h_l : l <= kmax, l != k}` at `p` rows over GF(p),
/// built at `n` rows and row-truncated.
pub fn hk_excluded_spec(n: u16, p: u32, k: u32, kmax: u32) -> Result<EquivariantIdealSpec> {
    let ring = CoefficientRing::prime_field(p as u64)?;
    let generators = (1..=kmax)
        .filter(|&l| l != k)
        .map(|l| row_truncate(&h_family(ring, n, l)?, p as u16))
        .collect::<Result<Vec<_>>>()?;
    EquivariantIdealSpec::new(
        ring,
        p as u16,
        crate::equivariant::Ambient::SymmetricSubring,
        generators,
    )
}

/// Decide whether `h_k` lies in the invariant ideal of `{h_l : l != k}`
/// over a field of characteristic `p <= n`, after the row truncation to
/// `p` rows and the base-field reduction to GF(p). The multidegree filter
/// makes the finite cutoff `kmax >= k` sufficient. Exact verdict.
pub fn nonmembership_hk(n: u16, p: u32, k: u32, kmax: u32) -> Result<MembershipVerdict> {
    if p as u16 > n {
        return Err(Error::ObstructionNotApplicable { p, n });
    }
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    if kmax < k {
        return Err(Error::MalformedCandidate(format!(
            "kmax = {kmax} must be at least k = {k}"
        )));
    }
    let ring = CoefficientRing::prime_field(p as u64)?;
    let target = row_truncate(&h_family(ring, n, k)?, p as u16)?;
    let spec = hk_excluded_spec(n, p, k, kmax)?;
    member_multigraded(&target, &spec)
}

/// Exhaustive audit of the orbit-size divisibility lemma.
#[derive(Debug, Clone)]
pub struct OrbitAuditReport {
    pub p: u32,
    pub width: u32,
    pub monomials_checked: usize,
    /// Orbit size -> number of monomials with that orbit size.
    pub orbit_size_counts: BTreeMap<usize, usize>,
    pub all_sizes_divisible: bool,
    /// Minimum p-adic valuation of the collapsed orbit sums; at least 1
    /// when the lemma holds.
    pub min_eta_valuation: u32,
}

impl OrbitAuditReport {
    pub fn passed(&self) -> bool {
        self.all_sizes_divisible && self.min_eta_valuation >= 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "width": self.width,
            "monomials_checked": self.monomials_checked,
            "orbit_size_counts": self.orbit_size_counts.iter()
                .map(|(size, count)| json!({"size": size, "count": count}))
                .collect::<Vec<_>>(),
            "all_sizes_divisible": self.all_sizes_divisible,
            "min_eta_valuation": self.min_eta_valuation,
            "passed": self.passed(),
        })
    }
}

/// Enumerate every non-constant monomial with multidegree entries in
/// {0,1}, column support within `1..=width`, and rows at most `p`; check
/// that each row-orbit size is a multiple of p and that the collapsed
/// orbit sum has p-adic valuation at least 1.
pub fn orbit_divisibility_audit(p: u32, width: u32) -> Result<OrbitAuditReport> {
    if !matches!(p, 2 | 3 | 5) || width == 0 || width > 5 {
        return Err(Error::AuditParamsOutOfRange { p, width });
    }
    let rows = p as u16;
    let mut monomials_checked = 0usize;
    let mut orbit_size_counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut all_sizes_divisible = true;
    let mut min_eta_valuation = u32::MAX;

    for mask in 1u32..(1 << width) {
        let columns: Vec<u32> = (1..=width).filter(|c| mask & (1 << (c - 1)) != 0).collect();
        let choices: Vec<Vec<u16>> = columns.iter().map(|_| (1..=rows).collect()).collect();
        for assignment in choices.iter().multi_cartesian_product() {
            let m = Monomial::from_exps(
                columns
                    .iter()
                    .zip(&assignment)
                    .map(|(&col, &&row)| (Variable::X { row, col }, 1)),
            )?;
            monomials_checked += 1;
            let orbit = row_orbit(&m, rows)?;
            *orbit_size_counts.entry(orbit.len()).or_insert(0) += 1;
            if orbit.len() % p as usize != 0 {
                all_sizes_divisible = false;
            }
            let sum = orbit_sum(CoefficientRing::Integers, &m, rows)?;
            let val = collapse_columns(&sum)?
                .valuation_p(p)?
                .expect("orbit sum is nonzero");
            min_eta_valuation = min_eta_valuation.min(val);
        }
    }
    Ok(OrbitAuditReport {
        p,
        width,
        monomials_checked,
        orbit_size_counts,
        all_sizes_divisible,
        min_eta_valuation,
    })
}

/// Decide whether the cycle product of length `k` lies in the invariant
/// ideal of the other cycle products in the two-row minor subalgebra over
/// GF(2). Exact verdict through the multigraded oracle.
pub fn vaughanlee_check(k: u32, kmax: u32) -> Result<MembershipVerdict> {
    if !(3..=5).contains(&k) {
        return Err(Error::CycleLengthOutOfRange(k, 3, 5));
    }
    if kmax < k {
        return Err(Error::MalformedCandidate(format!(
            "kmax = {kmax} must be at least k = {k}"
        )));
    }
    let ring = CoefficientRing::prime_field(2)?;
    let indices: Vec<u32> = (3..=kmax).filter(|&l| l != k).collect();
    let spec = EquivariantIdealSpec::cycle_spec(ring, &indices)?;
    let target = crate::families::cycle_product(ring, k)?;
    member_multigraded(&target, &spec)
}
