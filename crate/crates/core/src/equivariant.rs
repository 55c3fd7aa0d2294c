//! Equivariant ideals at finite truncation: orbit expansion of generators,
//! the Groebner-backed truncated oracle, the exact multigraded oracle,
//! certificate retraction, stabilization scans, and certificate
//! verification.
//!
//! A membership certificate is an explicit identity
//! `f = sum_s sigma_s(g_{l_s}) * c_s` over the spec's generators. MEMBER
//! verdicts never leave this module without their certificate having been
//! re-evaluated exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde_json::{json, Value};

use crate::actions::{is_symmetric, symmetrize, ColumnMap};
use crate::error::{Error, Result};
use crate::families::{
    cycle_product, h_family, l2_component_span, monomials_of_multidegree,
    symmetric_component_basis,
};
use crate::groebner::{ideal_member, MembershipOutcome};
use crate::linalg::solve_linear_combination;
use crate::monomial::{Monomial, MonomialOrder, MultiDegree};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{Coeff, CoefficientRing};

/// The algebra the ideal lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// The full polynomial ring; cofactors are unconstrained.
    FullRing,
    /// The subring of row-symmetric polynomials; cofactors must be symmetric.
    SymmetricSubring,
    /// The subalgebra generated by the two-row column minors; cofactors must
    /// lie in its multidegree components. Requires two rows.
    L2Subalgebra,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::FullRing => write!(f, "full"),
            Ambient::SymmetricSubring => write!(f, "sym"),
            Ambient::L2Subalgebra => write!(f, "l2"),
        }
    }
}

/// A finite list of equivariant generators with its ring configuration.
#[derive(Debug, Clone)]
pub struct EquivariantIdealSpec {
    ring: CoefficientRing,
    rows: u16,
    ambient: Ambient,
    generators: Vec<Polynomial>,
}

impl EquivariantIdealSpec {
    pub fn new(
        ring: CoefficientRing,
        rows: u16,
        ambient: Ambient,
        generators: Vec<Polynomial>,
    ) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(ring, g.ring()));
            }
            if g.rows() != rows {
                return Err(Error::RowBoundMismatch(rows, g.rows()));
            }
        }
        match ambient {
            Ambient::FullRing => {}
            Ambient::SymmetricSubring => {
                for g in &generators {
                    if !is_symmetric(g) {
                        return Err(Error::AsymmetricGenerator(g.to_string()));
                    }
                }
            }
            Ambient::L2Subalgebra => {
                if rows != 2 {
                    return Err(Error::RowBoundOutOfRange(rows));
                }
                for g in &generators {
                    if let Err(diag) = check_in_l2(g) {
                        return Err(Error::AsymmetricGenerator(format!(
                            "{g} is not in the minor subalgebra: {diag}"
                        )));
                    }
                }
            }
        }
        Ok(EquivariantIdealSpec {
            ring,
            rows,
            ambient,
            generators,
        })
    }

    /// The spec generated by `h_k` for the given indices.
    pub fn h_spec(ring: CoefficientRing, rows: u16, ks: &[u32]) -> Result<Self> {
        let generators = ks
            .iter()
            .map(|&k| h_family(ring, rows, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rows, Ambient::SymmetricSubring, generators)
    }

    /// The spec generated by the cycle products for the given lengths.
    pub fn cycle_spec(ring: CoefficientRing, ks: &[u32]) -> Result<Self> {
        let generators = ks
            .iter()
            .map(|&k| cycle_product(ring, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, 2, Ambient::L2Subalgebra, generators)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> u16 {
        self.rows
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The same generators viewed in a different ambient algebra.
    pub fn with_ambient(&self, ambient: Ambient) -> Result<Self> {
        Self::new(self.ring, self.rows, ambient, self.generators.clone())
    }
}

/// One summand of a membership identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub sigma: ColumnMap,
    pub generator: usize,
    pub cofactor: Polynomial,
}

/// An explicit identity `target = sum_s sigma_s(g_{l_s}) * cofactor_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    target: Polynomial,
    terms: Vec<CertTerm>,
}

/// Outcome of re-checking a certificate against a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    Invalid { diagnostic: String },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

impl MembershipCertificate {
    /// Build and verify: the identity must re-evaluate exactly and the
    /// ambient constraints must hold.
    pub fn new(target: Polynomial, terms: Vec<CertTerm>, spec: &EquivariantIdealSpec) -> Result<Self> {
        let cert = MembershipCertificate { target, terms };
        match verify_certificate(&cert, spec) {
            CertificateCheck::Valid => Ok(cert),
            CertificateCheck::Invalid { diagnostic } => Err(Error::InvalidCertificate(diagnostic)),
        }
    }

    /// Build without verification; used to load candidate documents that
    /// [`verify_certificate`] will pronounce on.
    pub fn from_parts_unchecked(target: Polynomial, terms: Vec<CertTerm>) -> Self {
        MembershipCertificate { target, terms }
    }

    pub fn target(&self) -> &Polynomial {
        &self.target
    }

    pub fn terms(&self) -> &[CertTerm] {
        &self.terms
    }

    /// Evaluate the right-hand side against the spec's generators.
    pub fn evaluate(&self, spec: &EquivariantIdealSpec) -> Result<Polynomial> {
        let mut sum = Polynomial::zero(spec.ring, spec.rows)?;
        for term in &self.terms {
            let g = spec
                .generators
                .get(term.generator)
                .ok_or(Error::GeneratorIndexOutOfRange {
                    index: term.generator,
                    count: spec.generators.len(),
                })?;
            let moved = term.sigma.apply(g)?;
            sum = sum.try_add(&moved.try_mul(&term.cofactor)?)?;
        }
        Ok(sum)
    }

    /// Serialize as `{"target": str, "terms": [{"sigma", "gen", "cofactor"}]}`
    /// with polynomials in the textual grammar.
    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target.to_string(),
            "terms": self.terms.iter().map(|t| json!({
                "sigma": t.sigma.to_string(),
                "gen": t.generator,
                "cofactor": t.cofactor.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Structural parse of a certificate document; no validity check.
    pub fn from_json(value: &Value, ring: CoefficientRing, rows: u16) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::CertificateFormat("expected a JSON object".into()))?;
        let target_str = obj
            .get("target")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::CertificateFormat("missing string field 'target'".into()))?;
        let target = parse_polynomial(target_str, ring, rows)?;
        let terms_json = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::CertificateFormat("missing array field 'terms'".into()))?;
        let mut terms = Vec::with_capacity(terms_json.len());
        for t in terms_json {
            let sigma = t
                .get("sigma")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::CertificateFormat("term missing 'sigma'".into()))?;
            let generator = t
                .get("gen")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::CertificateFormat("term missing 'gen'".into()))?;
            let cofactor = t
                .get("cofactor")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::CertificateFormat("term missing 'cofactor'".into()))?;
            terms.push(CertTerm {
                sigma: ColumnMap::parse(sigma)?,
                generator: generator as usize,
                cofactor: parse_polynomial(cofactor, ring, rows)?,
            });
        }
        Ok(MembershipCertificate { target, terms })
    }
}

/// Check a cofactor against the ambient algebra; `Err` carries the diagnostic.
fn check_ambient_cofactor(ambient: Ambient, cofactor: &Polynomial) -> std::result::Result<(), String> {
    match ambient {
        Ambient::FullRing => Ok(()),
        Ambient::SymmetricSubring => {
            if is_symmetric(cofactor) {
                Ok(())
            } else {
                Err(format!("cofactor {cofactor} is not symmetric"))
            }
        }
        Ambient::L2Subalgebra => check_in_l2(cofactor),
    }
}

/// Componentwise span test against the minor subalgebra.
fn check_in_l2(f: &Polynomial) -> std::result::Result<(), String> {
    let components = f
        .multidegree_components()
        .map_err(|e| format!("not an x-kind polynomial: {e}"))?;
    for (degree, component) in components {
        let span = l2_component_span(f.ring(), &degree).map_err(|e| e.to_string())?;
        match polynomial_in_span(&span, &component).map_err(|e| e.to_string())? {
            Some(_) => {}
            None => {
                return Err(format!(
                    "component of multidegree {degree} is outside the minor-subalgebra span"
                ))
            }
        }
    }
    Ok(())
}

/// Find coefficients expressing `f` in the span of `vectors`, coordinatized
/// on the union of their monomials.
pub(crate) fn polynomial_in_span(
    vectors: &[Polynomial],
    f: &Polynomial,
) -> Result<Option<Vec<Coeff>>> {
    let ring = f.ring();
    let mut coords: BTreeSet<Monomial> = f.terms().map(|(m, _)| m.clone()).collect();
    for v in vectors {
        coords.extend(v.terms().map(|(m, _)| m.clone()));
    }
    let coords: Vec<Monomial> = coords.into_iter().collect();
    let columns: Vec<Vec<Coeff>> = vectors
        .iter()
        .map(|v| coords.iter().map(|m| v.coefficient(m)).collect())
        .collect();
    let target: Vec<Coeff> = coords.iter().map(|m| f.coefficient(m)).collect();
    solve_linear_combination(ring, &columns, &target)
}

/// Re-check a certificate: exact identity plus ambient constraints.
/// Never errors; failures come back as diagnostics.
pub fn verify_certificate(
    cert: &MembershipCertificate,
    spec: &EquivariantIdealSpec,
) -> CertificateCheck {
    let invalid = |diagnostic: String| CertificateCheck::Invalid { diagnostic };
    if cert.target.ring() != spec.ring || cert.target.rows() != spec.rows {
        return invalid("target ring or row bound does not match the spec".into());
    }
    for (i, term) in cert.terms.iter().enumerate() {
        if term.cofactor.ring() != spec.ring || term.cofactor.rows() != spec.rows {
            return invalid(format!("term {i}: cofactor ring or row bound mismatch"));
        }
        if term.generator >= spec.generators.len() {
            return invalid(format!(
                "term {i}: generator index {} out of range",
                term.generator
            ));
        }
        if let Err(diag) = check_ambient_cofactor(spec.ambient, &term.cofactor) {
            return invalid(format!("ambient violation: term {i}: {diag}"));
        }
    }
    match cert.evaluate(spec) {
        Ok(sum) if sum == cert.target => CertificateCheck::Valid,
        Ok(sum) => invalid(format!(
            "identity mismatch: right-hand side evaluates to {sum}, target is {}",
            cert.target
        )),
        Err(e) => invalid(format!("identity could not be evaluated: {e}")),
    }
}

/// Which oracle produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Groebner,
    Multigraded,
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::Groebner => write!(f, "groebner"),
            Oracle::Multigraded => write!(f, "multigraded"),
        }
    }
}

/// Membership verdict status; a certificate is present exactly on MEMBER.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictStatus {
    Member(MembershipCertificate),
    /// Conclusive non-membership (exact oracle, or the multidegree argument
    /// applies at this truncation).
    NotMember,
    /// Not certified at this truncation; no global conclusion.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub status: VerdictStatus,
    pub width: u32,
    pub degree_bound: u32,
    pub oracle: Oracle,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self.status, VerdictStatus::Member(_))
    }

    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match &self.status {
            VerdictStatus::Member(cert) => Some(cert),
            _ => None,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self.status {
            VerdictStatus::Member(_) => "member",
            VerdictStatus::NotMember => "not_member",
            VerdictStatus::Undecided => "undecided",
        }
    }
}

/// Orbit expansion with provenance: for every generator, all images under
/// injections of its column support into `1..=width`, deduplicated as
/// polynomials keeping the first witnessing map.
pub fn expand_truncated_annotated(
    spec: &EquivariantIdealSpec,
    width: u32,
) -> Result<Vec<(ColumnMap, usize, Polynomial)>> {
    let mut out: Vec<(ColumnMap, usize, Polynomial)> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (index, g) in spec.generators.iter().enumerate() {
        let support = g.column_support();
        if support.len() as u32 > width {
            return Err(Error::WidthTooSmall {
                width,
                support: support.len() as u32,
            });
        }
        for image in (1..=width).permutations(support.len()) {
            let sigma = ColumnMap::new(support.iter().copied().zip(image))?;
            let moved = sigma.apply(g)?;
            if seen.insert(moved.to_string()) {
                out.push((sigma, index, moved));
            }
        }
    }
    Ok(out)
}

/// Orbit expansion of the generators at the given width; deduplicated.
pub fn expand_truncated(spec: &EquivariantIdealSpec, width: u32) -> Result<Vec<Polynomial>> {
    Ok(expand_truncated_annotated(spec, width)?
        .into_iter()
        .map(|(_, _, p)| p)
        .collect())
}

/// True when a failed search at this truncation is conclusive: the target
/// and every generator are multihomogeneous, the width covers the target's
/// column support, and the degree bound admits every cofactor that could
/// contribute to the target's multidegree component.
fn truncation_conclusive(
    f: &Polynomial,
    spec: &EquivariantIdealSpec,
    width: u32,
    degree_bound: u32,
) -> Result<bool> {
    let Some(degree) = f.uniform_multidegree()? else {
        return Ok(false);
    };
    if degree.is_zero() {
        return Ok(false);
    }
    let mut min_gen_degree = u32::MAX;
    for g in &spec.generators {
        if g.is_zero() {
            continue;
        }
        if g.uniform_multidegree()?.is_none() {
            return Ok(false);
        }
        min_gen_degree = min_gen_degree.min(g.total_degree());
    }
    if degree.support().iter().any(|&c| c > width) {
        return Ok(false);
    }
    let needed = degree.total().saturating_sub(min_gen_degree.min(degree.total()));
    Ok(degree_bound >= needed)
}

/// Truncated membership through the Groebner (full ring) or component-span
/// (constrained ambient) path. MEMBER verdicts carry verified certificates;
/// failures are UNDECIDED unless the multidegree argument makes them
/// conclusive at this truncation.
pub fn member_truncated(
    f: &Polynomial,
    spec: &EquivariantIdealSpec,
    width: u32,
    degree_bound: u32,
) -> Result<MembershipVerdict> {
    if !spec.ring.is_field() {
        return Err(Error::NotAField(spec.ring));
    }
    if f.ring() != spec.ring {
        return Err(Error::RingMismatch(spec.ring, f.ring()));
    }
    if f.rows() != spec.rows {
        return Err(Error::RowBoundMismatch(spec.rows, f.rows()));
    }
    if f.column_support().iter().any(|&c| c > width) {
        return Err(Error::ColumnsExceedWidth { width });
    }

    let expansion = expand_truncated_annotated(spec, width)?;
    let status = match spec.ambient {
        Ambient::FullRing => member_truncated_groebner(f, spec, &expansion)?,
        Ambient::SymmetricSubring | Ambient::L2Subalgebra => {
            member_truncated_span(f, spec, &expansion, width, degree_bound)?
        }
    };
    let status = match status {
        None if f.is_zero() => VerdictStatus::Member(MembershipCertificate::new(
            f.clone(),
            Vec::new(),
            spec,
        )?),
        None => {
            if truncation_conclusive(f, spec, width, degree_bound)? {
                VerdictStatus::NotMember
            } else {
                VerdictStatus::Undecided
            }
        }
        Some(cert) => VerdictStatus::Member(cert),
    };
    Ok(MembershipVerdict {
        status,
        width,
        degree_bound,
        oracle: Oracle::Groebner,
    })
}

/// Full-ring path: Groebner reduction against the expanded generators.
fn member_truncated_groebner(
    f: &Polynomial,
    spec: &EquivariantIdealSpec,
    expansion: &[(ColumnMap, usize, Polynomial)],
) -> Result<Option<MembershipCertificate>> {
    if expansion.is_empty() {
        return Ok(None);
    }
    let expanded: Vec<Polynomial> = expansion.iter().map(|(_, _, p)| p.clone()).collect();
    match ideal_member(f, &expanded, MonomialOrder::GrevLex)? {
        MembershipOutcome::NotMember => Ok(None),
        MembershipOutcome::Member { cofactors } => {
            let terms = expansion
                .iter()
                .zip(cofactors)
                .filter(|(_, c)| !c.is_zero())
                .map(|((sigma, index, _), cofactor)| CertTerm {
                    sigma: sigma.clone(),
                    generator: *index,
                    cofactor,
                })
                .collect();
            Ok(Some(MembershipCertificate::new(f.clone(), terms, spec)?))
        }
    }
}

/// Constrained-ambient path: membership in the span of generator images
/// times a cofactor basis of the ambient algebra, degree-capped.
fn member_truncated_span(
    f: &Polynomial,
    spec: &EquivariantIdealSpec,
    expansion: &[(ColumnMap, usize, Polynomial)],
    width: u32,
    degree_bound: u32,
) -> Result<Option<MembershipCertificate>> {
    let target_degree = f.uniform_multidegree()?;
    let mut generators_uniform = true;
    for (_, _, g) in expansion {
        if g.uniform_multidegree()?.is_none() {
            generators_uniform = false;
            break;
        }
    }

    // Column vectors: (expansion slot, cofactor basis element, product).
    let mut columns: Vec<(usize, Polynomial, Polynomial)> = Vec::new();
    for (slot, (_, _, g)) in expansion.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let cap = degree_bound.min(f.total_degree().saturating_sub(g.total_degree()));
        let basis = match (&target_degree, generators_uniform) {
            (Some(degree), true) => {
                let g_degree = g.uniform_multidegree()?.expect("checked uniform");
                match degree.checked_sub(&g_degree) {
                    None => continue,
                    Some(complement) => cofactor_component_basis(spec, &complement)?,
                }
            }
            _ => cofactor_basis_up_to(spec, width, cap)?,
        };
        for b in basis {
            let product = g.try_mul(&b)?;
            if !product.is_zero() {
                columns.push((slot, b, product));
            }
        }
    }

    let products: Vec<Polynomial> = columns.iter().map(|(_, _, p)| p.clone()).collect();
    let Some(solution) = polynomial_in_span(&products, f)? else {
        return Ok(None);
    };

    // Aggregate basis contributions per expansion slot.
    let mut cofactors: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for ((slot, basis_elem, _), coeff) in columns.iter().zip(&solution) {
        if spec.ring.is_zero(coeff) {
            continue;
        }
        let entry = cofactors
            .entry(*slot)
            .or_insert(Polynomial::zero(spec.ring, spec.rows)?);
        *entry = entry.try_add(&basis_elem.scale(coeff))?;
    }
    let terms = cofactors
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(slot, cofactor)| {
            let (sigma, index, _) = &expansion[slot];
            CertTerm {
                sigma: sigma.clone(),
                generator: *index,
                cofactor,
            }
        })
        .collect();
    Ok(Some(MembershipCertificate::new(f.clone(), terms, spec)?))
}

/// Cofactor basis for one multidegree component of the ambient algebra.
fn cofactor_component_basis(
    spec: &EquivariantIdealSpec,
    degree: &MultiDegree,
) -> Result<Vec<Polynomial>> {
    match spec.ambient {
        Ambient::SymmetricSubring => symmetric_component_basis(spec.ring, spec.rows, degree),
        Ambient::L2Subalgebra => l2_component_span(spec.ring, degree),
        Ambient::FullRing => unreachable!("full ring uses the Groebner path"),
    }
}

/// Cofactor basis across all multidegrees with support within the width
/// and total degree at most `cap`.
fn cofactor_basis_up_to(
    spec: &EquivariantIdealSpec,
    width: u32,
    cap: u32,
) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for total in 0..=cap {
        for degrees in compositions_fixed_width(total, width) {
            let degree = MultiDegree::new(degrees);
            out.extend(cofactor_component_basis(spec, &degree)?);
        }
    }
    Ok(out)
}

fn compositions_fixed_width(total: u32, width: u32) -> Vec<Vec<u32>> {
    if width == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions_fixed_width(total - first, width - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exact equivariant membership for multihomogeneous targets: enumerate the
/// generator images compatible with the target's multidegree, pair each with
/// the full cofactor component basis, and solve the finite linear system.
/// Never returns UNDECIDED.
pub fn member_multigraded(
    f: &Polynomial,
    spec: &EquivariantIdealSpec,
) -> Result<MembershipVerdict> {
    if !spec.ring.is_field() {
        return Err(Error::NotAField(spec.ring));
    }
    if f.ring() != spec.ring {
        return Err(Error::RingMismatch(spec.ring, f.ring()));
    }
    if f.rows() != spec.rows {
        return Err(Error::RowBoundMismatch(spec.rows, f.rows()));
    }
    if spec.ambient == Ambient::FullRing {
        return Err(Error::UnsupportedAmbient("full"));
    }
    let Some(degree) = f.uniform_multidegree()? else {
        return Err(Error::NotMultihomogeneous(f.to_string()));
    };

    let verdict = |status| MembershipVerdict {
        status,
        width: degree.support().last().copied().unwrap_or(0),
        degree_bound: degree.total(),
        oracle: Oracle::Multigraded,
    };

    if f.is_zero() {
        let cert = MembershipCertificate::new(f.clone(), Vec::new(), spec)?;
        return Ok(verdict(VerdictStatus::Member(cert)));
    }

    let support = degree.support();

    // Candidate columns: (sigma, generator index, image, basis element, product).
    let mut columns: Vec<(ColumnMap, usize, Polynomial, Polynomial)> = Vec::new();
    let mut products: Vec<Polynomial> = Vec::new();
    for (index, g) in spec.generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let Some(g_degree) = g.uniform_multidegree()? else {
            return Err(Error::NotMultihomogeneous(g.to_string()));
        };
        let g_support = g.column_support();
        if g_support.len() > support.len() {
            continue;
        }
        for image in support.iter().copied().permutations(g_support.len()) {
            let sigma = ColumnMap::new(g_support.iter().copied().zip(image))?;
            let moved = sigma.apply(g)?;
            let moved_degree = moved.uniform_multidegree()?.expect("image is uniform");
            let Some(complement) = degree.checked_sub(&moved_degree) else {
                continue;
            };
            let _ = g_degree;
            for b in cofactor_component_basis(spec, &complement)? {
                let product = moved.try_mul(&b)?;
                if product.is_zero() {
                    continue;
                }
                columns.push((sigma.clone(), index, b, product.clone()));
                products.push(product);
            }
        }
    }

    // Coordinates: every monomial of the target's multidegree component.
    let coords = monomials_of_multidegree(spec.rows, &degree);
    let coord_index: BTreeMap<&Monomial, usize> = coords.iter().zip(0..).collect();
    let to_vector = |p: &Polynomial| -> Vec<Coeff> {
        let mut v = vec![spec.ring.zero(); coords.len()];
        for (m, c) in p.terms() {
            v[coord_index[m]] = c.clone();
        }
        v
    };
    let column_vectors: Vec<Vec<Coeff>> = products.iter().map(&to_vector).collect();
    let target_vector = to_vector(f);

    let Some(solution) = solve_linear_combination(spec.ring, &column_vectors, &target_vector)?
    else {
        return Ok(verdict(VerdictStatus::NotMember));
    };

    // Aggregate per (sigma, generator).
    let mut aggregated: BTreeMap<(ColumnMap, usize), Polynomial> = BTreeMap::new();
    for ((sigma, index, basis_elem, _), coeff) in columns.iter().zip(&solution) {
        if spec.ring.is_zero(coeff) {
            continue;
        }
        let entry = aggregated
            .entry((sigma.clone(), *index))
            .or_insert(Polynomial::zero(spec.ring, spec.rows)?);
        *entry = entry.try_add(&basis_elem.scale(coeff))?;
    }
    let terms = aggregated
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((sigma, generator), cofactor)| CertTerm {
            sigma,
            generator,
            cofactor,
        })
        .collect();
    let cert = MembershipCertificate::new(f.clone(), terms, spec)?;
    Ok(verdict(VerdictStatus::Member(cert)))
}

/// Convert a full-ring certificate of a symmetric target into one with
/// symmetric cofactors by applying the averaging operator to each cofactor.
/// Requires an invertible n!: rationals or a prime field with p > n.
pub fn retract_certificate(
    cert: &MembershipCertificate,
    spec: &EquivariantIdealSpec,
) -> Result<MembershipCertificate> {
    let n = spec.rows;
    match spec.ring {
        CoefficientRing::Integers => return Err(Error::NotAField(spec.ring)),
        CoefficientRing::PrimeField(p) if p.get() <= n as u32 => {
            return Err(Error::CharacteristicObstruction { p: p.get(), n });
        }
        _ => {}
    }
    for g in &spec.generators {
        if !is_symmetric(g) {
            return Err(Error::AsymmetricGenerator(g.to_string()));
        }
    }
    if !is_symmetric(&cert.target) {
        return Err(Error::InvalidCertificate(
            "retraction requires a symmetric target".into(),
        ));
    }
    let full_view = spec.with_ambient(Ambient::FullRing)?;
    if let CertificateCheck::Invalid { diagnostic } = verify_certificate(cert, &full_view) {
        return Err(Error::InvalidCertificate(diagnostic));
    }

    let mut terms = Vec::with_capacity(cert.terms.len());
    for term in &cert.terms {
        let averaged = symmetrize(&term.cofactor)?;
        if averaged.is_zero() {
            continue;
        }
        terms.push(CertTerm {
            sigma: term.sigma.clone(),
            generator: term.generator,
            cofactor: averaged,
        });
    }
    let symmetric_view = spec.with_ambient(Ambient::SymmetricSubring)?;
    MembershipCertificate::new(cert.target.clone(), terms, &symmetric_view)
}

/// The indexed generator families a stabilization scan can walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorFamily {
    /// `h_k` in the symmetric subring at the given row bound.
    H { rows: u16 },
    /// Cycle products in the two-row minor subalgebra (k >= 3).
    Cycle,
}

impl GeneratorFamily {
    fn member(&self, ring: CoefficientRing, k: u32) -> Result<Polynomial> {
        match self {
            GeneratorFamily::H { rows } => h_family(ring, *rows, k),
            GeneratorFamily::Cycle => cycle_product(ring, k),
        }
    }

    fn smaller_indices(&self, k: u32) -> Vec<u32> {
        match self {
            GeneratorFamily::H { .. } => (1..k).collect(),
            GeneratorFamily::Cycle => (3..k).collect(),
        }
    }

    fn spec(&self, ring: CoefficientRing, ks: &[u32]) -> Result<EquivariantIdealSpec> {
        match self {
            GeneratorFamily::H { rows } => EquivariantIdealSpec::h_spec(ring, *rows, ks),
            GeneratorFamily::Cycle => EquivariantIdealSpec::cycle_spec(ring, ks),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorFamily::H { .. } => "h",
            GeneratorFamily::Cycle => "cycle",
        }
    }
}

/// One row of a stabilization scan report.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub k: u32,
    pub verdict: MembershipVerdict,
    pub certificate_terms: usize,
    pub runtime: Duration,
}

/// Per-index verdicts of the family member against all smaller members.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub family: GeneratorFamily,
    pub ring: CoefficientRing,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn to_json(&self, with_timings: bool) -> Value {
        json!({
            "family": self.family.name(),
            "ring": self.ring.to_string(),
            "results": self.entries.iter().map(|e| {
                let mut obj = json!({
                    "k": e.k,
                    "verdict": e.verdict.status_str(),
                    "certificate_terms": e.certificate_terms,
                });
                if with_timings {
                    obj["runtime_ms"] = json!(e.runtime.as_millis());
                }
                obj
            }).collect::<Vec<_>>(),
        })
    }
}

/// For each k in the range, test the family member against the ideal
/// generated by all smaller members, through the exact multigraded oracle.
pub fn stabilization_scan(
    ring: CoefficientRing,
    family: GeneratorFamily,
    range: RangeInclusive<u32>,
) -> Result<ScanReport> {
    let mut entries = Vec::new();
    for k in range {
        let start = Instant::now();
        let target = family.member(ring, k)?;
        let spec = family.spec(ring, &family.smaller_indices(k))?;
        let verdict = member_multigraded(&target, &spec)?;
        let certificate_terms = verdict.certificate().map(|c| c.terms().len()).unwrap_or(0);
        entries.push(ScanEntry {
            k,
            verdict,
            certificate_terms,
            runtime: start.elapsed(),
        });
    }
    Ok(ScanReport {
        family,
        ring,
        entries,
    })
}
