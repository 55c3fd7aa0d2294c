//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`). Everything is exact arithmetic; the time
//! budgets are asserted where stated.

mod common;

use std::time::Instant;

use common::*;
use symideal_core::actions::{is_symmetric, orbit_sum, symmetrize, ColumnMap, RowPermutation};
use symideal_core::equivariant::{
    member_multigraded, member_truncated, retract_certificate, verify_certificate, Ambient,
    CertTerm, CertificateCheck, EquivariantIdealSpec, MembershipCertificate, VerdictStatus,
};
use symideal_core::error::Error;
use symideal_core::families::h_family;
use symideal_core::monomial::{Monomial, Variable};
use symideal_core::morphisms::{collapse_columns, lift_canonical};
use symideal_core::obstruction::{
    hk_excluded_spec, nonmembership_hk, obstruction_check, orbit_divisibility_audit,
    vaughanlee_check, ObstructionConclusion,
};
use symideal_core::parse_polynomial;
use symideal_core::poly::Polynomial;
use symideal_core::ring::CoefficientRing;

const QQ: CoefficientRing = CoefficientRing::Rationals;

fn gf(p: u64) -> CoefficientRing {
    CoefficientRing::prime_field(p).unwrap()
}

const HK_INSTANCES: [(u16, u32, u32); 6] =
    [(2, 2, 2), (2, 2, 3), (2, 2, 4), (3, 2, 3), (3, 3, 2), (3, 3, 3)];

/// Criterion 1: h_k non-membership over GF(p) with p <= n, six instances.
#[test]
fn criterion_1_hk_nonmembership() {
    for (n, p, k) in HK_INSTANCES {
        let start = Instant::now();
        let verdict = nonmembership_hk(n, p, k, k + 1).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(
            verdict.status,
            VerdictStatus::NotMember,
            "(n,p,k) = ({n},{p},{k})"
        );
        assert!(elapsed.as_secs() < 60, "instance ({n},{p},{k}) took {elapsed:?}");
    }
    println!("criterion 1 (h_k non-membership, 6 instances): PASS");
}

/// Criterion 2: the valuation contradiction on synthetic exact identities.
#[test]
fn criterion_2_obstruction_mechanism() {
    for (n, p, k) in HK_INSTANCES {
        // The pipeline operates after the row truncation to p rows.
        let _ = n;
        let spec = hk_excluded_spec(p as u16, p, k, k + 1).unwrap();
        let ring = gf(p as u64);
        let rows = p as u16;
        let generator = spec
            .generators()
            .iter()
            .position(|g| g.total_degree() == k - 1)
            .expect("h_{k-1} is among the generators");
        let cofactor = orbit_sum(
            ring,
            &Monomial::var(Variable::X { row: 1, col: k }),
            rows,
        )
        .unwrap();
        let candidate = MembershipCertificate::from_parts_unchecked(
            h_family(ring, rows, k).unwrap(),
            vec![CertTerm {
                sigma: ColumnMap::identity(),
                generator,
                cofactor,
            }],
        );
        let report = obstruction_check(k, p, &spec, &candidate, true).unwrap();
        assert_eq!(report.lhs_valuation, 1, "(p,k) = ({p},{k})");
        assert!(!report.term_valuations.is_empty());
        assert!(
            report.term_valuations.iter().all(|&v| v >= 2),
            "(p,k) = ({p},{k}): {:?}",
            report.term_valuations
        );
        assert_eq!(
            report.conclusion,
            ObstructionConclusion::ContradictionEstablished
        );
        assert!(report.residual_mod_p.is_zero());
    }
    println!("criterion 2 (valuation contradiction, 6 instances): PASS");
}

/// Criterion 3: exhaustive orbit-size divisibility audit.
#[test]
fn criterion_3_orbit_lemma() {
    let start = Instant::now();
    for p in [2u32, 3] {
        for width in 1..=4u32 {
            let audit = orbit_divisibility_audit(p, width).unwrap();
            assert!(audit.all_sizes_divisible, "p = {p}, width = {width}");
            assert!(audit.min_eta_valuation >= 1, "p = {p}, width = {width}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "audit took {elapsed:?}");
    println!("criterion 3 (orbit divisibility audit): PASS");
}

/// Random full-ring certificate of a symmetric target: terms come in
/// row-permutation-closed pairs, so the target is symmetric while the
/// individual cofactors are not.
fn random_full_ring_certificate(
    rng: &mut rand_chacha::ChaCha8Rng,
    spec: &EquivariantIdealSpec,
) -> MembershipCertificate {
    let ring = spec.ring();
    let rows = spec.rows();
    let mut terms = Vec::new();
    let swap = RowPermutation::transposition(rows, 1, 2).unwrap();
    for _ in 0..2 {
        let generator = rand::Rng::random_range(rng, 0..spec.generators().len());
        let g = &spec.generators()[generator];
        // Random injective relabeling of the generator's column support.
        let support = g.column_support();
        let mut targets: Vec<u32> = (1..=6).collect();
        for i in (1..targets.len()).rev() {
            let j = rand::Rng::random_range(rng, 0..=i);
            targets.swap(i, j);
        }
        let sigma = ColumnMap::new(
            support
                .iter()
                .copied()
                .zip(targets.into_iter().take(support.len())),
        )
        .unwrap();
        let cofactor = random_poly(rng, ring, rows, 4, 2, 3);
        for c in [cofactor.clone(), swap.apply(&cofactor).unwrap()] {
            if !c.is_zero() {
                terms.push(CertTerm {
                    sigma: sigma.clone(),
                    generator,
                    cofactor: c,
                });
            }
        }
    }
    let mut target = Polynomial::zero(ring, rows).unwrap();
    for t in &terms {
        let moved = t.sigma.apply(&spec.generators()[t.generator]).unwrap();
        target = target.try_add(&moved.try_mul(&t.cofactor).unwrap()).unwrap();
    }
    MembershipCertificate::new(target, terms, spec).unwrap()
}

/// Criterion 4: certificate retraction in the invertible-n! regime.
#[test]
fn criterion_4_retraction() {
    let start = Instant::now();
    for ring in [QQ, gf(5)] {
        let mut rng = rng(40 + ring.modulus().unwrap_or(0) as u64);
        let spec = EquivariantIdealSpec::h_spec(ring, 2, &[1, 2])
            .unwrap()
            .with_ambient(Ambient::FullRing)
            .unwrap();
        for case in 0..100 {
            let cert = random_full_ring_certificate(&mut rng, &spec);
            assert!(is_symmetric(cert.target()), "case {case}");
            let retracted = retract_certificate(&cert, &spec).unwrap();
            for term in retracted.terms() {
                assert!(is_symmetric(&term.cofactor), "case {case} over {ring}");
            }
            assert_eq!(
                &retracted.evaluate(&spec).unwrap(),
                cert.target(),
                "case {case} over {ring}"
            );
        }
    }
    // Characteristic 2 with two rows blocks the retraction.
    let mut rng = rng(42);
    let spec = EquivariantIdealSpec::h_spec(gf(2), 2, &[1, 2])
        .unwrap()
        .with_ambient(Ambient::FullRing)
        .unwrap();
    let cert = random_full_ring_certificate(&mut rng, &spec);
    assert_eq!(
        retract_certificate(&cert, &spec).unwrap_err(),
        Error::CharacteristicObstruction { p: 2, n: 2 }
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "retraction suite took {elapsed:?}");
    println!("criterion 4 (certificate retraction, 2 x 100 cases): PASS");
}

/// Criterion 5: the averaging operator is an idempotent module retraction
/// commuting with column relabelings.
#[test]
fn criterion_5_averaging_laws() {
    let mut r = rng(5);
    for case in 0..500 {
        let rows = rand::Rng::random_range(&mut r, 1..=3u16);
        let f = random_poly(&mut r, QQ, rows, 4, 3, 4);

        // Idempotence.
        let pi = symmetrize(&f).unwrap();
        assert_eq!(symmetrize(&pi).unwrap(), pi, "case {case}");

        // Commutes with column relabelings: use a random permutation of 1..=6.
        let mut images: Vec<u32> = (1..=6).collect();
        for i in (1..images.len()).rev() {
            let j = rand::Rng::random_range(&mut r, 0..=i);
            images.swap(i, j);
        }
        let sigma = ColumnMap::new((1..=6).zip(images)).unwrap();
        assert_eq!(
            symmetrize(&sigma.apply(&f).unwrap()).unwrap(),
            sigma.apply(&pi).unwrap(),
            "case {case}"
        );

        // Module property over the symmetric subring.
        let a = random_symmetric(&mut r, QQ, rows, 3, 2, 2);
        assert_eq!(
            symmetrize(&a.try_mul(&f).unwrap()).unwrap(),
            a.try_mul(&pi).unwrap(),
            "case {case}"
        );
    }
    println!("criterion 5 (averaging operator laws, 3 x 500 cases): PASS");
}

/// Criterion 6: the truncated and multigraded oracles agree on
/// multihomogeneous instances.
#[test]
fn criterion_6_oracle_agreement() {
    let start = Instant::now();
    let mut r = rng(6);
    let mut members = 0usize;
    let mut non_members = 0usize;
    for case in 0..100 {
        let ring = if case % 2 == 0 { QQ } else { gf(2) };
        let rows = rand::Rng::random_range(&mut r, 1..=3u16);
        let width = 3u32;
        let total = rand::Rng::random_range(&mut r, 1..=4u32);
        let degree = random_multidegree(&mut r, width, total);

        // One or two nonzero symmetric multihomogeneous generators.
        let mut generators = Vec::new();
        while generators.is_empty() {
            for _ in 0..rand::Rng::random_range(&mut r, 1..=2) {
                let g_total = rand::Rng::random_range(&mut r, 1..=total);
                let g_degree = random_multidegree(&mut r, width, g_total);
                let g = random_symmetric_component(&mut r, ring, rows, &g_degree);
                if !g.is_zero() {
                    generators.push(g);
                }
            }
        }
        let spec =
            EquivariantIdealSpec::new(ring, rows, Ambient::SymmetricSubring, generators).unwrap();

        // Half the targets are explicit ideal elements; half are random
        // polynomials in the component.
        let target = if case % 4 < 2 {
            let mut f = Polynomial::zero(ring, rows).unwrap();
            for g in spec.generators() {
                let g_degree = g.uniform_multidegree().unwrap().unwrap();
                if let Some(complement) = degree.checked_sub(&g_degree) {
                    let c = random_symmetric_component(&mut r, ring, rows, &complement);
                    f = f.try_add(&g.try_mul(&c).unwrap()).unwrap();
                }
            }
            f
        } else {
            random_component_poly(&mut r, ring, rows, &degree)
        };
        if target.uniform_multidegree().unwrap().is_none() {
            continue;
        }

        let mg = member_multigraded(&target, &spec).unwrap();
        let tr = member_truncated(&target, &spec, width, target.total_degree()).unwrap();
        assert_eq!(
            mg.is_member(),
            tr.is_member(),
            "case {case}: mg = {}, tr = {} (target {target})",
            mg.status_str(),
            tr.status_str()
        );
        if mg.is_member() {
            members += 1;
        } else {
            non_members += 1;
            assert_eq!(mg.status_str(), "not_member");
        }
        for verdict in [&mg, &tr] {
            if let Some(cert) = verdict.certificate() {
                assert!(verify_certificate(cert, &spec).is_valid(), "case {case}");
            }
        }
    }
    assert!(members >= 10, "only {members} member instances generated");
    assert!(non_members >= 10, "only {non_members} non-member instances");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "agreement suite took {elapsed:?}");
    println!(
        "criterion 6 (oracle agreement, 100 instances, {members} member / {non_members} non-member): PASS"
    );
}

/// Criterion 7: cycle products avoid the ideal of the other cycles.
#[test]
fn criterion_7_cycle_nonmembership() {
    for k in [3u32, 4, 5] {
        let start = Instant::now();
        let verdict = vaughanlee_check(k, 5).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(verdict.status, VerdictStatus::NotMember, "k = {k}");
        assert!(elapsed.as_secs() < 60, "k = {k} took {elapsed:?}");
    }
    println!("criterion 7 (cycle-product non-membership, k in 3..=5): PASS");
}

/// Criterion 8: the collapse of h_k and of its relabelings.
#[test]
fn criterion_8_collapse_formulas() {
    let mut r = rng(8);
    for p in [2u32, 3] {
        let rows = p as u16;
        for k in 1..=6u32 {
            // collapse(lift(h_k)) = p * t_1 ... t_k at n = p rows.
            let hk = h_family(gf(p as u64), rows, k).unwrap();
            let collapsed = collapse_columns(&lift_canonical(&hk).unwrap()).unwrap();
            let expected_text = format!(
                "{p}*{}",
                (1..=k).map(|j| format!("t[{j}]")).collect::<Vec<_>>().join("*")
            );
            let expected =
                parse_polynomial(&expected_text, CoefficientRing::Integers, rows).unwrap();
            assert_eq!(collapsed, expected, "p = {p}, k = {k}");
            assert_eq!(collapsed.valuation_p(p).unwrap(), Some(1));

            // Relabeled: collapse(sigma(h_l)) = p * t_{sigma(1)} ... t_{sigma(l)}.
            for _ in 0..5 {
                let mut targets: Vec<u32> = (1..=8).collect();
                for i in (1..targets.len()).rev() {
                    let j = rand::Rng::random_range(&mut r, 0..=i);
                    targets.swap(i, j);
                }
                let sigma = ColumnMap::new((1..=k).zip(targets.iter().copied())).unwrap();
                let h_int = h_family(CoefficientRing::Integers, rows, k).unwrap();
                let moved = collapse_columns(&sigma.apply(&h_int).unwrap()).unwrap();
                let expect_m = Monomial::from_exps(
                    (1..=k).map(|j| (Variable::T { col: sigma.map(j) }, 1)),
                )
                .unwrap();
                let expect = Polynomial::from_terms(
                    CoefficientRing::Integers,
                    rows,
                    [(expect_m, CoefficientRing::Integers.from_i64(p as i64))],
                )
                .unwrap();
                assert_eq!(moved, expect, "p = {p}, k = {k}, sigma = {sigma}");
            }
        }
    }
    println!("criterion 8 (collapse formulas, p in {{2,3}}, k <= 6): PASS");
}

/// Criterion 9: every MEMBER verdict re-verifies; tampering is caught.
#[test]
fn criterion_9_certificate_soundness() {
    let mut collected: Vec<(MembershipCertificate, EquivariantIdealSpec)> = Vec::new();

    // One-row divisibility members.
    let spec = EquivariantIdealSpec::h_spec(QQ, 1, &[1]).unwrap();
    for k in 2..=4 {
        let verdict = member_multigraded(&h_family(QQ, 1, k).unwrap(), &spec).unwrap();
        collected.push((verdict.certificate().unwrap().clone(), spec.clone()));
    }
    // Two-row rational members of the h-chain.
    let spec2 = EquivariantIdealSpec::h_spec(QQ, 2, &[1, 2]).unwrap();
    for k in 3..=5 {
        let verdict = member_multigraded(&h_family(QQ, 2, k).unwrap(), &spec2).unwrap();
        collected.push((verdict.certificate().unwrap().clone(), spec2.clone()));
    }
    // A truncated-oracle member over GF(2) in the minor subalgebra.
    let l2 = EquivariantIdealSpec::cycle_spec(gf(2), &[3]).unwrap();
    let c3 = symideal_core::families::cycle_product(gf(2), 3).unwrap();
    let d12 = symideal_core::families::determinant_gen(gf(2), 2, &[1, 2]).unwrap();
    let target = c3.try_mul(&d12.pow(2).unwrap()).unwrap();
    let verdict = member_truncated(&target, &l2, 3, 4).unwrap();
    collected.push((verdict.certificate().unwrap().clone(), l2));

    for (i, (cert, spec)) in collected.iter().enumerate() {
        assert!(
            verify_certificate(cert, spec).is_valid(),
            "certificate {i} failed re-verification"
        );
        // Tamper a single coefficient through the serialized form.
        let mut doc = cert.to_json();
        let cof = doc["terms"][0]["cofactor"].as_str().unwrap().to_string();
        doc["terms"][0]["cofactor"] = serde_json::json!(format!("{cof}+1"));
        let tampered =
            MembershipCertificate::from_json(&doc, spec.ring(), spec.rows()).unwrap();
        match verify_certificate(&tampered, spec) {
            CertificateCheck::Invalid { diagnostic } => {
                assert!(diagnostic.contains("identity mismatch"), "{diagnostic}");
            }
            CertificateCheck::Valid => panic!("tampered certificate {i} accepted"),
        }
    }
    println!(
        "criterion 9 (certificate soundness, {} certificates + tampers): PASS",
        collected.len()
    );
}
