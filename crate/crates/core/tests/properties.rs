//! Randomized invariant suites: ring axioms, action and homomorphism laws,
//! the squarefree divisibility lemma, division reconstruction, and the
//! multidegree filter completeness check. Seeded, so runs are reproducible.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use symideal_core::actions::{is_symmetric, row_orbit, ColumnMap, RowPermutation};
use symideal_core::equivariant::{
    member_multigraded, member_truncated, Ambient, EquivariantIdealSpec,
};
use symideal_core::families::h_family;
use symideal_core::groebner::{divide, ideal_member, MembershipOutcome};
use symideal_core::monomial::{Monomial, MonomialOrder, Variable};
use symideal_core::morphisms::{
    collapse_columns, lift_canonical, psi_kl, reduce_mod_p, row_truncate,
};
use symideal_core::parse_polynomial;
use symideal_core::poly::Polynomial;
use symideal_core::ring::CoefficientRing;

const QQ: CoefficientRing = CoefficientRing::Rationals;
const ZZ: CoefficientRing = CoefficientRing::Integers;

fn gf(p: u64) -> CoefficientRing {
    CoefficientRing::prime_field(p).unwrap()
}

#[test]
fn ring_axioms_hold_on_random_triples() {
    for ring in [ZZ, QQ, gf(5)] {
        let mut r = rng(100 + ring.modulus().unwrap_or(1) as u64);
        for _ in 0..1000 {
            let a = random_poly(&mut r, ring, 2, 3, 2, 3);
            let b = random_poly(&mut r, ring, 2, 3, 2, 3);
            let c = random_poly(&mut r, ring, 2, 3, 2, 3);
            let ab = a.try_add(&b).unwrap();
            assert_eq!(ab, b.try_add(&a).unwrap());
            assert_eq!(
                ab.try_add(&c).unwrap(),
                a.try_add(&b.try_add(&c).unwrap()).unwrap()
            );
            let mul_ab = a.try_mul(&b).unwrap();
            assert_eq!(mul_ab, b.try_mul(&a).unwrap());
            assert_eq!(
                mul_ab.try_mul(&c).unwrap(),
                a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
                mul_ab.try_add(&a.try_mul(&c).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn actions_are_ring_homomorphisms() {
    let mut r = rng(101);
    for _ in 0..500 {
        let rows = r.random_range(2..=3u16);
        let f = random_poly(&mut r, QQ, rows, 3, 2, 3);
        let g = random_poly(&mut r, QQ, rows, 3, 2, 3);

        let mut images: Vec<u16> = (1..=rows).collect();
        for i in (1..images.len()).rev() {
            let j = r.random_range(0..=i);
            images.swap(i, j);
        }
        let tau = RowPermutation::new(images).unwrap();
        assert_eq!(
            tau.apply(&f.try_add(&g).unwrap()).unwrap(),
            tau.apply(&f).unwrap().try_add(&tau.apply(&g).unwrap()).unwrap()
        );
        assert_eq!(
            tau.apply(&f.try_mul(&g).unwrap()).unwrap(),
            tau.apply(&f).unwrap().try_mul(&tau.apply(&g).unwrap()).unwrap()
        );

        let mut targets: Vec<u32> = (1..=6).collect();
        for i in (1..targets.len()).rev() {
            let j = r.random_range(0..=i);
            targets.swap(i, j);
        }
        let sigma = ColumnMap::new((1..=6).zip(targets)).unwrap();
        assert_eq!(
            sigma.apply(&f.try_add(&g).unwrap()).unwrap(),
            sigma.apply(&f).unwrap().try_add(&sigma.apply(&g).unwrap()).unwrap()
        );
        assert_eq!(
            sigma.apply(&f.try_mul(&g).unwrap()).unwrap(),
            sigma.apply(&f).unwrap().try_mul(&sigma.apply(&g).unwrap()).unwrap()
        );
    }
}

#[test]
fn column_map_composition_law() {
    let mut r = rng(102);
    for _ in 0..300 {
        let f = random_poly(&mut r, QQ, 2, 3, 2, 3);
        // Two random permutations of 1..=6 compose cleanly on any support.
        let mut perm = Vec::new();
        for _ in 0..2 {
            let mut targets: Vec<u32> = (1..=6).collect();
            for i in (1..targets.len()).rev() {
                let j = r.random_range(0..=i);
                targets.swap(i, j);
            }
            perm.push(ColumnMap::new((1..=6).zip(targets)).unwrap());
        }
        let composed = perm[0].compose(&perm[1]).unwrap();
        assert_eq!(
            composed.apply(&f).unwrap(),
            perm[0].apply(&perm[1].apply(&f).unwrap()).unwrap()
        );
    }
}

#[test]
fn row_truncation_commutes_with_column_maps() {
    let mut r = rng(103);
    for _ in 0..500 {
        let f = random_poly(&mut r, QQ, 3, 3, 3, 4);
        let p = r.random_range(1..=3u16);
        let mut targets: Vec<u32> = (1..=6).collect();
        for i in (1..targets.len()).rev() {
            let j = r.random_range(0..=i);
            targets.swap(i, j);
        }
        let sigma = ColumnMap::new((1..=6).zip(targets)).unwrap();
        assert_eq!(
            row_truncate(&sigma.apply(&f).unwrap(), p).unwrap(),
            sigma.apply(&row_truncate(&f, p).unwrap()).unwrap()
        );
    }
}

#[test]
fn truncation_preserves_symmetry() {
    let mut r = rng(104);
    for _ in 0..200 {
        let f = random_symmetric(&mut r, QQ, 3, 3, 3, 3);
        let cut = row_truncate(&f, 2).unwrap();
        assert!(is_symmetric(&cut), "truncation broke symmetry of {f}");
    }
}

#[test]
fn collapse_is_constant_on_row_orbits() {
    let mut r = rng(105);
    for _ in 0..300 {
        let rows = r.random_range(2..=3u16);
        let f = random_poly(&mut r, ZZ, rows, 3, 3, 4);
        let mut images: Vec<u16> = (1..=rows).collect();
        for i in (1..images.len()).rev() {
            let j = r.random_range(0..=i);
            images.swap(i, j);
        }
        let tau = RowPermutation::new(images).unwrap();
        assert_eq!(
            collapse_columns(&tau.apply(&f).unwrap()).unwrap(),
            collapse_columns(&f).unwrap()
        );
    }
}

/// Symmetric squarefree-column integer polynomials with n = p rows collapse
/// to multiples of p.
#[test]
fn squarefree_symmetric_collapse_divisibility() {
    for p in [2u32, 3] {
        let rows = p as u16;
        let mut r = rng(106 + p as u64);
        let mut checked = 0;
        while checked < 200 {
            // Random combination of non-constant squarefree-column orbit sums.
            let mut f = Polynomial::zero(ZZ, rows).unwrap();
            for _ in 0..r.random_range(1..=3) {
                let width = 4u32;
                let mask = r.random_range(1u32..(1 << width));
                let vars = (1..=width).filter(|c| mask & (1 << (c - 1)) != 0).map(|col| {
                    (Variable::X { row: r.random_range(1..=rows), col }, 1)
                });
                let m = Monomial::from_exps(vars.collect::<Vec<_>>()).unwrap();
                let sum = symideal_core::actions::orbit_sum(ZZ, &m, rows).unwrap();
                f = f.try_add(&sum.scale(&ZZ.from_i64(r.random_range(-4..=4)))).unwrap();
            }
            if f.is_zero() {
                continue;
            }
            assert!(is_symmetric(&f));
            let val = collapse_columns(&f).unwrap().valuation_p(p).unwrap();
            assert!(val
                .map(|v| v >= 1)
                .unwrap_or(true), "p = {p}, f = {f}");
            checked += 1;
        }
    }
}

#[test]
fn psi_kl_preserves_symmetry() {
    let mut r = rng(107);
    for _ in 0..200 {
        let rows = r.random_range(2..=3u16);
        let f = random_symmetric(&mut r, QQ, rows, 3, 2, 3);
        let k = r.random_range(1..=4u32);
        let mut l = r.random_range(1..=4u32);
        if l == k {
            l = if k == 4 { 1 } else { k + 1 };
        }
        assert!(is_symmetric(&psi_kl(&f, k, l).unwrap()));
    }
}

#[test]
fn canonical_lift_section_properties() {
    let mut r = rng(108);
    for p in [2u64, 3, 5] {
        let ring = gf(p);
        for _ in 0..200 {
            let g = random_poly(&mut r, ring, 2, 3, 2, 4);
            assert_eq!(reduce_mod_p(&lift_canonical(&g).unwrap(), p as u32).unwrap(), g);
        }
        // Lifts of symmetric polynomials are symmetric.
        for _ in 0..200 {
            let g = random_symmetric(&mut r, ring, 2, 3, 2, 3);
            assert!(is_symmetric(&lift_canonical(&g).unwrap()));
        }
    }
}

#[test]
fn division_reconstructs_on_random_instances() {
    let mut r = rng(109);
    for case in 0..500 {
        let ring = if case % 2 == 0 { QQ } else { gf(5) };
        let f = random_poly(&mut r, ring, 2, 2, 3, 5);
        let divisors: Vec<Polynomial> = (0..r.random_range(1..=3))
            .map(|_| random_poly(&mut r, ring, 2, 2, 2, 3))
            .filter(|d| !d.is_zero())
            .collect();
        if divisors.is_empty() {
            continue;
        }
        let (quotients, remainder) = divide(&f, &divisors, MonomialOrder::GrevLex).unwrap();
        let mut rebuilt = remainder.clone();
        for (q, d) in quotients.iter().zip(&divisors) {
            rebuilt = rebuilt.try_add(&q.try_mul(d).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, f);
        // No remainder monomial is divisible by a divisor's leading monomial.
        for d in &divisors {
            let lm = d.leading_term().unwrap().0;
            for (m, _) in remainder.terms() {
                assert!(!lm.divides(m));
            }
        }
    }
}

#[test]
fn membership_cofactors_rebuild_target() {
    let mut r = rng(110);
    for _ in 0..50 {
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| random_poly(&mut r, QQ, 2, 2, 2, 3))
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        // An explicit combination is always a member.
        let mut f = Polynomial::zero(QQ, 2).unwrap();
        for g in &gens {
            f = f
                .try_add(&g.try_mul(&random_poly(&mut r, QQ, 2, 2, 1, 2)).unwrap())
                .unwrap();
        }
        match ideal_member(&f, &gens, MonomialOrder::GrevLex).unwrap() {
            MembershipOutcome::Member { cofactors } => {
                let mut rebuilt = Polynomial::zero(QQ, 2).unwrap();
                for (c, g) in cofactors.iter().zip(&gens) {
                    rebuilt = rebuilt.try_add(&c.try_mul(g).unwrap()).unwrap();
                }
                assert_eq!(rebuilt, f);
            }
            MembershipOutcome::NotMember => panic!("constructed member not found"),
        }
    }
}

/// Widening the truncation beyond the target's column support never changes
/// the multigraded verdict: the filter to the support is complete.
#[test]
fn multidegree_filter_completeness() {
    let mut r = rng(111);
    let mut checked = 0;
    while checked < 50 {
        let ring = if checked % 2 == 0 { QQ } else { gf(2) };
        let rows = r.random_range(1..=2u16);
        let total = r.random_range(1..=3u32);
        let degree = random_multidegree(&mut r, 2, total);
        let g_total = r.random_range(1..=total);
        let g_degree = random_multidegree(&mut r, 2, g_total);
        let g = random_symmetric_component(&mut r, ring, rows, &g_degree);
        if g.is_zero() {
            continue;
        }
        let spec = EquivariantIdealSpec::new(ring, rows, Ambient::SymmetricSubring, vec![g]).unwrap();
        let target = random_component_poly(&mut r, ring, rows, &degree);
        if target.uniform_multidegree().unwrap().is_none() {
            continue;
        }
        let mg = member_multigraded(&target, &spec).unwrap();
        // Wider truncation admits relabelings outside the support.
        let wide = member_truncated(&target, &spec, 4, target.total_degree()).unwrap();
        assert_eq!(
            mg.is_member(),
            wide.is_member(),
            "target {target}: filter missed a wide relabeling"
        );
        checked += 1;
    }
}

#[test]
fn orbit_sums_span_symmetric_components() {
    // Every orbit has size dividing n!.
    let mut r = rng(112);
    for _ in 0..100 {
        let rows = r.random_range(1..=4u16);
        let m = random_monomial(&mut r, rows, 3, 3);
        let orbit = row_orbit(&m, rows).unwrap();
        let factorial: usize = (1..=rows as usize).product();
        assert_eq!(factorial % orbit.len(), 0);
    }
}

#[test]
fn h_family_membership_one_row_chain() {
    // In one row, h_k = h_1 * x[1,2]...x[1,k]: the chain stabilizes at once.
    let spec = EquivariantIdealSpec::h_spec(QQ, 1, &[1]).unwrap();
    for k in 2..=5 {
        let verdict = member_multigraded(&h_family(QQ, 1, k).unwrap(), &spec).unwrap();
        assert!(verdict.is_member(), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// parse(format(f)) is the identity on x-kind polynomials over QQ.
    #[test]
    fn format_parse_round_trip_x(
        terms in prop::collection::vec(
            (
                prop::collection::vec((1u16..=3, 1u32..=4, 1u32..=3), 0..4),
                -9i64..=9,
                1i64..=5,
            ),
            0..6,
        )
    ) {
        let mut poly = Polynomial::zero(QQ, 3).unwrap();
        for (vars, numer, denom) in terms {
            let m = Monomial::from_exps(
                vars.into_iter().map(|(row, col, e)| (Variable::X { row, col }, e)),
            ).unwrap();
            let c = QQ.from_ratio(numer.into(), denom.into()).unwrap();
            poly = poly.try_add(&Polynomial::from_terms(QQ, 3, [(m, c)]).unwrap()).unwrap();
        }
        let text = poly.to_string();
        let parsed = parse_polynomial(&text, QQ, 3).unwrap();
        prop_assert_eq!(parsed, poly);
    }

    /// parse(format(f)) is the identity on t-kind polynomials over GF(7).
    #[test]
    fn format_parse_round_trip_t(
        terms in prop::collection::vec(
            (prop::collection::vec((1u32..=5, 1u32..=3), 0..3), 0i64..=6),
            0..5,
        )
    ) {
        let ring = gf(7);
        let mut poly = Polynomial::zero(ring, 2).unwrap();
        for (vars, coeff) in terms {
            let m = Monomial::from_exps(
                vars.into_iter().map(|(col, e)| (Variable::T { col }, e)),
            ).unwrap();
            poly = poly.try_add(
                &Polynomial::from_terms(ring, 2, [(m, ring.from_i64(coeff))]).unwrap()
            ).unwrap();
        }
        let parsed = parse_polynomial(&poly.to_string(), ring, 2).unwrap();
        prop_assert_eq!(parsed, poly);
    }

    /// d(m * m') = d(m) + d(m') for x-kind monomials.
    #[test]
    fn multidegree_is_additive(
        a in prop::collection::vec((1u16..=3, 1u32..=4, 1u32..=3), 0..5),
        b in prop::collection::vec((1u16..=3, 1u32..=4, 1u32..=3), 0..5),
    ) {
        let ma = Monomial::from_exps(
            a.into_iter().map(|(row, col, e)| (Variable::X { row, col }, e)),
        ).unwrap();
        let mb = Monomial::from_exps(
            b.into_iter().map(|(row, col, e)| (Variable::X { row, col }, e)),
        ).unwrap();
        let product = ma.mul(&mb).unwrap();
        prop_assert_eq!(
            product.multidegree().unwrap(),
            ma.multidegree().unwrap().add(&mb.multidegree().unwrap())
        );
    }

    /// The monomial order is a total order compatible with multiplication.
    #[test]
    fn monomial_order_respects_multiplication(
        a in prop::collection::vec((1u16..=2, 1u32..=3, 1u32..=2), 0..4),
        b in prop::collection::vec((1u16..=2, 1u32..=3, 1u32..=2), 0..4),
        c in prop::collection::vec((1u16..=2, 1u32..=3, 1u32..=2), 0..4),
    ) {
        let build = |v: Vec<(u16, u32, u32)>| Monomial::from_exps(
            v.into_iter().map(|(row, col, e)| (Variable::X { row, col }, e)),
        ).unwrap();
        let (ma, mb, mc) = (build(a), build(b), build(c));
        let ord = ma.cmp(&mb);
        prop_assert_eq!(ma.mul(&mc).unwrap().cmp(&mb.mul(&mc).unwrap()), ord);
        // One is the global minimum.
        prop_assert!(Monomial::one() <= ma);
    }
}
