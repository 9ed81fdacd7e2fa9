mod common;

use common::*;
use proptest::prelude::*;
use sl2_core::casimir::intertwiner_basis;
use sl2_core::duality::{double_dual_up_to_unit, dual_alpha_raw};
use sl2_core::{
    build_family, dual_alpha, dual_rep, duality_pairing_check, endomorphism_basis,
    enumerate_smith_types, find_equivalence, rank1_catalog, rank1_invariant_ideals,
    realize_smith_type, rep_from_phi, rep_transform, smith_type, verify_rep, PolyMatrix, Rank1Type,
    Rational, SkewElement, SmithType, UniPoly,
};

fn catalog_type() -> impl Strategy<Value = Rank1Type> {
    prop::sample::select(Rank1Type::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn catalog_reps_satisfy_all_identities(mu in mu(), gamma in nonzero_rational(), ty in catalog_type()) {
        let r = rank1_catalog(&mu, &gamma, ty).unwrap();
        let report = verify_rep(&r);
        prop_assert!(report.all_ok(), "{:?}", report.failures);
        let expected = (Rational::integer(2) * &mu + Rational::one()).pow(2);
        prop_assert_eq!(report.casimir_scalar, Some(expected));
    }

    #[test]
    fn family_reps_satisfy_all_identities(
        n in 2usize..=4,
        p in int_poly(2, 3).prop_filter("deg >= 1", |p| p.degree().is_some_and(|d| d >= 1)),
        a0 in nonzero_rational(),
        mu in mu(),
    ) {
        let q = build_family(n, &p, &a0, &mu).unwrap();
        prop_assert!(verify_rep(q.rep()).all_ok());
        let det = q.rep().a1().det().unwrap();
        prop_assert!(det == UniPoly::constant(a0.clone()) || det == UniPoly::constant(-&a0));
        prop_assert_eq!(smith_type(q.rep()).unwrap(), SmithType::Zero { l: n, m: 0 });
    }

    #[test]
    fn smith_type_survives_weak_equivalence(
        (ty_idx, g, h) in (0usize..16).prop_flat_map(|i| (Just(i), unimodular(3), unimodular(3))),
        mu in mu(),
    ) {
        let ty = enumerate_smith_types(3)[ty_idx];
        let r = realize_smith_type(&ty, &mu).unwrap();
        let t = rep_transform(&r, &g, &h).unwrap();
        prop_assert!(verify_rep(&t).all_ok());
        if !sl2_core::casimir::is_degenerate_mu(&mu) {
            prop_assert_eq!(smith_type(&t).unwrap(), ty);
        }
    }

    #[test]
    fn duals_swap_types_and_double_dual_returns(
        ty_idx in 0usize..9,
        mu in mu(),
        g in unimodular(2),
    ) {
        prop_assume!(!sl2_core::casimir::is_degenerate_mu(&mu));
        let ty = enumerate_smith_types(2)[ty_idx];
        let r = rep_transform(&realize_smith_type(&ty, &mu).unwrap(), &g, &PolyMatrix::identity(2)).unwrap();
        let d = dual_rep(&r).unwrap();
        prop_assert!(verify_rep(&d).all_ok());
        prop_assert_eq!(smith_type(&d).unwrap(), ty.dual());
        prop_assert_eq!(dual_rep(&d).unwrap(), r);
    }

    #[test]
    fn alpha_duality_is_consistent(
        mu in mu(),
        n in 1usize..=3,
        middle in prop::collection::vec(int_poly(2, 3), 2),
        ends in (nonzero_rational(), nonzero_rational()),
    ) {
        let mut coeffs = vec![UniPoly::constant(ends.0.clone())];
        coeffs.extend(middle.into_iter().take(n - 1));
        coeffs.push(UniPoly::constant(ends.1.clone()));
        let alpha = SkewElement::from_polys(&coeffs);
        let d = dual_alpha(&alpha, &mu).unwrap();
        prop_assert_eq!(d.normalized.length(), alpha.length());
        prop_assert!(d.normalized.is_in_a_plus());
        prop_assert!(duality_pairing_check(&alpha, &d.normalized, &mu));
        prop_assert_eq!(dual_alpha_raw(&d.raw, &mu).unwrap(), alpha.clone());
        prop_assert!(double_dual_up_to_unit(&alpha, &mu).unwrap());
    }
}

#[test]
fn every_stratum_is_realized() {
    for n in 1..=4 {
        for ty in enumerate_smith_types(n) {
            for mu in [Rational::zero(), Rational::new(3, 2), Rational::new(-7, 3)] {
                let r = realize_smith_type(&ty, &mu).unwrap();
                assert!(verify_rep(&r).all_ok());
                assert_eq!(smith_type(&r).unwrap(), ty);
            }
        }
    }
}

#[test]
fn rank_one_invariant_ideals_for_irreducible_types() {
    for k in -6..=6 {
        for d in [1, 2, 3, 7] {
            let mu = Rational::new(k, d);
            for ty in [Rank1Type::I, Rank1Type::IV] {
                let r = rank1_catalog(&mu, &Rational::new(5, 3), ty).unwrap();
                assert!(
                    rank1_invariant_ideals(&r).unwrap().ideals.is_empty(),
                    "{ty:?} at {mu}"
                );
            }
        }
    }
}

#[test]
fn rank_one_ideals_satisfy_both_divisibilities() {
    for k in -8..=8 {
        let mu = Rational::new(k, 2);
        for ty in [Rank1Type::II, Rank1Type::III] {
            let r = rank1_catalog(&mu, &Rational::integer(3), ty).unwrap();
            let a = r.a1().get(0, 0);
            let b = r.a_minus1().get(0, 0);
            for f in rank1_invariant_ideals(&r).unwrap().ideals {
                assert!(f.divides(&(a * &f.shift(1))));
                assert!(f.divides(&(b * &f.shift(-1))));
                assert!(f.is_monic() && !f.is_constant());
            }
        }
    }
}

#[test]
fn large_negative_mu_chains_are_found() {
    // Type II at mu = -10: roots of A_-1 at -9 and of A_1 at 9.
    let mu = Rational::integer(-10);
    let r = rank1_catalog(&mu, &Rational::one(), Rank1Type::II).unwrap();
    let s = rank1_invariant_ideals(&r).unwrap();
    let expected = (-9..=9).fold(UniPoly::one(), |acc, k| {
        &acc * &UniPoly::linear(Rational::integer(-k))
    });
    assert_eq!(s.ideals, vec![expected]);
}

#[test]
fn endomorphisms_of_simple_and_split_reps() {
    let mu = Rational::new(1, 3);
    for ty in Rank1Type::ALL {
        let r = rank1_catalog(&mu, &Rational::integer(-2), ty).unwrap();
        assert_eq!(endomorphism_basis(&r, 5), vec![PolyMatrix::identity(1)]);
    }
    let split = rep_from_phi(&mu, &PolyMatrix::identity(2)).unwrap();
    assert_eq!(endomorphism_basis(&split, 0).len(), 4);
    for phi in endomorphism_basis(&split, 2) {
        assert_eq!(&phi * split.a1(), split.a1() * &phi.shift(1));
    }
}

#[test]
fn equivalences_are_found_for_conjugates() {
    let mu = Rational::zero();
    let fam = build_family(2, &UniPoly::from_ints(&[0, 1]), &Rational::one(), &mu).unwrap();
    let g = PolyMatrix::from_ints(&[&[&[1], &[1, 1]], &[&[], &[1]]]);
    let conj = rep_transform(fam.rep(), &g, &g).unwrap();
    let e = find_equivalence(fam.rep(), &conj, 1).unwrap();
    assert!(e.is_unimodular());
    assert_eq!(&e * fam.rep().a1(), conj.a1() * &e.shift(1));
    // Non-isomorphic reps have no unimodular intertwiner.
    let iv = rank1_catalog(&mu, &Rational::one(), Rank1Type::IV).unwrap();
    let i = rank1_catalog(&mu, &Rational::one(), Rank1Type::I).unwrap();
    assert!(find_equivalence(&iv, &i, 3).is_none());
    for phi in intertwiner_basis(&i, &iv, 3) {
        assert_eq!(&phi * i.a1(), iv.a1() * &phi.shift(1));
        assert!(!phi.is_unimodular());
    }
}
