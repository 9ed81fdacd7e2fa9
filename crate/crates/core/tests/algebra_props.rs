mod common;

use common::*;
use proptest::prelude::*;
use sl2_core::skew::y_power_factor;
use sl2_core::{pi_mu, RatFunc, Rational, SkewElement, UniPoly};

proptest! {
    #[test]
    fn polynomial_ring_axioms(a in poly(4), b in poly(4), c in poly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, UniPoly::zero());
    }

    #[test]
    fn shift_is_a_ring_automorphism(a in poly(4), b in poly(4), k in -5i64..=5) {
        prop_assert_eq!((&a * &b).shift(k), &a.shift(k) * &b.shift(k));
        prop_assert_eq!((&a + &b).shift(k), &a.shift(k) + &b.shift(k));
        prop_assert_eq!(a.shift(k).shift(-k), a.clone());
        prop_assert_eq!(a.shift(k).shift(2), a.shift(k + 2));
    }

    #[test]
    fn pi_difference_is_minus_two_z(mu in mu()) {
        let pi = pi_mu(&mu);
        prop_assert_eq!(&pi - &pi.shift(1), UniPoly::from_ints(&[0, -2]));
    }

    #[test]
    fn division_with_remainder(a in poly(6), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in poly(4), b in poly(4), c in poly(2)) {
        prop_assume!(!(a.is_zero() && b.is_zero()) && !c.is_zero());
        let ac = &a * &c;
        let bc = &b * &c;
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn rational_functions_form_a_field(a in poly(3), b in poly(3), c in poly(3), d in poly(3)) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inv().unwrap(), x.clone());
        }
        prop_assert!(x.den().is_monic());
        prop_assert_eq!((&x * &y).shift(3), &x.shift(3) * &y.shift(3));
    }

    #[test]
    fn skew_product_is_associative(a in skew(-2, 2, 2), b in skew(-2, 2, 2), c in skew(-1, 1, 1)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn skew_length_is_additive(a in skew(-2, 2, 2), b in skew(-2, 2, 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).length().unwrap(), a.length().unwrap() + b.length().unwrap());
    }

    #[test]
    fn right_and_left_division_round_trip(a in skew(-3, 4, 2), b in skew(-1, 2, 2)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.right_divide(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.length() < b.length());
        let (q, r) = a.left_divide(&b).unwrap();
        prop_assert_eq!(&(&b * &q) + &r, a.clone());
        prop_assert!(r.is_zero() || r.length() < b.length());
    }

    #[test]
    fn multiples_divide_exactly(x in skew(-2, 2, 2), b in skew(0, 2, 2)) {
        prop_assume!(!b.is_zero());
        let (q, r) = (&x * &b).right_divide(&b).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, x);
    }

    #[test]
    fn a_presentation_round_trip(
        mu in mu(),
        xs in prop::collection::vec(int_poly(2, 4), 0..3),
        ys in prop::collection::vec(int_poly(2, 4), 0..3),
    ) {
        let mut e = SkewElement::from_polys(&xs);
        for (i, p) in ys.iter().enumerate() {
            let yi = SkewElement::y_pow(&mu, (i + 1) as u32);
            e = &e + &(&SkewElement::poly_term(p.clone(), 0) * &yi);
        }
        let pres = e.to_a_presentation(&mu).unwrap();
        prop_assert_eq!(pres.to_skew(), e.clone());
        prop_assert!(e.is_in_a(&mu));
    }

    #[test]
    fn y_powers_have_the_product_coefficient(mu in mu(), i in 1u32..4) {
        let y = SkewElement::y_pow(&mu, i);
        prop_assert_eq!(y.coeff(-(i as i64)), RatFunc::from_poly(y_power_factor(&mu, i)));
        let direct = (0..i).fold(SkewElement::one(), |acc, _| &acc * &SkewElement::y(&mu));
        prop_assert_eq!(direct, y);
    }
}

#[test]
fn casimir_element_acts_by_its_scalar_in_b() {
    // 4((z - 1/2)^2 - Y X) = (2 mu + 1)^2 for Y X = pi_mu(z).
    for k in -10..=10 {
        let mu = Rational::new(k, 3);
        let yx = &SkewElement::y(&mu) * &SkewElement::x();
        let half = UniPoly::linear(Rational::new(-1, 2));
        let c = &SkewElement::poly_term(&half * &half, 0) - &yx;
        let expected = (Rational::integer(2) * &mu + Rational::one()).pow(2);
        let got = c.coeff(0).scale(&Rational::integer(4));
        assert_eq!(got, RatFunc::constant(expected));
    }
}
