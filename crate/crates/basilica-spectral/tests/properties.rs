//! Randomized invariants for the arithmetic kernels: polynomial algebra,
//! certified sign evaluation, and exact root counting.

use basilica_spectral::poly::IntPoly;
use basilica_spectral::sturm::sturm_count;
use proptest::collection::vec;
use proptest::prelude::*;
use rug::Rational;

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    vec(-100i64..=100, 1..=max_len).prop_map(|cs| IntPoly::from_i64s(&cs))
}

fn monic(max_len: usize) -> impl Strategy<Value = IntPoly> {
    vec(-100i64..=100, 1..=max_len).prop_map(|mut cs| {
        cs.push(1);
        IntPoly::from_i64s(&cs)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=1000).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #[test]
    fn mul_distributes_over_add(f in poly(8), g in poly(8), h in poly(8)) {
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn mul_is_commutative(f in poly(8), g in poly(8)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn exact_div_roundtrip(f in poly(8), d in monic(6)) {
        let prod = f.mul(&d);
        prop_assert_eq!(prod.exact_div(&d).unwrap(), f.clone());
        prop_assert_eq!(prod.exact_div_monic_fast(&d).unwrap(), f);
    }

    #[test]
    fn monic_pseudo_rem_is_true_remainder(f in poly(8), d in monic(4)) {
        // f − r must be divisible by d, and deg r < deg d.
        let r = f.pseudo_rem(&d);
        if !r.is_zero() {
            prop_assert!(r.degree() < d.degree());
        }
        prop_assert!(f.sub(&r).exact_div(&d).is_ok());
    }

    #[test]
    fn derivative_is_linear(f in poly(8), g in poly(8)) {
        prop_assert_eq!(f.add(&g).derivative(), f.derivative().add(&g.derivative()));
    }

    #[test]
    fn gcd_divides_both(f in poly(6), g in poly(6)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = f.gcd(&g);
        prop_assert!(f.exact_div(&d).is_ok());
        prop_assert!(g.exact_div(&d).is_ok());
    }

    #[test]
    fn squarefree_part_has_simple_roots(f in poly(5)) {
        prop_assume!(!f.is_zero() && f.degree() >= 1);
        let sq = f.square().mul(&f);
        let sf = sq.squarefree_part();
        // The squarefree part of f³ has no repeated factor, and it carries
        // the same distinct roots as f: same degree as f's own part.
        prop_assert!(sf.gcd(&sf.derivative()).degree() == 0);
        prop_assert_eq!(sf.degree(), f.squarefree_part().degree());
    }

    #[test]
    fn certified_sign_matches_exact(f in poly(10), x in rational()) {
        prop_assert_eq!(f.certified_sign(&x), f.sign_at(&x));
    }

    #[test]
    fn eval_consistency(f in poly(8), x in rational()) {
        // Horner over rationals agrees in sign with the scaled integer path.
        let v = f.eval_rational(&x);
        prop_assert_eq!(v.cmp0() as i32, f.sign_at(&x));
    }

    #[test]
    fn sturm_counts_linear_factor_products(mut roots in vec(-12i64..=12, 1..=5)) {
        roots.sort_unstable();
        roots.dedup();
        let mut f = IntPoly::one();
        for r in &roots {
            f = f.mul(&IntPoly::from_i64s(&[-r, 1]));
        }
        // Count over (lo, hi] with non-root endpoints.
        let lo = Rational::from((-51, 2));
        let hi = Rational::from((51, 2));
        prop_assert_eq!(sturm_count(&f, &lo, &hi), roots.len());
        let mid = Rational::from((1, 2));
        let below = roots.iter().filter(|&&r| Rational::from(r) <= mid).count();
        prop_assert_eq!(sturm_count(&f, &lo, &mid), below);
    }

    #[test]
    fn compose_linear_evaluates(f in poly(6), a in -20i64..=20, b in -20i64..=20, x in rational()) {
        use rug::Integer;
        // g(x) = f(a·x + b) pointwise.
        let g = f.compose_linear(&Integer::from(a), &Integer::from(b));
        let y = Rational::from(&x * Integer::from(a)) + Integer::from(b);
        prop_assert_eq!(g.eval_rational(&x), f.eval_rational(&y));
    }
}
