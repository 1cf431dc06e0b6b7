//! Property-based invariants: ring laws checked through random evaluation,
//! the zero-identity and classification round-trips, and the behavior of
//! rules under zero-identity shifts.

use proptest::prelude::*;

use qint::{
    add_scaled_identity, apply_rule, check_degree_bound, check_functional_equation, classify,
    decompose_zero_identity, generate_sequence, named_rule, parse_poly, quantum_int, rat,
    render_poly, rule_difference, verify_rule, verify_zero_identity, zero_identity_from_uv, Degree,
    Poly, PolyFormat, Rat, RuleName, SeqTable,
};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_rat(), 0..=max_degree + 1).prop_map(Poly::from_coeffs)
}

fn arb_seq(horizon: usize, max_degree: usize) -> impl Strategy<Value = SeqTable> {
    prop::collection::vec(arb_poly(max_degree), horizon..=horizon).prop_map(SeqTable::from_entries)
}

proptest! {
    // ring laws, cross-checked through the evaluation homomorphism
    #[test]
    fn eval_is_ring_homomorphism(a in arb_poly(6), b in arb_poly(6), x in arb_rat()) {
        let sum = &a + &b;
        let product = &a * &b;
        prop_assert_eq!(sum.eval_at(&x), a.eval_at(&x) + b.eval_at(&x));
        prop_assert_eq!(product.eval_at(&x), a.eval_at(&x) * b.eval_at(&x));
    }

    #[test]
    fn degrees_add_under_multiplication(a in arb_poly(6), b in arb_poly(6)) {
        let product = &a * &b;
        match (a.degree(), b.degree()) {
            (Degree::Finite(da), Degree::Finite(db)) => {
                prop_assert_eq!(product.degree(), Degree::Finite(da + db));
            }
            _ => prop_assert!(product.is_zero()),
        }
    }

    #[test]
    fn divrem_recombines_exactly(a in arb_poly(8), b in arb_poly(4)) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.degree() < b.degree());
    }

    #[test]
    fn canonical_form_is_closed(a in arb_poly(6), b in arb_poly(6)) {
        for value in [&a + &b, &a - &b, &a * &b, -&a] {
            let trailing_ok = value.coeffs().last().is_none_or(|c| {
                use num_traits::Zero;
                !c.is_zero()
            });
            prop_assert!(trailing_ok);
        }
    }

    #[test]
    fn parse_render_round_trip(p in arb_poly(7)) {
        let text = render_poly(&p, PolyFormat::Plain);
        prop_assert_eq!(parse_poly(&text).unwrap(), p);
    }

    // Zero identities built from any (U, V) verify, decompose back to the
    // same pair, and satisfy the degree bound.
    #[test]
    fn zero_identity_round_trip(
        u in arb_seq(6, 3),
        v in arb_seq(6, 3),
    ) {
        let zi = zero_identity_from_uv(&u, &v, 6);
        prop_assert!(verify_zero_identity(&zi, 6).passed());
        let (u2, v2) = decompose_zero_identity(&zi, 6).unwrap();
        prop_assert_eq!(u2, u);
        prop_assert_eq!(v2, v);
        prop_assert!(check_degree_bound(&zi, 6));

        // divisibility of the primed families
        for n in 1..=6usize {
            let (_, rem) = zi.u(n).divrem(&quantum_int(n)).unwrap();
            prop_assert!(rem.is_zero());
            let (_, rem) = zi.v(n).divrem(&quantum_int(n)).unwrap();
            prop_assert!(rem.is_zero());
        }
    }

    // Rules built from any (U, V) verify and extract back to the same pair.
    #[test]
    fn classification_round_trip(
        u in arb_seq(5, 3),
        v in arb_seq(5, 3),
    ) {
        let rule = classify::rule_from_uv(&u, &v, 5);
        prop_assert!(verify_rule(&rule, 5).passed());
        let (u2, v2) = classify::extract_uv(&rule, 5).unwrap();
        prop_assert_eq!(&u2, &u);
        prop_assert_eq!(&v2, &v);
        let rebuilt = classify::rule_from_uv(&u2, &v2, 5);
        prop_assert!(rebuilt.same_tables(&rule));

        // normalization agrees with extraction and lands on the
        // fundamental rule
        let result = classify::normalize(&rule, 5);
        prop_assert!(result.is_fundamental);
        prop_assert_eq!(result.u, u);
        prop_assert_eq!(result.v, v);
    }

    // The difference of two verified rules is a zero identity whose
    // decomposition is the difference of the extracted pairs.
    #[test]
    fn rule_difference_decomposes_to_uv_difference(
        u1 in arb_seq(4, 2),
        v1 in arb_seq(4, 2),
        u2 in arb_seq(4, 2),
        v2 in arb_seq(4, 2),
    ) {
        let a = classify::rule_from_uv(&u1, &v1, 4);
        let b = classify::rule_from_uv(&u2, &v2, 4);
        let zi = rule_difference(&a, &b).unwrap();
        prop_assert!(verify_zero_identity(&zi, 4).passed());
        let (du, dv) = decompose_zero_identity(&zi, 4).unwrap();
        for i in 1..=4usize {
            prop_assert_eq!(du.get(i), &(u1.get(i) - u2.get(i)));
            prop_assert_eq!(dv.get(i), &(v1.get(i) - v2.get(i)));
        }
    }

    // rule + lambda * identity stays verified
    #[test]
    fn shifted_rule_still_verifies(
        u in arb_seq(4, 2),
        v in arb_seq(4, 2),
        lambda in arb_rat(),
    ) {
        let rule = named_rule(RuleName::Rule1, 4);
        let zi = zero_identity_from_uv(&u, &v, 4);
        let shifted = add_scaled_identity(&rule, &zi, &lambda).unwrap();
        prop_assert!(verify_rule(&shifted, 4).passed());
    }

    // A verified zero identity with w' = 0 is linear: u_n = -v_m = z.
    #[test]
    fn linear_specialization(z in arb_poly(3)) {
        let horizon = 5;
        let u = SeqTable::from_fn(horizon, |_| z.clone());
        let v = SeqTable::from_fn(horizon, |_| -&z);
        let zi = zero_identity_from_uv(&u, &v, horizon);
        for m in 1..=horizon {
            for n in 1..=horizon {
                prop_assert!(zi.w(m, n).is_zero());
            }
        }
        let (u2, v2) = decompose_zero_identity(&zi, horizon).unwrap();
        for i in 1..=horizon {
            prop_assert_eq!(u2.get(i), &z);
            prop_assert_eq!(v2.get(i), &-&z);
        }
    }

    // soundness of the necessary condition: a seed that survives the
    // empirical probe at horizon >= 4 satisfies A h = B or is trivial
    #[test]
    fn necessary_condition_is_sound(
        u in arb_seq(4, 1),
        v in arb_seq(4, 1),
        h in arb_poly(2),
    ) {
        let rule = classify::rule_from_uv(&u, &v, 4);
        if qint::test_seed(&rule, &h, 4).unwrap() {
            let report = qint::admissibility(&u, &v);
            let satisfied = (&(&report.a * &h) - &report.b).is_zero()
                || h.is_zero()
                || h == Poly::one();
            prop_assert!(satisfied, "A h = B violated by a passing seed");
        }
    }

    // applying a verified rule to the quantum integers is symmetric
    #[test]
    fn verified_rules_commute_on_quantum_integers(
        u in arb_seq(4, 2),
        v in arb_seq(4, 2),
        m in 1usize..=4,
        n in 1usize..=4,
    ) {
        let rule = classify::rule_from_uv(&u, &v, 4);
        let forward = apply_rule(&rule, m, n, &quantum_int(m), &quantum_int(n)).unwrap();
        let backward = apply_rule(&rule, n, m, &quantum_int(n), &quantum_int(m)).unwrap();
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(&forward, &quantum_int(m + n));
    }

    // the generated sequence obeys the general f_2 law
    #[test]
    fn f2_law(u in arb_seq(2, 2), v in arb_seq(2, 2), h in arb_poly(3)) {
        let rule = classify::rule_from_uv(&u, &v, 2);
        let seq = generate_sequence(&rule, &h, 2).unwrap();
        let sum1 = u.get(1) + v.get(1);
        let q_plus_one = Poly::q() + Poly::one();
        let expected = &(&sum1 * &h) + &(&(&q_plus_one - &sum1) * &(&h * &h));
        prop_assert_eq!(seq.f(2), &expected);
    }

    // seeds 0 and 1 always generate solutions
    #[test]
    fn trivial_seeds_always_work(u in arb_seq(6, 2), v in arb_seq(6, 2)) {
        let rule = classify::rule_from_uv(&u, &v, 6);
        for h in [Poly::zero(), Poly::one()] {
            let seq = generate_sequence(&rule, &h, 6).unwrap();
            prop_assert!(check_functional_equation(&rule, &seq, 6).passed());
        }
    }

    // 0 and 1 are roots of the consistency cubic for every (U, V):
    // the constant term is absent and the coefficients sum to zero
    #[test]
    fn cubic_has_trivial_roots(u in arb_seq(2, 3), v in arb_seq(2, 3)) {
        let (a, b, c) = qint::cubic_coefficients(&u, &v);
        prop_assert!((&(&a + &b) + &c).is_zero());
        // the admissibility condition is the cubic divided by x(x - 1)
        let report = qint::admissibility(&u, &v);
        prop_assert_eq!(report.a, a);
        prop_assert_eq!(report.b, c);
    }
}
