//! Randomized invariants over Laurent arithmetic and small rank-3 groups.

use proptest::prelude::*;

use coxeter_hecke::cells::{DPrimeSet, OmegaSet};
use coxeter_hecke::hecke::{t_mult, xi_expand};
use coxeter_hecke::kl::KlTable;
use coxeter_hecke::verify::{run_suite, Analysis, Options};
use coxeter_hecke::{Basis, CoxeterMatrix, GroupBall, GroupProfile, LaurentPoly};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

/// Orders `m(s,t), m(s,r), m(t,r)`, with 0 for infinity.
fn orders() -> impl Strategy<Value = (u32, u32, u32)> {
    let m = prop::sample::select(vec![2u32, 3, 4, 5, 6, 0]);
    (m.clone(), m.clone(), m)
}

/// Triangle groups whose Coxeter graph is complete.
fn complete_orders() -> impl Strategy<Value = (u32, u32, u32)> {
    let m = prop::sample::select(vec![3u32, 4, 5, 6, 0]);
    (m.clone(), m.clone(), m)
}

fn triangle((a, b, c): (u32, u32, u32), radius: usize) -> GroupBall {
    GroupBall::build(&CoxeterMatrix::triangle(a, b, c).unwrap(), radius).unwrap()
}

proptest! {
    #[test]
    fn laurent_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
    }

    #[test]
    fn product_degree_adds(p in poly(), q in poly()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!((&p * &q).degree_v(), Some(p.degree_v().unwrap() + q.degree_v().unwrap()));
    }

    #[test]
    fn basis_expansion_round_trips(c in prop::collection::vec(-4i64..=4, 0..6), eta in any::<bool>()) {
        let basis = if eta { Basis::Eta } else { Basis::Xi };
        let p = coxeter_hecke::BasisExpansion { basis, coeffs: c }.to_laurent();
        prop_assert_eq!(p.expand_in(basis).unwrap().to_laurent(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ball_is_closed_under_neighbors(m in orders(), radius in 3usize..=6) {
        let ball = triangle(m, radius);
        for w in ball.elements() {
            prop_assert_eq!(ball.parse(&ball.format(w)).unwrap(), w);
            prop_assert_eq!(ball.inverse(ball.inverse(w)), w);
            prop_assert_eq!(ball.length(ball.inverse(w)), ball.length(w));
            if ball.length(w) < radius {
                for s in 0..3 {
                    for n in [ball.left(w, s), ball.right(w, s)] {
                        let n = n.expect("neighbor inside the ball");
                        prop_assert_eq!(ball.length(n).abs_diff(ball.length(w)), 1);
                    }
                }
            }
        }
        prop_assert_eq!(triangle(m, radius).content_hash(), ball.content_hash());
    }

    #[test]
    fn multiplication_is_associative(m in orders(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let ball = triangle(m, 6);
        let short: Vec<_> = ball.up_to(2).collect();
        let [x, y, z] = [0, 1, 2].map(|i| short[picks[i].index(short.len())]);
        let left = ball.multiply(ball.multiply(x, y).unwrap(), z).unwrap();
        let right = ball.multiply(x, ball.multiply(y, z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Structure constants are polynomials in xi with non-negative
    /// coefficients, bounded degree and the rotation symmetry.
    #[test]
    fn structure_constants(m in orders(), picks in prop::collection::vec(any::<prop::sample::Index>(), 2)) {
        let ball = triangle(m, 6);
        let short: Vec<_> = ball.up_to(3).collect();
        let (w, u) = (short[picks[0].index(short.len())], short[picks[1].index(short.len())]);
        for (v, p) in t_mult(&ball, w, u).unwrap().iter() {
            let f = xi_expand(p);
            prop_assert_eq!(&f.to_laurent(), p);
            prop_assert!(f.coeffs.iter().all(|&c| c >= 0));
            let bound = ball.length(w).min(ball.length(u)).min(ball.length(v));
            prop_assert!(f.degree().unwrap() <= bound);
            let vi = ball.inverse(v);
            if ball.length(u) + ball.length(vi) <= ball.radius() {
                let rotated = t_mult(&ball, u, vi).unwrap().coeff(ball.inverse(w));
                prop_assert_eq!(&rotated, p);
            }
        }
    }

    #[test]
    fn kl_basis_is_unitriangular_and_bar_invariant(m in orders(), radius in 3usize..=5) {
        let ball = triangle(m, radius);
        let kl = KlTable::build(&ball);
        for w in ball.elements() {
            let c = kl.c_vector(w);
            prop_assert_eq!(c.coeff(w), LaurentPoly::one());
            let support: Vec<_> = c.support().collect();
            prop_assert_eq!(support, ball.bruhat_interval(w));
        }
        prop_assert_eq!(kl.check_bar_invariance(&ball, radius), None);
    }

    #[test]
    fn word_suites_hold_on_random_groups(m in orders(), radius in 4usize..=7) {
        let ball = triangle(m, radius);
        let mut options = Options::for_ball(&ball);
        options.deterministic = true;
        let a = Analysis::new(ball, options);
        for id in ["WORD_LEMMA_2_2", "DESCENT_PARABOLIC", "F_IDENTITIES", "DEG_LEMMA_2_7", "DEG_LEMMA_2_8"] {
            let r = run_suite(&a, id).unwrap();
            prop_assert!(r.passed(), "{} {:?}", id, r.witnesses);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn truncated_a_function_is_bounded(m in complete_orders(), radius in 4usize..=7) {
        let ball = triangle(m, radius);
        let a0 = GroupProfile::of(ball.matrix()).a0;
        let a = Analysis::new(ball, Options::for_ball(&triangle(m, radius)));
        let afun = a.afun().unwrap();
        for w in a.ball().elements() {
            let v = afun.get(w);
            prop_assert!(v.a_hat <= a.ball().length(w));
            prop_assert!(v.a_hat <= a0);
        }
        let r = run_suite(&a, "BOUND_THM_2_1").unwrap();
        prop_assert!(r.passed() && r.skipped == 0);
    }

    #[test]
    fn distinguished_involutions_square_to_one(m in complete_orders(), radius in 6usize..=9) {
        let ball = triangle(m, radius);
        let Ok(omega) = OmegaSet::lowest_cell(&ball) else { return Ok(()) };
        for d in DPrimeSet::build(&ball, &omega).involutions() {
            prop_assert_eq!(ball.inverse(d), d);
        }
    }
}
