use std::collections::HashMap;

use super::*;
use crate::cells::OmegaSet;
use crate::coxeter::CoxeterMatrix;
use crate::laurent::{Basis, LaurentPoly};

fn ball(preset: &str, radius: usize) -> GroupBall {
    GroupBall::build(&CoxeterMatrix::preset(preset).unwrap(), radius).unwrap()
}

/// Classical recursion for `P_{x,w}` as a plain `q`-polynomial, with `s` a
/// left descent of `w` and `v = sw`:
/// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - Σ μ(z,v) q^{(l(w)-l(z))/2} P_{x,z}`,
/// summing over `z < v` with `sz < z`, where `c = 1` iff `sx < x`.
struct KlOracle<'a> {
    ball: &'a GroupBall,
    memo: HashMap<(Elem, Elem), Vec<i64>>,
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

impl<'a> KlOracle<'a> {
    fn p(&mut self, x: Elem, w: Elem) -> Vec<i64> {
        let b = self.ball;
        if !b.bruhat_leq(x, w) {
            return Vec::new();
        }
        if x == w {
            return vec![1];
        }
        if let Some(p) = self.memo.get(&(x, w)) {
            return p.clone();
        }
        let s = b.left_descents(w).iter().next().unwrap();
        let v = b.left(w, s).unwrap();
        let sx = b.left(x, s).unwrap();
        let c = usize::from(b.length(sx) < b.length(x));
        let mut out = Vec::new();
        poly_add(&mut out, &self.p(sx, v), 1 - c, 1);
        poly_add(&mut out, &self.p(x, v), c, 1);
        for z in b.elements() {
            if z == v || !b.bruhat_leq(z, v) || !b.left_descents(z).contains(s) {
                continue;
            }
            let mu = self.mu(z, v);
            if mu != 0 {
                let shift = (b.length(w) - b.length(z)) / 2;
                poly_add(&mut out, &self.p(x, z), shift, -mu);
            }
        }
        self.memo.insert((x, w), out.clone());
        out
    }

    fn mu(&mut self, z: Elem, v: Elem) -> i64 {
        let d = self.ball.length(v) - self.ball.length(z);
        if d.is_multiple_of(2) {
            return 0;
        }
        self.p(z, v).get((d - 1) / 2).copied().unwrap_or(0)
    }
}

fn q_poly(p: &[i64]) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(i, &c)| (2 * i as i32, c)))
}

#[test]
fn matches_classical_recursion() {
    for (preset, radius) in [("a2tilde", 7), ("triangle:3,4,6", 7), ("a3", 6), ("triangle:3,4,0", 6), ("i2:5", 5)] {
        let b = ball(preset, radius);
        let kl = KlTable::build(&b);
        let mut oracle = KlOracle { ball: &b, memo: HashMap::new() };
        for w in b.elements() {
            for y in b.elements() {
                assert_eq!(kl.kl_poly(&b, y, w), q_poly(&oracle.p(y, w)), "{preset}: P({}, {})", b.format(y), b.format(w));
            }
        }
    }
}

#[test]
fn a3_has_a_nontrivial_polynomial() {
    // s2 ≤ s2.s1.s3.s2 has P = 1 + q in A3 (a singular Schubert variety).
    let b = ball("a3", 6);
    let kl = KlTable::build(&b);
    let y = b.parse("s2").unwrap();
    let w = b.parse("s2.s1.s3.s2").unwrap();
    assert_eq!(kl.kl_poly(&b, y, w), LaurentPoly::from_terms([(0, 1), (2, 1)]));
    // l(w) - l(y) = 3, so μ is the coefficient of q.
    assert_eq!(kl.mu(y, w), 1);
}

#[test]
fn small_examples() {
    let b = ball("a2tilde", 6);
    let kl = KlTable::build(&b);
    let e = b.identity();
    let s = b.parse("s").unwrap();
    assert_eq!(*kl.c_vector(e), HeckeVec::unit(HeckeBasis::T, e));
    let want = HeckeVec::from_terms(HeckeBasis::T, [(s, LaurentPoly::one()), (e, LaurentPoly::v_inv())]);
    assert_eq!(*kl.c_vector(s), want);
    let sts = b.parse("s.t.s").unwrap();
    assert_eq!(kl.kl_poly(&b, e, sts), LaurentPoly::one());
    assert_eq!(kl.mu(e, sts), 0);
    for w in b.elements() {
        assert_eq!(kl.kl_poly(&b, w, w), LaurentPoly::one());
        assert_eq!(kl.mu(w, w), 0);
        for y in b.elements() {
            let p = kl.kl_poly(&b, y, w);
            assert_eq!(p.is_zero(), !b.bruhat_leq(y, w));
            if b.bruhat_leq(y, w) && b.length(w) == b.length(y) + 1 {
                assert_eq!(kl.mu(y, w), 1);
                assert_eq!(p, LaurentPoly::one());
            }
            if y != w && !p.is_zero() {
                let deg = p.degree(crate::laurent::Unit::Q).unwrap().unwrap();
                assert!(2 * deg < (b.length(w) - b.length(y)) as i32);
            }
        }
    }
}

#[test]
fn dihedral_polynomials_are_one() {
    for m in 3..=6 {
        let b = ball(&format!("i2:{m}"), 2 * m);
        let kl = KlTable::build(&b);
        for w in b.elements() {
            for y in b.elements() {
                let p = kl.kl_poly(&b, y, w);
                if b.bruhat_leq(y, w) {
                    assert_eq!(p, LaurentPoly::one());
                }
                let adjacent = b.bruhat_leq(y, w) && b.length(w) == b.length(y) + 1;
                assert_eq!(kl.mu(y, w) == 1, adjacent);
            }
        }
    }
}

#[test]
fn bar_invariance() {
    for (preset, radius) in [("a2tilde", 6), ("triangle:3,4,6", 6), ("universal:3", 5)] {
        let b = ball(preset, radius);
        let kl = KlTable::build(&b);
        assert_eq!(kl.check_bar_invariance(&b, radius), None, "{preset}");
    }
}

#[test]
fn serial_and_parallel_builds_agree() {
    let b = ball("triangle:3,4,6", 8);
    let p = KlTable::build_with(&b, true);
    let s = KlTable::build_with(&b, false);
    for w in b.elements() {
        assert_eq!(p.c_vector(w), s.c_vector(w));
        assert_eq!(p.mu_below(w), s.mu_below(w));
    }
}

#[test]
fn w_graph_route_matches_t_route() {
    for (preset, radius) in [("a2tilde", 8), ("triangle:3,4,0", 7), ("i2:4", 8), ("a3", 6)] {
        let b = ball(preset, radius);
        let kl = KlTable::build(&b);
        for x in b.up_to(radius / 2 + 1) {
            let row = CProductRow::build(&b, &kl, x, radius - b.length(x)).unwrap();
            for y in b.up_to(radius - b.length(x)) {
                let t = c_mult_via_t(&b, &kl, x, y).unwrap();
                assert_eq!(row.get(y).unwrap(), &t, "{preset}: {} * {}", b.format(x), b.format(y));
                assert_eq!(c_mult(&b, &kl, x, y).unwrap(), t);
                for (_, h) in t.iter() {
                    assert!(h.expand_in(Basis::Eta).is_ok());
                }
            }
        }
    }
}

#[test]
fn structure_constant_examples() {
    let b = ball("a2tilde", 6);
    let kl = KlTable::build(&b);
    let s = b.parse("s").unwrap();
    let h = h_coeff(&b, &kl, s, s, s, 1, Exactness::Exact).unwrap();
    assert_eq!(h.h.coeffs, vec![0, 1]);
    assert_eq!(h.gamma, 1);
    assert_eq!(h.delta, 0);
    for m in 3..=6 {
        let b = ball(&format!("i2:{m}"), 2 * m);
        let kl = KlTable::build(&b);
        let w0 = b.from_word(&crate::coxeter::alternating_word(0, 1, m)).unwrap();
        let h = h_coeff(&b, &kl, w0, w0, w0, m, Exactness::Exact).unwrap();
        assert_eq!(h.h.degree(), Some(m));
        assert_eq!(h.gamma, 1);
    }
}

#[test]
fn h_of_inverse_pair_through_longest_element() {
    // x with l(x w0) = l(x) - l(w0): h_{x⁻¹, x, w0} has η-degree l(w0).
    let b = ball("a2tilde", 10);
    let kl = KlTable::build(&b);
    let w0 = b.parse("s.t.s").unwrap();
    let mut checked = 0;
    for x in b.up_to(5) {
        let Ok(xw0) = b.multiply(x, w0) else { continue };
        if b.length(xw0) + 3 != b.length(x) {
            continue;
        }
        let h = h_coeff(&b, &kl, b.inverse(x), x, w0, 3, Exactness::Exact).unwrap();
        assert_eq!(h.h.degree(), Some(3), "{}", b.format(x));
        checked += 1;
    }
    assert!(checked > 3);
}

#[test]
fn a_function_examples() {
    let b = ball("a2tilde", 8);
    let kl = KlTable::build(&b);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let table = AFunctionTable::build(&b, &kl, 8, 3, true, Some(&omega)).unwrap();
    let e = table.get(b.identity());
    assert_eq!((e.a_hat, e.exactness), (0, Exactness::Exact));
    let s = b.parse("s").unwrap();
    let a = table.get(s);
    assert_eq!((a.a_hat, a.exactness), (1, Exactness::LowerBound));
    assert_eq!(a.witnesses[0], PairWitness { w: s, u: s });
    let sts = b.parse("s.t.s").unwrap();
    let a = table.get(sts);
    assert_eq!((a.a_hat, a.exactness, a.scanned_h), (3, Exactness::Exact, Some(3)));
    assert_eq!(a.omega_witness, Some(PairWitness { w: sts, u: sts }));
    for v in table.values.iter() {
        assert!(v.a_hat <= 3);
        assert!(v.scanned_h.unwrap_or(0) <= b.length(v.v));
    }
}

#[test]
fn a_function_is_monotone_in_the_budget() {
    let b = ball("triangle:3,4,0", 8);
    let kl = KlTable::build(&b);
    let small = AFunctionTable::build(&b, &kl, 5, 4, true, None).unwrap();
    let large = AFunctionTable::build(&b, &kl, 8, 4, true, None).unwrap();
    for v in b.elements() {
        assert!(small.get(v).a_hat <= large.get(v).a_hat);
    }
}

#[test]
fn gamma_table_unit_in_dihedral_group() {
    let b = ball("i2:3", 6);
    let kl = KlTable::build(&b);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let w0 = b.parse("s.t.s").unwrap();
    let t = GammaTable::build(&b, &kl, &omega, &[w0], JTableKind::Unital { w0 }, 6).unwrap();
    assert_eq!(t.get(w0, w0, w0), Some(1));
    assert!(t.unit_violations.is_empty());
    let s = b.parse("s").unwrap();
    let err = GammaTable::build(&b, &kl, &omega, &[s], JTableKind::Omega, 6).unwrap_err();
    assert!(matches!(err, crate::Error::NotInOmega(_)));
}

#[test]
fn gamma_symmetry_on_a2tilde() {
    let b = ball("a2tilde", 10);
    let kl = KlTable::build(&b);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let elems: Vec<Elem> = omega.members().filter(|&w| b.length(w) <= 5).collect();
    let t = GammaTable::build(&b, &kl, &omega, &elems, JTableKind::Omega, 10).unwrap();
    let mut checked = 0;
    for &w in &elems {
        for &u in &elems {
            for &v in &elems {
                let (Some(g), Some(vi), Some(wi)) = (t.get(w, u, v), Some(b.inverse(v)), Some(b.inverse(w))) else {
                    continue;
                };
                if let Some(g2) = t.get(u, vi, wi) {
                    assert_eq!(g, g2);
                    checked += 1;
                }
                assert!(g >= 0);
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let b = ball("triangle:3,4,6", 7);
    let cache = KlCache::in_dir(dir.path(), &b);
    let (cold, hit) = cache.load_or_build(&b, true).unwrap();
    assert!(!hit);
    let (warm, hit) = cache.load_or_build(&b, true).unwrap();
    assert!(hit);
    for w in b.elements() {
        assert_eq!(cold.c_vector(w), warm.c_vector(w));
        assert_eq!(cold.mu_below(w), warm.mu_below(w));
    }
    // A smaller ball reuses the larger table.
    let small = ball("triangle:3,4,6", 5);
    let loaded = KlCache::new(cache.path()).load(&small).unwrap().unwrap();
    assert_eq!(loaded.len(), small.len());
    // A different matrix is rejected.
    let other = ball("a2tilde", 5);
    assert!(matches!(KlCache::new(cache.path()).load(&other), Err(crate::Error::Cache(_))));
    // A larger radius is a miss.
    let big = ball("triangle:3,4,6", 8);
    assert!(KlCache::new(cache.path()).load(&big).unwrap().is_none());
    assert!(cache.clear().unwrap());
}
