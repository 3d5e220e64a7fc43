//! The Hecke algebra in the normalized standard basis `T̃_w = v^{-l(w)} T_w`.
//!
//! Right multiplication by a generator:
//! `T̃_w·T̃_s = T̃_{ws}` if `ws > w`, else `T̃_{ws} + ξ·T̃_w` (`ξ = v - v⁻¹`).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{Elem, GroupBall, Side};
use crate::error::{Error, Result};
use crate::laurent::{Basis, BasisExpansion, LaurentPoly};

/// Which basis a [`HeckeVec`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HeckeBasis {
    /// Normalized standard basis `T̃`.
    T,
    /// Kazhdan-Lusztig basis `C`.
    C,
}

/// Finitely supported map element -> Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeVec {
    basis: HeckeBasis,
    terms: BTreeMap<Elem, LaurentPoly>,
}

impl HeckeVec {
    pub fn zero(basis: HeckeBasis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element indexed by `w`.
    pub fn unit(basis: HeckeBasis, w: Elem) -> Self {
        let mut h = Self::zero(basis);
        h.terms.insert(w, LaurentPoly::one());
        h
    }

    pub fn from_terms<I: IntoIterator<Item = (Elem, LaurentPoly)>>(basis: HeckeBasis, terms: I) -> Self {
        let mut h = Self::zero(basis);
        for (w, p) in terms {
            h.add_term(w, &p);
        }
        h
    }

    pub fn basis(&self) -> HeckeBasis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the basis element `w` (zero when absent).
    pub fn coeff(&self, w: Elem) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: Elem) -> Option<&LaurentPoly> {
        self.terms.get(&w)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Elem, &LaurentPoly)> {
        self.terms.iter().map(|(&w, p)| (w, p))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, w: Elem, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &HeckeVec, factor: &LaurentPoly) {
        debug_assert_eq!(self.basis, other.basis);
        for (w, p) in other.iter() {
            self.add_term(w, &(factor * p));
        }
    }

    pub fn scaled(&self, factor: &LaurentPoly) -> HeckeVec {
        let mut out = HeckeVec::zero(self.basis);
        out.add_scaled(self, factor);
        out
    }

    pub fn remove(&mut self, w: Elem) -> Option<LaurentPoly> {
        self.terms.remove(&w)
    }

    pub fn max_length(&self, ball: &GroupBall) -> Option<usize> {
        self.support().map(|w| ball.length(w)).max()
    }
}

/// `h·T̃_s` (right) or `T̃_s·h` (left), for `h` in the `T̃` basis.
pub fn t_mult_gen(ball: &GroupBall, h: &HeckeVec, s: usize, side: Side) -> Result<HeckeVec> {
    debug_assert_eq!(h.basis(), HeckeBasis::T);
    let xi = LaurentPoly::xi();
    let mut out = HeckeVec::zero(HeckeBasis::T);
    for (w, p) in h.iter() {
        let ws = ball.neighbor(w, s, side).ok_or_else(|| Error::BallExceeded {
            radius: ball.radius(),
            detail: format!(
                "support element {} times generator {} ({:?})",
                ball.format(w),
                ball.matrix().gen_name(s),
                side
            ),
        })?;
        out.add_term(ws, p);
        if ball.length(ws) < ball.length(w) {
            out.add_term(w, &(&xi * p));
        }
    }
    Ok(out)
}

/// Largest usable pair budget: the radius, or everything when the ball is a
/// whole finite group.
pub fn effective_budget(ball: &GroupBall, pair_budget: usize) -> usize {
    if ball.is_closed() {
        2 * ball.max_length()
    } else {
        pair_budget.min(ball.radius())
    }
}

fn check_budget(ball: &GroupBall, x: Elem, y: Elem) -> Result<()> {
    if ball.length(x) + ball.length(y) > effective_budget(ball, usize::MAX) {
        return Err(Error::BallExceeded {
            radius: ball.radius(),
            detail: format!(
                "l({}) + l({}) = {} exceeds the radius",
                ball.format(x),
                ball.format(y),
                ball.length(x) + ball.length(y)
            ),
        });
    }
    Ok(())
}

/// `T̃_x · T̃_y = Σ_z f_{x,y,z} T̃_z`, multiplying letter by letter along the
/// ShortLex word of `y`.
pub fn t_mult(ball: &GroupBall, x: Elem, y: Elem) -> Result<HeckeVec> {
    check_budget(ball, x, y)?;
    let mut h = HeckeVec::unit(HeckeBasis::T, x);
    for &s in ball.word(y) {
        h = t_mult_gen(ball, &h, s, Side::Right)?;
    }
    Ok(h)
}

/// Same product computed from the left along the word of `x`.
pub fn t_mult_left(ball: &GroupBall, x: Elem, y: Elem) -> Result<HeckeVec> {
    check_budget(ball, x, y)?;
    let mut h = HeckeVec::unit(HeckeBasis::T, y);
    for &s in ball.word(x).iter().rev() {
        h = t_mult_gen(ball, &h, s, Side::Left)?;
    }
    Ok(h)
}

/// Expands a structure constant in `ξ`; this must always succeed.
pub fn xi_expand(p: &LaurentPoly) -> BasisExpansion {
    p.expand_in(Basis::Xi)
        .unwrap_or_else(|e| panic!("structure constant not a polynomial in xi: {e}"))
}

/// `f_{x,y,z}` as a polynomial in `ξ`.
pub fn f_coeff(ball: &GroupBall, x: Elem, y: Elem, z: Elem) -> Result<BasisExpansion> {
    let h = t_mult(ball, x, y)?;
    Ok(xi_expand(&h.coeff(z)))
}

/// `T̃_x·T̃_y` for every `y` with `l(y) <= room`, indexed by id. Walks the
/// ShortLex prefix tree of `y`, so each product costs one generator step.
pub fn t_row(ball: &GroupBall, x: Elem, room: usize) -> Vec<HeckeVec> {
    let room = room.min(ball.max_length());
    let mut prods: Vec<HeckeVec> = Vec::with_capacity(ball.count_up_to(room));
    prods.push(HeckeVec::unit(HeckeBasis::T, x));
    for y in ball.up_to(room).skip(1) {
        let s = *ball.word(y).last().unwrap();
        let parent = ball.right(y, s).unwrap();
        let next = t_mult_gen(ball, &prods[parent.index()], s, Side::Right)
            .expect("products within the budget stay in the ball");
        prods.push(next);
    }
    prods
}

/// One row of a product table: `(z, f_{x,y,z})` for nonzero constants.
pub type ProductRow = Vec<(Elem, BasisExpansion)>;

/// `T̃_x·T̃_y` for every pair with `l(x) + l(y) <= budget`.
pub struct ProductTable {
    budget: usize,
    /// `rows[x]` holds `(y, row)` in id order.
    rows: Vec<Vec<(Elem, ProductRow)>>,
}

impl ProductTable {
    /// Rows for different `x` run in parallel and are collected in id order.
    pub fn build(ball: &GroupBall, budget: usize) -> Self {
        let budget = effective_budget(ball, budget);
        let rows = ball
            .up_to(budget)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|x| {
                t_row(ball, x, budget - ball.length(x))
                    .into_iter()
                    .enumerate()
                    .map(|(y, h)| {
                        let row = h.iter().map(|(z, p)| (z, xi_expand(p))).collect();
                        (Elem(y as u32), row)
                    })
                    .collect()
            })
            .collect();
        Self { budget, rows }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Row for `(x, y)`, or `None` outside the budget.
    pub fn row(&self, x: Elem, y: Elem) -> Option<&ProductRow> {
        let r = self.rows.get(x.index())?;
        r.get(y.index()).map(|(_, row)| row)
    }

    /// `f_{x,y,z}`; `None` when `(x, y)` is outside the budget.
    pub fn f(&self, x: Elem, y: Elem, z: Elem) -> Option<Option<&BasisExpansion>> {
        self.row(x, y).map(|row| {
            row.binary_search_by_key(&z, |t| t.0)
                .ok()
                .map(|i| &row[i].1)
        })
    }

    /// All `(x, y, row)` in scan order.
    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem, &ProductRow)> {
        self.rows.iter().enumerate().flat_map(|(x, r)| {
            r.iter().map(move |(y, row)| (Elem(x as u32), *y, row))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Result of the `ξ`-degree survey of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FDegreeSurvey {
    pub budget: usize,
    pub pairs_scanned: usize,
    /// Pairs with `l(x) + l(y) <= radius` left out by a smaller budget.
    pub pairs_skipped: usize,
    pub max_degree: Option<usize>,
    /// Up to ten triples `(x, y, z)` attaining the maximum, in scan order.
    pub witnesses: Vec<(Elem, Elem, Elem)>,
}

pub const MAX_WITNESSES: usize = 10;

/// Number of pairs with `l(x) + l(y) <= budget`.
pub fn pair_count(ball: &GroupBall, budget: usize) -> usize {
    ball.up_to(budget)
        .map(|x| ball.count_up_to(budget - ball.length(x)))
        .sum()
}

/// Running maximum with the first witnesses attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxTracker<W> {
    pub max: Option<usize>,
    pub witnesses: Vec<W>,
}

impl<W> Default for MaxTracker<W> {
    fn default() -> Self {
        Self {
            max: None,
            witnesses: Vec::new(),
        }
    }
}

impl<W> MaxTracker<W> {
    pub fn offer(&mut self, degree: Option<usize>, witness: impl FnOnce() -> W) {
        if degree.is_none() {
            return;
        }
        if degree > self.max {
            self.max = degree;
            self.witnesses.clear();
        }
        if degree == self.max && self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
    }

    /// Folds in a tracker from a later part of the scan.
    pub fn merge(&mut self, other: MaxTracker<W>) {
        if other.max > self.max {
            *self = other;
        } else if other.max == self.max && other.max.is_some() {
            let room = MAX_WITNESSES - self.witnesses.len();
            self.witnesses.extend(other.witnesses.into_iter().take(room));
        }
    }
}

/// Maximum `ξ`-degree of `f_{x,y,z}` over pairs with
/// `l(x) + l(y) <= min(radius, pair_budget)`; a ball that is the whole finite
/// group scans every pair. Rows run in parallel and merge in scan order.
pub fn max_f_degree(ball: &GroupBall, pair_budget: usize) -> FDegreeSurvey {
    let budget = effective_budget(ball, pair_budget);
    let xs: Vec<Elem> = ball.up_to(budget).collect();
    let per_x: Vec<(usize, MaxTracker<(Elem, Elem, Elem)>)> = xs
        .into_par_iter()
        .map(|x| {
            let mut tracker = MaxTracker::default();
            let row = t_row(ball, x, budget - ball.length(x));
            for (y, h) in row.iter().enumerate() {
                for (z, p) in h.iter() {
                    tracker.offer(xi_expand(p).degree(), || (x, Elem(y as u32), z));
                }
            }
            (row.len(), tracker)
        })
        .collect();
    let mut total = MaxTracker::default();
    let mut scanned = 0;
    for (n, t) in per_x {
        scanned += n;
        total.merge(t);
    }
    FDegreeSurvey {
        budget,
        pairs_scanned: scanned,
        pairs_skipped: pair_count(ball, effective_budget(ball, usize::MAX)) - scanned,
        max_degree: total.max,
        witnesses: total.witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn ball(preset: &str, radius: usize) -> GroupBall {
        GroupBall::build(&CoxeterMatrix::preset(preset).unwrap(), radius).unwrap()
    }

    #[test]
    fn generator_rules() {
        let b = ball("triangle:3,4,0", 4);
        let s = b.parse("s").unwrap();
        let e = b.identity();
        let ts = HeckeVec::unit(HeckeBasis::T, s);
        let got = t_mult_gen(&b, &ts, 0, Side::Right).unwrap();
        let want = HeckeVec::from_terms(HeckeBasis::T, [(e, LaurentPoly::one()), (s, LaurentPoly::xi())]);
        assert_eq!(got, want);
        let te = HeckeVec::unit(HeckeBasis::T, e);
        assert_eq!(t_mult_gen(&b, &te, 0, Side::Right).unwrap(), ts);
        let st = b.parse("s.t").unwrap();
        let got = t_mult_gen(&b, &HeckeVec::unit(HeckeBasis::T, st), 1, Side::Right).unwrap();
        let want = HeckeVec::from_terms(HeckeBasis::T, [(s, LaurentPoly::one()), (st, LaurentPoly::xi())]);
        assert_eq!(got, want);
    }

    #[test]
    fn products_and_f_examples() {
        let b = ball("a2tilde", 6);
        let s = b.parse("s").unwrap();
        let e = b.identity();
        assert_eq!(f_coeff(&b, s, s, e).unwrap().coeffs, vec![1]);
        assert_eq!(f_coeff(&b, s, s, s).unwrap().coeffs, vec![0, 1]);
        let x = b.parse("s.t").unwrap();
        let y = b.parse("r.s").unwrap();
        let h = t_mult(&b, x, y).unwrap();
        assert_eq!(h, HeckeVec::unit(HeckeBasis::T, b.parse("s.t.r.s").unwrap()));
        for x in b.up_to(3) {
            assert_eq!(f_coeff(&b, x, b.inverse(x), e).unwrap().coeffs, vec![1]);
            for y in b.up_to(3) {
                if b.multiply(x, y).unwrap() != e {
                    assert!(f_coeff(&b, x, y, e).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn dihedral_longest_square_has_full_degree() {
        let b = ball("i2:3", 6);
        let w0 = b.parse("s.t.s").unwrap();
        assert_eq!(f_coeff(&b, w0, w0, w0).unwrap().degree(), Some(3));
    }

    #[test]
    fn left_and_right_products_agree() {
        let b = ball("triangle:3,4,6", 6);
        for x in b.up_to(3) {
            for y in b.up_to(3) {
                assert_eq!(t_mult(&b, x, y).unwrap(), t_mult_left(&b, x, y).unwrap());
            }
        }
    }

    #[test]
    fn streaming_survey_matches_table() {
        let b = ball("triangle:3,4,6", 8);
        let table = ProductTable::build(&b, 8);
        let mut tracker = MaxTracker::default();
        for (x, y, row) in table.iter() {
            for (z, f) in row {
                tracker.offer(f.degree(), || (x, y, *z));
            }
        }
        let s = max_f_degree(&b, 8);
        assert_eq!(s.max_degree, tracker.max);
        assert_eq!(s.witnesses, tracker.witnesses);
        assert_eq!(s.pairs_scanned, table.pair_count());
    }

    #[test]
    fn budget_violation_is_an_error() {
        let b = ball("a2tilde", 4);
        let x = b.parse("s.t.r").unwrap();
        assert!(matches!(t_mult(&b, x, x), Err(Error::BallExceeded { .. })));
    }

    #[test]
    fn table_matches_direct_products() {
        let b = ball("triangle:3,4,0", 6);
        let table = ProductTable::build(&b, 6);
        for x in b.up_to(6) {
            for y in b.up_to(6 - b.length(x)) {
                let direct = t_mult(&b, x, y).unwrap();
                let row = table.row(x, y).unwrap();
                assert_eq!(row.len(), direct.len());
                for (z, f) in row {
                    assert_eq!(f.to_laurent(), direct.coeff(*z));
                }
            }
        }
    }

    #[test]
    fn survey_examples() {
        let m = CoxeterMatrix::from_table(&["s"], &[&[1]]).unwrap();
        let b = GroupBall::build(&m, 1).unwrap();
        assert!(b.is_closed());
        let s = max_f_degree(&b, 1);
        assert_eq!(s.max_degree, Some(1));
        assert_eq!(s.witnesses, vec![(Elem(1), Elem(1), Elem(1))]);
        assert_eq!(s.pairs_skipped, 0);
        let open = ball("universal:3", 3);
        let s = max_f_degree(&open, 3);
        assert_eq!(s.max_degree, Some(1));
        assert_eq!(s.pairs_skipped, 0);
        let s = max_f_degree(&open, 2);
        assert_eq!(s.pairs_scanned + s.pairs_skipped, pair_count(&open, 3));
        assert!(s.pairs_skipped > 0);
    }
}
