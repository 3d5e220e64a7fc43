//! Kazhdan-Lusztig basis, polynomials and `μ`, products in the `C` basis,
//! the truncated `a`-function and the asymptotic `γ` tables.
//!
//! `C_w` is stored in the `T̃` basis: the coefficient of `T̃_y` is
//! `v^{l(y)-l(w)} P_{y,w}`, so `μ(y, w)` is its `v^{-1}` coefficient.

mod afun;
mod cache;
mod cproduct;
mod jtable;

pub use afun::{AFunctionTable, AValue, Exactness, PairWitness};
pub use cache::{KlCache, CACHE_ENV, CACHE_SCHEMA};
pub use cproduct::{c_mult, c_mult_gen, c_mult_via_t, eta_expand, h_coeff, CProductRow, StructureConstant};
pub use jtable::{GammaTable, JTableKind};

use rayon::prelude::*;

use crate::coxeter::{Elem, GroupBall, Side};
use crate::hecke::{t_mult_gen, HeckeBasis, HeckeVec};
use crate::laurent::LaurentPoly;

/// `C_w` for every element of a ball, plus the nonzero `μ(z, w)` with `z < w`.
#[derive(Clone, Debug)]
pub struct KlTable {
    matrix_hash: String,
    radius: usize,
    cvec: Vec<HeckeVec>,
    /// `(z, μ(z, w))` with `z < w`, `μ ≠ 0`, sorted by `z`.
    mu_below: Vec<Vec<(Elem, i64)>>,
}

impl KlTable {
    /// Builds the table level by level; elements of one length are
    /// independent and computed in parallel.
    pub fn build(ball: &GroupBall) -> Self {
        Self::build_with(ball, true)
    }

    pub fn build_with(ball: &GroupBall, parallel: bool) -> Self {
        let mut table = KlTable {
            matrix_hash: ball.matrix().content_hash(),
            radius: ball.radius(),
            cvec: Vec::with_capacity(ball.len()),
            mu_below: Vec::with_capacity(ball.len()),
        };
        table.cvec.push(HeckeVec::unit(HeckeBasis::T, ball.identity()));
        table.mu_below.push(Vec::new());
        for n in 1..=ball.radius() {
            let level: Vec<Elem> = ball.level(n).collect();
            if level.is_empty() {
                break;
            }
            let built: Vec<HeckeVec> = if parallel {
                level.par_iter().map(|&w| table.next_c(ball, w)).collect()
            } else {
                level.iter().map(|&w| table.next_c(ball, w)).collect()
            };
            for (w, c) in level.into_iter().zip(built) {
                table.mu_below.push(mu_from_c(ball, w, &c));
                table.cvec.push(c);
            }
        }
        table
    }

    /// `C_w = C_s·C_{sw} - Σ μ(z, sw) C_z` over `z < sw` with `s ∈ L(z)`,
    /// where `s` is the first letter of `w`.
    fn next_c(&self, ball: &GroupBall, w: Elem) -> HeckeVec {
        let s = ball.word(w)[0];
        let sw = ball.left(w, s).expect("descent neighbor exists");
        let base = &self.cvec[sw.index()];
        let mut c = t_mult_gen(ball, base, s, Side::Left).expect("Bruhat interval stays in the ball");
        c.add_scaled(base, &LaurentPoly::v_inv());
        for &(z, mu) in &self.mu_below[sw.index()] {
            if ball.left_descents(z).contains(s) {
                c.add_scaled(&self.cvec[z.index()], &LaurentPoly::constant(-mu));
            }
        }
        c
    }

    /// Rebuilds a table from stored polynomials `P_{y,w}` (as `q`-polynomials
    /// in `v²`), listed per `w` in id order.
    pub(crate) fn from_polys(ball: &GroupBall, polys: Vec<Vec<(Elem, LaurentPoly)>>) -> Self {
        let mut cvec = Vec::with_capacity(polys.len());
        let mut mu_below = Vec::with_capacity(polys.len());
        for (i, row) in polys.into_iter().enumerate() {
            let w = Elem(i as u32);
            let lw = ball.length(w) as i32;
            let c = HeckeVec::from_terms(
                HeckeBasis::T,
                row.into_iter()
                    .map(|(y, p)| (y, p.shift(ball.length(y) as i32 - lw))),
            );
            mu_below.push(mu_from_c(ball, w, &c));
            cvec.push(c);
        }
        KlTable {
            matrix_hash: ball.matrix().content_hash(),
            radius: ball.radius(),
            cvec,
            mu_below,
        }
    }

    pub fn matrix_hash(&self) -> &str {
        &self.matrix_hash
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.cvec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cvec.is_empty()
    }

    /// `C_w` in the `T̃` basis.
    pub fn c_vector(&self, w: Elem) -> &HeckeVec {
        &self.cvec[w.index()]
    }

    /// `P_{y,w}` with `v`-exponents (every exponent is even).
    pub fn kl_poly(&self, ball: &GroupBall, y: Elem, w: Elem) -> LaurentPoly {
        self.cvec[w.index()]
            .coeff(y)
            .shift(ball.length(w) as i32 - ball.length(y) as i32)
    }

    /// `μ(y, w)` for `y < w`; zero otherwise.
    pub fn mu(&self, y: Elem, w: Elem) -> i64 {
        let row = &self.mu_below[w.index()];
        row.binary_search_by_key(&y, |t| t.0)
            .map_or(0, |i| row[i].1)
    }

    /// `μ` between two elements in either order.
    pub fn mu_sym(&self, a: Elem, b: Elem) -> i64 {
        if a < b {
            self.mu(a, b)
        } else {
            self.mu(b, a)
        }
    }

    pub fn mu_below(&self, w: Elem) -> &[(Elem, i64)] {
        &self.mu_below[w.index()]
    }

    /// First `w` of length at most `max_len` whose `C_w` is not fixed by the
    /// bar involution, if any.
    pub fn check_bar_invariance(&self, ball: &GroupBall, max_len: usize) -> Option<Elem> {
        ball.up_to(max_len.min(ball.radius()))
            .find(|&w| bar(ball, self.c_vector(w)) != *self.c_vector(w))
    }
}

fn mu_from_c(ball: &GroupBall, w: Elem, c: &HeckeVec) -> Vec<(Elem, i64)> {
    let lw = ball.length(w);
    c.iter()
        .filter(|&(y, _)| y != w && (lw - ball.length(y)) % 2 == 1)
        .map(|(y, p)| (y, p.coeff(-1)))
        .filter(|&(_, mu)| mu != 0)
        .collect()
}

/// Bar involution on a `T̃` vector: `v -> v⁻¹`, `T̃_w -> T̃_{w⁻¹}⁻¹`, with
/// `T̃_s⁻¹ = T̃_s - ξ`.
pub fn bar(ball: &GroupBall, h: &HeckeVec) -> HeckeVec {
    let xi = LaurentPoly::xi();
    let mut out = HeckeVec::zero(HeckeBasis::T);
    for (w, p) in h.iter() {
        let mut acc = HeckeVec::unit(HeckeBasis::T, ball.identity());
        for &s in ball.word(w) {
            let mut next = t_mult_gen(ball, &acc, s, Side::Right).expect("interval stays in the ball");
            next.add_scaled(&acc, &(-&xi));
            acc = next;
        }
        out.add_scaled(&acc, &p.bar());
    }
    out
}

#[cfg(test)]
mod tests;
