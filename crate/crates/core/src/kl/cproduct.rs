use std::collections::HashMap;

use serde::Serialize;

use super::afun::Exactness;
use super::KlTable;
use crate::coxeter::{Elem, GroupBall, Side};
use crate::error::{Error, Result};
use crate::hecke::{effective_budget, t_mult_gen, HeckeBasis, HeckeVec};
use crate::laurent::{Basis, BasisExpansion, LaurentPoly};

/// `h·C_s` (right) or `C_s·h` (left) for `h` in the `C` basis, by the
/// W-graph rule: `C_w·C_s = η·C_w` when `s ∈ R(w)`, otherwise
/// `C_{ws} + Σ μ(z, w)·C_z` over `z < w` with `s ∈ R(z)`.
pub fn c_mult_gen(ball: &GroupBall, kl: &KlTable, h: &HeckeVec, s: usize, side: Side) -> Result<HeckeVec> {
    debug_assert_eq!(h.basis(), HeckeBasis::C);
    let eta = LaurentPoly::eta();
    let mut out = HeckeVec::zero(HeckeBasis::C);
    for (w, p) in h.iter() {
        if ball.descents(w, side).contains(s) {
            out.add_term(w, &(&eta * p));
            continue;
        }
        let ws = ball.neighbor(w, s, side).ok_or_else(|| Error::BallExceeded {
            radius: ball.radius(),
            detail: format!(
                "C-basis element {} times generator {} ({:?})",
                ball.format(w),
                ball.matrix().gen_name(s),
                side
            ),
        })?;
        out.add_term(ws, p);
        for &(z, mu) in kl.mu_below(w) {
            if ball.descents(z, side).contains(s) {
                out.add_term(z, &p.scale(mu));
            }
        }
    }
    Ok(out)
}

fn check_budget(ball: &GroupBall, x: Elem, y: Elem) -> Result<()> {
    let budget = effective_budget(ball, usize::MAX);
    if ball.length(x) + ball.length(y) > budget {
        return Err(Error::BallExceeded {
            radius: ball.radius(),
            detail: format!(
                "l({}) + l({}) exceeds the pair budget {budget}",
                ball.format(x),
                ball.format(y)
            ),
        });
    }
    Ok(())
}

/// One step of the product recursion: with `y = y'·s` (`s` the last letter),
/// `C_x·C_y = (C_x·C_{y'})·C_s - Σ μ(z, y')·C_x·C_z` over `z < y'`, `s ∈ R(z)`.
fn step<'a>(
    ball: &GroupBall,
    kl: &KlTable,
    y: Elem,
    lookup: impl Fn(Elem) -> &'a HeckeVec,
) -> Result<HeckeVec> {
    let s = *ball.word(y).last().expect("y is not the identity");
    let parent = ball.right(y, s).expect("descent neighbor exists");
    let mut h = c_mult_gen(ball, kl, lookup(parent), s, Side::Right)?;
    for &(z, mu) in kl.mu_below(parent) {
        if ball.right_descents(z).contains(s) {
            h.add_scaled(lookup(z), &LaurentPoly::constant(-mu));
        }
    }
    Ok(h)
}

/// `C_x·C_y = Σ_v h_{x,y,v} C_v`.
pub fn c_mult(ball: &GroupBall, kl: &KlTable, x: Elem, y: Elem) -> Result<HeckeVec> {
    check_budget(ball, x, y)?;
    // Elements reachable from y through the recursion, all shorter than y.
    let mut needed = vec![y];
    let mut i = 0;
    while i < needed.len() {
        let w = needed[i];
        i += 1;
        if let Some(&s) = ball.word(w).last() {
            let parent = ball.right(w, s).unwrap();
            needed.push(parent);
            for &(z, _) in kl.mu_below(parent) {
                if ball.right_descents(z).contains(s) {
                    needed.push(z);
                }
            }
        }
    }
    needed.sort();
    needed.dedup();
    let mut memo: HashMap<Elem, HeckeVec> = HashMap::with_capacity(needed.len());
    for w in needed {
        let h = if w == ball.identity() {
            HeckeVec::unit(HeckeBasis::C, x)
        } else {
            step(ball, kl, w, |z| &memo[&z])?
        };
        memo.insert(w, h);
    }
    Ok(memo.remove(&y).unwrap())
}

/// `C_x·C_y` for every `y` with `l(y) <= room`, indexed by id.
pub struct CProductRow {
    pub x: Elem,
    pub products: Vec<HeckeVec>,
}

impl CProductRow {
    pub fn build(ball: &GroupBall, kl: &KlTable, x: Elem, room: usize) -> Result<Self> {
        let room = room.min(ball.max_length());
        let mut products: Vec<HeckeVec> = Vec::with_capacity(ball.count_up_to(room));
        products.push(HeckeVec::unit(HeckeBasis::C, x));
        for y in ball.up_to(room).skip(1) {
            let h = step(ball, kl, y, |z| &products[z.index()])?;
            products.push(h);
        }
        Ok(CProductRow { x, products })
    }

    pub fn get(&self, y: Elem) -> Option<&HeckeVec> {
        self.products.get(y.index())
    }
}

/// `C_w·C_u` computed in the `T̃` basis and converted back by triangular
/// elimination, independent of the W-graph recursion.
pub fn c_mult_via_t(ball: &GroupBall, kl: &KlTable, w: Elem, u: Elem) -> Result<HeckeVec> {
    check_budget(ball, w, u)?;
    let cw = kl.c_vector(w);
    let mut t = HeckeVec::zero(HeckeBasis::T);
    for (y, a) in kl.c_vector(u).iter() {
        let mut prod = cw.clone();
        for &s in ball.word(y) {
            prod = t_mult_gen(ball, &prod, s, Side::Right)?;
        }
        t.add_scaled(&prod, a);
    }
    let mut out = HeckeVec::zero(HeckeBasis::C);
    // The longest support element is Bruhat-maximal, and C_z has T̃_z
    // coefficient 1.
    loop {
        let Some((z, c)) = t.iter().next_back().map(|(z, c)| (z, c.clone())) else {
            break;
        };
        t.add_scaled(kl.c_vector(z), &(-&c));
        out.add_term(z, &c);
    }
    Ok(out)
}

/// `h_{w,u,v}` with its leading coefficients at `a_used`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub w: Elem,
    pub u: Elem,
    pub v: Elem,
    /// `h` as a polynomial in `η`.
    pub h: BasisExpansion,
    pub a_used: usize,
    pub exactness: Exactness,
    /// `η^{a_used}` coefficient.
    pub gamma: i64,
    /// `η^{a_used - 1}` coefficient (zero when `a_used = 0`).
    pub delta: i64,
}

impl StructureConstant {
    pub fn new(w: Elem, u: Elem, v: Elem, h: &LaurentPoly, a_used: usize, exactness: Exactness) -> Self {
        let h = eta_expand(h);
        let gamma = h.coeff(a_used);
        let delta = if a_used == 0 { 0 } else { h.coeff(a_used - 1) };
        StructureConstant {
            w,
            u,
            v,
            h,
            a_used,
            exactness,
            gamma,
            delta,
        }
    }

    /// `γ` is only defined relative to the true `a(v)`.
    pub fn is_provisional(&self) -> bool {
        self.exactness == Exactness::LowerBound
    }
}

/// Expands `h` in `η`; bar invariance makes this always succeed.
pub fn eta_expand(h: &LaurentPoly) -> BasisExpansion {
    h.expand_in(Basis::Eta)
        .unwrap_or_else(|e| panic!("C-basis structure constant not a polynomial in eta: {e}"))
}

/// `h_{w,u,v}` with `γ`, `δ` read at the supplied `a`-value.
pub fn h_coeff(
    ball: &GroupBall,
    kl: &KlTable,
    w: Elem,
    u: Elem,
    v: Elem,
    a_used: usize,
    exactness: Exactness,
) -> Result<StructureConstant> {
    let prod = c_mult(ball, kl, w, u)?;
    Ok(StructureConstant::new(w, u, v, &prod.coeff(v), a_used, exactness))
}
