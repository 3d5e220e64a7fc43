use serde::Serialize;

use super::omega::{strip_left, OmegaSet};
use crate::coxeter::{Elem, GroupBall};

/// `x = w·y` with `w` a seed of the lowest cell, lengths adding up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DPrimeMember {
    pub x: Elem,
    pub w: Elem,
    pub y: Elem,
    /// `d = y⁻¹·w·y`, when it lies in the ball.
    pub d: Option<Elem>,
}

/// Canonical left-cell representatives of the lowest cell: `x = w·y` with
/// `L(w) ⊆ L(x)` and `s·x ∉ Ω` for every `s ∈ L(w)`.
#[derive(Clone, Debug, Serialize)]
pub struct DPrimeSet {
    pub members: Vec<DPrimeMember>,
    /// Elements whose membership test needs elements outside the ball.
    pub undecided: Vec<Elem>,
}

impl DPrimeSet {
    pub fn build(ball: &GroupBall, omega: &OmegaSet) -> Self {
        let mut members = Vec::new();
        let mut undecided = Vec::new();
        for x in ball.elements() {
            let desc = ball.left_descents(x);
            let mut decided = true;
            let mut found = None;
            for seed in omega.seeds() {
                if !seed.gens.is_subset(desc) {
                    continue;
                }
                let mut ok = true;
                for s in seed.gens.iter() {
                    match ball.left(x, s) {
                        Some(sx) => ok &= !omega.contains(sx),
                        None => decided = false,
                    }
                }
                if ok && decided {
                    found = Some(seed.u);
                    break;
                }
            }
            if let Some(w) = found {
                let y = strip_left(ball, x, ball.word(w));
                let d = ball.multiply(ball.inverse(y), x).ok();
                members.push(DPrimeMember { x, w, y, d });
            } else if !decided {
                undecided.push(x);
            }
        }
        DPrimeSet { members, undecided }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members of length at most `n`.
    pub fn count_up_to(&self, ball: &GroupBall, n: usize) -> usize {
        self.members.iter().filter(|m| ball.length(m.x) <= n).count()
    }

    /// The distinguished involutions found in the ball.
    pub fn involutions(&self) -> Vec<Elem> {
        self.members.iter().filter_map(|m| m.d).collect()
    }
}

/// `Γ_x = {z·x : l(zx) = l(z) + l(x)}` inside the ball.
pub fn gamma_set(ball: &GroupBall, x: Elem) -> Vec<Elem> {
    let mut seen = vec![false; ball.len()];
    seen[x.index()] = true;
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let g = out[i];
        i += 1;
        for s in 0..ball.rank() {
            if let Some(sg) = ball.left(g, s) {
                if ball.length(sg) > ball.length(g) && !seen[sg.index()] {
                    seen[sg.index()] = true;
                    out.push(sg);
                }
            }
        }
    }
    out.sort();
    out
}
