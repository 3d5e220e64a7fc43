use serde::Serialize;

use super::ball::{Elem, GroupBall, Side};
use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

/// Reduced words of an element in ShortLex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWords {
    pub words: Vec<Vec<usize>>,
    /// More reduced words exist beyond `limit`.
    pub overflow: bool,
}

impl GroupBall {
    /// All reduced expressions of `w`, truncated at `limit`.
    pub fn reduced_expressions(&self, w: Elem, limit: usize) -> ReducedWords {
        let mut out = ReducedWords {
            words: Vec::new(),
            overflow: false,
        };
        let mut prefix = Vec::with_capacity(self.length(w));
        self.collect_reduced(w, limit.max(1), &mut prefix, &mut out);
        out
    }

    fn collect_reduced(
        &self,
        w: Elem,
        limit: usize,
        prefix: &mut Vec<usize>,
        out: &mut ReducedWords,
    ) {
        if out.overflow {
            return;
        }
        if self.length(w) == 0 {
            if out.words.len() == limit {
                out.overflow = true;
            } else {
                out.words.push(prefix.clone());
            }
            return;
        }
        for s in self.left_descents(w).iter() {
            let sw = self.left(w, s).expect("descent neighbor exists");
            prefix.push(s);
            self.collect_reduced(sw, limit, prefix, out);
            prefix.pop();
        }
    }

    /// Does `w` have exactly one reduced expression?
    pub fn has_unique_reduced_expression(&self, w: Elem) -> bool {
        let mut cur = w;
        while self.length(cur) > 0 {
            let l = self.left_descents(cur);
            if l.len() != 1 {
                return false;
            }
            let s = l.iter().next().unwrap();
            cur = self.left(cur, s).unwrap();
        }
        true
    }

    /// Dihedral data for the pair `(s, t)`.
    pub fn dihedral_data(&self, s: usize, t: usize) -> Result<DihedralInfo> {
        assert!(s != t, "dihedral data needs two distinct generators");
        let order = self.matrix().m(s, t);
        let longest = match order {
            Some(m) if m as usize > self.radius() => {
                return Err(Error::BallExceeded {
                    radius: self.radius(),
                    detail: format!(
                        "longest element of <{}, {}> has length {m}",
                        self.matrix().gen_name(s),
                        self.matrix().gen_name(t)
                    ),
                })
            }
            Some(m) => Some(self.from_word(&alternating_word(s, t, m as usize))?),
            None => None,
        };
        Ok(DihedralInfo {
            s,
            t,
            order,
            longest,
        })
    }

    /// Elements of the parabolic `<s, t>` of length `len` inside the ball.
    pub fn dihedral_elements(&self, s: usize, t: usize, len: usize) -> Vec<Elem> {
        let mut out: Vec<Elem> = [s, t]
            .into_iter()
            .filter_map(|a| {
                let b = if a == s { t } else { s };
                self.from_word(&alternating_word(a, b, len)).ok()
            })
            .filter(|&w| self.length(w) == len)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Does `w` lie in the standard parabolic generated by `set`?
    pub fn in_parabolic(&self, w: Elem, set: super::GenSet) -> bool {
        self.word(w).iter().all(|&s| set.contains(s))
    }

    /// Walks down `side` descents to list every `w'` with
    /// `w = w'·(suffix)` (right side) additive.
    pub fn weak_lower(&self, w: Elem, side: Side) -> Vec<Elem> {
        let mut seen = vec![w];
        let mut i = 0;
        while i < seen.len() {
            let cur = seen[i];
            for s in self.descents(cur, side).iter() {
                let nb = self.neighbor(cur, s, side).unwrap();
                if !seen.contains(&nb) {
                    seen.push(nb);
                }
            }
            i += 1;
        }
        seen.sort();
        seen
    }
}

/// `a b a b …` of length `len`.
pub fn alternating_word(a: usize, b: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralInfo {
    pub s: usize,
    pub t: usize,
    pub order: Option<u32>,
    /// Longest element `w_st`, present when the order is finite.
    pub longest: Option<Elem>,
}

impl DihedralInfo {
    pub fn is_finite(&self) -> bool {
        self.order.is_some()
    }

    /// The two alternating words of maximal length (finite case).
    pub fn longest_words(&self) -> Option<[Vec<usize>; 2]> {
        self.order.map(|m| {
            [
                alternating_word(self.s, self.t, m as usize),
                alternating_word(self.t, self.s, m as usize),
            ]
        })
    }
}

/// Read-off invariants of a Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupProfile {
    pub complete_graph: bool,
    pub crystallographic: bool,
    /// Largest length of the longest element of a finite rank-2 parabolic
    /// (1 when every off-diagonal order is infinite).
    pub a0: usize,
    /// Pairs `(s, t)` with `m(s, t) = a0`.
    pub lambda_pairs: Vec<(usize, usize)>,
    /// Distinct finite off-diagonal orders, ascending.
    pub o_classes: Vec<u32>,
}

impl GroupProfile {
    pub fn of(matrix: &CoxeterMatrix) -> Self {
        let finite: Vec<(usize, usize, u32)> = matrix
            .off_diagonal()
            .filter_map(|(s, t, m)| m.map(|m| (s, t, m)))
            .collect();
        let a0 = finite.iter().map(|f| f.2 as usize).max().unwrap_or(1);
        let lambda_pairs = if finite.is_empty() {
            Vec::new()
        } else {
            finite
                .iter()
                .filter(|f| f.2 as usize == a0)
                .map(|f| (f.0, f.1))
                .collect()
        };
        let mut o_classes: Vec<u32> = finite.iter().map(|f| f.2).collect();
        o_classes.sort_unstable();
        o_classes.dedup();
        GroupProfile {
            complete_graph: matrix.is_complete_graph(),
            crystallographic: matrix.is_crystallographic(),
            a0,
            lambda_pairs,
            o_classes,
        }
    }

    /// Every off-diagonal order is infinite; Λ then degenerates to `S`.
    pub fn lambda_is_generators(&self) -> bool {
        self.lambda_pairs.is_empty()
    }
}
