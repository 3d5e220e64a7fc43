use rayon::prelude::*;
use serde::Serialize;

use super::cproduct::{eta_expand, CProductRow};
use super::KlTable;
use crate::cells::OmegaSet;
use crate::coxeter::{Elem, GroupBall};
use crate::error::{Error, Result};
use crate::hecke::effective_budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JTableKind {
    /// Elements of the lowest cell.
    Omega,
    /// `Γ ∩ Γ⁻¹` for a fixed longest element `w₀`, with unit `t_{w₀}`.
    Unital { w0: Elem },
}

/// `γ_{w,u,v}` on a list of lowest-cell elements. `None` marks triples whose
/// product does not fit in the pair budget.
#[derive(Clone, Debug, Serialize)]
pub struct GammaTable {
    pub kind: JTableKind,
    pub elements: Vec<Elem>,
    pub a0: usize,
    /// Dense `n × n × n`, indexed `(i·n + j)·n + k`.
    pub gamma: Vec<Option<i64>>,
    /// Masked `(w, u, v)` where `t_{w₀}` fails to act as a two-sided unit.
    pub unit_violations: Vec<(Elem, Elem, Elem)>,
}

impl GammaTable {
    /// Every element must lie in `omega`; `γ` is read at `η^{a₀}` since
    /// `a = a₀` on the lowest cell.
    pub fn build(
        ball: &GroupBall,
        kl: &KlTable,
        omega: &OmegaSet,
        elements: &[Elem],
        kind: JTableKind,
        pair_budget: usize,
    ) -> Result<Self> {
        for &e in elements {
            if !omega.contains(e) {
                return Err(Error::NotInOmega(ball.format(e)));
            }
        }
        let a0 = omega.a0();
        let budget = effective_budget(ball, pair_budget);
        let n = elements.len();
        let rows: Vec<Vec<Option<i64>>> = elements
            .par_iter()
            .map(|&w| -> Result<Vec<Option<i64>>> {
                let mut out = vec![None; n * n];
                if ball.length(w) > budget {
                    return Ok(out);
                }
                let room = budget - ball.length(w);
                let row = CProductRow::build(ball, kl, w, room)?;
                for (j, &u) in elements.iter().enumerate() {
                    let Some(prod) = row.get(u) else { continue };
                    if ball.length(u) > room {
                        continue;
                    }
                    for (k, &v) in elements.iter().enumerate() {
                        out[j * n + k] = Some(prod.get(v).map_or(0, |h| eta_expand(h).coeff(a0)));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let gamma: Vec<Option<i64>> = rows.into_iter().flatten().collect();
        let mut table = GammaTable {
            kind,
            elements: elements.to_vec(),
            a0,
            gamma,
            unit_violations: Vec::new(),
        };
        if let JTableKind::Unital { w0 } = kind {
            let Some(i0) = elements.iter().position(|&e| e == w0) else {
                return Err(Error::NotInOmega(ball.format(w0)));
            };
            for j in 0..n {
                for k in 0..n {
                    let want = i64::from(j == k);
                    for g in [table.at(i0, j, k), table.at(j, i0, k)] {
                        if g.is_some_and(|g| g != want) {
                            table
                                .unit_violations
                                .push((elements[i0], elements[j], elements[k]));
                        }
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `γ` by positions in the element list.
    pub fn at(&self, i: usize, j: usize, k: usize) -> Option<i64> {
        let n = self.len();
        self.gamma[(i * n + j) * n + k]
    }

    pub fn index_of(&self, e: Elem) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }

    /// `γ_{w,u,v}` by element.
    pub fn get(&self, w: Elem, u: Elem, v: Elem) -> Option<i64> {
        self.at(self.index_of(w)?, self.index_of(u)?, self.index_of(v)?)
    }

    /// Number of triples whose product fit in the budget.
    pub fn computed(&self) -> usize {
        self.gamma.iter().filter(|g| g.is_some()).count()
    }
}
