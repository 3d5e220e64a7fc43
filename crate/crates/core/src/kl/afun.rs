use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::cproduct::{eta_expand, CProductRow};
use super::KlTable;
use crate::cells::OmegaSet;
use crate::coxeter::{Elem, GroupBall};
use crate::error::Result;
use crate::hecke::{effective_budget, t_row, xi_expand, MaxTracker};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exactness {
    Exact,
    LowerBound,
}

/// An ordered pair `(w, u)` with `deg h_{w,u,v}` attaining a maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub w: Elem,
    pub u: Elem,
}

/// Truncated `a`-value of one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AValue {
    pub v: Elem,
    /// Reported value: the scan, raised to `a₀` when membership in the lowest
    /// cell certifies it.
    pub a_hat: usize,
    pub exactness: Exactness,
    /// Largest `η`-degree of `h_{w,u,v}` seen in the scan.
    pub scanned_h: Option<usize>,
    /// Largest `ξ`-degree of `f_{w,u,v}` seen over the same pairs.
    pub scanned_f: Option<usize>,
    /// First pairs attaining `scanned_h`, in scan order.
    pub witnesses: Vec<PairWitness>,
    /// `(zu, uy)` from the lowest-cell decomposition `v = zuy`.
    pub omega_witness: Option<PairWitness>,
}

/// `a_hat` for every element, from one scan over all pairs within budget.
#[derive(Clone, Debug, Serialize)]
pub struct AFunctionTable {
    pub budget: usize,
    pub a0: usize,
    pub values: Vec<AValue>,
}

#[derive(Default)]
struct Acc {
    h: MaxTracker<PairWitness>,
    f: MaxTracker<()>,
}

impl AFunctionTable {
    /// Scans `C_w·C_u` and `T̃_w·T̃_u` for all pairs with
    /// `l(w) + l(u) <= min(radius, pair_budget)`. Rows run in parallel and
    /// merge in id order, so the result does not depend on the thread count.
    pub fn build(
        ball: &GroupBall,
        kl: &KlTable,
        pair_budget: usize,
        a0: usize,
        complete_graph: bool,
        omega: Option<&OmegaSet>,
    ) -> Result<Self> {
        let budget = effective_budget(ball, pair_budget);
        let xs: Vec<Elem> = ball.up_to(budget).collect();
        let per_x: Vec<BTreeMap<Elem, Acc>> = xs
            .into_par_iter()
            .map(|x| -> Result<BTreeMap<Elem, Acc>> {
                let room = budget - ball.length(x);
                let crow = CProductRow::build(ball, kl, x, room)?;
                let trow = t_row(ball, x, room);
                let mut acc: BTreeMap<Elem, Acc> = BTreeMap::new();
                for (i, (c, t)) in crow.products.iter().zip(&trow).enumerate() {
                    let u = Elem(i as u32);
                    for (v, h) in c.iter() {
                        let d = eta_expand(h).degree();
                        acc.entry(v).or_default().h.offer(d, || PairWitness { w: x, u });
                    }
                    for (v, f) in t.iter() {
                        acc.entry(v).or_default().f.offer(xi_expand(f).degree(), || ());
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;

        let mut total: Vec<Acc> = (0..ball.len()).map(|_| Acc::default()).collect();
        for acc in per_x {
            for (v, a) in acc {
                total[v.index()].h.merge(a.h);
                total[v.index()].f.merge(a.f);
            }
        }

        let values = total
            .into_iter()
            .enumerate()
            .map(|(i, acc)| {
                let v = Elem(i as u32);
                let omega_witness = omega.and_then(|o| o.decomposition(v)).map(|d| PairWitness {
                    w: ball.multiply(d.z, d.u).expect("prefix of an additive product"),
                    u: ball.multiply(d.u, d.y).expect("suffix of an additive product"),
                });
                let scanned = acc.h.max;
                let (a_hat, exactness) = if v == ball.identity() {
                    (0, Exactness::Exact)
                } else if omega_witness.is_some() || (complete_graph && scanned == Some(a0)) {
                    (a0, Exactness::Exact)
                } else {
                    (scanned.unwrap_or(0), Exactness::LowerBound)
                };
                AValue {
                    v,
                    a_hat,
                    exactness,
                    scanned_h: scanned,
                    scanned_f: acc.f.max,
                    witnesses: acc.h.witnesses,
                    omega_witness,
                }
            })
            .collect();
        Ok(AFunctionTable { budget, a0, values })
    }

    pub fn get(&self, v: Elem) -> &AValue {
        &self.values[v.index()]
    }

    /// Elements where the `f`-scan and the `h`-scan maxima differ.
    pub fn disagreements(&self) -> Vec<Elem> {
        self.values
            .iter()
            .filter(|a| a.scanned_f != a.scanned_h)
            .map(|a| a.v)
            .collect()
    }
}
