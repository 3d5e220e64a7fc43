//! Cells of a truncated Coxeter group.
//!
//! The generating relation of `≤_L` is `y ≤_L w` when `μ̃(y, w) ≠ 0` and
//! `L(y) ⊄ L(w)` (that is, `C_y` occurs in `C_s·C_w` for some `s ∉ L(w)`);
//! `≤_R` uses right descents and `≤_LR` is generated by both. Cells are the
//! strongly connected components of the stored edges, so near the boundary
//! of the ball they only approximate the true cells; every block records
//! whether it lies inside the certified region `l(w) <= L - margin`.

mod dprime;
mod omega;
mod partition;
mod report;

pub use dprime::{gamma_set, DPrimeMember, DPrimeSet};
pub use omega::{Decomposition, OmegaSet};
pub use partition::{CellPartition, Certification, PartitionSide};
pub use report::{cell_report, dot_block_dag, dot_mu_graph, CellRecord};

use serde::Serialize;

use crate::coxeter::{Elem, GroupBall, Side};
use crate::kl::KlTable;

/// A generating edge `lo ≤ hi` of a one-sided preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MuEdge {
    pub hi: Elem,
    pub lo: Elem,
    /// Smallest generator in the descent set of `lo` but not of `hi`.
    pub s: usize,
    pub mu: i64,
}

/// Edges of the left and right preorders, each sorted by `(hi, lo)`.
#[derive(Clone, Debug)]
pub struct MuGraph {
    nodes: usize,
    left: Vec<MuEdge>,
    right: Vec<MuEdge>,
}

impl MuGraph {
    pub fn build(ball: &GroupBall, kl: &KlTable) -> Self {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for w in ball.elements() {
            for &(z, mu) in kl.mu_below(w) {
                for (a, b) in [(w, z), (z, w)] {
                    // edge b ≤ a when D(b) ⊄ D(a)
                    for (side, edges) in [(Side::Left, &mut left), (Side::Right, &mut right)] {
                        let diff = ball.descents(b, side).difference(ball.descents(a, side));
                        if let Some(s) = diff.iter().next() {
                            edges.push(MuEdge { hi: a, lo: b, s, mu });
                        }
                    }
                }
            }
        }
        left.sort();
        right.sort();
        MuGraph {
            nodes: ball.len(),
            left,
            right,
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self, side: Side) -> &[MuEdge] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn left_edges(&self) -> &[MuEdge] {
        &self.left
    }

    pub fn right_edges(&self) -> &[MuEdge] {
        &self.right
    }
}

#[cfg(test)]
mod tests;
