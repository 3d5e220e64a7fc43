use std::fmt::Write;

use serde::Serialize;

use super::{CellPartition, Certification, MuGraph, OmegaSet};
use crate::coxeter::{GroupBall, Side};

/// One line of the cell report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub element: String,
    pub length: usize,
    pub left_block: usize,
    pub two_sided_block: usize,
    /// The two-sided block lies in the certified region.
    pub certified: bool,
    pub in_omega: bool,
    /// `[z, u, y]` words of the lowest-cell decomposition.
    pub witness: Option<[String; 3]>,
}

pub fn cell_report(
    ball: &GroupBall,
    left: &CellPartition,
    two_sided: &CellPartition,
    omega: Option<&OmegaSet>,
) -> Vec<CellRecord> {
    ball.elements()
        .map(|w| {
            let b = two_sided.block_of(w);
            let dec = omega.and_then(|o| o.decomposition(w));
            CellRecord {
                element: ball.format(w),
                length: ball.length(w),
                left_block: left.block_of(w),
                two_sided_block: b,
                certified: two_sided.certification(b) == Certification::Certified,
                in_omega: dec.is_some(),
                witness: dec.map(|d| [ball.format(d.z), ball.format(d.u), ball.format(d.y)]),
            }
        })
        .collect()
}

/// μ-graph edges of one side, labelled `s:μ`.
pub fn dot_mu_graph(ball: &GroupBall, graph: &MuGraph, side: Side) -> String {
    let mut out = String::from("digraph mu {\n");
    for w in ball.elements() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", w.0, ball.format(w));
    }
    for e in graph.edges(side) {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}:{}\"];",
            e.hi.0,
            e.lo.0,
            ball.matrix().gen_name(e.s),
            e.mu
        );
    }
    out.push_str("}\n");
    out
}

/// Blocks as nodes (labelled by their first element and size), edges from
/// higher to lower blocks.
pub fn dot_block_dag(ball: &GroupBall, part: &CellPartition) -> String {
    let mut out = String::from("digraph cells {\n");
    for (i, b) in part.blocks().iter().enumerate() {
        let style = match part.certification(i) {
            Certification::Certified => "solid",
            Certification::Partial => "dashed",
        };
        let _ = writeln!(
            out,
            "  b{i} [label=\"{} ({})\", style={style}];",
            ball.format(b[0]),
            b.len()
        );
    }
    for i in 0..part.len() {
        for &j in part.dag(i) {
            let _ = writeln!(out, "  b{i} -> b{j};");
        }
    }
    out.push_str("}\n");
    out
}
