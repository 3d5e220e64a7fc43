use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::MuGraph;
use crate::coxeter::{Elem, GroupBall};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PartitionSide {
    Left,
    Right,
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certification {
    /// Every member lies in the certified region.
    Certified,
    Partial,
}

/// Strongly connected components of a preorder, numbered by their smallest
/// element, with the induced order as a DAG (`hi → lo`).
#[derive(Clone, Debug)]
pub struct CellPartition {
    side: PartitionSide,
    radius: usize,
    margin: usize,
    block_of: Vec<usize>,
    blocks: Vec<Vec<Elem>>,
    certification: Vec<Certification>,
    /// Some member lies in the certified region.
    meets_region: Vec<bool>,
    dag: Vec<Vec<usize>>,
}

impl CellPartition {
    pub fn build(ball: &GroupBall, graph: &MuGraph, side: PartitionSide, margin: usize) -> Self {
        let n = graph.nodes();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        for _ in 0..n {
            g.add_node(());
        }
        let mut add = |edges: &[super::MuEdge]| {
            for e in edges {
                g.add_edge(NodeIndex::new(e.hi.index()), NodeIndex::new(e.lo.index()), ());
            }
        };
        match side {
            PartitionSide::Left => add(graph.left_edges()),
            PartitionSide::Right => add(graph.right_edges()),
            PartitionSide::TwoSided => {
                add(graph.left_edges());
                add(graph.right_edges());
            }
        }
        let mut blocks: Vec<Vec<Elem>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut b: Vec<Elem> = c.into_iter().map(|i| Elem(i.index() as u32)).collect();
                b.sort();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &e in b {
                block_of[e.index()] = i;
            }
        }
        let limit = ball.radius().saturating_sub(margin);
        let certification = blocks
            .iter()
            .map(|b| {
                if b.iter().all(|&e| ball.length(e) <= limit) {
                    Certification::Certified
                } else {
                    Certification::Partial
                }
            })
            .collect();
        let meets_region = blocks.iter().map(|b| ball.length(b[0]) <= limit).collect();
        let mut dag = vec![Vec::new(); blocks.len()];
        for e in g.raw_edges() {
            let (a, b) = (block_of[e.source().index()], block_of[e.target().index()]);
            if a != b {
                dag[a].push(b);
            }
        }
        for d in &mut dag {
            d.sort_unstable();
            d.dedup();
        }
        CellPartition {
            side,
            radius: ball.radius(),
            margin,
            block_of,
            blocks,
            certification,
            meets_region,
            dag,
        }
    }

    pub fn side(&self) -> PartitionSide {
        self.side
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Largest length in the certified region.
    pub fn region_limit(&self) -> usize {
        self.radius.saturating_sub(self.margin)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, w: Elem) -> usize {
        self.block_of[w.index()]
    }

    pub fn block(&self, i: usize) -> &[Elem] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn certification(&self, i: usize) -> Certification {
        self.certification[i]
    }

    pub fn meets_region(&self, i: usize) -> bool {
        self.meets_region[i]
    }

    pub fn certified_count(&self) -> usize {
        self.certification
            .iter()
            .filter(|&&c| c == Certification::Certified)
            .count()
    }

    /// Blocks with at least one member in the certified region.
    pub fn region_count(&self) -> usize {
        self.meets_region.iter().filter(|&&m| m).count()
    }

    /// Blocks directly below block `i`.
    pub fn dag(&self, i: usize) -> &[usize] {
        &self.dag[i]
    }

    /// Is block `lo` reachable from block `hi` (reflexive)?
    pub fn reaches(&self, hi: usize, lo: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![hi];
        seen[hi] = true;
        while let Some(b) = stack.pop() {
            if b == lo {
                return true;
            }
            for &c in &self.dag[b] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        false
    }

    /// `y ≤ w` in the preorder generated by the stored edges.
    pub fn leq(&self, y: Elem, w: Elem) -> bool {
        self.reaches(self.block_of(w), self.block_of(y))
    }

    /// Blocks with no block below them.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.dag[i].is_empty()).collect()
    }

    /// Members of block `i` in the certified region.
    pub fn region_members(&self, ball: &GroupBall, i: usize) -> Vec<Elem> {
        let limit = self.region_limit();
        self.blocks[i]
            .iter()
            .copied()
            .filter(|&e| ball.length(e) <= limit)
            .collect()
    }
}
