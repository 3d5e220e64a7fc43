//! Left and two-sided cell partitions of a ball, exported as Graphviz.
//!
//! cargo run --release --example cells_dot > cells.dot

use coxeter_hecke::cells::{dot_block_dag, CellPartition, MuGraph, PartitionSide};
use coxeter_hecke::kl::KlTable;
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let ball = GroupBall::build(&CoxeterMatrix::preset("a2tilde")?, 10)?;
    let kl = KlTable::build(&ball);
    let graph = MuGraph::build(&ball, &kl);
    let margin = 4;
    let left = CellPartition::build(&ball, &graph, PartitionSide::Left, margin);
    let two = CellPartition::build(&ball, &graph, PartitionSide::TwoSided, margin);
    eprintln!(
        "{} left blocks, {} two-sided blocks meeting the region of length <= {}",
        left.region_count(),
        two.region_count(),
        two.region_limit()
    );
    print!("{}", dot_block_dag(&ball, &two));
    Ok(())
}
