//! The truncated a-function, certified on the lowest two-sided cell.
//!
//! cargo run --release --example a_function

use coxeter_hecke::cells::OmegaSet;
use coxeter_hecke::kl::{AFunctionTable, Exactness, KlTable};
use coxeter_hecke::{CoxeterMatrix, GroupBall, GroupProfile};

fn main() -> coxeter_hecke::Result<()> {
    let matrix = CoxeterMatrix::preset("triangle:3,3,0")?;
    let ball = GroupBall::build(&matrix, 8)?;
    let profile = GroupProfile::of(&matrix);
    let kl = KlTable::build(&ball);
    let omega = OmegaSet::lowest_cell(&ball)?;
    let table = AFunctionTable::build(&ball, &kl, ball.radius(), profile.a0, profile.complete_graph, Some(&omega))?;

    let mut histogram = std::collections::BTreeMap::new();
    for v in &table.values {
        *histogram.entry((v.a_hat, v.exactness == Exactness::Exact)).or_insert(0) += 1;
    }
    for ((a, exact), n) in histogram {
        println!("a = {a} ({}): {n} elements", if exact { "exact" } else { "lower bound" });
    }
    Ok(())
}
