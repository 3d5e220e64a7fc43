//! The lowest two-sided cell, its canonical left-cell representatives and
//! their left cells.
//!
//! cargo run --release --example lowest_cell

use coxeter_hecke::cells::{gamma_set, DPrimeSet, OmegaSet};
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let ball = GroupBall::build(&CoxeterMatrix::preset("a2tilde")?, 9)?;
    let omega = OmegaSet::lowest_cell(&ball)?;
    println!("{} elements of the ball lie in the lowest cell (a0 = {})", omega.len(), omega.a0());
    let x = ball.parse("t.r.s.t.s")?;
    if let Some(d) = omega.decomposition(x) {
        println!("t.r.s.t.s = ({})({})({})", ball.format(d.z), ball.format(d.u), ball.format(d.y));
    }

    let dprime = DPrimeSet::build(&ball, &omega);
    for m in &dprime.members {
        let gamma = gamma_set(&ball, m.x);
        println!(
            "{:>12} = ({})({}), involution {:?}, left cell with {} elements in the ball",
            ball.format(m.x),
            ball.format(m.w),
            ball.format(m.y),
            m.d.map(|d| ball.format(d)),
            gamma.len()
        );
    }
    Ok(())
}
