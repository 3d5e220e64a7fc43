//! Structure constants gamma of the asymptotic ring on the lowest cell.
//!
//! cargo run --release --example jtable

use coxeter_hecke::cells::{gamma_set, OmegaSet};
use coxeter_hecke::kl::{GammaTable, JTableKind, KlTable};
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let ball = GroupBall::build(&CoxeterMatrix::preset("a2tilde")?, 10)?;
    let kl = KlTable::build(&ball);
    let omega = OmegaSet::lowest_cell(&ball)?;

    let w0 = omega.seeds()[0].u;
    let gamma = gamma_set(&ball, w0);
    let elements: Vec<_> = gamma
        .iter()
        .copied()
        .filter(|&x| ball.length(x) <= 5 && gamma.contains(&ball.inverse(x)))
        .collect();
    let unital = GammaTable::build(&ball, &kl, &omega, &elements, JTableKind::Unital { w0 }, ball.radius())?;
    println!("unit violations: {}", unital.unit_violations.len());

    let small: Vec<_> = omega.members().filter(|&w| ball.length(w) <= 4).collect();
    let table = GammaTable::build(&ball, &kl, &omega, &small, JTableKind::Omega, ball.radius())?;
    for w in &small {
        for u in &small {
            for v in &small {
                if let Some(g) = table.get(*w, *u, *v).filter(|&g| g != 0) {
                    println!("gamma({}, {}, {}) = {g}", ball.format(*w), ball.format(*u), ball.format(*v));
                }
            }
        }
    }
    Ok(())
}
