//! Structure constants of the normalized standard basis and the survey of
//! their largest degree.
//!
//! cargo run --release --example hecke_products

use coxeter_hecke::hecke::{f_coeff, max_f_degree, t_mult, xi_expand};
use coxeter_hecke::{CoxeterMatrix, GroupBall, GroupProfile};

fn main() -> coxeter_hecke::Result<()> {
    let matrix = CoxeterMatrix::preset("triangle:3,4,0")?;
    let ball = GroupBall::build(&matrix, 8)?;

    let x = ball.parse("s.r.s.r")?;
    let product = t_mult(&ball, x, x)?;
    println!("T(srsr) T(srsr) has {} terms", product.len());
    for (z, p) in product.iter() {
        println!("  {:>10}: {:?}", ball.format(z), xi_expand(p).coeffs);
    }
    let f = f_coeff(&ball, x, x, x)?;
    println!("f(srsr, srsr, srsr) = {:?} in powers of xi", f.coeffs);

    let survey = max_f_degree(&ball, ball.radius());
    println!(
        "max degree {:?} over {} pairs (a0 = {})",
        survey.max_degree,
        survey.pairs_scanned,
        GroupProfile::of(&matrix).a0
    );
    Ok(())
}
