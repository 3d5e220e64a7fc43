//! Kazhdan-Lusztig polynomials, mu, and products in the KL basis.
//!
//! cargo run --release --example kl_polynomials

use coxeter_hecke::kl::{c_mult, KlTable};
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let ball = GroupBall::build(&CoxeterMatrix::preset("a3")?, 6)?;
    let kl = KlTable::build(&ball);
    let w0 = ball.parse("s1.s2.s1.s3.s2.s1")?;
    let w = ball.parse("s2.s1.s3.s2")?;
    for y in ball.bruhat_interval(w) {
        let p = kl.kl_poly(&ball, y, w);
        if p.terms().len() > 1 {
            println!("P({}, {}) = {}", ball.format(y), ball.format(w), p.to_q_string());
        }
    }
    println!("mu(s2, s2.s1.s3.s2) = {}", kl.mu(ball.parse("s2")?, w));
    println!("w0 = {} (length {})", ball.format(w0), ball.length(w0));

    let s = ball.parse("s1")?;
    let c = c_mult(&ball, &kl, s, s)?;
    for (z, h) in c.iter() {
        println!("C_s1 C_s1 = ({}) C_{}", h.to_q_string(), ball.format(z));
    }
    Ok(())
}
