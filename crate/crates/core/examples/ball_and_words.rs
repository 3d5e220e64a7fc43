//! Enumerate a ball of the affine group Ã2 and work with its elements.
//!
//! cargo run --example ball_and_words

use coxeter_hecke::{CoxeterMatrix, GroupBall, GroupProfile};

fn main() -> coxeter_hecke::Result<()> {
    let matrix = CoxeterMatrix::preset("a2tilde")?;
    let ball = GroupBall::build(&matrix, 6)?;
    println!("{} elements of length <= {}", ball.len(), ball.radius());
    for n in 0..=ball.radius() {
        println!("  length {n}: {}", ball.level(n).count());
    }

    let x = ball.parse("s.t")?;
    let y = ball.parse("t.s.r")?;
    let xy = ball.multiply(x, y)?;
    println!("s.t * t.s.r = {} (length {})", ball.format(xy), ball.length(xy));
    println!("inverse of s.t.r = {}", ball.format(ball.inverse(ball.parse("s.t.r")?)));
    let w = ball.parse("s.t.s")?;
    println!("descents of s.t.s: left {:?}, right {:?}", ball.left_descents(w), ball.right_descents(w));

    let profile = GroupProfile::of(&matrix);
    println!("a0 = {}, finite orders {:?}, complete graph {}", profile.a0, profile.o_classes, profile.complete_graph);
    println!("content hash {}", ball.content_hash());
    Ok(())
}
