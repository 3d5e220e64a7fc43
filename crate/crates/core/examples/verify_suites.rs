//! Run the verification suites over a ball and print a one-line verdict for
//! each.
//!
//! cargo run --release --example verify_suites -- triangle:3,3,4 10

use coxeter_hecke::verify::{run_all, Analysis, Options};
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "a2tilde".into());
    let radius = args.next().and_then(|r| r.parse().ok()).unwrap_or(10);
    let ball = GroupBall::build(&CoxeterMatrix::preset(&preset)?, radius)?;
    let mut options = Options::for_ball(&ball);
    options.margin = 4;
    let analysis = Analysis::new(ball, options);
    for r in run_all(&analysis)? {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        println!("{verdict} {:<18} checked {:>8} skipped {:>8} violations {}", r.suite, r.checked, r.skipped, r.violations);
        for note in &r.notes {
            println!("     {note}");
        }
    }
    Ok(())
}
