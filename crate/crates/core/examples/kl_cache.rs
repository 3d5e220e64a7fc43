//! Persist a KL table and reload it.
//!
//! cargo run --release --example kl_cache

use coxeter_hecke::kl::KlCache;
use coxeter_hecke::{CoxeterMatrix, GroupBall};

fn main() -> coxeter_hecke::Result<()> {
    let dir = std::env::temp_dir().join("coxhecke-example-cache");
    std::fs::create_dir_all(&dir)?;
    let ball = GroupBall::build(&CoxeterMatrix::preset("triangle:3,4,6")?, 7)?;
    let cache = KlCache::in_dir(&dir, &ball);
    cache.clear()?;

    let (built, hit) = cache.load_or_build(&ball, true)?;
    println!("first call: from cache {hit}, {} KL vectors", built.len());
    let (loaded, hit) = cache.load_or_build(&ball, true)?;
    println!("second call: from cache {hit}, {} KL vectors", loaded.len());

    let w = ball.parse("s.t.s.t")?;
    assert_eq!(built.kl_poly(&ball, ball.identity(), w), loaded.kl_poly(&ball, ball.identity(), w));
    println!("stored at {}", cache.path().display());
    cache.clear()?;
    Ok(())
}
