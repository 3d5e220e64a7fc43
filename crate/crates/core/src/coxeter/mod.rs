//! Coxeter groups realized as length-truncated balls.
//!
//! Element identity is decided by the exact geometric representation
//! `σ_s(α_t) = α_t + 2cos(π/m(s,t))·α_s` (coefficient 2 when `m = ∞`) over
//! [`CycRing`](crate::cyclotomic::CycRing); descents and lengths come from the
//! BFS levels of the ball, never from sign tests.

mod ball;
mod matrix;
mod words;

pub use ball::{Elem, GenSet, GroupBall, Side, DEFAULT_ELEMENT_CAP};
pub use matrix::{CoxeterMatrix, MAX_RANK};
pub use words::{alternating_word, DihedralInfo, GroupProfile, ReducedWords};
