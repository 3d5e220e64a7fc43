use std::collections::VecDeque;

use serde::Serialize;

use crate::coxeter::{Elem, GenSet, GroupBall, GroupProfile};
use crate::error::{Error, Result};

/// `x = z·u·y` with lengths adding up and `u` a seed element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub z: Elem,
    pub u: Elem,
    pub y: Elem,
}

/// A seed: the longest element of the parabolic generated by `gens`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Seed {
    pub gens: GenSet,
    pub u: Elem,
}

/// Additive closure of a set of longest elements: all `z·u·y` with
/// `l = l(z) + l(u) + l(y)`. Seeded by `Λ` this is the lowest two-sided cell.
#[derive(Clone, Debug)]
pub struct OmegaSet {
    a0: usize,
    seeds: Vec<Seed>,
    /// Canonical decomposition of each member: least `l(z)`, then least `z`,
    /// then first seed.
    members: Vec<Option<Decomposition>>,
}

impl OmegaSet {
    /// Seeds with the longest elements of the rank-2 parabolics of maximal
    /// finite order; when every order is infinite the seeds are the
    /// generators themselves.
    pub fn lowest_cell(ball: &GroupBall) -> Result<Self> {
        let profile = GroupProfile::of(ball.matrix());
        let seeds = if profile.lambda_is_generators() {
            (0..ball.rank())
                .map(|s| Seed {
                    gens: GenSet::single(s),
                    u: ball.from_word(&[s]).expect("generators lie in the ball"),
                })
                .collect()
        } else {
            if profile.a0 > ball.radius() {
                return Err(Error::EmptyLambda);
            }
            pair_seeds(ball, &profile.lambda_pairs)?
        };
        Ok(Self::closure(ball, profile.a0, seeds))
    }

    /// Closure seeded by the rank-2 longest elements of length `i`.
    pub fn w_i_closure(ball: &GroupBall, i: u32) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = ball
            .matrix()
            .off_diagonal()
            .filter(|&(_, _, m)| m == Some(i))
            .map(|(s, t, _)| (s, t))
            .collect();
        if pairs.is_empty() {
            return Err(Error::NoSuchParabolic(i));
        }
        let seeds = pair_seeds(ball, &pairs)?;
        Ok(Self::closure(ball, i as usize, seeds))
    }

    /// Breadth-first closure under length-increasing multiplication by
    /// generators on either side.
    fn closure(ball: &GroupBall, a0: usize, seeds: Vec<Seed>) -> Self {
        let mut reached = vec![false; ball.len()];
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for seed in &seeds {
            if !reached[seed.u.index()] {
                reached[seed.u.index()] = true;
                queue.push_back(seed.u);
            }
        }
        while let Some(x) = queue.pop_front() {
            for s in 0..ball.rank() {
                for next in [ball.left(x, s), ball.right(x, s)].into_iter().flatten() {
                    if ball.length(next) > ball.length(x) && !reached[next.index()] {
                        reached[next.index()] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut set = OmegaSet {
            a0,
            seeds,
            members: vec![None; ball.len()],
        };
        for x in ball.elements() {
            if reached[x.index()] {
                let d = set
                    .decompose(ball, x)
                    .expect("closure members admit a decomposition");
                set.members[x.index()] = Some(d);
            }
        }
        set
    }

    /// Canonical decomposition found independently of the closure: scan the
    /// prefixes `z` of `x` in id order and look for a seed whose generators
    /// are all left descents of `z⁻¹x`.
    pub fn decompose(&self, ball: &GroupBall, x: Elem) -> Option<Decomposition> {
        for z in ball.weak_lower(x, crate::coxeter::Side::Right) {
            let r = strip_left(ball, x, ball.word(z));
            let desc = ball.left_descents(r);
            for seed in &self.seeds {
                if seed.gens.is_subset(desc) {
                    let y = strip_left(ball, r, ball.word(seed.u));
                    return Some(Decomposition { z, u: seed.u, y });
                }
            }
        }
        None
    }

    pub fn a0(&self) -> usize {
        self.a0
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members[x.index()].is_some()
    }

    pub fn decomposition(&self, x: Elem) -> Option<&Decomposition> {
        self.members[x.index()].as_ref()
    }

    pub fn members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_some())
            .map(|(i, _)| Elem(i as u32))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|d| d.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Membership bitmap over the ball.
    pub fn bitmap(&self) -> Vec<bool> {
        self.members.iter().map(Option::is_some).collect()
    }
}

fn pair_seeds(ball: &GroupBall, pairs: &[(usize, usize)]) -> Result<Vec<Seed>> {
    pairs
        .iter()
        .map(|&(s, t)| {
            let d = ball.dihedral_data(s, t)?;
            Ok(Seed {
                gens: GenSet::pair(s, t),
                u: d.longest.expect("finite order"),
            })
        })
        .collect()
}

/// `a⁻¹·x` where `a` (given by a reduced word) is a left prefix of `x`.
pub(crate) fn strip_left(ball: &GroupBall, x: Elem, word: &[usize]) -> Elem {
    let mut cur = x;
    for &s in word {
        debug_assert!(ball.left_descents(cur).contains(s));
        cur = ball.left(cur, s).expect("stripping a prefix shortens");
    }
    cur
}
