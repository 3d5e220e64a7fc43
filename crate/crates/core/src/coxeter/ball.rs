use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::matrix::CoxeterMatrix;
use crate::cyclotomic::{CycInt, CycRing};
use crate::error::{Error, Result};

/// Index of an element inside its [`GroupBall`]. Ids follow
/// `(length, ShortLex word)` order, so `Elem(0)` is the identity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Set of generator indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(transparent)]
pub struct GenSet(pub u32);

impl GenSet {
    pub fn empty() -> Self {
        GenSet(0)
    }

    pub fn single(s: usize) -> Self {
        GenSet(1 << s)
    }

    pub fn pair(s: usize, t: usize) -> Self {
        GenSet((1 << s) | (1 << t))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Default cap on the number of elements in a ball.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// All elements of length at most `radius`, realized through the exact
/// geometric representation, with neighbor and descent tables.
pub struct GroupBall {
    matrix: CoxeterMatrix,
    ring: CycRing,
    radius: usize,
    /// Coefficient of `α_s` in `σ_s(α_t)`, i.e. `2cos(π/m(s,t))` (2 for ∞).
    coupling: Vec<Vec<CycInt>>,
    lengths: Vec<u32>,
    words: Vec<Vec<usize>>,
    /// Flattened rank×rank matrices; entry `(i, j)` holds `ring.degree()`
    /// coefficients.
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, Elem>,
    right: Vec<Option<Elem>>,
    left: Vec<Option<Elem>>,
    right_desc: Vec<GenSet>,
    left_desc: Vec<GenSet>,
    inverse: Vec<Elem>,
    level_start: Vec<usize>,
    lower_sets: OnceLock<Vec<Vec<u64>>>,
}

impl fmt::Debug for GroupBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupBall")
            .field("gens", &self.matrix.gens())
            .field("radius", &self.radius)
            .field("elements", &self.len())
            .finish()
    }
}

impl GroupBall {
    pub fn build(matrix: &CoxeterMatrix, radius: usize) -> Result<Self> {
        Self::build_with_cap(matrix, radius, DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(matrix: &CoxeterMatrix, radius: usize, cap: usize) -> Result<Self> {
        let rank = matrix.rank();
        let ring = CycRing::new(matrix.conductor());
        let coupling: Vec<Vec<CycInt>> = (0..rank)
            .map(|s| {
                (0..rank)
                    .map(|t| match matrix.m(s, t) {
                        Some(m) => ring.two_cos_pi_over(m),
                        None => ring.from_int(2),
                    })
                    .collect()
            })
            .collect();

        let d = ring.degree();
        let mut identity = vec![0i64; rank * rank * d];
        for i in 0..rank {
            identity[(i * rank + i) * d] = 1;
        }

        let mut ball = GroupBall {
            matrix: matrix.clone(),
            ring,
            radius,
            coupling,
            lengths: vec![0],
            words: vec![Vec::new()],
            mats: vec![identity.clone()],
            index: HashMap::from([(identity, Elem(0))]),
            right: vec![None; rank],
            left: vec![None; rank],
            right_desc: Vec::new(),
            left_desc: Vec::new(),
            inverse: Vec::new(),
            level_start: vec![0],
            lower_sets: OnceLock::new(),
        };

        for level in 0..=radius {
            let start = ball.level_start[level];
            let end = ball.lengths.len();
            if level < radius {
                ball.level_start.push(end);
            }
            // Right neighbors: discover level + 1 in ShortLex order.
            for w in start..end {
                for s in 0..rank {
                    if ball.right[w * rank + s].is_some() {
                        continue;
                    }
                    let key = ball.mul_gen_right(&ball.mats[w], s);
                    match ball.index.get(&key) {
                        Some(&u) => {
                            ball.right[w * rank + s] = Some(u);
                            ball.right[u.index() * rank + s] = Some(Elem(w as u32));
                        }
                        None if level < radius => {
                            let id = Elem(ball.lengths.len() as u32);
                            if id.index() >= cap {
                                return Err(Error::ResourceLimit(format!(
                                    "ball exceeds the cap of {cap} elements at length {}",
                                    level + 1
                                )));
                            }
                            let mut word = ball.words[w].clone();
                            word.push(s);
                            ball.lengths.push(level as u32 + 1);
                            ball.words.push(word);
                            ball.index.insert(key.clone(), id);
                            ball.mats.push(key);
                            ball.right.extend(std::iter::repeat_n(None, rank));
                            ball.left.extend(std::iter::repeat_n(None, rank));
                            ball.right[w * rank + s] = Some(id);
                            ball.right[id.index() * rank + s] = Some(Elem(w as u32));
                        }
                        None => {}
                    }
                }
            }
            // Left neighbors: both candidate levels are complete now.
            for w in start..end {
                for s in 0..rank {
                    if ball.left[w * rank + s].is_some() {
                        continue;
                    }
                    let key = ball.mul_gen_left(s, &ball.mats[w]);
                    if let Some(&u) = ball.index.get(&key) {
                        ball.left[w * rank + s] = Some(u);
                        ball.left[u.index() * rank + s] = Some(Elem(w as u32));
                    }
                }
            }
        }

        let n = ball.lengths.len();
        ball.right_desc = (0..n).map(|w| ball.descent_set(Elem(w as u32), Side::Right)).collect();
        ball.left_desc = (0..n).map(|w| ball.descent_set(Elem(w as u32), Side::Left)).collect();
        ball.inverse = (0..n)
            .map(|w| {
                let mut cur = Elem::IDENTITY;
                for &s in ball.words[w].iter().rev() {
                    cur = ball.right(cur, s).expect("inverse stays in the ball");
                }
                cur
            })
            .collect();
        Ok(ball)
    }

    fn descent_set(&self, w: Elem, side: Side) -> GenSet {
        let mut set = GenSet::empty();
        let lw = self.length(w);
        for s in 0..self.rank() {
            let nb = match side {
                Side::Left => self.left(w, s),
                Side::Right => self.right(w, s),
            };
            if let Some(u) = nb {
                if self.length(u) < lw {
                    set.insert(s);
                }
            }
        }
        set
    }

    fn entry_range(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let d = self.ring.degree();
        let k = (i * self.rank() + j) * d;
        k..k + d
    }

    fn entry(&self, m: &[i64], i: usize, j: usize) -> CycInt {
        self.ring.reduce(m[self.entry_range(i, j)].to_vec())
    }

    /// `M · σ_s`: column `t` gains `c(s,t)` times column `s`.
    fn mul_gen_right(&self, m: &[i64], s: usize) -> Vec<i64> {
        let rank = self.rank();
        let mut out = m.to_vec();
        for i in 0..rank {
            let col_s = self.entry(m, i, s);
            if self.ring.is_zero(&col_s) {
                continue;
            }
            for t in 0..rank {
                let add = self.ring.mul(&col_s, &self.coupling[s][t]);
                let r = self.entry_range(i, t);
                for (dst, a) in out[r].iter_mut().zip(add.coeffs()) {
                    *dst += a;
                }
            }
        }
        out
    }

    /// `σ_s · M`: row `s` gains `Σ_k c(s,k) · row k`.
    fn mul_gen_left(&self, s: usize, m: &[i64]) -> Vec<i64> {
        let rank = self.rank();
        let mut out = m.to_vec();
        for t in 0..rank {
            let mut acc = self.ring.zero();
            for k in 0..rank {
                let e = self.entry(m, k, t);
                acc = self.ring.add(&acc, &self.ring.mul(&self.coupling[s][k], &e));
            }
            let r = self.entry_range(s, t);
            for (dst, a) in out[r].iter_mut().zip(acc.coeffs()) {
                *dst += a;
            }
        }
        out
    }

    fn mat_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let rank = self.rank();
        let mut out = vec![0i64; a.len()];
        for i in 0..rank {
            for j in 0..rank {
                let mut acc = self.ring.zero();
                for k in 0..rank {
                    acc = self
                        .ring
                        .add(&acc, &self.ring.mul(&self.entry(a, i, k), &self.entry(b, k, j)));
                }
                out[self.entry_range(i, j)].copy_from_slice(acc.coeffs());
            }
        }
        out
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// The ball is the whole (finite) group: every neighbor is present.
    pub fn is_closed(&self) -> bool {
        self.right.iter().all(Option::is_some)
    }

    /// Length of the longest element in the ball.
    pub fn max_length(&self) -> usize {
        *self.lengths.last().unwrap() as usize
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len() as u32).map(Elem)
    }

    /// Elements of length exactly `n`.
    pub fn level(&self, n: usize) -> impl Iterator<Item = Elem> {
        let start = self.level_start.get(n).copied().unwrap_or(self.len());
        let end = self.level_start.get(n + 1).copied().unwrap_or(self.len());
        (start as u32..end as u32).map(Elem)
    }

    /// Elements of length at most `n`.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = Elem> {
        let end = self.level_start.get(n + 1).copied().unwrap_or(self.len());
        (0..end as u32).map(Elem)
    }

    pub fn count_up_to(&self, n: usize) -> usize {
        self.level_start.get(n + 1).copied().unwrap_or(self.len())
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.index()] as usize
    }

    /// ShortLex-minimal reduced word.
    pub fn word(&self, w: Elem) -> &[usize] {
        &self.words[w.index()]
    }

    /// Matrix of `w` acting on the simple roots, as ring elements.
    pub fn root_matrix(&self, w: Elem) -> Vec<Vec<CycInt>> {
        let m = &self.mats[w.index()];
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| self.entry(m, i, j)).collect())
            .collect()
    }

    /// `ws`, if it lies in the ball.
    #[inline]
    pub fn right(&self, w: Elem, s: usize) -> Option<Elem> {
        self.right[w.index() * self.rank() + s]
    }

    /// `sw`, if it lies in the ball.
    #[inline]
    pub fn left(&self, w: Elem, s: usize) -> Option<Elem> {
        self.left[w.index() * self.rank() + s]
    }

    pub fn neighbor(&self, w: Elem, s: usize, side: Side) -> Option<Elem> {
        match side {
            Side::Left => self.left(w, s),
            Side::Right => self.right(w, s),
        }
    }

    /// `L(w)` or `R(w)`.
    #[inline]
    pub fn descents(&self, w: Elem, side: Side) -> GenSet {
        match side {
            Side::Left => self.left_desc[w.index()],
            Side::Right => self.right_desc[w.index()],
        }
    }

    #[inline]
    pub fn left_descents(&self, w: Elem) -> GenSet {
        self.left_desc[w.index()]
    }

    #[inline]
    pub fn right_descents(&self, w: Elem) -> GenSet {
        self.right_desc[w.index()]
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        self.inverse[w.index()]
    }

    fn exceeded(&self, detail: String) -> Error {
        Error::BallExceeded {
            radius: self.radius,
            detail,
        }
    }

    /// Group product. Falls back to the exact matrix product when the
    /// letter-by-letter walk leaves the ball but the product does not.
    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem> {
        let mut cur = x;
        for &s in self.word(y) {
            match self.right(cur, s) {
                Some(next) => cur = next,
                None => {
                    let key = self.mat_mul(&self.mats[x.index()], &self.mats[y.index()]);
                    return self.index.get(&key).copied().ok_or_else(|| {
                        self.exceeded(format!(
                            "{} * {} has length > {}",
                            self.format(x),
                            self.format(y),
                            self.radius
                        ))
                    });
                }
            }
        }
        Ok(cur)
    }

    /// Multiplies a word from the left of `x`: returns `x · word`.
    pub fn apply_word(&self, x: Elem, word: &[usize]) -> Result<Elem> {
        let mut cur = x;
        for (i, &s) in word.iter().enumerate() {
            match self.right(cur, s) {
                Some(next) => cur = next,
                None => {
                    // The walk left the ball; finish with matrices.
                    let mut m = self.mats[cur.index()].clone();
                    for &t in &word[i..] {
                        m = self.mul_gen_right(&m, t);
                    }
                    return self.index.get(&m).copied().ok_or_else(|| {
                        self.exceeded(format!(
                            "{} * {} has length > {}",
                            self.format(x),
                            self.format_letters(word),
                            self.radius
                        ))
                    });
                }
            }
        }
        Ok(cur)
    }

    /// Element represented by an arbitrary word.
    pub fn from_word(&self, word: &[usize]) -> Result<Elem> {
        if let Some(&s) = word.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::UnknownGenerator(format!("index {s}")));
        }
        self.apply_word(Elem::IDENTITY, word)
    }

    /// Is `word` a reduced expression (of an element inside the ball)?
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        let mut cur = Elem::IDENTITY;
        for &s in word {
            match self.right(cur, s) {
                Some(next) if self.length(next) > self.length(cur) => cur = next,
                _ => return false,
            }
        }
        true
    }

    pub fn format_letters(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter()
            .map(|&s| self.matrix.gen_name(s))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Word of `w` as generator names joined by `.`; the identity is `e`.
    pub fn format(&self, w: Elem) -> String {
        self.format_letters(self.word(w))
    }

    pub fn parse_letters(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        text.split('.').map(|g| self.matrix.gen_index(g.trim())).collect()
    }

    /// Parses `s.t.s` (or `e`) into the element it represents.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let word = self.parse_letters(text)?;
        self.from_word(&word)
    }

    /// Bruhat order `y <= w`.
    pub fn bruhat_leq(&self, y: Elem, w: Elem) -> bool {
        if self.length(y) > self.length(w) {
            return false;
        }
        let sets = self.lower_sets.get_or_init(|| self.build_lower_sets());
        let i = y.index();
        sets[w.index()][i / 64] >> (i % 64) & 1 == 1
    }

    /// `{y : y <= w} = {y, sy : y <= sw}` for `s ∈ L(w)`.
    fn build_lower_sets(&self) -> Vec<Vec<u64>> {
        let words = self.len().div_ceil(64);
        let mut sets: Vec<Vec<u64>> = Vec::with_capacity(self.len());
        let mut base = vec![0u64; words];
        base[0] = 1;
        sets.push(base);
        for w in self.elements().skip(1) {
            let s = self.word(w)[0];
            let sw = self.left(w, s).expect("left descent neighbor");
            let mut set = sets[sw.index()].clone();
            for (k, &bits) in sets[sw.index()].iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let i = k * 64 + b.trailing_zeros() as usize;
                    b &= b - 1;
                    let sy = self.left(Elem(i as u32), s).expect("sy stays in the ball");
                    set[sy.index() / 64] |= 1 << (sy.index() % 64);
                }
            }
            sets.push(set);
        }
        sets
    }

    /// Elements `y <= w`, in id order.
    pub fn bruhat_interval(&self, w: Elem) -> Vec<Elem> {
        self.up_to(self.length(w))
            .filter(|&y| self.bruhat_leq(y, w))
            .collect()
    }

    /// Hex SHA-256 over the matrix, radius, and every element's word.
    pub fn content_hash(&self) -> String {
        let words: Vec<String> = self.elements().map(|w| self.format(w)).collect();
        Self::hash_words(&self.matrix, self.radius, words.iter().map(String::as_str))
    }

    /// The hash of [`content_hash`](Self::content_hash) computed from
    /// serialized words in id order, so exported listings can be rechecked.
    pub fn hash_words<'a>(matrix: &CoxeterMatrix, radius: usize, words: impl IntoIterator<Item = &'a str>) -> String {
        let mut h = Sha256::new();
        h.update(matrix.to_json().as_bytes());
        h.update(radius.to_le_bytes());
        for w in words {
            h.update(w.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}
