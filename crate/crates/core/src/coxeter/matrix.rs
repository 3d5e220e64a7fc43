use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Symmetric Coxeter matrix with named generators. `None` entries are `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    gens: Vec<String>,
    m: Vec<Vec<Option<u32>>>,
}

/// On-disk form: `0` encodes `∞`.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    gens: Vec<String>,
    m: Vec<Vec<u32>>,
}

/// Generators are stored as bitmasks, so the rank is bounded.
pub const MAX_RANK: usize = 32;

impl CoxeterMatrix {
    /// Validates and builds a matrix; `m[s][t] = None` means `∞`.
    pub fn new(gens: Vec<String>, m: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let rank = gens.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be at least 1".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.is_empty() || g.contains('.') || g.chars().any(char::is_whitespace) {
                return Err(Error::InvalidMatrix(format!(
                    "generator name {g:?} must be non-empty without '.' or whitespace"
                )));
            }
            if g == "e" {
                return Err(Error::InvalidMatrix(
                    "generator name \"e\" is reserved for the identity".into(),
                ));
            }
            if gens[..i].contains(g) {
                return Err(Error::InvalidMatrix(format!("duplicate generator {g:?}")));
            }
        }
        if m.len() != rank || m.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidMatrix(format!(
                "m must be a {rank}x{rank} table"
            )));
        }
        for s in 0..rank {
            for t in 0..rank {
                let entry = m[s][t];
                if s == t {
                    if entry != Some(1) {
                        return Err(Error::InvalidMatrix(format!(
                            "m[{s}][{t}] ({}, {}) must be 1",
                            gens[s], gens[t]
                        )));
                    }
                } else {
                    if matches!(entry, Some(k) if k < 2) {
                        return Err(Error::InvalidMatrix(format!(
                            "m[{s}][{t}] ({}, {}) = {} must be >= 2 or 0 for infinity",
                            gens[s],
                            gens[t],
                            entry.unwrap()
                        )));
                    }
                    if entry != m[t][s] {
                        return Err(Error::InvalidMatrix(format!(
                            "m[{s}][{t}] and m[{t}][{s}] ({}, {}) differ",
                            gens[s], gens[t]
                        )));
                    }
                }
            }
        }
        Ok(Self { gens, m })
    }

    /// Builds from an integer table where `0` encodes `∞`.
    pub fn from_table(gens: &[&str], table: &[&[u32]]) -> Result<Self> {
        let m = table
            .iter()
            .map(|row| row.iter().map(|&x| (x != 0).then_some(x)).collect())
            .collect();
        Self::new(gens.iter().map(|s| s.to_string()).collect(), m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidMatrix(format!("malformed document: {e}")))?;
        let m = doc
            .m
            .into_iter()
            .map(|row| row.into_iter().map(|x| (x != 0).then_some(x)).collect())
            .collect();
        Self::new(doc.gens, m)
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixDoc {
            gens: self.gens.clone(),
            m: self
                .m
                .iter()
                .map(|row| row.iter().map(|x| x.unwrap_or(0)).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("matrix serializes")
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_name(&self, s: usize) -> &str {
        &self.gens[s]
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Order of `st`; `None` for `∞`.
    pub fn m(&self, s: usize, t: usize) -> Option<u32> {
        self.m[s][t]
    }

    /// Every pair of distinct generators fails to commute.
    pub fn is_complete_graph(&self) -> bool {
        self.off_diagonal().all(|(_, _, m)| m.is_none_or(|k| k >= 3))
    }

    pub fn is_crystallographic(&self) -> bool {
        self.off_diagonal()
            .all(|(_, _, m)| matches!(m, None | Some(2 | 3 | 4 | 6)))
    }

    /// Unordered pairs `s < t` with their orders.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, Option<u32>)> + '_ {
        let r = self.rank();
        (0..r).flat_map(move |s| (s + 1..r).map(move |t| (s, t, self.m[s][t])))
    }

    /// lcm of all finite orders (1 when there are none).
    pub fn conductor(&self) -> u32 {
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.off_diagonal()
            .filter_map(|(_, _, m)| m)
            .fold(1, |acc, m| acc / gcd(acc, m) * m)
    }

    /// Named groups used throughout the examples and tests.
    ///
    /// `a2tilde`, `a3`, `i2:M`, `universal:N` (all orders infinite) and
    /// `triangle:P,Q,R` with `(m_st, m_sr, m_tr) = (P, Q, R)` (`0` or `inf`
    /// for infinity).
    pub fn preset(name: &str) -> Result<Self> {
        let bad = || Error::InvalidMatrix(format!("unknown preset {name:?}"));
        let parse_order = |s: &str| -> Result<u32> {
            match s.trim() {
                "inf" | "oo" | "0" => Ok(0),
                x => x.parse::<u32>().map_err(|_| bad()),
            }
        };
        let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
        match kind {
            "a2tilde" => Self::triangle(3, 3, 3),
            "a3" => Self::from_table(
                &["s1", "s2", "s3"],
                &[&[1, 3, 2], &[3, 1, 3], &[2, 3, 1]],
            ),
            "i2" => Self::dihedral(parse_order(arg)?),
            "universal" => {
                let n: usize = arg.parse().map_err(|_| bad())?;
                let gens: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
                let m = (0..n)
                    .map(|s| (0..n).map(|t| (s == t).then_some(1)).collect())
                    .collect();
                Self::new(gens, m)
            }
            "triangle" => {
                let parts: Vec<u32> = arg.split(',').map(parse_order).collect::<Result<_>>()?;
                if parts.len() != 3 {
                    return Err(bad());
                }
                Self::triangle(parts[0], parts[1], parts[2])
            }
            _ => Err(bad()),
        }
    }

    /// Rank-2 group `I2(m)` on generators `s, t` (`m = 0` for `∞`).
    pub fn dihedral(m: u32) -> Result<Self> {
        Self::from_table(&["s", "t"], &[&[1, m], &[m, 1]])
    }

    /// Rank-3 group on `s, t, r` with `(m_st, m_sr, m_tr)`; `0` is `∞`.
    pub fn triangle(st: u32, sr: u32, tr: u32) -> Result<Self> {
        Self::from_table(
            &["s", "t", "r"],
            &[&[1, st, sr], &[st, 1, tr], &[sr, tr, 1]],
        )
    }
}
