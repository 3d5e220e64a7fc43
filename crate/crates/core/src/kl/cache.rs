use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::KlTable;
use crate::coxeter::{CoxeterMatrix, Elem, GroupBall};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub const CACHE_SCHEMA: &str = "coxhecke-kl/1";

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "COXHECKE_CACHE_DIR";

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct Header {
    schema: String,
    matrix_hash: String,
    radius: usize,
}

#[derive(Serialize, Deserialize, Debug)]
struct Record {
    y: String,
    w: String,
    /// `[[q-exponent, coefficient], ...]`
    #[serde(rename = "P")]
    p: Vec<(i32, i64)>,
}

/// On-disk JSONL store of `P_{y,w}`: a header line, then one record per
/// nonzero polynomial, ordered by `(w, y)` ids.
#[derive(Clone, Debug)]
pub struct KlCache {
    path: PathBuf,
}

impl KlCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    /// `$COXHECKE_CACHE_DIR`, else `.coxhecke-cache` in the working directory.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".coxhecke-cache"))
    }

    /// One file per Coxeter matrix inside `dir`.
    pub fn in_dir(dir: &Path, ball: &GroupBall) -> Self {
        Self::for_matrix(dir, ball.matrix())
    }

    pub fn for_matrix(dir: &Path, matrix: &CoxeterMatrix) -> Self {
        let hash = matrix.content_hash();
        Self::new(dir.join(format!("kl-{}.jsonl", &hash[..16])))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Loads a table for `ball`. Returns `None` when the file is absent or
    /// was written for a smaller radius; a different matrix is an error.
    pub fn load(&self, ball: &GroupBall) -> Result<Option<KlTable>> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut lines = BufReader::new(file).lines();
        let Some(first) = lines.next() else {
            return Err(Error::Cache(format!("{}: empty file", self.path.display())));
        };
        let header: Header = serde_json::from_str(&first?)?;
        if header.schema != CACHE_SCHEMA {
            return Err(Error::Cache(format!("unsupported schema {}", header.schema)));
        }
        let hash = ball.matrix().content_hash();
        if header.matrix_hash != hash {
            return Err(Error::Cache(format!(
                "{} holds matrix {}, expected {}",
                self.path.display(),
                header.matrix_hash,
                hash
            )));
        }
        if header.radius < ball.radius() {
            return Ok(None);
        }
        let mut polys: Vec<Vec<(Elem, LaurentPoly)>> = vec![Vec::new(); ball.len()];
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record = serde_json::from_str(&line)?;
            if word_len(&rec.w) > ball.radius() {
                continue;
            }
            let w = ball.parse(&rec.w)?;
            let y = ball.parse(&rec.y)?;
            let p = LaurentPoly::from_terms(rec.p.into_iter().map(|(e, c)| (2 * e, c)));
            polys[w.index()].push((y, p));
        }
        if polys.iter().enumerate().any(|(i, row)| !row.iter().any(|t| t.0.index() == i)) {
            return Err(Error::Cache(format!("{}: incomplete table", self.path.display())));
        }
        Ok(Some(KlTable::from_polys(ball, polys)))
    }

    pub fn store(&self, ball: &GroupBall, kl: &KlTable) -> Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("jsonl.tmp");
        {
            let mut out = BufWriter::new(fs::File::create(&tmp)?);
            let header = Header {
                schema: CACHE_SCHEMA.to_string(),
                matrix_hash: ball.matrix().content_hash(),
                radius: ball.radius(),
            };
            serde_json::to_writer(&mut out, &header)?;
            out.write_all(b"\n")?;
            for w in ball.elements() {
                for y in kl.c_vector(w).support() {
                    let p = kl.kl_poly(ball, y, w);
                    let rec = Record {
                        y: ball.format(y),
                        w: ball.format(w),
                        p: p.terms().iter().map(|&(e, c)| (e / 2, c)).collect(),
                    };
                    serde_json::to_writer(&mut out, &rec)?;
                    out.write_all(b"\n")?;
                }
            }
            out.flush()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }

    /// Loads a table if possible, otherwise builds and stores one.
    pub fn load_or_build(&self, ball: &GroupBall, parallel: bool) -> Result<(KlTable, bool)> {
        if let Some(kl) = self.load(ball)? {
            return Ok((kl, true));
        }
        let kl = KlTable::build_with(ball, parallel);
        self.store(ball, &kl)?;
        Ok((kl, false))
    }

    pub fn clear(&self) -> Result<bool> {
        match fs::remove_file(&self.path) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(false),
            Err(e) => Err(e.into()),
        }
    }
}

fn word_len(word: &str) -> usize {
    if word == "e" {
        0
    } else {
        word.split('.').count()
    }
}
