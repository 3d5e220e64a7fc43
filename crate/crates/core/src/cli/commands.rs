use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{
    cache_dir, load_matrix, CacheAction, CellsArgs, CheckArgs, Command, Emitter, Failure, Format, GlobalArgs,
    HeckeArgs, JtableArgs, KlArgs, Outcome, Session, SideArg, TableKind, EXIT_OK, EXIT_SUITE_FAILURE,
};
use crate::cells::{
    cell_report, dot_block_dag, dot_mu_graph, gamma_set, CellPartition, Certification, PartitionSide,
};
use crate::coxeter::{Elem, GenSet, GroupBall, Side};
use crate::hecke::{f_coeff, max_f_degree, t_mult, xi_expand};
use crate::kl::{GammaTable, JTableKind, KlCache};
use crate::laurent::BasisExpansion;
use crate::verify::{run_suite, SuiteClass, SUITES};

pub(super) fn dispatch(s: &Session, command: &Command, em: &mut Emitter) -> Outcome {
    em.header(&s.config)?;
    match command {
        Command::Ball => ball(s, em),
        Command::Profile => profile(s, em),
        Command::Kl(args) => kl(s, args, em),
        Command::Hecke(args) => hecke(s, args, em),
        Command::Afun => afun(s, em),
        Command::Cells(args) => cells(s, args, em),
        Command::Lowest => lowest(s, em),
        Command::Jtable(args) => jtable(s, args, em),
        Command::Check(args) => check(s, args, em),
        Command::Cache { .. } => unreachable!("handled before a session opens"),
    }
}

fn names(ball: &GroupBall, set: GenSet) -> Vec<String> {
    set.iter().map(|s| ball.matrix().gen_name(s).to_string()).collect()
}

fn braced(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn words(ball: &GroupBall, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| ball.format(x)).collect()
}

/// Coefficients up to the degree; the zero expansion is empty.
fn trimmed(e: &BasisExpansion) -> Vec<i64> {
    let n = e.degree().map_or(0, |d| d + 1);
    e.coeffs[..n].to_vec()
}

/// `c₀ + c₁·var + …` in ascending powers.
fn poly_text(coeffs: &[i64], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (k, 1) => format!("{var}^{k}"),
            (k, c) => format!("{c}{var}^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn ball(s: &Session, em: &mut Emitter) -> Outcome {
    let b = s.analysis.ball();
    let hash = b.content_hash();
    em.emit(
        "ball",
        json!({"elements": b.len(), "max_length": b.max_length(), "closed": b.is_closed(), "content_hash": hash}),
        || format!("# {} elements, max length {}, content hash {hash}", b.len(), b.max_length()),
    )?;
    for w in b.elements() {
        let left = names(b, b.left_descents(w));
        let right = names(b, b.right_descents(w));
        em.emit(
            "element",
            json!({"word": b.format(w), "length": b.length(w), "left_descents": left, "right_descents": right}),
            || format!("{}\t{}\tL={}\tR={}", b.format(w), b.length(w), braced(&left), braced(&right)),
        )?;
    }
    Ok(EXIT_OK)
}

fn profile(s: &Session, em: &mut Emitter) -> Outcome {
    let b = s.analysis.ball();
    let p = s.analysis.profile();
    let pairs: Vec<[String; 2]> = p
        .lambda_pairs
        .iter()
        .map(|&(x, y)| [b.matrix().gen_name(x).to_string(), b.matrix().gen_name(y).to_string()])
        .collect();
    let text = || {
        let shown: Vec<String> = pairs.iter().map(|[x, y]| format!("{{{x},{y}}}")).collect();
        let orders: Vec<String> = p.o_classes.iter().map(u32::to_string).collect();
        format!(
            "rank = {}\na0 = {}\nlambda = {} pairs: {}\nO = {}\ncrystallographic = {}\ncomplete graph = {}",
            b.rank(),
            p.a0,
            pairs.len(),
            shown.join(" "),
            braced(&orders),
            p.crystallographic,
            p.complete_graph
        )
    };
    em.emit(
        "profile",
        json!({"rank": b.rank(), "a0": p.a0, "lambda_pairs": pairs, "o_classes": p.o_classes,
               "crystallographic": p.crystallographic, "complete_graph": p.complete_graph}),
        text,
    )?;
    Ok(EXIT_OK)
}

fn kl(s: &Session, args: &KlArgs, em: &mut Emitter) -> Outcome {
    let b = s.analysis.ball();
    let table = s.analysis.kl();
    let one = |em: &mut Emitter, y: Elem, w: Elem, labelled: bool| {
        let p = table.kl_poly(b, y, w).to_q_string();
        let mu = table.mu(y, w);
        em.emit("kl", json!({"y": b.format(y), "w": b.format(w), "P": p, "mu": mu}), || {
            if labelled {
                format!("P({}, {}) = {p}, mu = {mu}", b.format(y), b.format(w))
            } else {
                format!("P = {p}, mu = {mu}")
            }
        })
    };
    if let (Some(y), Some(w)) = (&args.y, &args.w) {
        one(em, b.parse(y)?, b.parse(w)?, false)?;
    } else {
        for w in b.elements() {
            for y in b.bruhat_interval(w) {
                one(em, y, w, true)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn hecke(s: &Session, args: &HeckeArgs, em: &mut Emitter) -> Outcome {
    let b = s.analysis.ball();
    if args.survey {
        let sv = max_f_degree(b, s.analysis.options().pair_budget);
        let a0 = s.analysis.profile().a0;
        let wit: Vec<[String; 3]> = sv
            .witnesses
            .iter()
            .map(|&(x, y, z)| [b.format(x), b.format(y), b.format(z)])
            .collect();
        em.emit(
            "survey",
            json!({"max_degree": sv.max_degree, "a0": a0, "budget": sv.budget, "pairs_scanned": sv.pairs_scanned,
                   "pairs_skipped": sv.pairs_skipped, "witnesses": wit}),
            || {
                let mut t = format!(
                    "max degree {} (a0 = {a0}), budget {}, pairs scanned {}, skipped {}",
                    sv.max_degree.map_or("none".into(), |d| d.to_string()),
                    sv.budget,
                    sv.pairs_scanned,
                    sv.pairs_skipped
                );
                for [x, y, z] in &wit {
                    t.push_str(&format!("\n  attained by ({x}, {y}, {z})"));
                }
                t
            },
        )?;
    }
    if let (Some(x), Some(y)) = (&args.x, &args.y) {
        let (x, y) = (b.parse(x)?, b.parse(y)?);
        let rows: Vec<(Elem, Vec<i64>)> = match &args.z {
            Some(z) => {
                let z = b.parse(z)?;
                vec![(z, trimmed(&f_coeff(b, x, y, z)?))]
            }
            None => t_mult(b, x, y)?.iter().map(|(z, p)| (z, trimmed(&xi_expand(p)))).collect(),
        };
        for (z, f) in rows {
            let (xs, ys, zs) = (b.format(x), b.format(y), b.format(z));
            em.emit("f", json!({"x": xs, "y": ys, "z": zs, "f": f}), || {
                format!("f({xs}, {ys}, {zs}) = {}", poly_text(&f, "xi"))
            })?;
        }
    }
    Ok(EXIT_OK)
}

fn afun(s: &Session, em: &mut Emitter) -> Outcome {
    let b = s.analysis.ball();
    let table = s.analysis.afun()?;
    let lower = table.values.iter().filter(|v| v.exactness != crate::kl::Exactness::Exact).count();
    em.emit(
        "afun",
        json!({"budget": table.budget, "a0": table.a0, "lower_bounds": lower,
               "f_h_disagreements": table.disagreements().len()}),
        || format!("# budget {}, a0 = {}, {lower} values are lower bounds", table.budget, table.a0),
    )?;
    for v in &table.values {
        let pair = |w: Elem, u: Elem| [b.format(w), b.format(u)];
        let witnesses: Vec<[String; 2]> = v.witnesses.iter().map(|p| pair(p.w, p.u)).collect();
        let omega = v.omega_witness.map(|p| pair(p.w, p.u));
        let exact = serde_json::to_value(v.exactness).map_err(crate::error::Error::Json)?;
        em.emit(
            "a",
            json!({"w": b.format(v.v), "length": b.length(v.v), "a_hat": v.a_hat, "exactness": exact,
                   "scanned_h": v.scanned_h, "scanned_f": v.scanned_f, "witnesses": witnesses,
                   "omega_witness": omega}),
            || {
                let tag = exact.as_str().unwrap_or_default().to_lowercase();
                format!("{}\t{}\ta = {}\t{tag}", b.format(v.v), b.length(v.v), v.a_hat)
            },
        )?;
    }
    Ok(EXIT_OK)
}

fn cells(s: &Session, args: &CellsArgs, em: &mut Emitter) -> Outcome {
    let a = &s.analysis;
    let b = a.ball();
    let right;
    let part: &CellPartition = match args.side {
        SideArg::Left => a.left_cells(),
        SideArg::TwoSided => a.two_sided_cells(),
        SideArg::Right => {
            right = CellPartition::build(b, a.graph(), PartitionSide::Right, a.options().margin);
            &right
        }
    };
    if em.format() == Format::Dot {
        let dot = if args.mu_graph {
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
                SideArg::TwoSided => {
                    return Err(Failure::Usage("--mu-graph needs --side left or --side right".into()))
                }
            };
            dot_mu_graph(b, a.graph(), side)
        } else {
            dot_block_dag(b, part)
        };
        em.raw(&dot);
        return Ok(EXIT_OK);
    }
    let side = serde_json::to_value(part.side()).map_err(crate::error::Error::Json)?;
    em.emit(
        "cells",
        json!({"side": side, "blocks": part.len(), "region_blocks": part.region_count(),
               "certified_blocks": part.certified_count(), "region_limit": part.region_limit()}),
        || {
            format!(
                "# {} blocks, {} meet the certified region (length <= {}), {} lie inside it",
                part.len(),
                part.region_count(),
                part.region_limit(),
                part.certified_count()
            )
        },
    )?;
    for (i, members) in part.blocks().iter().enumerate() {
        let certified = part.certification(i) == Certification::Certified;
        let shown = words(b, members);
        em.emit(
            "block",
            json!({"index": i, "size": members.len(), "certified": certified, "meets_region": part.meets_region(i),
                   "below": part.dag(i), "members": shown}),
            || {
                let tag = if certified { "certified" } else { "partial" };
                format!("block {i} ({tag}, {} elements, below {:?}): {}", members.len(), part.dag(i), shown.join(" "))
            },
        )?;
    }
    if em.format() == Format::Jsonl {
        for r in cell_report(b, a.left_cells(), a.two_sided_cells(), a.omega().ok()) {
            em.emit("cell", serde_json::to_value(&r).map_err(crate::error::Error::Json)?, String::new)?;
        }
    }
    Ok(EXIT_OK)
}

fn lowest(s: &Session, em: &mut Emitter) -> Outcome {
    let a = &s.analysis;
    let b = a.ball();
    let omega = a.omega()?;
    let dp = a.dprime()?;
    let seeds: Vec<String> = omega.seeds().iter().map(|x| b.format(x.u)).collect();
    let involutions = words(b, &dp.involutions());
    em.emit(
        "lowest",
        json!({"a0": omega.a0(), "seeds": seeds, "omega": omega.len(), "dprime": dp.len(),
               "undecided": dp.undecided.len(), "involutions": involutions}),
        || {
            format!(
                "# a0 = {}, seeds {}, |Omega| = {}, |D'| = {} ({} undecided)\n# involutions: {}",
                omega.a0(),
                seeds.join(" "),
                omega.len(),
                dp.len(),
                dp.undecided.len(),
                involutions.join(" ")
            )
        },
    )?;
    for w in omega.members() {
        let d = omega.decomposition(w).expect("members are decomposed");
        let (ws, z, u, y) = (b.format(w), b.format(d.z), b.format(d.u), b.format(d.y));
        em.emit("omega", json!({"w": ws, "z": z, "u": u, "y": y}), || format!("omega {ws} = ({z})({u})({y})"))?;
    }
    for m in &dp.members {
        let gamma = words(b, &gamma_set(b, m.x));
        let (x, w, y, d) = (b.format(m.x), b.format(m.w), b.format(m.y), m.d.map(|d| b.format(d)));
        em.emit("dprime", json!({"x": x, "w": w, "y": y, "d": d, "gamma": gamma}), || {
            format!(
                "D' {x} = ({w})({y}), d = {}, Gamma has {} elements",
                d.as_deref().unwrap_or("outside the ball"),
                gamma.len()
            )
        })?;
    }
    Ok(EXIT_OK)
}

fn jtable(s: &Session, args: &JtableArgs, em: &mut Emitter) -> Outcome {
    let a = &s.analysis;
    let b = a.ball();
    let omega = a.omega()?;
    let max_len = args.max_length.unwrap_or(b.radius() / 2);
    let (kind, elements) = match args.kind {
        TableKind::Omega => (
            JTableKind::Omega,
            omega.members().filter(|&w| b.length(w) <= max_len).collect::<Vec<_>>(),
        ),
        TableKind::Unital => {
            let w0 = match &args.w0 {
                Some(w) => b.parse(w)?,
                None => omega.seeds()[0].u,
            };
            let gamma = gamma_set(b, w0);
            let mut both: Vec<Elem> = gamma
                .iter()
                .copied()
                .filter(|&x| b.length(x) <= max_len && gamma.contains(&b.inverse(x)))
                .collect();
            both.sort();
            (JTableKind::Unital { w0 }, both)
        }
    };
    let table = GammaTable::build(b, a.kl(), omega, &elements, kind, a.options().pair_budget)?;
    let n = table.len();
    let unit: Vec<[String; 3]> = table
        .unit_violations
        .iter()
        .map(|&(x, y, z)| [b.format(x), b.format(y), b.format(z)])
        .collect();
    let label = match kind {
        JTableKind::Omega => "omega".to_string(),
        JTableKind::Unital { w0 } => format!("unital {}", b.format(w0)),
    };
    em.emit(
        "jtable",
        json!({"table": label, "a0": table.a0, "elements": words(b, &elements), "computed": table.computed(),
               "entries": n * n * n, "unit_violations": unit}),
        || {
            format!(
                "# {label}: {n} elements of length <= {max_len}, {} of {} entries computed, {} unit violations",
                table.computed(),
                n * n * n,
                unit.len()
            )
        },
    )?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let Some(g) = table.at(i, j, k).filter(|&g| g != 0) else { continue };
                let (w, u, v) = (b.format(elements[i]), b.format(elements[j]), b.format(elements[k]));
                em.emit("gamma", json!({"w": w, "u": u, "v": v, "gamma": g}), || {
                    format!("gamma({w}, {u}, {v}) = {g}")
                })?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn check(s: &Session, args: &CheckArgs, em: &mut Emitter) -> Outcome {
    let ids: Vec<&str> = if args.suites.is_empty() {
        SUITES.to_vec()
    } else {
        args.suites.iter().map(String::as_str).collect()
    };
    let mut failed = Vec::new();
    for id in ids {
        let r = run_suite(&s.analysis, id)?;
        if !r.passed() && r.class == SuiteClass::Theorem {
            failed.push(r.suite.clone());
        }
        let value = serde_json::to_value(&r).map_err(crate::error::Error::Json)?;
        em.emit("suite", value, || {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            let class = if r.class == SuiteClass::Probe { " (probe)" } else { "" };
            let mut t = format!(
                "{verdict} {}{class}: checked {}, violations {}, skipped {}",
                r.suite, r.checked, r.violations, r.skipped
            );
            if let Some(n) = r.hypothesis_instances {
                t.push_str(&format!(", hypothesis instances {n}"));
            }
            if !s.config.deterministic {
                t.push_str(&format!(", {} ms", r.ms));
            }
            for note in &r.notes {
                t.push_str(&format!("\n  note: {note}"));
            }
            for w in &r.witnesses {
                t.push_str(&format!("\n  witness: {w}"));
            }
            t
        })?;
    }
    em.emit("summary", json!({"failed": failed}), || {
        if failed.is_empty() {
            "all theorem suites passed".into()
        } else {
            format!("failed: {}", failed.join(" "))
        }
    })?;
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_SUITE_FAILURE })
}

fn cache_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    match fs::read_dir(dir) {
        Ok(entries) => {
            for entry in entries {
                let path = entry?.path();
                let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
                if name.starts_with("kl-") && name.ends_with(".jsonl") {
                    files.push(path);
                }
            }
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e),
    }
    files.sort();
    Ok(files)
}

fn inspect_file(path: &Path) -> std::io::Result<Value> {
    let bytes = fs::metadata(path)?.len();
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let header: Value = match lines.next() {
        Some(line) => serde_json::from_str(&line?).unwrap_or(Value::Null),
        None => Value::Null,
    };
    let records = lines.count();
    Ok(json!({"path": path.display().to_string(), "header": header, "records": records, "bytes": bytes}))
}

/// Operates on the file of `--matrix`/`--group` when given, otherwise on
/// every cache file in the directory.
pub(super) fn cache(g: &GlobalArgs, action: CacheAction, em: &mut Emitter) -> Outcome {
    let dir = cache_dir(g).unwrap_or_else(KlCache::default_dir);
    let files = if g.matrix.is_some() || g.group.is_some() {
        let (matrix, _) = load_matrix(g)?;
        vec![KlCache::for_matrix(&dir, &matrix).path().to_path_buf()]
    } else {
        if matches!(action, CacheAction::Path) {
            em.emit("cache_dir", json!({"path": dir.display().to_string()}), || dir.display().to_string())?;
            return Ok(EXIT_OK);
        }
        cache_files(&dir)?
    };
    for path in files {
        let shown = path.display().to_string();
        match action {
            CacheAction::Path => em.emit("cache_path", json!({"path": shown}), || shown.clone())?,
            CacheAction::Inspect => {
                if !path.exists() {
                    em.emit("cache_file", json!({"path": shown, "present": false}), || format!("{shown}: absent"))?;
                    continue;
                }
                let info = inspect_file(&path)?;
                let text = format!(
                    "{shown}: radius {}, {} records, {} bytes",
                    info["header"]["radius"], info["records"], info["bytes"]
                );
                em.emit("cache_file", info, || text)?;
            }
            CacheAction::Clear => {
                let removed = KlCache::new(&path).clear()?;
                em.emit("cache_cleared", json!({"path": shown, "removed": removed}), || {
                    format!("{shown}: {}", if removed { "removed" } else { "absent" })
                })?;
            }
        }
    }
    Ok(EXIT_OK)
}
