//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines are always shown.
//! The process fails when a criterion fails, except for a failure listed in
//! `KNOWN_UNATTAINABLE` that occurs in exactly the recorded way.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use coxeter_hecke::cells::{gamma_set, DPrimeSet, OmegaSet};
use coxeter_hecke::cli;
use coxeter_hecke::hecke::max_f_degree;
use coxeter_hecke::kl::{c_mult, eta_expand, KlTable};
use coxeter_hecke::verify::{run_suite, Analysis, Options};
use coxeter_hecke::{CoxeterMatrix, GroupBall, GroupProfile};

/// The groups of the boundedness criterion: preset, radius, expected `a₀`.
const BOUNDED: &[(&str, usize, usize)] = &[
    ("a2tilde", 12, 3),
    ("triangle:3,4,6", 10, 6),
    ("triangle:3,4,0", 10, 4),
    ("universal:3", 8, 1),
];

const MARGIN: usize = 4;

/// `(criterion, preset, reason)` for failures that cannot be avoided at the
/// stated radius.
const KNOWN_UNATTAINABLE: &[(u32, &str, &str)] = &[(
    2,
    "triangle:3,4,6",
    "deg f(x,y,z) <= min(l(x), l(y)) <= 5 when l(x) + l(y) <= 10, so a0 = 6 is out of reach",
)];

type Verdict = Result<String, Failure>;

struct Failure {
    detail: String,
    /// Presets responsible, for matching against `KNOWN_UNATTAINABLE`.
    culprits: Vec<String>,
}

fn fail(detail: impl Into<String>) -> Failure {
    Failure { detail: detail.into(), culprits: Vec::new() }
}

fn ball(preset: &str, radius: usize) -> GroupBall {
    GroupBall::build(&CoxeterMatrix::preset(preset).unwrap(), radius).unwrap()
}

fn analysis(preset: &str, radius: usize, margin: usize) -> Analysis {
    let ball = ball(preset, radius);
    let mut options = Options::for_ball(&ball);
    options.margin = margin;
    Analysis::new(ball, options)
}

/// Runs suites and fails on the first violation.
fn suites_clean(a: &Analysis, ids: &[&str], label: &str) -> Result<usize, Failure> {
    let mut checked = 0;
    for id in ids {
        let r = run_suite(a, id).map_err(|e| fail(format!("{label} {id}: {e}")))?;
        if !r.passed() {
            return Err(fail(format!(
                "{label} {id}: {} violations, first {:?}",
                r.violations,
                r.witnesses.first()
            )));
        }
        checked += r.checked;
    }
    Ok(checked)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for m in 3..=6u32 {
        let b = ball(&format!("i2:{m}"), 2 * m as usize);
        let kl = KlTable::build(&b);
        for w in b.elements() {
            for y in b.elements() {
                let p = kl.kl_poly(&b, y, w);
                let below = b.bruhat_leq(y, w);
                if below && (p.terms() != [(0, 1)]) || !below && !p.is_zero() {
                    return Err(fail(format!("I2({m}): P({}, {}) = {p}", b.format(y), b.format(w))));
                }
                let adjacent = below && b.length(w) == b.length(y) + 1;
                if (kl.mu(y, w) == 1) != adjacent {
                    return Err(fail(format!("I2({m}): mu({}, {}) = {}", b.format(y), b.format(w), kl.mu(y, w))));
                }
            }
        }
        let w0 = *b.elements().collect::<Vec<_>>().last().unwrap();
        let h = c_mult(&b, &kl, w0, w0).map_err(|e| fail(e.to_string()))?.coeff(w0);
        let deg = eta_expand(&h).degree();
        if deg != Some(m as usize) {
            return Err(fail(format!("I2({m}): eta-degree of h(w0, w0, w0) is {deg:?}")));
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(5) {
        return Err(fail(format!("took {took:?}")));
    }
    Ok(format!("I2(3..6) at L = 2m, {took:?}"))
}

fn criterion_2() -> Verdict {
    let mut seen = Vec::new();
    let mut culprits = Vec::new();
    for &(preset, radius, a0) in BOUNDED {
        let start = Instant::now();
        let b = ball(preset, radius);
        assert_eq!(GroupProfile::of(b.matrix()).a0, a0, "{preset}");
        let survey = max_f_degree(&b, radius);
        let max = survey.max_degree.unwrap_or(0);
        seen.push(format!("{preset} L={radius}: max {max}, a0 {a0}"));
        if max > a0 || survey.pairs_skipped != 0 || start.elapsed() > Duration::from_secs(600) {
            culprits.push(format!("{preset} (bound broken)"));
        } else if max < a0 {
            culprits.push(preset.to_string());
        }
    }
    if culprits.is_empty() {
        Ok(seen.join("; "))
    } else {
        Err(Failure { detail: seen.join("; "), culprits })
    }
}

/// The radius at which the `(3, 4, 6)` maximum becomes reachable.
fn criterion_2_supplement() -> Verdict {
    let b = ball("triangle:3,4,6", 12);
    let survey = max_f_degree(&b, 12);
    let max = survey.max_degree.unwrap_or(0);
    if max == 6 {
        Ok(format!("(3,4,6) at L=12: max {max} = a0"))
    } else {
        Err(fail(format!("(3,4,6) at L=12: max {max}")))
    }
}

fn criterion_3() -> Verdict {
    let mut total = 0;
    for &(preset, radius, _) in BOUNDED {
        total += suites_clean(&analysis(preset, radius, MARGIN), &["F_IDENTITIES"], preset)?;
    }
    Ok(format!("{total} identities checked on 4 groups"))
}

fn criterion_4() -> Verdict {
    const IDS: &[&str] = &[
        "WORD_LEMMA_2_2",
        "WORD_LEMMA_2_3",
        "WORD_LEMMA_2_4",
        "LENGTH_LEMMA_2_5",
        "COR_2_6",
        "DEG_LEMMA_2_7",
        "DEG_LEMMA_2_8",
    ];
    let mut total = 0;
    for &(preset, radius, _) in BOUNDED {
        total += suites_clean(&analysis(preset, radius, MARGIN), IDS, preset)?;
    }
    let a3 = analysis("a3", 6, 1);
    let r = run_suite(&a3, "WORD_LEMMA_2_3").map_err(|e| fail(e.to_string()))?;
    let control = r.notes.iter().any(|n| n.contains("conclusion false") && n.ends_with("filter: true"));
    // The control itself is the only decided case; the group is filtered out.
    if !control || r.checked != 1 || r.hypothesis_instances != Some(0) || !r.passed() {
        return Err(fail(format!("A3 control not excluded: {:?}", r.notes)));
    }
    Ok(format!("{total} cases checked; A3 control excluded"))
}

fn criterion_5() -> Verdict {
    let a = analysis("a2tilde", 12, MARGIN);
    let b = a.ball();
    let omega = a.omega().map_err(|e| fail(e.to_string()))?;
    let afun = a.afun().map_err(|e| fail(e.to_string()))?;
    let region: Vec<_> = b.elements().filter(|&w| a.in_region(w)).collect();
    for &w in &region {
        let v = afun.get(w);
        let by_scan = v.scanned_h == Some(3);
        if omega.contains(w) != by_scan || omega.contains(w) != (v.a_hat == 3) {
            return Err(fail(format!("{}: in omega {}, scanned {:?}", b.format(w), omega.contains(w), v.scanned_h)));
        }
    }
    let left = a.left_cells();
    let mut gammas = 0;
    for seed in omega.seeds() {
        let gamma: Vec<_> = gamma_set(b, seed.u).into_iter().filter(|&w| a.in_region(w)).collect();
        let block = left.region_members(b, left.block_of(seed.u));
        if gamma != block {
            return Err(fail(format!("Gamma of {} is not a left block", b.format(seed.u))));
        }
        gammas += 1;
    }
    let checked = suites_clean(&a, &["LOWEST_THM_1_5", "COR_1_6", "PROP_3_1"], "a2tilde")?;
    Ok(format!(
        "{} region elements, {} in omega, {gammas} Gamma sets, {checked} suite checks",
        region.len(),
        region.iter().filter(|&&w| omega.contains(w)).count()
    ))
}

fn criterion_6() -> Verdict {
    let runs: &[(&str, usize, &str, usize)] = &[
        ("a2tilde", 12, "CELL_COUNT_4_1", 3),
        ("universal:3", 8, "CELL_COUNT_4_1", 2),
        ("triangle:3,4,6", 10, "CELL_COUNT_4_5", 5),
        ("triangle:3,3,4", 12, "CELL_COUNT_4_5", 4),
    ];
    let mut seen = Vec::new();
    for &(preset, radius, id, expected) in runs {
        let a = analysis(preset, radius, MARGIN);
        let observed = a.two_sided_cells().region_count();
        if observed != expected {
            return Err(fail(format!("{preset}: {observed} blocks, expected {expected}")));
        }
        suites_clean(&a, &[id], preset)?;
        seen.push(format!("{preset} {observed}"));
    }
    Ok(seen.join(", "))
}

fn dprime_count(preset: &str, radius: usize) -> usize {
    let b = ball(preset, radius);
    DPrimeSet::build(&b, &OmegaSet::lowest_cell(&b).unwrap()).len()
}

fn criterion_7() -> Verdict {
    let flat: Vec<usize> = [9, 11, 13].iter().map(|&l| dprime_count("a2tilde", l)).collect();
    if flat != [6, 6, 6] {
        return Err(fail(format!("a2tilde D' counts {flat:?}")));
    }
    let growing: Vec<usize> = [8, 10, 12].iter().map(|&l| dprime_count("triangle:3,4,0", l)).collect();
    if !(growing[0] < growing[1] && growing[1] < growing[2]) {
        return Err(fail(format!("(3,4,inf) D' counts {growing:?}")));
    }
    Ok(format!("a2tilde {flat:?} at L = 9, 11, 13; (3,4,inf) {growing:?} at L = 8, 10, 12"))
}

fn criterion_8() -> Verdict {
    let a = analysis("triangle:3,4,6", 10, MARGIN);
    let r = run_suite(&a, "MU_LEMMA_4_3").map_err(|e| fail(e.to_string()))?;
    let instances = r.hypothesis_instances.unwrap_or(0);
    if instances == 0 || !r.passed() {
        return Err(fail(format!("{instances} instances, {} violations", r.violations)));
    }
    // Equal-length longest elements of rank-2 parabolics reach each other.
    let a = analysis("triangle:3,3,0", 10, MARGIN);
    suites_clean(&a, &["COR_4_4"], "(3,3,inf)")?;
    let b = a.ball();
    let two = a.two_sided_cells();
    let longest: Vec<_> = ["s.t.s", "s.r.s"].iter().map(|w| b.parse(w).unwrap()).collect();
    if !(two.leq(longest[0], longest[1]) && two.leq(longest[1], longest[0])) {
        return Err(fail("s.t.s and s.r.s are not mutually reachable in (3,3,inf)"));
    }
    Ok(format!("{instances} instances in (3,4,6) with mu = 1; s.t.s ~ s.r.s in (3,3,inf)"))
}

fn criterion_9() -> Verdict {
    let mut elements = 0;
    for &(preset, radius, _) in BOUNDED {
        let a = analysis(preset, radius, MARGIN);
        let afun = a.afun().map_err(|e| fail(e.to_string()))?;
        for w in a.ball().elements() {
            if afun.get(w).a_hat > a.ball().length(w) {
                return Err(fail(format!("{preset}: a_hat({}) exceeds length", a.ball().format(w))));
            }
        }
        elements += a.ball().len();
    }
    let a = analysis("triangle:3,3,4", 12, MARGIN);
    let b = a.ball();
    let (st, sr) = (b.parse("s.t.s").unwrap(), b.parse("s.r.s").unwrap());
    let two = a.two_sided_cells();
    let block = two.block_of(st);
    if block != two.block_of(sr) || !a.in_region(st) || !two.meets_region(block) {
        return Err(fail("(3,3,4): s.t.s and s.r.s in different blocks"));
    }
    suites_clean(&a, &["SECTION_5_PROBES"], "(3,3,4)")?;
    Ok(format!("a_hat <= l on {elements} elements; s.t.s, s.r.s share a block in (3,3,4)"))
}

fn cli_bytes(args: &[&str], env_cache: Option<&str>) -> (i32, Vec<u8>) {
    let mut argv = vec!["coxhecke", "--deterministic", "--format", "jsonl"];
    argv.extend_from_slice(args);
    if let Some(dir) = env_cache {
        argv.extend_from_slice(&["--cache", dir]);
    }
    let mut out = Vec::new();
    let code = cli::run(argv, &mut out, &mut std::io::sink());
    (code, out)
}

fn criterion_10() -> Verdict {
    let margin = MARGIN.to_string();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for &(preset, radius, _) in BOUNDED {
        let radius = radius.to_string();
        runs.push(["check", "--group", preset, "--radius", &radius, "--margin", &margin].map(String::from).to_vec());
        runs.push(["afun", "--group", preset, "--radius", &radius].map(String::from).to_vec());
    }
    for m in 3..=6 {
        let (g, r) = (format!("i2:{m}"), (2 * m).to_string());
        runs.push(["kl", "--all", "--group", &g, "--radius", &r].map(String::from).to_vec());
    }
    for (preset, radius) in [("triangle:3,3,4", "12"), ("triangle:3,3,0", "10")] {
        runs.push(["check", "--group", preset, "--radius", radius, "--margin", &margin].map(String::from).to_vec());
    }
    for l in ["9", "11", "13"] {
        runs.push(["lowest", "--group", "a2tilde", "--radius", l].map(String::from).to_vec());
    }
    runs.push(["cells", "--group", "a2tilde", "--radius", "12", "--margin", &margin].map(String::from).to_vec());

    let cache = tempfile::tempdir().map_err(|e| fail(e.to_string()))?;
    let dir = cache.path().to_str().unwrap().to_string();
    let mut compared = 0;
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code_a, first) = cli_bytes(&args, None);
        let (code_b, second) = cli_bytes(&args, None);
        if first != second || code_a != code_b {
            return Err(fail(format!("{args:?} differs between runs")));
        }
        // The header echoes the cache directory; compare the records below it.
        let (_, cold) = cli_bytes(&args, Some(&dir));
        let (_, warm) = cli_bytes(&args, Some(&dir));
        let body = |bytes: &[u8]| bytes.splitn(2, |&c| c == b'\n').nth(1).map(<[u8]>::to_vec);
        if cold != warm || body(&cold) != body(&first) {
            return Err(fail(format!("{args:?} differs between cold and warm cache")));
        }
        compared += 1;
    }
    Ok(format!("{compared} CLI runs byte-identical, with and without a warm KL cache"))
}

fn main() {
    let criteria: &[(u32, &str, fn() -> Verdict)] = &[
        (1, "dihedral ground truth", criterion_1),
        (2, "boundedness of deg f", criterion_2),
        (2, "boundedness, (3,4,6) at the radius where a0 is reachable", criterion_2_supplement),
        (3, "f identities", criterion_3),
        (4, "word combinatorics", criterion_4),
        (5, "lowest cell on A2~", criterion_5),
        (6, "cell counts", criterion_6),
        (7, "D' growth probe", criterion_7),
        (8, "mu lemma", criterion_8),
        (9, "a_hat bound and same-order parabolics", criterion_9),
        (10, "determinism and cache", criterion_10),
    ];
    let known: BTreeMap<(u32, &str), &str> = KNOWN_UNATTAINABLE.iter().map(|&(n, p, why)| ((n, p), why)).collect();
    let mut unexpected = 0;
    for &(n, name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail} [{:.1?}]", start.elapsed()),
            Err(f) => {
                let reasons: Vec<&str> = f.culprits.iter().filter_map(|c| known.get(&(n, c.as_str())).copied()).collect();
                let expected = !f.culprits.is_empty() && reasons.len() == f.culprits.len();
                let tag = if expected { format!(" [known: {}]", reasons.join("; ")) } else { String::new() };
                println!("FAIL criterion {n} ({name}): {}{tag}", f.detail);
                if !expected {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
