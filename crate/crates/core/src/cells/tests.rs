use super::*;
use crate::coxeter::CoxeterMatrix;
use crate::error::Error;

fn ball(preset: &str, radius: usize) -> GroupBall {
    GroupBall::build(&CoxeterMatrix::preset(preset).unwrap(), radius).unwrap()
}

fn partitions(b: &GroupBall, margin: usize) -> (CellPartition, CellPartition) {
    let kl = KlTable::build(b);
    let g = MuGraph::build(b, &kl);
    (
        CellPartition::build(b, &g, PartitionSide::Left, margin),
        CellPartition::build(b, &g, PartitionSide::TwoSided, margin),
    )
}

fn names(b: &GroupBall, part: &CellPartition) -> Vec<Vec<String>> {
    part.blocks()
        .iter()
        .map(|blk| blk.iter().map(|&w| b.format(w)).collect())
        .collect()
}

/// Brute-force Ω: every additive product `z·u·y` with `u` a seed.
fn omega_oracle(b: &GroupBall, seeds: &[Elem]) -> Vec<bool> {
    let mut out = vec![false; b.len()];
    for &u in seeds {
        for z in b.elements() {
            let Ok(zu) = b.multiply(z, u) else { continue };
            if b.length(zu) != b.length(z) + b.length(u) {
                continue;
            }
            for y in b.elements() {
                let Ok(x) = b.multiply(zu, y) else { continue };
                if b.length(x) == b.length(zu) + b.length(y) {
                    out[x.index()] = true;
                }
            }
        }
    }
    out
}

#[test]
fn rank_one_cells() {
    let m = CoxeterMatrix::from_table(&["s"], &[&[1]]).unwrap();
    let b = GroupBall::build(&m, 1).unwrap();
    let (left, _) = partitions(&b, 0);
    assert_eq!(names(&b, &left), vec![vec!["e"], vec!["s"]]);
    assert!(left.leq(Elem(1), Elem(0)));
    assert!(!left.leq(Elem(0), Elem(1)));
}

#[test]
fn dihedral_left_cells() {
    let b = ball("i2:3", 3);
    let (left, two) = partitions(&b, 0);
    assert_eq!(
        names(&b, &left),
        vec![vec!["e"], vec!["s", "t.s"], vec!["t", "s.t"], vec!["s.t.s"]]
    );
    assert_eq!(two.len(), 3);
    // Blocks refine: each left block sits inside one two-sided block.
    for blk in left.blocks() {
        assert!(blk.iter().all(|&w| two.block_of(w) == two.block_of(blk[0])));
    }
    let w0 = b.parse("s.t.s").unwrap();
    assert_eq!(two.sinks(), vec![two.block_of(w0)]);
}

#[test]
fn identity_is_its_own_certified_block() {
    for (preset, radius) in [("a2tilde", 6), ("universal:3", 5), ("triangle:3,4,6", 7)] {
        let b = ball(preset, radius);
        let (left, two) = partitions(&b, 2);
        for p in [&left, &two] {
            assert_eq!(p.block(0), &[b.identity()]);
            assert_eq!(p.certification(0), Certification::Certified);
        }
    }
}

#[test]
fn universal_group_has_two_blocks() {
    let b = ball("universal:3", 8);
    let (_, two) = partitions(&b, 2);
    assert_eq!(two.region_count(), 2);
}

#[test]
fn a2tilde_has_three_blocks() {
    let b = ball("a2tilde", 12);
    let (_, two) = partitions(&b, 4);
    assert_eq!(two.region_count(), 3);
}

#[test]
fn lowest_cell_matches_brute_force() {
    for (preset, radius) in [("a2tilde", 8), ("triangle:3,4,6", 8), ("universal:3", 5), ("i2:5", 5), ("triangle:3,3,4", 8)] {
        let b = ball(preset, radius);
        let omega = OmegaSet::lowest_cell(&b).unwrap();
        let seeds: Vec<Elem> = omega.seeds().iter().map(|s| s.u).collect();
        assert_eq!(omega.bitmap(), omega_oracle(&b, &seeds), "{preset}");
        for x in omega.members() {
            let d = omega.decomposition(x).unwrap();
            let zu = b.multiply(d.z, d.u).unwrap();
            assert_eq!(b.multiply(zu, d.y).unwrap(), x);
            assert_eq!(b.length(x), b.length(d.z) + b.length(d.u) + b.length(d.y));
        }
    }
}

#[test]
fn lowest_cell_examples() {
    let b = ball("i2:5", 5);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    assert_eq!(omega.members().collect::<Vec<_>>(), vec![b.parse("s.t.s.t.s").unwrap()]);

    let b = ball("a2tilde", 8);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let x = b.parse("s.t.s.r").unwrap();
    let d = omega.decomposition(x).unwrap();
    assert_eq!((d.z, d.u, b.format(d.y)), (b.identity(), b.parse("s.t.s").unwrap(), "r".into()));
    // r·sts·t collapses since t ∈ R(sts); r·sts·r is additive.
    assert_eq!(b.length(b.parse("r.s.t.s.t").unwrap()), 3);
    let x = b.parse("r.s.t.s.r").unwrap();
    let d = omega.decomposition(x).unwrap();
    assert_eq!(
        [b.format(d.z), b.format(d.u), b.format(d.y)],
        ["r", "s.t.s", "r"].map(String::from)
    );
    assert!(omega.decompose(&b, b.parse("s").unwrap()).is_none());
    let u = b.parse("t.r.t").unwrap();
    let d = omega.decomposition(u).unwrap();
    assert_eq!((d.z, d.u, d.y), (b.identity(), u, b.identity()));

    let b = ball("universal:3", 4);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    assert_eq!(omega.len(), b.len() - 1);
    assert!(!omega.contains(b.identity()));
}

#[test]
fn empty_lambda() {
    let b = ball("i2:7", 5);
    assert!(matches!(OmegaSet::lowest_cell(&b), Err(Error::EmptyLambda)));
}

#[test]
fn w_i_sets() {
    let b = ball("triangle:3,4,6", 8);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let w6 = OmegaSet::w_i_closure(&b, 6).unwrap();
    assert_eq!(omega.bitmap(), w6.bitmap());
    let w4 = OmegaSet::w_i_closure(&b, 4).unwrap();
    assert!(w4.contains(b.parse("s.r.s.r").unwrap()));
    let a = ball("a2tilde", 6);
    assert!(matches!(OmegaSet::w_i_closure(&a, 4), Err(Error::NoSuchParabolic(4))));
}

#[test]
fn d_prime_basics() {
    let b = ball("a2tilde", 9);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let dp = DPrimeSet::build(&b, &omega);
    assert!(dp.undecided.is_empty());
    for seed in omega.seeds() {
        let m = dp.members.iter().find(|m| m.x == seed.u).unwrap();
        assert_eq!((m.w, m.y, m.d), (seed.u, b.identity(), Some(seed.u)));
    }
    for m in &dp.members {
        assert!(omega.contains(m.x));
        if let Some(d) = m.d {
            assert_eq!(b.inverse(d), d);
        }
    }
    let b = ball("universal:3", 5);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let dp = DPrimeSet::build(&b, &omega);
    let xs: Vec<String> = dp.members.iter().map(|m| b.format(m.x)).collect();
    assert_eq!(xs, ["s1", "s2", "s3"]);
}

#[test]
fn gamma_sets_are_suffix_closures() {
    let b = ball("a2tilde", 7);
    let w0 = b.parse("s.t.s").unwrap();
    let g = gamma_set(&b, w0);
    for x in b.elements() {
        let inside = b
            .multiply(x, w0)
            .is_ok_and(|xw0| b.length(xw0) + 3 == b.length(x));
        assert_eq!(g.contains(&x), inside, "{}", b.format(x));
    }
}

#[test]
fn report_and_dot() {
    let b = ball("i2:3", 3);
    let kl = KlTable::build(&b);
    let g = MuGraph::build(&b, &kl);
    let left = CellPartition::build(&b, &g, PartitionSide::Left, 0);
    let two = CellPartition::build(&b, &g, PartitionSide::TwoSided, 0);
    let omega = OmegaSet::lowest_cell(&b).unwrap();
    let rep = cell_report(&b, &left, &two, Some(&omega));
    assert_eq!(rep.len(), 6);
    assert!(rep[5].in_omega && rep[5].certified);
    let dot = dot_mu_graph(&b, &g, Side::Left);
    assert!(dot.starts_with("digraph mu {") && dot.contains("label=\"s:1\""));
    assert!(dot_block_dag(&b, &two).contains("b0 -> b1"));
}
