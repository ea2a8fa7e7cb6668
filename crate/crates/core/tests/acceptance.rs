//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kn_frieze::construct::{
    default_anchor, evaluate_random_path, frieze_from_cluster, frieze_from_matrix, is_geometric, matrix_from_sl_frieze,
    to_sl_frieze, GeometricWitness,
};
use kn_frieze::frieze::{
    build_quiver, check_diamonds, diamonds, fundamental_domain_graph, phi, phi_inverse, validate_frieze, FriezePattern,
};
use kn_frieze::io::fixtures;
use kn_frieze::plucker::GpSign;
use kn_frieze::rat::rat;
use kn_frieze::separation::{enumerate_clusters, move_graph_summary, DEFAULT_CAP};
use kn_frieze::{gp_relations, minors, three_term_relations, Rat, Shape, Subset};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LIMIT_ARRAYS: Duration = Duration::from_secs(1);
const LIMIT_HEXAGON: Duration = Duration::from_secs(1);
const LIMIT_NONAGON: Duration = Duration::from_secs(1);
const LIMIT_ENUMERATION: Duration = Duration::from_secs(120);
const LIMIT_PHI: Duration = Duration::from_secs(10);

const CATALAN: [(usize, usize); 5] = [(4, 2), (5, 5), (6, 14), (7, 42), (8, 132)];
const HEXAGON_CLUSTERS: usize = 34;
const HEPTAGON_CLUSTERS: usize = 259;
const MATRICES_PER_SHAPE: usize = 100;
const PATH_PAIRS: usize = 50;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        within(limit, elapsed)?;
    }
    Ok(format!("{detail} [{:.0?}]", elapsed))
}

fn arrays() -> Outcome {
    let mut perturbed = 0;
    for (name, array) in fixtures::coxeter_arrays() {
        ensure!(array.unimodular_violations().is_empty(), "{name}: unimodular violations");
        let p = array.to_pattern().map_err(|e| format!("{name}: {e}"))?;
        let report = validate_frieze(&p);
        ensure!(report.is_valid(), "{name}: {report}");
        for r in 0..array.rows().len() {
            for i in 0..array.n() {
                let mut bad = array.clone();
                bad.rows_mut()[r][i] += rat(1);
                ensure!(!bad.unimodular_violations().is_empty(), "{name}: +1 at row {r} column {i} went unnoticed");
                perturbed += 1;
            }
        }
    }
    Ok(format!("4 arrays valid, {perturbed} single-entry perturbations all detected"))
}

fn hexagon() -> Outcome {
    let c = fixtures::hexagon_cluster();
    let built = frieze_from_cluster(&c).map_err(|e| e.to_string())?;
    ensure!(built == fixtures::hexagon_all_ones(), "construction differs from the all-ones fixture");
    ensure!(built.get(Subset::of(&[1, 2, 5])) == &rat(2), "p125 = {}", built.get(Subset::of(&[1, 2, 5])));
    ensure!(built.get(Subset::of(&[1, 3, 5])) == &rat(3), "p135 = {}", built.get(Subset::of(&[1, 3, 5])));
    let seed: BTreeMap<_, _> = c.members().iter().map(|&s| (s, rat(1))).collect();
    let oracle = common::propagate(c.shape(), seed);
    ensure!(oracle.len() == 20, "oracle reached only {} values", oracle.len());
    ensure!(&oracle == built.values(), "oracle disagrees");
    ensure!(is_geometric(&built).is_geometric(), "1-set is not the cluster");
    Ok("all 20 values match the fixture and the propagation oracle".into())
}

fn nonagon() -> Outcome {
    let s = fixtures::nonagon_section();
    ensure!(s.len() == 28, "section has {} values", s.len());
    let all = diamonds(&s);
    let bad = check_diamonds(&s);
    ensure!(bad.is_empty(), "{} diamond violations", bad.len());
    let printed = |b: i64, c: i64, a: i64, d: i64, e: i64, f: i64| {
        let pair = |x: &Rat, y: &Rat, u: i64, v: i64| {
            (x == &rat(u) && y == &rat(v)) || (x == &rat(v) && y == &rat(u))
        };
        all.iter().any(|g| pair(&g.b, &g.c, b, c) && pair(&g.a, &g.d, a, d) && pair(&g.e, &g.f, e, f) && g.holds())
    };
    ensure!(printed(3, 21, 5, 9, 3, 6), "3*21 - 5*9 = 3*6 not found");
    ensure!(printed(6, 2, 3, 1, 1, 9), "6*2 - 3*1 = 1*9 not found");
    let ones: BTreeSet<(usize, usize)> = s.entries().filter(|(_, v)| *v == &rat(1)).map(|(pos, _)| pos).collect();
    let corners: BTreeSet<(usize, usize)> = s.corners().into_iter().collect();
    ensure!(ones == corners, "1-valued positions {ones:?}");
    let full = fixtures::nonagon_frieze();
    match is_geometric(&full) {
        GeometricWitness::Shortfall { ones, required } => {
            ensure!(required == 19, "required {required}");
            Ok(format!("{} diamonds hold, both identities present, shortfall witness {ones} of {required}", all.len()))
        }
        other => Err(format!("witness {other:?}")),
    }
}

/// Friezes from criteria 2 and 4, reused by 5 and 6.
fn enumeration(built: &mut Vec<FriezePattern>) -> Outcome {
    let mut counts = Vec::new();
    let mut shapes: Vec<(usize, usize, usize)> = CATALAN.iter().map(|&(n, c)| (2, n, c)).collect();
    shapes.push((3, 6, HEXAGON_CLUSTERS));
    shapes.push((3, 7, HEPTAGON_CLUSTERS));
    for (k, n, expected) in shapes {
        let shape = Shape::new(k, n).map_err(|e| e.to_string())?;
        let clusters = enumerate_clusters(shape, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(clusters.len() == expected, "{shape}: {} clusters, expected {expected}", clusters.len());
        for c in &clusters {
            ensure!(c.len() == (k - 1) * (n - k - 1) + n, "{shape}: cluster of size {}", c.len());
            ensure!(shape.intervals().iter().all(|&s| c.contains(s)), "{shape}: cluster misses an interval");
        }
        let graph = move_graph_summary(&clusters);
        ensure!(graph.is_connected(), "{shape}: move graph {graph:?}");
        for c in &clusters {
            built.push(frieze_from_cluster(c).map_err(|e| format!("{shape}: {e}"))?);
        }
        counts.push(format!("{shape}={}", clusters.len()));
    }
    Ok(format!("{}; all connected", counts.join(" ")))
}

fn windows(built: &[FriezePattern]) -> Outcome {
    let mut total = 0;
    for p in built {
        let f = to_sl_frieze(p);
        let w = f.windows();
        ensure!(!w.is_empty(), "{}: no windows", p.shape());
        ensure!(w.iter().all(|w| w.determinant == rat(1)), "{}: window determinant differs from 1", p.shape());
        total += w.len();
    }
    Ok(format!("{total} windows over {} friezes, all determinant 1", built.len()))
}

fn round_trip(built: &[FriezePattern]) -> Outcome {
    let extra = fixtures::nonagon_frieze();
    let mut count = 0;
    for p in built.iter().chain(std::iter::once(&extra)) {
        let m = matrix_from_sl_frieze(&to_sl_frieze(p), default_anchor(p.k(), p.n())).map_err(|e| e.to_string())?;
        let (back, _) = frieze_from_matrix(&m).map_err(|e| e.to_string())?;
        ensure!(&back == p, "{}: round trip changed values", p.shape());
        count += 1;
    }
    Ok(format!("identity on {count} friezes"))
}

fn phi_bijection() -> Outcome {
    for (k, n) in [(2, 6), (3, 6), (3, 7), (4, 8)] {
        let shape = Shape::new(k, n).map_err(|e| e.to_string())?;
        let q = build_quiver(n - k + 1, k - 1).map_err(|e| e.to_string())?;
        let mut image = BTreeSet::new();
        for l in &q.vertices {
            image.insert(phi(l, shape).map_err(|e| e.to_string())?);
        }
        ensure!(image.len() == q.vertices.len(), "{shape}: phi not injective");
        ensure!(image == shape.subsets().into_iter().collect(), "{shape}: phi not onto");
        for &s in &image {
            let l = phi_inverse(s, shape).map_err(|e| e.to_string())?;
            ensure!(phi(&l, shape).ok() == Some(s), "{shape}: phi(phi_inverse({s})) differs");
        }
        // edge lower -- upper moving position t corresponds to the arrow
        // phi_inverse(upper) -> phi_inverse(lower) along v_{k+1-t}
        let mut from_edges = BTreeSet::new();
        for e in fundamental_domain_graph(shape) {
            let t = e.lower.elements().position(|x| x == e.step).expect("step in lower") + 1;
            let tail = phi_inverse(e.upper, shape).map_err(|e| e.to_string())?;
            let head = phi_inverse(e.lower, shape).map_err(|e| e.to_string())?;
            from_edges.insert((tail, head, k + 1 - t));
        }
        let arrows: BTreeSet<_> = q.arrows.iter().map(|a| (a.tail.clone(), a.head.clone(), a.index)).collect();
        ensure!(from_edges == arrows, "{shape}: {} edges vs {} arrows", from_edges.len(), arrows.len());
    }
    Ok("bijective with matching edges and arrows for (2,6) (3,6) (3,7) (4,8)".into())
}

fn relations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes = (4..=8).map(|n| (2, n)).chain((6..=8).map(|n| (3, n)));
    let mut constant_failures = 0;
    let mut matrices = 0;
    for (k, n) in shapes {
        let shape = Shape::new(k, n).map_err(|e| e.to_string())?;
        let three = three_term_relations(shape);
        let gp = gp_relations(shape);
        for _ in 0..MATRICES_PER_SHAPE {
            let values = minors(&common::random_matrix(&mut rng, k, n)).map_err(|e| e.to_string())?;
            let lookup = |s: Subset| Ok(values[&s].clone());
            for r in &three {
                let (lhs, rhs) = r.evaluate(lookup).map_err(|e| e.to_string())?;
                ensure!(lhs == rhs, "{shape}: {r}");
            }
            let mut constant_ok = true;
            for r in &gp {
                let residual = r.evaluate(n, GpSign::Alternating, lookup).map_err(|e| e.to_string())?;
                ensure!(residual.is_zero(), "{shape}: {r} leaves {residual}");
                constant_ok &= r.evaluate(n, GpSign::Constant, lookup).map_err(|e| e.to_string())?.is_zero();
            }
            constant_failures += usize::from(!constant_ok);
            matrices += 1;
        }
    }
    ensure!(constant_failures > 0, "the constant sign never failed");
    Ok(format!("{matrices} matrices satisfy all relations; constant sign fails on {constant_failures}"))
}

fn path_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfade);
    let pools: Vec<(Shape, Vec<_>)> = [(3, 6), (3, 7)]
        .into_iter()
        .map(|(k, n)| {
            let shape = Shape::new(k, n).unwrap();
            (shape, enumerate_clusters(shape, DEFAULT_CAP).unwrap())
        })
        .collect();
    let mut distinct = 0;
    for trial in 0..PATH_PAIRS {
        let (shape, clusters) = &pools[trial % 2];
        let c = clusters.choose(&mut rng).unwrap();
        let target = *shape.subsets().choose(&mut rng).unwrap();
        let mut first = ChaCha8Rng::seed_from_u64(2 * trial as u64);
        let mut second = ChaCha8Rng::seed_from_u64(2 * trial as u64 + 1);
        let (a, pa) = evaluate_random_path(c, target, c.len(), &mut first).map_err(|e| e.to_string())?;
        let (b, pb) = evaluate_random_path(c, target, c.len(), &mut second).map_err(|e| e.to_string())?;
        ensure!(a == b, "{shape} p{target}: {a} vs {b}");
        distinct += usize::from(pa != pb);
    }
    Ok(format!("{PATH_PAIRS} pairs agree ({distinct} with different paths)"))
}

fn main() -> ExitCode {
    let mut built = Vec::new();
    let results = [
        ("coxeter arrays", timed(Some(LIMIT_ARRAYS), arrays)),
        ("(3,6) geometric frieze", timed(Some(LIMIT_HEXAGON), hexagon)),
        ("(3,9) non-geometric section", timed(Some(LIMIT_NONAGON), nonagon)),
        ("cluster enumeration", timed(Some(LIMIT_ENUMERATION), || enumeration(&mut built))),
        ("SL_k windows", timed(None, || windows(&built))),
        ("matrix round trip", timed(None, || round_trip(&built))),
        ("phi bijection", timed(Some(LIMIT_PHI), phi_bijection)),
        ("relation soundness", timed(None, relations)),
        ("path independence", timed(None, path_independence)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
