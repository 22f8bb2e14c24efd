//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! `NESTPOLY_ACCEPT_ONLY=3,5` runs a subset.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nestpoly_core::bench::{convex_instance, time_oracle, time_sweep};
use nestpoly_core::geom::XExtent;
use nestpoly_core::oracle::validate;
use nestpoly_core::order::cmp_at;
use nestpoly_core::segment::{satisfies_property_o, satisfies_property_o_cover, satisfies_property_o_terminal};
use nestpoly_core::{
    brute_force_forest, count_n, decompose, forest_document, generate, nesting_forest, segments_of, transform, Coord,
    Edge, Error, GenConfig, IntervalKind, MaxSegment, Parity, Point, Polygon, ShapeMix, SweepOrdering, ViolationKind,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Instance generator settings for seed `seed` of the equivalence corpus.
fn corpus_config(seed: u64) -> GenConfig {
    GenConfig {
        seed,
        n_roots: 1 + (seed % 6) as u32,
        max_depth: (seed % 4) as u32,
        children_per_node: [1, 3],
        touching_prob: [0.0, 0.5, 1.0][(seed % 3) as usize],
        shape_mix: ShapeMix::default(),
        coordinate_span: 1_000_000,
        max_polygons: 40,
        max_vertices_per_polygon: 50,
    }
}

fn corpus() -> Result<Vec<Vec<Polygon>>, String> {
    (0..1000).map(|s| generate(&corpus_config(s)).map_err(|e| format!("seed {s}: {e}"))).collect()
}

/// A uniformly drawn value in `[lo, hi)` on a grid of `steps` points.
fn sample_half_open(rng: &mut ChaCha8Rng, lo: &Coord, hi: &Coord, steps: i128) -> Coord {
    let k = rng.gen_range(0..steps);
    lo + &(&(hi - lo) * &Coord::from_fraction(k, steps))
}

fn sample_open(rng: &mut ChaCha8Rng, lo: &Coord, hi: &Coord, steps: i128) -> Coord {
    let k = rng.gen_range(1..steps);
    lo + &(&(hi - lo) * &Coord::from_fraction(k, steps))
}

fn all_segments(instance: &[Polygon]) -> Result<Vec<MaxSegment>, String> {
    let mut out = Vec::new();
    for p in instance {
        out.extend(segments_of(p).map_err(|e| e.to_string())?.segments);
    }
    Ok(out)
}

fn live_at<'a>(segments: &'a [MaxSegment], xi: &Coord) -> Vec<&'a MaxSegment> {
    segments.iter().filter(|s| s.x_interval(IntervalKind::HalfOpen).contains(xi)).collect()
}

fn c1_oracle_equivalence(instances: &[Vec<Polygon>]) -> Outcome {
    let start = Instant::now();
    let mut max_m = 0;
    let mut max_n = 0;
    for (seed, inst) in instances.iter().enumerate() {
        let n: usize = inst.iter().map(Polygon::len).sum();
        ensure!(inst.len() <= 40 && n <= 2000, "seed {seed}: instance too large (m={}, n={n})", inst.len());
        max_m = max_m.max(inst.len());
        max_n = max_n.max(n);
        let sweep = nesting_forest(inst).map_err(|e| format!("seed {seed}: sweep failed: {e}"))?;
        let brute = brute_force_forest(inst).map_err(|e| format!("seed {seed}: oracle failed: {e}"))?;
        ensure!(sweep == brute, "seed {seed}: forests differ");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:.1?}, limit 60s");
    Ok(format!("{} seeds, max m={max_m}, max n={max_n}, {elapsed:.1?}", instances.len()))
}

fn c2_parity_soundness(instances: &[Vec<Polygon>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0usize;
    for (seed, inst) in instances.iter().enumerate() {
        for p in inst {
            let d = segments_of(p).map_err(|e| format!("seed {seed}, {}: {e}", p.id()))?;
            for s in &d.segments {
                let (lo, hi) = s.x_bounds();
                let assigned = s.parity().ok_or("missing parity")?;
                for _ in 0..5 {
                    let xi = sample_open(&mut rng, &lo, &hi, 1 << 20);
                    let count = count_n(p, s, &xi).map_err(|e| e.to_string())?;
                    ensure!(
                        Parity::from_count(count) == assigned,
                        "seed {seed}, polygon {}, segment {}: count {count} at x={xi} disagrees with {assigned:?}",
                        p.id(),
                        s.cyclic_index()
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} samples"))
}

fn reverses_direction(path: &[Edge]) -> bool {
    let dirs: HashSet<_> = path.iter().filter(|e| !e.is_vertical()).map(|e| e.a.x < e.b.x).collect();
    dirs.len() > 1
}

fn c3_property_o(instances: &[Vec<Polygon>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let polygons: Vec<&Polygon> = instances.iter().flatten().filter(|p| p.len() > 4).collect();
    let (mut reversing, mut accepted) = (0, 0);
    for t in 0..10_000 {
        let p = polygons[rng.gen_range(0..polygons.len())];
        let k = p.len();
        let start = rng.gen_range(0..k);
        let len = rng.gen_range(1..k);
        let mut path: Vec<Edge> = (0..len).map(|i| p.edge((start + i) % k)).collect();
        if rng.gen_bool(0.5) {
            path = path.iter().rev().map(Edge::reversed).collect();
        }
        let a = satisfies_property_o(&path);
        let b = satisfies_property_o_terminal(&path);
        let c = satisfies_property_o_cover(&path);
        ensure!(a == b && b == c, "subpath {t} of {}: checkers disagree ({a}, {b}, {c})", p.id());
        if reverses_direction(&path) {
            reversing += 1;
            ensure!(!a, "subpath {t} of {} reverses direction but passes", p.id());
        }
        accepted += usize::from(a);
    }
    let mut segments = 0;
    for p in instances.iter().flatten() {
        for s in decompose(p).segments {
            let e = s.edges();
            ensure!(
                satisfies_property_o(e) && satisfies_property_o_terminal(e) && satisfies_property_o_cover(e),
                "segment {} of {} fails",
                s.cyclic_index(),
                p.id()
            );
            segments += 1;
        }
    }
    Ok(format!("10000 subpaths ({reversing} reversing, {accepted} accepted), {segments} segments"))
}

/// Points on the unit circle from rational half-angle tangents, so the
/// polygon is convex and its vertices are exact.
fn near_regular(n: usize, rotation: f64) -> Polygon {
    const Q: i128 = 1_000_000;
    let step = std::f64::consts::TAU / n as f64;
    let pts = (0..n)
        .map(|k| {
            let theta = -std::f64::consts::PI + 0.01 + rotation + step * k as f64;
            let p = ((theta / 2.0).tan() * Q as f64).round() as i128;
            let den = Q * Q + p * p;
            Point::new(Coord::from_fraction(Q * Q - p * p, den), Coord::from_fraction(2 * p * Q, den))
        })
        .collect();
    Polygon::new(format!("ngon{n}"), pts).expect("distinct points on a circle")
}

fn check_structure(p: &Polygon) -> Result<(), String> {
    let d = segments_of(p).map_err(|e| format!("{}: {e}", p.id()))?;
    ensure!(d.segments.len() % 2 == 0, "{}: odd segment count {}", p.id(), d.segments.len());
    let mut seen = vec![0usize; p.len()];
    for s in &d.segments {
        for &i in s.source_edges() {
            seen[i] += 1;
        }
    }
    let connectors: usize = d.connector_runs.iter().map(Vec::len).sum();
    let in_segments: usize = seen.iter().sum();
    ensure!(seen.iter().all(|&c| c <= 1), "{}: segments share an edge", p.id());
    ensure!(in_segments + connectors == p.len(), "{}: edges lost or duplicated", p.id());
    for (i, c) in seen.iter().enumerate() {
        ensure!(p.edge(i).is_vertical() || *c == 1, "{}: non-vertical edge {i} not covered", p.id());
    }
    ensure!(
        d.connector_runs.iter().flatten().all(Edge::is_vertical),
        "{}: connector run holds a non-vertical edge",
        p.id()
    );
    Ok(())
}

fn c4_structure(instances: &[Vec<Polygon>]) -> Outcome {
    let mut polygons = 0;
    for p in instances.iter().flatten() {
        check_structure(p)?;
        polygons += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ngons = 0;
    for n in 3..=12 {
        let step = std::f64::consts::TAU / n as f64;
        for _ in 0..20 {
            let p = near_regular(n, rng.gen_range(0.0..step - 0.02));
            check_structure(&p)?;
            let count = segments_of(&p).map_err(|e| e.to_string())?.segments.len();
            ensure!(count == 2, "{n}-gon has {count} segments");
            ngons += 1;
        }
    }
    Ok(format!("{polygons} generated polygons, {ngons} convex n-gons"))
}

fn same_segment(a: &MaxSegment, b: &MaxSegment) -> bool {
    a.polygon_id() == b.polygon_id() && a.cyclic_index() == b.cyclic_index()
}

fn c5_order_laws(instances: &[Vec<Polygon>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pools: Vec<Vec<MaxSegment>> = instances
        .iter()
        .filter(|i| i.len() > 1)
        .map(|i| all_segments(i))
        .collect::<Result<_, _>>()?;
    let cmp = |xi: &Coord, a: &MaxSegment, b: &MaxSegment| cmp_at(xi, a, b).map_err(|e| format!("at x={xi}: {e}"));
    let live_sample = |rng: &mut ChaCha8Rng| {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let s = &pool[rng.gen_range(0..pool.len())];
        let (lo, hi) = s.x_bounds();
        let xi = if rng.gen_bool(0.2) { lo.clone() } else { sample_half_open(rng, &lo, &hi, 1 << 16) };
        let live = live_at(pool, &xi);
        (xi, live)
    };

    let mut triples = 0;
    while triples < 10_000 {
        let (xi, live) = live_sample(&mut rng);
        let pick = |rng: &mut ChaCha8Rng| live[rng.gen_range(0..live.len())];
        let t = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        for a in t {
            for b in t {
                let ab = cmp(&xi, a, b)?;
                let ba = cmp(&xi, b, a)?;
                ensure!(ab == ba.reverse(), "antisymmetry fails at x={xi}");
                ensure!((ab == SweepOrdering::Same) == same_segment(a, b), "trichotomy fails at x={xi}");
            }
        }
        for [a, b, c] in [[t[0], t[1], t[2]], [t[0], t[2], t[1]], [t[1], t[0], t[2]], [t[1], t[2], t[0]], [t[2], t[0], t[1]], [t[2], t[1], t[0]]] {
            if cmp(&xi, a, b)? == SweepOrdering::Before && cmp(&xi, b, c)? == SweepOrdering::Before {
                ensure!(cmp(&xi, a, c)? == SweepOrdering::Before, "transitivity fails at x={xi}");
            }
        }
        triples += 1;
    }

    let mut pairs = 0;
    while pairs < 10_000 {
        let (xi, live) = live_sample(&mut rng);
        if live.len() < 2 {
            continue;
        }
        let a = live[rng.gen_range(0..live.len())];
        let b = live[rng.gen_range(0..live.len())];
        if same_segment(a, b) {
            continue;
        }
        let common = a
            .x_interval(IntervalKind::HalfOpen)
            .intersect_half_open(&b.x_interval(IntervalKind::HalfOpen))
            .ok_or("live pair without a common interval")?;
        let base = cmp(&xi, a, b)?;
        for i in 0..10 {
            let x = if i == 0 { common.lo.clone() } else { sample_half_open(&mut rng, &common.lo, &common.hi, 1 << 16) };
            ensure!(cmp(&x, a, b)? == base, "order of a live pair changes between x={xi} and x={x}");
        }
        pairs += 1;
    }
    Ok(format!("{triples} triples, {pairs} pairs x 10 positions"))
}

fn document(polygons: &[Polygon]) -> Result<String, String> {
    let f = nesting_forest(polygons).map_err(|e| e.to_string())?;
    Ok(forest_document(&f, None).to_json())
}

fn c6_metamorphic() -> Outcome {
    let big = Coord::from_int(1_000_000_000);
    let zero = Coord::ZERO;
    let one = Coord::ONE;
    let mut variants = 0;
    for seed in 0..100 {
        let inst = generate(&corpus_config(seed)).map_err(|e| e.to_string())?;
        let base = document(&inst)?;
        let mut cases: Vec<(String, Vec<Polygon>)> = Vec::new();
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let dx = &big * &Coord::from_int(sx);
            let dy = &big * &Coord::from_int(sy);
            cases.push((format!("translate({dx}, {dy})"), transform(&inst, &one, &dx, &dy).map_err(|e| e.to_string())?));
        }
        for scale in [Coord::from_int(1_000_000), Coord::from_fraction(1, 7)] {
            cases.push((format!("scale({scale})"), transform(&inst, &scale, &zero, &zero).map_err(|e| e.to_string())?));
        }
        let mut shuffled = inst.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        cases.push(("permutation".into(), shuffled));
        for (name, polys) in cases {
            ensure!(document(&polys)? == base, "seed {seed}: {name} changes the forest");
            variants += 1;
        }
    }
    Ok(format!("100 seeds, {variants} variants"))
}

fn c7_complexity() -> Outcome {
    let mut times = Vec::new();
    let mut report = Vec::new();
    for k in 10..=16 {
        let m = 1usize << k;
        let row = time_sweep(&convex_instance(m), 5).map_err(|e| e.to_string())?;
        ensure!(row.segments == 2 * m, "m={m}: {} segments", row.segments);
        report.push(format!("2^{k}:{:.1}ms", row.sweep_ns as f64 / 1e6));
        times.push(row.sweep_ns as f64);
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    let top = &ratios[ratios.len() - 2..];
    let at = convex_instance(1 << 12);
    let sweep = time_sweep(&at, 5).map_err(|e| e.to_string())?.sweep_ns as f64;
    let oracle = time_oracle(&at, 3).map_err(|e| e.to_string())? as f64;
    let speedup = oracle / sweep;
    let summary = format!(
        "{}; top ratios {:.2}, {:.2}; speedup at 2^12 {speedup:.0}x",
        report.join(" "),
        top[0],
        top[1]
    );
    ensure!(top.iter().all(|&r| r <= 2.6), "doubling ratio above 2.6: {summary}");
    ensure!(speedup >= 25.0, "speedup below 25x: {summary}");
    Ok(summary)
}

fn poly(id: &str, pts: &[(i64, i64)]) -> Polygon {
    Polygon::new(id, pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).expect("fixture")
}

fn expect_parents(name: &str, polygons: &[Polygon], expected: &[(&str, Option<&str>)]) -> Result<(), String> {
    ensure!(validate(polygons).ok, "{name}: fixture is not valid");
    let f = nesting_forest(polygons).map_err(|e| format!("{name}: {e}"))?;
    ensure!(f == brute_force_forest(polygons).map_err(|e| e.to_string())?, "{name}: sweep and oracle differ");
    for &(id, parent) in expected {
        ensure!(f.parent(id) == parent, "{name}: parent({id}) = {:?}, expected {parent:?}", f.parent(id));
    }
    Ok(())
}

fn c8_touching_fixtures() -> Outcome {
    let outer = poly("O", &[(0, 0), (30, 0), (30, 20), (0, 20)]);
    expect_parents(
        "shared vertical edge",
        &[outer, poly("A", &[(5, 5), (10, 5), (10, 15), (5, 15)]), poly("B", &[(10, 5), (15, 5), (15, 15), (10, 15)])],
        &[("A", Some("O")), ("B", Some("O")), ("O", None)],
    )?;
    let square = poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]);
    expect_parents(
        "vertex touch",
        &[square.clone(), poly("I", &[(0, 0), (5, 2), (2, 5)])],
        &[("I", Some("O")), ("O", None)],
    )?;
    expect_parents(
        "shared bottom edge",
        &[square, poly("I", &[(0, 0), (6, 0), (3, 4)])],
        &[("I", Some("O")), ("O", None)],
    )?;

    let crossing = [poly("A", &[(0, 10), (10, 10), (5, 0)]), poly("B", &[(0, 10), (10, 10), (7, 0)])];
    match nesting_forest(&crossing) {
        Err(Error::OverlapDetected { .. }) => {}
        other => return Err(format!("crossing pair: sweep returned {other:?}")),
    }
    let report = validate(&crossing);
    ensure!(
        !report.ok && report.violations.iter().any(|v| v.kind == ViolationKind::InteriorOverlap),
        "crossing pair: validation does not report an interior overlap"
    );
    Ok("4 fixtures".into())
}

fn main() -> ExitCode {
    let only: Option<HashSet<u32>> = std::env::var("NESTPOLY_ACCEPT_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|s| s.trim().parse().ok()).collect());
    let wanted = |c: u32| only.as_ref().is_none_or(|set| set.contains(&c));

    let needs_corpus = (1..=5).any(wanted);
    let instances = if needs_corpus {
        match corpus() {
            Ok(v) => v,
            Err(e) => {
                println!("FAIL corpus generation: {e}");
                return ExitCode::FAILURE;
            }
        }
    } else {
        Vec::new()
    };

    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "oracle equivalence", Box::new(|| c1_oracle_equivalence(&instances))),
        (2, "parity soundness", Box::new(|| c2_parity_soundness(&instances))),
        (3, "property O triple agreement", Box::new(|| c3_property_o(&instances))),
        (4, "structural invariants", Box::new(|| c4_structure(&instances))),
        (5, "order laws", Box::new(|| c5_order_laws(&instances))),
        (6, "metamorphic stability", Box::new(c6_metamorphic)),
        (7, "complexity trend", Box::new(c7_complexity)),
        (8, "touching fixtures", Box::new(c8_touching_fixtures)),
    ];

    let mut failed = false;
    for (id, name, run) in &criteria {
        if !wanted(*id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run())).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS C{id} {name}: {detail} [{elapsed:.1?}]"),
            Err(detail) => {
                failed = true;
                println!("FAIL C{id} {name}: {detail} [{elapsed:.1?}]");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
