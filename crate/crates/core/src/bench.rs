//! Synthetic instances and timing helpers for scaling experiments.

use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};
use crate::oracle::brute_force_forest;
use crate::sweep::{nesting_forest_with, NestOptions};

/// Instance families for the doubling experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Disjoint convex octagons; every polygon has two segments.
    Convex,
    /// Disjoint combs whose teeth reverse the x-direction; `2 * TEETH`
    /// segments per polygon.
    Staircase,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Shape::Convex),
            "staircase" => Ok(Shape::Staircase),
            other => Err(Error::InvalidConfig(format!("unknown shape {other:?}"))),
        }
    }
}

const CELL: i64 = 16;
const TEETH: i64 = 3;

fn grid_origin(i: usize, m: usize) -> (i64, i64) {
    let side = (m as f64).sqrt().ceil().max(1.0) as usize;
    ((i % side) as i64 * CELL, (i / side) as i64 * CELL)
}

fn polygon_at(id: usize, pts: &[(i64, i64)], (ox, oy): (i64, i64)) -> Polygon {
    let vertices = pts.iter().map(|&(x, y)| Point::new(ox + x, oy + y)).collect();
    Polygon::new(format!("p{id}"), vertices).expect("fixed shapes are valid")
}

/// `m` disjoint convex octagons on a grid.
pub fn convex_instance(m: usize) -> Vec<Polygon> {
    const OCTAGON: [(i64, i64); 8] = [(4, 1), (10, 1), (13, 4), (13, 10), (10, 13), (4, 13), (1, 10), (1, 4)];
    (0..m).map(|i| polygon_at(i, &OCTAGON, grid_origin(i, m))).collect()
}

/// `m` disjoint combs with teeth pointing right.
pub fn staircase_instance(m: usize) -> Vec<Polygon> {
    let mut comb = vec![(1, 1), (14, 1)];
    for t in 0..TEETH {
        let y = 1 + 4 * t;
        comb.extend([(14, y + 2), (4, y + 2), (4, y + 4)]);
        if t + 1 < TEETH {
            comb.push((14, y + 4));
        }
    }
    comb.push((1, 1 + 4 * TEETH - 2));
    (0..m).map(|i| polygon_at(i, &comb, grid_origin(i, m))).collect()
}

pub fn instance(shape: Shape, m: usize) -> Vec<Polygon> {
    match shape {
        Shape::Convex => convex_instance(m),
        Shape::Staircase => staircase_instance(m),
    }
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// One row of a doubling experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub segments: usize,
    pub sweep_ns: u128,
    pub oracle_ns: Option<u128>,
}

/// Median wall time of the sweep over `repeat` runs, with instance sizes.
pub fn time_sweep(polygons: &[Polygon], repeat: usize) -> Result<BenchRow> {
    let opts = NestOptions::default();
    let mut times = Vec::with_capacity(repeat.max(1));
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let (_, stats) = nesting_forest_with(polygons, &opts)?;
        times.push(stats.elapsed_ns);
        last = Some(stats);
    }
    let stats = last.expect("at least one run");
    Ok(BenchRow { m: stats.m, n: stats.n, segments: stats.segments, sweep_ns: median(times), oracle_ns: None })
}

/// Median wall time of the brute-force oracle over `repeat` runs.
pub fn time_oracle(polygons: &[Polygon], repeat: usize) -> Result<u128> {
    let mut times = Vec::with_capacity(repeat.max(1));
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        brute_force_forest(polygons)?;
        times.push(start.elapsed().as_nanos());
    }
    Ok(median(times))
}

/// Times the sweep for every size, and the oracle for sizes up to `oracle_cutoff`.
pub fn run(shape: Shape, sizes: &[usize], repeat: usize, oracle_cutoff: usize) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&m| {
            let polygons = instance(shape, m);
            let mut row = time_sweep(&polygons, repeat)?;
            if m <= oracle_cutoff {
                row.oracle_ns = Some(time_oracle(&polygons, repeat)?);
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::validate;
    use crate::segment::segments_of;
    use crate::sweep::nesting_forest;

    #[test]
    fn instances_are_valid_and_flat() {
        for shape in [Shape::Convex, Shape::Staircase] {
            let ps = instance(shape, 10);
            assert!(validate(&ps).ok, "{shape:?}");
            let f = nesting_forest(&ps).unwrap();
            assert_eq!(f.roots().len(), 10);
            assert_eq!(f, brute_force_forest(&ps).unwrap());
        }
    }

    #[test]
    fn segment_counts() {
        assert_eq!(segments_of(&convex_instance(1)[0]).unwrap().segments.len(), 2);
        let comb = &staircase_instance(1)[0];
        assert_eq!(segments_of(comb).unwrap().segments.len() as i64, 2 * TEETH);
    }

    #[test]
    fn run_reports_sizes() {
        let rows = run(Shape::Convex, &[4, 8], 1, 4).unwrap();
        assert_eq!(rows[0].n, 32);
        assert_eq!(rows[1].segments, 16);
        assert!(rows[0].oracle_ns.is_some() && rows[1].oracle_ns.is_none());
        assert!("zigzag".parse::<Shape>().is_err());
    }
}
