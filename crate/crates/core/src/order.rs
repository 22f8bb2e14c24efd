//! The vertical order of live segments at a sweep position, the insertion
//! order of all segments, and the "below" relation used to validate both.
//!
//! At a sweep position `xi`, segment `a` comes before `b` when `a` is higher
//! at `xi`; ties fall back to the larger slope, then to parity (even first),
//! then to polygon area (larger first among odd segments, smaller first among
//! even ones). For overlap-free inputs this is a strict total order, and two
//! segments that are live together keep their relative order for as long as
//! both are live.

use std::cmp::Ordering;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{cmp_slope, cmp_y_at, Edge, IntervalKind, XExtent};
use crate::segment::{MaxSegment, Parity};

/// Outcome of comparing two segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepOrdering {
    /// The first segment precedes (lies above) the second.
    Before,
    /// The first segment follows (lies below) the second.
    After,
    /// Both arguments are the same segment of the same polygon.
    Same,
}

impl SweepOrdering {
    pub fn to_ordering(self) -> Ordering {
        match self {
            SweepOrdering::Before => Ordering::Less,
            SweepOrdering::After => Ordering::Greater,
            SweepOrdering::Same => Ordering::Equal,
        }
    }

    pub fn reverse(self) -> SweepOrdering {
        match self {
            SweepOrdering::Before => SweepOrdering::After,
            SweepOrdering::After => SweepOrdering::Before,
            SweepOrdering::Same => SweepOrdering::Same,
        }
    }
}

fn from_desc(o: Ordering) -> Option<SweepOrdering> {
    // Larger keys come first.
    match o {
        Ordering::Greater => Some(SweepOrdering::Before),
        Ordering::Less => Some(SweepOrdering::After),
        Ordering::Equal => None,
    }
}

/// Compares `a` and `b` at `xi` given the edges of each associated with `xi`.
///
/// This is the constant-time core shared by [`cmp_at`] and the sweep, which
/// tracks associated edges incrementally.
pub fn cmp_with_edges(
    xi: &Coord,
    a: &MaxSegment,
    ea: &Edge,
    b: &MaxSegment,
    eb: &Edge,
) -> Result<SweepOrdering> {
    if let Some(o) = from_desc(cmp_y_at(xi, ea, eb)) {
        return Ok(o);
    }
    if let Some(o) = from_desc(cmp_slope(ea, eb)) {
        return Ok(o);
    }
    let pa = a.parity().ok_or(Error::MissingParity)?;
    let pb = b.parity().ok_or(Error::MissingParity)?;
    let by_area = match (pa, pb) {
        (Parity::Even, Parity::Odd) => Some(SweepOrdering::Before),
        (Parity::Odd, Parity::Even) => Some(SweepOrdering::After),
        (Parity::Odd, Parity::Odd) => from_desc(a.polygon_area().cmp(b.polygon_area())),
        (Parity::Even, Parity::Even) => from_desc(a.polygon_area().cmp(b.polygon_area())).map(SweepOrdering::reverse),
    };
    if let Some(o) = by_area {
        return Ok(o);
    }
    if a.cyclic_index() == b.cyclic_index() && a.polygon_id() == b.polygon_id() {
        Ok(SweepOrdering::Same)
    } else {
        Err(Error::OverlapDetected { first: a.polygon_id().to_string(), second: b.polygon_id().to_string() })
    }
}

/// Compares two segments live at `xi` (both half-open x-intervals contain it).
pub fn cmp_at(xi: &Coord, a: &MaxSegment, b: &MaxSegment) -> Result<SweepOrdering> {
    let ea = a.associated_edge(xi, false)?;
    let eb = b.associated_edge(xi, false)?;
    cmp_with_edges(xi, a, ea, b, eb)
}

/// The insertion order: by left end x, ties broken by the sweep order there.
pub fn insertion_cmp(a: &MaxSegment, b: &MaxSegment) -> Result<SweepOrdering> {
    match a.min_v().x.cmp(&b.min_v().x) {
        Ordering::Less => Ok(SweepOrdering::Before),
        Ordering::Greater => Ok(SweepOrdering::After),
        Ordering::Equal => cmp_with_edges(&a.min_v().x, a, a.first_edge(), b, b.first_edge()),
    }
}

/// Relative vertical position of two segments over their common x-range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BelowRelation {
    /// The first segment is below the second somewhere and above it nowhere.
    Below,
    Above,
    /// Equal y everywhere on the common range.
    Coincident,
    /// The half-open x-intervals do not intersect.
    Disjoint,
}

/// Classifies `a` against `b` by evaluating `y_a - y_b` at every breakpoint of
/// the common range and between consecutive breakpoints.
pub fn is_below(a: &MaxSegment, b: &MaxSegment) -> Result<BelowRelation> {
    let common = match a
        .x_interval(IntervalKind::HalfOpen)
        .intersect_half_open(&b.x_interval(IntervalKind::HalfOpen))
    {
        Some(c) => c,
        None => return Ok(BelowRelation::Disjoint),
    };
    let mut xs: Vec<Coord> = a
        .vertices()
        .chain(b.vertices())
        .map(|p| p.x.clone())
        .filter(|x| common.lo <= *x && *x <= common.hi)
        .collect();
    xs.push(common.lo.clone());
    xs.push(common.hi.clone());
    xs.sort();
    xs.dedup();
    let mut samples = xs.clone();
    samples.extend(xs.windows(2).map(|w| w[0].midpoint(&w[1])));
    let (mut below, mut above) = (false, false);
    for x in &samples {
        match a.y_at(x)?.cmp(&b.y_at(x)?) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => {}
        }
    }
    match (below, above) {
        (true, true) => {
            Err(Error::OverlapDetected { first: a.polygon_id().to_string(), second: b.polygon_id().to_string() })
        }
        (true, false) => Ok(BelowRelation::Below),
        (false, true) => Ok(BelowRelation::Above),
        (false, false) => Ok(BelowRelation::Coincident),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::poly;
    use crate::segment::segments_of;

    fn segs(p: &crate::geom::Polygon) -> Vec<MaxSegment> {
        segments_of(p).unwrap().segments
    }

    fn top(s: &[MaxSegment]) -> &MaxSegment {
        s.iter().find(|s| s.parity() == Some(Parity::Odd)).unwrap()
    }

    fn bottom(s: &[MaxSegment]) -> &MaxSegment {
        s.iter().find(|s| s.parity() == Some(Parity::Even)).unwrap()
    }

    #[test]
    fn nested_squares_chain() {
        let o = segs(&poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]));
        let i = segs(&poly("I", &[(2, 2), (8, 2), (8, 8), (2, 8)]));
        let chain = [top(&o), top(&i), bottom(&i), bottom(&o)];
        let xi = Coord::from_int(3);
        for w in 0..chain.len() {
            for v in 0..chain.len() {
                let expect = match w.cmp(&v) {
                    Ordering::Less => SweepOrdering::Before,
                    Ordering::Greater => SweepOrdering::After,
                    Ordering::Equal => SweepOrdering::Same,
                };
                assert_eq!(cmp_at(&xi, chain[w], chain[v]).unwrap(), expect);
            }
        }
    }

    #[test]
    fn shared_bottom_edge_breaks_tie_by_area() {
        let o = segs(&poly("O", &[(0, 0), (4, 0), (4, 4), (0, 4)]));
        let i = segs(&poly("I", &[(0, 0), (4, 0), (2, 2)]));
        let xi = Coord::from_int(1);
        // Both even with equal y and slope: the smaller polygon comes first.
        assert_eq!(cmp_at(&xi, bottom(&i), bottom(&o)).unwrap(), SweepOrdering::Before);
        assert_eq!(cmp_at(&xi, bottom(&o), bottom(&i)).unwrap(), SweepOrdering::After);
    }

    #[test]
    fn insertion_order_examples() {
        let a = segs(&poly("A", &[(0, 0), (4, 0), (4, 4), (0, 4)]));
        let b = segs(&poly("B", &[(10, 0), (14, 0), (14, 4), (10, 4)]));
        for s in &a {
            for t in &b {
                assert_eq!(insertion_cmp(s, t).unwrap(), SweepOrdering::Before);
            }
        }
        let o = segs(&poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]));
        let i = segs(&poly("I", &[(0, 5), (5, 2), (5, 8)]));
        assert_eq!(insertion_cmp(top(&o), top(&i)).unwrap(), SweepOrdering::Before);
        assert_eq!(insertion_cmp(top(&i), top(&i)).unwrap(), SweepOrdering::Same);
    }

    #[test]
    fn duplicate_polygons_are_an_overlap() {
        let a = segs(&poly("A", &[(0, 0), (4, 0), (4, 4), (0, 4)]));
        let b = segs(&poly("B", &[(0, 0), (4, 0), (4, 4), (0, 4)]));
        let err = cmp_at(&1.into(), top(&a), top(&b)).unwrap_err();
        assert!(matches!(err, Error::OverlapDetected { .. }));
    }

    #[test]
    fn below_relation() {
        let o = segs(&poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]));
        let i = segs(&poly("I", &[(2, 2), (8, 2), (8, 8), (2, 8)]));
        assert_eq!(is_below(top(&i), top(&o)).unwrap(), BelowRelation::Below);
        assert_eq!(is_below(top(&o), top(&i)).unwrap(), BelowRelation::Above);
        let a = segs(&poly("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]));
        let b = segs(&poly("B", &[(2, 0), (4, 0), (4, 2), (2, 2)]));
        assert_eq!(is_below(top(&a), top(&b)).unwrap(), BelowRelation::Disjoint);
        let c = segs(&poly("C", &[(0, 0), (4, 0), (2, 2)]));
        let sq = segs(&poly("S", &[(0, 0), (4, 0), (4, 4), (0, 4)]));
        assert_eq!(is_below(bottom(&c), bottom(&sq)).unwrap(), BelowRelation::Coincident);
    }

    #[test]
    fn crossing_chains_are_detected() {
        // Two quadrilaterals whose upper chains cross.
        let p = segs(&poly("P", &[(0, 0), (6, 0), (6, 4), (0, 1)]));
        let q = segs(&poly("Q", &[(0, -1), (6, -1), (6, 1), (0, 4)]));
        let err = is_below(top(&p), top(&q)).unwrap_err();
        assert!(matches!(err, Error::OverlapDetected { .. }));
    }
}
