//! Maximal outstretched segments: decomposition of a polygon boundary into
//! x-monotone paths whose terminal edges are non-vertical, plus the parity of
//! each path (whether the polygon's interior lies below it).

use std::cmp::Ordering;
use std::sync::Arc;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{cmp_slope, Edge, IntervalKind, Point, Polygon, XExtent, XInterval};

/// Parity of a segment: `Odd` means the polygon interior lies directly below
/// the segment, `Even` means it lies above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Parity {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// One maximal outstretched segment of a polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSegment {
    polygon_id: Arc<str>,
    polygon_area: Coord,
    /// Path-ordered left to right; non-vertical edges satisfy `a.x < b.x`.
    edges: Vec<Edge>,
    /// Polygon edge index of each entry in `edges`.
    sources: Vec<usize>,
    parity: Option<Parity>,
    cyclic_index: usize,
}

impl MaxSegment {
    /// Builds a segment from a left-to-right edge path. Used by the
    /// decomposition and by test fixtures; the path must start and end with
    /// non-vertical edges.
    pub fn from_path(
        polygon_id: Arc<str>,
        polygon_area: Coord,
        edges: Vec<Edge>,
        parity: Option<Parity>,
        cyclic_index: usize,
    ) -> MaxSegment {
        let sources = (0..edges.len()).collect();
        MaxSegment { polygon_id, polygon_area, edges, sources, parity, cyclic_index }
    }

    pub fn polygon_id(&self) -> &str {
        &self.polygon_id
    }

    pub fn shared_polygon_id(&self) -> &Arc<str> {
        &self.polygon_id
    }

    pub fn polygon_area(&self) -> &Coord {
        &self.polygon_area
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Polygon edge indices of [`Self::edges`], in the same order.
    pub fn source_edges(&self) -> &[usize] {
        &self.sources
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn cyclic_index(&self) -> usize {
        self.cyclic_index
    }

    /// Leftmost terminal vertex.
    pub fn min_v(&self) -> &Point {
        &self.edges[0].a
    }

    /// Rightmost terminal vertex.
    pub fn max_v(&self) -> &Point {
        &self.edges[self.edges.len() - 1].b
    }

    pub fn first_edge(&self) -> &Edge {
        &self.edges[0]
    }

    pub fn last_edge(&self) -> &Edge {
        &self.edges[self.edges.len() - 1]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point> {
        std::iter::once(&self.edges[0].a).chain(self.edges.iter().map(|e| &e.b))
    }

    /// The edge associated with `xi`: the unique non-vertical edge with
    /// `xi` in its half-open x-interval, or the right terminal edge when
    /// `xi` is the segment's right end and `closed` is set.
    pub fn associated_edge(&self, xi: &Coord, closed: bool) -> Result<&Edge> {
        let lo = &self.min_v().x;
        let hi = &self.max_v().x;
        let inside = if closed { lo <= xi && xi <= hi } else { lo <= xi && xi < hi };
        if !inside {
            return Err(Error::OutOfDomain { xi: xi.clone(), lo: lo.clone(), hi: hi.clone() });
        }
        let i = self.edges.partition_point(|e| &e.b.x <= xi);
        Ok(if i == self.edges.len() { self.last_edge() } else { &self.edges[i] })
    }

    /// `y_S(xi)` over the closed interval `[min x, max x]`.
    pub fn y_at(&self, xi: &Coord) -> Result<Coord> {
        Ok(self.associated_edge(xi, true)?.y_at(xi))
    }

    /// Slope of the associated edge over the half-open interval.
    pub fn slope_at(&self, xi: &Coord) -> Result<Coord> {
        Ok(self.associated_edge(xi, false)?.slope().expect("associated edges are non-vertical"))
    }
}

impl XExtent for MaxSegment {
    fn x_bounds(&self) -> (Coord, Coord) {
        (self.min_v().x.clone(), self.max_v().x.clone())
    }
}

/// The maximal outstretched segments of one polygon in boundary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub polygon_id: Arc<str>,
    pub segments: Vec<MaxSegment>,
    /// `connector_runs[i]` holds the vertical edges between `segments[i]` and
    /// `segments[(i + 1) % len]`, in traversal order; often empty.
    pub connector_runs: Vec<Vec<Edge>>,
}

/// Splits the boundary of `p` into maximal outstretched segments.
///
/// Non-vertical edges are grouped into maximal runs of one x-direction;
/// vertical edges between two edges of the same run are kept inside it and
/// vertical edges between runs become connector runs.
pub fn decompose(p: &Polygon) -> SegmentDecomposition {
    let k = p.len();
    let v = p.vertices();
    let dir = |i: usize| v[i].x.cmp(&v[(i + 1) % k].x);
    let nonvert: Vec<usize> = (0..k).filter(|&i| dir(i) != Ordering::Equal).collect();
    let l = nonvert.len();
    // Both directions occur on a closed non-degenerate boundary, so a run
    // boundary exists.
    let start = (0..l)
        .find(|&j| dir(nonvert[j]) != dir(nonvert[(j + l - 1) % l]))
        .expect("closed polygon has edges in both x-directions");

    let mut runs: Vec<(usize, usize, Ordering)> = Vec::new();
    let mut j = 0;
    while j < l {
        let first = nonvert[(start + j) % l];
        let d = dir(first);
        let mut last = first;
        j += 1;
        while j < l && dir(nonvert[(start + j) % l]) == d {
            last = nonvert[(start + j) % l];
            j += 1;
        }
        runs.push((first, last, d));
    }

    let mut segments = Vec::with_capacity(runs.len());
    let mut connector_runs = Vec::with_capacity(runs.len());
    for (r, &(first, last, d)) in runs.iter().enumerate() {
        let count = (last + k - first) % k + 1;
        let (sources, edges): (Vec<usize>, Vec<Edge>) = if d == Ordering::Less {
            (0..count).map(|t| (first + t) % k).map(|i| (i, p.edge(i))).unzip()
        } else {
            (0..count)
                .rev()
                .map(|t| (first + t) % k)
                .map(|i| (i, Edge { a: v[(i + 1) % k].clone(), b: v[i].clone() }))
                .unzip()
        };
        segments.push(MaxSegment {
            polygon_id: p.shared_id().clone(),
            polygon_area: p.area().clone(),
            edges,
            sources,
            parity: None,
            cyclic_index: r,
        });
        let next_first = runs[(r + 1) % runs.len()].0;
        let gap = (next_first + k - last) % k;
        connector_runs.push((1..gap).map(|t| p.edge((last + t) % k)).collect());
    }
    SegmentDecomposition { polygon_id: p.shared_id().clone(), segments, connector_runs }
}

/// Assigns parities: the segment through the topmost vertex (lowest x on
/// ties) is seeded, then parities alternate around the boundary.
pub fn assign_parities(p: &Polygon, d: SegmentDecomposition) -> Result<SegmentDecomposition> {
    let inconsistent = || Error::ParityInconsistency { id: p.id().to_string() };
    let n = d.segments.len();
    if n < 2 || n % 2 == 1 {
        return Err(inconsistent());
    }
    let k = p.len();
    let verts = p.vertices();
    let top = (0..k)
        .max_by(|&i, &j| verts[i].y.cmp(&verts[j].y).then_with(|| verts[j].x.cmp(&verts[i].x)))
        .expect("polygon has vertices");
    let apex = &verts[top];

    let owner = |e: usize| d.segments.iter().position(|s| s.sources.contains(&e));
    let (seed, seed_parity) = match (owner((top + k - 1) % k), owner(top)) {
        (Some(s), Some(t)) if s == t => (s, Parity::Odd),
        (Some(s), None) | (None, Some(s)) => (s, Parity::Odd),
        (Some(s), Some(t)) => {
            let (a, b) = (&d.segments[s], &d.segments[t]);
            let ord = if a.min_v() == apex && b.min_v() == apex {
                // Both leave the apex to the right: the steeper one is on top.
                cmp_slope(a.first_edge(), b.first_edge())
            } else if a.max_v() == apex && b.max_v() == apex {
                cmp_slope(b.last_edge(), a.last_edge())
            } else {
                return Err(inconsistent());
            };
            match ord {
                Ordering::Greater => (s, Parity::Odd),
                Ordering::Less => (s, Parity::Even),
                Ordering::Equal => return Err(inconsistent()),
            }
        }
        (None, None) => return Err(inconsistent()),
    };

    let mut d = d;
    for (i, seg) in d.segments.iter_mut().enumerate() {
        seg.parity = Some(if (i + n - seed) % 2 == 0 { seed_parity } else { seed_parity.flipped() });
    }
    Ok(d)
}

/// [`decompose`] followed by [`assign_parities`].
pub fn segments_of(p: &Polygon) -> Result<SegmentDecomposition> {
    assign_parities(p, decompose(p))
}

/// Pairwise-disjoint half-open x-intervals of the path's edges.
pub fn satisfies_property_o(path: &[Edge]) -> bool {
    let spans: Vec<XInterval> = path
        .iter()
        .filter(|e| !e.is_vertical())
        .map(|e| e.x_interval(IntervalKind::HalfOpen))
        .collect();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if spans[i].intersect_half_open(&spans[j]).is_some() {
                return false;
            }
        }
    }
    true
}

/// Alternative formulation: the extreme x-coordinates sit at the two ends of
/// the path, and x never decreases walking away from some leftmost vertex.
pub fn satisfies_property_o_terminal(path: &[Edge]) -> bool {
    if path.is_empty() {
        return true;
    }
    let xs: Vec<&Coord> = std::iter::once(&path[0].a.x).chain(path.iter().map(|e| &e.b.x)).collect();
    let lo = *xs.iter().min().unwrap();
    let hi = *xs.iter().max().unwrap();
    let (first, last) = (xs[0], xs[xs.len() - 1]);
    if !((first == lo && last == hi) || (first == hi && last == lo)) {
        return false;
    }
    (0..xs.len()).filter(|&r| xs[r] == lo).any(|r| {
        xs[r..].windows(2).all(|w| w[0] <= w[1]) && xs[..=r].windows(2).all(|w| w[0] >= w[1])
    })
}

/// Alternative formulation: every x in the path's half-open extent is covered
/// by exactly one edge's half-open interval.
pub fn satisfies_property_o_cover(path: &[Edge]) -> bool {
    if path.is_empty() {
        return true;
    }
    let mut xs: Vec<&Coord> = std::iter::once(&path[0].a.x).chain(path.iter().map(|e| &e.b.x)).collect();
    xs.sort();
    xs.dedup();
    let hi = xs[xs.len() - 1];
    // Coverage counts only change at vertex x-coordinates.
    xs.iter().filter(|&&x| x < hi).all(|&x| {
        path.iter().filter(|e| e.x_interval(IntervalKind::HalfOpen).contains(x)).count() == 1
    })
}

/// `|N_{xi,S}|`: the number of segments of `p` whose half-open interval
/// contains `xi` and that lie at or above `s` there. Test oracle; `xi` must
/// lie strictly inside `s`'s x-extent.
pub fn count_n(p: &Polygon, s: &MaxSegment, xi: &Coord) -> Result<usize> {
    let open = s.x_interval(IntervalKind::Open);
    if !open.contains(xi) {
        return Err(Error::OutOfDomain { xi: xi.clone(), lo: open.lo, hi: open.hi });
    }
    let y = s.y_at(xi)?;
    let d = decompose(p);
    let mut count = 0;
    for other in &d.segments {
        if other.x_interval(IntervalKind::HalfOpen).contains(xi) && other.y_at(xi)? >= y {
            count += 1;
        }
    }
    Ok(count)
}
