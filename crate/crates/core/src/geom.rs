//! Planar primitives over exact coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::coord::Coord;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>) -> Self {
        Point { x: x.into(), y: y.into() }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of the triangle `a, b, c`; positive when the turn is
/// counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Coord {
    if let Some(v) = orient_small(a, b, c) {
        return Coord::from_int(v);
    }
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

#[inline]
fn orient_small(a: &Point, b: &Point, c: &Point) -> Option<i128> {
    let (ax, ay) = (a.x.small()?, a.y.small()?);
    let (bx, by) = (b.x.small()?, b.y.small()?);
    let (cx, cy) = (c.x.small()?, c.y.small()?);
    Some((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
}

/// A straight edge between two distinct points.
///
/// Inside a [`crate::segment::MaxSegment`] the endpoints are stored in path
/// order from the segment's left end to its right end, so for non-vertical
/// edges there `a.x < b.x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.a, self.b)
    }
}

impl Edge {
    pub fn new(a: Point, b: Point) -> Self {
        debug_assert!(a != b, "degenerate edge");
        Edge { a, b }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    /// Endpoint with the smaller x-coordinate; `None` for vertical edges.
    pub fn min_end(&self) -> Option<&Point> {
        match self.a.x.cmp(&self.b.x) {
            Ordering::Less => Some(&self.a),
            Ordering::Greater => Some(&self.b),
            Ordering::Equal => None,
        }
    }

    /// Endpoint with the larger x-coordinate; `None` for vertical edges.
    pub fn max_end(&self) -> Option<&Point> {
        match self.a.x.cmp(&self.b.x) {
            Ordering::Less => Some(&self.b),
            Ordering::Greater => Some(&self.a),
            Ordering::Equal => None,
        }
    }

    pub fn reversed(&self) -> Edge {
        Edge { a: self.b.clone(), b: self.a.clone() }
    }

    /// Slope `dy / dx`; `None` for vertical edges.
    pub fn slope(&self) -> Option<Coord> {
        if self.is_vertical() {
            None
        } else {
            Some(&(&self.b.y - &self.a.y) / &(&self.b.x - &self.a.x))
        }
    }

    /// The y-value of the edge's supporting line at `xi`. Panics on vertical
    /// edges.
    pub fn y_at(&self, xi: &Coord) -> Coord {
        let dx = &self.b.x - &self.a.x;
        assert!(!dx.is_zero(), "y_at on a vertical edge");
        &self.a.y + &(&(&self.b.y - &self.a.y) * &(xi - &self.a.x)) / &dx
    }

    /// Whether `p` lies on the closed edge.
    pub fn contains_point(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p).is_zero()
            && between(&self.a.x, &p.x, &self.b.x)
            && between(&self.a.y, &p.y, &self.b.y)
    }
}

pub(crate) fn between(a: &Coord, v: &Coord, b: &Coord) -> bool {
    if a <= b {
        a <= v && v <= b
    } else {
        b <= v && v <= a
    }
}

/// Compares the y-values of two non-vertical edges at `xi` without division.
///
/// Both edges must be stored left-to-right (`a.x < b.x`).
pub fn cmp_y_at(xi: &Coord, e: &Edge, f: &Edge) -> Ordering {
    if e == f {
        return Ordering::Equal;
    }
    if let Some(o) = cmp_y_at_small(xi, e, f) {
        return o;
    }
    let dxe = &e.b.x - &e.a.x;
    let dxf = &f.b.x - &f.a.x;
    debug_assert!(dxe.signum() == Ordering::Greater && dxf.signum() == Ordering::Greater);
    // y_e(xi) * dxe = a.y * dxe + dy_e * (xi - a.x), same for f.
    let ye = &e.a.y * &dxe + &(&e.b.y - &e.a.y) * &(xi - &e.a.x);
    let yf = &f.a.y * &dxf + &(&f.b.y - &f.a.y) * &(xi - &f.a.x);
    (ye * &dxf).cmp(&(yf * &dxe))
}

#[inline]
fn small_coords(e: &Edge) -> Option<[i128; 4]> {
    Some([e.a.x.small()?, e.a.y.small()?, e.b.x.small()?, e.b.y.small()?])
}

fn cmp_y_at_small(xi: &Coord, e: &Edge, f: &Edge) -> Option<Ordering> {
    let x = xi.small()?;
    let [eax, eay, ebx, eby] = small_coords(e)?;
    let [fax, fay, fbx, fby] = small_coords(f)?;
    let (dxe, dxf) = (ebx - eax, fbx - fax);
    let ye = eay * dxe + (eby - eay) * (x - eax);
    let yf = fay * dxf + (fby - fay) * (x - fax);
    Some((ye * dxf).cmp(&(yf * dxe)))
}

/// Compares the slopes of two left-to-right non-vertical edges.
pub fn cmp_slope(e: &Edge, f: &Edge) -> Ordering {
    if let (Some([eax, eay, ebx, eby]), Some([fax, fay, fbx, fby])) = (small_coords(e), small_coords(f)) {
        return ((eby - eay) * (fbx - fax)).cmp(&((fby - fay) * (ebx - eax)));
    }
    let dxe = &e.b.x - &e.a.x;
    let dxf = &f.b.x - &f.a.x;
    ((&e.b.y - &e.a.y) * dxf).cmp(&((&f.b.y - &f.a.y) * dxe))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `[lo, hi)`
    HalfOpen,
    /// `(lo, hi)`
    Open,
    /// `[lo, hi]`
    Closed,
}

/// An interval on the x-axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XInterval {
    pub lo: Coord,
    pub hi: Coord,
    pub kind: IntervalKind,
}

impl XInterval {
    pub fn new(lo: Coord, hi: Coord, kind: IntervalKind) -> Self {
        XInterval { lo, hi, kind }
    }

    pub fn is_empty(&self) -> bool {
        match self.kind {
            IntervalKind::Closed => self.lo > self.hi,
            IntervalKind::HalfOpen | IntervalKind::Open => self.lo >= self.hi,
        }
    }

    pub fn contains(&self, x: &Coord) -> bool {
        match self.kind {
            IntervalKind::HalfOpen => &self.lo <= x && x < &self.hi,
            IntervalKind::Open => &self.lo < x && x < &self.hi,
            IntervalKind::Closed => &self.lo <= x && x <= &self.hi,
        }
    }

    /// Intersection of two half-open intervals, or `None` when empty.
    pub fn intersect_half_open(&self, other: &XInterval) -> Option<XInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        let out = XInterval::new(lo, hi, IntervalKind::HalfOpen);
        (!out.is_empty()).then_some(out)
    }
}

/// Anything with an x-extent spanned by its vertices.
pub trait XExtent {
    /// `(min x, max x)` over all vertices.
    fn x_bounds(&self) -> (Coord, Coord);

    fn x_interval(&self, kind: IntervalKind) -> XInterval {
        let (lo, hi) = self.x_bounds();
        XInterval::new(lo, hi, kind)
    }
}

impl XExtent for Edge {
    fn x_bounds(&self) -> (Coord, Coord) {
        if self.a.x <= self.b.x {
            (self.a.x.clone(), self.b.x.clone())
        } else {
            (self.b.x.clone(), self.a.x.clone())
        }
    }
}

/// A simple polygon with an opaque identifier.
///
/// Simplicity is not checked here (see [`crate::oracle::validate`]); the
/// constructor only rejects inputs that cannot be a polygon at all.
#[derive(Clone, PartialEq, Eq)]
pub struct Polygon {
    id: Arc<str>,
    vertices: Vec<Point>,
    area: Coord,
    x_min: Coord,
    x_max: Coord,
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polygon")
            .field("id", &self.id)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl Polygon {
    pub fn new(id: impl Into<Arc<str>>, vertices: Vec<Point>) -> Result<Self> {
        let id: Arc<str> = id.into();
        let k = vertices.len();
        if k < 3 {
            return Err(Error::TooFewVertices { id: id.to_string(), count: k });
        }
        for i in 0..k {
            if vertices[i] == vertices[(i + 1) % k] {
                return Err(Error::DuplicateConsecutiveVertex { id: id.to_string(), index: (i + 1) % k });
            }
        }
        let v0 = &vertices[0];
        let v1 = &vertices[1];
        if vertices[2..].iter().all(|v| orient(v0, v1, v).is_zero()) {
            return Err(Error::DegenerateAllCollinear { id: id.to_string() });
        }
        let area = shoelace(&vertices);
        let x_min = vertices.iter().map(|v| &v.x).min().cloned().unwrap_or_default();
        let x_max = vertices.iter().map(|v| &v.x).max().cloned().unwrap_or_default();
        Ok(Polygon { id, vertices, area, x_min, x_max })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn shared_id(&self) -> &Arc<str> {
        &self.id
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> Edge {
        let k = self.vertices.len();
        Edge::new(self.vertices[i % k].clone(), self.vertices[(i + 1) % k].clone())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Exact enclosed area.
    pub fn area(&self) -> &Coord {
        &self.area
    }

    /// `(min x, min y, max x, max y)`.
    pub fn bbox(&self) -> (Coord, Coord, Coord, Coord) {
        let min_y = self.vertices.iter().map(|v| &v.y).min().cloned().unwrap_or_default();
        let max_y = self.vertices.iter().map(|v| &v.y).max().cloned().unwrap_or_default();
        (self.x_min.clone(), min_y, self.x_max.clone(), max_y)
    }

    /// Same polygon with a different identifier.
    pub fn with_id(&self, id: impl Into<Arc<str>>) -> Polygon {
        Polygon { id: id.into(), ..self.clone() }
    }
}

impl XExtent for Polygon {
    fn x_bounds(&self) -> (Coord, Coord) {
        (self.x_min.clone(), self.x_max.clone())
    }
}

/// `|1/2 * sum(x_i * y_{i+1} - x_{i+1} * y_i)|`.
pub fn shoelace_area(p: &Polygon) -> Coord {
    p.area.clone()
}

fn shoelace(vertices: &[Point]) -> Coord {
    let k = vertices.len();
    let mut twice = Coord::ZERO;
    for i in 0..k {
        let (p, q) = (&vertices[i], &vertices[(i + 1) % k]);
        twice = twice + (&p.x * &q.y - &q.x * &p.y);
    }
    &twice.abs() / &Coord::from_int(2)
}
