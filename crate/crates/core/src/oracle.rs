//! Brute-force reference implementations: point location, interior points,
//! pairwise containment, and input validation. Quadratic, but independent of
//! the sweep.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{between, orient, Edge, Point, Polygon};
use crate::segment::{count_n, MaxSegment, Parity};
use crate::sweep::NestingForest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointLocation {
    Inside,
    Outside,
    OnBoundary,
}

/// Locates `p` relative to `poly` by counting edges directly above it.
///
/// An edge counts when `p.x` lies in its half-open x-interval and the edge
/// passes strictly above `p`, which settles rays through vertices without
/// special cases.
pub fn point_in_polygon(p: &Point, poly: &Polygon) -> PointLocation {
    if let Some(loc) = locate_small(p, poly) {
        return loc;
    }
    let vs = poly.vertices();
    let mut above = 0usize;
    for (i, a) in vs.iter().enumerate() {
        let b = &vs[(i + 1) % vs.len()];
        let turn = orient(a, b, p).signum();
        if turn == Ordering::Equal && between(&a.x, &p.x, &b.x) && between(&a.y, &p.y, &b.y) {
            return PointLocation::OnBoundary;
        }
        // Walking left to right, the edge passes above `p` on a right turn.
        let spans = match a.x.cmp(&b.x) {
            Ordering::Less => a.x <= p.x && p.x < b.x && turn == Ordering::Less,
            Ordering::Greater => b.x <= p.x && p.x < a.x && turn == Ordering::Greater,
            Ordering::Equal => false,
        };
        above += usize::from(spans);
    }
    parity_location(above)
}

fn parity_location(above: usize) -> PointLocation {
    if above % 2 == 1 {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}

/// [`point_in_polygon`] in `i128` arithmetic after scaling everything by the
/// common denominator of `p`, when all values are small.
fn locate_small(p: &Point, poly: &Polygon) -> Option<PointLocation> {
    const LIMIT: i128 = 1 << 40;
    let (nx, dx) = p.x.small_fraction()?;
    let (ny, dy) = p.y.small_fraction()?;
    let d = dx * dy;
    let (px, py) = (nx * dy, ny * dx);
    if d > LIMIT || px.abs() > LIMIT * LIMIT || py.abs() > LIMIT * LIMIT {
        return None;
    }
    let vs = poly.vertices();
    let mut above = 0usize;
    for (i, a) in vs.iter().enumerate() {
        let b = &vs[(i + 1) % vs.len()];
        let (ax, ay, bx, by) = (a.x.small()?, a.y.small()?, b.x.small()?, b.y.small()?);
        let turn = ((bx - ax) * (py - ay * d) - (by - ay) * (px - ax * d)).cmp(&0);
        let within = |u: i128, v: i128, w: i128| u.min(w) * d <= v && v <= u.max(w) * d;
        if turn == Ordering::Equal && within(ax, px, bx) && within(ay, py, by) {
            return Some(PointLocation::OnBoundary);
        }
        let spans = match ax.cmp(&bx) {
            Ordering::Less => ax * d <= px && px < bx * d && turn == Ordering::Less,
            Ordering::Greater => bx * d <= px && px < ax * d && turn == Ordering::Greater,
            Ordering::Equal => false,
        };
        above += usize::from(spans);
    }
    Some(parity_location(above))
}

/// A point strictly inside `poly`.
pub fn interior_point(poly: &Polygon) -> Result<Point> {
    let vs = poly.vertices();
    let k = vs.len();
    let i = (0..k).min_by(|&i, &j| vs[i].y.cmp(&vs[j].y).then_with(|| vs[i].x.cmp(&vs[j].x))).expect("non-empty");
    let (a, v, b) = (&vs[(i + k - 1) % k], &vs[i], &vs[(i + 1) % k]);
    let turn = orient(a, v, b);
    if turn.is_zero() {
        return Err(Error::DegeneratePolygon(poly.id().to_string()));
    }
    let s = turn.signum();
    let strictly_inside = |q: &Point| {
        orient(a, v, q).signum() == s && orient(v, b, q).signum() == s && orient(b, a, q).signum() == s
    };
    let mut best: Option<(Coord, &Point)> = None;
    for (j, q) in vs.iter().enumerate() {
        if j == i || !strictly_inside(q) {
            continue;
        }
        let dist = orient(b, a, q).abs();
        if best.as_ref().map_or(true, |(d, _)| dist > *d) {
            best = Some((dist, q));
        }
    }
    let q = match best {
        None => {
            let three = Coord::from_int(3);
            Point { x: &(&(&a.x + &v.x) + &b.x) / &three, y: &(&(&a.y + &v.y) + &b.y) / &three }
        }
        Some((_, q)) => Point { x: v.x.midpoint(&q.x), y: v.y.midpoint(&q.y) },
    };
    if point_in_polygon(&q, poly) != PointLocation::Inside {
        return Err(Error::DegeneratePolygon(poly.id().to_string()));
    }
    Ok(q)
}

type BBox = (Coord, Coord, Coord, Coord);

fn bbox_meets(p: &BBox, q: &BBox) -> bool {
    p.0 <= q.2 && q.0 <= p.2 && p.1 <= q.3 && q.1 <= p.3
}

/// The nesting forest by pairwise containment tests.
///
/// Polygon `i` lies in `j` when an interior point of `i` is inside `j` and
/// `i` has the smaller area; the parent is the smallest-area container.
/// Every ordered pair is tested, so this takes `O(m^2 n)` time.
pub fn brute_force_forest(polygons: &[Polygon]) -> Result<NestingForest> {
    let m = polygons.len();
    let ids: Vec<Arc<str>> = polygons.iter().map(|p| p.shared_id().clone()).collect();
    let points = polygons.iter().map(interior_point).collect::<Result<Vec<_>>>()?;
    let mut parent: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        for j in 0..m {
            if i == j || point_in_polygon(&points[i], &polygons[j]) != PointLocation::Inside {
                continue;
            }
            // Overlap-free interiors that share a point are nested; the
            // smaller one is inside.
            match polygons[i].area().cmp(polygons[j].area()) {
                Ordering::Less => {}
                Ordering::Greater => continue,
                Ordering::Equal => return Err(Error::ContainmentCycle(ids[i].to_string(), ids[j].to_string())),
            }
            parent[i] = match parent[i] {
                None => Some(j),
                Some(c) => match polygons[j].area().cmp(polygons[c].area()) {
                    Ordering::Less => Some(j),
                    Ordering::Greater => Some(c),
                    Ordering::Equal => return Err(Error::ContainmentCycle(ids[j].to_string(), ids[c].to_string())),
                },
            };
        }
    }
    NestingForest::from_parents(ids, parent)
}

/// `|N|` parity at the midpoint of the open x-extent of `s`.
pub fn parity_oracle(poly: &Polygon, s: &MaxSegment) -> Result<Parity> {
    let xi = s.min_v().x.midpoint(&s.max_v().x);
    Ok(Parity::from_count(count_n(poly, s, &xi)?))
}

/// Triangulation by ear clipping. Cubic; used to cross-check areas.
pub fn triangulate(poly: &Polygon) -> Result<Vec<[Point; 3]>> {
    let vs = poly.vertices();
    let mut twice = Coord::ZERO;
    for i in 0..vs.len() {
        twice = twice + orient(&Point::new(0, 0), &vs[i], &vs[(i + 1) % vs.len()]);
    }
    let ccw = twice.signum() == Ordering::Greater;
    let mut idx: Vec<usize> = (0..vs.len()).collect();
    if !ccw {
        idx.reverse();
    }
    let mut out = Vec::with_capacity(vs.len() - 2);
    while idx.len() > 3 {
        let n = idx.len();
        let mut clipped = false;
        for t in 0..n {
            let (pa, pv, pb) = (&vs[idx[(t + n - 1) % n]], &vs[idx[t]], &vs[idx[(t + 1) % n]]);
            let turn = orient(pa, pv, pb).signum();
            if turn == Ordering::Equal {
                idx.remove(t);
                clipped = true;
                break;
            }
            if turn == Ordering::Less {
                continue;
            }
            let blocked = idx.iter().any(|&u| {
                let q = &vs[u];
                q != pa
                    && q != pv
                    && q != pb
                    && orient(pa, pv, q).signum() != Ordering::Less
                    && orient(pv, pb, q).signum() != Ordering::Less
                    && orient(pb, pa, q).signum() != Ordering::Less
            });
            if !blocked {
                out.push([pa.clone(), pv.clone(), pb.clone()]);
                idx.remove(t);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return Err(Error::DegeneratePolygon(poly.id().to_string()));
        }
    }
    let (pa, pv, pb) = (&vs[idx[0]], &vs[idx[1]], &vs[idx[2]]);
    if !orient(pa, pv, pb).is_zero() {
        out.push([pa.clone(), pv.clone(), pb.clone()]);
    }
    Ok(out)
}

/// Whether two closed edges share at least one point.
pub fn edges_intersect(e: &Edge, f: &Edge) -> bool {
    let o1 = orient(&e.a, &e.b, &f.a).signum();
    let o2 = orient(&e.a, &e.b, &f.b).signum();
    let o3 = orient(&f.a, &f.b, &e.a).signum();
    let o4 = orient(&f.a, &f.b, &e.b).signum();
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    e.contains_point(&f.a) || e.contains_point(&f.b) || f.contains_point(&e.a) || f.contains_point(&e.b)
}

/// The crossing point when the relative interiors of `e` and `f` cross
/// transversally at a single point.
pub fn proper_crossing(e: &Edge, f: &Edge) -> Option<Point> {
    let o1 = orient(&e.a, &e.b, &f.a);
    let o2 = orient(&e.a, &e.b, &f.b);
    let o3 = orient(&f.a, &f.b, &e.a);
    let o4 = orient(&f.a, &f.b, &e.b);
    let opposite = |p: &Coord, q: &Coord| {
        let (s, t) = (p.signum(), q.signum());
        s != Ordering::Equal && t != Ordering::Equal && s != t
    };
    if !(opposite(&o1, &o2) && opposite(&o3, &o4)) {
        return None;
    }
    // f.a + t (f.b - f.a), t = o1 / (o1 - o2)
    let t = &o1 / &(&o1 - &o2);
    Some(Point { x: &f.a.x + &(&t * &(&f.b.x - &f.a.x)), y: &f.a.y + &(&t * &(&f.b.y - &f.a.y)) })
}

/// Position of `poly`'s boundary pieces relative to `other`.
#[derive(Debug, Clone, Default)]
struct BoundaryClasses {
    inside: Option<Point>,
    outside: Option<Point>,
    on: bool,
}

/// Splits each edge of `poly` at the vertices of `other` lying on it and
/// classifies the midpoint of every piece against `other`.
fn classify_boundary(poly: &Polygon, other: &Polygon) -> BoundaryClasses {
    let mut classes = BoundaryClasses::default();
    for e in poly.edges() {
        let d = (&e.b.x - &e.a.x, &e.b.y - &e.a.y);
        let mut cuts: Vec<(Coord, Point)> = other
            .vertices()
            .iter()
            .filter(|q| **q != e.a && **q != e.b && e.contains_point(q))
            .map(|q| (&(&q.x - &e.a.x) * &d.0 + &(&q.y - &e.a.y) * &d.1, q.clone()))
            .collect();
        cuts.sort_by(|s, t| s.0.cmp(&t.0));
        let mut stops = vec![e.a.clone()];
        stops.extend(cuts.into_iter().map(|(_, q)| q));
        stops.push(e.b.clone());
        for w in stops.windows(2) {
            let mid = Point { x: w[0].x.midpoint(&w[1].x), y: w[0].y.midpoint(&w[1].y) };
            match point_in_polygon(&mid, other) {
                PointLocation::Inside => {
                    classes.inside.get_or_insert(mid);
                }
                PointLocation::Outside => {
                    classes.outside.get_or_insert(mid);
                }
                PointLocation::OnBoundary => classes.on = true,
            }
            if classes.inside.is_some() && classes.outside.is_some() {
                return classes;
            }
        }
    }
    classes
}

/// How two simple polygons sit relative to each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// Interiors are disjoint; boundaries may touch.
    Disjoint,
    /// The interior of the first lies in the interior of the second.
    FirstInSecond,
    SecondInFirst,
    /// Same boundary curve.
    Identical,
    /// Interiors intersect without nesting.
    Overlap(Witness),
}

/// Evidence attached to a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two edges that cross or touch improperly, with a shared point.
    Edges { first: Edge, second: Edge, point: Option<Point> },
    /// A point of one boundary strictly inside the other polygon.
    Point(Point),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Edges { first, second, point: Some(p) } => write!(f, "edges {first:?} and {second:?} meet at {p:?}"),
            Witness::Edges { first, second, point: None } => write!(f, "edges {first:?} and {second:?}"),
            Witness::Point(p) => write!(f, "point {p:?}"),
        }
    }
}

/// Classifies the pair `p`, `q`. Both must be simple.
pub fn relate(p: &Polygon, q: &Polygon) -> Relation {
    let (bp, bq) = (p.bbox(), q.bbox());
    if !bbox_meets(&bp, &bq) {
        return Relation::Disjoint;
    }
    let qe: Vec<(Edge, BBox)> = q.edges().map(|e| { let b = edge_box(&e); (e, b) }).collect();
    for e in p.edges() {
        let be = edge_box(&e);
        if !bbox_meets(&be, &bq) {
            continue;
        }
        for (f, bf) in &qe {
            if !bbox_meets(&be, bf) {
                continue;
            }
            if let Some(pt) = proper_crossing(&e, f) {
                return Relation::Overlap(Witness::Edges { first: e, second: f.clone(), point: Some(pt) });
            }
        }
    }
    let cq = classify_boundary(q, p);
    let cp = classify_boundary(p, q);
    if let (Some(w), Some(_)) = (&cq.inside, &cq.outside) {
        return Relation::Overlap(Witness::Point(w.clone()));
    }
    if let (Some(w), Some(_)) = (&cp.inside, &cp.outside) {
        return Relation::Overlap(Witness::Point(w.clone()));
    }
    match (&cp.inside, &cq.inside) {
        (Some(w), Some(_)) => Relation::Overlap(Witness::Point(w.clone())),
        (Some(_), None) => Relation::FirstInSecond,
        (None, Some(_)) => Relation::SecondInFirst,
        (None, None) if cp.outside.is_none() && cq.outside.is_none() => Relation::Identical,
        (None, None) => Relation::Disjoint,
    }
}

fn edge_box(e: &Edge) -> BBox {
    let (x0, x1) = if e.a.x <= e.b.x { (&e.a.x, &e.b.x) } else { (&e.b.x, &e.a.x) };
    let (y0, y1) = if e.a.y <= e.b.y { (&e.a.y, &e.b.y) } else { (&e.b.y, &e.a.y) };
    (x0.clone(), y0.clone(), x1.clone(), y1.clone())
}

/// Whether the boundaries of `p` and `q` share at least one point.
pub fn boundaries_touch(p: &Polygon, q: &Polygon) -> bool {
    if !bbox_meets(&p.bbox(), &q.bbox()) {
        return false;
    }
    let qe: Vec<Edge> = q.edges().collect();
    p.edges().any(|e| qe.iter().any(|f| edges_intersect(&e, f)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    SelfIntersection,
    InteriorOverlap,
    DuplicatePolygon,
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub polygons: Vec<String>,
    pub witness: Option<Witness>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.polygons.join(", "))?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// First pair of edges of `poly` that intersect improperly: non-adjacent
/// edges sharing a point, or adjacent edges folding back over each other.
pub fn self_intersection(poly: &Polygon) -> Option<Witness> {
    let edges: Vec<Edge> = poly.edges().collect();
    let boxes: Vec<BBox> = edges.iter().map(edge_box).collect();
    let k = edges.len();
    for i in 0..k {
        let (e, f) = (&edges[i], &edges[(i + 1) % k]);
        // e.b == f.a; the pair folds back when f.b lies on e beyond the shared vertex.
        if orient(&e.a, &e.b, &f.b).is_zero() {
            let d = &(&(&e.a.x - &e.b.x) * &(&f.b.x - &f.a.x)) + &(&(&e.a.y - &e.b.y) * &(&f.b.y - &f.a.y));
            if d.signum() == Ordering::Greater {
                return Some(Witness::Edges { first: e.clone(), second: f.clone(), point: Some(e.b.clone()) });
            }
        }
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if bbox_meets(&boxes[i], &boxes[j]) && edges_intersect(&edges[i], &edges[j]) {
                return Some(Witness::Edges { first: edges[i].clone(), second: edges[j].clone(), point: None });
            }
        }
    }
    None
}

/// Canonical vertex cycle: rotated to start at the smallest vertex and
/// read in the direction with the smaller second vertex.
fn canonical_cycle(poly: &Polygon) -> Vec<Point> {
    let vs = poly.vertices();
    let k = vs.len();
    let s = (0..k).min_by(|&i, &j| vs[i].cmp(&vs[j])).expect("non-empty");
    let fwd: Vec<Point> = (0..k).map(|t| vs[(s + t) % k].clone()).collect();
    let bwd: Vec<Point> = (0..k).map(|t| vs[(s + k - t) % k].clone()).collect();
    fwd.min(bwd)
}

/// Checks simplicity, pairwise overlap-freeness, distinctness and unique ids.
pub fn validate(polygons: &[Polygon]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for p in polygons {
        if ids.insert(p.id(), 0).is_some() {
            violations.push(Violation {
                kind: ViolationKind::Malformed,
                polygons: vec![p.id().to_string()],
                witness: None,
            });
        }
    }
    let mut simple = vec![true; polygons.len()];
    for (i, p) in polygons.iter().enumerate() {
        if let Some(w) = self_intersection(p) {
            simple[i] = false;
            violations.push(Violation {
                kind: ViolationKind::SelfIntersection,
                polygons: vec![p.id().to_string()],
                witness: Some(w),
            });
        }
    }
    let mut seen: HashMap<Vec<Point>, usize> = HashMap::new();
    let mut duplicate_of = vec![None; polygons.len()];
    for (i, p) in polygons.iter().enumerate() {
        if let Some(&j) = seen.get(&canonical_cycle(p)) {
            duplicate_of[i] = Some(j);
            violations.push(Violation {
                kind: ViolationKind::DuplicatePolygon,
                polygons: vec![polygons[j].id().to_string(), p.id().to_string()],
                witness: None,
            });
        } else {
            seen.insert(canonical_cycle(p), i);
        }
    }
    let boxes: Vec<BBox> = polygons.iter().map(Polygon::bbox).collect();
    for i in 0..polygons.len() {
        for j in i + 1..polygons.len() {
            if !simple[i] || !simple[j] || duplicate_of[j] == Some(i) || !bbox_meets(&boxes[i], &boxes[j]) {
                continue;
            }
            let pair = vec![polygons[i].id().to_string(), polygons[j].id().to_string()];
            match relate(&polygons[i], &polygons[j]) {
                Relation::Overlap(w) => {
                    violations.push(Violation { kind: ViolationKind::InteriorOverlap, polygons: pair, witness: Some(w) })
                }
                Relation::Identical => {
                    violations.push(Violation { kind: ViolationKind::DuplicatePolygon, polygons: pair, witness: None })
                }
                _ => {}
            }
        }
    }
    ValidationReport { ok: violations.is_empty(), violations }
}
