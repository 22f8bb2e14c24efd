//! Seeded generation of overlap-free polygon instances.
//!
//! Every polygon is drawn inside an axis-aligned allocation box and touches
//! all four sides of it. Each polygon also reserves a "core" box inside
//! itself whose one side lies on a horizontal edge of the polygon (the
//! anchor). Children are placed in disjoint slots of the core; a child whose
//! slot sits on the anchor touches its parent there, either along an edge
//! or at a vertex. Roots occupy disjoint grid cells.
//!
//! The random source is ChaCha8 seeded with [`GenConfig::seed`], so output
//! is identical across platforms.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};
use crate::oracle::{boundaries_touch, relate, self_intersection, Relation};

/// Relative weights of the shape families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShapeMix {
    pub convex: u32,
    pub staircase: u32,
    pub star: u32,
}

impl Default for ShapeMix {
    fn default() -> Self {
        ShapeMix { convex: 1, staircase: 1, star: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenConfig {
    pub seed: u64,
    pub n_roots: u32,
    pub max_depth: u32,
    /// Inclusive range `[min, max]` of children drawn per polygon.
    pub children_per_node: [u32; 2],
    pub touching_prob: f64,
    pub shape_mix: ShapeMix,
    /// Coordinates lie in `[0, coordinate_span]`.
    pub coordinate_span: i64,
    /// Upper bound on the instance size; generation stops adding children
    /// once it is reached.
    pub max_polygons: u32,
    pub max_vertices_per_polygon: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            n_roots: 4,
            max_depth: 2,
            children_per_node: [1, 3],
            touching_prob: 0.5,
            shape_mix: ShapeMix::default(),
            coordinate_span: 1_000_000,
            max_polygons: 64,
            max_vertices_per_polygon: 32,
        }
    }
}

const MIN_BOX: i64 = 12;

impl GenConfig {
    pub fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n_roots == 0 {
            return bad("n_roots must be at least 1");
        }
        let [lo, hi] = self.children_per_node;
        if lo == 0 || lo > hi {
            return bad("children_per_node must be a range [min, max] with 1 <= min <= max");
        }
        if !(0.0..=1.0).contains(&self.touching_prob) {
            return bad("touching_prob must lie in [0, 1]");
        }
        let m = &self.shape_mix;
        if u64::from(m.convex) + u64::from(m.staircase) + u64::from(m.star) == 0 {
            return bad("shape_mix weights must not all be zero");
        }
        if self.max_polygons < self.n_roots {
            return bad("max_polygons must be at least n_roots");
        }
        if self.max_vertices_per_polygon < 8 {
            return bad("max_vertices_per_polygon must be at least 8");
        }
        let grid = grid_side(self.n_roots);
        if self.coordinate_span / grid < MIN_BOX {
            return bad("coordinate_span is too small for n_roots");
        }
        Ok(())
    }
}

fn grid_side(n: u32) -> i64 {
    let mut g = 1i64;
    while g * g < i64::from(n) {
        g += 1;
    }
    g
}

/// A generated instance with the intended parent of each polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenReport {
    pub polygons: Vec<Polygon>,
    pub parents: Vec<Option<usize>>,
    /// Children placed on their parent's anchor.
    pub touch_attempted: usize,
    /// Of those, children whose boundary meets the parent's boundary.
    pub touch_realized: usize,
    /// Children (of any kind) whose boundary meets the parent's boundary.
    pub touching_children: usize,
}

pub fn generate(cfg: &GenConfig) -> Result<Vec<Polygon>> {
    generate_with_report(cfg).map(|r| r.polygons)
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: i64,
    y0: i64,
    x1: i64,
    y1: i64,
}

impl Rect {
    fn w(&self) -> i64 {
        self.x1 - self.x0
    }
    fn h(&self) -> i64 {
        self.y1 - self.y0
    }
}

/// Core box in world coordinates; `anchor_top` says which horizontal side
/// lies on the polygon boundary.
#[derive(Debug, Clone, Copy)]
struct Core {
    rect: Rect,
    anchor_top: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Convex,
    Staircase,
    Star,
}

/// Shape in the canonical frame `[0, w] x [0, h]`: vertex list and a core
/// `[cx0, cx1] x [0, ch]` resting on the bottom edge.
struct Canonical {
    pts: Vec<(i64, i64)>,
    core: (i64, i64, i64),
}

struct Gen<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
    polygons: Vec<Polygon>,
    parents: Vec<Option<usize>>,
    touch_attempted: Vec<bool>,
}

pub fn generate_with_report(cfg: &GenConfig) -> Result<GenReport> {
    cfg.check()?;
    let mut g = Gen {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        polygons: Vec::new(),
        parents: Vec::new(),
        touch_attempted: Vec::new(),
    };
    let side = grid_side(cfg.n_roots);
    let cell = cfg.coordinate_span / side;
    let margin = (cell / 20).max(1);
    let mut roots = Vec::new();
    for i in 0..i64::from(cfg.n_roots) {
        let (cx, cy) = (i % side, i / side);
        let full = Rect { x0: cx * cell, y0: cy * cell, x1: (cx + 1) * cell, y1: (cy + 1) * cell };
        let touching = g.rng.gen_bool(cfg.touching_prob);
        let rect = if touching {
            full
        } else {
            Rect { x0: full.x0 + margin, y0: full.y0 + margin, x1: full.x1 - margin, y1: full.y1 - margin }
        };
        let core = g.place(rect, None, false)?;
        roots.push((g.polygons.len() - 1, core));
    }
    // Breadth-first, so the polygon budget is spread across the roots.
    let mut frontier = roots;
    for _ in 0..cfg.max_depth {
        let mut next = Vec::new();
        for (parent, core) in frontier {
            next.extend(g.children(parent, core)?);
        }
        frontier = next;
    }

    let mut realized = 0;
    let mut touching_children = 0;
    for (i, p) in g.parents.iter().enumerate() {
        if let Some(p) = *p {
            let t = boundaries_touch(&g.polygons[i], &g.polygons[p]);
            touching_children += usize::from(t);
            if g.touch_attempted[i] && t {
                realized += 1;
            }
        }
    }
    Ok(GenReport {
        touch_attempted: g.touch_attempted.iter().filter(|&&t| t).count(),
        touch_realized: realized,
        touching_children,
        polygons: g.polygons,
        parents: g.parents,
    })
}

impl Gen<'_> {
    fn remaining(&self) -> usize {
        self.cfg.max_polygons as usize - self.polygons.len()
    }

    fn pick_family(&mut self) -> Family {
        let m = &self.cfg.shape_mix;
        let (c, s) = (u64::from(m.convex), u64::from(m.staircase));
        let r = self.rng.gen_range(0..c + s + u64::from(m.star));
        if r < c {
            Family::Convex
        } else if r < c + s {
            Family::Staircase
        } else {
            Family::Star
        }
    }

    /// Draws one polygon with bounding box exactly `rect`.
    fn place(&mut self, rect: Rect, parent: Option<usize>, touch: bool) -> Result<Core> {
        let family = self.pick_family();
        let (w, h) = (rect.w(), rect.h());
        let maxv = self.cfg.max_vertices_per_polygon as usize;
        let shape = match family {
            Family::Convex => convex(&mut self.rng, w, h, maxv),
            Family::Staircase => staircase(&mut self.rng, w, h, maxv),
            Family::Star => star(&mut self.rng, w, h, maxv)?,
        };
        let mirror = self.rng.gen_bool(0.5);
        let flip = self.rng.gen_bool(0.5);
        let map = |(x, y): (i64, i64)| {
            let x = if mirror { w - x } else { x };
            let y = if flip { h - y } else { y };
            Point::new(rect.x0 + x, rect.y0 + y)
        };
        let id = format!("p{}", self.polygons.len());
        let poly = Polygon::new(id, shape.pts.iter().copied().map(map).collect())?;
        let (cx0, cx1, ch) = shape.core;
        let (cx0, cx1) = if mirror { (w - cx1, w - cx0) } else { (cx0, cx1) };
        let (cy0, cy1) = if flip { (h - ch, h) } else { (0, ch) };
        self.polygons.push(poly);
        self.parents.push(parent);
        self.touch_attempted.push(touch);
        Ok(Core {
            rect: Rect { x0: rect.x0 + cx0, y0: rect.y0 + cy0, x1: rect.x0 + cx1, y1: rect.y0 + cy1 },
            anchor_top: flip,
        })
    }

    fn children(&mut self, parent: usize, core: Core) -> Result<Vec<(usize, Core)>> {
        let [lo, hi] = self.cfg.children_per_node;
        let want = self.rng.gen_range(lo..=hi) as usize;
        let r = core.rect;
        // Each slot needs room for a margin on both sides.
        let fit = (r.w() / (MIN_BOX + 2)) as usize;
        let n = want.min(fit).min(self.remaining());
        if n == 0 || r.h() < MIN_BOX + 2 {
            return Ok(Vec::new());
        }
        let spare = r.w() - n as i64 * (MIN_BOX + 2);
        let mut cuts: Vec<i64> = (0..n - 1).map(|_| self.rng.gen_range(0..=spare)).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(n);
        let mut x = r.x0;
        for k in 0..n {
            let extra = if k == 0 {
                cuts.first().copied().unwrap_or(spare)
            } else if k == n - 1 {
                spare - cuts[k - 1]
            } else {
                cuts[k] - cuts[k - 1]
            };
            let slot_w = MIN_BOX + 2 + extra;
            let (sx0, sx1) = (x, x + slot_w);
            x = sx1;
            let touch = self.rng.gen_bool(self.cfg.touching_prob);
            let rect = if touch {
                let hh = self.rng.gen_range((r.h() / 2).max(MIN_BOX)..=r.h());
                if core.anchor_top {
                    Rect { x0: sx0, y0: r.y1 - hh, x1: sx1, y1: r.y1 }
                } else {
                    Rect { x0: sx0, y0: r.y0, x1: sx1, y1: r.y0 + hh }
                }
            } else {
                let avail = r.h() - 2;
                let hh = self.rng.gen_range((avail / 2).max(MIN_BOX)..=avail);
                let y0 = r.y0 + 1 + self.rng.gen_range(0..=avail - hh);
                Rect { x0: sx0 + 1, y0, x1: sx1 - 1, y1: y0 + hh }
            };
            let c = self.place(rect, Some(parent), touch)?;
            out.push((self.polygons.len() - 1, c));
        }
        Ok(out)
    }
}

/// Strict convex hull, counter-clockwise.
fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        i128::from(a.0 - o.0) * i128::from(b.1 - o.1) - i128::from(a.1 - o.1) * i128::from(b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn convex(rng: &mut ChaCha8Rng, w: i64, h: i64, maxv: usize) -> Canonical {
    let cx0 = rng.gen_range(0..=w / 4);
    let cx1 = rng.gen_range(w - w / 4..=w);
    let ch = rng.gen_range(h / 2..=3 * h / 4);
    let mut pts = vec![(cx0, 0), (cx1, 0), (cx1, ch), (cx0, ch), (rng.gen_range(0..=w), h)];
    if cx0 > 0 {
        pts.push((0, rng.gen_range(1..=h)));
    }
    if cx1 < w {
        pts.push((w, rng.gen_range(1..=h)));
    }
    let extra = rng.gen_range(0..=maxv - 7);
    for _ in 0..extra {
        pts.push((rng.gen_range(0..=w), rng.gen_range(0..=h)));
    }
    Canonical { pts: hull(pts), core: (cx0, cx1, ch) }
}

fn staircase(rng: &mut ChaCha8Rng, w: i64, h: i64, maxv: usize) -> Canonical {
    let cx0 = rng.gen_range(0..=w / 4);
    let cx1 = rng.gen_range(w - w / 4..=w);
    let ch = rng.gen_range(h / 3..=h / 2);
    let max_cols = ((maxv - 2) / 2).clamp(1, (w / 2) as usize);
    let k = rng.gen_range(1..=max_cols);
    let mut xs: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(1..w)).collect();
    xs.push(0);
    xs.push(w);
    xs.sort_unstable();
    xs.dedup();
    let cols = xs.len() - 1;
    let floor = (h / 4).max(3);
    let mut hs: Vec<i64> = (0..cols)
        .map(|i| {
            let in_core = xs[i] < cx1 && xs[i + 1] > cx0;
            rng.gen_range(if in_core { ch } else { floor }..=h)
        })
        .collect();
    let tallest = rng.gen_range(0..cols);
    hs[tallest] = h;

    // Lowest column meeting the closed x-range [a, b].
    let min_height = |a: i64, b: i64| (0..cols).filter(|&i| xs[i] <= b && xs[i + 1] >= a).map(|i| hs[i]).min();
    // Vertex count before notches is 2 * cols + 2; each notch adds 4.
    let mut budget = maxv.saturating_sub(2 * cols + 2);
    let right = {
        let room = w - cx1;
        if room >= 1 && budget >= 4 && rng.gen_bool(0.7) {
            budget -= 4;
            let d = rng.gen_range(1..=room);
            min_height(w - d, w).filter(|&mh| mh >= 3).map(|mh| {
                let a = rng.gen_range(1..=mh - 2);
                (d, a, rng.gen_range(a + 1..=mh - 1))
            })
        } else {
            None
        }
    };
    let left = {
        let room = cx0;
        if room >= 1 && budget >= 4 && rng.gen_bool(0.7) {
            let d = rng.gen_range(1..=room);
            min_height(0, d).filter(|&mh| mh >= 3).map(|mh| {
                let a = rng.gen_range(1..=mh - 2);
                (d, a, rng.gen_range(a + 1..=mh - 1))
            })
        } else {
            None
        }
    };

    let mut pts = vec![(0, 0), (w, 0)];
    if let Some((d, a, b)) = right {
        pts.extend([(w, a), (w - d, a), (w - d, b), (w, b)]);
    }
    pts.push((w, hs[cols - 1]));
    for i in (0..cols).rev() {
        pts.push((xs[i], hs[i]));
        if i > 0 {
            pts.push((xs[i], hs[i - 1]));
        }
    }
    if let Some((d, a, b)) = left {
        pts.extend([(0, b), (d, b), (d, a), (0, a)]);
    }
    pts.dedup();
    if pts.last() == pts.first() {
        pts.pop();
    }
    Canonical { pts, core: (cx0, cx1, ch) }
}

/// Compares the angles of `p` and `q` around `o` for points above `o`.
fn angle_cmp(o: (i64, i64), p: (i64, i64), q: (i64, i64)) -> Ordering {
    let cross = i128::from(p.0 - o.0) * i128::from(q.1 - o.1) - i128::from(p.1 - o.1) * i128::from(q.0 - o.0);
    0.cmp(&cross)
}

fn star(rng: &mut ChaCha8Rng, w: i64, h: i64, maxv: usize) -> Result<Canonical> {
    let ox = rng.gen_range(w / 3..=2 * w / 3);
    let o = (ox, 0);
    let mut cw = (w / 6).max(1);
    let mut ch = (h / 4).max(1);
    for attempt in 0..64 {
        if attempt > 0 && attempt % 16 == 0 {
            cw = (cw / 2).max(1);
            ch = (ch / 2).max(1);
        }
        let core = (ox - cw, ox + cw, ch);
        let k = rng.gen_range(3..=maxv - 2);
        let mut pts: Vec<(i64, i64)> = vec![(rng.gen_range(0..=w), h)];
        while pts.len() < k {
            let p = (rng.gen_range(0..=w), rng.gen_range(1..=h));
            let in_core = p.0 >= core.0 - 1 && p.0 <= core.1 + 1 && p.1 <= core.2 + 1;
            if !in_core {
                pts.push(p);
            }
        }
        pts.sort_by(|&p, &q| angle_cmp(o, p, q).then_with(|| {
            // Same direction: keep the farther point first.
            let dp = (p.0 - o.0).abs() + p.1;
            let dq = (q.0 - o.0).abs() + q.1;
            dq.cmp(&dp)
        }));
        pts.dedup_by(|q, p| angle_cmp(o, *p, *q) == Ordering::Equal);
        let mut ring = vec![(0, 0), (w, 0)];
        ring.extend(pts);
        let cand = Canonical { pts: ring, core };
        if star_ok(&cand, w, h) {
            return Ok(cand);
        }
    }
    Err(Error::GenerationFailed(format!("no star-shaped polygon with a free core in a {w} x {h} box")))
}

fn star_ok(c: &Canonical, w: i64, h: i64) -> bool {
    let to_poly = |id: &str, pts: &[(i64, i64)]| Polygon::new(id, pts.iter().map(|&(x, y)| Point::new(x, y)).collect());
    let Ok(poly) = to_poly("star", &c.pts) else { return false };
    let (x0, x1, ch) = c.core;
    let Ok(core) = to_poly("core", &[(x0, 0), (x1, 0), (x1, ch), (x0, ch)]) else { return false };
    let (bx0, by0, bx1, by1) = poly.bbox();
    let full = bx0 == Coord::ZERO && by0 == Coord::ZERO && bx1 == Coord::from(w) && by1 == Coord::from(h);
    full && self_intersection(&poly).is_none() && relate(&core, &poly) == Relation::FirstInSecond
}

/// Maps every vertex `v` to `scale * v + (dx, dy)`.
pub fn transform(instance: &[Polygon], scale: &Coord, dx: &Coord, dy: &Coord) -> Result<Vec<Polygon>> {
    if scale.signum() != Ordering::Greater {
        return Err(Error::InvalidConfig(format!("scale must be positive, got {scale}")));
    }
    instance
        .iter()
        .map(|p| {
            let vs = p.vertices().iter().map(|v| Point { x: &(&v.x * scale) + dx, y: &(&v.y * scale) + dy }).collect();
            Polygon::new(p.shared_id().clone(), vs)
        })
        .collect()
}
