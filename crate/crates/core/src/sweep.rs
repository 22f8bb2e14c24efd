//! The nesting sweep: events, the ordered sweep status, and the forest.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{Edge, Polygon};
use crate::order::{cmp_with_edges, insertion_cmp};
use crate::segment::{segments_of, MaxSegment, Parity};
use crate::treap::Treap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Insert,
    Remove,
}

/// Insertion of a segment at its left end or removal at its right end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub kind: EventKind,
    pub xi: Coord,
    /// Index into the segment slice the events were built from.
    pub segment: usize,
    /// Set on the insertion of each polygon's first segment in insertion order.
    pub first: bool,
}

/// Stable merge sort with a fallible comparator; stops at the first error.
pub(crate) fn try_sort_by<T: Copy, E>(
    v: &mut [T],
    mut cmp: impl FnMut(&T, &T) -> Result<Ordering, E>,
) -> Result<(), E> {
    let mut buf = v.to_vec();
    let mut width = 1;
    let n = v.len();
    let mut src_is_v = true;
    while width < n {
        {
            let (src, dst): (&[T], &mut [T]) = if src_is_v { (v, &mut buf) } else { (&buf, v) };
            let mut start = 0;
            while start < n {
                let mid = (start + width).min(n);
                let end = (start + 2 * width).min(n);
                let (mut i, mut j, mut k) = (start, mid, start);
                while i < mid && j < end {
                    if cmp(&src[j], &src[i])? == Ordering::Less {
                        dst[k] = src[j];
                        j += 1;
                    } else {
                        dst[k] = src[i];
                        i += 1;
                    }
                    k += 1;
                }
                dst[k..k + mid - i].copy_from_slice(&src[i..mid]);
                k += mid - i;
                dst[k..k + end - j].copy_from_slice(&src[j..end]);
                start = end;
            }
        }
        src_is_v = !src_is_v;
        width *= 2;
    }
    if !src_is_v {
        v.copy_from_slice(&buf);
    }
    Ok(())
}

/// Builds the merged event sequence: sorted by `xi`, removals before
/// insertions at equal `xi`, insertions in insertion order.
pub fn build_events(segments: &[MaxSegment]) -> Result<Vec<Event>> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let owner: Vec<usize> = segments
        .iter()
        .map(|s| {
            let next = ids.len();
            *ids.entry(s.polygon_id()).or_insert(next)
        })
        .collect();
    events_with_owners(segments, &owner, ids.len())
}

/// [`build_events`] with the polygon index of each segment given.
fn events_with_owners(segments: &[MaxSegment], owner: &[usize], polygons: usize) -> Result<Vec<Event>> {
    // Sort by left end, then order each run of equal left ends by the
    // (fallible) sweep order there. Keys are copied out so the sorts scan
    // contiguous memory.
    let mut ins: Vec<(Coord, usize)> = segments.iter().enumerate().map(|(i, s)| (s.min_v().x.clone(), i)).collect();
    ins.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lo = 0;
    while lo < ins.len() {
        let hi = lo + ins[lo..].partition_point(|(x, _)| *x == ins[lo].0);
        if hi - lo > 1 {
            let mut group: Vec<usize> = ins[lo..hi].iter().map(|&(_, s)| s).collect();
            try_sort_by(&mut group, |&a, &b| insertion_cmp(&segments[a], &segments[b]).map(|o| o.to_ordering()))?;
            for (slot, s) in ins[lo..hi].iter_mut().zip(group) {
                slot.1 = s;
            }
        }
        lo = hi;
    }
    let mut rem: Vec<(Coord, usize)> = segments.iter().enumerate().map(|(i, s)| (s.max_v().x.clone(), i)).collect();
    rem.sort_by(|a, b| a.0.cmp(&b.0));

    let mut seen = vec![false; polygons];
    let mut events = Vec::with_capacity(2 * segments.len());
    let mut ins = ins.into_iter().peekable();
    let mut rem = rem.into_iter().peekable();
    loop {
        let take_remove = match (ins.peek(), rem.peek()) {
            (Some((x_in, _)), Some((x_rem, _))) => x_rem <= x_in,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (None, None) => break,
        };
        if take_remove {
            let (xi, t) = rem.next().expect("peeked");
            events.push(Event { kind: EventKind::Remove, xi, segment: t, first: false });
        } else {
            let (xi, s) = ins.next().expect("peeked");
            let first = !std::mem::replace(&mut seen[owner[s]], true);
            events.push(Event { kind: EventKind::Insert, xi, segment: s, first });
        }
    }
    Ok(events)
}

/// Moves `cursor` forward to the edge of `seg` associated with `xi`.
///
/// `xi` must lie in the closed x-extent of `seg` and the cursor must not be
/// past the associated edge.
pub fn advance_current_edge(seg: &MaxSegment, cursor: usize, xi: &Coord) -> Result<usize> {
    let (lo, hi) = (&seg.min_v().x, &seg.max_v().x);
    if xi < lo || xi > hi {
        return Err(Error::OutOfDomain { xi: xi.clone(), lo: lo.clone(), hi: hi.clone() });
    }
    let edges = seg.edges();
    if cursor >= edges.len() || edges[cursor].min_end().map_or(false, |p| &p.x > xi) {
        return Err(Error::InternalOrderViolation(format!("cursor {cursor} is past x = {xi}")));
    }
    Ok(advance(edges, cursor, xi))
}

#[inline]
fn advance(edges: &[Edge], mut cursor: usize, xi: &Coord) -> usize {
    while cursor + 1 < edges.len() && edges[cursor].b.x <= *xi {
        cursor += 1;
    }
    cursor
}

/// The ordered set of live segments.
///
/// Entries are segment indices. The order is evaluated lazily at the current
/// position; cursors track each entry's associated edge.
#[derive(Debug, Clone)]
pub struct SweepStatus<'a> {
    segments: &'a [MaxSegment],
    tree: Treap<usize>,
    cursors: Vec<usize>,
    position: Option<Coord>,
    small: Option<SmallEdges>,
    small_position: Option<i64>,
}

/// Edges as `[a.x, a.y, b.x, b.y]` when every coordinate of every segment
/// is a small integer; `edges[start[s]..start[s + 1]]` belong to segment `s`.
#[derive(Debug, Clone)]
struct SmallEdges {
    edges: Vec<[i64; 4]>,
    start: Vec<usize>,
}

impl SmallEdges {
    fn new(segments: &[MaxSegment]) -> Option<Self> {
        let small = |c: &Coord| c.small().map(|v| v as i64);
        let mut edges = Vec::new();
        let mut start = Vec::with_capacity(segments.len() + 1);
        for s in segments {
            start.push(edges.len());
            for e in s.edges() {
                edges.push([small(&e.a.x)?, small(&e.a.y)?, small(&e.b.x)?, small(&e.b.y)?]);
            }
        }
        start.push(edges.len());
        Some(SmallEdges { edges, start })
    }

    #[inline]
    fn of(&self, s: usize) -> &[[i64; 4]] {
        &self.edges[self.start[s]..self.start[s + 1]]
    }
}

impl<'a> SweepStatus<'a> {
    pub fn new(segments: &'a [MaxSegment]) -> Self {
        SweepStatus {
            segments,
            tree: Treap::with_capacity(64),
            cursors: vec![0; segments.len()],
            position: None,
            small: SmallEdges::new(segments),
            small_position: None,
        }
    }

    pub fn position(&self) -> Option<&Coord> {
        self.position.as_ref()
    }

    /// Moves the sweep to `xi`. Positions never decrease.
    pub fn set_position(&mut self, xi: Coord) -> Result<()> {
        if let Some(p) = &self.position {
            if &xi < p {
                return Err(Error::InternalOrderViolation(format!("sweep moved back from {p} to {xi}")));
            }
        }
        self.small_position = xi.small().map(|v| v as i64);
        self.position = Some(xi);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Resident segments, first (topmost) to last.
    pub fn residents(&self) -> Vec<usize> {
        self.tree.to_vec()
    }

    /// The current edge of segment `s`; advanced on demand.
    pub fn current_edge(&mut self, s: usize) -> &Edge {
        let xi = self.position.as_ref().expect("sweep position set");
        self.cursors[s] = advance(self.segments[s].edges(), self.cursors[s], xi);
        &self.segments[s].edges()[self.cursors[s]]
    }

    /// The tree together with a probe for `s` at the current position.
    fn tree_and_probe(&mut self, s: usize) -> (&mut Treap<usize>, impl FnMut(&usize) -> Result<Ordering> + '_) {
        let xi = self.position.as_ref().expect("sweep position set");
        let small = self.small.as_ref().zip(self.small_position);
        (&mut self.tree, probe(self.segments, &mut self.cursors, xi, small, s))
    }

    /// Inserts `s` at the current position and returns its predecessor.
    pub fn insert(&mut self, s: usize) -> Result<Option<usize>> {
        let (tree, probe) = self.tree_and_probe(s);
        tree.insert(s, probe)
    }

    /// Removes `s`, comparing at the current position.
    pub fn remove(&mut self, s: usize) -> Result<()> {
        let (tree, probe) = self.tree_and_probe(s);
        match tree.remove(probe)? {
            Some(_) => Ok(()),
            None => Err(Error::InternalOrderViolation(format!(
                "segment {} of polygon {:?} is not in the sweep status",
                self.segments[s].cyclic_index(),
                self.segments[s].polygon_id()
            ))),
        }
    }

    /// The resident entry immediately before `s` in the order at the
    /// current position.
    pub fn predecessor(&mut self, s: usize) -> Result<Option<usize>> {
        let (tree, probe) = self.tree_and_probe(s);
        tree.predecessor(probe)
    }

    /// Checks that consecutive residents are strictly ordered. Linear time.
    pub fn check_order(&mut self) -> Result<()> {
        let residents = self.tree.to_vec();
        let xi = self.position.clone().expect("sweep position set");
        for w in residents.windows(2) {
            let ea = self.current_edge(w[0]).clone();
            let eb = self.current_edge(w[1]).clone();
            let o = cmp_with_edges(&xi, &self.segments[w[0]], &ea, &self.segments[w[1]], &eb)?;
            if o.to_ordering() != Ordering::Less {
                return Err(Error::InternalOrderViolation(format!(
                    "status out of order at x = {xi}: {:?} then {:?}",
                    self.segments[w[0]].polygon_id(),
                    self.segments[w[1]].polygon_id()
                )));
            }
        }
        Ok(())
    }
}

fn depths(ids: &[Arc<str>], parent: &[Option<usize>]) -> Result<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = ids.len();
    let mut depth = vec![UNSET; n];
    let mut path = Vec::new();
    for start in 0..n {
        let mut cur = Some(start);
        let mut d = loop {
            match cur {
                None => break 0,
                Some(c) if depth[c] != UNSET => break depth[c] + 1,
                Some(c) => {
                    if path.len() > n {
                        return Err(Error::ContainmentCycle(ids[start].to_string(), ids[c].to_string()));
                    }
                    path.push(c);
                    cur = parent[c];
                }
            }
        };
        while let Some(v) = path.pop() {
            depth[v] = d;
            d += 1;
        }
    }
    Ok(depth)
}

/// Compares resident entries against segment `key` at `xi`.
fn probe<'s>(
    segs: &'s [MaxSegment],
    cursors: &'s mut [usize],
    xi: &'s Coord,
    small: Option<(&'s SmallEdges, i64)>,
    key: usize,
) -> impl FnMut(&usize) -> Result<Ordering> + 's {
    cursors[key] = advance(segs[key].edges(), cursors[key], xi);
    let ek = &segs[key].edges()[cursors[key]];
    let small_key = small.map(|(se, _)| se.of(key)[cursors[key]]);
    move |&node| {
        if let (Some((se, x)), Some(k)) = (small, small_key) {
            let edges = se.of(node);
            let mut c = cursors[node];
            while c + 1 < edges.len() && edges[c][2] <= x {
                c += 1;
            }
            cursors[node] = c;
            if let Some(o) = cmp_small(x, &edges[c], &k) {
                return Ok(o);
            }
        } else {
            cursors[node] = advance(segs[node].edges(), cursors[node], xi);
        }
        let c = cursors[node];
        cmp_with_edges(xi, &segs[node], &segs[node].edges()[c], &segs[key], ek).map(|o| o.to_ordering())
    }
}

/// The order of two edges at `x` by y, then slope, with higher first; `None`
/// when both agree and the remaining keys decide.
#[inline]
fn cmp_small(x: i64, e: &[i64; 4], f: &[i64; 4]) -> Option<Ordering> {
    let w = |v: i64| v as i128;
    let (dxe, dxf) = (w(e[2] - e[0]), w(f[2] - f[0]));
    let (dye, dyf) = (w(e[3] - e[1]), w(f[3] - f[1]));
    let ye = w(e[1]) * dxe + dye * w(x - e[0]);
    let yf = w(f[1]) * dxf + dyf * w(x - f[0]);
    match (yf * dxe).cmp(&(ye * dxf)).then_with(|| (dyf * dxe).cmp(&(dye * dxf))) {
        Ordering::Equal => None,
        o => Some(o),
    }
}

/// Parent function over polygon ids; roots have no parent.
#[derive(Debug, Clone)]
pub struct NestingForest {
    ids: Vec<Arc<str>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    index: HashMap<Arc<str>, usize>,
}

impl NestingForest {
    /// Builds a forest from `parent[i]`, the index of the parent of `ids[i]`.
    pub fn from_parents(ids: Vec<Arc<str>>, parent: Vec<Option<usize>>) -> Result<Self> {
        assert_eq!(ids.len(), parent.len());
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateId(id.to_string()));
            }
        }
        let depth = depths(&ids, &parent)?;
        Ok(NestingForest { ids, parent, depth, index })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Polygon ids in input order.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.ids.iter().map(|s| &**s)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn parent_index(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn parent(&self, id: &str) -> Option<&str> {
        self.index_of(id).and_then(|i| self.parent[i]).map(|p| &*self.ids[p])
    }

    pub fn depth(&self, id: &str) -> Option<usize> {
        self.index_of(id).map(|i| self.depth[i])
    }

    pub fn depth_of_index(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// Children of `id`, sorted by id.
    pub fn children(&self, id: &str) -> Vec<&str> {
        let Some(i) = self.index_of(id) else { return Vec::new() };
        let mut out: Vec<&str> =
            (0..self.len()).filter(|&c| self.parent[c] == Some(i)).map(|c| &*self.ids[c]).collect();
        out.sort_unstable();
        out
    }

    /// Roots, sorted by id.
    pub fn roots(&self) -> Vec<&str> {
        let mut out: Vec<&str> = (0..self.len()).filter(|&c| self.parent[c].is_none()).map(|c| &*self.ids[c]).collect();
        out.sort_unstable();
        out
    }

    /// `id -> parent id`, ordered by id.
    pub fn parent_map(&self) -> BTreeMap<&str, Option<&str>> {
        (0..self.len()).map(|i| (&*self.ids[i], self.parent[i].map(|p| &*self.ids[p]))).collect()
    }
}

impl PartialEq for NestingForest {
    fn eq(&self, other: &Self) -> bool {
        self.parent_map() == other.parent_map()
    }
}

impl Eq for NestingForest {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NestOptions {
    /// Verify the status order after every event. Makes the sweep quadratic.
    pub check_status_order: bool,
}

/// Instance size and timing of one sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepStats {
    /// Total vertex count.
    pub n: usize,
    /// Segment count.
    pub segments: usize,
    /// Polygon count.
    pub m: usize,
    pub events: usize,
    pub elapsed_ns: u128,
}

/// Computes the nesting forest of pairwise overlap-free, distinct polygons.
///
/// Overlaps are not always detected; when they are, the result is
/// [`Error::OverlapDetected`].
pub fn nesting_forest(polygons: &[Polygon]) -> Result<NestingForest> {
    nesting_forest_with(polygons, &NestOptions::default()).map(|(f, _)| f)
}

pub fn nesting_forest_with(polygons: &[Polygon], opts: &NestOptions) -> Result<(NestingForest, SweepStats)> {
    let start = Instant::now();
    let ids: Vec<Arc<str>> = polygons.iter().map(|p| p.shared_id().clone()).collect();
    let mut poly_index: HashMap<&str, usize> = HashMap::with_capacity(polygons.len());
    for (i, p) in polygons.iter().enumerate() {
        if poly_index.insert(p.id(), i).is_some() {
            return Err(Error::DuplicateId(p.id().to_string()));
        }
    }

    let mut segments = Vec::new();
    let mut owner = Vec::new();
    for (i, p) in polygons.iter().enumerate() {
        let d = segments_of(p)?;
        owner.extend(std::iter::repeat(i).take(d.segments.len()));
        segments.extend(d.segments);
    }

    let events = events_with_owners(&segments, &owner, polygons.len())?;
    let mut status = SweepStatus::new(&segments);
    let mut parent: Vec<Option<usize>> = vec![None; polygons.len()];
    let mut assigned = vec![false; polygons.len()];

    for ev in &events {
        match ev.kind {
            EventKind::Remove => {
                // Removal compares at the previous position, where every
                // resident (including this one) is still live.
                status.remove(ev.segment)?;
            }
            EventKind::Insert => {
                if status.position() != Some(&ev.xi) {
                    status.set_position(ev.xi.clone())?;
                }
                let pred = status.insert(ev.segment)?;
                if ev.first {
                    let p = owner[ev.segment];
                    if segments[ev.segment].parity() != Some(Parity::Odd) {
                        return Err(Error::InternalOrderViolation(format!(
                            "first segment of polygon {:?} does not bound its interior from above",
                            polygons[p].id()
                        )));
                    }
                    parent[p] = match pred {
                        None => None,
                        Some(t) => {
                            let q = owner[t];
                            match segments[t].parity().ok_or(Error::MissingParity)? {
                                Parity::Odd => Some(q),
                                Parity::Even if assigned[q] => parent[q],
                                Parity::Even => {
                                    return Err(Error::InternalOrderViolation(format!(
                                        "parent of {:?} is needed before it is known",
                                        polygons[q].id()
                                    )))
                                }
                            }
                        }
                    };
                    assigned[p] = true;
                }
            }
        }
        if opts.check_status_order {
            status.check_order()?;
        }
    }

    let stats = SweepStats {
        n: polygons.iter().map(Polygon::len).sum(),
        segments: segments.len(),
        m: polygons.len(),
        events: events.len(),
        elapsed_ns: start.elapsed().as_nanos(),
    };
    Ok((NestingForest::from_parents(ids, parent)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::poly;
    use crate::geom::Point;

    fn all_segments(ps: &[Polygon]) -> Vec<MaxSegment> {
        ps.iter().flat_map(|p| segments_of(p).unwrap().segments).collect()
    }

    #[test]
    fn single_square_events() {
        let segs = all_segments(&[poly("S", &[(0, 0), (4, 0), (4, 4), (0, 4)])]);
        let ev = build_events(&segs).unwrap();
        let summary: Vec<(EventKind, Coord, bool)> = ev.iter().map(|e| (e.kind, e.xi.clone(), e.first)).collect();
        assert_eq!(
            summary,
            vec![
                (EventKind::Insert, 0.into(), true),
                (EventKind::Insert, 0.into(), false),
                (EventKind::Remove, 4.into(), false),
                (EventKind::Remove, 4.into(), false),
            ]
        );
        // The top segment is inserted first.
        assert_eq!(segs[ev[0].segment].min_v().y, 4.into());
        assert_eq!(segs[ev[1].segment].min_v().y, 0.into());
    }

    #[test]
    fn removals_precede_insertions() {
        let a = poly("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let b = poly("B", &[(2, 0), (4, 0), (4, 2), (2, 2)]);
        let segs = all_segments(&[a, b]);
        let ev = build_events(&segs).unwrap();
        let at2: Vec<EventKind> = ev.iter().filter(|e| e.xi == 2.into()).map(|e| e.kind).collect();
        assert_eq!(at2, vec![EventKind::Remove, EventKind::Remove, EventKind::Insert, EventKind::Insert]);
    }

    #[test]
    fn status_predecessor_examples() {
        let o = poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let i = poly("I", &[(2, 2), (8, 2), (8, 8), (2, 8)]);
        let segs = all_segments(&[o, i]);
        let find = |id: &str, y: i64| {
            segs.iter().position(|s| s.polygon_id() == id && s.min_v().y == y.into()).unwrap()
        };
        let (top_o, bot_o, top_i, bot_i) = (find("O", 10), find("O", 0), find("I", 8), find("I", 2));
        let mut st = SweepStatus::new(&segs);
        st.set_position(0.into()).unwrap();
        assert_eq!(st.insert(top_o).unwrap(), None);
        assert_eq!(st.insert(bot_o).unwrap(), Some(top_o));
        assert_eq!(st.predecessor(bot_o).unwrap(), Some(top_o));
        assert_eq!(st.predecessor(top_o).unwrap(), None);
        st.set_position(3.into()).unwrap();
        st.insert(top_i).unwrap();
        st.insert(bot_i).unwrap();
        assert_eq!(st.predecessor(top_i).unwrap(), Some(top_o));
        assert_eq!(st.residents(), vec![top_o, top_i, bot_i, bot_o]);
        st.check_order().unwrap();
        st.remove(top_i).unwrap();
        assert!(st.remove(top_i).is_err());
        assert_eq!(st.len(), 3);
    }

    #[test]
    fn cursor_advances_over_vertical_edges() {
        let p = poly("St", &[(0, 0), (4, 0), (4, 2), (6, 2), (6, 6), (0, 6)]);
        let d = segments_of(&p).unwrap();
        let bottom = d.segments.iter().find(|s| s.edges().len() == 3).unwrap();
        assert_eq!(advance_current_edge(bottom, 0, &5.into()).unwrap(), 2);
        assert_eq!(advance_current_edge(bottom, 0, &4.into()).unwrap(), 2);
        assert_eq!(advance_current_edge(bottom, 0, &1.into()).unwrap(), 0);
        assert_eq!(advance_current_edge(bottom, 2, &6.into()).unwrap(), 2);
        assert!(matches!(advance_current_edge(bottom, 0, &7.into()), Err(Error::OutOfDomain { .. })));
        assert!(advance_current_edge(bottom, 2, &1.into()).is_err());
    }

    #[test]
    fn nested_and_touching_forests() {
        let nested =
            [poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]), poly("I", &[(2, 2), (8, 2), (8, 8), (2, 8)])];
        let f = nesting_forest(&nested).unwrap();
        assert_eq!(f.parent("I"), Some("O"));
        assert_eq!(f.parent("O"), None);
        assert_eq!(f.depth("I"), Some(1));

        let siblings =
            [poly("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]), poly("B", &[(2, 0), (4, 0), (4, 2), (2, 2)])];
        let f = nesting_forest(&siblings).unwrap();
        assert_eq!(f.roots(), vec!["A", "B"]);

        let vertex = [poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]), poly("I", &[(0, 5), (5, 2), (5, 8)])];
        assert_eq!(nesting_forest(&vertex).unwrap().parent("I"), Some("O"));

        let bottom = [poly("O", &[(0, 0), (4, 0), (4, 4), (0, 4)]), poly("I", &[(0, 0), (4, 0), (2, 2)])];
        assert_eq!(nesting_forest(&bottom).unwrap().parent("I"), Some("O"));
        let flipped = [bottom[1].clone(), bottom[0].clone()];
        assert_eq!(nesting_forest(&flipped).unwrap().parent("I"), Some("O"));
    }

    #[test]
    fn sibling_case_reads_parent_of_predecessor() {
        // C sits below B inside A; C's predecessor is B's bottom segment.
        let ps = [
            poly("A", &[(0, 0), (20, 0), (20, 20), (0, 20)]),
            poly("B", &[(1, 12), (19, 12), (19, 18), (1, 18)]),
            poly("C", &[(2, 2), (8, 2), (8, 8), (2, 8)]),
            poly("D", &[(3, 3), (7, 3), (7, 7), (3, 7)]),
        ];
        let f = nesting_forest(&ps).unwrap();
        assert_eq!(f.parent("B"), Some("A"));
        assert_eq!(f.parent("C"), Some("A"));
        assert_eq!(f.parent("D"), Some("C"));
        assert_eq!(f.children("A"), vec!["B", "C"]);
        assert_eq!(f.depth("D"), Some(2));
    }

    #[test]
    fn status_check_passes_on_valid_input() {
        let ps = [
            poly("O", &[(0, 0), (10, 0), (10, 10), (0, 10)]),
            poly("I", &[(0, 5), (5, 2), (5, 8)]),
            poly("J", &[(5, 2), (10, 0), (10, 6)]),
        ];
        let (f, stats) = nesting_forest_with(&ps, &NestOptions { check_status_order: true }).unwrap();
        assert_eq!(f.parent("J"), Some("O"));
        assert_eq!(stats.m, 3);
        assert_eq!(stats.n, 10);
        assert_eq!(stats.events, 2 * stats.segments);
    }

    #[test]
    fn duplicate_ids_and_polygons_are_rejected() {
        let sq = poly("S", &[(0, 0), (4, 0), (4, 4), (0, 4)]);
        assert!(matches!(nesting_forest(&[sq.clone(), sq.clone()]), Err(Error::DuplicateId(_))));
        let err = nesting_forest(&[sq.clone(), sq.with_id("T")]).unwrap_err();
        assert!(matches!(err, Error::OverlapDetected { .. }));
    }

    #[test]
    fn rational_coordinates() {
        let half = |x: i128, y: i128| Point::new(Coord::from_fraction(x, 2), Coord::from_fraction(y, 2));
        let o = Polygon::new("O", vec![half(0, 0), half(1, 0), half(1, 1), half(0, 1)]).unwrap();
        let i = Polygon::new("I", vec![half(1, 1), half(1, 0), Point::new(Coord::from_fraction(1, 3), Coord::from_fraction(1, 4))])
            .unwrap();
        assert_eq!(nesting_forest(&[o, i]).unwrap().parent("I"), Some("O"));
    }

    #[test]
    fn forest_from_parents_detects_cycles() {
        let ids: Vec<Arc<str>> = vec!["a".into(), "b".into(), "c".into()];
        let f = NestingForest::from_parents(ids.clone(), vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(f.depth("c"), Some(2));
        assert_eq!(f.children("a"), vec!["b"]);
        let err = NestingForest::from_parents(ids, vec![Some(2), Some(0), Some(1)]).unwrap_err();
        assert!(matches!(err, Error::ContainmentCycle(..)));
    }

    #[test]
    fn fallible_sort_is_stable_and_sorted() {
        let mut v: Vec<(u8, u8)> = (0..50u8).map(|i| (i.wrapping_mul(37) % 7, i)).collect();
        let mut expect = v.clone();
        expect.sort_by_key(|p| p.0);
        try_sort_by::<_, ()>(&mut v, |a, b| Ok(a.0.cmp(&b.0))).unwrap();
        assert_eq!(v, expect);
        assert_eq!(try_sort_by(&mut v, |_, _| Err("no")), Err("no"));
    }
}
