//! Nesting forests of overlap-free simple polygons that may touch.
//!
//! Polygons are split into maximal outstretched segments (x-monotone boundary
//! paths), and a left-to-right sweep over those segments assigns each polygon
//! its parent in `O(n + N log N)` time, where `n` counts vertices and `N`
//! segments. All arithmetic is exact.
//!
//! ```
//! use nestpoly_core::{nesting_forest, Point, Polygon};
//!
//! let square = |id: &str, lo: i64, hi: i64| {
//!     let pts = [(lo, lo), (hi, lo), (hi, hi), (lo, hi)];
//!     Polygon::new(id, pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
//! };
//! let forest = nesting_forest(&[square("outer", 0, 10), square("inner", 2, 8)]).unwrap();
//! assert_eq!(forest.parent("inner"), Some("outer"));
//! assert_eq!(forest.parent("outer"), None);
//! ```

pub mod bench;
pub mod coord;
pub mod error;
pub mod generate;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod order;
pub mod segment;
pub mod sweep;
mod treap;

pub use coord::{Coord, ParseCoordError};
pub use error::{Error, Result};
pub use generate::{generate, generate_with_report, transform, GenConfig, GenReport, ShapeMix};
pub use geom::{shoelace_area, Edge, IntervalKind, Point, Polygon, XExtent, XInterval};
pub use io::{forest_document, parse_instance, serialize_instance, ForestDocument, ForestEntry, InstanceDocument};
pub use oracle::{brute_force_forest, interior_point, point_in_polygon, relate, validate, PointLocation, Relation, ValidationReport, Violation, ViolationKind, Witness};
pub use order::{cmp_at, insertion_cmp, is_below, BelowRelation, SweepOrdering};
pub use segment::{assign_parities, count_n, decompose, segments_of, MaxSegment, Parity, SegmentDecomposition};
pub use sweep::{
    build_events, nesting_forest, nesting_forest_with, Event, EventKind, NestOptions, NestingForest, SweepStats,
};
