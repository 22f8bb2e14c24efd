//! JSON documents for instances and forests.
//!
//! Instance coordinates may be JSON numbers or strings holding a decimal or
//! a fraction `p/q`; both are read exactly. Output writes integers as JSON
//! numbers and everything else as strings.

use std::collections::HashSet;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};
use crate::sweep::{NestingForest, SweepStats};

/// A coordinate as it appears in a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonCoord(pub Coord);

fn parse_number_text(text: &str) -> Option<Coord> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let m = Coord::from_str(mantissa).ok()?;
    if exp.unsigned_abs() > 4096 {
        return None;
    }
    let mut scale = Coord::ONE;
    for _ in 0..exp.unsigned_abs() {
        scale = scale * Coord::from_int(10);
    }
    Some(if exp >= 0 { m * scale } else { &m / &scale })
}

impl<'de> Deserialize<'de> for JsonCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => parse_number_text(&n.to_string())
                .map(JsonCoord)
                .ok_or_else(|| D::Error::custom(format!("unsupported number {n}"))),
            Value::String(s) => Coord::from_str(&s)
                .map(JsonCoord)
                .map_err(|_| D::Error::custom(format!("invalid coordinate {s:?}"))),
            other => Err(D::Error::custom(format!("expected a number or a string, found {other}"))),
        }
    }
}

impl Serialize for JsonCoord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            let n = Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
            n.serialize(s)
        } else {
            s.serialize_str(&self.0.to_decimal_string().unwrap_or_else(|| self.0.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonRecord {
    pub id: String,
    pub vertices: Vec<[JsonCoord; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub polygons: Vec<PolygonRecord>,
}

impl InstanceDocument {
    pub fn from_polygons(polygons: &[Polygon]) -> Self {
        InstanceDocument {
            polygons: polygons
                .iter()
                .map(|p| PolygonRecord {
                    id: p.id().to_string(),
                    vertices: p.vertices().iter().map(|v| [JsonCoord(v.x.clone()), JsonCoord(v.y.clone())]).collect(),
                })
                .collect(),
        }
    }

    /// Builds polygons in document order, checking ids and vertex counts.
    pub fn to_polygons(&self) -> Result<Vec<Polygon>> {
        if self.polygons.is_empty() {
            return Err(Error::Semantic { polygon: None, message: "the instance has no polygons".into() });
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.polygons.len());
        for rec in &self.polygons {
            if !seen.insert(rec.id.as_str()) {
                return Err(Error::Semantic { polygon: Some(rec.id.clone()), message: "duplicate polygon id".into() });
            }
            let pts = rec.vertices.iter().map(|[x, y]| Point { x: x.0.clone(), y: y.0.clone() }).collect();
            let p = Polygon::new(rec.id.as_str(), pts)
                .map_err(|e| Error::Semantic { polygon: Some(rec.id.clone()), message: e.to_string() })?;
            out.push(p);
        }
        Ok(out)
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Reads an instance document.
pub fn parse_instance(bytes: &[u8]) -> Result<Vec<Polygon>> {
    let doc: InstanceDocument = serde_json::from_slice(bytes).map_err(parse_error)?;
    doc.to_polygons()
}

/// Writes polygons as a pretty-printed instance document.
pub fn serialize_instance(polygons: &[Polygon]) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceDocument::from_polygons(polygons)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestEntry {
    pub id: String,
    pub parent: Option<String>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsRecord {
    pub n: usize,
    #[serde(rename = "N")]
    pub segments: usize,
    pub m: usize,
    pub events: usize,
    pub elapsed_ns: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestDocument {
    pub forest: Vec<ForestEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsRecord>,
}

impl ForestDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(parse_error)
    }

    pub fn depth_of(&self, id: &str) -> Option<usize> {
        self.forest.binary_search_by(|e| e.id.as_str().cmp(id)).ok().map(|i| self.forest[i].depth)
    }
}

/// The forest as a document sorted by id.
pub fn forest_document(forest: &NestingForest, stats: Option<&SweepStats>) -> ForestDocument {
    let mut entries: Vec<ForestEntry> = forest
        .ids()
        .enumerate()
        .map(|(i, id)| ForestEntry {
            id: id.to_string(),
            parent: forest.parent(id).map(str::to_string),
            depth: forest.depth_of_index(i),
        })
        .collect();
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    ForestDocument {
        forest: entries,
        stats: stats.map(|s| StatsRecord {
            n: s.n,
            segments: s.segments,
            m: s.m,
            events: s.events,
            elapsed_ns: s.elapsed_ns,
        }),
    }
}
