//! JSON file formats.
//!
//! Coordinates are written as `"p/q"` strings or bare integers. On input, JSON
//! integers are accepted as well; decimal numbers and decimal strings only with
//! `lossy` set.

use std::fs;
use std::path::Path;

use ladr::hitting::{LineSet, PointSet};
use ladr::model::{Instance, Layout, Point, Rect, RectId};
use ladr::scalar::{format_rational, parse_rational};
use ladr::{Rational, Result as CoreResult};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_err(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.display().to_string(), message: message.into() }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| parse_err(path, e.to_string()))
}

/// A coordinate as it appears in a file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Num {
    pub fn from_rational(value: &Rational) -> Self {
        Num::Text(format_rational(value))
    }

    pub fn to_rational(&self, lossy: bool) -> Result<Rational, String> {
        match self {
            Num::Text(s) => parse_rational(s, lossy).map_err(|e| e.to_string()),
            Num::Int(i) => Ok(Rational::from_integer((*i).into())),
            Num::Float(f) => parse_rational(&f.to_string(), lossy).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RectEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    pub x: Num,
    pub y: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RectFile {
    pub rectangles: Vec<RectEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub w: u64,
    pub h: u64,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub area: String,
    pub perimeter: String,
    pub width: String,
    pub height: String,
    pub area_approx: f64,
    pub perimeter_approx: f64,
    pub chosen_w: u64,
    pub chosen_h: u64,
    pub eps: String,
    pub objective: String,
    pub verified: bool,
    pub trace: Vec<TraceEntry>,
}

/// Rectangles, possibly placed: sizes are optional, coordinates required.
#[derive(Clone, Debug)]
pub struct Placed {
    pub rects: Vec<Rect>,
    pub layout: Layout<Rational>,
    pub summary: Option<Summary>,
}

pub fn read_rects(path: &Path, lossy: bool, need_sizes: bool) -> Result<Placed, CliError> {
    let file: RectFile = serde_json::from_value(read_json(path)?).map_err(|e| parse_err(path, e.to_string()))?;
    let mut rects = Vec::new();
    let mut layout = Layout::new();
    for entry in &file.rectangles {
        let coord = |n: &Num| n.to_rational(lossy).map_err(|e| parse_err(path, format!("rectangle {}: {e}", entry.id)));
        let (x, y) = (coord(&entry.x)?, coord(&entry.y)?);
        if layout.insert(RectId::new(entry.id.clone()), Point::new(x, y)).is_some() {
            return Err(parse_err(path, format!("duplicate rectangle id {}", entry.id)));
        }
        match (entry.w, entry.h) {
            (Some(w), Some(h)) => rects.push(Rect::new(entry.id.clone(), w, h)),
            _ if need_sizes => return Err(parse_err(path, format!("rectangle {} lacks w or h", entry.id))),
            _ => {}
        }
    }
    Ok(Placed { rects, layout, summary: file.summary })
}

pub fn read_instance(path: &Path, lossy: bool) -> Result<Instance<Rational>, CliError> {
    let placed = read_rects(path, lossy, true)?;
    Ok(Instance::new(placed.rects, placed.layout)?)
}

pub fn layout_json(instance: &Instance<Rational>, layout: &Layout<Rational>, summary: Option<Summary>) -> CoreResult<String> {
    let mut rectangles = Vec::with_capacity(instance.len());
    for rect in instance.rects() {
        let c = layout.center(&rect.id)?;
        rectangles.push(RectEntry {
            id: rect.id.as_str().to_string(),
            w: Some(rect.w),
            h: Some(rect.h),
            x: Num::from_rational(&c.x),
            y: Num::from_rational(&c.y),
        });
    }
    Ok(to_pretty(&RectFile { rectangles, summary }))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn num_pair(value: &Value, lossy: bool) -> Result<Point<Rational>, String> {
    let pair: [Num; 2] = serde_json::from_value(value.clone()).map_err(|e| format!("point {value}: {e}"))?;
    Ok(Point::new(pair[0].to_rational(lossy)?, pair[1].to_rational(lossy)?))
}

/// Reads `[[x, y], ...]` or an object carrying such an array under `"points"`.
pub fn read_points(path: &Path, lossy: bool) -> Result<PointSet<Rational>, CliError> {
    let doc = read_json(path)?;
    let array = match &doc {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("points") {
            Some(Value::Array(items)) => items,
            _ => return Err(parse_err(path, "expected a \"points\" array")),
        },
        _ => return Err(parse_err(path, "expected an array of [x, y] pairs")),
    };
    let points = array.iter().map(|v| num_pair(v, lossy)).collect::<Result<Vec<_>, _>>().map_err(|e| parse_err(path, e))?;
    Ok(PointSet::new(points)?)
}

pub fn points_value(points: &PointSet<Rational>) -> Value {
    Value::Array(
        points
            .points()
            .iter()
            .map(|p| serde_json::json!([format_rational(&p.x), format_rational(&p.y)]))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinesFile {
    pub horizontals: Vec<Num>,
    pub verticals: Vec<Num>,
}

pub fn lines_value(lines: &LineSet<Rational>) -> Value {
    serde_json::to_value(LinesFile {
        horizontals: lines.horizontals.iter().map(Num::from_rational).collect(),
        verticals: lines.verticals.iter().map(Num::from_rational).collect(),
    })
    .expect("serializable")
}

fn lines_from_value(value: &Value, lossy: bool) -> Result<LineSet<Rational>, String> {
    let file: LinesFile = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
    let conv = |v: &[Num]| v.iter().map(|n| n.to_rational(lossy)).collect::<Result<Vec<_>, _>>();
    Ok(LineSet::new(conv(&file.horizontals)?, conv(&file.verticals)?))
}

/// Reads `{"horizontals": [...], "verticals": [...]}`, either at the top level
/// or under a `"lines"` key.
pub fn read_lines(path: &Path, lossy: bool) -> Result<LineSet<Rational>, CliError> {
    let doc = read_json(path)?;
    let inner = doc.get("lines").unwrap_or(&doc);
    lines_from_value(inner, lossy).map_err(|e| parse_err(path, e))
}

/// Line set embedded in a document, if any.
pub fn embedded_lines(doc: &Value, lossy: bool) -> Option<Result<LineSet<Rational>, String>> {
    doc.get("lines").map(|v| lines_from_value(v, lossy))
}

pub fn read_value(path: &Path) -> Result<Value, CliError> {
    read_json(path)
}

pub fn rational_arg(text: &str, lossy: bool) -> Result<Rational, CliError> {
    parse_rational(text, lossy).map_err(|e| CliError::Usage(format!("{text:?}: {e}")))
}
