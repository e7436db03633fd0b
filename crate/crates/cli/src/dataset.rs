//! Dataset input, output, and seeded generators.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use halfspace_core::geometry::{is_general_position, PointSet};
use halfspace_core::rational::{fmt_q_decimal, parse_rational, point, Point, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::CliError;

/// Reads a dataset from a file path, or from inline text when no such file
/// exists. Text starting with `{` is JSON, anything else is CSV.
pub fn parse_dataset(path_or_text: &str) -> Result<PointSet, CliError> {
    let text = if Path::new(path_or_text).is_file() {
        std::fs::read_to_string(path_or_text)
            .map_err(|e| CliError::Io(format!("{path_or_text}: {e}")))?
    } else {
        path_or_text.to_string()
    };
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

fn cell(text: &str, row: usize, col: usize) -> Result<Q, CliError> {
    parse_rational(text).map_err(|e| CliError::Parse {
        row,
        col,
        message: e.to_string(),
    })
}

fn finish(points: Vec<Point>) -> Result<PointSet, CliError> {
    Ok(PointSet::new(points)?)
}

/// One point per row, comma separated; `#` starts a comment line.
pub fn parse_csv(text: &str) -> Result<PointSet, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    let mut width = None;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Parse {
            row: row + 1,
            col: 0,
            message: e.to_string(),
        })?;
        let p = record
            .iter()
            .enumerate()
            .map(|(col, c)| cell(c, row + 1, col + 1))
            .collect::<Result<Point, _>>()?;
        match width {
            None => width = Some(p.len()),
            Some(w) if w != p.len() => {
                return Err(CliError::Parse {
                    row: row + 1,
                    col: p.len().min(w) + 1,
                    message: format!("expected {w} coordinates, found {}", p.len()),
                })
            }
            _ => {}
        }
        points.push(p);
    }
    finish(points)
}

/// `{"d": 2, "points": [["0", "1/2"], ...]}`. Coordinates must be strings or
/// integers; binary floating point numbers are refused.
pub fn parse_json(text: &str) -> Result<PointSet, CliError> {
    let bad = |row, col, message: String| CliError::Parse { row, col, message };
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.line(), e.column(), e.to_string()))?;
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(0, 0, "missing integer field \"d\"".into()))? as usize;
    let rows = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(0, 0, "missing array field \"points\"".into()))?;
    let mut points = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let coords = row
            .as_array()
            .ok_or_else(|| bad(r + 1, 0, "point is not an array".into()))?;
        if coords.len() != d {
            return Err(bad(r + 1, 0, format!("expected {d} coordinates, found {}", coords.len())));
        }
        let p = coords
            .iter()
            .enumerate()
            .map(|(c, x)| match x {
                Value::String(s) => cell(s, r + 1, c + 1),
                Value::Number(n) if n.is_i64() || n.is_u64() => cell(&n.to_string(), r + 1, c + 1),
                Value::Number(n) => Err(bad(
                    r + 1,
                    c + 1,
                    format!("binary float {n}; quote it as a decimal string such as \"{n}\""),
                )),
                _ => Err(bad(r + 1, c + 1, "coordinate must be a string".into())),
            })
            .collect::<Result<Point, _>>()?;
        points.push(p);
    }
    finish(points)
}

pub fn dataset_json(set: &PointSet) -> Value {
    json!({
        "d": set.d(),
        "points": set
            .points()
            .iter()
            .map(|p| p.iter().map(fmt_q_decimal).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn dataset_csv(set: &PointSet) -> String {
    set.points()
        .iter()
        .map(|p| p.iter().map(fmt_q_decimal).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    RandomIgp,
    TetrahedronD3,
    NestedSimplicesD3,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::RandomIgp => "random_igp",
            GenKind::TetrahedronD3 => "tetrahedron_d3",
            GenKind::NestedSimplicesD3 => "nested_simplices_d3",
        })
    }
}

/// `kind:n:d`; the fixed datasets also accept the bare kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub d: usize,
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind, self.n, self.d)
    }
}

impl FromStr for GenSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let usage = || CliError::Usage(format!("bad generator {s:?}; expected kind:n:d"));
        let parts: Vec<&str> = s.split(':').collect();
        let kind = match parts[0] {
            "random_igp" => GenKind::RandomIgp,
            "tetrahedron_d3" => GenKind::TetrahedronD3,
            "nested_simplices_d3" => GenKind::NestedSimplicesD3,
            _ => return Err(usage()),
        };
        let (n, d) = match (kind, parts.len()) {
            (GenKind::TetrahedronD3, 1) => (4, 3),
            (GenKind::NestedSimplicesD3, 1) => (6, 3),
            (_, 3) => (
                parts[1].parse().map_err(|_| usage())?,
                parts[2].parse().map_err(|_| usage())?,
            ),
            _ => return Err(usage()),
        };
        Ok(GenSpec { kind, n, d })
    }
}

/// Coordinates are multiples of 1/10 drawn from ChaCha8 seeded with `seed`.
/// Points that would break general position are redrawn.
pub fn random_igp(n: usize, d: usize, seed: u64) -> Result<PointSet, CliError> {
    if d == 0 || n == 0 {
        return Err(CliError::Usage("random_igp needs n >= 1 and d >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut draws = 0;
    while points.len() < n {
        draws += 1;
        if draws > 10_000 * n {
            return Err(CliError::Usage(format!("could not place {n} points in general position")));
        }
        let p: Point = (0..d).map(|_| Q::new(rng.gen_range(-100i64..=100).into(), 10.into())).collect();
        points.push(p);
        if !is_general_position(&PointSet::new(points.clone())?) {
            points.pop();
        }
    }
    finish(points)
}

/// Four vertices of a regular tetrahedron.
pub fn tetrahedron_d3() -> PointSet {
    PointSet::new(vec![point(&[1, 1, 1]), point(&[1, -1, -1]), point(&[-1, 1, -1]), point(&[-1, -1, 1])])
        .expect("fixed dataset")
}

/// Two nested triangles in the plane, same orientation, lifted by small
/// distinct heights so that no four points are coplanar.
pub fn nested_simplices_d3() -> PointSet {
    PointSet::new(vec![
        point(&[0, 0, 0]),
        point(&[30, 0, 1]),
        point(&[0, 30, 3]),
        point(&[9, 9, 7]),
        point(&[12, 9, 2]),
        point(&[9, 12, 5]),
    ])
    .expect("fixed dataset")
}

pub fn gen_dataset(spec: &GenSpec, seed: u64) -> Result<PointSet, CliError> {
    let fixed = |n, d| {
        if spec.n != n || spec.d != d {
            Err(CliError::Usage(format!("{} is fixed at n={n}, d={d}", spec.kind)))
        } else {
            Ok(())
        }
    };
    match spec.kind {
        GenKind::RandomIgp => random_igp(spec.n, spec.d, seed),
        GenKind::TetrahedronD3 => fixed(4, 3).map(|_| tetrahedron_d3()),
        GenKind::NestedSimplicesD3 => fixed(6, 3).map(|_| nested_simplices_d3()),
    }
}
