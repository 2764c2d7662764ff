//! Point file formats.
//!
//! Text: one `x y` pair per line, separated by whitespace. Blank lines and
//! lines starting with `#` are skipped.
//!
//! Binary, little-endian regardless of host:
//!
//! ```text
//! offset 0   4 bytes   magic "PTS2"
//! offset 4   u64       point count (must be >= 1)
//! offset 12  count * (f64 x, f64 y)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{Point2D, PointSet};

pub const MAGIC: &[u8; 4] = b"PTS2";
const HEADER_LEN: usize = 12;
const RECORD_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointFormat {
    #[default]
    Text,
    Binary,
}

impl FromStr for PointFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(PointFormat::Text),
            "binary" => Ok(PointFormat::Binary),
            other => Err(format!(
                "unknown point format '{other}' (expected text or binary)"
            )),
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_points(path: impl AsRef<Path>, format: PointFormat) -> Result<PointSet> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    match format {
        PointFormat::Text => {
            let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: 0,
                msg: format!("not UTF-8: {e}"),
            })?;
            parse_text(path, &text)
        }
        PointFormat::Binary => decode_binary(path, &bytes),
    }
}

pub fn write_points(points: &[Point2D], path: impl AsRef<Path>, format: PointFormat) -> Result<()> {
    let path = path.as_ref();
    let bytes = match format {
        PointFormat::Text => encode_text(points).into_bytes(),
        PointFormat::Binary => encode_binary(points),
    };
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

/// Shortest round-trip decimal for each coordinate.
pub fn encode_text(points: &[Point2D]) -> String {
    let mut out = String::with_capacity(points.len() * 40);
    for p in points {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn parse_text(path: &Path, text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected two numbers, got '{trimmed}'")));
        };
        let num = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| err(format!("'{s}' is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("'{s}' is not finite")));
            }
            Ok(v)
        };
        points.push(Point2D::new(num(xs)?, num(ys)?));
    }
    if points.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg: "no points".into(),
        });
    }
    PointSet::new(points)
}

pub fn encode_binary(points: &[Point2D]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + RECORD_LEN * points.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(points.len() as u64).to_le_bytes());
    for p in points {
        out.extend_from_slice(&p.x.to_le_bytes());
        out.extend_from_slice(&p.y.to_le_bytes());
    }
    out
}

pub fn decode_binary(path: &Path, bytes: &[u8]) -> Result<PointSet> {
    let err = |offset: usize, msg: String| Error::Binary {
        path: path.to_path_buf(),
        offset: offset as u64,
        msg,
    };
    if bytes.len() < HEADER_LEN {
        return Err(err(
            bytes.len(),
            format!("truncated header: {} of {HEADER_LEN} bytes", bytes.len()),
        ));
    }
    if &bytes[..4] != MAGIC {
        return Err(err(0, "bad magic, expected \"PTS2\"".into()));
    }
    let count = u64::from_le_bytes(bytes[4..12].try_into().unwrap());
    if count == 0 {
        return Err(err(4, "point count is zero".into()));
    }
    let payload = &bytes[HEADER_LEN..];
    let want = usize::try_from(count)
        .ok()
        .and_then(|c| c.checked_mul(RECORD_LEN))
        .ok_or_else(|| err(4, format!("point count {count} too large")))?;
    if payload.len() < want {
        return Err(err(
            bytes.len(),
            format!(
                "truncated payload: {count} points need {want} bytes, found {}",
                payload.len()
            ),
        ));
    }
    if payload.len() > want {
        return Err(err(
            HEADER_LEN + want,
            "trailing bytes after last point".into(),
        ));
    }
    let mut points = Vec::with_capacity(count as usize);
    for (k, rec) in payload.chunks_exact(RECORD_LEN).enumerate() {
        let x = f64::from_le_bytes(rec[..8].try_into().unwrap());
        let y = f64::from_le_bytes(rec[8..].try_into().unwrap());
        if !(x.is_finite() && y.is_finite()) {
            return Err(err(
                HEADER_LEN + k * RECORD_LEN,
                format!("point {k} is not finite ({x}, {y})"),
            ));
        }
        points.push(Point2D::new(x, y));
    }
    PointSet::new(points)
}
