//! Ink documents, token files, IAM-OnDB import and SVG rendering.
//!
//! # Ink documents
//!
//! ```text
//! {
//!   "format": "inktok-ink",
//!   "version": 1,
//!   "grid": false,
//!   "delta": 8.0,
//!   "origin": [0, 0],
//!   "strokes": [
//!     [[0.0, 0.0], [8.0, 0.0]],
//!     [[16.0, 8.0], [32.0, -8.0]]
//!   ]
//! }
//! ```
//!
//! `delta` and `origin` are optional. `grid: true` marks grid-cell
//! coordinates (an integer ink quantized at `delta`); they are written as
//! integers. Coordinates are y-up.
//!
//! # Token files
//!
//! A header line followed by one sequence of whitespace-separated ids per
//! line:
//!
//! ```text
//! # inktok-tokens version=1 representation=scribe delta=8 vocab=none origin=0,0
//! 12 4 13 5 12 11 11 13
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Location, Result};
use crate::ink::{GridPoint, IntegerInk, Point, RawInk};
use crate::repr::Representation;
use crate::TokenId;

pub const INK_FORMAT_TAG: &str = "inktok-ink";
pub const INK_FORMAT_VERSION: u32 = 1;

/// Serialized form of an ink plus the sidecar metadata needed for exact
/// token round trips.
#[derive(Debug, Clone, PartialEq)]
pub struct InkDocument {
    pub grid: bool,
    pub delta: Option<f64>,
    pub origin: Option<GridPoint>,
    pub strokes: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InkFile {
    format: String,
    version: u32,
    #[serde(default)]
    grid: bool,
    #[serde(default)]
    delta: Option<f64>,
    #[serde(default)]
    origin: Option<[i32; 2]>,
    strokes: Vec<Vec<[f64; 2]>>,
}

fn fmt_f64(v: f64) -> String {
    serde_json::to_string(&v).expect("finite floats serialize")
}

impl InkDocument {
    pub fn from_raw(ink: &RawInk) -> Self {
        InkDocument {
            grid: false,
            delta: None,
            origin: None,
            strokes: ink
                .strokes()
                .iter()
                .map(|s| s.iter().map(|p| [p.x, p.y]).collect())
                .collect(),
        }
    }

    pub fn from_integer(ink: &IntegerInk, delta: f64) -> Self {
        InkDocument {
            grid: true,
            delta: Some(delta),
            origin: None,
            strokes: ink
                .strokes()
                .iter()
                .map(|s| s.iter().map(|p| [p.x as f64, p.y as f64]).collect())
                .collect(),
        }
    }

    pub fn with_origin(mut self, origin: Option<GridPoint>) -> Self {
        self.origin = origin;
        self
    }

    pub fn with_delta(mut self, delta: Option<f64>) -> Self {
        self.delta = delta;
        self
    }

    /// Strokes as a raw ink; grid documents are returned in grid units.
    pub fn to_raw(&self) -> Result<RawInk> {
        RawInk::new(
            self.strokes
                .iter()
                .map(|s| s.iter().map(|&[x, y]| Point::new(x, y)).collect())
                .collect(),
        )
    }

    /// Strokes as grid cells; every coordinate must be an integer in range.
    pub fn to_integer(&self) -> Result<IntegerInk> {
        let strokes = self
            .strokes
            .iter()
            .enumerate()
            .map(|(j, s)| {
                s.iter()
                    .enumerate()
                    .map(|(i, &[x, y])| {
                        let cell = |v: f64| {
                            (v.fract() == 0.0 && v >= i32::MIN as f64 && v <= i32::MAX as f64).then_some(v as i32)
                        };
                        match (cell(x), cell(y)) {
                            (Some(x), Some(y)) => Ok(GridPoint::new(x, y)),
                            _ => Err(Error::parse(
                                Location::Field(format!("strokes[{j}][{i}]")),
                                format!("[{x}, {y}] is not a 32-bit grid cell"),
                            )),
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerInk::new(strokes)
    }

    pub fn to_json_string(&self) -> String {
        let num = |v: f64| {
            if self.grid {
                format!("{}", v as i64)
            } else {
                fmt_f64(v)
            }
        };
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format\": \"{INK_FORMAT_TAG}\",");
        let _ = writeln!(out, "  \"version\": {INK_FORMAT_VERSION},");
        let _ = writeln!(out, "  \"grid\": {},", self.grid);
        if let Some(d) = self.delta {
            let _ = writeln!(out, "  \"delta\": {},", fmt_f64(d));
        }
        if let Some(o) = self.origin {
            let _ = writeln!(out, "  \"origin\": [{}, {}],", o.x, o.y);
        }
        if self.strokes.is_empty() {
            out.push_str("  \"strokes\": []\n}\n");
            return out;
        }
        out.push_str("  \"strokes\": [\n");
        for (j, s) in self.strokes.iter().enumerate() {
            let pts: Vec<String> = s.iter().map(|&[x, y]| format!("[{}, {}]", num(x), num(y))).collect();
            let sep = if j + 1 == self.strokes.len() { "" } else { "," };
            let _ = writeln!(out, "    [{}]{sep}", pts.join(", "));
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: InkFile = serde_json::from_str(text).map_err(|e| Error::parse(Location::from(&e), e.to_string()))?;
        let field = |f: String| Location::Field(f);
        if raw.format != INK_FORMAT_TAG {
            return Err(Error::parse(
                field("format".into()),
                format!("expected {INK_FORMAT_TAG:?}, found {:?}", raw.format),
            ));
        }
        if raw.version != INK_FORMAT_VERSION {
            return Err(Error::parse(
                field("version".into()),
                format!("unsupported version {}", raw.version),
            ));
        }
        if let Some(d) = raw.delta {
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::parse(
                    field("delta".into()),
                    format!("grid spacing {d} must be positive"),
                ));
            }
        }
        if raw.grid && raw.delta.is_none() {
            return Err(Error::parse(field("delta".into()), "grid documents must record delta"));
        }
        if let Some(j) = raw.strokes.iter().position(Vec::is_empty) {
            return Err(Error::parse(field(format!("strokes[{j}]")), "stroke has no points"));
        }
        let doc = InkDocument {
            grid: raw.grid,
            delta: raw.delta,
            origin: raw.origin.map(|[x, y]| GridPoint::new(x, y)),
            strokes: raw.strokes,
        };
        if doc.grid {
            doc.to_integer()?;
        }
        Ok(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

/// Reads a raw ink document.
pub fn read_ink(path: impl AsRef<Path>) -> Result<RawInk> {
    InkDocument::read(path)?.to_raw()
}

/// Writes a raw ink document without sidecar metadata.
pub fn write_ink(ink: &RawInk, path: impl AsRef<Path>) -> Result<()> {
    InkDocument::from_raw(ink).write(path)
}

// ------------------------------------------------------------ token files

pub const TOKEN_FORMAT_TAG: &str = "inktok-tokens";

/// Token sequences plus the metadata needed to decode them.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenFile {
    pub representation: Representation,
    pub delta: f64,
    /// Fingerprint of the vocabulary the ids belong to; `None` for base ids.
    pub vocab: Option<String>,
    pub origin: Option<GridPoint>,
    pub sequences: Vec<Vec<TokenId>>,
}

impl TokenFile {
    pub fn to_text(&self) -> String {
        let origin = self
            .origin
            .map_or_else(|| "none".to_owned(), |o| format!("{},{}", o.x, o.y));
        let mut out = format!(
            "# {TOKEN_FORMAT_TAG} version=1 representation={} delta={} vocab={} origin={origin}\n",
            self.representation,
            self.delta,
            self.vocab.as_deref().unwrap_or("none"),
        );
        for seq in &self.sequences {
            let line: Vec<String> = seq.iter().map(TokenId::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let at = |line: usize, column: usize| Location::Position { line, column };
        let header = lines
            .next()
            .ok_or_else(|| Error::parse(at(1, 1), "missing header line"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("#") || fields.next() != Some(TOKEN_FORMAT_TAG) {
            return Err(Error::parse(
                at(1, 1),
                format!("header must start with \"# {TOKEN_FORMAT_TAG}\""),
            ));
        }
        let (mut representation, mut delta, mut vocab, mut origin, mut version) = (None, None, None, None, None);
        for kv in fields {
            let column = header.find(kv).map_or(1, |c| c + 1);
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(at(1, column), format!("expected key=value, found {kv:?}")))?;
            let bad = |msg: String| Error::parse(at(1, column), msg);
            match k {
                "version" => version = Some(v.to_owned()),
                "representation" => representation = Some(v.parse::<Representation>().map_err(bad)?),
                "delta" => {
                    let d: f64 = v.parse().map_err(|e| bad(format!("bad delta {v:?}: {e}")))?;
                    if !(d.is_finite() && d > 0.0) {
                        return Err(bad(format!("grid spacing {d} must be positive")));
                    }
                    delta = Some(d);
                }
                "vocab" => vocab = Some((v != "none").then(|| v.to_owned())),
                "origin" => {
                    origin = Some(if v == "none" {
                        None
                    } else {
                        let (x, y) = v
                            .split_once(',')
                            .ok_or_else(|| bad(format!("origin must be x,y, found {v:?}")))?;
                        let parse = |s: &str| s.parse::<i32>().map_err(|e| bad(format!("bad origin {v:?}: {e}")));
                        Some(GridPoint::new(parse(x)?, parse(y)?))
                    })
                }
                _ => return Err(bad(format!("unknown header field {k:?}"))),
            }
        }
        if version.as_deref() != Some("1") {
            return Err(Error::parse(at(1, 1), "missing or unsupported version"));
        }
        let missing = |f: &str| Error::parse(at(1, 1), format!("header is missing {f}"));
        let representation = representation.ok_or_else(|| missing("representation"))?;
        let delta = delta.ok_or_else(|| missing("delta"))?;
        let sequences = lines
            .enumerate()
            .map(|(n, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<TokenId>().map_err(|e| {
                            let column = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
                            Error::parse(at(n + 2, column), format!("bad token id {tok:?}: {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TokenFile {
            representation,
            delta,
            vocab: vocab.flatten(),
            origin: origin.flatten(),
            sequences,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

// -------------------------------------------------------------- IAM-OnDB

/// How [`import_iamondb`] treats malformed strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImportMode {
    /// Any malformed stroke fails the import.
    #[default]
    Strict,
    /// Malformed strokes are skipped and counted.
    Lenient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportReport {
    pub ink: RawInk,
    pub skipped_strokes: usize,
}

/// Imports a `WhiteboardCaptureSession` document: one stroke per `Stroke`
/// element, points from `Point` children's `x` / `y` attributes with y
/// negated into the library's y-up frame. Timestamps are ignored.
pub fn import_iamondb(xml: &str, mode: ImportMode) -> Result<ImportReport> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| {
        let p = e.pos();
        Error::parse(
            Location::Position {
                line: p.row as usize,
                column: p.col as usize,
            },
            e.to_string(),
        )
    })?;
    let locate = |node: roxmltree::Node| {
        let p = doc.text_pos_at(node.range().start);
        Location::Position {
            line: p.row as usize,
            column: p.col as usize,
        }
    };
    let mut strokes = Vec::new();
    let mut skipped = 0;
    for stroke in doc.descendants().filter(|n| n.has_tag_name("Stroke")) {
        let parsed: Result<Vec<Point>> = (|| {
            let mut pts = Vec::new();
            for point in stroke.children().filter(|n| n.has_tag_name("Point")) {
                let coord = |name: &str| -> Result<f64> {
                    let raw = point
                        .attribute(name)
                        .ok_or_else(|| Error::parse(locate(point), format!("Point is missing attribute {name:?}")))?;
                    raw.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                        Error::parse(locate(point), format!("attribute {name:?} is not a number: {raw:?}"))
                    })
                };
                pts.push(Point::new(coord("x")?, -coord("y")?));
            }
            if pts.is_empty() {
                return Err(Error::parse(locate(stroke), "Stroke has no Point elements"));
            }
            Ok(pts)
        })();
        match (parsed, mode) {
            (Ok(pts), _) => strokes.push(pts),
            (Err(_), ImportMode::Lenient) => skipped += 1,
            (Err(e), ImportMode::Strict) => return Err(e),
        }
    }
    if strokes.is_empty() {
        return Err(Error::EmptyInk("document contains no usable Stroke elements".into()));
    }
    Ok(ImportReport {
        ink: RawInk::new(strokes)?,
        skipped_strokes: skipped,
    })
}
