//! Ink data types and grid quantization.
//!
//! A [`RawInk`] holds strokes of continuous points in input units; a
//! [`IntegerInk`] holds the same strokes snapped to a uniform grid. Both
//! use a y-up coordinate system. Importers flip device coordinates at the
//! boundary.

use std::fmt;

use crate::error::{Error, Result};

/// A continuous point in input units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// A grid cell of an integer ink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GridPoint {
    pub x: i32,
    pub y: i32,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Component-wise translation, failing on 32-bit overflow.
    pub fn checked_offset(self, dx: i64, dy: i64) -> Option<GridPoint> {
        let x = i32::try_from(self.x as i64 + dx).ok()?;
        let y = i32::try_from(self.y as i64 + dy).ok()?;
        Some(GridPoint { x, y })
    }

    /// Component-wise translation clamped to the 32-bit range.
    pub(crate) fn saturating_offset(self, dx: i64, dy: i64) -> GridPoint {
        let clamp = |v: i64| v.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        GridPoint {
            x: clamp((self.x as i64).saturating_add(dx)),
            y: clamp((self.y as i64).saturating_add(dy)),
        }
    }
}

impl From<(i32, i32)> for GridPoint {
    fn from((x, y): (i32, i32)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Ordered strokes of continuous points.
///
/// Every stroke holds at least one point and every coordinate is finite.
/// An ink with zero strokes is valid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawInk {
    strokes: Vec<Vec<Point>>,
}

impl RawInk {
    pub fn new(strokes: Vec<Vec<Point>>) -> Result<Self> {
        for (j, stroke) in strokes.iter().enumerate() {
            if stroke.is_empty() {
                return Err(Error::InvalidInk(format!("stroke {j} has no points")));
            }
            if let Some(i) = stroke.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
                return Err(Error::InvalidInk(format!(
                    "stroke {j} point {i} has a non-finite coordinate"
                )));
            }
        }
        Ok(Self { strokes })
    }

    /// Builds an ink from `(x, y)` tuples.
    pub fn from_tuples<S>(strokes: S) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: IntoIterator<Item = (f64, f64)>,
    {
        Self::new(
            strokes
                .into_iter()
                .map(|s| s.into_iter().map(Point::from).collect())
                .collect(),
        )
    }

    pub fn strokes(&self) -> &[Vec<Point>] {
        &self.strokes
    }

    pub fn into_strokes(self) -> Vec<Vec<Point>> {
        self.strokes
    }

    pub fn is_empty(&self) -> bool {
        self.strokes.is_empty()
    }

    pub fn num_points(&self) -> usize {
        self.strokes.iter().map(Vec::len).sum()
    }
}

/// Ordered strokes of grid cells; the domain of every tokenizer.
///
/// Every stroke holds at least one point. Consecutive duplicates are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerInk {
    strokes: Vec<Vec<GridPoint>>,
}

impl IntegerInk {
    pub fn new(strokes: Vec<Vec<GridPoint>>) -> Result<Self> {
        if let Some(j) = strokes.iter().position(Vec::is_empty) {
            return Err(Error::InvalidInk(format!("stroke {j} has no points")));
        }
        Ok(Self { strokes })
    }

    /// Builds an ink from `(x, y)` tuples.
    pub fn from_tuples<S>(strokes: S) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: IntoIterator<Item = (i32, i32)>,
    {
        Self::new(
            strokes
                .into_iter()
                .map(|s| s.into_iter().map(GridPoint::from).collect())
                .collect(),
        )
    }

    /// Constructor for decoders that only ever build non-empty strokes.
    pub(crate) fn from_strokes_unchecked(strokes: Vec<Vec<GridPoint>>) -> Self {
        debug_assert!(strokes.iter().all(|s| !s.is_empty()));
        Self { strokes }
    }

    pub fn strokes(&self) -> &[Vec<GridPoint>] {
        &self.strokes
    }

    pub fn into_strokes(self) -> Vec<Vec<GridPoint>> {
        self.strokes
    }

    pub fn is_empty(&self) -> bool {
        self.strokes.is_empty()
    }

    pub fn num_points(&self) -> usize {
        self.strokes.iter().map(Vec::len).sum()
    }

    /// First point of the first stroke.
    pub fn first_point(&self) -> Option<GridPoint> {
        self.strokes.first().map(|s| s[0])
    }

    /// All points in drawing order, ignoring stroke boundaries.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.strokes.iter().flatten().copied()
    }

    /// Translates every point, failing on 32-bit overflow.
    pub fn translated(&self, dx: i64, dy: i64) -> Result<IntegerInk> {
        let strokes = self
            .strokes
            .iter()
            .map(|s| {
                s.iter()
                    .map(|p| {
                        p.checked_offset(dx, dy)
                            .ok_or_else(|| Error::Overflow(format!("translating {p} by ({dx},{dy})")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerInk { strokes })
    }
}

/// Grid spacing used to quantize continuous ink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationParams {
    delta: f64,
}

impl QuantizationParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParams(format!(
                "grid spacing must be a positive finite number, got {delta}"
            )));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Rounds `c / delta` to the nearest integer, ties away from zero.
fn quantize_coord(c: f64, delta: f64) -> Result<i32> {
    if !c.is_finite() {
        return Err(Error::InvalidInk(format!("non-finite coordinate {c}")));
    }
    let r = (c / delta).round();
    if r < i32::MIN as f64 || r > i32::MAX as f64 {
        return Err(Error::Overflow(format!(
            "coordinate {c} at spacing {delta} quantizes outside the 32-bit range"
        )));
    }
    Ok(r as i32)
}

/// Snaps every coordinate to the nearest grid point.
///
/// Stroke structure is preserved exactly, including consecutive duplicates.
pub fn quantize(ink: &RawInk, q: QuantizationParams) -> Result<IntegerInk> {
    let strokes = ink
        .strokes
        .iter()
        .map(|s| {
            s.iter()
                .map(|p| {
                    Ok(GridPoint {
                        x: quantize_coord(p.x, q.delta)?,
                        y: quantize_coord(p.y, q.delta)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerInk { strokes })
}

/// Scales grid cells back to input units.
pub fn dequantize(ink: &IntegerInk, q: QuantizationParams) -> RawInk {
    let strokes = ink
        .strokes
        .iter()
        .map(|s| {
            s.iter()
                .map(|p| Point::new(p.x as f64 * q.delta, p.y as f64 * q.delta))
                .collect()
        })
        .collect();
    RawInk { strokes }
}
