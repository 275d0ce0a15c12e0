//! Savitzky–Golay smoothing and stroke downsampling for reconstructed ink.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::ink::{Point, RawInk};

/// Post-processing parameters: downsample every stroke, then smooth it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PostprocessParams {
    /// Savitzky–Golay window length; odd.
    pub window: usize,
    /// Fitted polynomial degree; below `window`.
    pub polyorder: usize,
    /// Keep every `downsample`-th point; at least 1.
    pub downsample: usize,
}

impl Default for PostprocessParams {
    fn default() -> Self {
        Self {
            window: 7,
            polyorder: 3,
            downsample: 2,
        }
    }
}

impl PostprocessParams {
    pub fn new(window: usize, polyorder: usize, downsample: usize) -> Result<Self> {
        let p = Self {
            window,
            polyorder,
            downsample,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        validate_window(self.window, self.polyorder)?;
        if self.downsample == 0 {
            return Err(Error::InvalidParams("downsample factor must be at least 1".into()));
        }
        Ok(())
    }
}

fn validate_window(window: usize, polyorder: usize) -> Result<()> {
    if window.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("window {window} must be odd")));
    }
    if polyorder >= window {
        return Err(Error::InvalidParams(format!(
            "polynomial order {polyorder} must be below the window {window}"
        )));
    }
    Ok(())
}

/// Precomputed Savitzky–Golay projection for one `(window, polyorder)`.
///
/// Row `t` of `weights` evaluates the least-squares polynomial fitted to a
/// full window at window position `t`. The centre row smooths interior
/// samples; the other rows extrapolate the first and last windows to the
/// edges.
#[derive(Debug, Clone)]
pub struct SavGolFilter {
    window: usize,
    weights: Vec<f64>,
}

impl SavGolFilter {
    pub fn new(window: usize, polyorder: usize) -> Result<Self> {
        validate_window(window, polyorder)?;
        let half = window / 2;
        let scale = half.max(1) as f64;
        let vander = DMatrix::from_fn(window, polyorder + 1, |r, c| {
            ((r as f64 - half as f64) / scale).powi(c as i32)
        });
        // The hat matrix Q Q^T projects onto the column space of the design.
        let q = vander.qr().q();
        let hat = &q * q.transpose();
        let weights = (0..window)
            .flat_map(|r| (0..window).map(move |c| (r, c)))
            .map(|(r, c)| hat[(r, c)])
            .collect();
        Ok(Self { window, weights })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Weights producing the fitted value at window position `t`.
    pub fn row(&self, t: usize) -> &[f64] {
        &self.weights[t * self.window..(t + 1) * self.window]
    }

    /// Filters `values`; sequences shorter than the window are returned as is.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        let n = values.len();
        let w = self.window;
        if n < w {
            return values.to_vec();
        }
        let half = w / 2;
        let dot = |t: usize, start: usize| -> f64 {
            self.row(t)
                .iter()
                .zip(&values[start..start + w])
                .map(|(c, v)| c * v)
                .sum()
        };
        let mut out = Vec::with_capacity(n);
        out.extend((0..half).map(|i| dot(i, 0)));
        out.extend((half..n - half).map(|i| dot(half, i - half)));
        out.extend((n - half..n).map(|i| dot(i - (n - w), n - w)));
        out
    }
}

/// One-shot Savitzky–Golay filter.
pub fn savgol_filter(values: &[f64], window: usize, polyorder: usize) -> Result<Vec<f64>> {
    Ok(SavGolFilter::new(window, polyorder)?.apply(values))
}

/// Keeps every `d`-th point plus the last one.
///
/// Strokes of two points or fewer come back unchanged; `d == 0` is treated
/// as 1.
pub fn downsample_stroke<T: Copy>(stroke: &[T], d: usize) -> Vec<T> {
    if stroke.len() <= 2 || d <= 1 {
        return stroke.to_vec();
    }
    let last = stroke.len() - 1;
    let mut out: Vec<T> = stroke.iter().step_by(d).copied().collect();
    if !last.is_multiple_of(d) {
        out.push(stroke[last]);
    }
    out
}

/// Downsamples each stroke, then smooths its x and y sequences independently.
pub fn postprocess_ink(ink: &RawInk, params: &PostprocessParams) -> Result<RawInk> {
    params.validate()?;
    let filter = SavGolFilter::new(params.window, params.polyorder)?;
    let strokes = ink
        .strokes()
        .iter()
        .map(|s| {
            let kept = downsample_stroke(s, params.downsample);
            let xs: Vec<f64> = kept.iter().map(|p| p.x).collect();
            let ys: Vec<f64> = kept.iter().map(|p| p.y).collect();
            filter
                .apply(&xs)
                .into_iter()
                .zip(filter.apply(&ys))
                .map(|(x, y)| Point::new(x, y))
                .collect()
        })
        .collect();
    RawInk::new(strokes)
}
