//! Deterministic SVG rendering of inks and scribe token sequences.

use std::fmt::Write as _;

use crate::bpe::bpe_decode;
use crate::chain::step;
use crate::error::{Error, Result};
use crate::ink::{GridPoint, IntegerInk, RawInk};
use crate::repr::Representation;
use crate::scribe::{scribe_detokenize, scribe_tokenize, ScribeToken};
use crate::vocab::Vocab;
use crate::TokenId;

const PAD: f64 = 4.0;
const STROKE_WIDTH: f64 = 1.5;
const AIR_OPACITY: f64 = 0.25;

struct Canvas {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new<I: IntoIterator<Item = (f64, f64)>>(points: I) -> Self {
        let (mut min_x, mut min_y, mut max_x, mut max_y) =
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        if !min_x.is_finite() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 0.0, 0.0);
        }
        Canvas {
            min_x: min_x - PAD,
            max_y: max_y + PAD,
            width: max_x - min_x + 2.0 * PAD,
            height: max_y - min_y + 2.0 * PAD,
            body: String::new(),
        }
    }

    /// y-up ink coordinates to y-down SVG coordinates.
    fn xy(&self, x: f64, y: f64) -> String {
        format!("{} {}", x - self.min_x, self.max_y - y)
    }

    fn path(&mut self, d: &str, colour: &str, opacity: Option<f64>) {
        let _ = write!(self.body, "  <path d=\"{d}\" stroke=\"{colour}\"");
        if let Some(o) = opacity {
            let _ = write!(self.body, " stroke-opacity=\"{o}\"");
        }
        self.body.push_str("/>\n");
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <g fill=\"none\" stroke-width=\"{STROKE_WIDTH}\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n\
             {body}</g>\n</svg>\n",
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

fn polyline(c: &Canvas, pts: &[(f64, f64)]) -> String {
    let mut d = format!("M{}", c.xy(pts[0].0, pts[0].1));
    if pts.len() == 1 {
        d.push_str(" Z");
    }
    for &(x, y) in &pts[1..] {
        let _ = write!(d, " L{}", c.xy(x, y));
    }
    d
}

/// One black path per stroke.
pub fn render_svg(ink: &RawInk) -> String {
    let mut c = Canvas::new(ink.strokes().iter().flatten().map(|p| (p.x, p.y)));
    for stroke in ink.strokes() {
        let pts: Vec<(f64, f64)> = stroke.iter().map(|p| (p.x, p.y)).collect();
        let d = polyline(&c, &pts);
        c.path(&d, "black", None);
    }
    c.finish()
}

/// Stable colour for a token id.
pub fn token_colour(id: TokenId) -> String {
    let h = id.wrapping_mul(2_654_435_761) >> 8;
    format!("hsl({},{}%,{}%)", h % 360, 55 + (h / 360) % 30, 35 + (h / 10_800) % 20)
}

/// Renders `ink` (grid cells scaled by the vocabulary's delta) with one path
/// per BPE token of `ids`, each coloured by its id. Moves made with the pen
/// up are drawn faintly. `ids` must be a scribe encoding of `ink`.
pub fn render_token_svg(ink: &IntegerInk, ids: &[TokenId], vocab: &Vocab) -> Result<String> {
    if vocab.representation() != Representation::Scribe {
        return Err(Error::ConfigMismatch(format!(
            "token colouring needs a scribe vocabulary, got {}",
            vocab.representation()
        )));
    }
    let base = bpe_decode(ids, vocab)?;
    let origin = ink.first_point().unwrap_or(GridPoint::ORIGIN);
    if scribe_detokenize(&base, origin) != scribe_detokenize(&scribe_tokenize(ink), origin) {
        return Err(Error::ConfigMismatch("token sequence does not encode this ink".into()));
    }
    let delta = vocab.delta();
    let scale = |p: GridPoint| (p.x as f64 * delta, p.y as f64 * delta);
    let mut c = Canvas::new(ink.points().map(scale));
    let mut pos = origin;
    let mut down = false;
    for &id in ids {
        let expansion = vocab.expansion(id).unwrap_or(&[]);
        let (mut ink_d, mut air_d) = (String::new(), String::new());
        for &b in expansion {
            match ScribeToken::from_id(b) {
                Some(ScribeToken::Down) => down = true,
                Some(ScribeToken::Up) => down = false,
                Some(ScribeToken::Move(dir)) => {
                    let next = step(pos, dir).unwrap_or(pos);
                    let (x0, y0) = scale(pos);
                    let (x1, y1) = scale(next);
                    let d = if down { &mut ink_d } else { &mut air_d };
                    let _ = write!(
                        d,
                        "{}M{} L{}",
                        if d.is_empty() { "" } else { " " },
                        c.xy(x0, y0),
                        c.xy(x1, y1)
                    );
                    pos = next;
                }
                None => {}
            }
        }
        let colour = token_colour(id);
        if !ink_d.is_empty() {
            c.path(&ink_d, &colour, None);
        }
        if !air_d.is_empty() {
            c.path(&air_d, &colour, Some(AIR_OPACITY));
        }
    }
    Ok(c.finish())
}
