//! ScribeTokens: eight direction tokens plus DOWN and UP.
//!
//! Tokenization walks each stroke, emitting DOWN, the Bresenham steps between
//! consecutive points, UP, and then the pen-in-air steps to the next stroke.
//! Absolute position is not encoded, so detokenization takes an origin.
//!
//! Detokenization is a total state machine: any id sequence decodes to a
//! valid [`IntegerInk`].

use std::fmt;
use std::str::FromStr;

use crate::chain::{bresenham, Direction};
use crate::error::Result;
use crate::ink::{dequantize, GridPoint, IntegerInk, QuantizationParams, RawInk};
use crate::smooth::{postprocess_ink, PostprocessParams};
use crate::TokenId;

pub const PAD: TokenId = 0;
pub const START: TokenId = 1;
pub const END: TokenId = 2;
pub const UNKNOWN: TokenId = 3;

/// Number of reserved special ids preceding the content tokens.
pub const NUM_SPECIALS: usize = 4;

/// Names of the reserved specials, in id order.
pub const SPECIAL_NAMES: [&str; NUM_SPECIALS] = ["PAD", "START", "END", "UNKNOWN"];

/// A base ScribeTokens content token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScribeToken {
    Move(Direction),
    Down,
    Up,
}

impl ScribeToken {
    pub const DOWN_ID: TokenId = 12;
    pub const UP_ID: TokenId = 13;

    /// All content tokens in id order.
    pub const ALL: [ScribeToken; 10] = [
        ScribeToken::Move(Direction::E),
        ScribeToken::Move(Direction::NE),
        ScribeToken::Move(Direction::N),
        ScribeToken::Move(Direction::NW),
        ScribeToken::Move(Direction::W),
        ScribeToken::Move(Direction::SW),
        ScribeToken::Move(Direction::S),
        ScribeToken::Move(Direction::SE),
        ScribeToken::Down,
        ScribeToken::Up,
    ];

    #[inline]
    pub const fn id(self) -> TokenId {
        match self {
            ScribeToken::Move(d) => NUM_SPECIALS as TokenId + d.code() as TokenId,
            ScribeToken::Down => Self::DOWN_ID,
            ScribeToken::Up => Self::UP_ID,
        }
    }

    #[inline]
    pub fn from_id(id: TokenId) -> Option<ScribeToken> {
        match id {
            4..=11 => Direction::from_code((id - 4) as u8).map(ScribeToken::Move),
            Self::DOWN_ID => Some(ScribeToken::Down),
            Self::UP_ID => Some(ScribeToken::Up),
            _ => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ScribeToken::Move(d) => d.name(),
            ScribeToken::Down => "DOWN",
            ScribeToken::Up => "UP",
        }
    }

    pub const fn is_pen(self) -> bool {
        matches!(self, ScribeToken::Down | ScribeToken::Up)
    }
}

impl fmt::Display for ScribeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScribeToken {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "DOWN" => Ok(ScribeToken::Down),
            "UP" => Ok(ScribeToken::Up),
            _ => s.parse::<Direction>().map(ScribeToken::Move),
        }
    }
}

/// Names of the full base vocabulary (specials then content tokens) in id order.
pub fn base_token_names() -> Vec<String> {
    SPECIAL_NAMES
        .iter()
        .copied()
        .chain(ScribeToken::ALL.iter().map(|t| t.name()))
        .map(str::to_owned)
        .collect()
}

const fn move_id(d: Direction) -> TokenId {
    ScribeToken::Move(d).id()
}

#[inline]
fn push_segment(out: &mut Vec<TokenId>, p: GridPoint, q: GridPoint) {
    out.extend(bresenham(p, q).map(move_id));
}

/// Appends the ScribeTokens encoding of `ink` to `out`.
pub fn scribe_tokenize_into(ink: &IntegerInk, out: &mut Vec<TokenId>) {
    let strokes = ink.strokes();
    for (j, stroke) in strokes.iter().enumerate() {
        out.push(ScribeToken::DOWN_ID);
        for pair in stroke.windows(2) {
            push_segment(out, pair[0], pair[1]);
        }
        out.push(ScribeToken::UP_ID);
        if let Some(next) = strokes.get(j + 1) {
            push_segment(out, stroke[stroke.len() - 1], next[0]);
        }
    }
}

/// Encodes an integer ink as base ScribeTokens ids.
pub fn scribe_tokenize(ink: &IntegerInk) -> Vec<TokenId> {
    let mut out = Vec::with_capacity(2 * ink.num_points() + 2 * ink.strokes().len());
    scribe_tokenize_into(ink, &mut out);
    out
}

/// Decodes base ScribeTokens ids starting from `origin`.
///
/// The pen starts up. DOWN opens a stroke at the current position, UP
/// closes it, and redundant DOWN/UP are ignored. A direction moves one
/// unit and extends the open stroke, if any. Specials and ids outside the
/// base alphabet are skipped, and an open stroke is closed at the end.
/// Positions saturate at the 32-bit range.
pub fn scribe_detokenize(tokens: &[TokenId], origin: GridPoint) -> IntegerInk {
    let mut strokes: Vec<Vec<GridPoint>> = Vec::new();
    let mut open: Option<Vec<GridPoint>> = None;
    let mut pos = origin;
    for &id in tokens {
        match ScribeToken::from_id(id) {
            Some(ScribeToken::Down) => {
                if open.is_none() {
                    open = Some(vec![pos]);
                }
            }
            Some(ScribeToken::Up) => {
                if let Some(stroke) = open.take() {
                    strokes.push(stroke);
                }
            }
            Some(ScribeToken::Move(d)) => {
                let (dx, dy) = d.delta();
                pos = pos.saturating_offset(dx as i64, dy as i64);
                if let Some(stroke) = open.as_mut() {
                    stroke.push(pos);
                }
            }
            None => {}
        }
    }
    strokes.extend(open);
    IntegerInk::from_strokes_unchecked(strokes)
}

/// Detokenizes, rescales and post-processes base ScribeTokens into raw ink.
pub fn scribe_decode_pipeline(
    tokens: &[TokenId],
    origin: GridPoint,
    q: QuantizationParams,
    post: &PostprocessParams,
) -> Result<RawInk> {
    let ink = scribe_detokenize(tokens, origin);
    postprocess_ink(&dequantize(&ink, q), post)
}

/// Renders ids as whitespace-separated token names.
///
/// Ids outside the base alphabet render as `#<id>`.
pub fn render_tokens(tokens: &[TokenId]) -> String {
    tokens
        .iter()
        .map(|&id| match ScribeToken::from_id(id) {
            Some(t) => t.name().to_owned(),
            None => SPECIAL_NAMES
                .get(id as usize)
                .map(|s| (*s).to_owned())
                .unwrap_or_else(|| format!("#{id}")),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses whitespace-separated token names into ids.
pub fn parse_tokens(text: &str) -> std::result::Result<Vec<TokenId>, String> {
    text.split_whitespace()
        .map(|name| {
            if let Ok(t) = name.parse::<ScribeToken>() {
                return Ok(t.id());
            }
            SPECIAL_NAMES
                .iter()
                .position(|s| *s == name)
                .map(|i| i as TokenId)
                .ok_or_else(|| format!("unknown token name {name:?}"))
        })
        .collect()
}
