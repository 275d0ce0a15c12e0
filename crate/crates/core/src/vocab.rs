//! BPE vocabularies and their on-disk format.
//!
//! A [`Vocab`] is a list of base tokens with fixed ids (the four specials
//! first), followed by an ordered list of merges. Merge `r` creates token
//! `base_len + r`. Specials and the pen-state tokens `UP` / `DOWN` never take
//! part in a merge.
//!
//! # File format
//!
//! A UTF-8 JSON document with one base token and one merge per line:
//!
//! ```text
//! {
//!   "format": "inktok-vocab",
//!   "version": 1,
//!   "representation": "scribe",
//!   "delta": 8.0,
//!   "specials": {"PAD": 0, "START": 1, "END": 2, "UNKNOWN": 3},
//!   "base_tokens": [
//!     "PAD",
//!     ...
//!   ],
//!   "merges": [
//!     [4, 4],
//!     ...
//!   ]
//! }
//! ```
//!
//! `representation` is one of `scribe`, `abs`, `rel`, `text`. Writing is
//! byte-deterministic.

use std::fmt::Write as _;
use std::path::Path;

use rustc_hash::FxHashMap;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::baseline::{CoordToken, TextToken};
use crate::error::{Error, Location, Result};
use crate::repr::Representation;
use crate::scribe::{self, NUM_SPECIALS, SPECIAL_NAMES};
use crate::TokenId;

pub const FORMAT_TAG: &str = "inktok-vocab";
pub const FORMAT_VERSION: u32 = 1;

const PEN_TOKENS: [&str; 2] = ["UP", "DOWN"];

/// Ids of the reserved special tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Specials {
    pub pad: TokenId,
    pub start: TokenId,
    pub end: TokenId,
    pub unknown: TokenId,
}

impl Default for Specials {
    fn default() -> Self {
        Self {
            pad: scribe::PAD,
            start: scribe::START,
            end: scribe::END,
            unknown: scribe::UNKNOWN,
        }
    }
}

/// What a base id means for the representation-specific decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BaseMeaning {
    Special,
    Scribe,
    Coord(CoordToken),
    Text(TextToken),
}

#[derive(Debug, Clone)]
pub struct Vocab {
    representation: Representation,
    delta: f64,
    base_tokens: Vec<String>,
    specials: Specials,
    merges: Vec<(TokenId, TokenId)>,
    mergeable: Vec<bool>,
    meanings: Vec<BaseMeaning>,
    by_name: FxHashMap<String, TokenId>,
    by_coord: FxHashMap<(i64, i64), TokenId>,
    merge_rank: FxHashMap<(TokenId, TokenId), u32>,
    expansion_offsets: Vec<usize>,
    expansions: Vec<TokenId>,
}

impl PartialEq for Vocab {
    fn eq(&self, other: &Self) -> bool {
        self.representation == other.representation
            && self.delta.to_bits() == other.delta.to_bits()
            && self.base_tokens == other.base_tokens
            && self.specials == other.specials
            && self.merges == other.merges
    }
}

impl Vocab {
    /// A merge-free vocabulary over `base_tokens`, which must start with the
    /// four specials and contain no duplicates.
    pub fn from_base(representation: Representation, delta: f64, base_tokens: Vec<String>) -> Result<Vocab> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParams(format!("grid spacing {delta} must be positive")));
        }
        if base_tokens.len() < NUM_SPECIALS || base_tokens[..NUM_SPECIALS] != SPECIAL_NAMES.map(str::to_owned) {
            return Err(Error::InvalidParams(format!(
                "base tokens must start with {SPECIAL_NAMES:?}"
            )));
        }
        let mut by_name = FxHashMap::default();
        for (id, name) in base_tokens.iter().enumerate() {
            if by_name.insert(name.clone(), id as TokenId).is_some() {
                return Err(Error::InvalidParams(format!("duplicate base token {name:?}")));
            }
        }
        let mut meanings = Vec::with_capacity(base_tokens.len());
        let mut by_coord = FxHashMap::default();
        for (id, name) in base_tokens.iter().enumerate() {
            let meaning = if id < NUM_SPECIALS {
                BaseMeaning::Special
            } else {
                match representation {
                    Representation::Scribe => match name.parse::<scribe::ScribeToken>() {
                        Ok(t) if t.id() as usize == id => BaseMeaning::Scribe,
                        _ => {
                            return Err(Error::InvalidParams(format!(
                                "base token {id} {name:?} is not the canonical ScribeTokens entry"
                            )))
                        }
                    },
                    Representation::Text => match TextToken::from_name(name) {
                        Some(t) => BaseMeaning::Text(t),
                        None => return Err(Error::InvalidParams(format!("{name:?} is not a TextTokens token"))),
                    },
                    Representation::Abs | Representation::Rel => {
                        let t = name.parse::<CoordToken>().map_err(Error::InvalidParams)?;
                        match t {
                            CoordToken::Coord(x, y) => {
                                by_coord.insert((x, y), id as TokenId);
                            }
                            CoordToken::Unknown => {
                                return Err(Error::InvalidParams("UNKNOWN may only appear as a special".into()))
                            }
                            CoordToken::Up => {}
                        }
                        BaseMeaning::Coord(t)
                    }
                }
            };
            meanings.push(meaning);
        }
        if representation == Representation::Scribe && base_tokens.len() != scribe::base_token_names().len() {
            return Err(Error::InvalidParams(
                "ScribeTokens vocabularies have exactly 14 base tokens".into(),
            ));
        }
        let mergeable = base_tokens
            .iter()
            .enumerate()
            .map(|(id, name)| id >= NUM_SPECIALS && !PEN_TOKENS.contains(&name.as_str()))
            .collect();
        let expansions: Vec<TokenId> = (0..base_tokens.len() as TokenId).collect();
        let expansion_offsets = (0..=base_tokens.len()).collect();
        Ok(Vocab {
            representation,
            delta,
            base_tokens,
            specials: Specials::default(),
            merges: Vec::new(),
            mergeable,
            meanings,
            by_name,
            by_coord,
            merge_rank: FxHashMap::default(),
            expansion_offsets,
            expansions,
        })
    }

    /// The fixed 14-token ScribeTokens vocabulary.
    pub fn scribe(delta: f64) -> Result<Vocab> {
        Self::from_base(Representation::Scribe, delta, scribe::base_token_names())
    }

    /// The fixed 17-token TextTokens vocabulary.
    pub fn text(delta: f64) -> Result<Vocab> {
        let names = SPECIAL_NAMES
            .iter()
            .map(|s| (*s).to_owned())
            .chain(TextToken::ALL.iter().map(|t| t.name().to_owned()))
            .collect();
        Self::from_base(Representation::Text, delta, names)
    }

    /// A coordinate vocabulary: specials, `UP`, then the given coordinates in
    /// sorted order.
    pub fn coords(
        representation: Representation,
        delta: f64,
        coords: impl IntoIterator<Item = (i64, i64)>,
    ) -> Result<Vocab> {
        if !matches!(representation, Representation::Abs | Representation::Rel) {
            return Err(Error::InvalidParams(format!(
                "{representation} does not use a coordinate vocabulary"
            )));
        }
        let mut coords: Vec<(i64, i64)> = coords.into_iter().collect();
        coords.sort_unstable();
        coords.dedup();
        let names = SPECIAL_NAMES
            .iter()
            .map(|s| (*s).to_owned())
            .chain(std::iter::once("UP".to_owned()))
            .chain(coords.iter().map(|&(x, y)| CoordToken::Coord(x, y).to_string()))
            .collect();
        Self::from_base(representation, delta, names)
    }

    /// Appends merges, validating each against the vocabulary built so far.
    pub fn with_merges(mut self, merges: &[(TokenId, TokenId)]) -> Result<Vocab> {
        for (i, &pair) in merges.iter().enumerate() {
            self.push_merge(pair)
                .map_err(|msg| Error::InvalidParams(format!("merge {i} {pair:?}: {msg}")))?;
        }
        Ok(self)
    }

    pub(crate) fn push_merge(&mut self, (a, b): (TokenId, TokenId)) -> std::result::Result<TokenId, String> {
        let len = self.len() as TokenId;
        for id in [a, b] {
            if id >= len {
                return Err(format!("references undefined id {id}"));
            }
            if !self.is_mergeable(id) {
                return Err(format!(
                    "references non-mergeable token {id} {:?}",
                    self.base_tokens.get(id as usize).map(String::as_str).unwrap_or("?")
                ));
            }
        }
        let rank = self.merges.len() as u32;
        if self.merge_rank.insert((a, b), rank).is_some() {
            return Err("duplicates an earlier merge".into());
        }
        self.merges.push((a, b));
        let (sa, ea) = self.span(a);
        let (sb, eb) = self.span(b);
        self.expansions.extend_from_within(sa..ea);
        self.expansions.extend_from_within(sb..eb);
        self.expansion_offsets.push(self.expansions.len());
        Ok(len)
    }

    fn span(&self, id: TokenId) -> (usize, usize) {
        let i = id as usize;
        (self.expansion_offsets[i], self.expansion_offsets[i + 1])
    }

    /// The same vocabulary restricted to its first `size` tokens.
    pub fn truncated(&self, size: usize) -> Result<Vocab> {
        if size < self.base_len() {
            return Err(Error::BudgetExhausted {
                base: self.base_len(),
                target: size,
            });
        }
        let keep = (size - self.base_len()).min(self.merges.len());
        self.base_only().with_merges(&self.merges[..keep])
    }

    /// The merge-free vocabulary over the same base tokens.
    pub fn base_only(&self) -> Vocab {
        let mut v = self.clone();
        v.merges.clear();
        v.merge_rank.clear();
        v.expansions.truncate(self.base_len());
        v.expansion_offsets.truncate(self.base_len() + 1);
        v
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn specials(&self) -> Specials {
        self.specials
    }

    pub fn base_tokens(&self) -> &[String] {
        &self.base_tokens
    }

    pub fn merges(&self) -> &[(TokenId, TokenId)] {
        &self.merges
    }

    pub fn base_len(&self) -> usize {
        self.base_tokens.len()
    }

    /// Total number of ids, base plus merged.
    pub fn len(&self) -> usize {
        self.base_tokens.len() + self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_base(&self, id: TokenId) -> bool {
        (id as usize) < self.base_len()
    }

    /// Whether `id` may take part in a merge. Merged tokens always can.
    pub fn is_mergeable(&self, id: TokenId) -> bool {
        match self.mergeable.get(id as usize) {
            Some(&m) => m,
            None => (id as usize) < self.len(),
        }
    }

    pub fn id_of(&self, name: &str) -> Option<TokenId> {
        self.by_name.get(name).copied()
    }

    pub(crate) fn coord_id(&self, x: i64, y: i64) -> Option<TokenId> {
        self.by_coord.get(&(x, y)).copied()
    }

    pub(crate) fn meaning(&self, id: TokenId) -> Option<BaseMeaning> {
        self.meanings.get(id as usize).copied()
    }

    #[inline]
    pub(crate) fn rank_of(&self, a: TokenId, b: TokenId) -> Option<u32> {
        self.merge_rank.get(&(a, b)).copied()
    }

    /// Base ids that `id` stands for; `None` for undefined ids.
    pub fn expansion(&self, id: TokenId) -> Option<&[TokenId]> {
        if (id as usize) < self.len() {
            let (s, e) = self.span(id);
            Some(&self.expansions[s..e])
        } else {
            None
        }
    }

    /// Display name; merged tokens join their base names with `+`.
    pub fn token_name(&self, id: TokenId) -> Option<String> {
        if let Some(name) = self.base_tokens.get(id as usize) {
            return Some(name.clone());
        }
        self.expansion(id).map(|e| {
            e.iter()
                .map(|&b| self.base_tokens[b as usize].as_str())
                .collect::<Vec<_>>()
                .join("+")
        })
    }

    /// Serializes to the documented text format.
    pub fn to_file_string(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"format\": {},", q(FORMAT_TAG));
        let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
        let _ = writeln!(out, "  \"representation\": {},", q(self.representation.as_str()));
        let _ = writeln!(
            out,
            "  \"delta\": {},",
            serde_json::to_string(&self.delta).expect("finite floats serialize")
        );
        let s = self.specials;
        let _ = writeln!(
            out,
            "  \"specials\": {{\"PAD\": {}, \"START\": {}, \"END\": {}, \"UNKNOWN\": {}}},",
            s.pad, s.start, s.end, s.unknown
        );
        out.push_str("  \"base_tokens\": [\n");
        for (i, name) in self.base_tokens.iter().enumerate() {
            let sep = if i + 1 == self.base_tokens.len() { "" } else { "," };
            let _ = writeln!(out, "    {}{sep}", q(name));
        }
        out.push_str("  ],\n");
        if self.merges.is_empty() {
            out.push_str("  \"merges\": []\n");
        } else {
            out.push_str("  \"merges\": [\n");
            for (i, (a, b)) in self.merges.iter().enumerate() {
                let sep = if i + 1 == self.merges.len() { "" } else { "," };
                let _ = writeln!(out, "    [{a}, {b}]{sep}");
            }
            out.push_str("  ]\n");
        }
        out.push_str("}\n");
        out
    }

    /// Parses the documented text format.
    pub fn from_file_str(text: &str) -> Result<Vocab> {
        let raw: VocabFile = serde_json::from_str(text).map_err(|e| Error::parse(Location::from(&e), e.to_string()))?;
        let field = |f: &str| Location::Field(f.to_owned());
        if raw.format != FORMAT_TAG {
            return Err(Error::parse(
                field("format"),
                format!("expected {FORMAT_TAG:?}, found {:?}", raw.format),
            ));
        }
        if raw.version != FORMAT_VERSION {
            return Err(Error::parse(
                field("version"),
                format!("unsupported version {}", raw.version),
            ));
        }
        let representation: Representation = raw
            .representation
            .parse()
            .map_err(|e: String| Error::parse(field("representation"), e))?;
        let want = Specials::default();
        let got = Specials {
            pad: raw.specials.pad,
            start: raw.specials.start,
            end: raw.specials.end,
            unknown: raw.specials.unknown,
        };
        if got != want {
            return Err(Error::parse(
                field("specials"),
                format!("special ids must be PAD=0, START=1, END=2, UNKNOWN=3, found {got:?}"),
            ));
        }
        let mut vocab = Vocab::from_base(representation, raw.delta, raw.base_tokens).map_err(|e| {
            let loc = if matches!(&e, Error::InvalidParams(m) if m.contains("spacing")) {
                "delta"
            } else {
                "base_tokens"
            };
            Error::parse(field(loc), e.to_string())
        })?;
        for (i, [a, b]) in raw.merges.into_iter().enumerate() {
            vocab
                .push_merge((a, b))
                .map_err(|msg| Error::parse(Location::Field(format!("merges[{i}]")), msg))?;
        }
        Ok(vocab)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Vocab> {
        Self::from_file_str(&std::fs::read_to_string(path)?)
    }

    /// Short content hash of the serialized vocabulary.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_file_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VocabFile {
    format: String,
    version: u32,
    representation: String,
    delta: f64,
    specials: SpecialsFile,
    base_tokens: Vec<String>,
    merges: Vec<[TokenId; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecialsFile {
    #[serde(rename = "PAD")]
    pad: TokenId,
    #[serde(rename = "START")]
    start: TokenId,
    #[serde(rename = "END")]
    end: TokenId,
    #[serde(rename = "UNKNOWN")]
    unknown: TokenId,
}
