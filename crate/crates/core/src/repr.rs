//! Token representations and the glue between codecs, vocabularies and BPE.

use std::fmt;
use std::str::FromStr;

use crate::baseline::{
    abs_decode, abs_encode, rel_decode, rel_encode, text_decode, text_encode, CoordToken, TextToken,
};
use crate::bpe::{bpe_decode, bpe_encode, bpe_train};
use crate::error::{Error, Result};
use crate::ink::{GridPoint, IntegerInk};
use crate::scribe::{scribe_detokenize, scribe_tokenize};
use crate::vocab::{BaseMeaning, Vocab};
use crate::TokenId;

/// A token representation that can be compressed with BPE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    Scribe,
    Abs,
    Rel,
    Text,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::Scribe,
        Representation::Abs,
        Representation::Rel,
        Representation::Text,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Scribe => "scribe",
            Representation::Abs => "abs",
            Representation::Rel => "rel",
            Representation::Text => "text",
        }
    }

    /// Whether decoding needs the position of the first point.
    pub fn needs_origin(self) -> bool {
        !matches!(self, Representation::Abs)
    }

    /// The merge-free vocabulary for this representation.
    ///
    /// Coordinate representations collect every coordinate pair the corpus
    /// produces; the others have a fixed alphabet.
    pub fn base_vocab<'a>(self, delta: f64, corpus: impl IntoIterator<Item = &'a IntegerInk>) -> Result<Vocab> {
        match self {
            Representation::Scribe => Vocab::scribe(delta),
            Representation::Text => Vocab::text(delta),
            Representation::Abs | Representation::Rel => {
                let encode = if self == Representation::Abs {
                    abs_encode
                } else {
                    rel_encode
                };
                let coords = corpus.into_iter().flat_map(|ink| {
                    encode(ink).into_iter().filter_map(|t| match t {
                        CoordToken::Coord(x, y) => Some((x, y)),
                        _ => None,
                    })
                });
                Vocab::coords(self, delta, coords)
            }
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Representation::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown representation {s:?}; expected scribe, abs, rel or text"))
    }
}

fn text_id(t: TextToken) -> TokenId {
    (crate::scribe::NUM_SPECIALS + t.index()) as TokenId
}

/// Encodes `ink` into base ids of `vocab`'s representation. Coordinates
/// missing from a coordinate vocabulary become UNKNOWN.
pub fn encode_base(ink: &IntegerInk, vocab: &Vocab) -> Vec<TokenId> {
    let unknown = vocab.specials().unknown;
    let coord = |t: CoordToken| match t {
        CoordToken::Coord(x, y) => vocab.coord_id(x, y).unwrap_or(unknown),
        CoordToken::Up => vocab.id_of("UP").unwrap_or(unknown),
        CoordToken::Unknown => unknown,
    };
    match vocab.representation() {
        Representation::Scribe => scribe_tokenize(ink),
        Representation::Text => text_encode(ink).into_iter().map(text_id).collect(),
        Representation::Abs => abs_encode(ink).into_iter().map(coord).collect(),
        Representation::Rel => rel_encode(ink).into_iter().map(coord).collect(),
    }
}

/// Decodes base ids. Decoding never fails; specials and ids the
/// representation does not recognise are skipped (coordinate
/// representations read them as UNKNOWN).
pub fn decode_base(ids: &[TokenId], vocab: &Vocab, origin: GridPoint) -> IntegerInk {
    match vocab.representation() {
        Representation::Scribe => scribe_detokenize(ids, origin),
        Representation::Text => {
            let tokens: Vec<TextToken> = ids
                .iter()
                .filter_map(|&id| match vocab.meaning(id) {
                    Some(BaseMeaning::Text(t)) => Some(t),
                    _ => None,
                })
                .collect();
            text_decode(&tokens, origin)
        }
        rep @ (Representation::Abs | Representation::Rel) => {
            let tokens: Vec<CoordToken> = ids
                .iter()
                .filter_map(|&id| match vocab.meaning(id) {
                    Some(BaseMeaning::Coord(t)) => Some(t),
                    Some(BaseMeaning::Special) if id == vocab.specials().unknown => Some(CoordToken::Unknown),
                    Some(BaseMeaning::Special) => None,
                    _ => Some(CoordToken::Unknown),
                })
                .collect();
            if rep == Representation::Abs {
                abs_decode(&tokens)
            } else {
                rel_decode(&tokens, origin)
            }
        }
    }
}

/// Base encoding followed by BPE.
pub fn tokenize(ink: &IntegerInk, vocab: &Vocab) -> Result<Vec<TokenId>> {
    bpe_encode(&encode_base(ink, vocab), vocab)
}

/// BPE expansion followed by base decoding.
pub fn detokenize(ids: &[TokenId], vocab: &Vocab, origin: GridPoint) -> Result<IntegerInk> {
    Ok(decode_base(&bpe_decode(ids, vocab)?, vocab, origin))
}

/// Builds the base vocabulary from `corpus` and trains BPE up to `target_size`.
pub fn train_vocab(
    representation: Representation,
    delta: f64,
    corpus: &[IntegerInk],
    target_size: usize,
) -> Result<Vocab> {
    let base = representation.base_vocab(delta, corpus)?;
    if target_size < base.len() {
        return Err(Error::BudgetExhausted {
            base: base.len(),
            target: target_size,
        });
    }
    let sequences: Vec<Vec<TokenId>> = corpus.iter().map(|ink| encode_base(ink, &base)).collect();
    bpe_train(&base, &sequences, target_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_strokes() -> IntegerInk {
        IntegerInk::from_tuples([vec![(0, 0), (1, 0)], vec![(2, 1), (4, -1)]]).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for r in Representation::ALL {
            assert_eq!(r.as_str().parse::<Representation>(), Ok(r));
        }
        assert!("point5".parse::<Representation>().is_err());
    }

    #[test]
    fn coordinate_oov_becomes_unknown() {
        let ink = two_strokes();
        let v = Vocab::coords(Representation::Abs, 1.0, [(0, 0), (1, 0), (2, 1)]).unwrap();
        let ids = encode_base(&ink, &v);
        let names: Vec<String> = ids.iter().map(|&i| v.token_name(i).unwrap()).collect();
        assert_eq!(names, ["(0,0)", "(1,0)", "UP", "(2,1)", "UNKNOWN", "UP"]);
        let back = decode_base(&ids, &v, GridPoint::ORIGIN);
        assert_eq!(
            back,
            IntegerInk::from_tuples([vec![(0, 0), (1, 0)], vec![(2, 1)]]).unwrap()
        );
    }

    #[test]
    fn rel_unknown_is_zero_displacement() {
        let ink = two_strokes();
        let v = Vocab::coords(Representation::Rel, 1.0, [(1, 0), (2, -2)]).unwrap();
        let ids = encode_base(&ink, &v);
        assert_eq!(ids[2], v.specials().unknown);
        let back = decode_base(&ids, &v, GridPoint::ORIGIN);
        assert_eq!(
            back,
            IntegerInk::from_tuples([vec![(0, 0), (1, 0)], vec![(1, 0), (3, -2)]]).unwrap()
        );
    }

    #[test]
    fn every_representation_round_trips_with_full_vocab() {
        let ink = two_strokes();
        for r in Representation::ALL {
            let v = train_vocab(r, 1.0, std::slice::from_ref(&ink), 40).unwrap();
            let ids = tokenize(&ink, &v).unwrap();
            let back = detokenize(&ids, &v, GridPoint::ORIGIN).unwrap();
            if r == Representation::Scribe {
                assert_eq!(back.points().count(), 5);
            } else {
                assert_eq!(back, ink, "{r}");
            }
        }
    }

    #[test]
    fn budget_below_base_is_rejected() {
        let ink = two_strokes();
        let err = train_vocab(Representation::Abs, 1.0, &[ink], 8).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { base: 9, target: 8 }));
    }
}
