//! Digital ink tokenization.
//!
//! Inks are quantized onto an integer grid, decomposed into 8-connected
//! chain-code moves with Bresenham's algorithm, interleaved with pen
//! tokens, and compressed with byte-pair encoding. Several baseline
//! representations (Point-3, Point-5, absolute and relative coordinate
//! tokens, text) are provided for comparison.
//!
//! ```
//! use inktok::{quantize, scribe_tokenize, QuantizationParams, RawInk};
//!
//! let ink = RawInk::from_tuples([vec![(0.0, 0.0), (8.0, 0.0)]]).unwrap();
//! let grid = quantize(&ink, QuantizationParams::new(8.0).unwrap()).unwrap();
//! assert_eq!(scribe_tokenize(&grid), vec![12, 4, 13]);
//! ```

pub mod baseline;
pub mod bpe;
pub mod chain;
pub mod error;
pub mod ink;
pub mod io;
pub mod metrics;
pub mod repr;
pub mod scribe;
pub mod smooth;
pub mod svg;
pub mod vocab;

/// Vocabulary index.
pub type TokenId = u32;

pub use bpe::{bpe_decode, bpe_encode, bpe_train, BpeEncoder};
pub use chain::{bresenham, bresenham_decompose, Direction};
pub use error::{Error, Location, Result};
pub use ink::{dequantize, quantize, GridPoint, IntegerInk, Point, QuantizationParams, RawInk};
pub use metrics::{measure, measure_integer, sweep, CorpusStats, SweepConfig, SweepRow};
pub use repr::{detokenize, tokenize, train_vocab, Representation};
pub use scribe::{scribe_decode_pipeline, scribe_detokenize, scribe_tokenize, ScribeToken};
pub use smooth::{postprocess_ink, savgol_filter, PostprocessParams};
pub use vocab::Vocab;
