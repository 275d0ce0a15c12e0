//! Compression and out-of-vocabulary measurements over a corpus.
//!
//! Two compression figures are reported side by side because they answer
//! different questions:
//!
//! * `compression_ratio_base`: base-token length divided by BPE length,
//!   with pen-state tokens counted on both sides;
//! * `points_per_token`: integer-ink point count divided by BPE length.
//!
//! `oov_rate` is the fraction of BPE tokens that are UNKNOWN.

use std::io::Write;

use serde::Serialize;

use crate::bpe::BpeEncoder;
use crate::error::{Error, Result};
use crate::ink::{quantize, IntegerInk, QuantizationParams, RawInk};
use crate::repr::{encode_base, Representation};
use crate::vocab::Vocab;

/// Token counts for one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SampleStats {
    pub base_tokens: usize,
    pub bpe_tokens: usize,
    pub points: usize,
    pub unknown_tokens: usize,
}

impl SampleStats {
    pub fn compression_ratio_base(&self) -> f64 {
        self.base_tokens as f64 / self.bpe_tokens as f64
    }

    pub fn points_per_token(&self) -> f64 {
        self.points as f64 / self.bpe_tokens as f64
    }

    pub fn oov_rate(&self) -> f64 {
        self.unknown_tokens as f64 / self.bpe_tokens as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub representation: Representation,
    pub delta: f64,
    pub vocab_size: usize,
    pub samples: Vec<SampleStats>,
    /// Arithmetic mean of the per-sample ratios.
    pub mean_compression_ratio_base: f64,
    pub mean_points_per_token: f64,
    /// Total UNKNOWN tokens over total BPE tokens.
    pub oov_rate: f64,
    pub totals: SampleStats,
}

impl CorpusStats {
    fn from_samples(rep: Representation, delta: f64, vocab_size: usize, samples: Vec<SampleStats>) -> Self {
        let n = samples.len() as f64;
        let totals = samples.iter().fold(SampleStats::default(), |a, s| SampleStats {
            base_tokens: a.base_tokens + s.base_tokens,
            bpe_tokens: a.bpe_tokens + s.bpe_tokens,
            points: a.points + s.points,
            unknown_tokens: a.unknown_tokens + s.unknown_tokens,
        });
        let mean = |f: fn(&SampleStats) -> f64| samples.iter().map(f).sum::<f64>() / n;
        CorpusStats {
            representation: rep,
            delta,
            vocab_size,
            mean_compression_ratio_base: mean(SampleStats::compression_ratio_base),
            mean_points_per_token: mean(SampleStats::points_per_token),
            oov_rate: totals.oov_rate(),
            totals,
            samples,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }
}

fn check_vocab(vocab: &Vocab, rep: Representation, delta: f64) -> Result<()> {
    if vocab.representation() != rep {
        return Err(Error::ConfigMismatch(format!(
            "vocabulary is for {} but {rep} was requested",
            vocab.representation()
        )));
    }
    if vocab.delta() != delta {
        return Err(Error::ConfigMismatch(format!(
            "vocabulary was built at grid spacing {} but {delta} was requested",
            vocab.delta()
        )));
    }
    Ok(())
}

/// Measures already-quantized inks.
pub fn measure_integer(corpus: &[IntegerInk], vocab: &Vocab) -> Result<CorpusStats> {
    if corpus.is_empty() {
        return Err(Error::InvalidParams("cannot measure an empty corpus".into()));
    }
    let unknown = vocab.specials().unknown;
    let mut encoder = BpeEncoder::new(vocab);
    let samples = corpus
        .iter()
        .enumerate()
        .map(|(i, ink)| {
            if ink.is_empty() {
                return Err(Error::EmptyInk(format!("sample {i} has no strokes")));
            }
            let base = encode_base(ink, vocab);
            let bpe = encoder.encode(&base)?;
            Ok(SampleStats {
                base_tokens: base.len(),
                bpe_tokens: bpe.len(),
                points: ink.num_points(),
                unknown_tokens: bpe.iter().filter(|&&t| t == unknown).count(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusStats::from_samples(
        vocab.representation(),
        vocab.delta(),
        vocab.len(),
        samples,
    ))
}

/// Quantizes each ink at `delta`, encodes it with `representation` and BPE,
/// and accumulates compression and OOV figures.
pub fn measure(corpus: &[RawInk], representation: Representation, delta: f64, vocab: &Vocab) -> Result<CorpusStats> {
    check_vocab(vocab, representation, delta)?;
    let q = QuantizationParams::new(delta)?;
    let inks = corpus.iter().map(|ink| quantize(ink, q)).collect::<Result<Vec<_>>>()?;
    measure_integer(&inks, vocab)
}

/// Parameter grid for [`sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub representations: Vec<Representation>,
    pub deltas: Vec<f64>,
    pub vocab_sizes: Vec<usize>,
}

/// One configuration of a sweep. `stats` is `None` when the base vocabulary
/// alone exceeds the budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub representation: Representation,
    pub delta: f64,
    pub vocab_size: usize,
    pub base_vocab_size: usize,
    pub merges: usize,
    pub stats: Option<CorpusStats>,
}

/// Deterministic train/eval split: every `eval_every`-th sample (the last of
/// each block) is held out. Corpora too small to hold anything out are used
/// for both.
pub fn split_corpus<T: Clone>(corpus: &[T], eval_every: usize) -> (Vec<T>, Vec<T>) {
    let k = eval_every.max(2);
    let (mut train, mut eval) = (Vec::new(), Vec::new());
    for (i, s) in corpus.iter().enumerate() {
        if i % k == k - 1 {
            eval.push(s.clone());
        } else {
            train.push(s.clone());
        }
    }
    if eval.is_empty() || train.is_empty() {
        return (corpus.to_vec(), corpus.to_vec());
    }
    (train, eval)
}

/// Trains one vocabulary per (representation, delta) on `train` at the
/// largest requested size and measures each requested size on `eval`.
///
/// Smaller sizes are prefixes of the largest vocabulary, which is exactly
/// what training at that size would produce.
pub fn sweep(train: &[RawInk], eval: &[RawInk], config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if train.is_empty() || eval.is_empty() {
        return Err(Error::InvalidParams(
            "sweep needs non-empty train and eval corpora".into(),
        ));
    }
    let mut rows = Vec::new();
    for &rep in &config.representations {
        for &delta in &config.deltas {
            let q = QuantizationParams::new(delta)?;
            let train_inks = train.iter().map(|ink| quantize(ink, q)).collect::<Result<Vec<_>>>()?;
            let eval_inks = eval.iter().map(|ink| quantize(ink, q)).collect::<Result<Vec<_>>>()?;
            let base = rep.base_vocab(delta, &train_inks)?;
            let largest = config.vocab_sizes.iter().copied().filter(|&s| s >= base.len()).max();
            let full = match largest {
                Some(size) => {
                    let seqs: Vec<_> = train_inks.iter().map(|ink| encode_base(ink, &base)).collect();
                    Some(crate::bpe::bpe_train(&base, &seqs, size)?)
                }
                None => None,
            };
            for &size in &config.vocab_sizes {
                let (merges, stats) = match &full {
                    Some(full) if size >= base.len() => {
                        let vocab = full.truncated(size)?;
                        (vocab.merges().len(), Some(measure_integer(&eval_inks, &vocab)?))
                    }
                    _ => (0, None),
                };
                rows.push(SweepRow {
                    representation: rep,
                    delta,
                    vocab_size: size,
                    base_vocab_size: base.len(),
                    merges,
                    stats,
                });
            }
        }
    }
    Ok(rows)
}

/// Column order of the delimiter-separated report.
pub const REPORT_COLUMNS: [&str; 14] = [
    "representation",
    "delta",
    "vocab_size",
    "status",
    "base_vocab_size",
    "merges",
    "samples",
    "base_tokens",
    "bpe_tokens",
    "points",
    "unknown_tokens",
    "mean_compression_ratio_base",
    "mean_points_per_token",
    "oov_rate",
];

#[derive(Serialize)]
struct ReportRow {
    representation: Representation,
    delta: f64,
    vocab_size: usize,
    status: &'static str,
    base_vocab_size: usize,
    merges: usize,
    samples: Option<usize>,
    base_tokens: Option<usize>,
    bpe_tokens: Option<usize>,
    points: Option<usize>,
    unknown_tokens: Option<usize>,
    mean_compression_ratio_base: Option<f64>,
    mean_points_per_token: Option<f64>,
    oov_rate: Option<f64>,
}

impl From<&SweepRow> for ReportRow {
    fn from(r: &SweepRow) -> Self {
        let s = r.stats.as_ref();
        ReportRow {
            representation: r.representation,
            delta: r.delta,
            vocab_size: r.vocab_size,
            status: if s.is_some() { "present" } else { "absent" },
            base_vocab_size: r.base_vocab_size,
            merges: r.merges,
            samples: s.map(CorpusStats::sample_count),
            base_tokens: s.map(|s| s.totals.base_tokens),
            bpe_tokens: s.map(|s| s.totals.bpe_tokens),
            points: s.map(|s| s.totals.points),
            unknown_tokens: s.map(|s| s.totals.unknown_tokens),
            mean_compression_ratio_base: s.map(|s| s.mean_compression_ratio_base),
            mean_points_per_token: s.map(|s| s.mean_points_per_token),
            oov_rate: s.map(|s| s.oov_rate),
        }
    }
}

/// Writes the sweep as CSV with a header row; absent rows leave the
/// measurement columns empty.
pub fn write_report_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(ReportRow::from(row))
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    if rows.is_empty() {
        w.write_record(REPORT_COLUMNS)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

/// The sweep as a JSON array of row objects with the same fields as the CSV.
pub fn report_json(rows: &[SweepRow]) -> String {
    let rows: Vec<ReportRow> = rows.iter().map(ReportRow::from).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("report rows serialize");
    s.push('\n');
    s
}
