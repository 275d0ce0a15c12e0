use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use inktok::io::{import_iamondb, ImportMode, InkDocument, TokenFile};
use inktok::metrics::{report_json, split_corpus, sweep, write_report_csv, SweepConfig};
use inktok::svg::{render_svg, render_token_svg};
use inktok::{
    dequantize, detokenize, postprocess_ink, quantize, tokenize, train_vocab, Error, GridPoint, IntegerInk,
    PostprocessParams, QuantizationParams, RawInk, Representation, Vocab,
};

/// Digital ink tokenizer.
#[derive(Parser)]
#[command(name = "inktok", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Snap a raw ink onto the grid of spacing DELTA.
    Quantize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(short, long)]
        delta: f64,
    },
    /// Encode an ink as base tokens, or BPE ids when a vocabulary is given.
    Tokenize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(short, long, default_value = "scribe")]
        representation: Representation,
        #[arg(short, long)]
        delta: Option<f64>,
        #[arg(long)]
        vocab: Option<PathBuf>,
    },
    /// Decode a token file back into an ink.
    Detokenize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(short, long)]
        representation: Option<Representation>,
        #[arg(short, long)]
        delta: Option<f64>,
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[command(flatten)]
        post: PostArgs,
    },
    /// Train a BPE vocabulary on a corpus directory (or a single ink file).
    BpeTrain {
        #[arg(short, long)]
        corpus: PathBuf,
        #[arg(short, long, default_value = "scribe")]
        representation: Representation,
        #[arg(short, long)]
        delta: f64,
        #[arg(short, long)]
        size: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compression and OOV report over representations, deltas and sizes.
    Stats {
        #[arg(short, long)]
        corpus: PathBuf,
        #[arg(short, long, value_delimiter = ',', default_value = "scribe")]
        representations: Vec<Representation>,
        #[arg(short, long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(short, long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Every N-th sample is held out for evaluation.
        #[arg(long, default_value_t = 5)]
        eval_every: usize,
        /// CSV report.
        #[arg(short, long)]
        output: PathBuf,
        /// Optional JSON report.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Convert an IAM-OnDB stroke XML file into an ink document.
    ImportIam {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Skip malformed strokes instead of failing.
        #[arg(long)]
        lenient: bool,
    },
    /// Render an ink as SVG, optionally coloured by BPE token.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, requires = "vocab")]
        tokens: Option<PathBuf>,
        #[arg(long, requires = "tokens")]
        vocab: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PostArgs {
    #[arg(long, default_value_t = 7)]
    window: usize,
    #[arg(long, default_value_t = 3)]
    polyorder: usize,
    #[arg(long, default_value_t = 2)]
    downsample: usize,
    /// Skip smoothing and downsampling.
    #[arg(long)]
    no_postprocess: bool,
}

fn mismatch(msg: String) -> Error {
    Error::ConfigMismatch(msg)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn with_path(path: &Path, err: Error) -> Error {
    match err {
        Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
        Error::ParseError { location, message } => Error::ParseError {
            location,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn read_doc(path: &Path) -> inktok::Result<InkDocument> {
    InkDocument::read(path).map_err(|e| with_path(path, e))
}

fn write_text(path: &Path, text: &str) -> inktok::Result<()> {
    fs::write(path, text).map_err(|e| with_path(path, e.into()))
}

fn load_vocab(path: &Path) -> inktok::Result<Vocab> {
    Vocab::load(path).map_err(|e| with_path(path, e))
}

/// The document as grid cells at `delta`: grid documents must already be at
/// that spacing, raw documents are quantized.
fn grid_ink(doc: &InkDocument, delta: f64) -> inktok::Result<IntegerInk> {
    if doc.grid {
        if doc.delta != Some(delta) {
            return Err(mismatch(format!(
                "ink is on a grid of spacing {}, expected {delta}",
                doc.delta.unwrap_or(f64::NAN)
            )));
        }
        doc.to_integer()
    } else {
        quantize(&doc.to_raw()?, QuantizationParams::new(delta)?)
    }
}

fn agree<T: PartialEq + std::fmt::Display>(what: &str, flag: Option<T>, recorded: T) -> inktok::Result<T> {
    match flag {
        Some(v) if v != recorded => Err(mismatch(format!("--{what} is {v} but the input records {recorded}"))),
        _ => Ok(recorded),
    }
}

fn check_vocab(vocab: &Vocab, rep: Representation, delta: f64) -> inktok::Result<()> {
    if vocab.representation() != rep {
        return Err(mismatch(format!(
            "vocabulary is for {}, not {rep}",
            vocab.representation()
        )));
    }
    if vocab.delta() != delta {
        return Err(mismatch(format!(
            "vocabulary was trained at delta {}, not {delta}",
            vocab.delta()
        )));
    }
    Ok(())
}

fn fixed_base_vocab(rep: Representation, delta: f64) -> inktok::Result<Vocab> {
    match rep {
        Representation::Scribe => Vocab::scribe(delta),
        Representation::Text => Vocab::text(delta),
        _ => Err(invalid(format!(
            "{rep} tokens are defined by a vocabulary; pass --vocab"
        ))),
    }
}

/// Ink documents of a corpus: a single file, or every `.json` file of a
/// directory in name order.
fn corpus_files(path: &Path) -> inktok::Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_owned()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| with_path(path, e.into()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::EmptyInk(format!("{}: no .json ink documents", path.display())));
    }
    Ok(files)
}

fn read_corpus(path: &Path) -> inktok::Result<Vec<InkDocument>> {
    corpus_files(path)?.iter().map(|p| read_doc(p)).collect()
}

fn run(cli: Cli) -> inktok::Result<()> {
    match cli.command {
        Command::Quantize { input, output, delta } => {
            let doc = read_doc(&input)?;
            if doc.grid {
                return Err(mismatch("input is already quantized".into()));
            }
            let ink = quantize(&doc.to_raw()?, QuantizationParams::new(delta)?)?;
            write_text(&output, &InkDocument::from_integer(&ink, delta).to_json_string())
        }
        Command::Tokenize {
            input,
            output,
            representation,
            delta,
            vocab,
        } => {
            let doc = read_doc(&input)?;
            let vocab = vocab.as_deref().map(load_vocab).transpose()?;
            let delta = delta
                .or(vocab.as_ref().map(Vocab::delta))
                .or(doc.delta.filter(|_| doc.grid))
                .ok_or_else(|| invalid("--delta is required"))?;
            let ink = grid_ink(&doc, delta)?;
            if ink.is_empty() {
                return Err(Error::EmptyInk(format!("{}: no strokes", input.display())));
            }
            let (ids, fingerprint) = match &vocab {
                Some(v) => {
                    check_vocab(v, representation, delta)?;
                    (tokenize(&ink, v)?, Some(v.fingerprint()))
                }
                None => (tokenize(&ink, &fixed_base_vocab(representation, delta)?)?, None),
            };
            let file = TokenFile {
                representation,
                delta,
                vocab: fingerprint,
                origin: ink.first_point(),
                sequences: vec![ids],
            };
            write_text(&output, &file.to_text())
        }
        Command::Detokenize {
            input,
            output,
            representation,
            delta,
            vocab,
            post,
        } => {
            let file = TokenFile::read(&input).map_err(|e| with_path(&input, e))?;
            let rep = agree("representation", representation, file.representation)?;
            let delta = agree("delta", delta, file.delta)?;
            let params = PostprocessParams::new(post.window, post.polyorder, post.downsample)?;
            let vocab = match (&vocab, &file.vocab) {
                (Some(path), _) => {
                    let v = load_vocab(path)?;
                    check_vocab(&v, rep, delta)?;
                    if let Some(fp) = &file.vocab {
                        if *fp != v.fingerprint() {
                            return Err(mismatch(format!(
                                "tokens were encoded with vocabulary {fp}, got {}",
                                v.fingerprint()
                            )));
                        }
                    }
                    v
                }
                (None, Some(fp)) => return Err(invalid(format!("tokens use vocabulary {fp}; pass --vocab"))),
                (None, None) => fixed_base_vocab(rep, delta)?,
            };
            let [ids] = file.sequences.as_slice() else {
                return Err(invalid(format!(
                    "expected one token sequence, found {}",
                    file.sequences.len()
                )));
            };
            let origin = file.origin.unwrap_or(GridPoint::ORIGIN);
            let grid = detokenize(ids, &vocab, origin)?;
            let mut ink = dequantize(&grid, QuantizationParams::new(delta)?);
            if rep == Representation::Scribe && !post.no_postprocess {
                ink = postprocess_ink(&ink, &params)?;
            }
            let doc = InkDocument::from_raw(&ink)
                .with_delta(Some(delta))
                .with_origin(file.origin);
            write_text(&output, &doc.to_json_string())
        }
        Command::BpeTrain {
            corpus,
            representation,
            delta,
            size,
            output,
        } => {
            let inks = read_corpus(&corpus)?
                .iter()
                .map(|d| grid_ink(d, delta))
                .collect::<inktok::Result<Vec<_>>>()?;
            let vocab = train_vocab(representation, delta, &inks, size)?;
            write_text(&output, &vocab.to_file_string())
        }
        Command::Stats {
            corpus,
            representations,
            deltas,
            sizes,
            eval_every,
            output,
            json,
        } => {
            let inks = read_corpus(&corpus)?
                .iter()
                .map(|d| {
                    if d.grid {
                        Err(mismatch("stats expects raw ink documents".into()))
                    } else {
                        d.to_raw()
                    }
                })
                .collect::<inktok::Result<Vec<RawInk>>>()?;
            let (train, eval) = split_corpus(&inks, eval_every);
            let config = SweepConfig {
                representations,
                deltas,
                vocab_sizes: sizes,
            };
            let rows = sweep(&train, &eval, &config)?;
            let mut csv = Vec::new();
            write_report_csv(&rows, &mut csv)?;
            fs::write(&output, csv).map_err(|e| with_path(&output, e.into()))?;
            if let Some(path) = json {
                write_text(&path, &report_json(&rows))?;
            }
            Ok(())
        }
        Command::ImportIam { input, output, lenient } => {
            let xml = fs::read_to_string(&input).map_err(|e| with_path(&input, e.into()))?;
            let mode = if lenient {
                ImportMode::Lenient
            } else {
                ImportMode::Strict
            };
            let report = import_iamondb(&xml, mode).map_err(|e| with_path(&input, e))?;
            if report.skipped_strokes > 0 {
                eprintln!("skipped {} malformed strokes", report.skipped_strokes);
            }
            write_text(&output, &InkDocument::from_raw(&report.ink).to_json_string())
        }
        Command::Render {
            input,
            output,
            tokens,
            vocab,
        } => {
            let doc = read_doc(&input)?;
            let svg = match (tokens, vocab) {
                (Some(tokens), Some(vocab)) => {
                    let file = TokenFile::read(&tokens).map_err(|e| with_path(&tokens, e))?;
                    let v = load_vocab(&vocab)?;
                    check_vocab(&v, file.representation, file.delta)?;
                    if file.vocab.as_deref().is_some_and(|fp| fp != v.fingerprint()) {
                        return Err(mismatch("token file was encoded with a different vocabulary".into()));
                    }
                    let ids: Vec<_> = file.sequences.concat();
                    render_token_svg(&grid_ink(&doc, v.delta())?, &ids, &v)?
                }
                _ => {
                    let raw = doc.to_raw()?;
                    match (doc.grid, doc.delta) {
                        (true, Some(d)) => render_svg(&dequantize(&doc.to_integer()?, QuantizationParams::new(d)?)),
                        _ => render_svg(&raw),
                    }
                }
            };
            write_text(&output, &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: UsageError: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {}: {msg}", e.kind());
            ExitCode::FAILURE
        }
    }
}
