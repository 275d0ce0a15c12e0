use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inktok"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Asserts failure with a single `error: <kind>: ...` line.
fn fails_with(dir: &Path, args: &[&str], kind: &str) {
    let out = run(dir, args);
    assert!(!out.status.success(), "{args:?} succeeded");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error: {kind}: ")), "{err}");
}

fn two_stroke_ink(dir: &Path) {
    std::fs::copy(fixture("two_stroke_ink.json"), dir.join("ink.json")).unwrap();
}

#[test]
fn example_round_trip_reproduces_rasterized_path() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    two_stroke_ink(dir);
    ok(dir, &["tokenize", "-i", "ink.json", "-o", "ink.tok", "-d", "1"]);
    let tok = std::fs::read_to_string(dir.join("ink.tok")).unwrap();
    assert_eq!(
        tok,
        "# inktok-tokens version=1 representation=scribe delta=1 vocab=none origin=0,0\n12 4 13 5 12 11 11 13\n"
    );
    ok(
        dir,
        &["detokenize", "-i", "ink.tok", "-o", "back.json", "--no-postprocess"],
    );
    let back = inktok::io::read_ink(dir.join("back.json")).unwrap();
    let want =
        inktok::RawInk::from_tuples([vec![(0.0, 0.0), (1.0, 0.0)], vec![(2.0, 1.0), (3.0, 0.0), (4.0, -1.0)]]).unwrap();
    assert_eq!(back, want);

    for rep in ["text", "scribe"] {
        ok(dir, &["tokenize", "-i", "ink.json", "-o", "x.tok", "-d", "1", "-r", rep]);
        ok(dir, &["detokenize", "-i", "x.tok", "-o", "x.json", "--no-postprocess"]);
    }
}

#[test]
fn coordinate_representations_need_a_vocab() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    two_stroke_ink(dir);
    fails_with(
        dir,
        &["tokenize", "-i", "ink.json", "-o", "a.tok", "-d", "1", "-r", "abs"],
        "InvalidParams",
    );
    ok(
        dir,
        &[
            "bpe-train",
            "-c",
            "ink.json",
            "-r",
            "rel",
            "-d",
            "1",
            "-s",
            "20",
            "-o",
            "rel.vocab",
        ],
    );
    ok(
        dir,
        &[
            "tokenize",
            "-i",
            "ink.json",
            "-o",
            "r.tok",
            "-r",
            "rel",
            "--vocab",
            "rel.vocab",
        ],
    );
    ok(
        dir,
        &["detokenize", "-i", "r.tok", "-o", "r.json", "--vocab", "rel.vocab"],
    );
    let back = inktok::io::read_ink(dir.join("r.json")).unwrap();
    assert_eq!(back, inktok::io::read_ink(dir.join("ink.json")).unwrap());
    fails_with(dir, &["detokenize", "-i", "r.tok", "-o", "r.json"], "InvalidParams");
}

#[test]
fn budget_below_base_is_reported() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    two_stroke_ink(dir);
    fails_with(
        dir,
        &["bpe-train", "-c", "ink.json", "-d", "1", "-s", "10", "-o", "v.json"],
        "BudgetExhausted",
    );
    assert!(!dir.join("v.json").exists());
}

#[test]
fn stats_on_one_sample_is_one_row() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    std::fs::create_dir(dir.join("corpus")).unwrap();
    std::fs::copy(fixture("iam_two_strokes.expected.json"), dir.join("corpus/a.json")).unwrap();
    ok(
        dir,
        &[
            "stats", "-c", "corpus", "-d", "8", "-s", "40", "-o", "r.csv", "--json", "r.json",
        ],
    );
    let csv = std::fs::read_to_string(dir.join("r.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2, "{csv}");
    assert_eq!(lines[0], inktok::metrics::REPORT_COLUMNS.join(","));
    assert!(lines[1].starts_with("scribe,8.0,40,present,14,"), "{}", lines[1]);
    let report = std::fs::read_to_string(dir.join("r.json")).unwrap();
    assert!(report.contains("\"oov_rate\": 0.0"), "{report}");
}

#[test]
fn vocab_and_grid_mismatches_are_named() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    two_stroke_ink(dir);
    ok(
        dir,
        &["bpe-train", "-c", "ink.json", "-d", "1", "-s", "20", "-o", "v1.json"],
    );
    ok(
        dir,
        &["bpe-train", "-c", "ink.json", "-d", "2", "-s", "20", "-o", "v2.json"],
    );
    fails_with(
        dir,
        &["tokenize", "-i", "ink.json", "-o", "x", "-d", "1", "--vocab", "v2.json"],
        "ConfigMismatch",
    );
    fails_with(
        dir,
        &[
            "tokenize", "-i", "ink.json", "-o", "x", "-d", "1", "-r", "text", "--vocab", "v1.json",
        ],
        "ConfigMismatch",
    );
    ok(dir, &["quantize", "-i", "ink.json", "-o", "g.json", "-d", "2"]);
    fails_with(
        dir,
        &["tokenize", "-i", "g.json", "-o", "x", "-d", "1"],
        "ConfigMismatch",
    );
    ok(dir, &["tokenize", "-i", "ink.json", "-o", "t.tok", "-d", "1"]);
    fails_with(
        dir,
        &["detokenize", "-i", "t.tok", "-o", "x", "-d", "2"],
        "ConfigMismatch",
    );
    fails_with(
        dir,
        &[
            "render", "-i", "ink.json", "-o", "x.svg", "--tokens", "t.tok", "--vocab", "v2.json",
        ],
        "ConfigMismatch",
    );
}

#[test]
fn io_and_usage_errors_are_single_lines() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    fails_with(dir, &["quantize", "-i", "missing.json", "-o", "x", "-d", "8"], "Io");
    fails_with(dir, &["quantize", "--bogus"], "UsageError");
    fails_with(dir, &["frobnicate"], "UsageError");
    std::fs::write(
        dir.join("bad.json"),
        "{\"format\": \"inktok-ink\",\n \"version\": 1, \"strokes\": [[]]}",
    )
    .unwrap();
    fails_with(dir, &["quantize", "-i", "bad.json", "-o", "x", "-d", "8"], "ParseError");
    two_stroke_ink(dir);
    fails_with(
        dir,
        &["quantize", "-i", "ink.json", "-o", "x", "-d", "0"],
        "InvalidParams",
    );
    fails_with(dir, &["detokenize", "-i", "ink.json", "-o", "x"], "ParseError");
}

#[test]
fn import_modes() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    let xml = std::fs::read_to_string(fixture("iam_two_strokes.xml")).unwrap();
    let broken = xml.replacen("x=\"1250\"", "x=\"oops\"", 1);
    std::fs::write(dir.join("b.xml"), broken).unwrap();
    fails_with(dir, &["import-iam", "-i", "b.xml", "-o", "b.json"], "ParseError");
    let out = run(dir, &["import-iam", "-i", "b.xml", "-o", "b.json", "--lenient"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stderr), "skipped 1 malformed strokes\n");
    assert_eq!(inktok::io::read_ink(dir.join("b.json")).unwrap().strokes().len(), 1);
}

#[test]
fn render_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    two_stroke_ink(dir);
    ok(dir, &["render", "-i", "ink.json", "-o", "a.svg"]);
    ok(dir, &["render", "-i", "ink.json", "-o", "b.svg"]);
    let a = std::fs::read(dir.join("a.svg")).unwrap();
    assert_eq!(a, std::fs::read(dir.join("b.svg")).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().matches("<path").count(), 2);
}
