use betti_cli::record::ExperimentRecord;
use betti_cli::run;

fn batch(path: &std::path::Path, extra: &[&str]) -> i32 {
    let mut argv: Vec<String> = [
        "mkbetti",
        "batch",
        "--n",
        "3",
        "--max-deg",
        "3",
        "--count",
        "6",
        "--seed",
        "11",
        "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    argv.push(path.display().to_string());
    argv.extend(extra.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    run(argv, &mut out, &mut err)
}

#[test]
fn fixed_seed_batches_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    assert_eq!(batch(&a, &[]), 0);
    assert_eq!(batch(&b, &["--workers", "3"]), 0);
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let records: Vec<ExperimentRecord> = std::str::from_utf8(&ta)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 6);
    assert!(records
        .iter()
        .enumerate()
        .all(|(i, r)| r.index == i as u64 && r.seed == 11));
    assert!(records
        .iter()
        .all(|r| r.schema_version == 1 && r.timings_ms.is_none()));
}

#[test]
fn batches_append() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.jsonl");
    assert_eq!(batch(&path, &[]), 0);
    assert_eq!(batch(&path, &[]), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[..6], lines[6..]);
}

#[test]
fn general_mode_records_binomial_ideals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("general.jsonl");
    let code = batch(&path, &["--general"]);
    assert!(code == 0 || code == 2);
    let text = std::fs::read_to_string(&path).unwrap();
    let first: ExperimentRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert!(first.general);
}
