//! The JSON files under `fixtures/` are byte-identical to the builders'
//! output, every zoo instance verifies, and every tampered instance fails
//! exactly the named check of the named layer.

use std::fs;
use std::path::PathBuf;

use hopfpi::format::{emit, parse};
use hopfpi::instances::{tampered, zoo};
use hopfpi::pipeline::verify;
use hopfpi::report::Status;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn zoo_files_match_builders() {
    for (name, inst) in zoo().unwrap() {
        let path = fixtures().join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, emit(&inst), "{name} differs from its builder");
        let back = parse(&text).unwrap();
        assert_eq!(emit(&back), text, "{name} does not round-trip");
    }
}

#[test]
fn tampered_files_match_builders() {
    for (name, _, _, inst) in tampered().unwrap() {
        let path = fixtures().join("tampered").join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, emit(&inst), "{name} differs from its builder");
    }
}

#[test]
fn zoo_instances_verify() {
    for (name, inst) in zoo().unwrap() {
        let ver = verify(&inst);
        let bad: Vec<_> = ver.report.problems().map(|c| c.id.clone()).collect();
        assert!(ver.passed(), "{name} fails {bad:?}");
    }
}

#[test]
fn tampered_instances_fail_one_check() {
    for (name, stage, check, inst) in tampered().unwrap() {
        let ver = verify(&inst);
        assert_eq!(ver.failed_stage.map(|s| s.name()), Some(stage), "{name}");
        let failing: Vec<&str> = ver
            .report
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail || c.status == Status::Violation)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(failing, vec![check], "{name}");
    }
}
