use std::process::Command;

use arfold::cli::{quiver_doc, quiver_from_doc, QuiverDoc, Rendered};
use arfold::twistfold::e6_folded_quiver;
use arfold::words::CommutationClass;

fn arfold(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arfold")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn e6_fixture_json_round_trip() {
    let (code, text) = arfold(&["quiver", "--fixture", "e6", "--view", "folded", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: QuiverDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.vertices.len(), 36);
    let (rs, q) = quiver_from_doc(&doc).unwrap();
    let class = CommutationClass::of_longest(&rs, &doc.class).unwrap();
    assert_eq!(quiver_doc(&rs, &class, &q), doc);
    let Rendered::Folded(f) = q else { panic!("expected a folded quiver") };
    assert_eq!(f, e6_folded_quiver().unwrap());
}

#[test]
fn classes_listing_counts() {
    let (code, text) = arfold(&["classes", "--type", "D", "--rank", "4", "--cluster", "twisted"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn failing_suite_exits_one() {
    let (code, text) = arfold(&["verify", "dorey", "--target", "B", "--n", "2", "--reading", "printed"]);
    assert_eq!(code, 1);
    assert!(text.trim_end().ends_with("FAIL"));
    let (code, _) = arfold(&["verify", "dorey", "--target", "B", "--n", "2", "--reading", "corrected"]);
    assert_eq!(code, 0);
}

#[test]
fn bad_input_exits_two() {
    let (code, _) = arfold(&["quiver", "--type", "A", "--rank", "3", "--class", "1,2"]);
    assert_eq!(code, 2);
}
