use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("ladr-cli-{}-{}", std::process::id(), COUNTER.fetch_add(1, Ordering::SeqCst)));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ladr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladr")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn adjust_single_rect_keeps_dimensions() {
    let out = ladr(&["adjust", s(&data("single.json"))]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["rectangles"][0]["w"], 3);
    assert_eq!(doc["rectangles"][0]["h"], 2);
    assert_eq!(doc["summary"]["area"], "6");
}

#[test]
fn adjust_output_passes_verify() {
    let layout = scratch("layout.json");
    let out = ladr(&["adjust", s(&data("two_squares.json")), "-o", s(&layout)]);
    assert_eq!(code(&out), 0);
    let out = ladr(&["verify", s(&data("two_squares.json")), s(&layout)]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["disjoint"], true);
    assert_eq!(doc["order_preserved"], true);
}

#[test]
fn adjust_is_deterministic() {
    let a = ladr(&["adjust", s(&data("two_squares.json")), "--objective", "perimeter"]);
    let b = ladr(&["adjust", s(&data("two_squares.json")), "--objective", "perimeter"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn adjust_dumps_lp() {
    let dump = scratch("lp.txt");
    let out = ladr(&["adjust", s(&data("two_squares.json")), "--dump-lp", s(&dump), "--engine", "exact"]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dump).unwrap();
    assert!(text.contains("var 0"));
}

#[test]
fn malformed_json_exits_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"rectangles\": [").unwrap();
    let out = ladr(&["adjust", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn decimals_need_lossy() {
    let file = scratch("dec.json");
    std::fs::write(&file, r#"{"rectangles": [{"id": "a", "w": 1, "h": 1, "x": 0.5, "y": "1.25"}]}"#).unwrap();
    assert_eq!(code(&ladr(&["adjust", s(&file)])), 2);
    assert_eq!(code(&ladr(&["adjust", s(&file), "--lossy"])), 0);
}

#[test]
fn verify_reports_overlap_and_order() {
    let out = ladr(&["verify", s(&data("two_squares.json")), s(&data("two_squares.json"))]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["overlapping_pair"], serde_json::json!(["a", "b"]));

    let swapped = scratch("swapped.json");
    std::fs::write(&swapped, r#"{"rectangles": [{"id": "a", "x": "5", "y": "5"}, {"id": "b", "x": "0", "y": "0"}]}"#).unwrap();
    let out = ladr(&["verify", s(&data("two_squares.json")), s(&swapped)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["order_preserved"], false);
}

#[test]
fn verify_disjoint_input_layout() {
    let out = ladr(&["verify", s(&data("apart.json")), s(&data("apart.json"))]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_id_mismatch_is_an_error() {
    let other = scratch("other.json");
    std::fs::write(&other, r#"{"rectangles": [{"id": "a", "x": "0", "y": "0"}, {"id": "z", "x": "3", "y": "3"}]}"#).unwrap();
    assert_eq!(code(&ladr(&["verify", s(&data("two_squares.json")), s(&other)])), 2);
}

#[test]
fn hitset_template_needs_three_lines() {
    let out = ladr(&["hitset", s(&data("template_i.json")), "--exact"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["size"], 3);
}

#[test]
fn hitset_decide_on_template() {
    let out = ladr(&["hitset", s(&data("template_i.json")), "--decide", "1", "2"]);
    assert_eq!(json(&out)["feasible"], true);
    let out = ladr(&["hitset", s(&data("template_i.json")), "--decide", "3", "0"]);
    assert_eq!(json(&out)["feasible"], false);
}

#[test]
fn hitset_oracle_area_of_two_points() {
    let out = ladr(&["hitset", s(&data("two_points.json")), "--oracle-area"]);
    assert_eq!(json(&out)["value"], 2);
}

#[test]
fn hitset_cap_exceeded_exits_3() {
    let out = ladr(&["hitset", s(&data("template_i.json")), "--exact", "--exact-cap", "5"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn hitset_requires_a_mode() {
    assert_eq!(code(&ladr(&["hitset", s(&data("template_i.json"))])), 2);
}

#[test]
fn gadget_round_trip_through_files() {
    let gadget = scratch("gadget.json");
    let lines = scratch("lines.json");
    let cnf = data("fig4.cnf");
    assert_eq!(code(&ladr(&["gadget", s(&cnf)])), 2, "needs the relaxed flag");

    let out = ladr(&[
        "gadget", s(&cnf), "--relaxed-occurrence", "--assignment", "111", "--lines-out", s(&lines), "-o", s(&gadget),
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&gadget).unwrap()).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 88);
    assert_eq!(doc["metadata"]["k"], 35);
    assert_eq!(doc["metadata"]["groups"].as_array().unwrap().len(), 88);
    assert_eq!(doc["metadata"]["separating"], true);

    let check = ladr(&["hitset", s(&gadget), "--check", s(&lines)]);
    assert_eq!(code(&check), 0);

    let out = ladr(&["gadget", s(&cnf), "--relaxed-occurrence", "--extract", s(&lines)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["assignment"], "111");
}

#[test]
fn gadget_rejects_unsatisfying_assignment() {
    let out = ladr(&["gadget", s(&data("fig4.cnf")), "--relaxed-occurrence", "--assignment", "000"]);
    assert_eq!(code(&out), 0, "000 satisfies every clause of this formula");
    let cnf = scratch("unsat.cnf");
    std::fs::write(&cnf, "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let out = ladr(&["gadget", s(&cnf), "--relaxed-occurrence", "--assignment", "111"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gadget_random_is_seeded() {
    let a = ladr(&["gadget", "--random-vars", "6", "--seed", "4"]);
    let b = ladr(&["gadget", "--random-vars", "6", "--seed", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["metadata"]["m"], 10);
}

#[test]
fn render_layout_and_gadget() {
    let layout = scratch("layout.json");
    assert_eq!(code(&ladr(&["adjust", s(&data("two_squares.json")), "-o", s(&layout)])), 0);
    let svg = scratch("layout.svg");
    assert_eq!(code(&ladr(&["render", s(&layout), "-o", s(&svg)])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="rect""#).count(), 2);
    assert_eq!(text.matches("stroke-dasharray").count(), 1);

    let gadget = scratch("gadget.json");
    let out = ladr(&["gadget", s(&data("fig4.cnf")), "--relaxed-occurrence", "--assignment", "111", "-o", s(&gadget)]);
    assert_eq!(code(&out), 0);
    let first = scratch("g1.svg");
    let second = scratch("g2.svg");
    assert_eq!(code(&ladr(&["render", s(&gadget), "-o", s(&first)])), 0);
    assert_eq!(code(&ladr(&["render", s(&gadget), "-o", s(&second)])), 0);
    let text = std::fs::read_to_string(&first).unwrap();
    assert_eq!(text.matches("<circle").count(), 88);
    assert_eq!(text.matches("<line").count(), 35);
    assert_eq!(text, std::fs::read_to_string(&second).unwrap());
}

#[test]
fn render_empty_layout_fails() {
    let empty = scratch("empty.json");
    std::fs::write(&empty, r#"{"rectangles": []}"#).unwrap();
    assert_eq!(code(&ladr(&["render", s(&empty), "-o", s(&scratch("x.svg"))])), 2);
}
