use std::path::PathBuf;
use std::process::{Command, Output};

#[path = "../src/report.rs"]
#[allow(dead_code)]
mod report;

use report::{Report, Results};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex01"))
}

fn write_input(name: &str, rows: &[&str]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simplex01-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, rows.join("\n") + "\n").unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(args: &[&str]) -> Report {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const NINE: [&str; 9] = [
    "110011110",
    "101110011",
    "101101101",
    "011110101",
    "011101011",
    "001111110",
    "001011001",
    "001000111",
    "000111111",
];

const ACUTE_SEVEN: [&str; 7] = [
    "1110011", "1001100", "0101100", "0011110", "0011101", "0001011", "0000111",
];

#[test]
fn classify_nine_dimensional_example() {
    let path = write_input("nine.txt", &NINE);
    let r = report(&["classify", path.to_str().unwrap()]);
    let Results::Classify(c) = r.results else {
        panic!("wrong kind")
    };
    assert_eq!(c.verdict, "nonobtuse");
    assert!(!c.acute);
    assert!(c.fully_indecomposable);
    assert_eq!(
        c.origin_normal.unwrap(),
        ["1/2", "1/4", "1/4", "1/4", "1/4", "0", "0", "0", "0"]
    );
    assert_eq!(r.input.unwrap().sha256.len(), 64);
}

#[test]
fn json_uses_camel_case_keys() {
    let path = write_input("nine-keys.txt", &NINE);
    let out = run(&["classify", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["verdict"], "nonobtuse");
    assert_eq!(v["results"]["acute"], false);
    assert_eq!(v["results"]["fullyIndecomposable"], true);
    assert_eq!(v["results"]["kind"], "classify");
    let e: serde_json::Value = serde_json::from_slice(&run(&["enumerate", "3"]).stdout).unwrap();
    assert_eq!(e["results"]["classCount"], 4);
}

#[test]
fn reports_round_trip() {
    let acute = write_input("acute.txt", &ACUTE_SEVEN);
    let a = acute.to_str().unwrap();
    for args in [
        vec!["classify", a],
        vec!["decompose", a],
        vec!["neighbors", a, "--facet", "2", "--target", "acute"],
        vec!["canon", a],
        vec!["enumerate", "4", "--filter", "nonobtuse"],
        vec!["ortho", "4"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        let parsed: Report = serde_json::from_slice(&out.stdout).unwrap();
        let again = serde_json::to_value(&parsed).unwrap();
        let original: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(again, original, "{args:?}");
        assert_eq!(parsed.command, args);
    }
}

#[test]
fn singular_input_is_degenerate() {
    let path = write_input("singular.txt", &["110", "110", "001"]);
    let r = report(&["classify", path.to_str().unwrap()]);
    let Results::Classify(c) = r.results else {
        panic!("wrong kind")
    };
    assert_eq!(c.verdict, "degenerate");
    assert_eq!(c.determinant, "0");
    assert!(c.transposed_inverse.is_none());
}

#[test]
fn transpose_flag() {
    let path = write_input("acute-t.txt", &ACUTE_SEVEN);
    let plain = report(&["classify", path.to_str().unwrap()]);
    let flipped = report(&["classify", "--transpose", path.to_str().unwrap()]);
    let (Results::Classify(a), Results::Classify(b)) = (plain.results, flipped.results) else {
        panic!("wrong kind")
    };
    assert_eq!(a.verdict, "acute");
    assert_ne!(b.verdict, "acute");
    assert!(flipped.input.unwrap().transposed);
}

#[test]
fn enumerate_counts() {
    for (n, count) in [(1, 1), (2, 1), (3, 4), (4, 17)] {
        let r = report(&["enumerate", &n.to_string()]);
        let Results::Enumerate(e) = r.results else {
            panic!("wrong kind")
        };
        assert_eq!(e.class_count, count);
        assert_eq!(e.classes.len(), count);
    }
    let r = report(&["enumerate", "5", "--filter", "acute"]);
    let Results::Enumerate(e) = r.results else {
        panic!("wrong kind")
    };
    assert_eq!(e.class_count, 2);
}

#[test]
fn output_independent_of_thread_count() {
    let one = bin()
        .env("SIMPLEX_THREADS", "1")
        .args(["enumerate", "4"])
        .output()
        .unwrap();
    let four = bin()
        .env("SIMPLEX_THREADS", "4")
        .args(["enumerate", "4"])
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn neighbors_altitude_feet() {
    let path = write_input("five.txt", &["11100", "11010", "10001", "00110", "01101"]);
    let r = report(&["neighbors", path.to_str().unwrap(), "--facet", "0"]);
    let Results::Neighbors(nb) = r.results else {
        panic!("wrong kind")
    };
    assert_eq!(nb.facets.len(), 1);
    let mut feet = nb.facets[0].altitude_feet.clone();
    feet.sort();
    assert_eq!(feet, ["00000", "01111", "10000", "11111"]);
    assert_eq!(nb.facets[0].normal, ["0", "1/2", "1/2", "1/2", "1/2"]);
}

#[test]
fn ortho_tree_classes() {
    let r = report(&["ortho", "3"]);
    let Results::Ortho(o) = r.results else {
        panic!("wrong kind")
    };
    assert_eq!(o.upper_triangular_count, 6);
    assert_eq!(o.tree_class_count, 2);
    assert_eq!(
        o.classes.iter().map(|c| c.representations).sum::<usize>(),
        6
    );
}

#[test]
fn canon_merges_equivalent_inputs() {
    let reps = [
        ["001", "110", "100"],
        ["110", "010", "001"],
        ["101", "010", "001"],
        ["011", "010", "111"],
    ];
    let mut forms = Vec::new();
    for (i, rows) in reps.iter().enumerate() {
        let path = write_input(&format!("tetra{i}.txt"), rows);
        let Results::Canon(c) = report(&["canon", path.to_str().unwrap()]).results else {
            panic!("wrong kind")
        };
        forms.push(c.canonical);
    }
    assert!(forms.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn verify_paper_passes() {
    let out = run(&["--format", "text", "verify-paper"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all checks passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    let bad = write_input("bad.txt", &["102", "010", "001"]);
    assert_eq!(
        run(&["classify", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let ragged = write_input("ragged.txt", &["10", "010"]);
    assert_eq!(
        run(&["classify", ragged.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "/nonexistent/matrix.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--frobnicate", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["enumerate", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "3", "--filter", "round"]).status.code(),
        Some(2)
    );
    let obtuse = write_input("obtuse.txt", &["110", "011", "001"]);
    assert_eq!(
        run(&["decompose", obtuse.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let singular = write_input("singular-canon.txt", &["11", "11"]);
    assert_eq!(
        run(&["canon", singular.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
