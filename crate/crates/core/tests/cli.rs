use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supercyclic"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

/// Runs the binary with `args`, feeding `input` on stdin.
fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_k33_passes() {
    let (code, out, _) = run(&["check"], &read_golden("k33.txt"));
    assert_eq!(code, 0);
    assert!(out.starts_with("graph 1: PASS condition"), "{out}");
}

#[test]
fn gen_check_pipeline_fails_with_witness() {
    let (code, g3, _) = run(&["gen", "g3", "--n", "2,1,1", "--delta", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(g3, read_golden("g3_211.txt"));
    let (code, out, _) = run(&["check"], &g3);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL condition"));
    assert!(out.contains("size clause fails at A = {x1,x3,x4}"), "{out}");
}

#[test]
fn cycle_reports_absent_and_found() {
    let (_, g3, _) = run(&["gen", "g3", "--n", "1,1,1", "--delta", "3"], "");
    let (code, out, _) = run(&["cycle", "--base", "1,2,3"], &g3);
    assert_eq!((code, out.as_str()), (1, "ABSENT\n"));
    let (code, out, _) = run(&["cycle", "--base", "1,2,3"], &read_golden("k33.txt"));
    assert_eq!((code, out.as_str()), (0, "x1,y1,x2,y2,x3,y3\n"));
}

#[test]
fn machine_outputs_match_golden_files() {
    let k33 = golden("k33.txt");
    let k33 = k33.to_str().unwrap();
    let g3 = golden("g3_211.txt");
    let g3 = g3.to_str().unwrap();
    let cases: [(&[&str], &str, i32); 5] = [
        (&["--machine", "check", "--input", k33], "check_k33.machine", 0),
        (&["--machine", "check", "--input", g3], "check_g3_211.machine", 1),
        (&["--machine", "verify", "kcyclic", "--nx", "3", "--ny-max", "4", "--k", "3"], "verify_kcyclic_3_4_3.machine", 0),
        (
            &["--machine", "hunt", "--nx", "5", "--ny-max", "6", "--random", "--seed", "7", "--trials", "20", "--jobs", "2"],
            "hunt_random_5_6.machine",
            0,
        ),
        (
            &["--machine", "analyze", "--input", k33, "--cycle", "x1,y1,x2,y2,x3,y3", "--pair", "1,2"],
            "analyze_k33.machine",
            0,
        ),
    ];
    for (args, name, expected_code) in cases {
        let (code, out, err) = run(args, "");
        assert_eq!(code, expected_code, "{name}: {err}");
        assert_eq!(out, read_golden(name), "{name}");
    }
}

#[test]
fn enumeration_stream_feeds_check() {
    let (code, stream, _) = run(&["gen", "enum", "--nx", "3", "--ny-max", "3", "--filter", "cond1"], "");
    assert_eq!(code, 0);
    let (code, out, _) = run(&["check", "--mode", "kim"], &stream);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("graph ")).all(|l| l.contains("PASS")));
    assert!(out.lines().any(|l| l.starts_with("graph ")));
}

#[test]
fn hypergraph_input_is_read_as_incidence_graph() {
    // the triangle hypergraph {1,2},{2,3},{1,3} is a Berge 3-cycle
    let h = "p hgraph 3 3\ns 1 2\ns 2 3\ns 1 3\n";
    let (code, out, _) = run(&["cycle", "--base", "1,2,3"], h);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["check", "--as-hypergraph"], h);
    assert_eq!(code, 0);
    assert!(out.contains("p hgraph 3 3"), "{out}");
}

#[test]
fn errors_exit_with_two() {
    let (code, _, err) = run(&["check"], "p bigraph 2 2\ne 5 1\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["verify", "kcyclic", "--nx", "3", "--ny-max", "4"], "").0, 2);
    assert_eq!(run(&["verify", "kcyclic", "--nx", "7", "--ny-max", "4", "--k", "3"], "").0, 2);
    assert_eq!(run(&["classify"], "").0, 2);
}

#[test]
fn classify_reports_core_for_non_super_cyclic_input() {
    let (code, out, _) = run(&["classify"], &read_golden("k33.txt"));
    assert_eq!(code, 1);
    assert!(out.contains("FAIL critical"), "{out}");
}

#[test]
fn checkpoint_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["verify", "kcyclic", "--nx", "3", "--ny-max", "3", "--k", "3", "--checkpoint-every", "5"])
        .env("SUPERCYCLIC_CHECKPOINT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
}
