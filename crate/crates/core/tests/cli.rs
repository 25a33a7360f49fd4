use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn joinendo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_joinendo")).args(args).output().unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = joinendo(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn meet_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = format!("file:{}", write(dir.path(), "m2.txt", "# M_2\n4\n0 1\n0 2\n1 3\n2 3\n"));
    let f = write(dir.path(), "f.txt", "0 2 1 3\n");
    let g = write(dir.path(), "g.txt", "0 1 1 3\n");
    for alg in ["gmeet", "gmeet+", "gmeet+mod", "brute"] {
        let out = stdout_of(&["meet", "--lattice", &lattice, "--endo", &f, "--endo", &g, "--alg", alg, "--verify"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "0 0 1 1", "{alg}");
        assert!(lines[1].starts_with("joins="));
        assert_eq!(lines[2], "VERIFIED");
    }
}

#[test]
fn meet_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let not_endo = write(dir.path(), "bad.txt", "0 1 2\n");
    let out = joinendo(&["meet", "--lattice", "chain:4", "--endo", &not_endo]);
    assert!(!out.status.success());
    let out = joinendo(&["meet", "--lattice", "mn:3", "--random", "2", "--alg", "dmeet+"]);
    assert!(!out.status.success());
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn bench_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let args = ["--seed", "5", "--out", csv.to_str().unwrap(), "bench", "--family", "powerset", "--sizes", "16,64"];
    stdout_of(&args);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# joinendo-bench v1");
    assert_eq!(lines.len(), 4);
    let fields: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(&fields[..9], ["powerset", "2^6", "64", "2", "dmeet+", "0", "5", "57", "6"]);

    // identical apart from the wall-clock column
    stdout_of(&args);
    let strip = |t: &str| t.lines().map(|l| l.rsplit_once(',').map_or(l, |(a, _)| a).to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&text), strip(&fs::read_to_string(&csv).unwrap()));
}

#[test]
fn count_powerset_and_chain() {
    assert_eq!(stdout_of(&["count", "powerset", "--n", "2"]).lines().nth(1).unwrap().split(',').nth(2), Some("16"));
    let chain = stdout_of(&["count", "chain", "--n", "3,4,5"]);
    let formulas: Vec<&str> = chain.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(formulas, ["6", "20", "70"]);
}

#[test]
fn latgen_all_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("lattices");
    let printed = stdout_of(&["--out", out_dir.to_str().unwrap(), "latgen", "all", "--max-n", "6"]);
    let csv = fs::read_to_string(out_dir.join("counts.csv")).unwrap();
    assert_eq!(csv, "size,count\n1,1\n2,1\n3,1\n4,2\n5,5\n6,15\n");
    assert!(printed.contains("6,15"));
    let files = fs::read_dir(&out_dir).unwrap().count();
    assert_eq!(files, 1 + 25);
    // only M_3 has six cover edges
    let six_edges = (0..5)
        .map(|i| fs::read_to_string(out_dir.join(format!("lattice_5_{i:03}.txt"))).unwrap())
        .filter(|t| t.lines().count() == 1 + 6)
        .count();
    assert_eq!(six_edges, 1);
}

#[test]
fn latgen_random_and_conjecture() {
    let text = stdout_of(&["--seed", "3", "latgen", "random", "--n", "7", "--distributive"]);
    assert_eq!(text.lines().next(), Some("7"));
    let a = stdout_of(&["--seed", "1", "latgen", "conjecture", "--max-n", "5"]);
    assert_eq!(a, stdout_of(&["--seed", "1", "latgen", "conjecture", "--max-n", "5"]));
    assert!(a.contains("exhausted"));
}

#[test]
fn morph_from_image_file() {
    let dir = tempfile::tempdir().unwrap();
    let image = write(dir.path(), "img.pbm", "P1\n3 2\n1 0 0\n0 0 1\n");
    let out = stdout_of(&["morph", "meet", "--image", &image, "--se", "cross", "--se", "0,0;1,0"]);
    assert!(out.ends_with("AGREE\n"), "{out}");
    let dilated = stdout_of(&["morph", "dilate", "--image", &image, "--se", "hline", "--pbm"]);
    assert_eq!(dilated, "P1\n3 2\n1 1 0\n0 1 1\n");
}
