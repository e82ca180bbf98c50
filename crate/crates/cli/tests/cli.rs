use std::path::PathBuf;
use std::process::{Command, Output};

fn arbora(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbora")).args(args).env_remove("ARBORA_MAX_NODES").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = arbora(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arbora-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["section", "--d", "3", "a b c", "2"]), "b a\n");
    assert_eq!(ok(&["eval", "--d", "3", "a", "1"]), "2\n");
    let id = ok(&["identity", "--d", "4", "a2 a1 a3' a2 a1' a4 a2' a1'"]);
    let mut lines = id.lines();
    assert_eq!(lines.next(), Some("identity"));
    let stats = lines.next().unwrap();
    assert!(stats.starts_with("nodes=") && stats.contains(" depth="), "{stats}");
}

#[test]
fn catalog_names_work_as_words() {
    assert!(ok(&["identity", "--d", "4", "w4"]).starts_with("identity\n"));
    assert_eq!(ok(&["expsum", "--d", "4", "w4"]), "(-1,1,-1,1)\n");
    assert_eq!(ok(&["order-probe", "--d", "3", "xi_1"]), "finite 3\n");
    assert_eq!(ok(&["order-probe", "--d", "3", "a", "--bound", "16"]), "unknown-beyond 16\n");
    assert_eq!(ok(&["catalog", "--d", "3", "--name", "g"]), "a b c\n");
}

#[test]
fn printed_words_reparse() {
    let listing = ok(&["catalog", "--d", "5"]);
    for line in listing.lines() {
        let (name, word) = line.split_once('\t').unwrap();
        let back = ok(&["expsum", "--d", "5", word]);
        assert_eq!(back, ok(&["expsum", "--d", "5", name]), "{name}");
    }
    // a printed section, followed by its inverse spelled out, is trivial
    let section = ok(&["section", "--d", "3", "a b a' c", "12"]);
    let w = section.trim();
    let inv: Vec<String> =
        w.split(' ').rev().map(|t| t.strip_suffix('\'').map_or_else(|| format!("{t}'"), str::to_string)).collect();
    let prod = format!("{w} {}", inv.join(" "));
    assert!(ok(&["identity", "--d", "3", &prod]).starts_with("identity\n"), "{prod}");
}

#[test]
fn orbit_and_portrait() {
    assert_eq!(ok(&["orbit", "--d", "3", "--level", "3"]), "27\n");
    assert_eq!(ok(&["orbit", "--d", "5", "--level", "2"]), "25\n");
    assert_eq!(ok(&["orbit", "--d", "3", "--level", "0", "--list"]), "1\nε\n");
    assert_eq!(ok(&["orbit", "--d", "3", "2", "--list"]), "3\n2\n1\n3\n");
    let p = ok(&["portrait", "--d", "3", "a a", "--depth", "1"]);
    assert_eq!(p, "ε: ()\n  1: (1 3 2) | a b\n  2: (1 2 3) | b a\n  3: () | e\n");
}

#[test]
fn words_file_batches() {
    let f = scratch_file("words.txt", "# comment\na\n\nb a   # trailing\na a'\n");
    let f = f.to_str().unwrap();
    assert_eq!(ok(&["eval", "--d", "3", "--words-file", f, "1"]), "2\n2\n1\n");
    let id = ok(&["identity", "--d", "3", "--words-file", f]);
    let verdicts: Vec<&str> = id.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(verdicts, ["nonidentity", "nonidentity", "identity"]);
    let both = arbora(&["expsum", "--d", "3", "--words-file", f, "a"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn node_budget_flag_beats_environment() {
    let word = "a a b b a' a' b' b'";
    let starved = Command::new(env!("CARGO_BIN_EXE_arbora"))
        .args(["identity", "--d", "3", "--strategy", "generic", word])
        .env("ARBORA_MAX_NODES", "2")
        .output()
        .unwrap();
    assert_eq!(starved.status.code(), Some(2));
    assert!(stderr(&starved).contains("budget"), "{}", stderr(&starved));
    let rescued = Command::new(env!("CARGO_BIN_EXE_arbora"))
        .args(["identity", "--d", "3", "--strategy", "generic", "--max-nodes", "100", word])
        .env("ARBORA_MAX_NODES", "2")
        .output()
        .unwrap();
    assert_eq!(rescued.status.code(), Some(0));
    assert!(stdout(&rescued).starts_with("nonidentity\n"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["identity", "a"][..],
        &["identity", "--d", "2", "a"],
        &["identity", "--d", "10", "a"],
        &["identity", "--d", "3", "q"],
        &["identity", "--d", "4", "--strategy", "odd-shortcut", "a1"],
        &["eval", "--d", "3", "a", "4"],
        &["frobnicate", "--d", "3"],
        &["identity", "--d", "3", "--max-nodes", "0", "a"],
    ] {
        let o = arbora(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn custom_table_warns() {
    let t = scratch_file("table.txt", "a = (a, e, e) (1 2)\nb = (e, b, e) ()\nc = (e, e, c) (2 3)\n");
    let t = t.to_str().unwrap();
    let o = arbora(&["identity", "--table", t, "a a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).starts_with("nonidentity"));
    assert_eq!(arbora(&["eval", "--table", t, "--d", "4", "a", "1"]).status.code(), Some(2));
    assert_eq!(arbora(&["verify-paper", "--table", t]).status.code(), Some(2));
}

#[test]
fn verify_paper_lines() {
    let o = arbora(&["verify-paper", "--d", "4", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), arbora_core::verifier::CHECK_IDS.len());
    for (line, id) in out.lines().zip(arbora_core::verifier::CHECK_IDS) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 3, "{line}");
        assert_eq!(cols[0], id);
        assert!(["PASS", "SKIP"].contains(&cols[1]), "{line}");
    }
    assert!(out.contains("seed 3"));
}

#[test]
fn verify_paper_failure_sets_exit_1() {
    // the d = 3 suite carries known failures, see README
    let o = arbora(&["verify-paper", "--d", "3", "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.contains("\tFAIL\t")));
    assert!(stdout(&o).lines().any(|l| l.starts_with("free_semigroup\tPASS")));
}

#[test]
fn free_semigroup_command() {
    let out = ok(&["free-semigroup", "--d", "3", "--max-len", "3"]);
    assert!(out.starts_with("free_semigroup\tPASS\t"), "{out}");
    assert!(out.contains("39 distinct of 39"));
}
