use std::fs;
use std::process::{Command, Output};

fn hkmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkmon"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eq_on_the_braid_relation() {
    let o = hkmon(&["eq", "--cycle", "3", "121", "212"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "equal\n");
    let o = hkmon(&["eq", "--cycle", "3", "12", "21"]);
    assert_eq!(stdout(&o), "not equal\n");
}

#[test]
fn graph_files_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(
        &path,
        "# triangle with a tail\nn=4\n1->2\n2->3\n3->1\n1->4\n",
    )
    .unwrap();
    let o = hkmon(&["classify", "--graph", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("gk=2"));
}

#[test]
fn bad_graph_files_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "n=3\n1->2\n2->1\n").unwrap();
    let o = hkmon(&["classify", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn graph_source_must_be_unique() {
    assert_eq!(hkmon(&["classify"]).status.code(), Some(1));
    assert_eq!(
        hkmon(&["classify", "--cycle", "3", "--example-s4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hkmon(&["classify", "--cycle", "3", "--nope"]).status.code(),
        Some(1)
    );
    assert_eq!(hkmon(&["--help"]).status.code(), Some(0));
}

#[test]
fn records_are_tab_separated() {
    let o = hkmon(&[
        "growth",
        "--cycle",
        "3",
        "--max-len",
        "3",
        "--format",
        "records",
    ]);
    let text = stdout(&o);
    for line in text.lines() {
        assert_eq!(line.split('\t').count(), 2, "{line}");
    }
    assert!(text.contains("count.2\t6\n"));
    assert!(text.ends_with("growth\tgk=1\n"));
}

#[test]
fn exponential_graphs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "n=6\n1->2\n2->3\n3->1\n4->5\n5->6\n6->4\n3->4\n").unwrap();
    let o = hkmon(&["classify", "--graph", path.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "exponential\ngraph criterion: two oriented cycles joined by an oriented path\n"
    );
}

#[test]
fn automaton_export_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for p in [&a, &b] {
        assert!(
            hkmon(&["automaton", "--example-s4", "--out", p.to_str().unwrap()])
                .status
                .success()
        );
    }
    let dot = fs::read_to_string(&a).unwrap();
    assert_eq!(dot, fs::read_to_string(&b).unwrap());
    assert!(dot.starts_with("digraph normal_words {"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["enumerate", "--cycle", "4", "--max-len", "4"][..],
        &[
            "obstructions",
            "--example-s4",
            "--max-len",
            "8",
            "--format",
            "records",
        ],
        &[
            "normalize",
            "--cycle",
            "5",
            "--random-choices",
            "--seed",
            "9",
            "5432154321",
            "--trace",
        ],
    ] {
        assert_eq!(stdout(&hkmon(args)), stdout(&hkmon(args)));
    }
}

#[test]
fn systems_give_the_same_normal_form() {
    let forms: Vec<String> = ["T", "S", "Sprime"]
        .iter()
        .map(|s| {
            stdout(&hkmon(&[
                "normalize",
                "--cycle",
                "5",
                "--system",
                s,
                "5432154321",
            ]))
        })
        .collect();
    assert_eq!(forms[0], forms[1]);
    assert_eq!(forms[0], forms[2]);
    let o = hkmon(&["normalize", "--example-s4", "--system", "S", "ab"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sprime_basis_for_the_triangle() {
    let o = hkmon(&[
        "basis", "--cycle", "3", "--system", "Sprime", "--format", "records",
    ]);
    let text = stdout(&o);
    assert!(text.contains("S'-5'\t1.3.1 -> 3.1\n"));
    assert!(text.ends_with("rules\t9\n"));
}

#[test]
fn verification_commands_succeed_on_good_input() {
    assert!(hkmon(&["confluence", "--cycle", "4", "--max-len", "5"])
        .status
        .success());
    assert!(hkmon(&[
        "confluence",
        "--cycle",
        "4",
        "--max-len",
        "5",
        "--system",
        "Sprime"
    ])
    .status
    .success());
    assert!(hkmon(&["oracle-check", "--cycle", "3", "--max-len", "4"])
        .status
        .success());
}

#[test]
fn budgets_are_enforced() {
    let o = hkmon(&[
        "confluence",
        "--cycle",
        "5",
        "--max-len",
        "9",
        "--budget",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn generator_order_is_applied() {
    let o = hkmon(&["normalize", "--cycle", "4", "--order", "4,3,2,1", "13"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1.3 -> 3.1\n");
    assert_eq!(
        hkmon(&["normalize", "--cycle", "4", "--order", "1,2", "13"])
            .status
            .code(),
        Some(1)
    );
}
