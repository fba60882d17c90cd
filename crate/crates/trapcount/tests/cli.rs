//! End-to-end tests of the `trapcount` binary: report formats, exit codes,
//! the delegation flow, and the invariant that every emitted encoding
//! re-parses through this project's own readers.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use trapcount::bnet::render_bnet;
use trapcount::encode::{encode_fasp, encode_tsconj, render_asp, ProjectionSet};
use trapcount::sat::dimacs::parse_dimacs;
use trapcount::Caps;

const EXAMPLE_BNET: &str = "targets, factors\na, a & !b\nb, a\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trapcount"))
}

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().expect("temp dir");
        std::fs::write(dir.path().join("example.bnet"), EXAMPLE_BNET).unwrap();
        std::fs::write(dir.path().join("beta.txt"), "a = 0\nb = 0\n").unwrap();
        std::fs::write(dir.path().join("X.txt"), "b\n").unwrap();
        Workspace { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_with_env(args, &[])
    }

    fn run_with_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = bin();
        cmd.current_dir(self.dir.path()).args(args);
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().expect("binary runs")
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Report text with the elapsed-time value blanked, for byte comparisons.
fn normalize_elapsed(report: &str) -> String {
    report
        .lines()
        .map(|line| {
            if line.trim_start().starts_with("\"elapsed_ms\":") {
                let comma = if line.trim_end().ends_with(',') { "," } else { "" };
                format!("  \"elapsed_ms\": <t>{comma}")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn count_reports_are_deterministic_and_alphabetical() {
    let ws = Workspace::new();
    let first = ws.run(&["count", "example.bnet", "--problem", "mts1"]);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let second = ws.run(&["count", "example.bnet", "--problem", "mts1"]);
    assert_eq!(
        normalize_elapsed(&stdout(&first)),
        normalize_elapsed(&stdout(&second))
    );
    assert_eq!(
        normalize_elapsed(&stdout(&first)),
        "{\n  \"count\": \"1\",\n  \"delta\": null,\n  \"elapsed_ms\": <t>,\n  \
         \"epsilon\": null,\n  \"mode\": \"exact\",\n  \"problem\": \"C-MTS-1\",\n  \
         \"seed\": null\n}"
    );
}

#[test]
fn approx_reports_are_reproducible_per_seed() {
    let ws = Workspace::new();
    let ident: String = std::iter::once("targets, factors".to_string())
        .chain((1..=7).map(|i| format!("x{i}, x{i}")))
        .collect::<Vec<_>>()
        .join("\n");
    ws.write("ident7.bnet", &(ident + "\n"));
    let args = [
        "count", "ident7.bnet", "--problem", "fix1", "--mode", "approx", "--seed", "3",
    ];
    let first = ws.run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let second = ws.run(&args);
    assert_eq!(
        normalize_elapsed(&stdout(&first)),
        normalize_elapsed(&stdout(&second))
    );
    assert!(stdout(&first).contains("\"count\": \"128\""));
    assert!(stdout(&first).contains("\"mode\": \"approx\""));
    assert!(stdout(&first).contains("\"seed\": 3"));
}

#[test]
fn family_three_reports_carry_robustness() {
    let ws = Workspace::new();
    let out = ws.run(&[
        "count", "example.bnet", "--problem", "mts3", "--perturb", "X.txt",
        "--phenotype", "beta.txt",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("warning: phenotype constrains perturbable variable(s): b"),
        "stderr: {}",
        stderr(&out)
    );
    let text = stdout(&out);
    assert!(text.contains("\"count\": \"2\""));
    assert!(text.contains("\"robustness\": \"2/3\""));
    assert!(text.contains("\"robustness_decimal\": \"0.667\""));
}

#[test]
fn tsv_report_mirrors_json_fields() {
    let ws = Workspace::new();
    let out = ws.run(&[
        "count", "example.bnet", "--problem", "mts3", "--perturb", "X.txt",
        "--phenotype", "beta.txt", "--format", "tsv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let mut cells: Vec<String> = lines
        .next()
        .unwrap()
        .split('\t')
        .map(str::to_string)
        .collect();
    assert_eq!(
        header,
        [
            "count", "delta", "elapsed_ms", "epsilon", "mode", "problem", "robustness",
            "robustness_decimal", "seed"
        ]
    );
    assert_eq!(cells.len(), header.len());
    cells[2] = "<t>".to_string(); // elapsed_ms
    assert_eq!(
        cells,
        ["2", "", "<t>", "", "exact", "C-MTS-3", "2/3", "0.667", ""]
    );
}

#[test]
fn output_flag_writes_the_report_file() {
    let ws = Workspace::new();
    let out = ws.run(&[
        "count", "example.bnet", "--problem", "fix1", "-o", "report.json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    let report = std::fs::read_to_string(ws.path("report.json")).unwrap();
    assert!(report.contains("\"count\": \"1\""));
    assert!(report.contains("\"problem\": \"C-FIX-1\""));
}

#[test]
fn emitted_asp_reparses_through_the_text_reader() {
    let ws = Workspace::new();
    let caps = Caps::default();
    let out = ws.run(&["encode", "example.bnet", "--problem", "mts1", "--target", "asp"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);

    let library = render_asp(&encode_tsconj(&common::example_network(), &caps).unwrap(), None);
    assert_eq!(text, library, "CLI and library must emit the same program");

    let (program, shown) = common::parse_asp_text(&text);
    assert!(shown.is_empty());
    assert_eq!(render_asp(&program, None), text, "round trip must be lossless");
}

#[test]
fn emitted_projection_shows_exactly_the_helper_atoms() {
    let ws = Workspace::new();
    let out = ws.run(&[
        "encode", "example.bnet", "--problem", "mts3", "--perturb", "X.txt",
        "--phenotype", "beta.txt", "--target", "asp",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let (program, shown) = common::parse_asp_text(&text);
    assert_eq!(shown, ["p_b__k", "n_b__k", "p_b__o", "n_b__o"]);
    let reconstructed = ProjectionSet {
        delta: vec![],
        atoms: shown.iter().map(trapcount::asp::Atom::new).collect(),
    };
    assert_eq!(render_asp(&program, Some(&reconstructed)), text);
}

#[test]
fn emitted_cnf_reparses_through_the_dimacs_reader() {
    let ws = Workspace::new();
    let out = ws.run(&["encode", "example.bnet", "--problem", "fix1", "--target", "cnf"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("c ind 1 2 0"), "both variables are the support");
    let cnf = parse_dimacs(&text).unwrap();
    assert_eq!(trapcount::encode::cnf::render_dimacs(&cnf), text);

    // Under perturbation the declared support narrows to the helper columns.
    let out = ws.run(&[
        "encode", "example.bnet", "--problem", "fix3", "--perturb", "X.txt",
        "--target", "cnf",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("c ind 3 4 0"), "got:\n{text}");
    let cnf = parse_dimacs(&text).unwrap();
    assert_eq!(cnf.support, vec![3, 4]);
}

#[test]
fn emitted_encodings_reparse_for_random_networks() {
    let ws = Workspace::new();
    let mut rng = common::rng(0x11);
    for i in 0..6 {
        let n = 2 + common::pick(&mut rng, 5);
        let f = common::random_network(&mut rng, n, 2);
        let name = format!("random{i}.bnet");
        ws.write(&name, &render_bnet(&f));

        let out = ws.run(&["encode", &name, "--problem", "mts1", "--target", "asp"]);
        assert_eq!(code(&out), 0, "network {i} stderr: {}", stderr(&out));
        let text = stdout(&out);
        let (program, _) = common::parse_asp_text(&text);
        assert_eq!(render_asp(&program, None), text, "network {i}");

        let out = ws.run(&["encode", &name, "--problem", "fix1", "--target", "asp"]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let (program, _) = common::parse_asp_text(&text);
        assert_eq!(render_asp(&program, None), text, "network {i}");
        assert_eq!(
            program,
            encode_fasp(&f),
            "fixed-point program must match the library for network {i}"
        );

        let out = ws.run(&["encode", &name, "--problem", "fix1", "--target", "cnf"]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let cnf = parse_dimacs(&text).unwrap();
        assert_eq!(trapcount::encode::cnf::render_dimacs(&cnf), text, "network {i}");
    }
}

#[test]
fn cnf_target_rejects_trap_space_problems() {
    let ws = Workspace::new();
    let out = ws.run(&["encode", "example.bnet", "--problem", "mts1", "--target", "cnf"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("invalid input"));
}

#[test]
fn verify_reports_subspace_properties() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "example.bnet", "0*"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "subspace: 0*\ntrap space: yes\nminimal trap space: no\nfixed point: no\n"
    );

    let out = ws.run(&["verify", "example.bnet", "00", "--phenotype", "beta.txt"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "subspace: 00\ntrap space: yes\nminimal trap space: yes\nfixed point: yes\n\
         phenotype satisfied: yes\n"
    );

    let out = ws.run(&["verify", "example.bnet", "1*"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("trap space: no"));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let ws = Workspace::new();
    ws.write("broken.bnet", "targets, factors\na, a &\n");
    let out = ws.run(&["count", "broken.bnet", "--problem", "mts1"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("line 2, column"),
        "stderr: {}",
        stderr(&out)
    );

    let out = ws.run(&["count", "example.bnet", "--no-such-flag"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn cap_exhaustion_exits_two() {
    let ws = Workspace::new();
    let out = ws.run_with_env(
        &["count", "example.bnet", "--problem", "mts1", "--mode", "exact"],
        &[("TRAPCOUNT_CAPS", "subspace=1")],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exact enumeration infeasible"));

    let out = ws.run_with_env(
        &["count", "example.bnet", "--problem", "mts1"],
        &[("TRAPCOUNT_CAPS", "bogus=1")],
    );
    assert_eq!(code(&out), 1, "unknown cap keys are input errors");
}

#[test]
fn conflict_budget_exhaustion_exits_three() {
    let ws = Workspace::new();
    let ident: String = std::iter::once("targets, factors".to_string())
        .chain((1..=7).map(|i| format!("x{i}, x{i}")))
        .collect::<Vec<_>>()
        .join("\n");
    ws.write("ident7.bnet", &(ident + "\n"));
    let out = ws.run_with_env(
        &["count", "ident7.bnet", "--problem", "fix1", "--mode", "approx"],
        &[("TRAPCOUNT_CAPS", "conflicts=0")],
    );
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("conflict budget exhausted"));
}

#[test]
fn epsilon_outside_unit_interval_exits_one() {
    let ws = Workspace::new();
    let out = ws.run(&[
        "count", "example.bnet", "--problem", "fix1", "--mode", "approx",
        "--epsilon", "1.5",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("epsilon must be strictly between 0 and 1"));
}

#[test]
fn oversize_trap_space_problems_delegate_and_ingest_external_counts() {
    let ws = Workspace::new();
    let caps = Caps::default();
    let out = ws.run_with_env(
        &["count", "example.bnet", "--problem", "mts1"],
        &[("TRAPCOUNT_CAPS", "subspace=1")],
    );
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("needs an external answer-set counter"),
        "stderr: {}",
        stderr(&out)
    );
    let library = render_asp(&encode_tsconj(&common::example_network(), &caps).unwrap(), None);
    assert_eq!(stdout(&out), library, "delegation must emit the encoding");

    let out = ws.run(&[
        "count", "example.bnet", "--problem", "mts1", "--external-count", "1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"count\": \"1\""));
    assert!(text.contains("\"mode\": \"approx\""));
    assert!(text.contains("\"provenance\": \"external\""));

    let out = ws.run(&[
        "count", "example.bnet", "--problem", "mts3", "--perturb", "X.txt",
        "--phenotype", "beta.txt", "--external-count", "2",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"robustness\": \"2/3\""), "got: {text}");

    let out = ws.run(&[
        "count", "example.bnet", "--problem", "fix1", "--external-count", "5",
    ]);
    assert_eq!(code(&out), 1, "fixed-point problems are counted locally");

    let out = ws.run(&[
        "count", "example.bnet", "--problem", "mts1", "--external-count", "1",
        "--mode", "exact",
    ]);
    assert_eq!(code(&out), 1, "external counts are never exact");
}
