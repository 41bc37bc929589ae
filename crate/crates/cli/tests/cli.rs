use std::io::Write;
use std::process::{Command, Stdio};

use clap::Parser;
use proptest::prelude::*;
use srlim_cli::{run, Cli, ComplexDocument, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK};
use srlim_core::corpus::{acceptance_corpus, named};

fn doc_text(k: &srlim_core::SimplicialComplex) -> String {
    serde_json::to_string(&ComplexDocument::from_complex(k)).unwrap()
}

fn named_text(name: &str) -> String {
    let (_, k) = named().into_iter().find(|(n, _)| n == name).unwrap();
    doc_text(&k)
}

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_srlim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // Argument errors exit before stdin is read, so the pipe may be closed.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn result_of(stdout: &str) -> serde_json::Value {
    serde_json::from_str::<serde_json::Value>(stdout).unwrap()["result"].clone()
}

fn arb_document() -> impl Strategy<Value = ComplexDocument> {
    (1usize..=6)
        .prop_flat_map(|m| {
            let faces = prop::collection::vec(prop::collection::btree_set(0..m, 0..=m), 0..5);
            (Just(m), faces, any::<u64>())
        })
        .prop_map(|(m, faces, salt)| {
            let mut vertices: Vec<String> = (0..m).map(|i| format!("{}", i * 7 % 11)).collect();
            vertices.rotate_left((salt % m as u64) as usize);
            let facets = faces
                .into_iter()
                .map(|f| f.into_iter().rev().map(|i| vertices[i].clone()).collect())
                .collect();
            ComplexDocument { vertices, facets }
        })
}

proptest! {
    #[test]
    fn normal_form_round_trips(doc in arb_document()) {
        let n = doc.normalized().unwrap();
        let reparsed = ComplexDocument::parse(&n.canonical_json()).unwrap();
        prop_assert_eq!(&reparsed, &n);
        prop_assert_eq!(reparsed.normalized().unwrap(), n.clone());
        prop_assert_eq!(reparsed.to_complex().unwrap(), doc.to_complex().unwrap());
    }

    #[test]
    fn digest_ignores_presentation_order(doc in arb_document()) {
        let mut shuffled = doc.clone();
        shuffled.vertices.reverse();
        shuffled.facets.reverse();
        for f in &mut shuffled.facets {
            f.reverse();
        }
        prop_assert_eq!(doc.normalized().unwrap().digest(), shuffled.normalized().unwrap().digest());
    }
}

#[test]
fn identical_runs_give_identical_reports() {
    for (_, k) in named() {
        let text = doc_text(&k);
        for args in [
            vec!["srlim", "bk-table", "--coeffs", "Z", "--jmax", "2"],
            vec!["srlim", "aut-gens"],
            vec!["srlim", "kan-check", "--coeffs", "F3"],
        ] {
            let cli = Cli::try_parse_from(&args).unwrap();
            let a = run(&cli, &text).unwrap().report.render();
            let b = run(&cli, &text).unwrap().report.render();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn echo_omits_threads_and_file() {
    let a = Cli::try_parse_from(["srlim", "verify-all", "--threads", "4"]).unwrap();
    let b = Cli::try_parse_from(["srlim", "--file", "x.json", "verify-all"]).unwrap();
    assert_eq!(a.echo(), "srlim verify-all");
    assert_eq!(a.echo(), b.echo());
    let c = Cli::try_parse_from(["srlim", "higher-lim", "--coeffs", "F2"]).unwrap();
    assert_eq!(c.echo(), "srlim higher-lim --coeffs F2 --degree 1 --imax 5");
}

#[test]
fn triangle_boundary_table() {
    let (code, out, _) = invoke(
        &["bk-table", "--coeffs", "Q", "--jmax", "3", "--imax", "4"],
        &named_text("triangle-boundary"),
    );
    assert_eq!(code, EXIT_OK);
    let rows = result_of(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let q = row["q"].as_u64().unwrap();
        let cells: Vec<String> = row["lim"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().to_string())
            .collect();
        let expected_first = match q {
            0 => "R^1",
            2 => "R^3",
            4 => "R^6",
            6 => "R^9",
            _ => "0",
        };
        assert_eq!(cells[0], expected_first);
        assert!(cells[1..].iter().all(|c| c == "0"));
    }
}

#[test]
fn pentagon_is_not_a_complete_intersection() {
    let (code, out, _) = invoke(&["ci"], &named_text("5-cycle"));
    assert_eq!(code, EXIT_OK);
    let r = result_of(&out);
    assert_eq!(r["complete_intersection"], false);
    let pair = r["witness"]["overlapping_nonfaces"].as_array().unwrap();
    let a: Vec<&str> = pair[0]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let b: Vec<&str> = pair[1]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(a.iter().any(|v| b.contains(v)));

    let (code, _, _) = invoke(&["model"], &named_text("5-cycle"));
    assert_eq!(code, EXIT_CHECK_FAILED);
}

#[test]
fn degree_zero_hilbert_coefficient() {
    for (_, k) in acceptance_corpus().into_iter().step_by(17) {
        let cli = Cli::try_parse_from(["srlim", "hilbert", "--max-degree", "0"]).unwrap();
        let o = run(&cli, &doc_text(&k)).unwrap();
        assert_eq!(o.report.result["values"], serde_json::json!([1]));
    }
}

#[test]
fn square_model_and_automorphisms() {
    let text = named_text("4-cycle");
    let (code, out, _) = invoke(&["model"], &text);
    assert_eq!(code, EXIT_OK);
    let gens = result_of(&out)["generators"].as_array().unwrap().clone();
    let odd: Vec<(u64, String)> = gens
        .iter()
        .filter(|g| g["odd"] == true)
        .map(|g| {
            (
                g["degree"].as_u64().unwrap(),
                g["differential"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(odd, vec![(3, "1*3".to_string()), (3, "2*4".to_string())]);

    let (code, out, _) = invoke(&["koszul-check"], &text);
    assert_eq!(code, EXIT_OK);
    assert_eq!(result_of(&out)["passed"], true);

    let (code, out, _) = invoke(&["aut-gens"], &text);
    assert_eq!(code, EXIT_OK);
    assert_eq!(result_of(&out)["permutation_group_order"], 8);
}

#[test]
fn checks_pass_on_named_complexes() {
    for (name, k) in named() {
        let text = doc_text(&k);
        for cmd in ["fat-check", "twin-check", "kan-check", "verify-all"] {
            let (code, out, err) = invoke(&[cmd, "--coeffs", "Z"], &text);
            assert_eq!(code, EXIT_OK, "{cmd} on {name}: {err}");
            assert_eq!(result_of(&out)["passed"], true);
        }
    }
}

#[test]
fn input_errors_exit_with_two() {
    let cases = [
        r#"{"vertices":["1"],"facets":[["1"]],"extra":0}"#,
        r#"{"vertices":["1"],"facets":[["2"]]}"#,
        r#"{"vertices":["1","1"],"facets":[]}"#,
        r#"{"vertices":["1"],"facets":[["1","1"]]}"#,
        "not json",
    ];
    for text in cases {
        let (code, out, err) = invoke(&["faces"], text);
        assert_eq!(code, EXIT_INPUT_ERROR, "{text}");
        assert!(out.is_empty());
        assert!(err.starts_with("error:"));
    }
    let (code, _, _) = invoke(&["faces", "--coeffs", "F6"], &named_text("triangle"));
    assert_eq!(code, EXIT_INPUT_ERROR);
    let (code, _, _) = invoke(&["faces", "--coeffs", "R"], &named_text("triangle"));
    assert_eq!(code, EXIT_INPUT_ERROR);
}

#[test]
fn faces_of_the_triangle() {
    let (code, out, _) = invoke(&["faces"], &named_text("triangle"));
    assert_eq!(code, EXIT_OK);
    let r = result_of(&out);
    assert_eq!(r["f_vector"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(r["facets"], serde_json::json!([["1", "2", "3"]]));
    let (_, out, _) = invoke(&["nonfaces"], &named_text("two-disjoint-edges"));
    assert_eq!(
        result_of(&out)["minimal_nonfaces"],
        serde_json::json!([["1", "3"], ["1", "4"], ["2", "3"], ["2", "4"]])
    );
}
