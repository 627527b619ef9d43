use noneq_cli::{run, EXIT_FALSE, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE};
use noneq_core::criterion::expected_pattern;
use noneq_core::free_product::FactorSpec;
use noneq_core::witness::{CertificateReport, WitnessReport};
use noneq_core::FreeWord;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn noneq(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("noneq").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn witness_json_report() {
    let (code, out, _) = noneq(&["witness", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    let report: WitnessReport = serde_json::from_str(&out).unwrap();
    assert!(report.pattern_ok);
    assert_eq!(report.cells.len(), 16);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cell = &value["cells"][1];
    assert_eq!(cell["a"], serde_json::json!([1, 1]));
    assert_eq!(cell["b"], serde_json::json!([1, 2]));
    assert_eq!(cell["certificate"]["type"], "falsified");
    assert_eq!(cell["certificate"]["u"], "e2");
    assert_eq!(cell["certificate"]["v"], "e3^-1");
}

#[test]
fn witness_table_and_json_agree() {
    let (_, json, _) = noneq(&["witness", "--n", "3"]);
    let (code, table, _) = noneq(&["witness", "--n", "3", "--format", "table"]);
    assert_eq!(code, EXIT_OK);
    let report: WitnessReport = serde_json::from_str(&json).unwrap();
    let rendered = expected_pattern(3).unwrap().render();
    assert!(table.contains(&rendered));
    let cell_lines: Vec<&str> = table.lines().filter(|l| l.starts_with('a')).collect();
    assert_eq!(cell_lines.len(), report.cells.len());
    for (line, cell) in cell_lines.iter().zip(&report.cells) {
        let head = format!("a{}{} b{}{}  {}", cell.a[0], cell.a[1], cell.b[0], cell.b[1], u8::from(cell.sat));
        assert!(line.starts_with(&head), "{line} vs {head}");
        match &cell.certificate {
            CertificateReport::Falsified { u, v } => {
                assert!(line.contains(&format!("falsified u = {u}, v = {v}")))
            }
            CertificateReport::Satisfied { .. } => assert!(line.contains("satisfied")),
            CertificateReport::Undecided {} => panic!("undecided cell"),
        }
    }
}

#[test]
fn witness_jobs_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w3.json");
    let (code, out, _) = noneq(&["witness", "--n", "3", "--jobs", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("pattern verified"));
    let parallel: WitnessReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (_, seq, _) = noneq(&["witness", "--n", "3", "--jobs", "1"]);
    let seq: WitnessReport = serde_json::from_str(&seq).unwrap();
    let strip = |r: &WitnessReport| -> Vec<_> {
        r.cells.iter().map(|c| (c.a, c.b, c.sat, c.certificate.clone(), c.basis_ok)).collect()
    };
    assert_eq!(strip(&parallel), strip(&seq));
}

#[test]
fn witness_undecided_with_zero_bound() {
    let (code, out, _) = noneq(&["witness", "--n", "2", "--search-bound", "0"]);
    assert_eq!(code, EXIT_UNDECIDED);
    let report: WitnessReport = serde_json::from_str(&out).unwrap();
    assert!(report.cells.iter().any(|c| c.certificate == CertificateReport::Undecided {}));
}

#[test]
fn witness_rejects_zero_and_unknown_flags() {
    assert_eq!(noneq(&["witness", "--n", "0"]).0, EXIT_USAGE);
    assert_eq!(noneq(&["witness", "--n", "2", "--frobnicate"]).0, EXIT_USAGE);
    assert_eq!(noneq(&["witness", "--n", "2", "--format", "xml"]).0, EXIT_USAGE);
    assert_eq!(noneq(&[]).0, EXIT_USAGE);
    assert_eq!(noneq(&["--help"]).0, EXIT_OK);
}

#[test]
fn primitive_command() {
    let (code, out, _) = noneq(&["primitive", "e1^5 e2^4", "--rank", "2"]);
    assert_eq!((code, out.trim()), (EXIT_FALSE, "not primitive in F2"));
    let (code, out, _) = noneq(&["primitive", "e1^3 e2", "--rank", "2"]);
    assert_eq!(code, EXIT_OK);
    let last = out.lines().last().unwrap();
    let image: FreeWord = last.trim_start_matches("reduces to ").parse().unwrap();
    assert_eq!(image.len(), 1);
    let (code, _, err) = noneq(&["primitive", "e3", "--rank", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("exceeds rank"));
}

#[test]
fn parse_errors_carry_positions() {
    let (code, _, err) = noneq(&["reduce", "e1 e2^x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column"), "{err}");
    let (code, _, err) = noneq(&["nf", "Z2.1 Z4.1", "--factors", &data("z2z3.json")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 6"), "{err}");
}

#[test]
fn reduce_and_round_trip() {
    let (code, out, _) = noneq(&["reduce", "e1 e2 e2^-1 e1 e3^2 * e3^-1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "e1^2 e3");
    let reparsed = noneq(&["reduce", out.trim()]).1;
    assert_eq!(reparsed, out);
    assert_eq!(noneq(&["reduce", ""]).1.trim(), "1");
}

#[test]
fn normal_forms_and_inline_specs() {
    let (code, out, _) = noneq(&["nf", "Z2.1 Z2.1 Z3.1 Z3.1 Z2.1", "--factors", &data("z2z3.json")]);
    assert_eq!((code, out.trim()), (EXIT_OK, "Z3.2 Z2.1"));
    let inline = std::fs::read_to_string(data("z3f2.json")).unwrap();
    let (code, out, _) = noneq(&["nf", "e1 e2 * e2^-1 Z3.1 Z3.1", "--factors", &inline]);
    assert_eq!((code, out.trim()), (EXIT_OK, "e1 Z3.2"));
    // The spec files themselves load and round-trip.
    let spec = FactorSpec::from_json(&inline).unwrap();
    assert_eq!(FactorSpec::from_factor(&noneq_core::free_product::Factor::Product(spec.build_product().unwrap())), spec);
    let (code, _, err) = noneq(&["nf", "Z2.1", "--factors", "/nonexistent/spec.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("/nonexistent/spec.json"));
}

#[test]
fn roots() {
    assert_eq!(noneq(&["root", "e1^2 e2 e1^2 e2", "--q", "2"]).1.trim(), "e1^2 e2");
    assert_eq!(noneq(&["root", "e1 e2", "--q", "2"]).0, EXIT_FALSE);
    let (code, out, _) = noneq(&["root", "Z3.1 e1 Z3.1 e1", "--q", "2", "--factors", &data("z3f1.json")]);
    assert_eq!((code, out.trim()), (EXIT_OK, "Z3.1 e1"));
    let (code, out, _) = noneq(&["root", "1", "--q", "3", "--factors", &data("z3f1.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1\nconjugates of Z3.1\nconjugates of Z3.2\n");
    assert_eq!(noneq(&["root", "e1", "--q", "0"]).0, EXIT_USAGE);
}

#[test]
fn tree_commands() {
    let spec = data("z2z3.json");
    let (code, out, _) = noneq(&["tree", "dist", "1.G1", "Z3.1.G1", "--factors", &spec, "--path"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "2\n1 . G1\n1 . G2\nZ3.1 . G1\n");
    // Printed vertices parse back, with factor names as side labels too.
    let (_, out, _) = noneq(&["tree", "dist", "Z3.1 . G1", "Z3.1 Z2.1.Z3", "--factors", &spec]);
    assert_eq!(out.trim(), "1");

    let (_, out, _) = noneq(&["tree", "classify", "Z2.1 Z3.1", "--factors", &spec]);
    assert_eq!(out.trim(), "hyperbolic, translation length 2");
    let (_, out, _) = noneq(&["tree", "classify", "Z2.1 Z3.1 Z2.1", "--factors", &spec]);
    assert_eq!(out.trim(), "elliptic, fixes Z2.1 . G2");
    let (_, out, _) = noneq(&["tree", "classify", "1", "--factors", &spec]);
    assert_eq!(out.trim(), "elliptic, fixes every vertex");

    let (code, out, _) = noneq(&["tree", "axis", "Z2.1 Z3.1", "--copies", "2", "--factors", &spec]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2 * 2 * 2 + 1);
    assert_eq!(noneq(&["tree", "axis", "Z2.1", "--factors", &spec]).0, EXIT_USAGE);
    assert_eq!(noneq(&["tree", "dist", "1.G3", "1.G1", "--factors", &spec]).0, EXIT_USAGE);
    assert_eq!(noneq(&["tree", "dist", "1", "1.G1", "--factors", &spec]).0, EXIT_USAGE);
    // Three factors have no two-sided tree.
    let three = r#"{"type":"product","factors":[{"type":"free","rank":1,"prefix":"a"},{"type":"free","rank":1,"prefix":"b"},{"type":"free","rank":1,"prefix":"c"}]}"#;
    assert_eq!(noneq(&["tree", "classify", "a1", "--factors", three]).0, EXIT_USAGE);
}

#[test]
fn search_command() {
    let spec = data("z3f2.json");
    let alphabet = "Z3.1,Z3.2,e1,e1^-1,e2,e2^-1";
    let (code, out, _) = noneq(&[
        "search", "--target", "e1", "--p", "5", "--q", "4", "--syl-bound", "2", "--factors", &spec,
        "--alphabet", alphabet,
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("no decomposition"));
    let (code, out, _) = noneq(&[
        "search", "--target", "e1 e1 e2 e1 e2 e2^4", "--p", "2", "--q", "1", "--syl-bound", "1",
        "--factors", &spec, "--alphabet", alphabet,
    ]);
    assert_eq!(code, EXIT_FALSE, "{out}");
    assert!(out.starts_with("u = "));
    let (code, _, err) = noneq(&[
        "search", "--target", "e1", "--p", "5", "--q", "4", "--syl-bound", "2", "--factors", &spec,
        "--alphabet", "Z3.1,Z3.0",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("identity"));
}

#[test]
fn pattern_check() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, expected_pattern(3).unwrap().to_json()).unwrap();
    let (code, out, _) = noneq(&["pattern", "check", good.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("pattern verified for n = 3"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":1,"cells":[[[1,1],[1,1],false]]}"#).unwrap();
    assert_eq!(noneq(&["pattern", "check", bad.to_str().unwrap()]).0, EXIT_FALSE);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"n\": 1,").unwrap();
    assert_eq!(noneq(&["pattern", "check", broken.to_str().unwrap()]).0, EXIT_USAGE);
}
