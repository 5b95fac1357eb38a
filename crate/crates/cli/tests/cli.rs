use std::process::Command as Process;

use latdefect_cli::{parse_input, recheck, run, Command, InputDocument, ReportDocument};

const REMARK: &str = r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[2,0]]},{"points":[[0,0],[0,1],[0,2]]}]}"#;
const SIMPLICES: &str =
    r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1]]},{"points":[[0,0],[1,0],[0,1]]}]}"#;
const TRIPLE: &str = r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[3,0],[0,3]]}]}"#;
const TWICE: &str = r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[2,0],[0,1],[1,1],[0,2]]}]}"#;

fn doc(s: &str) -> InputDocument {
    parse_input(s.as_bytes()).unwrap()
}

#[test]
fn parses_the_documented_examples() {
    let d = doc(REMARK);
    assert_eq!(d.ambient_dim, 2);
    assert_eq!(d.configurations[1].points, vec![vec![0, 0], vec![0, 1], vec![0, 2]]);
    assert!(d.warnings.is_empty());

    let d = doc(r#"{"ambient_dim":1,"configurations":[{"points":[[0],[1]]}]}"#);
    assert_eq!(d.family().unwrap().members()[0].len(), 2);

    let d = doc(r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[0,0],[1,1]]}]}"#);
    assert_eq!(d.configurations[0].points, vec![vec![0, 0], vec![1, 1]]);
    assert_eq!(d.warnings.len(), 1);
    assert!(d.warnings[0].contains("configurations[0].points[1]"));
}

#[test]
fn input_errors_carry_a_locus() {
    let e = parse_input(b"{\"ambient_dim\":2,\n\"configurations\":[{\"points\":[[0,0],[1.5,0]]}]}").unwrap_err();
    assert_eq!(e.line, Some(2));
    assert_eq!(e.field.as_deref(), Some("configurations[0].points[1][0]"));

    let e = parse_input(br#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1]]}]}"#).unwrap_err();
    assert_eq!(e.field.as_deref(), Some("configurations[0].points[1]"));

    let e = parse_input(br#"{"ambient_dim":2,"configurations":[{"points":[]}]}"#).unwrap_err();
    assert_eq!(e.field.as_deref(), Some("configurations[0].points"));

    let e = parse_input(br#"{"ambient_dim":2,"configurations":[]}"#).unwrap_err();
    assert_eq!(e.field.as_deref(), Some("configurations"));

    let e = parse_input(b"{\"ambient_dim\":2,").unwrap_err();
    assert_eq!(e.line, Some(1));
}

#[test]
fn input_round_trip() {
    for s in [
        REMARK,
        SIMPLICES,
        TRIPLE,
        r#"{"ambient_dim":2,"configurations":[{"label":"A","points":[[0,0],[0,0],[1,1]]}]}"#,
    ] {
        let d = doc(s);
        let again = parse_input(d.to_json().as_bytes()).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.hash(), d.hash());
    }
}

fn all_commands() -> Vec<(Command, &'static str)> {
    vec![
        (Command::Spanning, REMARK),
        (Command::MixedVolume, REMARK),
        (Command::MixedVolume, SIMPLICES),
        (Command::InteriorPoints { lambda: false }, REMARK),
        (Command::InteriorPoints { lambda: true }, TRIPLE),
        (Command::Codegree, SIMPLICES),
        (Command::Width, TWICE),
        (Command::CayleySum, REMARK),
        (Command::CayleyDetect { k: 1 }, r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1],[1,1]]}]}"#),
        (Command::JoinType, REMARK),
        (
            Command::FiSearch { entry_bound: 1, c_max: 1 },
            r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1]]}]}"#,
        ),
        (
            Command::Defective {
                lambda: false,
                entry_bound: 1,
                c_max: 1,
                fi_search: true,
            },
            TWICE,
        ),
        (
            Command::Defective {
                lambda: false,
                entry_bound: 1,
                c_max: 1,
                fi_search: true,
            },
            SIMPLICES,
        ),
        (
            Command::Defective {
                lambda: true,
                entry_bound: 1,
                c_max: 1,
                fi_search: true,
            },
            REMARK,
        ),
        (Command::OracleEhrhart, TWICE),
        (
            Command::OracleWitness {
                samples: 200,
                seed: 11,
                free_coefficient: true,
            },
            r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1]]},{"points":[[0,0],[2,0],[0,2],[1,1]]}]}"#,
        ),
    ]
}

#[test]
fn reports_round_trip_and_recheck() {
    for (command, input) in all_commands() {
        let input = doc(input);
        let report = match run(&command, &input) {
            Ok(r) => r,
            Err(e) => {
                assert_eq!(e.exit_code(), 2, "{}: {e}", command.name());
                continue;
            }
        };
        let parsed = ReportDocument::from_json(&report.to_json()).unwrap();
        assert_eq!(parsed, report, "{}", command.name());
        let replay = recheck(&parsed, &input).unwrap();
        assert!(replay.ok, "{}: {replay:?}", command.name());
        assert!(replay.checks.len() >= 2, "{}: {replay:?}", command.name());
    }
}

#[test]
fn certificates_from_search_verify() {
    let input = doc(r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1]]}]}"#);
    let report = run(&Command::FiSearch { entry_bound: 1, c_max: 1 }, &input).unwrap();
    assert_eq!(report.values["found"], serde_json::json!(true));
    let certificate = serde_json::from_value(report.evidence["certificate"].clone()).unwrap();
    let verified = run(&Command::FiVerify { certificate }, &input).unwrap();
    assert_eq!(verified.values["holds"], serde_json::json!(true));
    assert!(recheck(&verified, &input).unwrap().ok);

    let twice = doc(TWICE);
    let report = run(&Command::FiSearch { entry_bound: 2, c_max: 1 }, &twice).unwrap();
    assert_eq!(report.values["found"], serde_json::json!(false));
    assert!(report.evidence["search_space"]["projections_tried"].as_u64().unwrap() > 0);
}

#[test]
fn tampered_evidence_fails_recheck() {
    let input = doc(TWICE);
    let mut report = run(
        &Command::Defective {
            lambda: false,
            entry_bound: 1,
            c_max: 1,
            fi_search: true,
        },
        &input,
    )
    .unwrap();
    assert_eq!(report.rule.as_deref(), Some("LatticeWidthRule"));
    report.evidence["lattice_width"]["direction"] = serde_json::json!([1, 2]);
    assert!(!recheck(&report, &input).unwrap().ok);

    let input = doc(SIMPLICES);
    let mut report = run(&Command::MixedVolume, &input).unwrap();
    report.evidence["polarization"]["terms"][2]["magnitude"] = serde_json::json!(6);
    assert!(!recheck(&report, &input).unwrap().ok);

    let other = doc(REMARK);
    let report = run(&Command::Spanning, &input).unwrap();
    assert!(!recheck(&report, &other).unwrap().ok);
}

#[test]
fn witness_reports_replay() {
    let input = doc(
        r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1,0],[0,1]]},{"points":[[0,0],[2,0],[0,2],[1,1]]}]}"#,
    );
    let command = Command::OracleWitness {
        samples: 200,
        seed: 1,
        free_coefficient: true,
    };
    let report = run(&command, &input).unwrap();
    assert_eq!(report.seed, Some(1));
    assert_eq!(report.values["found"], serde_json::json!(true));
    let mut parsed = ReportDocument::from_json(&report.to_json()).unwrap();
    assert!(recheck(&parsed, &input).unwrap().ok);
    parsed.evidence["witness"]["u"][0][0] = serde_json::json!(0.5);
    assert!(!recheck(&parsed, &input).unwrap().ok);
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_latdefect"))
}

fn write(name: &str, content: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("latdefect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn binary_exit_codes() {
    let simplices = write("simplices.json", SIMPLICES);
    let out = bin().args(["defective", simplices.to_str().unwrap(), "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = ReportDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report.verdict.as_deref(), Some("Defective"));
    assert_eq!(report.values["simplex_family"], serde_json::json!(true));

    let saved = write("report.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = bin()
        .args(["defective", simplices.to_str().unwrap(), "--recheck", saved.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let bad = write("bad.json", r#"{"ambient_dim":2,"configurations":[{"points":[[0,0],[1]]}]}"#);
    let out = bin().args(["spanning", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("configurations[0].points[1]"));

    let triple = write("triple.json", TRIPLE);
    let out = bin().args(["mixed-volume", triple.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k = n−1"));
}
