use std::process::{Command, Output};

fn spinav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinav")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Splits a replay command on spaces outside single quotes.
fn split_replay(cmd: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in cmd.chars() {
        match ch {
            '\'' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

#[test]
fn verify_k1_passes_and_reports_index() {
    let o = spinav(&["verify", "--k", "1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("all suites passed"));
    assert!(text.contains("subring index k=1: 16"));
}

#[test]
fn strict_promotes_index_gap() {
    let o = spinav(&["verify", "--k", "1", "--suite", "subring_index", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_report_is_written_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = spinav(&["verify", "--k", "1", "--format", "json", "--json", a.to_str().unwrap()]);
    assert!(o.status.success());
    spinav(&["verify", "--k", "1", "--json", b.to_str().unwrap()]);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, o.stdout);
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["index"]["index"], "16");
    assert_eq!(v["meta"]["seed"], 42);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["ms"].is_null()));

    let re = spinav(&["report", "--input", a.to_str().unwrap(), "--format", "json"]);
    assert!(re.status.success());
    assert_eq!(re.stdout, bytes);
}

#[test]
fn timings_are_opt_in() {
    let o = spinav(&["verify", "--k", "1", "--suite", "spinor_iso", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["suites"][0]["ms"].is_u64());
}

#[test]
fn indefinite_signature_replays_failures() {
    let o = spinav(&["verify", "--signature", "1,1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let suites = v["suites"].as_array().unwrap();
    let unitary = suites.iter().find(|s| s["name"] == "spinor_unitary").unwrap();
    assert_eq!(unitary["informational"], true);
    assert_eq!(unitary["passed"], false);
    let torus = suites.iter().find(|s| s["name"] == "translation_systems").unwrap();
    assert!(torus["skipped"].is_string());

    // each failure replays to the same verdict
    for f in unitary["failures"].as_array().unwrap() {
        let cmd = split_replay(f["inputs"]["replay"].as_str().unwrap());
        assert_eq!(cmd[0], "spinav");
        let args: Vec<&str> = cmd[1..].iter().map(String::as_str).collect();
        let r = spinav(&args);
        assert_eq!(r.status.code(), Some(1), "{args:?}");
        assert!(stdout(&r).contains("rho(u*) = rho(u)^+: false"));
    }
}

#[test]
fn act_example() {
    let o = spinav(&["act", "--k", "1", "--element", "e1*e2", "--point", "1/4, 0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("image   1/4i, 0"), "{text}");
    assert!(text.contains("M       3/4+1/4i, 0"));
    assert!(text.contains("N       3/4+3/4i, 0"));
    assert!(text.contains("system  holds"));
}

#[test]
fn act_rejects_non_integral() {
    let o = spinav(&["act", "--k", "1", "--element", "1/2*e1", "--point", "0, 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn dual_examples() {
    let o = spinav(&["dual", "--k", "1", "--bundle", "[0, 0, 1/2, 0]"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("phi^-1       1/2, 0"));
    let o = spinav(&["dual", "--k", "1", "--point", "1/4, 0", "--element", "e1*e2"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("square       commutes"));
    assert!(text.contains("system       holds"));
}

#[test]
fn torsion_count() {
    let o = spinav(&["torsion", "--k", "1", "--n", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("16 points"));
    assert_eq!(text.lines().count(), 17);
    let o = spinav(&["torsion", "--k", "3", "--n", "2", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_summary() {
    let o = spinav(&["build", "--k", "1"]);
    let text = stdout(&o);
    assert!(text.contains("blade images: rank 4 of 4"));
    assert!(text.contains("polarization type: (1, 1)"));
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(spinav(&["act", "--k", "1", "--element", "e1 *", "--point", "0, 0"]).status.code(), Some(2));
    assert_eq!(spinav(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(spinav(&["act", "--k", "1", "--element", "e1", "--point", "0"]).status.code(), Some(2));
}

#[test]
fn custom_lattice_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lattice.json");
    std::fs::write(&path, r#"[["1+i", "0"], ["0", "1+i"]]"#).unwrap();
    let o = spinav(&["act", "--lattice", path.to_str().unwrap(), "--element", "e1", "--point", "1/2, 0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // coordinates are printed on the lattice basis: 1/2 = (1+i)(1/4-1/4i)
    let text = stdout(&o);
    assert!(text.contains("point   1/4+3/4i, 0"), "{text}");
    assert!(text.contains("image   0, 1/4+3/4i"));
}

#[test]
fn signature_pins_k() {
    assert_eq!(spinav(&["build", "--k", "2", "--signature", "2,0"]).status.code(), Some(2));
    assert!(spinav(&["build", "--k", "1", "--signature", "2,0"]).status.success());
    assert!(spinav(&["build", "--signature", "2,2"]).status.success());
}
