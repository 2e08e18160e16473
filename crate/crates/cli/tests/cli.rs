use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boson-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("{key} missing in\n{text}"))
}

#[test]
fn bounds_kratzer_example() {
    let o = run(&[
        "bounds",
        "--potential",
        "kratzer",
        "--lambda",
        "1",
        "--mu",
        "1",
        "--d",
        "3",
        "--v",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(value(&text, "lower"), -0.25);
    assert!((value(&text, "upper_gaussian") + 4.0 / (5.5 * std::f64::consts::PI)).abs() < 1e-12);
}

#[test]
fn bounds_collapse_and_phi() {
    let text = stdout(&run(&[
        "bounds",
        "--potential",
        "oscillator",
        "--mu",
        "0",
        "--v",
        "4",
    ]));
    assert!((value(&text, "lower") - 6.0).abs() < 1e-12);
    assert!((value(&text, "upper_gaussian") - 6.0).abs() < 1e-12);

    let text = stdout(&run(&[
        "bounds",
        "--potential",
        "oscillator",
        "--v",
        "2",
        "--phi",
    ]));
    assert!((value(&text, "q_opt") - 2.8593).abs() < 0.005);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["bounds", "--potential", "kratzer"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["bounds", "--potential", "morse", "--v", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bounds", "--potential", "kratzer", "--v", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["physical", "--v0", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["physical", "--n", "1", "--v0", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "sweep",
            "--potential",
            "kratzer",
            "--v-min",
            "3",
            "--v-max",
            "2",
            "--steps",
            "4"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn physical_window() {
    let text = stdout(&run(&["physical", "--n", "100", "--v0", "0.04"]));
    assert!((value(&text, "v") - 2.0).abs() < 1e-12);
    assert!((value(&text, "energy_lower") - 99.0 * 7.07107).abs() < 99.0 * 1e-5);
    assert!((value(&text, "energy_upper") - 99.0 * 8.12404).abs() < 99.0 * 1e-5);
}

#[test]
fn physical_delta() {
    let o = run(&["physical", "--n", "2", "--v0", "2", "--potential", "delta"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "energy_exact"), -1.0);
}

#[test]
fn sweep_endpoints_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let p = path.to_str().unwrap();
    let args = [
        "sweep",
        "--potential",
        "oscillator",
        "--v-min",
        "5",
        "--v-max",
        "10",
        "--steps",
        "2",
        "--out",
        p,
    ];
    assert!(run(&args).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(run(&args).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());

    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "v,F2_lower,FG_upper,Fphi_upper,q_opt,b_opt,sigma2"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("5,"));
    assert!(lines[2].starts_with("10,"));
}

#[test]
fn sweep_with_phi_is_ordered_and_json_matches_csv() {
    let base = [
        "sweep",
        "--potential",
        "oscillator",
        "--v-min",
        "2",
        "--v-max",
        "20",
        "--steps",
        "10",
        "--phi",
    ];
    let csv = stdout(&run(&base));
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&json_args))).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(json["config"]["steps"], 10);

    let csv_rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(csv_rows.len(), 10);
    assert_eq!(rows.len(), 10);
    let keys = [
        "v",
        "F2_lower",
        "FG_upper",
        "Fphi_upper",
        "q_opt",
        "b_opt",
        "sigma2",
    ];
    for (c, j) in csv_rows.iter().zip(rows) {
        assert!(c[1] <= c[3] && c[3] <= c[2], "{c:?}");
        for (k, x) in keys.iter().zip(c) {
            let y = j[k].as_f64().unwrap();
            assert_eq!(format!("{x:.14e}"), format!("{y:.14e}"), "{k}");
        }
    }
}

#[test]
fn sweep_to_unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("rows.csv");
    let o = run(&[
        "sweep",
        "--potential",
        "kratzer",
        "--v-min",
        "1",
        "--v-max",
        "2",
        "--steps",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_only_filters() {
    let o = run(&["verify", "--only", "delta"]);
    let text = stdout(&o);
    assert!(
        text.contains("delta F_phi(1): -0.164868 expected"),
        "{text}"
    );
    assert!(text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .all(|l| l.contains(" delta ")));
    assert!(o.status.success());

    let text = stdout(&run(&["verify", "--only", "oracle"]));
    assert!(text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .all(|l| l.contains(" oracle ")));
}

#[test]
fn verify_qcal_lists_four_values() {
    let o = run(&["verify", "--only", "qcal"]);
    let text = stdout(&o);
    let checks: Vec<&str> = text.lines().filter(|l| l.contains("q_opt(v=")).collect();
    assert_eq!(checks.len(), 4, "{text}");
}
