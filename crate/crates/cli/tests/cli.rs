use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_anyondec");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .env_remove("ANYONDEC_OUT_DIR")
        .output()
        .unwrap()
}

fn physical(overrides: &str) -> String {
    let mut fields = [
        ("dielectric_constant", "10.0"),
        ("edge_velocity", "1.0e5"),
        ("splitting", "0.1"),
        ("temperature", "0.01"),
        ("antidot_separation", "1.0e-7"),
        ("qubit_edge_distance", "3.0e-6"),
        ("filling_denominator", "3"),
    ];
    for kv in overrides.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').unwrap();
        fields.iter_mut().find(|f| f.0 == k).unwrap().1 = v;
    }
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("\"{k}\": {v}"))
        .collect();
    format!("\"physical\": {{{}}}", body.join(", "))
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.json");
    fs::write(&path, format!("{{{body}}}")).unwrap();
    path
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn golden_fixtures_reproduce() {
    for cmd in ["rates", "evolve", "shorttime", "compare", "sweep"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run(&[cmd], &golden(&format!("{cmd}.config.json")), dir.path());
        assert!(
            out.status.success(),
            "{cmd}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let got = fs::read(dir.path().join(format!("{cmd}.csv"))).unwrap();
        let want = fs::read(golden(&format!("{cmd}.csv"))).unwrap();
        assert!(got == want, "{cmd}.csv differs from the golden fixture");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let config = golden("shorttime.config.json");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run(&["shorttime", "--jobs", "1"], &config, a.path())
        .status
        .success());
    assert!(run(&["shorttime", "--jobs", "4"], &config, b.path())
        .status
        .success());
    assert_eq!(
        fs::read(a.path().join("shorttime.csv")).unwrap(),
        fs::read(b.path().join("shorttime.csv")).unwrap()
    );
}

#[test]
fn rates_at_experimental_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["rates", "--format", "json"],
        &golden("rates.config.json"),
        dir.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("rates.json")).unwrap()).unwrap();
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((3e-4..=3e-3).contains(&ratio), "{ratio}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("hbar_gamma_over_omega"));
}

#[test]
fn decoupled_rates_vanish() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &physical("antidot_separation=0"));
    assert!(run(&["rates"], &config, dir.path()).status.success());
    let row = &read_csv(&dir.path().join("rates.csv"))[0];
    for (i, v) in row.iter().enumerate() {
        // ω_c does not depend on the coupling
        if i != 4 {
            assert_eq!(v.parse::<f64>().unwrap(), 0.0, "column {i}");
        }
    }
}

#[test]
fn decoupled_evolution_precesses_at_constant_purity() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{}, \"grid\": {{\"t_min\": 0, \"t_max\": 5e-9, \"points\": 200, \"spacing\": \"linear\", \"unit\": \"seconds\"}}, \
         \"integrator\": {{\"method\": {{\"kind\": \"dormand_prince\", \"rel_tol\": 1e-12, \"abs_tol\": 1e-14}}}}",
        physical("antidot_separation=0")
    );
    let config = write_config(dir.path(), &body);
    let out = run(&["evolve"], &config, dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_csv(&dir.path().join("evolve.csv"));
    let zs: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(zs.iter().any(|z| *z < -0.9), "no precession");
    for r in &rows {
        let p: f64 = r[4].parse().unwrap();
        assert!((p - 1.0).abs() < 1e-10);
    }
}

#[test]
fn steady_start_stays_put() {
    let dir = tempfile::tempdir().unwrap();
    // T = 0 fixes x at 1
    let body = format!(
        "{}, \"initial_state\": {{\"x\": 1, \"y\": 0, \"z\": 0}}, \"grid\": {{\"t_min\": 0, \"t_max\": 20, \"points\": 50, \"spacing\": \"linear\"}}",
        physical("temperature=0")
    );
    let config = write_config(dir.path(), &body);
    assert!(run(&["evolve"], &config, dir.path()).status.success());
    for r in read_csv(&dir.path().join("evolve.csv")) {
        assert_eq!(&r[1..], ["1e0", "0e0", "0e0", "1e0"]);
    }
}

#[test]
fn shorttime_starts_pure_and_labels_regimes() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{}, \"grid\": {{\"t_min\": 0, \"t_max\": 2e-9, \"points\": 41, \"spacing\": \"linear\", \"unit\": \"seconds\"}}",
        physical("")
    );
    let config = write_config(dir.path(), &body);
    assert!(run(&["shorttime"], &config, dir.path()).status.success());
    let text = fs::read_to_string(dir.path().join("shorttime.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t_s,regime,I_exact,I_asymptotic,B2,purity_exact,purity_asymptotic"
    );
    assert_eq!(lines.next().unwrap(), "0e0,Short,0e0,0e0,0e0,1e0,1e0");
    // 1/ω_c = 1.2e-10 s and 1/T = 7.64e-10 s at this point
    let cutoff = 1.0e5 / 12.0e-6;
    let thermal = 1.380649e-23 * 0.01 / 1.054571817e-34;
    for r in read_csv(&dir.path().join("shorttime.csv")) {
        let t: f64 = r[0].parse().unwrap();
        let want = if t < 1.0 / cutoff {
            "Short"
        } else if t < 1.0 / thermal {
            "Intermediate"
        } else {
            "Long"
        };
        assert_eq!(r[1], want, "t = {t}");
    }
}

#[test]
fn cold_shorttime_column_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{}, \"grid\": {{\"t_min\": 1e-13, \"t_max\": 1e-5, \"points\": 30, \"spacing\": \"logarithmic\", \"unit\": \"seconds\"}}",
        physical("temperature=0")
    );
    let config = write_config(dir.path(), &body);
    assert!(run(&["shorttime"], &config, dir.path()).status.success());
    let cutoff = 1.0e5 / 12.0e-6;
    for r in read_csv(&dir.path().join("shorttime.csv")) {
        let t: f64 = r[0].parse().unwrap();
        let i: f64 = r[2].parse().unwrap();
        let want = 0.25 * (4.0 * (cutoff * t).powi(2)).ln_1p();
        assert!((i / want - 1.0).abs() < 1e-8, "t = {t}");
    }
}

#[test]
fn compare_writes_three_labelled_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["compare", "--threshold", "0.01"],
        &golden("compare.config.json"),
        dir.path(),
    );
    assert!(out.status.success());
    // the golden config disables the plot
    assert!(!dir.path().join("compare.svg").exists());
    let body = format!("{}, \"grid\": {{\"points\": 50}}", physical(""));
    let config = write_config(dir.path(), &body);
    assert!(run(&["compare"], &config, dir.path()).status.success());
    let svg = fs::read_to_string(dir.path().join("compare.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
    for label in [
        "Markovian",
        "short-time (quadrature)",
        "short-time (asymptotic)",
    ] {
        assert!(svg.contains(&format!("data-label=\"{label}\"")));
    }
    let rows = read_csv(&dir.path().join("compare.csv"));
    assert_eq!(rows.len(), 50);
}

#[test]
fn filling_sweep_scales_as_inverse_cube() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{}, \"sweep\": {{\"parameter\": \"filling_denominator\", \"values\": [6, 3], \"quantity\": {{\"kind\": \"gamma\"}}}}",
        physical("")
    );
    let config = write_config(dir.path(), &body);
    assert!(run(&["sweep", "--jobs", "2"], &config, dir.path())
        .status
        .success());
    let rows = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!((rows[0][1].as_str(), rows[1][1].as_str()), ("3e0", "6e0"));
    let g3: f64 = rows[0][4].parse().unwrap();
    let g6: f64 = rows[1][4].parse().unwrap();
    assert!((g3 / g6 - 8.0).abs() < 1e-12);
}

#[test]
fn edge_distance_sweep_is_monotone() {
    let rows = read_csv(&golden("sweep.csv"));
    let gammas: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(gammas.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn purity_sweep_has_both_curves() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "{}, \"sweep\": {{\"parameter\": \"temperature\", \"values\": [0, 0.01, 0.1], \"quantity\": {{\"kind\": \"purity_at_time\", \"time\": 1e-7}}}}",
        physical("")
    );
    let config = write_config(dir.path(), &body);
    assert!(run(&["sweep"], &config, dir.path()).status.success());
    let rows = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0][3], "purity_markovian");
    assert_eq!(rows[1][3], "purity_shorttime");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let bad_key = write_config(dir.path(), &format!("{}, \"grd\": {{}}", physical("")));
    let out = run(&["rates"], &bad_key, dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grd"));

    let biased = dir.path().join("biased.json");
    fs::write(
        &biased,
        fs::read_to_string(&bad_key)
            .unwrap()
            .replace(", \"grd\": {}", "")
            .replace(
                "\"filling_denominator\": 3",
                "\"filling_denominator\": 3, \"bias\": 0.01",
            ),
    )
    .unwrap();
    assert_eq!(run(&["rates"], &biased, dir.path()).status.code(), Some(2));

    let missing = dir.path().join("absent.json");
    assert_eq!(run(&["rates"], &missing, dir.path()).status.code(), Some(4));

    // ω_c t far beyond what the oscillatory quadrature resolves
    let far = write_config(
        dir.path(),
        &format!(
            "{}, \"grid\": {{\"t_min\": 1e-3, \"t_max\": 1.0, \"points\": 5, \"unit\": \"seconds\"}}",
            physical("")
        ),
    );
    assert_eq!(run(&["shorttime"], &far, dir.path()).status.code(), Some(3));

    let blocked = dir.path().join("file");
    fs::write(&blocked, "").unwrap();
    let ok = golden("rates.config.json");
    assert_eq!(run(&["rates"], &ok, &blocked).status.code(), Some(4));
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(BIN)
        .args(["rates", "--config"])
        .arg(golden("rates.config.json"))
        .env("ANYONDEC_OUT_DIR", dir.path())
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(dir.path().join("rates.csv").exists());
}
