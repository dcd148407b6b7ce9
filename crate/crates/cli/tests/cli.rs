use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use spike_tyke::PhysicalConstants;
use spike_tyke_cli::svg::{Plot, Series, Style};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_spike-tyke");

fn run(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn spike-tyke");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn floats(rows: &[Vec<String>], col: usize) -> Vec<f64> {
    rows.iter().map(|r| r[col].parse().unwrap()).collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

#[test]
fn planck_default_writes_three_curves() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["planck", "--output", "curve.csv"]).0, 0);
    for t in ["4500", "6000", "7500"] {
        let (header, rows) = read_csv(&dir.path().join(format!("curve_{t}K.csv")));
        assert_eq!(header, ["wavelength_m", "intensity"]);
        assert_eq!(rows.len(), 300);
    }
}

#[test]
fn planck_single_sample() {
    let dir = TempDir::new().unwrap();
    let code = run(
        dir.path(),
        &["planck", "--temperatures", "6000", "--count", "1", "--output", "one.csv"],
    )
    .0;
    assert_eq!(code, 0);
    let (_, rows) = read_csv(&dir.path().join("one.csv"));
    assert_eq!(rows.len(), 1);
}

#[test]
fn planck_csv_round_trips_into_identical_plot() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["planck", "--temperatures", "5000", "--output", "c.csv"]);
    let json_path = dir.path().join("c.json");
    run(
        dir.path(),
        &["planck", "--temperatures", "5000", "--format", "json", "--output", "c.json"],
    );
    let (_, rows) = read_csv(&dir.path().join("c.csv"));
    let doc = json(&json_path);
    let curve = &doc["curves"][0];
    let wl: Vec<f64> = floats(&rows, 0);
    let iv: Vec<f64> = floats(&rows, 1);
    for (i, (w, v)) in wl.iter().zip(&iv).enumerate() {
        assert_eq!(w.to_bits(), curve["wavelength_m"][i].as_f64().unwrap().to_bits());
        assert_eq!(v.to_bits(), curve["intensity"][i].as_f64().unwrap().to_bits());
    }
    let plot = |points: Vec<(f64, f64)>| {
        Plot {
            title: "t".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "s".into(),
                points,
                style: Style::Line,
            }],
        }
        .render()
    };
    let original = spike_tyke::sample_curve(
        &spike_tyke::WavelengthGrid::REFERENCE,
        5000.0,
        spike_tyke::Variant::EnergyDensity,
        &PhysicalConstants::LISTING,
    )
    .unwrap();
    assert_eq!(
        plot(wl.into_iter().zip(iv).collect()),
        plot(original.wavelengths().into_iter().zip(original.values).collect())
    );
}

#[test]
fn spike_train_defaults() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["spike-train", "--output", "s.csv"]).0, 0);
    let (header, rows) = read_csv(&dir.path().join("s.csv"));
    assert_eq!(header, ["time_s", "potential_v", "segment_id"]);
    assert_eq!(rows.len(), 2400);
    assert!(rows[..300].iter().all(|r| r[1] == "0e0" && r[2] == "0"));
    assert_eq!(rows[300][2], "1");
    assert_eq!(rows[2399][2], "7");
    let t = floats(&rows, 0);
    assert!(rel_close(t[0], 3.3357e-18, 5e-5));
    assert!(t.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn spike_train_row_count_formula() {
    let dir = TempDir::new().unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for case in 0..6 {
        let count: usize = if case == 0 { 300 } else { rng.gen_range(1..120) };
        let n_temps: usize = if case == 0 { 1 } else { rng.gen_range(1..6) };
        let temps: Vec<String> = (0..n_temps)
            .map(|_| format!("{}", rng.gen_range(3000..9000)))
            .collect();
        let temps = temps.join(",");
        let count_s = count.to_string();
        let code = run(
            dir.path(),
            &["spike-train", "--temperatures", &temps, "--count", &count_s, "--output", "r.csv"],
        )
        .0;
        assert_eq!(code, 0);
        let (_, rows) = read_csv(&dir.path().join("r.csv"));
        assert_eq!(rows.len(), (1 + n_temps) * count);
    }
}

#[test]
fn spike_train_json_reports_transform() {
    let dir = TempDir::new().unwrap();
    run(
        dir.path(),
        &["spike-train", "--format", "json", "--area", "2", "--current", "4", "--output", "s.json"],
    );
    let doc = json(&dir.path().join("s.json"));
    assert_eq!(doc["config"]["area"], 2.0);
    assert_eq!(doc["config"]["current"], 4.0);
    assert_eq!(doc["prefix_length"], 300);
    assert_eq!(doc["potential_v"].as_array().unwrap().len(), 2400);
}

#[test]
fn quantize_table() {
    let dir = TempDir::new().unwrap();
    let e = "1.60218e-19";
    let code = run(
        dir.path(),
        &["quantize", "--n-min", "1", "--n-max", "5", "--charge", e, "--current", "1e-9", "--output", "q.csv"],
    )
    .0;
    assert_eq!(code, 0);
    let (header, rows) = read_csv(&dir.path().join("q.csv"));
    assert_eq!(header, ["n", "resistance_ohm", "tyke_potential_v"]);
    assert_eq!(rows.len(), 5);
    let r = floats(&rows, 1);
    for (i, &ri) in r.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!(rel_close(ri, n * 6.6261e-34 / (1.60218e-19 * 1.60218e-19), 1e-12));
    }
    assert!(r.windows(2).all(|w| w[1] > w[0]));

    run(
        dir.path(),
        &["quantize", "--n-min", "1", "--n-max", "1", "--charge", e, "--current", "1e-9", "--output", "q1.csv"],
    );
    let (_, rows) = read_csv(&dir.path().join("q1.csv"));
    assert_eq!(rows.len(), 1);
    let smallest = spike_tyke::smallest_resistance(1.60218e-19, &PhysicalConstants::LISTING).unwrap();
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), smallest);
    let tyke = spike_tyke::tyke_potential(1e-9, 1.60218e-19, &PhysicalConstants::LISTING).unwrap();
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), tyke.potential);
}

#[test]
fn quantize_requires_charge_and_valid_range() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["quantize", "--current", "1", "--output", "q.csv"]).0, 2);
    let code = run(
        dir.path(),
        &["quantize", "--n-min", "0", "--charge", "1e-19", "--current", "1", "--output", "q.csv"],
    )
    .0;
    assert_eq!(code, 2);
    let code = run(
        dir.path(),
        &["quantize", "--charge", "0", "--current", "1", "--output", "q.csv"],
    )
    .0;
    assert_eq!(code, 2);
}

fn stdp_rows(dir: &Path, pairs: &str) -> (i32, String, Vec<Vec<String>>) {
    std::fs::write(dir.join("pairs.csv"), pairs).unwrap();
    let (code, err) = run(
        dir,
        &["stdp", "--pairs", "pairs.csv", "--mu", "0.1", "--tau-d", "0.01", "--w0", "0.5", "--output", "w.csv"],
    );
    let rows = if code == 0 {
        read_csv(&dir.join("w.csv")).1
    } else {
        Vec::new()
    };
    (code, err, rows)
}

#[test]
fn stdp_trajectories() {
    let dir = TempDir::new().unwrap();
    let (code, _, rows) = stdp_rows(dir.path(), "");
    assert_eq!(code, 0);
    assert_eq!(rows, vec![vec!["0", "0e0", "5e-1"]]);

    let (_, _, rows) = stdp_rows(dir.path(), "t_post_s,t_pre_s\n0.02,0.02\n");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 0.5);

    let (_, _, rows) = stdp_rows(dir.path(), "0.005,0\n");
    assert!(rel_close(rows[1][1].parse().unwrap(), 0.06065306597126335, 1e-12));
    assert!(rel_close(rows[1][2].parse().unwrap(), 0.5606530659712633, 1e-12));
}

#[test]
fn stdp_errors() {
    let dir = TempDir::new().unwrap();
    let (code, err, _) = stdp_rows(dir.path(), "0.1,0.2\nnot,a-number\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _) = run(
        dir.path(),
        &["stdp", "--pairs", "missing.csv", "--mu", "0.1", "--tau-d", "0.01", "--w0", "0", "--output", "w.csv"],
    );
    assert_eq!(code, 3);
}

#[test]
fn evaluate_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["evaluate", "--output", "e.json"]).0, 0);
    let doc = json(&dir.path().join("e.json"));
    assert_eq!(doc["total"], 300);
    assert!(doc["fraction"].as_f64().unwrap() >= 0.97);
    assert_eq!(doc["tolerance"], 1e-6);
    assert_eq!(doc["config"]["reference"], "script");

    assert_eq!(
        run(dir.path(), &["evaluate", "--reference", "model", "--output", "m.json"]).0,
        0
    );
    assert_eq!(json(&dir.path().join("m.json"))["fraction"], 1.0);

    assert_eq!(
        run(dir.path(), &["evaluate", "--threshold", "1.01", "--output", "t.json"]).0,
        1
    );
    assert_eq!(json(&dir.path().join("t.json"))["passed"], false);

    let (code, _) = run(dir.path(), &["evaluate", "--dt", "0", "--output", "bad.json"]);
    assert_eq!(code, 2);
}

#[test]
fn evaluate_degenerate_window() {
    let dir = TempDir::new().unwrap();
    let dt = format!("{:e}", 9.9770e-15 - 3.3357e-18);
    assert_eq!(
        run(dir.path(), &["evaluate", "--dt", &dt, "--output", "e.json"]).0,
        0
    );
    assert_eq!(json(&dir.path().join("e.json"))["total"], 2);
}

#[test]
fn exit_codes_for_bad_usage_and_io() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["planck", "--bogus"]).0, 2);
    assert_eq!(run(dir.path(), &["planck"]).0, 2);
    assert_eq!(run(dir.path(), &["planck", "--temperatures", "-5", "--output", "x.csv"]).0, 2);
    assert_eq!(run(dir.path(), &["planck", "--variant", "wien", "--output", "x.csv"]).0, 2);
    assert_eq!(
        run(dir.path(), &["spike-train", "--output", "no/such/dir/s.csv"]).0,
        3
    );
    assert_eq!(run(dir.path(), &["--help"]).0, 0);
}

#[test]
fn config_file_precedence() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("run.toml"),
        "temperatures = [5000]\ncount = 7\nformat = \"json\"\noutput = \"from_file.json\"\n",
    )
    .unwrap();
    assert_eq!(run(dir.path(), &["planck", "--config", "run.toml"]).0, 0);
    let doc = json(&dir.path().join("from_file.json"));
    assert_eq!(doc["config"]["count"], 7);
    assert_eq!(doc["config"]["temperatures"][0], 5000.0);

    // flags win over the file
    assert_eq!(
        run(dir.path(), &["planck", "--config", "run.toml", "--count", "3", "--output", "flag.json"]).0,
        0
    );
    let doc = json(&dir.path().join("flag.json"));
    assert_eq!(doc["config"]["count"], 3);
    assert_eq!(doc["curves"][0]["intensity"].as_array().unwrap().len(), 3);

    std::fs::write(dir.path().join("bad.toml"), "unknown_key = 1\n").unwrap();
    assert_eq!(run(dir.path(), &["planck", "--config", "bad.toml", "--output", "x.csv"]).0, 2);
    assert_eq!(run(dir.path(), &["planck", "--config", "absent.toml", "--output", "x.csv"]).0, 3);
}

#[test]
fn prose_constants_override() {
    let dir = TempDir::new().unwrap();
    run(
        dir.path(),
        &["planck", "--constants", "prose", "--format", "json", "--output", "p.json"],
    );
    let doc = json(&dir.path().join("p.json"));
    assert_eq!(doc["config"]["constants"]["c"], 3e8);
    assert_eq!(doc["config"]["constants"]["h"], 6.626e-34);
}

#[test]
fn defaults_snapshot() {
    let dir = TempDir::new().unwrap();
    let path: PathBuf = dir.path().join("d.json");
    run(dir.path(), &["spike-train", "--format", "json", "--output", "d.json"]);
    let cfg = json(&path)["config"].clone();
    assert_eq!(cfg["constants"]["h"], 6.6261e-34);
    assert_eq!(cfg["constants"]["c"], 2.9979e8);
    assert_eq!(cfg["constants"]["k"], 1.3807e-23);
    assert_eq!(cfg["lambda_start"], 1e-9);
    assert_eq!(cfg["lambda_step"], 10e-9);
    assert_eq!(cfg["count"], 300);
    assert_eq!(
        cfg["temperatures"],
        serde_json::json!([4500.0, 5000.0, 5500.0, 6000.0, 6500.0, 7000.0, 7500.0])
    );
    assert_eq!(cfg["variant"], "energy_density");
    assert_eq!(cfg["area"], 1.0);
    assert_eq!(cfg["current"], 1.0);

    run(dir.path(), &["planck", "--format", "json", "--output", "p.json"]);
    let cfg = json(&dir.path().join("p.json"))["config"].clone();
    assert_eq!(cfg["temperatures"], serde_json::json!([4500.0, 6000.0, 7500.0]));

    run(dir.path(), &["evaluate", "--output", "e.json"]);
    let cfg = json(&dir.path().join("e.json"))["config"].clone();
    assert_eq!(cfg["t0"], 3.3357e-18);
    assert_eq!(cfg["t_max"], 9.9770e-15);
    assert_eq!(cfg["dt"], 3.3357e-17);
    assert_eq!(cfg["tolerance"], 1e-6);
    assert_eq!(cfg["threshold"], 0.97);
}

#[test]
fn in_process_run_matches_binary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("q.csv");
    let code = spike_tyke_cli::run([
        "spike-tyke",
        "quantize",
        "--charge",
        "1.60218e-19",
        "--current",
        "1e-9",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let in_process = std::fs::read(&out).unwrap();
    run(
        dir.path(),
        &["quantize", "--charge", "1.60218e-19", "--current", "1e-9", "--output", "q.csv"],
    );
    assert_eq!(std::fs::read(&out).unwrap(), in_process);
}
