use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_twowell");

fn twowell(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn fig2_config(dir: &Path, mu2: f64) -> String {
    let path = dir.join("fig2.json");
    let cfg = serde_json::json!({
        "model": {
            "kind": "physical",
            "n_levels": 2,
            "u_same_well": {"a": [[1, 2], [2, 1]], "b": [[1, 2], [2, 1]]},
            "u_cross_well": [[1, 1], [1, 1]],
            "eps": {"a": [-2, 2], "b": [1, -1]},
            "mu": [1, mu2],
            "omega": [[0.5, 0.5], [0.5, 0.5]]
        },
        "n_atoms": [2]
    });
    std::fs::write(&path, cfg.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn spectrum_single_atom_closed_form() {
    let o = twowell(&["spectrum", "--n", "2", "--atoms", "0,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("n_atoms,index,eigenvalue\n"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], ["0", "0", "0.0000000000000000e0"]);
    let r5 = 5f64.sqrt();
    let expected = [1.0 - r5, -1.0, 3.0, 1.0 + r5];
    for (row, e) in rows[1..].iter().zip(expected) {
        assert_eq!(row[0], "1");
        let x: f64 = row[2].parse().unwrap();
        assert!((x - e).abs() < 1e-12, "{x} vs {e}");
    }
}

#[test]
fn spectrum_of_reference_couplings_has_dimension_ten() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fig2_config(dir.path(), 1.0);
    let o = twowell(&["spectrum", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 10);
    let values: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn spectrum_refuses_oversized_sectors() {
    let o = twowell(&["spectrum", "--n", "4", "--atoms", "40"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("50000"), "{}", stderr(&o));
}

#[test]
fn bae_single_atom_and_empty_sector() {
    let o = twowell(&["bae", "--n", "2", "--atoms", "0,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with(
        "solution_id,root_index,re_v,im_v,energy,bae_residual,eigvec_residual,matched_eigenvalue,delta\n"
    ));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][1], "");
    assert_eq!(rows[0][4].parse::<f64>().unwrap(), 0.0);
    let r5 = 5f64.sqrt();
    let mut energies: Vec<f64> = rows[1..].iter().map(|r| r[4].parse().unwrap()).collect();
    energies.sort_by(f64::total_cmp);
    assert!((energies[0] - (1.0 - r5)).abs() < 1e-10);
    assert!((energies[1] - (1.0 + r5)).abs() < 1e-10);
    for r in &rows[1..] {
        assert!(!r[7].is_empty(), "unmatched: {r:?}");
    }
}

#[test]
fn bae_rejects_reference_couplings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fig2_config(dir.path(), 1.0);
    let o = twowell(&["bae", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("not integrable"), "{err}");
    assert!(err.contains("eps_a2 - mu_2 = eps_a1 - mu_1"), "{err}");
}

#[test]
fn identify_reports_as_json() {
    let o = twowell(&["identify", "--n", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["command", "config_echo", "results", "residual_summary"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "identify");

    let dir = tempfile::tempdir().unwrap();
    let cfg = fig2_config(dir.path(), 3.0);
    let o = twowell(&["identify", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["results"]["report"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_passes_on_defaults() {
    let o = twowell(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.ends_with("PASS")), "{out}");
    for suite in ["ybe/", "rll/", "tcommute/", "charges/", "hrel/"] {
        assert!(out.contains(suite), "{suite} missing");
    }
}

#[test]
fn verify_hrel_single_sector() {
    let o = twowell(&["verify", "--suite", "hrel", "--n", "2", "--atoms", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("hrel/N=3"));
}

#[test]
fn fig2_single_grid_point_gives_one_row_per_atom_number() {
    let o = twowell(&["fig2", "--grid", "1:1:0.1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("N,mu2_over_mu1,E0_over_mu1\n"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 4);
    let ns: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ns, ["1", "2", "3", "4"]);
}

#[test]
fn fig2_force_bae_refuses_reference_couplings() {
    let o = twowell(&["fig2", "--grid", "0:1:0.5", "--force-bae", "--atoms", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not integrable"));
}

#[test]
fn invalid_configuration_lists_every_problem() {
    let o = twowell(&["bae", "--n", "2", "--atoms", "-1,2", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("-1 is negative") && err.contains("budget"), "{err}");

    let o = twowell(&["fig2", "--grid", "3:1:0.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"model": {"kind": "integrable", "n_levels": 1, "eta": 1, "omega": [1], "s": [1], "t": [1], "alpha": 1}, "n_atoms": [1], "bogus": 3}"#).unwrap();
    let o = twowell(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = twowell(&["bae", "--n", "2", "--atoms", "1,2,3", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let json = std::fs::read_to_string(a.with_extension("json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["command"], "bae");

    let f2 = [dir.path().join("f1.csv"), dir.path().join("f2.csv")];
    for p in &f2 {
        let o = twowell(&["fig2", "--grid", "0:2:0.5", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&f2[0]).unwrap(), std::fs::read(&f2[1]).unwrap());
}
