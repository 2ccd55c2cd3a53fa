use std::path::Path;
use std::process::{Command, Output};

fn dcurve(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcurve"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("dcurve runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) {
    std::fs::write(dir.join(name), contents).unwrap();
}

const RECT: &str = r#"{"version": 1, "closed": true, "sigma": -1, "points": [[0, 0], [2, 0], [2, 1], [0, 1]]}"#;
const SQ: &str = r#"{"version": 1, "closed": true, "sigma": -1, "points": [[1, 0], [0, 1], [-1, 0], [0, -1]]}"#;

#[test]
fn generate_writes_polygon_and_rejects_half_winding() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcurve(&["generate", "--n", "5", "--m", "2", "--a", "1", "--stdout"], dir.path());
    assert!(out.status.success());
    let file: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(file["points"].as_array().unwrap().len(), 5);
    assert_eq!(file["sigma"], -1);

    let out = dcurve(&["generate", "--n", "4", "--m", "2", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("m/n = 1/2 rejected"));
    assert!(out.stdout.is_empty());
}

#[test]
fn analyze_reports_equilibria() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sq.json", SQ);
    write(dir.path(), "rect.json", RECT);
    let out = dcurve(&["analyze", "sq.json", "--kappa", "-1.41421356237", "--stdout"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("equilibrium: yes"));
    let csv = stdout(&out);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "kappa_arclength").unwrap();
    for line in csv.lines().skip(1) {
        let v: f64 = line.split(',').nth(col).unwrap().parse().unwrap();
        assert!((v + 2f64.sqrt()).abs() < 1e-14);
    }

    let out = dcurve(&["analyze", "rect.json", "--kappa", "-1.41421356237", "--stdout"], dir.path());
    assert!(out.status.success());
    let err = stderr(&out);
    assert!(err.contains("equilibrium: no") && err.contains("max residual:"));
    // Arclength needs uniform edges.
    assert!(stdout(&out).lines().nth(1).unwrap().split(',').nth(col).unwrap() == "NA");

    dcurve(&["generate", "--n", "5", "--m", "1", "--out", "p5.json"], dir.path());
    let out = dcurve(&["analyze", "p5.json", "--out", "p5.csv", "--report", "p5_report.json"], dir.path());
    assert!(stderr(&out).contains("kappa (estimated): -1.2360679774997"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("p5_report.json")).unwrap()).unwrap();
    assert!((report["kappa"].as_f64().unwrap() + 1.0 / (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    assert_eq!(report["is_equilibrium"], true);
}

#[test]
fn parse_errors_are_located() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", "{\n  \"version\": 1,\n  \"closed\": true,\n  \"sigma\": -1,\n  \"points\": [[0, 0], [1 0]]\n}\n");
    let out = dcurve(&["analyze", "bad.json", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 5"), "{}", stderr(&out));
    write(dir.path(), "dup.json", r#"{"version": 1, "closed": true, "sigma": -1, "points": [[0, 0], [1, 0], [1, 0]]}"#);
    let out = dcurve(&["analyze", "dup.json", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("points[1]"), "{}", stderr(&out));
    let out = dcurve(&["analyze", "missing.json", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn offset_family_and_degeneracies() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sq.json", SQ);
    let out = dcurve(&["offset", "sq.json", "--t", "0,0.2,0.4,0.6", "--variant", "wedge", "--stdout", "--svg", "o.svg"], dir.path());
    assert!(out.status.success());
    let csv = stdout(&out);
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][2], rows[0][3]);
    for r in &rows {
        assert!(r[4].parse::<f64>().unwrap() < 1e-12);
        assert_eq!(r[5], "ok");
    }
    let svg = std::fs::read_to_string(dir.path().join("o.svg")).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 4);

    let out = dcurve(&["offset", "sq.json", "--t", "0.2", "--variant", "arc", "--stdout", "--svg", "a.svg"], dir.path());
    assert!(out.status.success());
    let svg = std::fs::read_to_string(dir.path().join("a.svg")).unwrap();
    assert!(svg.contains("not polygonal") && svg.matches("<polygon").count() == 1);

    // The square collapses to a point at t = -1/kappa(e) = -1/sqrt(2)... inward.
    let out = dcurve(&["offset", "sq.json", "--t", "-0.7071067811865476", "--stdout"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("edge-collapse"));

    write(dir.path(), "cusp.json", r#"{"version": 1, "closed": true, "sigma": -1, "points": [[0, 0], [2, 0], [1, 0], [1, 1]]}"#);
    let out = dcurve(&["offset", "cusp.json", "--t", "0.1", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn stability_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcurve(&["stability", "--n", "5..8", "--m", "all", "--stdout"], dir.path());
    assert!(out.status.success());
    assert!(stderr(&out).contains("skipping n=6 m=3"));
    let csv = stdout(&out);
    let row52: Vec<&str> = csv.lines().find(|l| l.starts_with("5,2,")).unwrap().split(',').collect();
    assert_eq!(row52[4], "2");
    assert!((row52[5].parse::<f64>().unwrap() + 5.4288).abs() < 1e-3);
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[1] == "1" {
            assert_eq!(cells[4], "0");
        }
    }
    assert!(!csv.lines().any(|l| l.starts_with("6,3,")));
    let out = dcurve(&["stability", "--n", "5..8", "--m", "sideways", "--stdout"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flow_command() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sq.json", SQ);
    let out = dcurve(&["flow", "sq.json", "--out", "sq_traj.csv", "--svg", "sq.svg"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("converged at step 0"));

    write(
        dir.path(),
        "hex.json",
        r#"{"version": 1, "closed": true, "sigma": -1, "points": [[1.05, 0.02], [0.48, 0.9], [-0.52, 0.83], [-0.97, -0.04], [-0.5, -0.88], [0.51, -0.85]]}"#,
    );
    let out = dcurve(&["flow", "hex.json", "--step", "0.2", "--tol", "1e-10", "--stdout", "--svg", "hex.svg"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let err = stderr(&out);
    assert!(err.contains("converged") && err.contains("regular polygon: n=6 m=1"), "{err}");
    let csv = stdout(&out);
    assert_eq!(csv.lines().next().unwrap(), "step,length,volume,gradnorm");
    let last: Vec<f64> = csv.lines().last().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!(last[3] < 1e-10);

    dcurve(&["generate", "--n", "5", "--m", "2", "--phase", "0.001", "--out", "pent.json"], dir.path());
    let text = std::fs::read_to_string(dir.path().join("pent.json")).unwrap();
    // Nudge one vertex off the star.
    let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
    file["points"][0][0] = serde_json::json!(1.002);
    std::fs::write(dir.path().join("pent.json"), file.to_string()).unwrap();
    let out = dcurve(&["flow", "pent.json", "--step", "0.01", "--max-steps", "100", "--stdout"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("not converged"));
    let csv = stdout(&out);
    let last: Vec<f64> = csv.lines().last().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!(last[3] > 1e-4);
}

#[test]
fn output_target_required() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcurve(&["generate", "--n", "5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--out"));
}
