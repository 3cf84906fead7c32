use std::path::Path;
use std::process::{Command, Output};

const DATASET: &str = "name = cli_small
graph = edge
graph = two_star
graph = triangle
beta = -1
beta = 0.55
beta = 0.5
well = low
samples = 3
base = sqrt(2)
scales = 6..7
seed = 5
";

fn ergm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ergm")).args(args).env("ERGM_THREADS", "2").output().unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("dataset.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn landscape_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), DATASET);
    let o = ergm(&["landscape", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,L,L2,kind,global"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().filter(|r| r[3] == "local_max").count(), 2);
    assert!(stderr(&o).contains("supercritical"));
}

#[test]
fn simulate_then_stats() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), DATASET);
    let run = dir.path().join("run");
    let run_s = run.to_string_lossy().into_owned();
    let o = ergm(&["simulate", "--config", &cfg, "--out", &run_s]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(run.join("manifest.json").exists());
    assert!(run.join("raw/total_edge_count_n8.csv").exists());
    assert!(run.join("fits.csv").exists());

    let again = ergm(&["simulate", "--config", &cfg, "--out", &run_s]);
    assert_eq!(again.status.code(), Some(1));
    let forced = ergm(&["simulate", "--config", &cfg, "--out", &run_s, "--force"]);
    assert_eq!(forced.status.code(), Some(0));

    let stats_dir = dir.path().join("stats");
    let o = ergm(&["stats", "--in", &run_s, "--out", &stats_dir.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("label,slope,intercept,residual"));
    assert_eq!(
        std::fs::read(stats_dir.join("total_edge_count_stds.csv")).unwrap(),
        std::fs::read(run.join("total_edge_count_stds.csv")).unwrap()
    );
}

#[test]
fn couple_adds_coupling_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), DATASET);
    let run = dir.path().join("coupled");
    let o = ergm(&["couple", "--config", &cfg, "--out", &run.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["hamming_distance_means.csv", "added_minus_removed_means.csv", "difference_clustering_means.csv"] {
        assert!(run.join(name).exists(), "{name}");
    }
}

#[test]
fn replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), DATASET);
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    assert_eq!(ergm(&["simulate", "--config", &cfg, "--out", &first.to_string_lossy()]).status.code(), Some(0));
    let manifest = first.join("manifest.json");
    let o = ergm(&["replay", "--manifest", &manifest.to_string_lossy(), "--out", &second.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["raw/total_edge_count_n11.csv", "total_triangle_count_means.csv", "fits.csv"] {
        assert_eq!(std::fs::read(first.join(name)).unwrap(), std::fs::read(second.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn oracle_check_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "graph = edge\ngraph = two_star\ngraph = triangle\nbeta = -1\nbeta = 0.55\nbeta = 0.5\n");
    let o = ergm(&["oracle-check", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("normalization_error"));
    assert!(text.contains("balance_max_abs"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), &DATASET.replace("samples = 3", "samples = 1"));
    assert_eq!(ergm(&["simulate", "--config", &bad, "--out", &dir.path().join("x").to_string_lossy()]).status.code(), Some(1));
    let no_well = write_config(dir.path(), &DATASET.replace("well = low", "well = 0.6"));
    assert_eq!(ergm(&["simulate", "--config", &no_well, "--out", &dir.path().join("y").to_string_lossy()]).status.code(), Some(1));
    assert_eq!(ergm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ergm(&["--help"]).status.code(), Some(0));

    let missing = dir.path().join("absent");
    let o = ergm(&["stats", "--in", &missing.to_string_lossy(), "--out", &dir.path().join("z").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("manifest.json"));
    let o = ergm(&["landscape", "--config", &dir.path().join("nope.cfg").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}
