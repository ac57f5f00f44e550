use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn karate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/karate")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apcd-bench"))
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.toml");
    fs::write(&path, body).unwrap();
    path
}

fn karate_config(dir: &Path, extra: &str) -> PathBuf {
    let k = karate_dir();
    write_config(
        dir,
        &format!(
            "{extra}\n[[dataset]]\nname = \"karate\"\nedges = {:?}\nlabels = {:?}\n",
            k.join("karate.edges"),
            k.join("karate.labels")
        ),
    )
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join("out").join(name)).unwrap()
}

#[test]
fn stats_of_a_triangle() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tri.edges"), "a b\nb c\nc a\n").unwrap();
    let cfg = write_config(dir.path(), "[[dataset]]\nname = \"tri\"\nedges = \"tri.edges\"\n");
    let out = run(dir.path(), &["stats", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = read(dir.path(), "stats.csv");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dataset,n,e,clustering,gamma,m,kmin"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..4], ["tri", "3", "3", "1.0000"]);
    assert_eq!(row[5], "1.0000");
}

#[test]
fn missing_input_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[[dataset]]\nname = \"x\"\nedges = \"nowhere.edges\"\n");
    let out = run(dir.path(), &["stats", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere.edges"));
}

#[test]
fn malformed_input_exits_with_data_code() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.edges"), "a b\nc\n").unwrap();
    let cfg = write_config(dir.path(), "[[dataset]]\nname = \"bad\"\nedges = \"bad.edges\"\n");
    let out = run(dir.path(), &["stats", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn detection_without_labels_exits_with_data_code() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.edges"), "a b\nb c\nc d\n").unwrap();
    let cfg = write_config(dir.path(), "[[dataset]]\nname = \"p\"\nedges = \"p.edges\"\n");
    let out = run(dir.path(), &["detect", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn no_datasets_gives_a_header_only_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("empty")).unwrap();
    let cfg = write_config(dir.path(), "data_root = \"empty\"\n");
    let out = run(dir.path(), &["grscore", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(read(dir.path(), "grscore.csv"), "dataset,method,metric,repetition,value,stderr,extra\n");
}

#[test]
fn perturbation_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = karate_config(dir.path(), "");
    let args = ["perturb", "--config", cfg.to_str().unwrap(), "--methods", "LGI-AP-RA,Louvain", "--reps", "3", "--seed", "11"];
    assert!(run(dir.path(), &args).status.success());
    let first = read(dir.path(), "perturb.csv");
    assert!(run(dir.path(), &args).status.success());
    assert_eq!(first, read(dir.path(), "perturb.csv"));
    assert_eq!(first.lines().count(), 1 + 2 * 4);

    let other = ["perturb", "--config", cfg.to_str().unwrap(), "--methods", "LGI-AP-RA,Louvain", "--reps", "3", "--seed", "12"];
    assert!(run(dir.path(), &other).status.success());
    assert_ne!(first, read(dir.path(), "perturb.csv"));
}

#[test]
fn zero_fraction_matches_plain_detection() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = karate_config(dir.path(), "");
    let cfg = cfg.to_str().unwrap();
    assert!(run(dir.path(), &["detect", "--config", cfg, "--methods", "LGI-AP-RA"]).status.success());
    let detect = read(dir.path(), "detect.csv");
    assert!(run(dir.path(), &["perturb", "--config", cfg, "--methods", "LGI-AP-RA", "--fraction", "0", "--reps", "2"])
        .status
        .success());
    let perturb = read(dir.path(), "perturb.csv");
    let value = |line: &str| line.split(',').nth(4).unwrap().to_owned();
    let want = value(detect.lines().nth(1).unwrap());
    for line in perturb.lines().skip(1) {
        assert_eq!(value(line), want, "{line}");
    }
}

#[test]
fn npso_writes_networks_and_scores() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[[npso]]\nn = 60\nm = 3\nt = 0.2\ngamma = 3.0\nc = 2\n");
    let out = run(dir.path(), &["npso", "--config", cfg.to_str().unwrap(), "--methods", "LGI-AP-RA", "--reps", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let net = dir.path().join("out/npso/npso_N60_m3_T0.2_g3_C2");
    for rep in 0..2 {
        for ext in ["edges", "labels", "coords"] {
            assert!(net.join(format!("rep{rep}.{ext}")).is_file());
        }
    }
    let edges = fs::read_to_string(net.join("rep0.edges")).unwrap();
    assert_eq!(edges.lines().count(), 3 * 60 - 6);
    assert_eq!(read(dir.path(), "npso.csv").lines().count(), 1 + 3);
}

#[test]
fn unknown_kernel_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["grscore", "--kernels", "XYZ"]);
    assert!(!out.status.success());
}
