use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toposmooth"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn synth_then_smooth_then_persistence() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(
        &[
            "synth",
            "--synthetic",
            "noisy-sine",
            "--n",
            "64",
            "--seed",
            "3",
            "--out-dir",
            "data",
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let input = d.join("data/noisy-sine-n64-s3.csv");
    assert!(input.exists());

    let o = run(
        &[
            "smooth",
            "--method",
            "topo",
            "--param",
            "0.5",
            "-o",
            "smooth.csv",
            input.to_str().unwrap(),
        ],
        d,
    );
    assert!(o.status.success(), "{o:?}");
    let smoothed = toposmooth::io::load_csv(d.join("smooth.csv")).unwrap();
    assert_eq!(smoothed.len(), 64);

    let o = run(
        &["persistence", "--emit", "json", input.to_str().unwrap()],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("birth_index,death_index,birth,death,persistence\n"));

    let o = run(&["entropy", input.to_str().unwrap()], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("noisy-sine-n64-s3,"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.csv"), "1\nabc\n").unwrap();
    std::fs::write(d.join("ok.csv"), "1\n3\n2\n5\n").unwrap();
    assert_eq!(run(&["entropy", "missing.csv"], d).status.code(), Some(2));
    let o = run(&["entropy", "bad.csv"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        run(
            &["smooth", "--method", "median", "--param", "4", "ok.csv"],
            d
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(
            &["smooth", "--method", "wavelet", "--param", "4", "ok.csv"],
            d
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"], d).status.code(), Some(1));
    assert_eq!(run(&["--help"], d).status.code(), Some(0));
    assert_eq!(
        run(&["entropy", "--config", "nope.conf", "ok.csv"], d)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("run.conf"),
        "# defaults\nsynthetic = random-walk\nn = 32\nseed = 1\nout_dir = from-file\n",
    )
    .unwrap();
    let o = run(&["synth", "--config", "run.conf", "--seed", "2"], d);
    assert!(o.status.success(), "{o:?}");
    assert!(d.join("from-file/random-walk-n32-s2.csv").exists());
    std::fs::write(d.join("broken.conf"), "colour = blue\n").unwrap();
    assert_eq!(
        run(&["synth", "--config", "broken.conf"], d).status.code(),
        Some(1)
    );
}

#[test]
fn evaluate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = [
        "evaluate",
        "--synthetic",
        "spike-train",
        "--n",
        "128",
        "--seed",
        "5",
        "--out-dir",
        "out",
        "--emit",
        "json,svg",
    ];
    assert!(run(&args, d).status.success());
    let report = d.join("out/spike-train-n128-s5.report.json");
    let first = std::fs::read(&report).unwrap();
    let svg = std::fs::read(d.join("out/spike-train-n128-s5.l1.svg")).unwrap();
    assert!(run(&args, d).status.success());
    assert_eq!(std::fs::read(&report).unwrap(), first);
    assert_eq!(
        std::fs::read(d.join("out/spike-train-n128-s5.l1.svg")).unwrap(),
        svg
    );
}
