use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use earda::dann::DannModel;
use earda::datasets::{read_windows, write_windows, ActivityLabel, DomainTag, HeadMovement, LabeledWindow};
use earda::nn::ModelDims;

const SMALL: &str = "[train]\nepochs = 2\nbatch_size = 8\n[train.model]\nhidden = 3\nhead_hidden = 4\n[generator]\nwindows_per_class = 10\n";

fn earda(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_earda"))
        .args(args)
        .current_dir(dir)
        .env_remove("EARDA_DATA_ROOT")
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn small_pack(dir: &Path) -> PathBuf {
    std::fs::write(dir.join("small.toml"), SMALL).unwrap();
    ok(&earda(
        dir,
        &["synth", "--config", "small.toml", "--out", "pack", "--seed", "5"],
    ));
    dir.join("pack")
}

fn write_fixture(path: &Path, n: usize, rate: f64, location: &str, head: &str) {
    let mut body = String::from("t,ax,ay,az,gx,gy,gz,activity,head_movement,location,accel_unit\n");
    for i in 0..n {
        let t = i as f64 / rate;
        let s = (2.0 * std::f64::consts::PI * 2.0 * t).sin();
        writeln!(
            body,
            "{t},0.0,0.1,{},{},0.0,0.0,walking,{head},{location},g",
            1.0 + 0.2 * s,
            0.5 * s
        )
        .unwrap();
    }
    std::fs::write(path, body).unwrap();
}

#[test]
fn synth_manifest_is_complete_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let pack = small_pack(dir.path());
    let m = json(&pack.join("manifest.json"));
    assert_eq!(m["format_version"], 1);
    for domain in ["source", "target"] {
        for class in ["walking", "upstairs", "standing", "jogging"] {
            assert_eq!(m[domain]["classes"][class], 10, "{domain} {class}");
        }
        assert_eq!(m[domain]["windows"], 40);
    }
    assert_eq!(m["generator"]["windows_per_class"], 10);
    assert_eq!(m["target"]["head_movements"].as_object().unwrap().len(), 5);

    ok(&earda(
        dir.path(),
        &["synth", "--config", "small.toml", "--out", "again", "--seed", "5"],
    ));
    for f in [
        "manifest.json",
        "source.windows",
        "target.windows",
        "recordings/target_jogging_1-random.csv",
    ] {
        let a = std::fs::read(pack.join(f)).unwrap();
        let b = std::fs::read(dir.path().join("again").join(f)).unwrap();
        assert!(a == b, "{f} differs");
    }
}

#[test]
fn preprocess_counts_windows() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(&dir.path().join("ear.csv"), 1000, 25.0, "head", "yaw");
    write_fixture(&dir.path().join("phone.csv"), 1000, 50.0, "pocket", "none");
    let out = ok(&earda(
        dir.path(),
        &["preprocess", "--input", "ear.csv", "--input", "phone.csv", "--out", "w"],
    ));
    assert!(out.contains("15 windows"), "{out}");
    let m = json(&dir.path().join("w/manifest.json"));
    assert_eq!(m["target"]["windows"], 10);
    // 1000 samples at 50 Hz is 20 s, five 4-second windows
    assert_eq!(m["source"]["windows"], 5);
    let classes: u64 = m["target"]["classes"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(classes, 10);
    assert_eq!(m["target_filter"]["cutoff_hz"], 5.0);
    assert!(m["source_filter"].is_null());
    let target = read_windows(&dir.path().join("w/target.windows")).unwrap();
    assert!(target
        .iter()
        .all(|w| w.head == HeadMovement::Yaw && w.domain == DomainTag::Target));

    let out = earda(dir.path(), &["preprocess", "--input", "missing.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = earda(dir.path(), &["preprocess"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preprocess_reads_corpora_under_data_root() {
    let dir = tempfile::tempdir().unwrap();
    let trial = dir.path().join("corpora/motionsense/A_DeviceMotion_data/wlk_7");
    std::fs::create_dir_all(&trial).unwrap();
    let mut body = String::from(",gravity.x,gravity.y,gravity.z,rotationRate.x,rotationRate.y,rotationRate.z,userAcceleration.x,userAcceleration.y,userAcceleration.z\n");
    for i in 0..400 {
        writeln!(body, "{i},0,0,-1,0.1,0.2,0.3,0.0,0.0,{}", 0.2 * (i as f64 * 0.25).sin()).unwrap();
    }
    std::fs::write(trial.join("sub_1.csv"), body).unwrap();
    std::fs::write(dir.path().join("run.toml"), "[data]\ncorpora = [\"motionsense\"]\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_earda"))
        .args(["preprocess", "--config", "run.toml", "--out", "w"])
        .current_dir(dir.path())
        .env("EARDA_DATA_ROOT", dir.path().join("corpora"))
        .output()
        .unwrap();
    ok(&out);
    let m = json(&dir.path().join("w/manifest.json"));
    assert_eq!(m["source"]["classes"]["walking"], 2);
    // without the variable there is no root to read from
    assert_eq!(
        earda(dir.path(), &["preprocess", "--config", "run.toml"]).status.code(),
        Some(2)
    );
}

#[test]
fn train_is_deterministic_and_respects_flags() {
    let dir = tempfile::tempdir().unwrap();
    let pack = small_pack(dir.path());
    let p = pack.to_str().unwrap();
    let run = |out: &str, extra: &[&str]| {
        let mut args = vec!["train", "--config", "small.toml", "--seed", "1", "--out", out];
        args.extend_from_slice(extra);
        let toml = format!(
            "{SMALL}[data]\nsource_windows = \"{p}/source.windows\"\ntarget_windows = \"{p}/target.windows\"\n"
        );
        std::fs::write(dir.path().join("small.toml"), toml).unwrap();
        ok(&earda(dir.path(), &args));
        let mut r = json(&dir.path().join(out).join("train_report.json"));
        r["wall_clock_seconds"] = 0.into();
        r
    };
    let a = run("a", &[]);
    let b = run("b", &[]);
    assert_eq!(a, b);
    assert_eq!(a["format_version"], 1);
    assert_eq!(a["epochs"].as_array().unwrap().len(), 2);
    assert!(a["epochs"][0]["domain_loss"].is_number());
    assert_eq!(
        std::fs::read(dir.path().join("a/model.ckpt")).unwrap(),
        std::fs::read(dir.path().join("b/model.ckpt")).unwrap()
    );

    let one = run("c", &["--epochs", "1", "--no-da"]);
    assert_eq!(one["epochs"].as_array().unwrap().len(), 1);
    assert!(one["epochs"][0].get("domain_loss").is_none());
    assert_eq!(one["mode"], "source_only");
}

#[test]
fn train_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(earda(dir.path(), &["train"]).status.code(), Some(2));
    assert_eq!(
        earda(dir.path(), &["train", "--config", "nope.toml"]).status.code(),
        Some(2)
    );
    std::fs::write(dir.path().join("bad.toml"), "[train]\nbatch = 3\n").unwrap();
    assert_eq!(
        earda(dir.path(), &["train", "--config", "bad.toml"]).status.code(),
        Some(64)
    );
    assert_eq!(earda(dir.path(), &["train", "--lambda", "-1"]).status.code(), Some(64));
    assert_eq!(earda(dir.path(), &["train", "--epochs", "x"]).status.code(), Some(64));
}

fn window(label: ActivityLabel, head: HeadMovement) -> LabeledWindow {
    LabeledWindow::new(vec![[1.0, 0.1]; 100], label, DomainTag::Target, head, "fixture").unwrap()
}

#[test]
fn eval_reports_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    // The all-zero model always answers walking, so it is perfect on walking windows.
    DannModel::zeros(ModelDims::default(), 0.3)
        .save(&dir.path().join("zero.ckpt"))
        .unwrap();
    let windows: Vec<LabeledWindow> = [HeadMovement::Roll, HeadMovement::Pitch, HeadMovement::Roll]
        .iter()
        .map(|h| window(ActivityLabel::Walking, *h))
        .collect();
    write_windows(&windows, &dir.path().join("t.windows")).unwrap();
    let cfg = "[data]\ncheckpoint = \"zero.ckpt\"\ntarget_windows = \"t.windows\"\n[eval]\nsubset = \"all\"\n";
    std::fs::write(dir.path().join("eval.toml"), cfg).unwrap();
    let stdout = ok(&earda(dir.path(), &["eval", "--config", "eval.toml", "--out", "e"]));
    let r = json(&dir.path().join("e/eval_report.json"));
    assert_eq!(r["format_version"], 1);
    assert_eq!(r["accuracy"], 1.0);
    assert_eq!(r["count"], 3);
    assert_eq!(r["confusion"]["counts"][0][0], 3);
    assert_eq!(r["groups"].as_array().unwrap().len(), 2);
    assert_eq!(r["per_class"][1]["degenerate"], true);
    let table = std::fs::read_to_string(dir.path().join("e/eval_table.txt")).unwrap();
    let header = table.lines().next().unwrap();
    assert!(header.contains("roll") && header.contains("pitch") && !header.contains("yaw"));
    assert!(stdout.contains("accuracy 1.0000"));

    let bytes = std::fs::read(dir.path().join("zero.ckpt")).unwrap();
    let mut bumped = bytes.clone();
    bumped[4] = 99;
    std::fs::write(dir.path().join("zero.ckpt"), &bumped).unwrap();
    assert_eq!(
        earda(dir.path(), &["eval", "--config", "eval.toml"]).status.code(),
        Some(2)
    );
    std::fs::write(dir.path().join("zero.ckpt"), &bytes[..bytes.len() / 2]).unwrap();
    assert_eq!(
        earda(dir.path(), &["eval", "--config", "eval.toml"]).status.code(),
        Some(2)
    );
}

#[test]
fn ablate_modes() {
    let dir = tempfile::tempdir().unwrap();
    let pack = small_pack(dir.path());
    assert_eq!(
        earda(dir.path(), &["ablate", "--mode", "bogus"]).status.code(),
        Some(64)
    );
    assert_eq!(earda(dir.path(), &["ablate"]).status.code(), Some(64));

    let rec = pack.join("recordings");
    let r = rec.to_str().unwrap();
    ok(&earda(
        dir.path(),
        &[
            "ablate",
            "--mode",
            "filter",
            "--config",
            "small.toml",
            "--input",
            r,
            "--out",
            "f",
        ],
    ));
    let f = json(&dir.path().join("f/ablate_filter.json"));
    assert_eq!(f["format_version"], 1);
    assert!(f["gap_points"].is_number());
    assert_eq!(f["filtered"]["groups"].as_array().unwrap().len(), 5);
    assert_eq!(f["unfiltered"]["groups"].as_array().unwrap().len(), 5);
    assert_eq!(f["per_condition"].as_array().unwrap().len(), 5);

    assert_eq!(
        earda(dir.path(), &["ablate", "--mode", "filter", "--out", "g"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ablate_da_gap_is_positive_on_default_pack() {
    let dir = tempfile::tempdir().unwrap();
    ok(&earda(dir.path(), &["synth", "--out", "pack"]));
    let out = ok(&earda(
        dir.path(),
        &["ablate", "--mode", "da", "--out", "pack", "--epochs", "60"],
    ));
    let r = json(&dir.path().join("pack/ablate_da.json"));
    let gap = r["gap_points"].as_f64().unwrap();
    assert!(gap > 0.0, "{out}");
    assert!(r["dann"]["confusion"]["counts"].is_array() && r["source_only"]["confusion"]["counts"].is_array());
}

#[test]
fn spectrum_of_interfered_jogging() {
    let dir = tempfile::tempdir().unwrap();
    let pack = small_pack(dir.path());
    let file = pack.join("recordings/target_jogging_1-random.csv");
    let stdout = ok(&earda(
        dir.path(),
        &[
            "spectrum",
            "--input",
            file.to_str().unwrap(),
            "--channel",
            "gyro",
            "--out",
            "s",
        ],
    ));
    assert!(stdout.contains("51 bins"));
    let text = std::fs::read_to_string(dir.path().join("s/spectrum_gyro.csv")).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (f, m) = l.split_once(',').unwrap();
            (f.parse().unwrap(), m.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 51);
    let peak = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let is_max = |i: usize| rows[i].1 >= 0.1 * peak && rows[i].1 > rows[i - 1].1 && rows[i].1 >= rows[i + 1].1;
    let maxima: Vec<f64> = (1..rows.len() - 1).filter(|&i| is_max(i)).map(|i| rows[i].0).collect();
    assert!(maxima.iter().any(|f| *f < 5.0), "{maxima:?}");
    assert!(maxima.iter().any(|f| (6.0..=10.0).contains(f)), "{maxima:?}");

    let flat = dir.path().join("flat.csv");
    let mut body = String::from("t,ax,ay,az,gx,gy,gz,activity,head_movement,location,accel_unit\n");
    for i in 0..150 {
        writeln!(body, "{},0,0,1,0.3,0.3,0.3,standing,none,head,g", i as f64 / 25.0).unwrap();
    }
    std::fs::write(&flat, body).unwrap();
    ok(&earda(
        dir.path(),
        &["spectrum", "--input", "flat.csv", "--out", "flat"],
    ));
    let text = std::fs::read_to_string(dir.path().join("flat/spectrum_gyro.csv")).unwrap();
    for l in text.lines().skip(2) {
        let m: f64 = l.split_once(',').unwrap().1.parse().unwrap();
        assert!(m <= 1e-9, "{l}");
    }
    assert_eq!(
        earda(dir.path(), &["spectrum", "--input", "flat.csv", "--channel", "baro"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(earda(dir.path(), &["spectrum"]).status.code(), Some(2));
}
