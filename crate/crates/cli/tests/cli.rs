//! Black-box tests of the command line surface: subcommand round trips and
//! the documented exit codes (0 success, 1 input error, 2 infeasible
//! statistics).

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_edge-excess"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary should launch");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(cmd: &mut Command) -> i32 {
    cmd.output()
        .expect("binary should launch")
        .status
        .code()
        .unwrap_or(-1)
}

fn write_stripes(dir: &Path, name: &str, period: u32) -> std::path::PathBuf {
    let img = edge_excess::gen_image(&edge_excess::SynthSpec::new(
        edge_excess::SynthKind::Stripes { period },
        128,
        128,
        0,
    ))
    .unwrap();
    let path = dir.join(name);
    edge_excess::io::pgm::write_pgm_file(&img, &path).unwrap();
    path
}

#[test]
fn synth_writes_images_and_masks() {
    let dir = tempfile::tempdir().unwrap();
    let img_path = dir.path().join("step.pgm");
    run_ok(
        bin()
            .args([
                "synth", "--kind", "step", "--width", "64", "--height", "32", "--out",
            ])
            .arg(&img_path),
    );
    let img = edge_excess::io::pgm::read_pgm_file(&img_path).unwrap();
    assert_eq!((img.width(), img.height()), (64, 32));

    let mask_path = dir.path().join("noise.pgm");
    run_ok(
        bin()
            .args([
                "synth",
                "--kind",
                "bernoulli-mask",
                "--density",
                "0.4",
                "--width",
                "64",
                "--height",
                "64",
                "--seed",
                "5",
                "--mask",
                "--out",
            ])
            .arg(&mask_path),
    );
    let mask = edge_excess::io::pgm::read_pgm_file(&mask_path).unwrap();
    let ones = mask.data().iter().filter(|&&v| v == 255).count();
    assert!(ones > 0 && ones < 64 * 64);

    // bernoulli has no image form; asking for one is an input error.
    assert_eq!(
        exit_code(bin().args([
            "synth",
            "--kind",
            "bernoulli-mask",
            "--out",
            "/tmp/never-written.pgm"
        ])),
        1
    );
}

#[test]
fn analyze_reports_the_excess_index() {
    let dir = tempfile::tempdir().unwrap();
    let frame = write_stripes(dir.path(), "frame.pgm", 4);
    let out = run_ok(
        bin()
            .args(["analyze", "--roi", "8,8,96,96", "--image"])
            .arg(&frame),
    );
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pe = json["pe"].as_f64().unwrap();
    assert!(
        pe > 1.9 && pe <= 2.0,
        "dense stripes should read near 2, got {pe}"
    );
    assert_eq!(json["no_edges"], serde_json::Value::Bool(false));
    assert_eq!(json["n_points_used"], 32);

    // Degenerate roi: input error.
    assert_eq!(
        exit_code(
            bin()
                .args(["analyze", "--roi", "0,0,2,2", "--image"])
                .arg(&frame)
        ),
        1
    );
    // Missing file: input error.
    assert_eq!(
        exit_code(bin().args(["analyze", "--image", "/nonexistent.pgm"])),
        1
    );
}

#[test]
fn run_fit_plot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let frames_dir = dir.path().join("frames");
    std::fs::create_dir(&frames_dir).unwrap();
    for f in 0..3 {
        write_stripes(&frames_dir, &format!("f{f:02}.pgm"), 6);
    }
    let rois = dir.path().join("rois.csv");
    let mut csv = String::from("frame,track_id,x,y,w,h\n");
    for f in 0..3 {
        csv += &format!("{f},1,{},8,64,64\n", 4 + 2 * f);
        csv += &format!("{f},2,48,40,64,64\n");
    }
    std::fs::write(&rois, csv).unwrap();

    let out_dir = dir.path().join("out");
    run_ok(
        bin()
            .arg("run")
            .arg("--frames")
            .arg(&frames_dir)
            .arg("--rois")
            .arg(&rois)
            .arg("--out")
            .arg(&out_dir)
            .args(["--seed", "3"]),
    );
    assert!(out_dir.join("report.json").exists());

    // Fit straight from the written rows. Dense stripes shift the
    // population toward the top of the support.
    let fit_out = run_ok(
        bin()
            .arg("fit")
            .arg("--input")
            .arg(out_dir.join("rows.csv")),
    );
    let json: serde_json::Value = serde_json::from_slice(&fit_out.stdout).unwrap();
    assert!(json["alpha"].as_f64().unwrap() > 0.0);
    assert!(json["beta"].as_f64().unwrap() > 0.0);
    assert_eq!(json["support_shift"].as_f64().unwrap(), 1.0);
    assert_eq!(json["count"], 6);

    let plots = dir.path().join("plots");
    run_ok(
        bin()
            .arg("plot")
            .arg("--report")
            .arg(out_dir.join("report.json"))
            .arg("--out-dir")
            .arg(&plots),
    );
    for name in ["histogram.svg", "scatter.svg"] {
        let svg = std::fs::read_to_string(plots.join(name)).unwrap();
        assert!(svg.starts_with("<svg"), "{name} is not svg");
    }
}

#[test]
fn fit_exit_codes_distinguish_input_from_infeasible() {
    let dir = tempfile::tempdir().unwrap();

    // Constant population: no Beta distribution fits — exit 2.
    let constant = dir.path().join("constant.csv");
    std::fs::write(&constant, "pe\n1.5\n1.5\n1.5\n").unwrap();
    assert_eq!(exit_code(bin().arg("fit").arg("--input").arg(&constant)), 2);

    // Out-of-support values: input error — exit 1.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "pe\n0.5\n2.5\n").unwrap();
    assert_eq!(exit_code(bin().arg("fit").arg("--input").arg(&bad)), 1);

    // Unparseable file: input error — exit 1.
    let garbage = dir.path().join("garbage.csv");
    std::fs::write(&garbage, "frame,kept\n0,true\n").unwrap();
    assert_eq!(exit_code(bin().arg("fit").arg("--input").arg(&garbage)), 1);

    // Healthy population: exit 0.
    let good = dir.path().join("good.csv");
    std::fs::write(&good, "pe\n1.2\n1.3\n1.25\n1.4\n1.35\n").unwrap();
    assert_eq!(exit_code(bin().arg("fit").arg("--input").arg(&good)), 0);
}

#[test]
fn run_flags_infeasible_global_fit() {
    let dir = tempfile::tempdir().unwrap();
    // Blank frames: every roi reads exactly 1.0, so a global fit cannot
    // exist. The report is still written; the exit code says why.
    let frame = dir.path().join("blank.pgm");
    let img = edge_excess::GrayImage::filled(64, 64, 128).unwrap();
    edge_excess::io::pgm::write_pgm_file(&img, &frame).unwrap();
    let rois = dir.path().join("rois.jsonl");
    std::fs::write(
        &rois,
        "{\"frame\":0,\"track_id\":1,\"x\":0,\"y\":0,\"w\":32,\"h\":32}\n\
         {\"frame\":0,\"track_id\":2,\"x\":16,\"y\":16,\"w\":32,\"h\":32}\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let code = exit_code(
        bin()
            .arg("run")
            .arg("--frames")
            .arg(&frame)
            .arg("--rois")
            .arg(&rois)
            .arg("--out")
            .arg(&out_dir)
            .args(["--grouping", "global"]),
    );
    assert_eq!(code, 2);
    assert!(
        out_dir.join("report.json").exists(),
        "report must still be written"
    );
}

#[test]
fn run_rejects_bad_inputs_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let frame = write_stripes(dir.path(), "frame.pgm", 4);

    // Roi references frame 7 of a single-frame run.
    let rois = dir.path().join("rois.jsonl");
    std::fs::write(
        &rois,
        "{\"frame\":7,\"track_id\":1,\"x\":0,\"y\":0,\"w\":16,\"h\":16}\n",
    )
    .unwrap();
    let code = exit_code(
        bin()
            .arg("run")
            .arg("--frames")
            .arg(&frame)
            .arg("--rois")
            .arg(&rois)
            .arg("--out")
            .arg(dir.path().join("out")),
    );
    assert_eq!(code, 1);

    // Malformed roi line.
    std::fs::write(&rois, "{\"frame\":0}\n").unwrap();
    let code = exit_code(
        bin()
            .arg("run")
            .arg("--frames")
            .arg(&frame)
            .arg("--rois")
            .arg(&rois)
            .arg("--out")
            .arg(dir.path().join("out2")),
    );
    assert_eq!(code, 1);

    // Unknown flag is a usage error, reported as input error.
    assert_eq!(exit_code(bin().args(["run", "--bogus"])), 1);
}
