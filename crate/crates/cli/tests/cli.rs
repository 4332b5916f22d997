// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcurve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn circle_line_table() {
    let o = run(&["frenet", "--builtin", "circle-line", "--samples", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = rows(&o);
    assert_eq!(t.len(), 8);
    assert_eq!(t[0].len(), 32);
    assert_eq!(t[0][0], "s");
    let col = |name: &str| t[0].iter().position(|h| h == name).unwrap();
    for r in &t[1..] {
        assert_eq!(r.len(), 32);
        let v = |name: &str| r[col(name)].parse::<f64>().unwrap();
        assert!((v("kappa_re") - 1.0).abs() < 1e-12);
        assert!(v("kappa_du").abs() < 1e-12);
        assert!(v("tau_re").abs() < 1e-12);
        assert!((v("tau_du") - 1.0).abs() < 1e-12);
    }
}

#[test]
fn planar_tables_have_no_binormal() {
    let o = run(&[
        "closed-form",
        "--family",
        "planar-constant",
        "--param",
        "r=2",
        "--param",
        "a=0.5",
        "--samples",
        "3",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = rows(&o);
    let tau = t[0].iter().position(|h| h == "tau_re").unwrap();
    let bx = t[0].iter().position(|h| h == "B_re_x").unwrap();
    assert!(t[1..].iter().all(|r| r[tau] == "nan" && r[bx] == "nan"));
}

#[test]
fn non_orthogonal_input_is_rejected() {
    let o = run(&["frenet", "--alpha", "s,0,0", "--beta", "s,s,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("orthogonal"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn non_regular_input_is_rejected() {
    let o = run(&["frenet", "--alpha", "0,0,1", "--beta", "s,0,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not regular"), "{}", stderr(&o));
}

#[test]
fn slow_curves_need_reparametrization() {
    let args = [
        "frenet",
        "--alpha",
        "cos(s^2),sin(s^2),0",
        "--beta",
        "0,0,cos(s)",
        "--s0",
        "0.5",
        "--s1",
        "2",
    ];
    let o = run(&args);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--reparametrize"));
    let o = run(&[
        &args[..],
        &["--reparametrize", "--s-start", "0.25", "--samples", "4"],
    ]
    .concat());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(rows(&o).len(), 5);
}

#[test]
fn vanishing_curvature_is_degenerate() {
    let o = run(&["frenet", "--alpha", "s,0,0", "--beta", "0,s,0"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn solve_rejects_nonpositive_curvature() {
    let o = run(&[
        "solve", "--dim", "3", "--k1", "s-1", "--s0", "0", "--s1", "2",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("positive"));
}

#[test]
fn solve_reports_prescription() {
    let o = run(&[
        "solve",
        "--dim",
        "3",
        "--k1",
        "1",
        "--tau2",
        "s",
        "--samples",
        "5",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("-> pass"));
    let o = run(&["solve", "--dim", "2", "--k1", "1", "--tau1", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn coarse_steps_fail_verification() {
    let o = run(&[
        "solve", "--dim", "3", "--k1", "1", "--k2", "sin(3*s)", "--tau1", "cos(s)", "--step", "0.5",
    ]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    assert!(stderr(&o).contains("integration consistency"));
}

#[test]
fn verify_helix_lift() {
    let o = run(&["verify", "--builtin", "helix-lift"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let log = stderr(&o);
    assert!(log.contains("normalized: false"));
    assert!(log.contains("result: pass"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "family = \"helix-planar-dual\"\nsamples = 9\n[params]\nk1 = 1.0\ntau1 = 1.0\nc1 = 1.0\n",
    )
    .unwrap();
    let o = run(&[
        "closed-form",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(rows(&o).len(), 5);
    assert!(stderr(&o).contains("planarity of beta"));
    std::fs::write(&cfg, "sample = 3\n").unwrap();
    let o = run(&["frenet", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

fn plot(input: &Path, out: &Path) -> Output {
    run(&[
        "plot",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ])
}

#[test]
fn plot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("helix.csv");
    let svg = dir.path().join("helix.svg");
    let o = run(&[
        "frenet",
        "--builtin",
        "helix-lift",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = plot(&csv, &svg);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<polyline").count(), 6);

    let bad = dir.path().join("bad.csv");
    for content in [
        "",
        "alpha_x,alpha_y\n1,2\n",
        "s,alpha_x,alpha_y,alpha_z,beta_x,beta_y,beta_z\n0,1,2,3,4,5,x\n0,1,2,3,4,5,6\n",
    ] {
        std::fs::write(&bad, content).unwrap();
        assert_eq!(code(&plot(&bad, &svg)), 2, "accepted {content:?}");
    }
    assert_eq!(code(&plot(&dir.path().join("missing.csv"), &svg)), 2);
}

#[test]
fn unknown_sources_are_input_errors() {
    assert_eq!(code(&run(&["frenet", "--builtin", "nope"])), 2);
    assert_eq!(code(&run(&["frenet"])), 2);
    assert_eq!(
        code(&run(&[
            "frenet",
            "--alpha",
            "cos(s),sin(s)",
            "--beta",
            "0,0,s"
        ])),
        2
    );
}

#[test]
fn shipped_configs_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let cmd = match name.as_str() {
            "log-spiral" | "zero-torsion" | "dual-torsion" => "solve",
            "planar-spiral" | "planar-beta" => "closed-form",
            _ => "frenet",
        };
        let o = run(&[cmd, "--config", path.to_str().unwrap(), "--samples", "5"]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
        assert_eq!(rows(&o).len(), 6, "{name}");
        seen += 1;
    }
    assert!(seen >= 8);
}
