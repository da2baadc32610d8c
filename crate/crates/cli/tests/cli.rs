use std::process::Command;

fn jsmimo() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jsmimo"))
}

#[test]
fn config_file_run_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    let out = dir.path().join("s.csv");
    std::fs::write(
        &cfg,
        "# small custom sweep\nM = 24\nK = 2\ntau = 5\np_db = 3\nq_db = 6\n\
         sweep = antennas\nsweep_values = 12, 24\nmethods = mmse_js+zfjs:cf, lmmse+mf:asy, lmmse+zf:mc\n\
         n_outer = 6\nn_inner = 4\nseed = 3\n",
    )
    .unwrap();
    let status = jsmimo()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# generated_unix_time="));
    assert_eq!(lines[1], "# sweep_axis=antennas");
    assert_eq!(lines[2], jsmimo_cli::CSV_HEADER);
    assert_eq!(lines.len(), 3 + 2 * 3);
    assert!(lines[3].starts_with("12,5,mmse_js,zfjs,closed_form,"));
    assert!(lines.iter().skip(3).all(|l| l.split(',').nth(9) == Some("3")));
}

#[test]
fn bad_config_fails_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "preset = fig2\nM = many\n").unwrap();
    let out = jsmimo().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn missing_file_and_no_source_fail() {
    assert!(!jsmimo()
        .args(["run", "--config", "/nonexistent/x.cfg"])
        .status()
        .unwrap()
        .success());
    assert!(!jsmimo().arg("run").output().unwrap().status.success());
}

#[test]
fn unwritable_output_fails() {
    let out = jsmimo()
        .args([
            "run",
            "--preset",
            "fig2",
            "--trials-outer",
            "2",
            "--trials-inner",
            "2",
            "--out",
            "/nonexistent/dir/o.csv",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn preset_flag_is_base_for_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("o.cfg");
    std::fs::write(&cfg, "sweep_values = 4\nmethods = mmse_js+zfjs:cf\nn_outer = 5\n").unwrap();
    let out = jsmimo()
        .args(["run", "--preset", "fig2", "--reproducible", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("4,3,mmse_js,zfjs,closed_form,"));
}
