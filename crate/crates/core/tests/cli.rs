use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn speccc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speccc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn translate_without_abstraction_writes_only_ltl() {
    let dir = tempfile::tempdir().unwrap();
    let o = speccc(&[
        "translate",
        path(&data("cara.req")),
        "--dict",
        path(&data("cara.dict")),
        "--no-abstract",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let files: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(files, vec!["cara.ltl"]);
    let ltl = std::fs::read_to_string(dir.path().join("cara.ltl")).unwrap();
    assert!(ltl.contains("# Req-28\nG (X[180] !blood_pressure -> trigger_manual_mode)"), "{ltl}");
    assert_eq!(stdout(&o), ltl);
}

#[test]
fn clairvoyant_sample_exits_unrealizable_with_core() {
    let o = speccc(&["check", path(&data("unreal.req"))]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("== core\nculprit: U-2"), "{out}");
    assert!(out.contains("english: If the sensor is triggered in 3 seconds"), "{out}");
    assert!(out.trim_end().ends_with("UNREALIZABLE at k=1 (counter-strategy with 4 states)"), "{out}");
}

#[test]
fn conflict_formulas_from_ltl() {
    let o = speccc(&[
        "check",
        "--from-ltl",
        path(&data("conflict.ltl")),
        "--part",
        path(&data("conflict.part")),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"]["verdict"], "unrealizable");
    assert_eq!(v["core"]["culprit"], "B");
    assert_eq!(v["core"]["conflict_set"], serde_json::json!(["A", "B"]));
    let stages: Vec<&str> = v["completed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(stages, ["translate", "partition", "check", "core"]);
}

#[test]
fn override_file_repairs_the_promoted_input() {
    let o = speccc(&["check", path(&data("telephony.req"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("flip_to_output connect_line"));

    let dir = tempfile::tempdir().unwrap();
    let fix = dir.path().join("fix.part");
    std::fs::write(&fix, "outputs: connect_line\n").unwrap();
    let o = speccc(&["check", path(&data("telephony.req")), "--overrides", path(&fix)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("connect_line (override)"));
}

#[test]
fn translate_output_feeds_check_from_ltl() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    let req = data("telephony.req");
    let o = speccc(&["translate", path(&req), "--out", d]);
    assert_eq!(o.status.code(), Some(0));

    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let end_to_end = speccc(&["check", path(&req), "--out", path(&a), "--format", "json"]);
    let staged = speccc(&[
        "check",
        "--from-ltl",
        path(&dir.path().join("telephony.ltl")),
        "--out",
        path(&b),
        "--format",
        "json",
    ]);
    assert_eq!(end_to_end.status.code(), staged.status.code());
    let read = |p: PathBuf| std::fs::read_to_string(p).unwrap();
    for f in ["telephony.ltl", "telephony.part", "telephony.counter.txt", "telephony.core.txt"] {
        if f == "telephony.core.txt" {
            // The staged run has no English sources to quote.
            let strip = |s: String| -> String {
                s.lines().filter(|l| !l.trim_start().starts_with("english:")).collect::<Vec<_>>().join("\n")
            };
            assert_eq!(strip(read(a.join(f))), strip(read(b.join(f))), "{f}");
        } else {
            assert_eq!(read(a.join(f)), read(b.join(f)), "{f}");
        }
    }
    let ja: serde_json::Value = serde_json::from_slice(&end_to_end.stdout).unwrap();
    let jb: serde_json::Value = serde_json::from_slice(&staged.stdout).unwrap();
    assert_eq!(ja["partition"]["inputs"], jb["partition"]["inputs"]);
    assert_eq!(ja["verdict"], jb["verdict"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut outs = vec![];
    for d in &dirs {
        let o = speccc(&[
            "check",
            path(&data("unreal.req")),
            "--format",
            "json",
            "--out",
            path(d.path()),
        ]);
        assert_eq!(o.status.code(), Some(1));
        outs.push(o.stdout);
    }
    assert_eq!(outs[0], outs[1]);
    for f in ["unreal.ltl", "unreal.part", "unreal.report.json"] {
        let x = std::fs::read(dirs[0].path().join(f)).unwrap();
        let y = std::fs::read(dirs[1].path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}

#[test]
fn partition_and_abstract_subcommands() {
    let o = speccc(&["partition", path(&data("unreal.req"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "inputs:\n  trigger_sensor (antecedent)\noutputs:\n  raise_alarm (consequent)\n"
    );
    let o = speccc(&["abstract", path(&data("cara.req")), "--dict", path(&data("cara.dict")), "--B", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("divisor d = 60\n"), "{out}");
    assert!(out.contains("1 abstract tick = 60 seconds"), "{out}");
    let o = speccc(&["abstract", path(&data("cara.req")), "--dict", path(&data("cara.dict")), "--gcd-only"]);
    // Single-step nexts keep 1 in the duration set.
    assert!(stdout(&o).contains("divisor d = 1\n"));
}

#[test]
fn core_subcommand_on_realizable_spec_warns() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ok.ltl");
    std::fs::write(&f, "G (r -> F g)\n").unwrap();
    let o = speccc(&["core", "--from-ltl", path(&f), "--order", "size"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning: specification is realizable"));
}

#[test]
fn errors_exit_three_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.req");
    std::fs::write(&f, "R-1: The pump is started.\nR-2: When the pump, is started.\n").unwrap();
    let o = speccc(&["check", path(&f)]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("error in translate stage: R-2 (line 2)"), "{out}");
    assert!(out.contains("column"), "{out}");

    let o = speccc(&["check", path(&dir.path().join("missing.req"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));

    let o = speccc(&["check", path(&data("unreal.req")), "--kmax", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn selftest_subcommand_passes() {
    let o = speccc(&["selftest", "--cases", "6", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
