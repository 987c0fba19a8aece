use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladder-corners"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn wtilde_on_the_small_square() {
    let out = run(&["wtilde", "--region", "rect2x2", "--b", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 1\nt\n");
}

#[test]
fn family_and_oracle_agree() {
    let w = run(&["w", "--region", "g:3,3,3", "--b", "1,3"]);
    let o = run(&["oracle", "--region", "g:3,3,3", "--b", "1,3"]);
    assert_eq!(stdout(&w), "1 2\n1 + 2t\n");
    assert_eq!(stdout(&w), stdout(&o));
}

#[test]
fn acoeff_and_bforms() {
    assert_eq!(
        stdout(&run(&["acoeff", "--b", "1,3,4", "--c", "2,3,4"])),
        "2\n"
    );
    assert_eq!(
        stdout(&run(&[
            "bform", "--which", "3", "--b", "1,3,4", "--c", "2,3,4"
        ])),
        "2 -1\n2 - t\n"
    );
    assert_eq!(
        stdout(&run(&["bform", "--which", "1", "--b", "1,3", "--c", "2,4"])),
        "0 1\nt\n"
    );
    let out = run(&["bform", "--which", "3", "--b", "1,2", "--c", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_main_expansion() {
    let out = run(&["check", "thm4_2", "--region", "rect3x3", "--b", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "thm4_2 pass 0 --region rect3x3 --b 1,3\nlhs 2 1\nrhs 2 1\n"
    );
}

#[test]
fn check_errors_and_skips() {
    assert_eq!(
        run(&["check", "nonsense", "--b", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "thm4_2", "--region", "rect3x3", "--b", "3,1"])
            .status
            .code(),
        Some(2)
    );
    // The one-column recursion needs a column to peel.
    assert_eq!(
        run(&["check", "lem2_3i", "--region", "rect2x2", "--b", "1,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["w", "--region", "rect3x3"]).status.code(), Some(2));
    assert_eq!(
        run(&["w", "--region", "g:2,3", "--b", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["w", "--region", "/no/such/file", "--b", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bform", "--which", "4", "--b", "1,2", "--c", "1,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn region_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("ladder-corners-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ladder.txt");
    std::fs::write(&path, "3 3\n3 3 2\n").unwrap();
    let out = run(&["wtilde", "--region", path.to_str().unwrap(), "--b", "1,2"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(stdout(&out), "0 1\nt\n");
}

#[test]
fn suite_output_is_deterministic() {
    let args = [
        "suite", "--seed", "42", "--cases", "20", "--max-m", "6", "--max-n", "6", "--max-r", "3",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let summary = text.lines().last().unwrap();
    let fields: Vec<usize> = summary.split(' ').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields.len(), 4);
    assert_eq!(fields[0], fields[1] + fields[2] + fields[3]);
    assert_eq!(fields[2], 0);
    assert_eq!(text.lines().count(), fields[0] + 1);
}

#[test]
fn empty_suite_succeeds() {
    let out = run(&["suite", "--seed", "1", "--cases", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 0 0 0\n");
}

#[test]
fn every_identity_is_listed() {
    let text = stdout(&run(&["list"]));
    for name in [
        "thm1_1", "eq2", "lem2_1", "cor2_2", "lem2_3i", "lem2_3ii", "lem3_3", "lem3_4", "lem3_5",
        "lem3_6", "thm3_1", "prop4_1", "thm4_2",
    ] {
        assert!(
            text.lines().any(|l| l.split(' ').next() == Some(name)),
            "{name}"
        );
    }
}

#[test]
fn closed_forms_and_peels() {
    assert_eq!(
        stdout(&run(&["closed", "--region", "rect3x3", "--b", "1,3"])),
        "1 2\n1 + 2t\n"
    );
    assert_eq!(
        stdout(&run(&[
            "closed",
            "--identity",
            "--region",
            "rect3x3",
            "--b",
            "1,2"
        ])),
        stdout(&run(&["w", "--region", "rect3x3", "--b", "1,2"]))
    );
    assert_eq!(
        stdout(&run(&["peel", "--region", "rect3x3", "--b", "1,3"])),
        "0 2 1\n2t + t^2\n"
    );
    assert_eq!(
        stdout(&run(&[
            "peel", "--square", "--region", "rect3x3", "--b", "1,3"
        ])),
        "1 2\n1 + 2t\n"
    );
    assert_eq!(
        stdout(&run(&["rhs", "--region", "rect3x3", "--b", "1,3"])),
        "2 1\n2 + t\n"
    );
    assert_eq!(
        stdout(&run(&[
            "single", "--region", "g:3,3,2", "--a", "1", "--b", "1"
        ])),
        "1 3 1\n1 + 3t + t^2\n"
    );
    assert_eq!(
        stdout(&run(&["bracket", "--curly", "--c", "2,3", "--b", "1,2"])),
        "0 -1 1\n-t + t^2\n"
    );
}
