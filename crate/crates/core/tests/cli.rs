use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricsing"))
        .args(args)
        .env_remove("TORICSING_BUDGET_STEPS")
        .output()
        .unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn config_command() {
    let o = run(&["config", "--kind", "D", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["points"].as_array().unwrap().len(), 5);
    let o = run(&["config", "--kind", "A", "--n", "2", "--lipman"]);
    assert_eq!(json(&o)["points"].as_array().unwrap().len(), 3);
    let o = run(&["config", "--kind", "E", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn gb_command() {
    let order = format!(
        "lex:{}",
        (1..=10)
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let o = run(&["gb", "--kind", "E", "--n", "7", "--order", &order]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    assert_eq!(v["squarefree"], true);

    let o = run(&["gb", "--kind", "E", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["elements"].as_array().unwrap().is_empty());

    let dir = std::env::temp_dir().join(format!("toricsing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("a2.cfg");
    std::fs::write(&file, "# A_2\n3 0\n0 3\n\n1 1\n").unwrap();
    let o = run(&[
        "gb",
        "--points",
        file.to_str().unwrap(),
        "--order",
        "degrevlex",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["elements"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--kind", "D", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--kind", "E", "--n", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!json(&o)["table_diff"]["paper_only"]
        .as_array()
        .unwrap()
        .is_empty());
    let o = run(&["verify", "--kind", "D", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn betti_and_fan_commands() {
    let o = run(&["betti", "--kind", "E", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["indispensables"].as_array().unwrap().len(), 6);
    assert_eq!(v["min_gen_set_count"], 1);

    let o = run(&[
        "fan",
        "--kind",
        "A",
        "--n",
        "2",
        "--mode",
        "sample",
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["initial_ideals"].as_array().unwrap().len(), 2);

    let o = run(&["fan", "--kind", "A", "--n", "2", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("graph"));
}

#[test]
fn budget_exit_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_toricsing"))
        .args(["gb", "--kind", "D", "--n", "9"])
        .env("TORICSING_BUDGET_STEPS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["gb", "--kind", "D", "--n", "9", "--steps", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["gb", "--kind", "D", "--n", "9", "--steps", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["gb", "--kind", "D", "--n", "4", "--order", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["gb", "--points", "/nonexistent/file"]).status.code(),
        Some(2)
    );
}
