use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_synthprove"))
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generated(out: &str) -> usize {
    let line = out.lines().find(|l| l.starts_with("% generated:")).expect("stats line");
    line.split_whitespace().nth(2).unwrap().parse().unwrap()
}

#[test]
fn prove_socrates() {
    let o = run(&["prove", data("smoke/socrates.p").to_str().unwrap(), "--proof"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("RefutationFound"));
    assert!(generated(&out) <= 10);
    assert!(out.contains("$false, inference(resolution"), "{out}");
}

#[test]
fn prove_satisfiable_and_broken_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat.p");
    fs::write(&sat, "cnf(a, axiom, p(a)).\n").unwrap();
    let o = run(&["prove", sat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("% status: Saturated"));

    assert_eq!(run(&["prove", dir.path().join("missing.p").to_str().unwrap()]).status.code(), Some(2));
    let bad = dir.path().join("bad.p");
    fs::write(&bad, "cnf(a, axiom, p(a) | ).\n").unwrap();
    let o = run(&["prove", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.p:1:"));
    assert_eq!(run(&["prove", sat.to_str().unwrap(), "--cost", "model"]).status.code(), Some(2));
    assert_eq!(run(&["prove", sat.to_str().unwrap(), "--age-cost-ratio", "0:1"]).status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "max_clauses = 0\ntimeout_secs = 0\n").unwrap();
    let p = data("smoke/transitivity_2.p");
    let p = p.to_str().unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "prove", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BudgetExhausted"));
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "prove", p, "--max-clauses", "1000"]).status.code(), Some(0));
    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "prove", p]).status.code(), Some(2));
}

#[test]
fn generate_writes_files_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let axioms = data("axioms/kinship.p");
    let args = ["generate", axioms.to_str().unwrap(), "--count", "12", "--steps", "4", "--seed", "3", "--out", out.to_str().unwrap()];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = fs::read_to_string(out.join("manifest.jsonl")).unwrap();
    assert_eq!(manifest.lines().count(), 12);
    assert!(out.join("kinship_3_0.p").exists());
    assert!(out.join("kinship_3_11.p").exists());
    let first = fs::read_to_string(out.join("kinship_3_0.p")).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(fs::read_to_string(out.join("manifest.jsonl")).unwrap(), manifest);
    assert_eq!(fs::read_to_string(out.join("kinship_3_0.p")).unwrap(), first);

    let zero = ["generate", axioms.to_str().unwrap(), "--count", "2", "--steps", "0", "--out", out.to_str().unwrap()];
    assert_eq!(run(&zero).status.code(), Some(2));
}

#[test]
fn generate_reports_dead_axiom_sets() {
    let dir = tempfile::tempdir().unwrap();
    let ax = dir.path().join("flat.p");
    fs::write(&ax, "cnf(a, axiom, p(a)).\ncnf(b, axiom, q(b)).\n").unwrap();
    let out = dir.path().join("g");
    let o = run(&["generate", ax.to_str().unwrap(), "--count", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let manifest = fs::read_to_string(out.join("manifest.jsonl")).unwrap();
    assert_eq!(manifest.lines().count(), 3);
    assert!(manifest.contains("\"error\""));
}

fn mined_dataset(dir: &Path) -> (PathBuf, serde_json::Value) {
    let g = dir.join("g");
    let axioms = data("axioms/kinship.p");
    let o = run(&["generate", axioms.to_str().unwrap(), "--count", "40", "--steps", "6", "--seed", "1", "--out", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ds = dir.join("d.jsonl");
    let o = run(&["mine", g.to_str().unwrap(), "--out", ds.to_str().unwrap(), "--timeout-secs", "0", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("proved "));
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("d.jsonl.meta.json")).unwrap()).unwrap();
    (ds, meta)
}

#[test]
fn mine_balances_labels() {
    let dir = tempfile::tempdir().unwrap();
    let (ds, meta) = mined_dataset(dir.path());
    let rows: Vec<serde_json::Value> =
        fs::read_to_string(&ds).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["features"].as_array().unwrap().len() == 38));
    let pos = rows.iter().filter(|r| r["label"] == 1).count() as i64;
    let neg = rows.len() as i64 - pos;
    let proved = meta["proved"].as_i64().unwrap();
    assert!((pos - neg).abs() <= proved);
    assert_eq!(meta["axiom_set"], "kinship");
    assert_eq!(meta["examples"].as_u64().unwrap() as usize, rows.len());
}

#[test]
fn mine_rejects_empty_directories() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["mine", dir.path().to_str().unwrap(), "--out", dir.path().join("d.jsonl").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no problems found"));
}

#[test]
fn train_and_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (ds, _) = mined_dataset(dir.path());
    let model = dir.path().join("m.json");
    let hist = dir.path().join("h.csv");
    let train = |hist: &Path| {
        run(&[
            "train", ds.to_str().unwrap(), "--out", model.to_str().unwrap(), "--history", hist.to_str().unwrap(),
            "--learning-rate", "3e-3", "--seeds", "1", "--max-epochs", "15", "--batch-size", "64", "--validation-fraction", "0.25",
        ])
    };
    let o = train(&hist);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("validation accuracy"));
    let hist2 = dir.path().join("h2.csv");
    assert_eq!(train(&hist2).status.code(), Some(0));
    assert_eq!(fs::read(&hist).unwrap(), fs::read(&hist2).unwrap());
    assert!(fs::read_to_string(&hist).unwrap().starts_with("run,learning_rate,seed,epoch,"));

    let csv = dir.path().join("r.csv");
    let spec = format!("model:{}", model.display());
    let o = run(&[
        "eval", dir.path().join("g").to_str().unwrap(), "--cost", "weight", "--cost", &spec, "--max-clauses", "5000",
        "--timeout-secs", "0", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("solved by both weight and model:"), "{out}");
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1 + 80);

    let p = data("smoke/socrates.p");
    let o = run(&["prove", p.to_str().unwrap(), "--cost", "model", "--model", model.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn train_rejects_a_single_class() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("one.jsonl");
    let mut text = String::new();
    for i in 0..6 {
        text.push_str(&format!(
            "{{\"theorem_id\":\"t{}\",\"clause_id\":{i},\"label\":1,\"features\":{:?}}}\n",
            i % 3,
            vec![i as f64; 38]
        ));
    }
    fs::write(&ds, text).unwrap();
    let o = run(&["train", ds.to_str().unwrap(), "--out", dir.path().join("m.json").to_str().unwrap(), "--grid", "desk"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_with_one_cost_and_no_budget() {
    let o = run(&["eval", data("smoke").to_str().unwrap(), "--max-clauses", "0", "--timeout-secs", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2, "{out}");
    assert!(lines[1].starts_with("weight"));
    assert_eq!(lines[1].split_whitespace().nth(1), Some("0"));

    let o = run(&["eval", data("smoke").to_str().unwrap(), "--max-clauses", "10000", "--timeout-secs", "0"]);
    let out = stdout(&o);
    assert_eq!(out.lines().nth(1).unwrap().split_whitespace().nth(1), Some("15"), "{out}");
}
