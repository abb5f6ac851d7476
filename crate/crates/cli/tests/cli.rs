use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fitkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fitkit"))
        .args(args)
        .env_remove("FITKIT_CAP_SUBGROUP")
        .env_remove("FITKIT_CAP_LATTICE")
        .env_remove("FITKIT_CAP_ORACLE")
        .env_remove("FITKIT_CAP_TOWER")
        .env_remove("FITKIT_CAP_COMPLEMENT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", &format!("{name}.grp")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_sym4() {
    let o = fitkit(&["analyze", &corpus("s4"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["fstar"]["order"], 4);
    assert_eq!(v["fitting"]["order"], 4);
    assert_eq!(v["layer"]["order"], 1);
    assert_eq!(v["centralizer_equals_center"], true);
}

#[test]
fn analyze_alt5_and_trivial() {
    let v = json(&fitkit(&["analyze", &corpus("a5"), "--format", "json"]));
    assert_eq!((v["fitting"]["order"].as_u64(), v["layer"]["order"].as_u64(), v["fstar"]["order"].as_u64()), (Some(1), Some(60), Some(60)));
    let v = json(&fitkit(&["analyze", &corpus("trivial"), "--format", "json"]));
    for key in ["fitting", "layer", "fstar", "center_of_fitting", "centralizer_of_fstar"] {
        assert_eq!(v[key]["order"], 1, "{key}");
    }
    let text = stdout(&fitkit(&["analyze", &corpus("a5")]));
    assert!(text.contains("component 1"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "# comment\ndegree 3\n(1 2)\n(1 9)\n").unwrap();
    let o = fitkit(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

fn build(dir: &Path, primes: &str, levels: &str) -> String {
    let out = dir.join(format!("tower-{primes}.json"));
    let o = fitkit(&["tower", "build", "--primes", primes, "--levels", levels, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out.to_string_lossy().into_owned()
}

#[test]
fn tower_build_certify_order() {
    let dir = tempfile::tempdir().unwrap();
    let t = build(dir.path(), "2,3", "2");
    let v = json(&fitkit(&["tower", "validate", &t, "--format", "json"]));
    assert_eq!(v["levels"][1]["order"], 18);
    let v = json(&fitkit(&["tower", "certify", &t, "--depth", "2", "--format", "json"]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["levels"][0]["stable_image"]["order"], 1);
    assert_eq!(stdout(&fitkit(&["tower", "order", &t, "--depth", "2"])).trim(), "2*3^2");
}

#[test]
fn tower_witness() {
    let dir = tempfile::tempdir().unwrap();
    let t = build(dir.path(), "2,3,2,3", "4");
    let o = fitkit(&["tower", "witness", &t, "--level", "1", "--element", "(1 2)", "--depth", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["found"], true);
    assert_eq!(v["witness"]["level"], 2);
    assert_eq!(v["witness"]["quotient_order"], 6);
    assert_eq!(stdout(&fitkit(&["tower", "order", &t, "--depth", "4"])).trim(), "2^7*3^8");
}

#[test]
fn tower_errors() {
    assert_eq!(fitkit(&["tower", "build", "--primes", "2,2", "--levels", "2"]).status.code(), Some(2));
    assert_eq!(fitkit(&["tower", "build", "--primes", "2,6", "--levels", "2"]).status.code(), Some(2));
    let capped = fitkit(&["--cap-tower", "100", "tower", "build", "--primes", "2,3,2", "--levels", "3"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("tower cap exceeded"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"levels": [{"degree": 2, "generators": ["(1 2)"]}, {"degree": 2, "generators": ["(1 2)"]}], "projections": [{"generator_images": ["()"]}], "metadata": {}}"#).unwrap();
    let o = fitkit(&["tower", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not surjective"));
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(fitkit(&["tower", "validate", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = fitkit(&["verify", "theoremB"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
    let o = fitkit(&["verify", "oracleFstar", "--max-order", "300", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["failed"], 0);
    assert_eq!(fitkit(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(fitkit(&["verify", "theoremB", "--random", "3", "12"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "theoremB", "--random", "8", "7", "--seed", "5", "--format", "json"];
    let (a, b) = (fitkit(&args), fitkit(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
}

#[test]
fn caps_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fitkit"))
        .args(["tower", "build", "--primes", "2,3,2", "--levels", "3"])
        .env("FITKIT_CAP_TOWER", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
