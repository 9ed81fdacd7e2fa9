use std::process::{Command, Output};

use serde_json::Value;

fn sl2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2"))
        .args(args)
        .env_remove("SL2_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn ok(args: &[&str]) -> Value {
    let out = sl2(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    assert_eq!(v["schema_version"], "1");
    v
}

fn family_json() -> String {
    let out = sl2(&[
        "family-build",
        "--n",
        "2",
        "--p",
        "0,1",
        "--a0",
        "1",
        "--mu",
        "0",
    ]);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn strata_lists_all_types() {
    let v = ok(&["strata", "--n", "2", "--mu", "0"]);
    assert_eq!(v["types"].as_array().unwrap().len(), 9);
    assert_eq!(v["counts"]["zero"], 3);
    assert_eq!(v["types"][0]["label"], "S-(0,1,1)");
}

#[test]
fn family_build_reports_zero_type() {
    let v = ok(&[
        "family-build",
        "--n",
        "2",
        "--p",
        "0,1",
        "--a0",
        "1",
        "--mu",
        "0",
    ]);
    assert_eq!(v["smithType"]["variant"], "zero");
    assert_eq!(v["smithType"]["indices"], serde_json::json!([2, 0]));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["A1"]["entries"][1][1], serde_json::json!(["0", "1"]));
    assert_eq!(v["finiteGeneration"]["finitelyGenerated"], true);
}

#[test]
fn built_reps_round_trip_through_every_reader() {
    let fam = family_json();
    let built = String::from_utf8(sl2(&["rep-build", "--type", "S-(1,1,1)", "--mu", "2/3"]).stdout)
        .unwrap();
    for doc in [&fam, &built] {
        assert_eq!(ok(&["rep-verify", "--json", doc])["ok"], true);
        ok(&["rep-classify", "--json", doc]);
        let dual = sl2(&["rep-dualize", "--json", doc]);
        assert_eq!(dual.status.code(), Some(0));
        let dual = String::from_utf8(dual.stdout).unwrap();
        assert_eq!(ok(&["rep-verify", "--json", &dual])["ok"], true);
        ok(&["endo", "--json", doc]);
    }
    let c = ok(&["rep-classify", "--json", &built]);
    assert_eq!(c["label"], "S-(1,1,1)");
    assert_eq!(c["dualSmithType"]["variant"], "plus");
}

#[test]
fn corrupted_rep_names_the_failed_identity() {
    let mut v: Value = serde_json::from_str(&family_json()).unwrap();
    v["A_minus1"]["entries"][1][1] = serde_json::json!(["1"]);
    let out = sl2(&["rep-verify", "--json", &v.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["ok"], false);
    assert_eq!(r["casimirLeft"], false);
    assert!(r["failures"]
        .as_array()
        .unwrap()
        .contains(&"casimirLeft".into()));
    // The same corruption is refused by readers that rebuild A_minus1.
    let out = sl2(&["rep-classify", "--json", &v.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["hypothesis"]
        .as_str()
        .unwrap()
        .contains("A_minus1"));
}

#[test]
fn non_casimir_input_exits_one() {
    let doc = r#"{"mu":"0","A1":{"rows":1,"cols":1,"entries":[[["0","0","0","1"]]]}}"#;
    let out = sl2(&["rep-verify", "--json", doc]);
    assert_eq!(out.status.code(), Some(1));
    let e = &json(&out)["error"];
    assert_eq!(e["kind"], "math");
    assert!(e["hypothesis"].as_str().unwrap().contains("pi_mu(z+1)"));
}

#[test]
fn schema_errors_exit_two_with_json() {
    for args in [
        vec!["rep-verify", "--json", "{\"mu\": 0"],
        vec![
            "rep-verify",
            "--json",
            r#"{"mu":"0","n":3,"A1":{"rows":1,"cols":1,"entries":[[["1"]]]}}"#,
        ],
        vec!["strata"],
        vec!["rank1", "--type", "V", "--mu", "0"],
        vec![
            "family-build",
            "--n",
            "2",
            "--p",
            "0,x",
            "--a0",
            "1",
            "--mu",
            "0",
        ],
        vec!["reduce", "--alpha", "-1;1", "--mu", "0"],
    ] {
        let out = sl2(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["error"]["kind"], "schema", "{args:?}");
    }
}

#[test]
fn family_preconditions_exit_one() {
    let out = sl2(&[
        "family-build",
        "--n",
        "1",
        "--p",
        "0,1",
        "--a0",
        "1",
        "--mu",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = sl2(&["alpha-dualize", "--alpha", "0;1", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn alpha_dualize_example() {
    let v = ok(&["alpha-dualize", "--alpha", "-1;1", "--mu", "0"]);
    assert_eq!(v["pairingCheck"], true);
    assert_eq!(v["doubleDualUpToUnit"], true);
    assert_eq!(
        v["alphaStar"]["1"]["num"],
        serde_json::json!(["0", "0", "-1", "0", "1"])
    );
}

#[test]
fn rank1_reports_invariant_ideals() {
    let v = ok(&["rank1", "--type", "II", "--mu", "-3/2"]);
    assert_eq!(
        v["invariantIdeals"]["ideals"],
        serde_json::json!([["-1/4", "0", "1"]])
    );
    assert_eq!(v["irreducible"], false);
    assert!(v["warnings"][0].as_str().unwrap().contains("below -1/2"));
    assert_eq!(
        ok(&["rank1", "--type", "IV", "--mu", "1/3"])["irreducible"],
        true
    );
}

#[test]
fn reduce_example() {
    let v = ok(&[
        "reduce",
        "--alpha",
        "-1;0,-1;1",
        "--mu",
        "0",
        "--element",
        "3:1",
    ]);
    assert_eq!(
        v["coordinates"],
        serde_json::json!([["1", "1"], ["1", "1", "1"]])
    );
}

#[test]
fn endo_defaults_its_bound() {
    let v = ok(&["endo", "--json", &family_json()]);
    assert_eq!(v["degBound"], 3);
    assert_eq!(v["scalarOnly"], true);
    let split = r#"{"mu":"0","A1":{"rows":2,"cols":2,"entries":[[["1"],[]],[[],["1"]]]}}"#;
    assert_eq!(
        ok(&["endo", "--json", split, "--deg-bound", "0"])["dimension"],
        4
    );
}

#[test]
fn falsifier_echoes_seed_and_bounds() {
    let planted =
        r#"{"mu":"0","A1":{"rows":2,"cols":2,"entries":[[["1"],[]],[[],["0","1","1"]]]}}"#;
    let v = ok(&[
        "family-falsify",
        "--json",
        planted,
        "--deg-bound",
        "1",
        "--samples",
        "4",
        "--seed",
        "9",
    ]);
    assert_eq!(v["outcome"], "ProperSubmodule");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["bounds"]["degBound"], 1);
    assert_eq!(v["witness"]["generator"], serde_json::json!([["1"], []]));

    let out = Command::new(env!("CARGO_BIN_EXE_sl2"))
        .args([
            "family-falsify",
            "--n",
            "2",
            "--p",
            "0,1",
            "--a0",
            "1",
            "--mu",
            "0",
            "--deg-bound",
            "1",
        ])
        .env("SL2_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
    let flag = Command::new(env!("CARGO_BIN_EXE_sl2"))
        .args([
            "family-falsify",
            "--n",
            "2",
            "--p",
            "0,1",
            "--a0",
            "1",
            "--mu",
            "0",
            "--deg-bound",
            "1",
            "--seed",
            "5",
        ])
        .env("SL2_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&flag)["seed"], 5);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let base = [
        "family-falsify",
        "--n",
        "2",
        "--p",
        "1,0,1",
        "--a0",
        "-2",
        "--mu",
        "1/2",
        "--deg-bound",
        "2",
    ];
    let one = sl2(&[&base[..], &["--jobs", "1"]].concat()).stdout;
    let four = sl2(&[&base[..], &["--jobs", "4"]].concat()).stdout;
    assert_eq!(one, four);
}

#[test]
fn smith_accepts_bare_and_wrapped_matrices() {
    let m = r#"{"rows":2,"cols":2,"entries":[[["0","1"],["1"]],[["1"],["0","1"]]]}"#;
    let bare = ok(&["smith", "--json", m]);
    let wrapped = ok(&["smith", "--json", &format!(r#"{{"M":{m}}}"#)]);
    assert_eq!(bare["invariantFactors"], wrapped["invariantFactors"]);
    assert_eq!(
        bare["invariantFactors"],
        serde_json::json!([["1"], ["-1", "0", "1"]])
    );
    assert_eq!(bare["oracleAgrees"], true);
}
