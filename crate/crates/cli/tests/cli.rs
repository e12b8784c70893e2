use std::process::Command;

use clap::Parser;
use genlie::braid_hecke::{BraidMonoid, RegularBraidWitness};
use genlie::defining_char::{AlperinReport, BlockTable, DefiningContext, KrReport};
use genlie::degeneration::{build_isomorphism, AbelianLGroup, Certificate, DgReport};
use genlie::ell_local::{sylow_structure, SylowReport};
use genlie::root_datum::RootDatum;
use genlie::weyl::WeylGroup;
use genlie_cli::{run_with_env, RunConfig, RunOutput};
use serde_json::{json, Value};

fn call(args: &[&str]) -> RunOutput {
    let cfg = RunConfig::try_parse_from(std::iter::once("genlie").chain(args.iter().copied())).unwrap();
    run_with_env(&cfg, None)
}

fn ok_json(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn blocks_a1_at_five() {
    let v = ok_json(&["blocks", "A1", "--q", "5", "--json"]);
    assert_eq!(v["counts"], json!({"trivial": 2, "nontrivial": 2, "defect_zero": 1}));
    let table: BlockTable = serde_json::from_value(v["table"].clone()).unwrap();
    let direct = DefiningContext::new(&RootDatum::build("A1").unwrap(), 5).unwrap().block_partition().unwrap();
    assert_eq!(table, direct);
}

#[test]
fn kr_sum_a2_at_two_vanishes() {
    let v = ok_json(&["kr-sum", "A2", "--q", "2"]);
    assert_eq!(v["sum"], json!("0"));
    let r: KrReport = serde_json::from_value(v).unwrap();
    let direct = DefiningContext::new(&RootDatum::build("A2").unwrap(), 2).unwrap().knorr_robinson_sum().unwrap();
    assert_eq!(r, direct);
}

#[test]
fn llt_weight_two_at_one() {
    let v = ok_json(&["llt", "--n", "2", "--d", "2", "--at-1"]);
    assert_eq!(v["matrix"], json!([[1, 0], [1, 1]]));
    assert_eq!(v["partitions"], json!(["(2)", "(1,1)"]));
    let csv = call(&["llt", "--n", "2", "--d", "2", "--at-1", "--format", "csv"]).stdout;
    assert_eq!(csv, "\"lambda\\mu\",\"(2)\",\"(1,1)\"\n\"(2)\",\"1\",\"0\"\n\"(1,1)\",\"1\",\"1\"\n");
    let v = ok_json(&["llt", "--n", "2", "--d", "2"]);
    assert_eq!(v["matrix"][1][0], json!({"1": 1}));
}

#[test]
fn order_values_are_strings_and_match_matrix_counts() {
    // |SL_2(7)| = 7 (49 - 1), |GL_2(3)| = (9 - 1)(9 - 3)
    let v = ok_json(&["order", "A1", "--q", "7", "--ell", "3"]);
    assert_eq!(v["value"], json!("336"));
    assert_eq!((v["d"].clone(), v["nu"].clone()), (json!(1), json!(1)));
    assert_eq!(ok_json(&["order", "GL2", "--q", "3"])["value"], json!("48"));
    // |E_8(2)| overflows 64 bits; the string survives intact
    let e8 = ok_json(&["order", "E8", "--q", "2"]);
    assert!(e8["value"].as_str().unwrap().len() > 60);
}

#[test]
fn reports_round_trip_into_library_types() {
    let a: AlperinReport = serde_json::from_value(ok_json(&["alperin", "B2", "--q", "3"])).unwrap();
    assert_eq!(a, DefiningContext::new(&RootDatum::build("B2").unwrap(), 3).unwrap().alperin_weights().unwrap());

    let s: SylowReport = serde_json::from_value(ok_json(&["sylow", "G2", "--q", "2", "--ell", "7"])).unwrap();
    assert_eq!(s, sylow_structure(&RootDatum::build("G2").unwrap(), 2, 7).unwrap());

    let b: RegularBraidWitness = serde_json::from_value(ok_json(&["braid", "verify-regular", "B3", "--d", "6"])).unwrap();
    let m = BraidMonoid::from_weyl(WeylGroup::generate(&RootDatum::build("B3").unwrap()).unwrap());
    assert_eq!(b, m.verify_regular_braid_identity(6).unwrap());
    assert!(b.holds);

    let v = ok_json(&["degenerate", "--ell", "2", "--factors", "1:1,2:1"]);
    let c: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    let p = AbelianLGroup::new(2, vec![(1, 1), (2, 1)], vec![]).unwrap();
    assert_eq!(c, build_isomorphism(&p).unwrap().certificate);
    assert!(c.passed);
    let dg: DgReport = serde_json::from_value(v["dg"].clone()).unwrap();
    assert!(dg.d_squared_zero && dg.higher_vanish && dg.h0_matches);
}

#[test]
fn degenerate_reads_e_from_file() {
    let dir = std::env::temp_dir().join(format!("genlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("swap.json");
    std::fs::write(&path, "[[[0,1],[1,0]]]").unwrap();
    let v = ok_json(&["degenerate", "--ell", "3", "--factors", "1:2", "--E", path.to_str().unwrap()]);
    assert_eq!(v["certificate"]["e_order"], json!(2));
    assert_eq!(v["certificate"]["passed"], json!(true));
    // l = 2 divides |E| = 2
    let out = call(&["degenerate", "--ell", "2", "--factors", "1:2", "--E", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn weyl_subcommands() {
    let v = ok_json(&["weyl", "classes", "A3"]);
    // conjugacy classes of S_4 by cycle type
    let mut sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    sizes.sort();
    assert_eq!(sizes, [1, 3, 6, 6, 8]);
    // phi acts on S_3 as conjugation by w_0, so twisted classes match ordinary ones
    let twisted = ok_json(&["weyl", "classes", "2A2"]);
    assert_eq!(twisted["classes"].as_array().unwrap().len(), 3);
    assert_eq!(ok_json(&["weyl", "regular", "A3", "--d", "5"])["regular"], json!(false));
    let r = ok_json(&["weyl", "regular", "E6", "--d", "12"]);
    assert_eq!(r["report"]["centralizer_order"], json!(12));
    assert_eq!(ok_json(&["hecke", "poincare", "A2"])["poincare"], json!({"0": 1, "1": 2, "2": 2, "3": 1}));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["blocks", "B2", "--q", "3"][..],
        &["llt", "--n", "5", "--d", "3", "--format", "csv"],
        &["degenerate", "--ell", "3", "--factors", "1:2", "--seed", "11"],
        &["weyl", "classes", "D4", "--format", "table"],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.code, 0);
    }
}

#[test]
fn error_paths_and_guards() {
    let out = call(&["order", "X7"]);
    assert_eq!(out.code, 1);
    let e: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(e["module"], json!("root_datum"));

    assert_eq!(call(&["order", "2B2"]).code, 1);
    assert_eq!(call(&["blocks", "A1", "--q", "6"]).code, 1);
    assert_eq!(call(&["blocks", "A1", "--q", "5", "--format", "csv"]).code, 1);

    let cfg = RunConfig::try_parse_from(["genlie", "weyl", "classes", "E7"]).unwrap();
    let out = run_with_env(&cfg, Some("weyl=100"));
    assert_eq!(out.code, 1);
    let e: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(e["error"], json!("guard_exceeded"));
    assert_eq!(e["predicted"], json!("2903040"));

    let cfg = RunConfig::try_parse_from(["genlie", "--guards", "llt=3", "llt", "--n", "4", "--d", "2"]).unwrap();
    assert_eq!(run_with_env(&cfg, None).code, 1);
    let cfg = RunConfig::try_parse_from(["genlie", "--guards", "llt=13", "llt", "--n", "4", "--d", "2"]).unwrap();
    assert_eq!(run_with_env(&cfg, Some("llt=1")).code, 0, "flag overrides environment");
    assert_eq!(run_with_env(&cfg, Some("bogus=1")).code, 1);
}

#[test]
fn paper_ref_needs_no_computation() {
    let out = call(&["--paper-ref", "weyl", "classes", "E8"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("Weyl"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_genlie");
    let ok = Command::new(bin).args(["order", "A1", "--q", "2"]).env_remove("GENLIE_GUARDS").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["value"], json!("6"));
    let bad = Command::new(bin).args(["order", "Q3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(ok.stderr.is_empty() && !bad.stderr.is_empty());
    let guarded = Command::new(bin).args(["weyl", "classes", "E6"]).env("GENLIE_GUARDS", "weyl=5").output().unwrap();
    assert_eq!(guarded.status.code(), Some(1));
    let unparsable = Command::new(bin).args(["llt", "--n", "x", "--d", "2"]).output().unwrap();
    assert_eq!(unparsable.status.code(), Some(1));
}
