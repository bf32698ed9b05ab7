use std::process::Command;

use serde_json::Value;
use topozeta::arith::NormalForm;
use topozeta::cli::run;
use topozeta::input::{parse_ideal, parse_polynomial};
use topozeta::zeta::{zeta, ZetaRequest};

fn topozeta(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("topozeta").chain(args.iter().copied()))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn zeta_of_bench_ideal() {
    let (status, out, err) = topozeta(&["zeta", "--ideal", "[[1,1],[5,0]]", "--form", "1"]);
    assert_eq!(status, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let locations: Vec<&str> = v["poles"].as_array().unwrap().iter().map(|p| p["location"].as_str().unwrap()).collect();
    assert_eq!(locations, vec!["-1"]);
}

#[test]
fn bsp_two_monomial() {
    let (status, out, _) = topozeta(&["bsp", "--two-monomial", "1,1,5,0"]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(strings(&v), vec!["-1", "-6/5", "-7/5", "-8/5", "-9/5"]);
    let (_, fixture, _) = topozeta(&["bsp", "--fixture", "(xy,x⁵)"]);
    assert_eq!(fixture, out);
    let (_, principal, _) = topozeta(&["bsp", "--principal", "2,3", "--format", "text"]);
    assert_eq!(principal, "{-1/3, -1/2, -2/3, -1}\n");
}

#[test]
fn resolve_as_dot() {
    let (status, out, _) = topozeta(&["resolve", "--ideal", "[[1,5],[3,2],[4,1]]", "--form", "1", "--format", "dot"]);
    assert_eq!(status, 0);
    assert!(out.starts_with("graph resolution {"));
    for label in ["E(1,1)", "E'(1,1)", "E_1(5,2)", "E_2(7,3)", "E_3(13,5)"] {
        assert!(out.contains(&format!("label=\"{label}\"")), "{label}");
    }
    let (status, json, _) = topozeta(&["resolve", "--ideal", "(xy,x^5)"]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["candidates"][0]["expected_order"], 2);
}

#[test]
fn exit_statuses() {
    let (status, _, err) = topozeta(&["zeta", "--ideal", "[[1,1"]);
    assert_eq!(status, 2, "{err}");
    let (status, _, _) = topozeta(&["zeta", "--ideal", "(xy)", "--form", "x^^2"]);
    assert_eq!(status, 2);
    let (status, _, _) = topozeta(&["frobnicate"]);
    assert_eq!(status, 2);
    let (status, _, _) = topozeta(&["zeta", "--ideal", "(xy)", "--format", "dot"]);
    assert_eq!(status, 2);
    let (status, _, err) = topozeta(&["zeta", "--ideal", "(xy,x^5)", "--form", "x^2+2x y+y^2"]);
    assert_eq!(status, 3);
    assert!(err.contains("degenerate"));
    let (status, _, _) = topozeta(&["zeta", "--ideal", "(xy,x^5)", "--form", "1+x"]);
    assert_eq!(status, 3);
    let (status, _, _) = topozeta(&["check", "--ideal", "(xy,x^5)", "--form", "x+y^4"]);
    assert_eq!(status, 0);
    let (status, out, _) = topozeta(&["check", "--ideal", "(xy,x^5)", "--form", "x^2+y^3"]);
    assert_eq!(status, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(strings(&v["witnesses"]), vec!["-11/5"]);
    let (status, _, _) = topozeta(&["check", "--ideal", "(x^4y,x^2y^3,y^5,x^7)", "--form", "1"]);
    assert_eq!(status, 3);
    let (status, out, _) = topozeta(&["--help"]);
    assert_eq!(status, 0);
    assert!(out.contains("resolve"));
}

#[test]
fn zeta_json_round_trips() {
    for (ideal, form) in [("(xy,x^5)", "x+y^4"), ("(xy^5,x^3y^2,x^4y)", "y^2"), ("[[2,3]]", "x")] {
        let (status, out, _) = topozeta(&["zeta", "--ideal", ideal, "--form", form]);
        assert_eq!(status, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let parsed: NormalForm = serde_json::from_value(v["zeta"].clone()).unwrap();
        let i = parse_ideal(ideal, None).unwrap();
        let g = parse_polynomial(form, i.dim()).unwrap();
        let direct = zeta(&ZetaRequest::new(i, g)).unwrap();
        assert_eq!(parsed, direct.normalize());
        let terms: topozeta::arith::ZetaExpression = serde_json::from_value(v["terms"].clone()).unwrap();
        assert_eq!(terms.normalize(), parsed);
    }
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["search", "--ideal", "(xy,x^5)", "--degree-bound", "8"];
    let outputs: Vec<(i32, String, String)> = [1, 2, 4]
        .iter()
        .map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| topozeta(&args))
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(outputs[0], topozeta(&args));
}

#[test]
fn search_families() {
    // every root is reached, but x^4 also has the pole -5
    let (status, out, _) = topozeta(&["search", "--ideal", "(xy,x^5)", "--family", "covering"]);
    assert_eq!(status, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["unattained"].as_array().unwrap().is_empty());
    assert_eq!(v["bounded"], true);
    let (status, _, _) = topozeta(&["search", "--ideal", "(x^2y^3)", "--degree-bound", "1"]);
    assert_eq!(status, 0);
    // y^3 gives the pole -4/3
    let (status, _, _) = topozeta(&["search", "--ideal", "(x^2y^3)", "--degree-bound", "3"]);
    assert_eq!(status, 1);
    let (status, out, _) = topozeta(&["search", "--ideal", "(xy,x^5)", "--family", "case1", "--degree-bound", "5"]);
    assert_eq!(status, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["family_size"], 5);
    let (status, _, _) = topozeta(&["search", "--ideal", "(xy^5,x^3y^2,x^4y)", "--family", "covering"]);
    assert_eq!(status, 3);
    let (status, _, _) = topozeta(&["search", "--ideal", "(xy,x^5)", "--degree-bound", "0"]);
    assert_eq!(status, 2);
}

#[test]
fn binary_honours_family_cap_variable() {
    let exe = env!("CARGO_BIN_EXE_topozeta");
    let capped = Command::new(exe)
        .args(["search", "--ideal", "(xy,x^5)", "--degree-bound", "20"])
        .env("TOPOZETA_FAMILY_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    let bad = Command::new(exe)
        .args(["search", "--ideal", "(xy,x^5)", "--degree-bound", "2"])
        .env("TOPOZETA_FAMILY_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(exe).args(["bsp", "--fixture", "(xy,x^5)", "--format", "text"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "{-1, -6/5, -7/5, -8/5, -9/5}\n");
}

#[test]
fn form_from_file() {
    let dir = std::env::temp_dir().join(format!("topozeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.json");
    std::fs::write(&path, r#"[[1,[1,0]],["1",[0,4]]]"#).unwrap();
    let arg = format!("@{}", path.display());
    let (status, from_file, _) = topozeta(&["zeta", "--ideal", "(xy,x^5)", "--form", &arg]);
    let (_, inline, _) = topozeta(&["zeta", "--ideal", "(xy,x^5)", "--form", "x+y^4"]);
    assert_eq!(status, 0);
    assert_eq!(from_file, inline);
    let (status, _, _) = topozeta(&["zeta", "--ideal", "@/nonexistent/ideal", "--form", "1"]);
    assert_eq!(status, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
