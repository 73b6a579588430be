use std::process::{Command, Output};

use serde_json::Value;

const PRODUCT_CB: &str =
    "aa^{-2} + bab^{-1}a^{-1} + b^3aa^{-1}b^{-2} + b^2aa^{-1}b^{-1} + b^4b^{-3}";

fn vgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vgroup"))
        .args(args)
        .env_remove("VGROUP_MAX_CODES")
        .env_remove("VGROUP_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = vgroup(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    vgroup(args).status.code().expect("exited normally")
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../../../docs/output.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    let compiled = schema();
    if let Err(errors) = compiled.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?} output fails the schema: {msgs:?}\n{v}");
    }
    v
}

#[test]
fn word_problem() {
    assert_eq!(stdout(&["wp", "sigma sigma^-1"]), "IDENTITY");
    assert_eq!(stdout(&["wp", "1"]), "IDENTITY");
    let out = stdout(&["wp", "sigma theta"]);
    assert!(out.starts_with("NOT IDENTITY\nwitness: "), "{out}");
}

#[test]
fn witnesses_are_moved() {
    let v = json(&["wp", "theta^-1 sigma"]);
    let x = v["witness"].as_str().unwrap();
    let image = stdout(&["eval", "theta^-1 sigma"]);
    // the witness is a domain word whose image differs from itself
    assert!(!image.contains(&format!("{x}->{x},")) && !image.contains(&format!("{x}->{x}]")));
}

#[test]
fn evaluation_strategies_print_the_same_table() {
    let w = "sigma theta gamma1^-1 tp_swap delta tp_aba sigma^-1 gamma2";
    let seq = stdout(&["eval", w]);
    assert_eq!(stdout(&["eval", "--balanced", w]), seq);
    assert_eq!(stdout(&["eval", "--parallel", w]), seq);
}

#[test]
fn worked_product_reduces_to_sigma_of_a() {
    assert_eq!(stdout(&["algebra", "reduce", PRODUCT_CB]), "aa^-2 + bab^-1a^-1 + b^2b^-1");
    assert_eq!(
        stdout(&["algebra", "from-table", "[a^2->a, ab->ba, b->b^2]"]),
        "aa^-2 + bab^-1a^-1 + b^2b^-1"
    );
}

#[test]
fn algebra_products_and_coefficients() {
    assert_eq!(stdout(&["algebra", "mul", "a^-1", "a"]), "1");
    assert_eq!(stdout(&["algebra", "mul", "a^-1", "b"]), "0");
    assert_eq!(stdout(&["algebra", "mul", "2/3 a", "-1 a^-1"]), "-2/3 aa^-1");
}

#[test]
fn enumerate_codes_of_size_four() {
    let out = stdout(&["enumerate", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "5");
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"{aa, ab, ba, bb}"));
    assert!(lines.contains(&"{a, ba, bba, bbb}"));
}

#[test]
fn enumerate_bounds_follow_the_environment() {
    assert_eq!(code(&["enumerate", "13"]), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_vgroup"))
        .args(["enumerate", "6", "--elements"])
        .env("VGROUP_MAX_ELEMENTS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&["enumerate", "3", "--elements"]).lines().next(), Some("20"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["reduce", "[a->b, b->a]"]), 0);
    // syntax errors
    assert_eq!(code(&["reduce", "[a->b"]), 2);
    assert_eq!(code(&["wp", "sigma^2"]), 2);
    assert_eq!(code(&["distortion", "a c"]), 2);
    assert_eq!(code(&["algebra", "reduce", "a^-1 +"]), 2);
    assert_eq!(code(&["reduce", "{\"domain\": [\"a\"]"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    // well-formed input that breaks a precondition
    assert_eq!(code(&["reduce", "[a->b]"]), 1);
    assert_eq!(code(&["compose", "[a->a, b->b]", "[a->b, ab->a]"]), 1);
    assert_eq!(code(&["algebra", "reduce", "aa^-1"]), 1);
    assert_eq!(code(&["algebra", "reduce", "2 aa^-1 + bb^-1"]), 1);
}

#[test]
fn json_errors_name_their_kind() {
    let out = vgroup(&["--json", "reduce", "[a->b]"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "domain");
    assert!(schema().is_valid(&v));
    let out = vgroup(&["--json", "reduce", "[a->"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn json_outputs_match_the_schema() {
    let t = "[aa->b, ab->ab, b->aa]";
    json(&["eval", "sigma theta"]);
    json(&["wp", "sigma sigma^-1"]);
    json(&["wp", "sigma"]);
    json(&["compose", "--literal", t, t]);
    json(&["reduce", "[aa->ba, ab->bb, b->a]"]);
    json(&["factor", t]);
    json(&["compile", t]);
    json(&["compile", "[a->a, b->b]"]);
    json(&["distortion", "a^3 b^-2 a"]);
    json(&["algebra", "reduce", PRODUCT_CB]);
    json(&["enumerate", "3", "--elements"]);
    let v = json(&["bench", "--n", "1,8", "--trials", "2", "--parallel"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn json_tables_are_accepted_as_input() {
    let v = json(&["reduce", "[aa->aa, ab->ab, b->b]"]);
    let as_json = serde_json::json!({
        "domain": v["table"]["domain"],
        "range": v["table"]["range"],
    })
    .to_string();
    assert_eq!(stdout(&["reduce", &as_json]), "[e->e]");
}

#[test]
fn printed_outputs_parse_back() {
    let g = "[aaa->bb, aab->aa, ab->ba, b->ab]";
    let reduced = stdout(&["reduce", g]);
    assert_eq!(stdout(&["reduce", &reduced]), reduced);

    // compiled words evaluate back to the element
    let compiled = stdout(&["compile", g]);
    let word = compiled.lines().next().unwrap();
    assert_eq!(stdout(&["eval", word]), reduced);

    // factors recompose
    let factors = stdout(&["factor", g]);
    let part = |name: &str| {
        factors
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{name}: ")))
            .unwrap()
            .to_string()
    };
    let pi_alpha = stdout(&["compose", &part("pi"), &part("alpha")]);
    assert_eq!(stdout(&["compose", &part("beta"), &pi_alpha]), reduced);

    // sums round trip through the algebra parser
    let sum = stdout(&["algebra", "from-table", g]);
    assert_eq!(stdout(&["algebra", "mul", &sum, "1"]), sum);

    // enumerated elements are already reduced
    for line in stdout(&["enumerate", "3", "--elements"]).lines().skip(1) {
        assert_eq!(stdout(&["reduce", line]), line);
    }
}

#[test]
fn distortion_witness_is_long() {
    let out = stdout(&["distortion", "a^3 b^-2 a"]);
    assert!(out.contains("closed form matches: true"), "{out}");
    assert!(out.contains("|y| > free length: true"), "{out}");
}

#[test]
fn bench_writes_csv() {
    let out = stdout(&["bench", "--n", "4,16", "--trials", "2", "--seed", "9"]);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["n", "trials", "sequential_us", "balanced_us"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][0], "16");
}
