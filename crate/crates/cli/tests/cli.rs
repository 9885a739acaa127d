use std::path::PathBuf;
use std::process::{Command, Output};

fn modcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcat"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn shipped_separation_workspace_validates() {
    let out = modcat(&["validate", "workspaces/separation.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["command"], "validate");
}

#[test]
fn nonassociative_category_fails_with_witness() {
    let ws = r#"{
      "format_version": "1",
      "field": "q",
      "categories": {
        "bad": {
          "objects": ["*"],
          "morphisms": [{"id": "e", "dom": "*", "cod": "*"}, {"id": "f", "dom": "*", "cod": "*"}],
          "compositions": [["e","e","e"], ["e","f","e"], ["f","e","f"], ["f","f","e"]]
        }
      }
    }"#;
    let out = modcat(&["validate", scratch("nonassoc.json", ws).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["findings"][0]["verdict"], "NonAssociative");
}

#[test]
fn dangling_algebra_is_an_input_error() {
    let ws = r#"{
      "format_version": "1",
      "field": "q",
      "categories": {"pt": {"objects": ["*"]}},
      "modulations": {"m": {"kind": "constant", "category": "pt", "algebra": "missing", "variance": "covariant"}}
    }"#;
    let out = modcat(&["validate", scratch("dangling.json", ws).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unresolved reference to algebra \"missing\""));
}

#[test]
fn parse_error_reports_line() {
    let ws = "{\n  \"format_version\": \"1\",\n  \"field\": \"q\",\n  oops\n}";
    let out = modcat(&["validate", scratch("broken.json", ws).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn unknown_demo() {
    let out = modcat(&["demo", "klein-bottle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown demo"));
}

#[test]
fn build_algebra_dimensions() {
    for (file, name, dim) in [
        ("workspaces/separation.json", "R", 4),
        ("workspaces/group2.json", "trivial", 2),
        ("workspaces/species_a2.json", "species", 5),
    ] {
        let v = json(&modcat(&["build-algebra", file, name]));
        assert_eq!(v["artifacts"]["algebra"]["dim"], dim, "{file} {name}");
    }
}

#[test]
fn kc2_product_table() {
    let v = json(&modcat(&["build-algebra", "workspaces/group2.json", "trivial"]));
    // e_g * e_g = e_1
    assert_eq!(v["artifacts"]["algebra"]["mult"][1][1], serde_json::json!(["1", "0"]));
}

#[test]
fn sign_representation_converts_to_one_dimensional_module() {
    let v = json(&modcat(&["convert", "workspaces/group2.json", "rep-to-module", "sign"]));
    assert_eq!(v["artifacts"]["module"]["dim"], 1);
    assert_eq!(v["artifacts"]["module"]["right_action"][1], serde_json::json!([["-1"]]));
}

#[test]
fn regular_roundtrip_is_identity_permutation() {
    let v = json(&modcat(&["convert", "workspaces/group2.json", "roundtrip", "kC2"]));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["artifacts"]["permutation"], serde_json::json!([0, 1]));
}

#[test]
fn mismatched_modulation() {
    let out = modcat(&["convert", "workspaces/group2.json", "rep-to-module", "sign", "--over", "dual"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["findings"][0]["verdict"], "ModulationMismatch");
}

#[test]
fn finite_type_of_projective_fails_at_y() {
    let out = modcat(&["finite-type", "workspaces/separation.json", "P_x"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let y = &v["artifacts"]["finite_type"]["objects"][1];
    assert_eq!(y["object"], "y");
    assert_eq!(y["hom_dim"], 0);
    assert_eq!(y["failing"], serde_json::json!(["(x,α)", "(x,β)"]));
}

#[test]
fn fg_with_explicit_generators() {
    let ok = modcat(&["fg", "workspaces/separation.json", "P_y", "--gens", "[[1,0,0]]"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = modcat(&["fg", "workspaces/separation.json", "P_y", "--gens", "[[0,1,0]]"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn demos_pass() {
    for d in ["section5", "group:2", "group:5", "species-a2"] {
        let out = modcat(&["demo", d]);
        assert_eq!(out.status.code(), Some(0), "{d}");
    }
}

#[test]
fn separation_demo_over_prime_field() {
    let out = modcat(&["demo", "section5", "--field", "fp:3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("modcat-out-{}.json", std::process::id()));
    let out = modcat(&["demo", "group:2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, modcat(&["demo", "group:2"]).stdout);
}

#[test]
fn text_format() {
    let out = modcat(&["demo", "section5", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("demo section5 PASS\n"));
}
