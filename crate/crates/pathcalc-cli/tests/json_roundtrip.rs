//! Every example input file is in canonical form: parsing it and emitting
//! it again reproduces the same JSON.

use pathcalc::characters::{Reg, Registry};
use pathcalc::funcring::PolyFunction;
use pathcalc::localfield::FieldConfig;
use pathcalc::paths::{Chain, Laurent, Path, TargetForm};
use serde_json::Value;

fn registry() -> Reg {
    Registry::standard(&FieldConfig::new(5, 40).unwrap()).unwrap()
}

fn emit(reg: &Reg, name: &str, value: &Value) -> Value {
    let kind = name.split('_').next().unwrap().trim_end_matches(".json");
    match kind {
        "registry" => Registry::from_json(reg.field(), value).unwrap().to_json(),
        "function" => PolyFunction::from_json(reg, value).unwrap().to_json().unwrap(),
        "path" => Path::from_json(reg, value).unwrap().to_json().unwrap(),
        "chain" => Chain::from_json(reg, value).unwrap().to_json().unwrap(),
        "laurent" => Laurent::from_json(reg, value).unwrap().to_json(),
        "form" => TargetForm::from_json(reg, value).unwrap().to_json(),
        other => panic!("no parser registered for example kind `{other}`"),
    }
}

#[test]
fn parse_then_emit_is_identity_on_examples() {
    let reg = registry();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(emit(&reg, &name, &value), value, "{name}");
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn example_registry_is_the_default_one() {
    let reg = registry();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/registry.json");
    let value: Value = serde_json::from_str(&std::fs::read_to_string(dir).unwrap()).unwrap();
    assert_eq!(value, reg.to_json());
}
