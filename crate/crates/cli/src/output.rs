//! Diff-stable number formatting and the JSON records printed by the tool.

use std::collections::BTreeMap;

use occupation_core::BiasNote;
use serde::Serialize;
use serde_json::value::RawValue;

/// 17 significant digits in scientific notation, `null` when not finite.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(v: f64) -> Box<RawValue> {
    RawValue::from_string(format_number(v)).expect("formatted number is valid JSON")
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    quantity: &'a str,
    inputs: BTreeMap<&'a str, Box<RawValue>>,
    value: Box<RawValue>,
    backend: &'a str,
}

pub fn eval_record(quantity: &str, inputs: &[(&str, f64)], value: f64, backend: &str) -> String {
    let record = EvalRecord {
        quantity,
        inputs: inputs.iter().map(|&(k, v)| (k, raw(v))).collect(),
        value: raw(value),
        backend,
    };
    serde_json::to_string(&record).expect("record serializes")
}

#[derive(Serialize)]
struct VerifyRecord {
    formula_value: Box<RawValue>,
    mc_mean: Box<RawValue>,
    mc_stderr: Box<RawValue>,
    z_score: Box<RawValue>,
    pass: bool,
    bias_note: BiasNote,
}

pub fn verify_record(formula: f64, mean: f64, stderr: f64, z: f64, pass: bool, note: BiasNote) -> String {
    let record = VerifyRecord {
        formula_value: raw(formula),
        mc_mean: raw(mean),
        mc_stderr: raw(stderr),
        z_score: raw(z),
        pass,
        bias_note: note,
    };
    serde_json::to_string(&record).expect("record serializes")
}
