use serde::{Deserialize, Serialize};
use serde_json::Value;

/// What every command prints in JSON mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub verified: bool,
    pub report: Value,
}

pub struct Output {
    pub verified: bool,
    pub rendered: String,
}

pub fn emit(command: &str, verified: bool, report: Value, text: bool, lines: Vec<String>) -> Output {
    let env = Envelope { command: command.to_string(), verified, report };
    let rendered = if text {
        let mut out = vec![format!("{command}: {}", if verified { "verified" } else { "falsified" })];
        if lines.is_empty() {
            out.extend(flatten(&env.report));
        } else {
            out.extend(lines);
        }
        out.join("\n")
    } else {
        serde_json::to_string_pretty(&env).expect("reports serialize")
    };
    Output { verified, rendered }
}

/// One `key: value` line per top-level field.
fn flatten(v: &Value) -> Vec<String> {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("  {k}: {}", compact(x))).collect(),
        other => vec![format!("  {}", compact(other))],
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_round_trips() {
        let out = emit("ext", true, serde_json::json!({"dim": 1, "degree": 1}), false, vec![]);
        let back: Envelope = serde_json::from_str(&out.rendered).unwrap();
        assert_eq!(back.report["dim"], 1);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), out.rendered);
    }

    #[test]
    fn text_mode_lists_fields() {
        let out = emit("x", false, serde_json::json!({"a": [1, 2], "b": "y"}), true, vec![]);
        assert_eq!(out.rendered, "x: falsified\n  a: [1,2]\n  b: y");
    }
}
