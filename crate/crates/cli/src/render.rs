//! Text and JSON rendering of a report. Both modes print the same value, so
//! they cannot disagree.

use serde_json::Value;

use crate::Format;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!("[{}]", items.iter().map(|i| scalar(i).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- #{}\n", i + 1));
                        text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_lists_every_scalar() {
        let v = json!({"verdict": "Factorial", "reason": null, "points": [["0", "1"]], "rows": [{"name": "a", "value": true}]});
        let t = render(&v, Format::Text);
        assert!(t.contains("verdict: Factorial\n"));
        assert!(t.contains("reason: -\n"));
        assert!(t.contains("- [0, 1]\n"));
        assert!(t.contains("    name: a\n"));
        assert!(render(&v, Format::Json).ends_with("}\n"));
    }
}
