//! Plain-text rendering of a report for reading at a terminal.

use serde_json::{Map, Value};

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn block(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        block(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            if let Some(t) = table(a) {
                for line in t {
                    out.push_str(&format!("{pad}{line}\n"));
                }
            } else {
                for (i, x) in a.iter().enumerate() {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}[{i}]\n"));
                            block(x, indent + 2, out);
                        }
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

/// An array of flat objects with the same keys becomes an aligned table.
fn table(a: &[Value]) -> Option<Vec<String>> {
    let rows: Vec<&Map<String, Value>> = a.iter().map(Value::as_object).collect::<Option<_>>()?;
    let keys: Vec<&String> = rows.first()?.keys().collect();
    let mut cells = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for r in &rows {
        if r.len() != keys.len() {
            return None;
        }
        let row: Option<Vec<String>> = keys.iter().map(|k| r.get(*k).and_then(scalar)).collect();
        cells.push(row?);
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    Some(
        cells
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect(),
    )
}
