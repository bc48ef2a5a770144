//! Markdown rendering of the JSON reports, driven by the value itself so the two
//! formats carry the same content.

use serde_json::{Map, Value};

pub fn markdown(body: &Value) -> String {
    let mut out = String::new();
    let title = body.get("command").and_then(Value::as_str).unwrap_or("report");
    out.push_str(&format!("# {title}\n\n"));
    match body {
        Value::Object(map) => object(&mut out, map, 2),
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn object(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let (flat, nested): (Vec<_>, Vec<_>) = map.iter().partition(|(_, v)| is_flat(v) || is_flat_array(v));
    for (key, value) in &flat {
        let text = match value {
            Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
            other => scalar(other),
        };
        out.push_str(&format!("- **{key}**: {text}\n"));
    }
    if !flat.is_empty() {
        out.push('\n');
    }
    let hashes = "#".repeat(depth.min(6));
    for (key, value) in nested {
        out.push_str(&format!("{hashes} {key}\n\n"));
        match value {
            Value::Object(inner) => object(out, inner, depth + 1),
            Value::Array(items) => table(out, items, depth + 1),
            _ => unreachable!(),
        }
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_flat))
}

fn cell(v: &Value) -> String {
    let text = if is_flat(v) { scalar(v) } else { v.to_string() };
    text.replace('|', "\\|")
}

fn table(out: &mut String, items: &[Value], depth: usize) {
    if items.is_empty() {
        out.push_str("(none)\n\n");
        return;
    }
    let rows: Vec<&Map<String, Value>> = items.iter().filter_map(Value::as_object).collect();
    if rows.len() != items.len() {
        for item in items {
            out.push_str(&format!("- {}\n", cell(item)));
        }
        out.push('\n');
        return;
    }
    // Wide nested rows read better as sections than as a table.
    if rows.iter().any(|r| r.values().any(|v| matches!(v, Value::Object(m) if m.len() > 4))) {
        let hashes = "#".repeat(depth.min(6));
        for (i, row) in rows.iter().enumerate() {
            out.push_str(&format!("{hashes} {}\n\n", i + 1));
            object(out, row, depth + 1);
        }
        return;
    }
    let mut keys: Vec<&String> = Vec::new();
    for row in &rows {
        for k in row.keys() {
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    out.push_str(&format!("| {} |\n", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(keys.len())));
    for row in rows {
        let cells: Vec<String> = keys.iter().map(|k| row.get(*k).map(cell).unwrap_or_default()).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out.push('\n');
}
