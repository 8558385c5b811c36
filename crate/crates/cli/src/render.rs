use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            if items.iter().all(|i| i.is_string()) {
                format!("{{{}}}", inner.join(", "))
            } else {
                format!("[{}]", inner.join(", "))
            }
        }
        Value::Object(map) => {
            let inner: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", scalar(v)))
                .collect();
            inner.join(" ")
        }
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn rows(items: &[Value], out: &mut String, indent: &str) {
    let Some(Value::Object(first)) = items.first() else {
        for (i, item) in items.iter().enumerate() {
            out.push_str(&format!("{indent}{:>4}  {}\n", i + 1, scalar(item)));
        }
        return;
    };
    let mut columns: Vec<&String> = first.keys().collect();
    for item in items {
        if let Value::Object(map) = item {
            for key in map.keys() {
                if !columns.contains(&key) {
                    columns.push(key);
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| columns.iter().map(|c| scalar(&item[c.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |fields: Vec<String>| {
        let padded: Vec<String> = fields
            .iter()
            .zip(&widths)
            .map(|(f, &w)| format!("{f:<w$}"))
            .collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.to_string()).collect()));
    for row in cells {
        out.push_str(&line(row));
    }
}

fn block(v: &Value, out: &mut String, indent: &str) {
    let Value::Object(map) = v else {
        out.push_str(&format!("{indent}{}\n", scalar(v)));
        return;
    };
    let deeper = format!("{indent}  ");
    for (key, value) in map {
        if is_flat(value) {
            out.push_str(&format!("{indent}{key}: {}\n", scalar(value)));
        } else if let Value::Array(items) = value {
            out.push_str(&format!("{indent}{key}:\n"));
            rows(items, out, &deeper);
        } else {
            out.push_str(&format!("{indent}{key}:\n"));
            block(value, out, &deeper);
        }
    }
}

/// Human-readable rendering of a command's JSON output.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    block(v, &mut out, "");
    out
}
