use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            xs.iter().map(scalar).collect::<Option<Vec<_>>>().map(|v| format!("[{}]", v.join(", ")))
        }
        // tagged values such as `{"kind": "finite", "value": 1}`
        Value::Object(m) if m.contains_key("kind") && m.keys().all(|k| k == "kind" || k == "value") => {
            let kind = scalar(&m["kind"])?;
            Some(match m.get("value") {
                Some(v) => format!("{kind} {}", scalar(v)?),
                None => kind,
            })
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn section(out: &mut String, v: &Value, depth: usize) {
    let Value::Object(map) = v else { return };
    for (k, x) in map {
        match scalar(x) {
            Some(s) => out.push_str(&format!("{}- {k}: {s}\n", "  ".repeat(depth))),
            None if depth < 2 && x.is_object() => {
                out.push_str(&format!("{}- {k}:\n", "  ".repeat(depth)));
                section(out, x, depth + 1);
            }
            None => {
                let n = x.as_array().map_or(0, |a| a.len());
                out.push_str(&format!("{}- {k}: ({n} entries, see JSON)\n", "  ".repeat(depth)));
            }
        }
    }
}

/// Human summary of a certificate.
pub fn render(cert: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("# relaus {}\n\n", cert["command"].as_str().unwrap_or("?")));
    out.push_str(&format!("- field: {}\n", cert["field"].as_str().unwrap_or("?")));
    out.push_str(&format!("- input: `{}`\n", cert["input_digest"].as_str().unwrap_or("?")));
    out.push_str(&format!("- verdict: **{}**\n", cert["verdict"].as_str().unwrap_or("?")));
    out.push_str(&format!("- exit code: {}\n", cert["exit_code"]));
    if let Some(cs) = cert["conclusions"].as_array().filter(|c| !c.is_empty()) {
        out.push_str("\n## Conclusions\n\n| claim | holds | provenance |\n|---|---|---|\n");
        for c in cs {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                c["claim"].as_str().unwrap_or(""),
                c["holds"],
                c["provenance"].as_str().unwrap_or("")
            ));
        }
    }
    out.push_str("\n## Report\n\n");
    section(&mut out, &cert["report"], 0);
    out.push_str("\n## Budgets\n\n");
    section(&mut out, &cert["flags"], 0);
    out
}
