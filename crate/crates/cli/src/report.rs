use seatplan::{Arrangement, Instance, Rational};
use serde_json::{json, Map, Value};

/// A JSON object with sorted keys.
#[derive(Debug, Default)]
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Report {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self) -> String {
        pretty(&Value::Object(self.0.clone()))
    }
}

/// Indented JSON with arrays of scalars kept on one line, newline-terminated.
pub fn pretty(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let indent = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let parts: Vec<String> = items.iter().map(|v| serde_json::to_string(v).expect("scalars serialize")).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                indent(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, v, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

pub fn rational(r: Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(|&r| rational(r)).collect())
}

pub fn arrangement(a: &Arrangement) -> Value {
    json!(a.seats())
}

pub fn pairs(ps: &[(usize, usize)]) -> Value {
    Value::Array(ps.iter().map(|&(p, q)| json!([p, q])).collect())
}

/// Welfare and least utility of an arrangement.
pub fn describe(report: &mut Report, instance: &Instance, a: &Arrangement) -> seatplan::Result<()> {
    report
        .set("arrangement", arrangement(a))
        .set("welfare", rational(instance.social_welfare(a)?))
        .set("min_utility", rational(instance.min_utility(a)?));
    Ok(())
}
