use std::fmt::Write as _;

use serde_json::Value;
use slocc::io::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Renders a report as pretty JSON, or as a two-line CSV whose header holds
/// dotted paths (`sv.0`, `filter.a.re.1.0`, ...).
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => slocc::io::to_json(report),
        Format::Csv => {
            let mut cells = Vec::new();
            flatten("", report, &mut cells);
            let header: Vec<_> = cells.iter().map(|(k, _)| csv_field(k)).collect();
            let row: Vec<_> = cells.iter().map(|(_, v)| csv_field(v)).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => out.push((prefix.to_string(), number(n))),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        fmt_f64(n.as_f64().unwrap_or(f64::NAN))
    } else {
        n.to_string()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const SCAN_HEADER: &str = "id,ca12,ca13,ca23,cb12,cb13,cb23,w0,w1,w2,w3,x,y,z,hull_margin";

pub fn scan_csv(records: &[slocc::i3322::ScanRecord<f64>]) -> String {
    let mut s = String::with_capacity(64 + records.len() * 15 * 24);
    s.push_str(SCAN_HEADER);
    s.push('\n');
    for r in records {
        let _ = write!(s, "{}", r.id);
        let coords = r.coords.to_array();
        for &x in r
            .cosines
            .iter()
            .chain(&r.sv.w)
            .chain(&coords)
            .chain([&r.hull_margin])
        {
            s.push(',');
            s.push_str(&fmt_f64(x));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flat_csv() {
        let v = json!({"a": [1, 0.5], "b": {"c": null, "d": "x,y"}, "e": true});
        assert_eq!(
            render(&v, Format::Csv),
            "a.0,a.1,b.c,b.d,e\n1,5.0000000000000000e-1,,\"x,y\",true\n"
        );
    }
}
