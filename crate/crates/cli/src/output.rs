//! Deterministic CSV and JSON emission.
//!
//! Every floating-point value is printed with 17 significant digits
//! (`{:.16e}`), so files round-trip losslessly and repeated runs with the
//! same configuration are byte-identical. The JSON writer is hand-rolled to
//! keep that float format and a fixed field order.

use nlspectral::ErrorRecord;

/// Embedded at build time; "unknown" outside a git checkout.
pub const GIT_HASH: &str = env!("NLSPECTRAL_GIT_HASH");

/// 17 significant digits, scientific.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Minimal JSON document builder with insertion-ordered fields.
pub enum Json {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object() -> Json {
        Json::Object(Vec::new())
    }

    pub fn field(mut self, key: &str, value: Json) -> Json {
        if let Json::Object(fields) = &mut self {
            fields.push((key.to_string(), value));
        }
        self
    }

    pub fn render(&self, out: &mut String) {
        match self {
            Json::Str(s) => {
                out.push('"');
                out.push_str(&json_escape(s));
                out.push('"');
            }
            Json::Int(v) => out.push_str(&v.to_string()),
            Json::Float(v) => out.push_str(&float17(*v)),
            Json::Bool(v) => out.push_str(if *v { "true" } else { "false" }),
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.render(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('"');
                    out.push_str(&json_escape(k));
                    out.push_str("\":");
                    v.render(out);
                }
                out.push('}');
            }
        }
    }

    pub fn to_string_pretty_enough(&self) -> String {
        let mut s = String::new();
        self.render(&mut s);
        s.push('\n');
        s
    }
}

pub fn str_json(s: impl Into<String>) -> Json {
    Json::Str(s.into())
}

/// Sweep record table: header plus one line per record, LF endings.
pub fn records_csv(records: &[ErrorRecord], trailer: Option<&str>) -> String {
    let mut out = String::from("n,m,delta,max_error,argmax_x,residual_inf,wall_ms\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            float17(r.delta),
            float17(r.max_error),
            float17(r.argmax_x),
            float17(r.residual_inf),
            float17(r.wall_ms)
        ));
    }
    if let Some(t) = trailer {
        out.push_str(t);
        out.push('\n');
    }
    out
}

pub fn record_json(r: &ErrorRecord) -> Json {
    Json::object()
        .field("n", Json::Int(r.n as i64))
        .field("m", Json::Int(r.m as i64))
        .field("delta", Json::Float(r.delta))
        .field("max_error", Json::Float(r.max_error))
        .field("argmax_x", Json::Float(r.argmax_x))
        .field("residual_inf", Json::Float(r.residual_inf))
        .field("wall_ms", Json::Float(r.wall_ms))
}
