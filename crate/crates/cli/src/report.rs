use serde_json::{Map, Value};
use uso_core::SubsetMask;

/// Ordered key/value report, rendered as `key=value` lines or one JSON object.
#[derive(Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// A mask in both decimal (`key`) and set notation (`key_set`).
    pub fn mask(&mut self, key: &str, mask: SubsetMask) -> &mut Self {
        self.put(key, mask.bits());
        self.put(&format!("{key}_set"), mask.to_string())
    }

    pub fn optional_mask(&mut self, key: &str, mask: Option<SubsetMask>) -> &mut Self {
        match mask {
            Some(m) => self.mask(key, m),
            None => {
                self.put(key, Value::Null);
                self.put(&format!("{key}_set"), Value::Null)
            }
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return format!("{}\n", Value::Object(self.fields.clone()));
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(k);
            out.push('=');
            out.push_str(&plain(v));
            out.push('\n');
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}
