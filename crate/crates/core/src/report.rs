//! Ordered `key: value` output with a JSON twin.

use serde_json::{Map, Value};

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Success = 0,
    InputError = 1,
    NotApplicable = 2,
    Mismatch = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// The worse of two outcomes.
    pub fn max(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Appends a field; a repeated key overwrites in place.
    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn fields(&self) -> &[(String, Value)] {
        &self.fields
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                Value::Array(items) => {
                    for item in items {
                        let shown = match item {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        out.push_str(&format!("{k}: {shown}\n"));
                    }
                }
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json() {
        let mut r = Report::new();
        r.push("det", "10").push("order", 6).push("symmetric", true);
        r.push("label", vec!["a", "b"]);
        assert_eq!(r.to_text(), "det: 10\norder: 6\nsymmetric: true\nlabel: a\nlabel: b\n");
        assert_eq!(
            r.to_json(),
            "{\n  \"det\": \"10\",\n  \"order\": 6,\n  \"symmetric\": true,\n  \"label\": [\n    \"a\",\n    \"b\"\n  ]\n}\n"
        );
        r.push("det", "11");
        assert_eq!(r.get("det"), Some(&Value::from("11")));
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::Success.max(Status::Mismatch), Status::Mismatch);
        assert_eq!(Status::NotApplicable.max(Status::InputError), Status::NotApplicable);
        assert_eq!(Status::Mismatch.code(), 3);
    }
}
