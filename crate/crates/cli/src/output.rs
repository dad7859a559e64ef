//! Deterministic report rendering: `key=value` text lines or JSON.

use std::fmt;

use divlift::polyring::fmt_rational;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Val {
    Int(i64),
    Rat(BigRational),
    Bool(bool),
    Str(String),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Int(v) => write!(f, "{v}"),
            Val::Rat(q) => f.write_str(&fmt_rational(q)),
            Val::Bool(b) => write!(f, "{b}"),
            Val::Str(s) => f.write_str(s),
        }
    }
}

impl Val {
    fn to_json(&self) -> Value {
        match self {
            Val::Int(v) => json!(v),
            Val::Rat(q) => json!(fmt_rational(q)),
            Val::Bool(b) => json!(b),
            Val::Str(s) => json!(s),
        }
    }
}

impl From<u64> for Val {
    fn from(v: u64) -> Self {
        Val::Int(v as i64)
    }
}

impl From<u32> for Val {
    fn from(v: u32) -> Self {
        Val::Int(v as i64)
    }
}

impl From<usize> for Val {
    fn from(v: usize) -> Self {
        Val::Int(v as i64)
    }
}

impl From<bool> for Val {
    fn from(v: bool) -> Self {
        Val::Bool(v)
    }
}

impl From<BigRational> for Val {
    fn from(v: BigRational) -> Self {
        Val::Rat(v)
    }
}

impl From<&BigRational> for Val {
    fn from(v: &BigRational) -> Self {
        Val::Rat(v.clone())
    }
}

impl From<String> for Val {
    fn from(v: String) -> Self {
        Val::Str(v)
    }
}

impl From<&str> for Val {
    fn from(v: &str) -> Self {
        Val::Str(v.to_string())
    }
}

pub type Line = Vec<(String, Val)>;

/// Output of one command.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub index: usize,
    pub command: String,
    pub lines: Vec<Line>,
}

impl Block {
    pub fn new(index: usize, command: &str) -> Self {
        Block { index, command: command.to_string(), lines: Vec::new() }
    }

    pub fn line(&mut self, fields: Vec<(&str, Val)>) {
        self.lines.push(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    /// Looks up the first value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&Val> {
        self.lines.iter().flatten().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn render_text(blocks: &[Block]) -> String {
    let mut out = String::new();
    for b in blocks {
        out.push_str(&format!("[{}] {}\n", b.index, b.command));
        for line in &b.lines {
            let fields: Vec<String> = line.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn render_json(blocks: &[Block], error: Option<&str>) -> String {
    let commands: Vec<Value> = blocks
        .iter()
        .map(|b| {
            let lines: Vec<Value> = b
                .lines
                .iter()
                .map(|l| Value::Object(l.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<Map<_, _>>()))
                .collect();
            json!({ "index": b.index, "command": b.command, "lines": lines })
        })
        .collect();
    let mut root = json!({ "commands": commands });
    if let Some(e) = error {
        root["error"] = json!(e);
    }
    let mut s = serde_json::to_string_pretty(&root).expect("plain JSON values");
    s.push('\n');
    s
}

pub fn render(blocks: &[Block], format: Format, error: Option<&str>) -> String {
    match format {
        Format::Text => render_text(blocks),
        Format::Json => render_json(blocks, error),
    }
}
