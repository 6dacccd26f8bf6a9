//! Flat key/value records and their text, CSV and JSON-lines renderings.

use std::io::{self, Write};

use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Text(String),
    Ints(Vec<i64>),
}

impl Value {
    /// The rendering used by text and CSV output.
    pub fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Ints(vs) => vs.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Int(v) => Json::from(*v),
            Value::Bool(b) => Json::from(*b),
            Value::Text(s) => Json::from(s.as_str()),
            Value::Ints(vs) => Json::from(vs.clone()),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<Option<i64>> for Value {
    fn from(v: Option<i64>) -> Self {
        v.map_or_else(|| Value::Text("-".into()), Value::Int)
    }
}

/// A record of one kind with a fixed field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, Value)>,
}

impl OutputRecord {
    pub fn new(kind: &'static str) -> Self {
        OutputRecord {
            kind,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    /// `(kind, [(key, rendered value)])`, the form both parsers recover.
    pub fn flatten(&self) -> FlatRecord {
        FlatRecord {
            kind: self.kind.to_string(),
            fields: self
                .fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.render()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRecord {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Jsonl,
}

/// Writes records in one format. CSV emits a header row (first column
/// `kind`) whenever the record kind changes.
pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    last_kind: Option<&'static str>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Emitter {
            out,
            format,
            last_kind: None,
        }
    }

    pub fn emit(&mut self, record: &OutputRecord) -> io::Result<()> {
        match self.format {
            Format::Text => {
                write!(self.out, "{}", record.kind)?;
                for (k, v) in &record.fields {
                    write!(self.out, " {k}={}", v.render())?;
                }
                writeln!(self.out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .flexible(true)
                    .from_writer(Vec::new());
                if self.last_kind != Some(record.kind) {
                    let header =
                        std::iter::once("kind").chain(record.fields.iter().map(|(k, _)| *k));
                    w.write_record(header)?;
                    self.last_kind = Some(record.kind);
                }
                let row = std::iter::once(record.kind.to_string())
                    .chain(record.fields.iter().map(|(_, v)| v.render()));
                w.write_record(row)?;
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                self.out.write_all(&bytes)
            }
            Format::Jsonl => {
                let mut map = Map::new();
                map.insert("kind".into(), Json::from(record.kind));
                for (k, v) in &record.fields {
                    map.insert(k.to_string(), v.to_json());
                }
                serde_json::to_writer(&mut self.out, &Json::Object(map))?;
                writeln!(self.out)
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {0}: {1}")]
    Malformed(usize, String),
}

/// Parses CSV output back into flat records.
pub fn parse_csv(input: &str) -> Result<Vec<FlatRecord>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input.as_bytes());
    let mut header: Option<Vec<String>> = None;
    let mut out = Vec::new();
    for (line, row) in reader.records().enumerate() {
        let row = row?;
        let cells: Vec<String> = row.iter().map(str::to_string).collect();
        if cells.first().map(String::as_str) == Some("kind") {
            header = Some(cells);
            continue;
        }
        let keys = header
            .as_ref()
            .ok_or_else(|| ParseError::Malformed(line + 1, "row before header".into()))?;
        if keys.len() != cells.len() {
            return Err(ParseError::Malformed(
                line + 1,
                "width differs from header".into(),
            ));
        }
        out.push(FlatRecord {
            kind: cells[0].clone(),
            fields: keys[1..]
                .iter()
                .cloned()
                .zip(cells[1..].iter().cloned())
                .collect(),
        });
    }
    Ok(out)
}

/// Parses JSON-lines output back into flat records.
pub fn parse_jsonl(input: &str) -> Result<Vec<FlatRecord>, ParseError> {
    let mut out = Vec::new();
    for (line, text) in input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let Json::Object(map) = serde_json::from_str::<Json>(text)? else {
            return Err(ParseError::Malformed(line + 1, "not an object".into()));
        };
        let mut fields = Vec::new();
        let mut kind = None;
        for (k, v) in map {
            let rendered = match v {
                Json::String(s) => s,
                Json::Array(items) => items
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                other => other.to_string(),
            };
            if k == "kind" && kind.is_none() {
                kind = Some(rendered);
            } else {
                fields.push((k, rendered));
            }
        }
        let kind = kind.ok_or_else(|| ParseError::Malformed(line + 1, "missing kind".into()))?;
        out.push(FlatRecord { kind, fields });
    }
    Ok(out)
}
