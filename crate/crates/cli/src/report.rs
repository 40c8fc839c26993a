//! Versioned output documents.  Every numeric cell carries a provenance tag.

use std::io::Write;

use anyhow::Result;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::config::{Format, RunConfig};

pub const SCHEMA: &str = "midprime-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Computed by exhaustive sieving or exact arithmetic, or an input.
    Exact,
    /// Computed from an asymptotic or analytic formula.
    Predicted,
    /// Reference value quoted from the literature.
    PaperGolden,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Exact => "exact",
            Tag::Predicted => "predicted",
            Tag::PaperGolden => "paper-golden",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Real(f64),
    Text(String),
    Flag(bool),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Real(v) => format_real(*v),
            Value::Text(s) => s.clone(),
            Value::Flag(b) => b.to_string(),
        }
    }
}

/// Shortest round-trip form; non-finite values as `inf`, `-inf`, `nan`.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:e}")
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(v) => s.serialize_u64(*v),
            Value::Real(v) if v.is_finite() => s.serialize_f64(*v),
            Value::Real(v) => s.serialize_str(&format_real(*v)),
            Value::Text(t) => s.serialize_str(t),
            Value::Flag(b) => s.serialize_bool(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    /// `None` for label columns (text and flags).
    pub tag: Option<Tag>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[(&str, Option<Tag>)]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|&(n, t)| Column { name: n.to_string(), tag: t }).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_columns(name: &str, columns: Vec<(String, Option<Tag>)>) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.into_iter().map(|(name, tag)| Column { name, tag }).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }
}

struct Row<'a>(&'a [Column], &'a [Value]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Cell<'a> {
            value: &'a Value,
            tag: Tag,
        }
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (c, v) in self.0.iter().zip(self.1) {
            match c.tag {
                Some(tag) => m.serialize_entry(&c.name, &Cell { value: v, tag })?,
                None => m.serialize_entry(&c.name, v)?,
            }
        }
        m.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Rows<'a>(&'a Table);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
                for r in &self.0.rows {
                    seq.serialize_element(&Row(&self.0.columns, r))?;
                }
                seq.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("name", &self.name)?;
        m.serialize_entry("rows", &Rows(self))?;
        m.end()
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!("{} {} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Document {
    pub schema: &'static str,
    pub schema_version: u32,
    pub command: String,
    pub config_sha256: String,
    pub config: RunConfig,
    pub notes: Vec<String>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
}

impl Document {
    pub fn new(cfg: &RunConfig) -> Self {
        Document {
            schema: SCHEMA,
            schema_version: SCHEMA_VERSION,
            command: cfg.command.clone(),
            config_sha256: cfg.hash(),
            config: cfg.clone(),
            notes: Vec::new(),
            tables: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => self.write_csv(out)?,
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let b = &self.config.budget;
        writeln!(out, "# schema: {}/{}", self.schema, self.schema_version)?;
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# config-sha256: {}", self.config_sha256)?;
        writeln!(
            out,
            "# budget: prime_cutoff={} zeta_depth={} series_order={} target_digits={} quad_nodes={}",
            b.prime_cutoff, b.zeta_depth, b.series_order, b.target_digits, b.quad_nodes
        )?;
        for n in &self.notes {
            writeln!(out, "# note: {n}")?;
        }
        for t in &self.tables {
            writeln!(out, "# table: {}", t.name)?;
            let tags: Vec<String> = t
                .columns
                .iter()
                .map(|c| format!("{}={}", c.name, c.tag.map_or("label", Tag::as_str)))
                .collect();
            writeln!(out, "# provenance: {}", tags.join(","))?;
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(t.columns.iter().map(|c| c.name.as_str()))?;
            for r in &t.rows {
                w.write_record(r.iter().map(Value::render))?;
            }
            out.write_all(&w.into_inner()?)?;
        }
        if !self.verdicts.is_empty() {
            writeln!(out, "# table: verdicts")?;
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(["id", "name", "pass", "detail"])?;
            for v in &self.verdicts {
                w.write_record([v.id.as_str(), v.name.as_str(), if v.pass { "true" } else { "false" }, v.detail.as_str()])?;
            }
            out.write_all(&w.into_inner()?)?;
        }
        Ok(())
    }
}
