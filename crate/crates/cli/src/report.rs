//! Tabular output in JSON, CSV or Markdown. Every cell is already text in the
//! exact rendering, so the three formats carry the same information.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(name: &str, columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            name: name.into(),
            columns: columns.into_iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// One or more named tables. A single table is emitted bare; several are
/// keyed by name (JSON) or separated by a heading line.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub tables: Vec<Table>,
}

impl Report {
    pub fn single(t: Table) -> Self {
        Self { tables: vec![t] }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                let v = match self.tables.as_slice() {
                    [t] => t.json(),
                    ts => Value::Object(ts.iter().map(|t| (t.name.clone(), t.json())).collect()),
                };
                serde_json::to_writer_pretty(&mut *out, &v)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let many = self.tables.len() > 1;
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    if many {
                        writeln!(out, "# {}", t.name)?;
                    }
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(&t.columns)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                    w.flush()?;
                }
            }
            Format::Md => {
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "### {}\n", t.name)?;
                    let esc = |s: &str| s.replace('|', "\\|");
                    writeln!(
                        out,
                        "| {} |",
                        t.columns
                            .iter()
                            .map(|c| esc(c))
                            .collect::<Vec<_>>()
                            .join(" | ")
                    )?;
                    writeln!(out, "|{}", "---|".repeat(t.columns.len()))?;
                    for r in &t.rows {
                        writeln!(
                            out,
                            "| {} |",
                            r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}
