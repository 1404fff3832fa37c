use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Outcome of one named check in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }
}

/// A report: ordered header entries, then named tables. Flag verdicts live
/// in a "flags" table with columns (flag, checks, verdict).
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub header: Vec<(String, String)>,
    pub tables: Vec<Table>,
    flags: Option<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn header(&mut self, key: &str, value: impl ToString) {
        self.header.push((key.into(), value.to_string()));
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn flag(&mut self, name: &str, checks: &str, verdict: Verdict) {
        self.flags.get_or_insert_with(|| Table::new("flags", &["flag", "checks", "verdict"])).push(vec![
            name.into(),
            checks.into(),
            verdict.as_str().into(),
        ]);
    }

    pub fn failed(&self) -> bool {
        self.flags.as_ref().is_some_and(|t| t.rows.iter().any(|r| r[2] == "FAIL"))
    }

    fn all_tables(&self) -> Vec<&Table> {
        self.tables.iter().chain(self.flags.iter()).collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    /// Header entries become `# key=value` lines; each table is preceded
    /// by `# table: name` and separated by a blank line.
    fn render_csv(&self) -> Result<String> {
        let mut out = String::new();
        writeln!(out, "# command={}", self.command)?;
        for (k, v) in &self.header {
            writeln!(out, "# {k}={v}")?;
        }
        for (i, t) in self.all_tables().into_iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "# table: {}", t.name)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            out.push_str(&String::from_utf8(w.into_inner()?)?);
        }
        Ok(out)
    }

    fn render_json(&self) -> Result<String> {
        let mut header = Map::new();
        header.insert("command".into(), Value::String(self.command.clone()));
        for (k, v) in &self.header {
            header.insert(k.clone(), Value::String(v.clone()));
        }
        let mut tables = Map::new();
        for t in self.all_tables() {
            let rows = t
                .rows
                .iter()
                .map(|r| {
                    Value::Object(t.columns.iter().cloned().zip(r.iter().map(|v| Value::String(v.clone()))).collect())
                })
                .collect();
            tables.insert(t.name.clone(), Value::Array(rows));
        }
        let mut root = Map::new();
        root.insert("header".into(), Value::Object(header));
        root.insert("tables".into(), Value::Object(tables));
        Ok(serde_json::to_string_pretty(&Value::Object(root))? + "\n")
    }

    /// Writes to `<dir>/<command>.<ext>` when a directory is given,
    /// otherwise to stdout.
    pub fn emit(&self, format: Format, out_dir: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let ext = match format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                let path = dir.join(format!("{}.{ext}", self.command.replace(' ', "-")));
                std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}
