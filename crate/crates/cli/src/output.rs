use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use mvsurf::hp::{HpComplex, Real};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub fn num(x: &Real) -> Value {
    Value::String(x.to_decimal_string())
}

pub fn cnum(z: &HpComplex) -> Value {
    json!({ "re": num(&z.re), "im": num(&z.im) })
}

/// Rows of decimal text under a header.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    /// Two-column `key,value` table from a flat JSON object.
    pub fn from_object(value: &Value) -> Table {
        let mut t = Table::new(&["key", "value"]);
        flatten("", value, &mut t);
        t
    }

    fn write<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn flatten(prefix: &str, value: &Value, t: &mut Table) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, t);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, t);
            }
        }
        Value::String(s) => t.push([prefix.to_string(), s.clone()]),
        Value::Null => t.push([prefix.to_string(), String::new()]),
        other => t.push([prefix.to_string(), other.to_string()]),
    }
}

/// What a subcommand produced.
pub struct Report {
    pub json: Value,
    pub table: Table,
    /// `Some(false)` when a verification subcommand's checks failed.
    pub passed: Option<bool>,
    /// Wall times of sub-tasks, recorded in the manifest only.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(json: Value, table: Table) -> Report {
        Report {
            json,
            table,
            passed: None,
            timings: BTreeMap::new(),
        }
    }

    /// A single-record report whose CSV form is the flattened object.
    pub fn object(json: Value) -> Report {
        let table = Table::from_object(&json);
        Report::new(json, table)
    }

    pub fn with_check(mut self, passed: bool) -> Report {
        self.passed = Some(passed);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub digits: u32,
    pub format: Format,
    pub outputs: Vec<String>,
    pub wall_time: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks_passed: Option<bool>,
}

fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &report.json)?;
            buf.push(b'\n');
        }
        Format::Csv => report.table.write(&mut buf).map_err(io::Error::other)?,
    }
    Ok(buf)
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes the artifact to `output` (or stdout) and the manifest beside it
/// (or to stderr).
pub fn emit(
    command: &str,
    parameters: Value,
    digits: u32,
    format: Format,
    output: Option<&Path>,
    report: &Report,
    started: Instant,
) -> io::Result<()> {
    let body = render(report, format)?;
    let outputs = output.map(|p| vec![p.display().to_string()]).unwrap_or_else(|| vec!["-".into()]);
    let manifest = RunManifest {
        command: command.to_string(),
        parameters,
        digits,
        format,
        outputs,
        wall_time: format!("{:.6}", started.elapsed().as_secs_f64()),
        timings: report.timings.iter().map(|(k, v)| (k.clone(), format!("{v:.6}"))).collect(),
        checks_passed: report.passed,
    };
    let manifest_text = serde_json::to_string_pretty(&manifest)? + "\n";
    match output {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, &body)?;
            fs::write(manifest_path(path), manifest_text)?;
        }
        None => {
            io::stdout().write_all(&body)?;
            io::stderr().write_all(manifest_text.as_bytes())?;
        }
    }
    Ok(())
}
