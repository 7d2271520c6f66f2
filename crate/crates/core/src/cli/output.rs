use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::real::Precision;
use crate::recurrence::full_precision;

use super::CliError;

/// Serialization of the data tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Run metadata written next to every artifact as `<stem>.meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub command: String,
    pub params: serde_json::Value,
    pub precision: Precision,
    pub library_version: String,
    pub wall_time_seconds: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// Numeric table with an optional value per cell (missing cells are blank
/// in CSV and `null` in JSON).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    /// Columns printed as integers in CSV.
    #[serde(skip)]
    pub integer: Vec<bool>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        let columns: Vec<String> = columns.into_iter().map(Into::into).collect();
        Self {
            integer: vec![false; columns.len()],
            columns,
            rows: Vec::new(),
        }
    }

    pub fn with_integer_column(mut self, index: usize) -> Self {
        self.integer[index] = true;
        self
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_values(&mut self, row: &[f64]) {
        self.push(row.iter().map(|v| Some(*v)).collect());
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().zip(&self.integer).map(|(c, &int)| match c {
                Some(v) if int => format!("{v:.0}"),
                Some(v) => full_precision(*v),
                None => String::new(),
            }))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Destination directory plus format; knows how to name artifacts.
#[derive(Debug, Clone)]
pub struct Output {
    pub dir: PathBuf,
    pub format: Format,
    started: Instant,
}

impl Output {
    pub fn new(dir: impl Into<PathBuf>, format: Format) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            format,
            started: Instant::now(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn data_path(&self, stem: &str) -> PathBuf {
        match self.format {
            Format::Csv => self.path(&format!("{stem}.csv")),
            Format::Json => self.path(&format!("{stem}.json")),
        }
    }

    pub fn sidecar_path(&self, stem: &str) -> PathBuf {
        self.path(&format!("{stem}.meta.json"))
    }

    pub fn write_table(&self, stem: &str, table: &Table) -> Result<PathBuf, CliError> {
        let path = self.data_path(stem);
        let file = BufWriter::new(fs::File::create(&path)?);
        match self.format {
            Format::Csv => table.write_csv(file)?,
            Format::Json => write_json(file, table)?,
        }
        Ok(path)
    }

    /// Writes an arbitrary serializable value as pretty JSON.
    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        write_json(BufWriter::new(fs::File::create(&path)?), value)?;
        Ok(path)
    }

    pub fn write_sidecar<P: Serialize>(
        &self,
        stem: &str,
        command: &str,
        params: &P,
        precision: Precision,
    ) -> Result<PathBuf, CliError> {
        let sidecar = Sidecar {
            command: command.to_string(),
            params: serde_json::to_value(params)?,
            precision,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        self.write_json(&format!("{stem}.meta.json"), &sidecar)
    }
}

fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn read_sidecar(path: &Path) -> Option<Sidecar> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}
