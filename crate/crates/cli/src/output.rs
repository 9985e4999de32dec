//! Files written by the experiment commands.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::svg::Chart;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    #[default]
    Both,
}

impl Format {
    fn csv(self) -> bool {
        self != Format::Svg
    }

    fn svg(self) -> bool {
        self != Format::Csv
    }
}

/// An output directory plus the formats to emit into it.
#[derive(Debug, Clone)]
pub struct Output {
    dir: PathBuf,
    format: Format,
}

impl Output {
    pub fn new(dir: impl Into<PathBuf>, format: Format) -> Self {
        Output {
            dir: dir.into(),
            format,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn target(&self, name: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        Ok(path)
    }

    /// Writes `rows` under `header` when CSV output is enabled.
    pub fn csv(&self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        if !self.format.csv() {
            return Ok(());
        }
        let path = self.target(name)?;
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            w.write_record(row)?;
        }
        w.flush().map_err(|e| CliError::io(&path, e))?;
        Ok(())
    }

    pub fn svg(&self, name: &str, chart: &Chart) -> Result<()> {
        if !self.format.svg() {
            return Ok(());
        }
        self.text(name, &chart.render())
    }

    /// Writes a text file regardless of format.
    pub fn text(&self, name: &str, contents: &str) -> Result<()> {
        let path = self.target(name)?;
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))
    }
}

/// Shortest round-trip decimal form; `NA` for a missing value.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".into(), num)
}
