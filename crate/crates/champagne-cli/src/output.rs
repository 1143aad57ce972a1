//! Output files: provenance header, CSV rows, overwrite guard.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub const VERSION: &str = concat!("champagne-cli ", env!("CARGO_PKG_VERSION"));

/// Where and how a command writes its artifacts.
pub struct OutputDir {
    dir: PathBuf,
    force: bool,
    provenance: Vec<String>,
}

impl OutputDir {
    pub fn new(dir: &Path, force: bool, command: &str, settings: &[(&str, String)]) -> Result<Self> {
        if !dir.is_dir() {
            return Err(CliError::io(dir, "output directory does not exist"));
        }
        let mut provenance = vec![VERSION.to_string(), format!("command = {command}")];
        provenance.extend(settings.iter().map(|(k, v)| format!("{k} = {v}")));
        Ok(Self {
            dir: dir.to_path_buf(),
            force,
            provenance,
        })
    }

    /// Fails before anything is written if one of `names` would be clobbered.
    pub fn claim(&self, names: &[&str]) -> Result<()> {
        if self.force {
            return Ok(());
        }
        for name in names {
            let path = self.dir.join(name);
            if path.exists() {
                return Err(CliError::io(path, "already exists (use --force to overwrite)"));
            }
        }
        Ok(())
    }

    fn write(&self, name: &str, body: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    /// `#`-prefixed header lines, then the column names, then `rows`.
    pub fn csv(&self, name: &str, columns: &[&str], rows: &[Vec<Cell>]) -> Result<PathBuf> {
        let mut s = String::new();
        for line in &self.provenance {
            writeln!(s, "# {line}").unwrap();
        }
        writeln!(s, "{}", columns.join(",")).unwrap();
        for row in rows {
            debug_assert_eq!(row.len(), columns.len());
            let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        self.write(name, &s)
    }

    /// Plain-text report with the same header.
    pub fn report(&self, name: &str, lines: &[String]) -> Result<PathBuf> {
        let mut s = String::new();
        for line in &self.provenance {
            writeln!(s, "# {line}").unwrap();
        }
        for line in lines {
            writeln!(s, "{line}").unwrap();
        }
        self.write(name, &s)
    }

    /// `body` is a complete `<svg>` element; the header goes in a leading comment.
    pub fn svg(&self, name: &str, body: &str) -> Result<PathBuf> {
        let mut s = String::from("<!--\n");
        for line in &self.provenance {
            // "--" may not appear inside an XML comment.
            writeln!(s, "  {}", line.replace("--", "- -")).unwrap();
        }
        s.push_str("-->\n");
        s.push_str(body);
        self.write(name, &s)
    }
}

pub enum Cell {
    Int(i64),
    Float(f64),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(i) => write!(f, "{i}"),
            // 17 significant digits round-trip every f64.
            Cell::Float(x) => write!(f, "{x:.16e}"),
        }
    }
}

pub fn floats(xs: &[f64]) -> Vec<Cell> {
    xs.iter().map(|x| Cell::Float(*x)).collect()
}
