//! Parser for device calibration tables.
//!
//! One record per line: `wavelength_nm<TAB>value`. Everything from `#` to
//! the end of the line is a comment; blank lines are skipped. Any ASCII
//! whitespace is accepted between the two fields.

use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected `wavelength_nm<TAB>value`, found {found} fields")]
    FieldCount {
        path: PathBuf,
        line: usize,
        found: usize,
    },
    #[error("{path}:{line}: cannot parse `{text}` as a number")]
    BadNumber {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("{path}: table has no data rows")]
    Empty { path: PathBuf },
}

/// Reads `(wavelength_nm, value)` rows. Validation of the values themselves
/// (ranges, duplicates) happens when the rows are turned into device
/// specifications, where the field path is known.
pub fn read_table(path: &Path) -> Result<Vec<(f64, f64)>, TableError> {
    let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut rows = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(TableError::FieldCount {
                path: path.to_path_buf(),
                line,
                found: fields.len(),
            });
        }
        let parse = |text: &str| {
            text.parse::<f64>().map_err(|_| TableError::BadNumber {
                path: path.to_path_buf(),
                line,
                text: text.to_string(),
            })
        };
        rows.push((parse(fields[0])?, parse(fields[1])?));
    }
    if rows.is_empty() {
        return Err(TableError::Empty {
            path: path.to_path_buf(),
        });
    }
    Ok(rows)
}
