//! Single-column CSV ingestion.

use std::path::Path;

use ncbeta_core::{Dataset, Error};

use crate::CliResult;

/// Reads one numeric column; a non-numeric first cell is taken as a header.
/// Every value must lie strictly inside (0, 1); percentages are not rescaled.
pub fn read_dataset(path: &Path) -> CliResult<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 1 {
            return Err(Error::Data(format!(
                "line {line}: expected a single column, found {}",
                rec.len()
            ))
            .into());
        }
        let cell = &rec[0];
        let v = match cell.parse::<f64>() {
            Ok(v) => v,
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(Error::Data(format!("line {line}: `{cell}` is not a number")).into())
            }
        };
        if !(v > 0.0 && v < 1.0) {
            let hint = if v > 1.0 {
                " (percentages must be divided by 100 first)"
            } else {
                ""
            };
            return Err(Error::Data(format!(
                "line {line}: value {v} is not strictly inside (0,1){hint}"
            ))
            .into());
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Data(format!("{} contains no values", path.display())).into());
    }
    let name = path
        .file_stem()
        .map_or_else(|| "data".into(), |s| s.to_string_lossy().into_owned());
    Ok(Dataset::new(name, values)?)
}
