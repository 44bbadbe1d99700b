//! CSV tables for plotting and JSON records for machines. Both carry the
//! config hash: CSV as a leading `# config_hash=` comment line, JSON as a
//! field.

use std::path::Path;

use serde::Serialize;

use crate::atomic;
use crate::error::{Result, SimError};

pub fn write_csv<T: Serialize>(path: &Path, config_hash: &str, rows: &[T]) -> Result<()> {
    atomic::write_with(path, |w| {
        writeln!(w, "# config_hash={config_hash}").map_err(|e| SimError::io(path, e))?;
        let mut out = csv::Writer::from_writer(w);
        for r in rows {
            out.serialize(r)?;
        }
        out.flush().map_err(|e| SimError::io(path, e))?;
        Ok(())
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    atomic::write_bytes(path, &bytes)
}

/// Read back a table written by [`write_csv`].
pub fn read_csv<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let rows = r
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()?;
    Ok(rows)
}
