use std::fs;
use std::io::{self, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::Failure;

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: io::Error| Failure::Domain(format!("cannot write {}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// Sends `bytes` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Domain(format!("cannot write to stdout: {e}"))),
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

/// Parses a numeric CSV table. A first row that does not parse as numbers is
/// taken as a header and skipped; all other rows must have the same width.
pub fn read_table(path: &Path) -> Result<Vec<Vec<f64>>, Failure> {
    let bytes = read(path)?;
    let bad = |line: u64, msg: String| Failure::Domain(format!("{}:{line}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(&bytes[..]);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(0, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => {
                if row.iter().any(|v| !v.is_finite()) {
                    return Err(bad(line, "non-finite value".into()));
                }
                if let Some(first) = rows.first() {
                    if first.len() != row.len() {
                        return Err(bad(line, format!("expected {} columns, found {}", first.len(), row.len())));
                    }
                }
                rows.push(row);
            }
            Err(_) if i == 0 => {}
            Err(e) => return Err(bad(line, e.to_string())),
        }
    }
    Ok(rows)
}

/// Reads planar points `x, y` from a CSV file.
pub fn read_points(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let rows = read_table(path)?;
    match rows.first() {
        Some(r) if r.len() != 2 => Err(Failure::Domain(format!(
            "{}: points need exactly two columns, found {}",
            path.display(),
            r.len()
        ))),
        _ => Ok(rows.into_iter().map(|r| (r[0], r[1])).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_skip_a_header_and_comments() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        fs::write(&path, "x,y\n# a comment\n0, 1\n2.5,-3\n").unwrap();
        assert_eq!(read_points(&path).unwrap(), vec![(0.0, 1.0), (2.5, -3.0)]);
        fs::write(&path, "0,1\n2,3,4\n").unwrap();
        assert!(read_table(&path).is_err());
        fs::write(&path, "0,1\nx,y\n").unwrap();
        assert!(read_table(&path).is_err());
    }

    #[test]
    fn atomic_write_replaces_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"second");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
