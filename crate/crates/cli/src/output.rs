use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::failure::{Failure, Outcome};

/// A fully rendered file waiting to be written.
pub struct Artifact {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn json<T: Serialize>(path: PathBuf, value: &T) -> Outcome<Self> {
        let mut bytes = serde_json::to_vec_pretty(value)
            .map_err(|e| Failure::Io(format!("cannot serialise {}: {e}", path.display())))?;
        bytes.push(b'\n');
        Ok(Artifact { path, bytes })
    }

    pub fn csv<I, R>(path: PathBuf, header: &[&str], rows: I) -> Outcome<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        Ok(Artifact {
            path,
            bytes: render_csv(header, rows)?,
        })
    }
}

pub fn render_csv<I, R>(header: &[&str], rows: I) -> Outcome<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner()
        .map_err(|e| Failure::Io(format!("cannot finish CSV: {e}")))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Outcome<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
    let name = path
        .file_name()
        .ok_or_else(|| Failure::input(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Failure::Io(format!("cannot write {}: {e}", path.display()))
    })
}

/// Writes every artifact through a temporary file and rename. Nothing is written before
/// all artifacts have been rendered.
pub fn commit(artifacts: &[Artifact]) -> Outcome<()> {
    for a in artifacts {
        write_atomic(&a.path, &a.bytes)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.csv");
        let a = Artifact::csv(path.clone(), &["a", "b"], [["1", "2"]]).unwrap();
        commit(&[a]).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        let b = Artifact::json(path.clone(), &serde_json::json!({"x": 1})).unwrap();
        commit(&[b]).unwrap();
        assert!(fs::read_to_string(&path).unwrap().contains("\"x\": 1"));
        let leftovers = fs::read_dir(dir.path().join("nested")).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
