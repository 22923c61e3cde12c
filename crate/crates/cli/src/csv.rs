//! CSV emission. Floats are serialized with 17 significant digits so the
//! values round-trip exactly and repeated runs are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvFile {
    writer: BufWriter<File>,
    rows: usize,
}

impl CsvFile {
    pub fn create(path: &Path, header: &[&str]) -> std::io::Result<Self> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut writer = BufWriter::new(File::create(path)?);
        writeln!(writer, "{}", header.join(","))?;
        Ok(CsvFile { writer, rows: 0 })
    }

    pub fn row(&mut self, fields: &[String]) -> std::io::Result<()> {
        writeln!(self.writer, "{}", fields.join(","))?;
        self.rows += 1;
        Ok(())
    }

    pub fn finish(mut self) -> std::io::Result<usize> {
        self.writer.flush()?;
        Ok(self.rows)
    }
}
