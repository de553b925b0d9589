//! CSV artifacts: a header row, data rows, then `# key=value` metadata lines
//! that readers skip as comments.

use std::path::Path;

use crate::error::Result;

#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    meta: Vec<(String, String)>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvTable { header: header.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// CSV reader that skips `#` metadata lines.
pub fn csv_reader<R: std::io::Read>(r: R, has_headers: bool) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(has_headers)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_has_trailer() {
        let mut t = CsvTable::new(["a", "b"]).meta("seed", 7).meta("version", "0.1.0");
        t.push(vec!["1".into(), num(0.5)]);
        assert_eq!(t.render(), "a,b\n1,0.5\n# seed=7\n# version=0.1.0\n");

        let text = t.render();
        let mut r = csv_reader(text.as_bytes(), true);
        let rows: Vec<csv::StringRecord> = r.records().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(rows.len(), 1);
    }
}
