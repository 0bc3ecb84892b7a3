//! Output in the three formats. JSON documents carry a `schema` field;
//! CSV has one header row; text is for people.

use serde::Serialize;

use crate::Format;

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  "));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for r in &self.rows {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub fn json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("serializable") + "\n"
}

/// Prints `doc` as JSON, `table` as CSV, or `text()` as text.
pub fn emit<T: Serialize>(format: Format, doc: &T, table: &Table, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => json(doc),
        Format::Csv => table.to_csv(),
        Format::Text => text(),
    };
    print!("{out}");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["group", "value"]);
        t.push(vec!["perm(3):(1,2)".into(), "1/2".into()]);
        assert_eq!(t.to_csv(), "group,value\n\"perm(3):(1,2)\",1/2\n");
        assert_eq!(t.to_text(), "group          value\nperm(3):(1,2)  1/2\n");
    }
}
