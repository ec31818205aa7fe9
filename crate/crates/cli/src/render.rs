use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::failure::Failure;

/// Left-aligned columns separated by two spaces; columns flagged in
/// `right` are right-aligned. Trailing spaces are trimmed.
pub fn table(rows: &[Vec<String>], right: &[bool]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = width[i] - cell.chars().count();
            if right.get(i).copied().unwrap_or(false) {
                line.extend(std::iter::repeat_n(' ', pad));
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// The closing line of every sweep: `key=value` pairs in text and csv
/// modes (prefixed by `#` in csv), one JSON object in json mode.
#[derive(Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub command: &'static str,
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub checked: u64,
    pub failures: u64,
    pub asserted: bool,
    pub status: &'static str,
}

impl Summary {
    pub const SCHEMA: &'static str = "rldg/summary/v1";

    pub fn write(&self, out: &mut dyn Write, format: Format) -> Result<(), Failure> {
        if format == Format::Json {
            return json_line(out, self);
        }
        let prefix = if format == Format::Csv { "# " } else { "" };
        writeln!(
            out,
            "{prefix}summary command={} p={} q={} n={} checked={} failures={} asserted={} status={}",
            self.command, self.p, self.q, self.n, self.checked, self.failures, self.asserted, self.status
        )?;
        Ok(())
    }
}
