//! Deterministic run reports: ordered key/value lines echoed to stdout and,
//! with --out, written beside any CSV side files. No timestamps, so a given
//! config and build produce byte-identical bodies.

use std::io::Write;
use std::path::Path;

pub const SCHEMA: &str = "framelets-report-v1";

pub struct Report {
    lines: Vec<(String, String)>,
    pub verdict: Option<bool>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report { lines: Vec::new(), verdict: None, warnings: Vec::new() };
        r.put("schema", SCHEMA);
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn put_f64(&mut self, key: &str, value: f64) {
        // shortest round-trip formatting keeps bodies deterministic
        self.lines.push((key.to_string(), format!("{value}")));
    }

    pub fn set_verdict(&mut self, pass: bool) {
        self.verdict = Some(pass);
        self.put("verdict", if pass { "pass" } else { "fail" });
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        let m = message.into();
        self.put(&format!("warning.{}", self.warnings.len()), &m);
        self.warnings.push(m);
    }

    pub fn body(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.lines {
            s.push_str(k);
            s.push_str(": ");
            s.push_str(v);
            s.push('\n');
        }
        s
    }

    pub fn emit(&self, out_dir: Option<&Path>) -> std::io::Result<()> {
        print!("{}", self.body());
        if let Some(dir) = out_dir {
            std::fs::create_dir_all(dir)?;
            let mut f = std::fs::File::create(dir.join("report.txt"))?;
            f.write_all(self.body().as_bytes())?;
        }
        Ok(())
    }

    /// Exit code: 0 clean pass, 1 failed verdict, 3 pass with escalated
    /// numeric warnings.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ if !self.warnings.is_empty() => 3,
            _ => 0,
        }
    }
}

pub fn write_csv(
    out_dir: &Path,
    name: &str,
    header: &str,
    rows: impl Iterator<Item = String>,
) -> std::io::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let mut f = std::fs::File::create(out_dir.join(name))?;
    writeln!(f, "{header}")?;
    for row in rows {
        writeln!(f, "{row}")?;
    }
    Ok(())
}
