use std::fs;
use std::io;
use std::path::PathBuf;
use std::time::Instant;

use sha2::{Digest, Sha256};

pub const MANIFEST_FORMAT: u32 = 1;

/// Collects report lines and artifacts of one command and writes the
/// manifest.
pub struct Run {
    pub out: Option<PathBuf>,
    settings: Vec<(String, String)>,
    artifacts: Vec<(String, String)>,
    lines: Vec<String>,
    passed: bool,
    start: Instant,
}

pub fn sha256_hex(data: &[u8]) -> String {
    format!("{:x}", Sha256::digest(data))
}

impl Run {
    pub fn new(command: &str, out: Option<PathBuf>) -> Self {
        Run {
            out,
            settings: vec![("command".into(), command.into())],
            artifacts: Vec::new(),
            lines: Vec::new(),
            passed: true,
            start: Instant::now(),
        }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.settings.push((key.into(), value.to_string()));
    }

    /// Prints a report line and records it.
    pub fn line(&mut self, line: String) {
        println!("{line}");
        self.lines.push(line);
    }

    pub fn check(&mut self, passed: bool, line: String) {
        self.passed &= passed;
        self.line(line);
    }

    /// Writes `content` to `<out>/<rel>` and records its hash.
    pub fn artifact(&mut self, rel: &str, content: &str) -> io::Result<()> {
        let Some(out) = &self.out else { return Ok(()) };
        let path = out.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, content)?;
        self.artifacts.push((rel.to_string(), sha256_hex(content.as_bytes())));
        Ok(())
    }

    /// Writes the report and the manifest. The wall time is the only
    /// field that varies between identical runs.
    pub fn finish(mut self) -> io::Result<bool> {
        if self.out.is_some() {
            let mut report = self.lines.join("\n");
            report.push('\n');
            self.artifact("report.txt", &report)?;
            let manifest = self.manifest();
            fs::write(self.out.as_ref().unwrap().join("manifest.txt"), manifest)?;
        }
        Ok(self.passed)
    }

    fn manifest(&self) -> String {
        let mut s = format!("format={MANIFEST_FORMAT}\n");
        for (k, v) in &self.settings {
            s.push_str(&format!("{k}={v}\n"));
        }
        let mut arts = self.artifacts.clone();
        arts.sort();
        for (rel, h) in arts {
            s.push_str(&format!("artifact.{rel}=sha256:{h}\n"));
        }
        s.push_str(&format!("result={}\n", if self.passed { "PASS" } else { "FAIL" }));
        s.push_str(&format!("wall_time_ms={}\n", self.start.elapsed().as_millis()));
        s
    }
}
