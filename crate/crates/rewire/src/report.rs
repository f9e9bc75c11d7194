use std::fmt;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputRef {
    pub role: String,
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictLine {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub phase: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub kind: String,
    pub path: String,
    pub sha256: String,
}

/// What a command looked at, what it concluded, and what it wrote. Timings
/// are kept apart so everything else is reproducible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputRef>,
    pub verdicts: Vec<VerdictLine>,
    pub timings: Vec<Timing>,
    pub artifacts: Vec<Artifact>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            timings: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn input(&mut self, role: &str, name: &str, sha256: String) {
        self.inputs.push(InputRef {
            role: role.into(),
            name: name.into(),
            sha256,
        });
    }

    pub fn verdict(&mut self, check: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(VerdictLine {
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn artifact(&mut self, kind: &str, path: &str, contents: &[u8]) {
        self.artifacts.push(Artifact {
            kind: kind.into(),
            path: path.into(),
            sha256: sha256_hex(contents),
        });
    }

    /// Runs `f` and records its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing {
            phase: phase.into(),
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
        out
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.command)?;
        for i in &self.inputs {
            writeln!(
                f,
                "  {} {} (sha256 {})",
                i.role,
                i.name,
                &i.sha256[..i.sha256.len().min(12)]
            )?;
        }
        for v in &self.verdicts {
            let mark = if v.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", v.check, v.detail)?;
        }
        for a in &self.artifacts {
            writeln!(f, "wrote {} {}", a.kind, a.path)?;
        }
        if !self.timings.is_empty() {
            let parts: Vec<String> = self
                .timings
                .iter()
                .map(|t| format!("{} {:.1} ms", t.phase, t.millis))
                .collect();
            writeln!(f, "time: {}", parts.join(", "))?;
        }
        Ok(())
    }
}
