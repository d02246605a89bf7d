//! Line-delimited JSON refactoring records.
//!
//! Each non-empty line is an object with exactly the keys `project`,
//! `commit`, `timestamp`, `author_name`, `author_email`, `type`, `source`
//! and `target`:
//!
//! ```text
//! {"project":"okhttp","commit":"c5a26fefd","timestamp":"2016-01-02T10:00:00Z","author_name":"D2","author_email":"d2@example.org","type":"extract","source":"okhttp3.OkHttpClient#connectTimeout(long, TimeUnit)","target":"okhttp3.OkHttpClient#checkDuration(String, long, TimeUnit)"}
//! ```

use std::io::BufRead;

use chrono::{DateTime, NaiveDateTime};
use refgraph_core::record::{CommitHash, RefactoringRecord, RefactoringType};
use refgraph_core::signature::MethodRef;
use refgraph_core::time::Timestamp;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRecord {
    pub project: String,
    pub commit: String,
    pub timestamp: String,
    pub author_name: String,
    pub author_email: String,
    #[serde(rename = "type")]
    pub rtype: String,
    pub source: String,
    pub target: String,
}

impl RawRecord {
    pub fn validate(&self) -> Result<RefactoringRecord, String> {
        let source = MethodRef::parse(&self.source).map_err(|e| format!("source: {e}"))?;
        let target = MethodRef::parse(&self.target).map_err(|e| format!("target: {e}"))?;
        let rtype: RefactoringType = self.rtype.parse().map_err(|e| format!("type: {e}"))?;
        let commit = CommitHash::parse(&self.commit).map_err(|e| format!("commit: {e}"))?;
        let timestamp = parse_timestamp(&self.timestamp)?;
        if self.project.trim().is_empty() {
            return Err("project is empty".into());
        }
        RefactoringRecord::new(
            self.project.trim(),
            source,
            target,
            rtype,
            commit,
            timestamp,
            self.author_name.trim(),
            self.author_email.trim(),
        )
        .map_err(|e| e.to_string())
    }
}

impl From<&RefactoringRecord> for RawRecord {
    fn from(r: &RefactoringRecord) -> Self {
        Self {
            project: r.project.clone(),
            commit: r.commit.to_string(),
            timestamp: r.timestamp.to_string(),
            author_name: r.author_name.clone(),
            author_email: r.author_email.clone(),
            rtype: r.rtype.to_string(),
            source: r.source.canonical().to_string(),
            target: r.target.canonical().to_string(),
        }
    }
}

/// Parses an ISO-8601 instant. Offsets are converted to UTC; a value
/// without an offset is taken as UTC. Sub-second digits are dropped.
pub fn parse_timestamp(s: &str) -> Result<Timestamp, String> {
    let s = s.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Ok(Timestamp(dt.timestamp()));
    }
    if let Ok(dt) = DateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S%.f%z") {
        return Ok(Timestamp(dt.timestamp()));
    }
    NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S%.f")
        .map(|dt| Timestamp(dt.and_utc().timestamp()))
        .map_err(|_| format!("timestamp: `{s}` is not an ISO-8601 instant"))
}

/// A rejected input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub records: Vec<RefactoringRecord>,
    pub errors: Vec<LineError>,
    /// Non-empty lines read.
    pub lines: usize,
}

/// Parses one record line.
pub fn parse_line(line: &str) -> Result<RefactoringRecord, String> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    raw.validate()
}

/// Reads every record from `input`, collecting bad lines instead of
/// failing. With `strict`, the first bad line is returned as an error.
/// I/O errors are always fatal.
pub fn parse_records<R: BufRead>(input: R, strict: bool) -> std::io::Result<Result<ParseOutcome, LineError>> {
    let mut out = ParseOutcome::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.lines += 1;
        match parse_line(&line) {
            Ok(r) => out.records.push(r),
            Err(message) => {
                let err = LineError { line: i + 1, message };
                if strict {
                    return Ok(Err(err));
                }
                out.errors.push(err);
            }
        }
    }
    Ok(Ok(out))
}
