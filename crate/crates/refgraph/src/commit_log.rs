//! Tab-separated first-parent commit logs.
//!
//! One commit per line: `<hash>\t<ISO-8601 author date>\t<author name>\t<author email>`,
//! as produced by [`GIT_LOG_COMMAND`].

use std::path::Path;

use refgraph_core::history::{CommitLog, CommitMeta};
use refgraph_core::record::CommitHash;

use crate::error::{Error, Result};
use crate::records::parse_timestamp;

pub const GIT_LOG_COMMAND: &str = "git log --first-parent --format='%H%x09%aI%x09%an%x09%ae'";

/// Parses a whole log. Any malformed line is fatal.
pub fn parse_commit_log(text: &str, path: &Path) -> Result<CommitLog> {
    let malformed = |line: usize, message: String| Error::Malformed { path: path.to_path_buf(), line, message };
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [hash, date, name, email] = fields[..] else {
            return Err(malformed(i + 1, format!("expected 4 tab-separated fields, found {}", fields.len())));
        };
        let hash = CommitHash::parse(hash).map_err(|e| malformed(i + 1, e.to_string()))?;
        let timestamp = parse_timestamp(date).map_err(|e| malformed(i + 1, e))?;
        if email.trim().is_empty() {
            return Err(malformed(i + 1, "author email is empty".into()));
        }
        entries.push(CommitMeta {
            hash,
            timestamp,
            author_name: name.trim().to_string(),
            author_email: email.trim().to_string(),
        });
    }
    CommitLog::new(entries).map_err(|source| Error::History { path: path.to_path_buf(), source })
}

pub fn read_commit_log(path: &Path) -> Result<CommitLog> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Read { path: path.to_path_buf(), source })?;
    parse_commit_log(&text, path)
}
