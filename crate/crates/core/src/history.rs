//! First-parent commit history and record restriction.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::record::{CommitHash, RefactoringRecord};
use crate::time::Timestamp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HistoryError {
    #[error("commit {0} appears more than once in the log")]
    DuplicateHash(CommitHash),
    #[error("commit prefix {prefix} is ambiguous ({candidates} log entries match)")]
    AmbiguousPrefix { prefix: CommitHash, candidates: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitMeta {
    pub hash: CommitHash,
    pub timestamp: Timestamp,
    pub author_name: String,
    pub author_email: String,
}

/// Main-branch commits, newest first as emitted by `git log`.
#[derive(Debug, Clone, Default)]
pub struct CommitLog {
    entries: Vec<CommitMeta>,
    by_hash: BTreeMap<CommitHash, usize>,
}

impl CommitLog {
    pub fn new(entries: Vec<CommitMeta>) -> Result<Self, HistoryError> {
        let mut by_hash = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            if by_hash.insert(e.hash.clone(), i).is_some() {
                return Err(HistoryError::DuplicateHash(e.hash.clone()));
            }
        }
        Ok(Self { entries, by_hash })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CommitMeta] {
        &self.entries
    }

    /// Looks up a possibly abbreviated hash. Either side may be the
    /// abbreviation; more than one matching entry is an error.
    pub fn resolve(&self, hash: &CommitHash) -> Result<Option<&CommitMeta>, HistoryError> {
        let q = hash.as_str();
        let mut hits: Vec<usize> = self
            .by_hash
            .range(hash.clone()..)
            .take_while(|(k, _)| k.as_str().starts_with(q))
            .map(|(_, &i)| i)
            .collect();
        for len in CommitHash::MIN_LEN..q.len() {
            if let Ok(prefix) = CommitHash::parse(&q[..len]) {
                if let Some(&i) = self.by_hash.get(&prefix) {
                    hits.push(i);
                }
            }
        }
        hits.sort_unstable();
        hits.dedup();
        match hits.as_slice() {
            [] => Ok(None),
            [i] => Ok(Some(&self.entries[*i])),
            _ => Err(HistoryError::AmbiguousPrefix { prefix: hash.clone(), candidates: hits.len() }),
        }
    }
}

/// Outcome of [`restrict_to_log`].
#[derive(Debug, Clone, Default)]
pub struct Restricted {
    pub kept: Vec<RefactoringRecord>,
    /// Records whose commit is not on the logged branch.
    pub dropped: usize,
    /// Input index and error for records whose commit could not be resolved.
    pub errors: Vec<(usize, HistoryError)>,
}

/// Keeps records whose commit is in `log`, overwriting hash, timestamp and
/// author with the log's values.
pub fn restrict_to_log(records: Vec<RefactoringRecord>, log: &CommitLog) -> Restricted {
    let mut out = Restricted::default();
    for (i, mut r) in records.into_iter().enumerate() {
        match log.resolve(&r.commit) {
            Ok(Some(meta)) => {
                r.commit = meta.hash.clone();
                r.timestamp = meta.timestamp;
                r.author_name.clone_from(&meta.author_name);
                r.author_email.clone_from(&meta.author_email);
                out.kept.push(r);
            }
            Ok(None) => out.dropped += 1,
            Err(e) => out.errors.push((i, e)),
        }
    }
    out
}
