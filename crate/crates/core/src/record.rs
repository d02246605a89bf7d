//! Refactoring records as emitted by a refactoring detector.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::signature::MethodRef;
use crate::time::Timestamp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("unknown refactoring type `{0}`")]
    UnknownType(String),
    #[error("invalid commit hash `{0}` (expected 7 to 40 hex digits)")]
    InvalidCommit(String),
    #[error("author email is empty")]
    EmptyEmail,
}

/// The eight method-level refactorings a graph edge can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RefactoringType {
    Rename,
    Move,
    MoveAndRename,
    Extract,
    ExtractAndMove,
    Inline,
    PullUp,
    PushDown,
}

impl RefactoringType {
    pub const ALL: [RefactoringType; 8] = [
        Self::Rename,
        Self::Move,
        Self::MoveAndRename,
        Self::Extract,
        Self::ExtractAndMove,
        Self::Inline,
        Self::PullUp,
        Self::PushDown,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            Self::Rename => "rename",
            Self::Move => "move",
            Self::MoveAndRename => "move_and_rename",
            Self::Extract => "extract",
            Self::ExtractAndMove => "extract_and_move",
            Self::Inline => "inline",
            Self::PullUp => "pull_up",
            Self::PushDown => "push_down",
        }
    }
}

impl fmt::Display for RefactoringType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RefactoringType {
    type Err = RecordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| RecordError::UnknownType(s.to_string()))
    }
}

/// A commit hash, lowercased, between 7 and 40 hex digits long.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct CommitHash(String);

impl CommitHash {
    pub const MIN_LEN: usize = 7;
    pub const MAX_LEN: usize = 40;

    pub fn parse(raw: &str) -> Result<Self, RecordError> {
        let norm = raw.trim().to_ascii_lowercase();
        let ok = (Self::MIN_LEN..=Self::MAX_LEN).contains(&norm.len()) && norm.bytes().all(|b| b.is_ascii_hexdigit());
        if ok {
            Ok(Self(norm))
        } else {
            Err(RecordError::InvalidCommit(raw.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// First seven digits, as used in short labels.
    pub fn short(&self) -> &str {
        &self.0[..Self::MIN_LEN]
    }

    /// True when one hash is a prefix of the other.
    pub fn matches(&self, other: &CommitHash) -> bool {
        self.0.starts_with(&other.0) || other.0.starts_with(&self.0)
    }
}

impl fmt::Display for CommitHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for CommitHash {
    type Err = RecordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for CommitHash {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Self::parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// One detected refactoring `source -> target` of kind `rtype`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefactoringRecord {
    pub project: String,
    pub source: MethodRef,
    pub target: MethodRef,
    pub rtype: RefactoringType,
    pub commit: CommitHash,
    pub timestamp: Timestamp,
    pub author_name: String,
    pub author_email: String,
}

impl RefactoringRecord {
    /// Assembles a record, rejecting an empty author email.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        project: impl Into<String>,
        source: MethodRef,
        target: MethodRef,
        rtype: RefactoringType,
        commit: CommitHash,
        timestamp: Timestamp,
        author_name: impl Into<String>,
        author_email: impl Into<String>,
    ) -> Result<Self, RecordError> {
        let author_email = author_email.into();
        if author_email.trim().is_empty() {
            return Err(RecordError::EmptyEmail);
        }
        Ok(Self {
            project: project.into(),
            source,
            target,
            rtype,
            commit,
            timestamp,
            author_name: author_name.into(),
            author_email,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_strings_are_bijective() {
        for t in RefactoringType::ALL {
            assert_eq!(t.as_str().parse::<RefactoringType>(), Ok(t));
        }
        let mut names: alloc::vec::Vec<_> = RefactoringType::ALL.iter().map(|t| t.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 8);
    }

    #[test]
    fn other_type_strings_fail() {
        for bad in ["Rename", "extract_method", "", "move-and-rename", "change_signature"] {
            assert_eq!(bad.parse::<RefactoringType>(), Err(RecordError::UnknownType(bad.into())));
        }
    }

    #[test]
    fn commit_hash_normalization() {
        let h = CommitHash::parse("C1A2B3C").unwrap();
        assert_eq!(h.as_str(), "c1a2b3c");
        assert_eq!(h, CommitHash::parse("c1a2b3c").unwrap());
        assert!(CommitHash::parse("abc123").is_err());
        assert!(CommitHash::parse("zzzzzzz").is_err());
        assert!(CommitHash::parse(&"a".repeat(41)).is_err());
        assert!(CommitHash::parse(&"a".repeat(40)).is_ok());
    }

    #[test]
    fn prefix_matching() {
        let full = CommitHash::parse("063c4bb0aa11223344556677889900aabbccddee").unwrap();
        let short = CommitHash::parse("063c4bb0").unwrap();
        assert!(full.matches(&short));
        assert!(short.matches(&full));
        assert!(!short.matches(&CommitHash::parse("063c4bb1").unwrap()));
        assert_eq!(full.short(), "063c4bb");
    }

    #[test]
    fn empty_email_rejected() {
        let m = MethodRef::parse("a.B#c()").unwrap();
        let r = RefactoringRecord::new(
            "p",
            m.clone(),
            m,
            RefactoringType::Move,
            CommitHash::parse("abcdef0").unwrap(),
            Timestamp(0),
            "n",
            "  ",
        );
        assert_eq!(r, Err(RecordError::EmptyEmail));
    }
}
