//! Record filters applied before graph construction.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::record::RefactoringRecord;
use crate::signature::MethodRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterConfig {
    /// Package segments that mark non-production code. Matched
    /// case-insensitively against whole dot-separated segments.
    pub excluded_package_keywords: Vec<String>,
    pub drop_constructors: bool,
    pub drop_self_loops: bool,
}

impl FilterConfig {
    pub const DEFAULT_KEYWORDS: [&'static str; 6] = ["test", "tests", "example", "examples", "sample", "samples"];

    fn in_excluded_package(&self, m: &MethodRef) -> bool {
        m.package_segments().any(|seg| self.excluded_package_keywords.iter().any(|k| seg.eq_ignore_ascii_case(k)))
    }

    /// The first rule that rejects `record`, if any.
    pub fn exclusion(&self, record: &RefactoringRecord) -> Option<ExclusionReason> {
        let ends = [&record.source, &record.target];
        if ends.iter().any(|m| self.in_excluded_package(m)) {
            Some(ExclusionReason::PackageKeyword)
        } else if self.drop_constructors && ends.iter().any(|m| m.is_constructor()) {
            Some(ExclusionReason::Constructor)
        } else if self.drop_self_loops && record.source == record.target {
            Some(ExclusionReason::SelfLoop)
        } else {
            None
        }
    }
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            excluded_package_keywords: Self::DEFAULT_KEYWORDS.iter().map(|k| k.to_string()).collect(),
            drop_constructors: true,
            drop_self_loops: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExclusionReason {
    PackageKeyword,
    Constructor,
    SelfLoop,
}

impl ExclusionReason {
    pub const fn as_str(self) -> &'static str {
        match self {
            Self::PackageKeyword => "package-keyword",
            Self::Constructor => "constructor",
            Self::SelfLoop => "self-loop",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExclusionReport {
    pub package_keyword: usize,
    pub constructor: usize,
    pub self_loop: usize,
}

impl ExclusionReport {
    pub fn total(&self) -> usize {
        self.package_keyword + self.constructor + self.self_loop
    }

    pub fn count(&mut self, reason: ExclusionReason) {
        match reason {
            ExclusionReason::PackageKeyword => self.package_keyword += 1,
            ExclusionReason::Constructor => self.constructor += 1,
            ExclusionReason::SelfLoop => self.self_loop += 1,
        }
    }
}

impl core::ops::AddAssign for ExclusionReport {
    fn add_assign(&mut self, rhs: Self) {
        self.package_keyword += rhs.package_keyword;
        self.constructor += rhs.constructor;
        self.self_loop += rhs.self_loop;
    }
}

/// Drops records rejected by `config`. Each dropped record is counted under
/// exactly one reason; kept records keep their input order.
pub fn apply_filters(
    records: Vec<RefactoringRecord>,
    config: &FilterConfig,
) -> (Vec<RefactoringRecord>, ExclusionReport) {
    let mut report = ExclusionReport::default();
    let kept = records
        .into_iter()
        .filter(|r| match config.exclusion(r) {
            Some(reason) => {
                report.count(reason);
                false
            }
            None => true,
        })
        .collect();
    (kept, report)
}
