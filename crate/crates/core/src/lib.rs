//! Core model for refactoring graphs.
//!
//! A refactoring graph has one vertex per method signature and one directed
//! edge per detected method-level refactoring. Its weakly connected
//! components ("subgraphs") are the unit of analysis: this crate builds the
//! graph, partitions it, measures each subgraph and aggregates corpus-level
//! statistics.
//!
//! The crate is `no_std` and only needs `alloc`. Reading files, parsing
//! timestamps and writing reports live in the `refgraph` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod corpus;
pub mod dot;
pub mod filter;
pub mod graph;
pub mod history;
pub mod metrics;
pub mod record;
pub mod report;
pub mod signature;
pub mod stats;
pub mod time;
mod union_find;

pub use corpus::{aggregate, correlate_corpus, CorpusStats, Correlation, ProjectInput};
pub use dot::emit_dot;
pub use filter::{apply_filters, ExclusionReason, ExclusionReport, FilterConfig};
pub use graph::{build, filter_multi_commit, partition, split_by_commits, Edge, RefactoringGraph, Subgraph};
pub use history::{restrict_to_log, CommitLog, CommitMeta, HistoryError};
pub use metrics::{measure, Authorship, Composition, MetricsError, SubgraphMetrics};
pub use record::{CommitHash, RecordError, RefactoringRecord, RefactoringType};
pub use signature::{MethodRef, SignatureError};
pub use stats::{spearman, SpearmanError, SpearmanResult};
pub use time::Timestamp;
