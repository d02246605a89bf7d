//! Tabular projections of [`CorpusStats`].
//!
//! Every table is derived from the stats alone, so it can be recomputed
//! from the JSON summary. Percentages are rounded half-up to one decimal
//! and always sit next to the raw count.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::corpus::{Bucket, CorpusStats, Correlation, SplitRow, ALL};
use crate::stats::FiveNumber;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    /// File stem, e.g. `composition`.
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Comma-separated text with a header row and `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        push_record(&mut out, self.header.iter().copied());
        for row in &self.rows {
            push_record(&mut out, row.iter().map(String::as_str));
        }
        out
    }
}

fn push_record<'a>(out: &mut String, fields: impl Iterator<Item = &'a str>) {
    for (i, f) in fields.enumerate() {
        if i > 0 {
            out.push(',');
        }
        if f.contains([',', '"', '\n', '\r']) {
            out.push('"');
            out.push_str(&f.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(f);
        }
    }
    out.push('\n');
}

/// `100 * count / total` rounded half-up to one decimal; `0.0` when
/// `total` is zero.
pub fn percent(count: usize, total: usize) -> String {
    if total == 0 {
        return "0.0".to_string();
    }
    let (c, t) = (count as u128, total as u128);
    let tenths = (2000 * c + t) / (2 * t);
    format!("{}.{}", tenths / 10, tenths % 10)
}

pub fn days(v: f64) -> String {
    format!("{v:.1}")
}

fn split_table(name: &'static str, header: [&'static str; 5], rows: &[SplitRow]) -> Table {
    Table {
        name,
        header: header.to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.project.clone(),
                    r.first.to_string(),
                    percent(r.first, r.total()),
                    r.second.to_string(),
                    percent(r.second, r.total()),
                ]
            })
            .collect(),
    }
}

pub fn subgraph_table(stats: &CorpusStats) -> Table {
    Table {
        name: "subgraphs",
        header: vec!["project", "all", "len_1", "len_1_pct", "len_ge_2", "len_ge_2_pct"],
        rows: stats
            .subgraph_counts
            .iter()
            .map(|r| {
                vec![
                    r.project.clone(),
                    r.total.to_string(),
                    r.single_commit.to_string(),
                    percent(r.single_commit, r.total),
                    r.multi_commit.to_string(),
                    percent(r.multi_commit, r.total),
                ]
            })
            .collect(),
    }
}

pub fn type_table(stats: &CorpusStats) -> Table {
    let mut rows: Vec<Vec<String>> = stats
        .type_frequency
        .iter()
        .map(|t| vec![t.rtype.to_string(), t.occurrences.to_string(), percent(t.occurrences, stats.total_edges)])
        .collect();
    rows.push(vec![ALL.to_string(), stats.total_edges.to_string(), percent(stats.total_edges, stats.total_edges)]);
    Table { name: "refactoring_types", header: vec!["refactoring", "occurrences", "pct"], rows }
}

pub fn composition_table(stats: &CorpusStats) -> Table {
    split_table(
        "composition",
        ["project", "homogeneous", "homogeneous_pct", "heterogeneous", "heterogeneous_pct"],
        &stats.composition,
    )
}

pub fn developer_table(stats: &CorpusStats) -> Table {
    split_table("developers", ["project", "single", "single_pct", "multiple", "multiple_pct"], &stats.authorship)
}

pub fn histogram_table(stats: &CorpusStats) -> Table {
    let h = &stats.histograms;
    let series: [(&str, &[Bucket]); 4] = [
        ("vertices", &h.vertices),
        ("edges", &h.edges),
        ("commits", &h.commits),
        ("distinct_types", &h.distinct_types),
    ];
    Table {
        name: "histograms",
        header: vec!["metric", "value", "count"],
        rows: series
            .iter()
            .flat_map(|(metric, buckets)| {
                buckets.iter().map(move |b| vec![metric.to_string(), b.value.to_string(), b.count.to_string()])
            })
            .collect(),
    }
}

pub fn age_table(stats: &CorpusStats) -> Table {
    Table {
        name: "ages",
        header: vec!["project", "n", "min_days", "q1_days", "median_days", "q3_days", "max_days"],
        rows: stats
            .ages
            .iter()
            .map(|r| match r.days {
                Some(FiveNumber { n, min, q1, median, q3, max }) => {
                    vec![r.project.clone(), n.to_string(), days(min), days(q1), days(median), days(q3), days(max)]
                }
                None => {
                    let mut row = vec![r.project.clone(), "0".to_string()];
                    row.extend(core::iter::repeat_n("NA".to_string(), 5));
                    row
                }
            })
            .collect(),
    }
}

pub fn correlation_table(stats: &CorpusStats) -> Table {
    let c = &stats.correlations;
    let row = |study: &str, corr: &Correlation| match corr {
        Correlation::Computed(r) => vec![
            study.to_string(),
            "computed".to_string(),
            format!("{:.6}", r.rho),
            r.n.to_string(),
            format!("{:.3e}", r.p_approx),
            String::new(),
        ],
        Correlation::NotComputed { reason } => vec![
            study.to_string(),
            "not computed".to_string(),
            "NA".to_string(),
            "NA".to_string(),
            "NA".to_string(),
            reason.clone(),
        ],
    };
    Table {
        name: "correlations",
        header: vec!["study", "status", "rho", "n", "p_approx", "note"],
        rows: vec![
            row("developers_vs_commits", &c.developers_vs_commits),
            row("project_age_vs_median_subgraph_age", &c.project_age_vs_median_age),
        ],
    }
}

/// Every table in a fixed order.
pub fn tables(stats: &CorpusStats) -> Vec<Table> {
    vec![
        subgraph_table(stats),
        histogram_table(stats),
        age_table(stats),
        type_table(stats),
        composition_table(stats),
        developer_table(stats),
        correlation_table(stats),
    ]
}
