//! Command-line interface.
//!
//! Exit status: 0 on success, 1 on unreadable or malformed input, 2 on bad
//! flags or a selector that matches nothing.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use refgraph_core::filter::FilterConfig;

use crate::dump::{read_dump, GraphDump, ProjectGraph};
use crate::error::{Error, Result};
use crate::output::{dot_files, emit_tables, write_outputs};
use crate::pipeline::{corpus_stats, ingest, read_project_ages, select, IngestConfig, Selector};

const AFTER_HELP: &str = "\
Records are JSON lines with the keys project, commit, timestamp, author_name,
author_email, type, source and target.

Commit logs restrict records to main-branch commits and supply commit time and
author. Produce one per project with:

    git log --first-parent --format='%H%x09%aI%x09%an%x09%ae' > project.log

Exit status: 0 success, 1 input error, 2 usage or selector error.";

#[derive(Debug, Parser)]
#[command(name = "refgraph", version, about = "Build and characterize refactoring graphs", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the graph and write `graph.json` and `build.log`.
    Build(BuildArgs),
    /// Compute tables, histograms and correlations.
    Stats(StatsArgs),
    /// Write one DOT file per selected subgraph.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Line-delimited JSON record file (repeatable).
    #[arg(long, value_name = "PATH")]
    pub records: Vec<PathBuf>,
    /// First-parent commit log for a project (repeatable).
    #[arg(long = "commit-log", value_name = "PROJECT=PATH", value_parser = parse_commit_log_arg)]
    pub commit_logs: Vec<(String, PathBuf)>,
    /// Package segments to exclude, comma separated. Replaces the default
    /// list (test, tests, example, examples, sample, samples).
    #[arg(long, value_name = "CSV")]
    pub exclude_keywords: Option<String>,
    /// Keep refactorings that touch constructors.
    #[arg(long)]
    pub keep_constructors: bool,
    /// Fail on the first malformed record or unresolvable commit.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Minimum distinct commits for a subgraph to be analyzed.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_commits: u64,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Graph dump written by `build`, instead of --records.
    #[arg(long, value_name = "PATH", conflicts_with = "records")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// `project,age` lines for the project-age correlation.
    #[arg(long, value_name = "PATH")]
    pub project_ages: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Graph dump written by `build`, instead of --records.
    #[arg(long, value_name = "PATH", conflicts_with = "records")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Subgraph id or vertex-label substring.
    #[arg(value_name = "SELECTOR", required_unless_present = "all", conflicts_with = "all")]
    pub selector: Option<String>,
    /// Export every subgraph.
    #[arg(long)]
    pub all: bool,
}

fn parse_commit_log_arg(s: &str) -> std::result::Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((project, path)) if !project.is_empty() && !path.is_empty() => Ok((project.to_string(), path.into())),
        _ => Err(format!("expected PROJECT=PATH, got `{s}`")),
    }
}

impl InputArgs {
    fn ingest_config(&self) -> Result<IngestConfig> {
        let mut commit_logs = BTreeMap::new();
        for (project, path) in &self.commit_logs {
            if commit_logs.insert(project.clone(), path.clone()).is_some() {
                return Err(Error::Config(format!("commit log for `{project}` given twice")));
            }
        }
        let mut filter = FilterConfig { drop_constructors: !self.keep_constructors, ..FilterConfig::default() };
        if let Some(csv) = &self.exclude_keywords {
            filter.excluded_package_keywords =
                csv.split(',').map(str::trim).filter(|k| !k.is_empty()).map(String::from).collect();
        }
        Ok(IngestConfig { records: self.records.clone(), commit_logs, filter, strict: self.strict })
    }
}

fn load_graphs(graph: Option<&PathBuf>, input: &InputArgs, min_commits: usize) -> Result<Vec<ProjectGraph>> {
    match graph {
        Some(path) => read_dump(path),
        None if input.records.is_empty() => Err(Error::Config("either --graph or --records is required".into())),
        None => Ok(ingest(&input.ingest_config()?, min_commits)?.graphs()),
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(args) => {
            let min_commits = args.common.min_commits as usize;
            if args.input.records.is_empty() {
                return Err(Error::Config("--records is required".into()));
            }
            let built = ingest(&args.input.ingest_config()?, min_commits)?;
            let log = built.run_log();
            let files = vec![
                (PathBuf::from("graph.json"), GraphDump::new(&built.graphs()).to_json()),
                (PathBuf::from("build.log"), log.clone()),
            ];
            write_outputs(&args.common.out, &files)?;
            eprint!("{log}");
        }
        Command::Stats(args) => {
            let min_commits = args.common.min_commits as usize;
            let graphs = load_graphs(args.graph.as_ref(), &args.input, min_commits)?;
            let ages = args.project_ages.as_deref().map(read_project_ages).transpose()?;
            let stats = corpus_stats(&graphs, min_commits, ages.as_ref())?;
            let files = emit_tables(&stats, min_commits);
            write_outputs(&args.common.out, &files)?;
            eprintln!("wrote {} files to {}", files.len(), args.common.out.display());
        }
        Command::Export(args) => {
            let min_commits = args.common.min_commits as usize;
            let graphs = load_graphs(args.graph.as_ref(), &args.input, min_commits)?;
            let selector = match (&args.selector, args.all) {
                (_, true) => Selector::All,
                (Some(s), false) => Selector::Pattern(s.clone()),
                (None, false) => return Err(Error::Config("a selector or --all is required".into())),
            };
            let selected = select(&graphs, min_commits, &selector);
            if selected.is_empty() {
                return Err(Error::NoMatch(args.selector.unwrap_or_else(|| "--all".into())));
            }
            let files = dot_files(&selected);
            write_outputs(&args.common.out, &files)?;
            eprintln!("wrote {} DOT files to {}", files.len(), args.common.out.display());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commit_log::GIT_LOG_COMMAND;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn help_documents_log_format() {
        assert!(AFTER_HELP.contains(GIT_LOG_COMMAND.trim_start_matches("git log --first-parent --format=")));
    }

    #[test]
    fn zero_threshold_rejected() {
        let r = Cli::try_parse_from(["refgraph", "build", "--records", "a", "--out", "o", "--min-commits", "0"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn records_flag_does_not_swallow_selector() {
        let cli = Cli::try_parse_from(["refgraph", "export", "--records", "a", "--records", "b", "sel", "--out", "o"])
            .unwrap();
        let Command::Export(args) = cli.command else { panic!() };
        assert_eq!(args.input.records.len(), 2);
        assert_eq!(args.selector.as_deref(), Some("sel"));
    }

    #[test]
    fn commit_log_flag() {
        assert_eq!(
            parse_commit_log_arg("okhttp=logs/okhttp.tsv").unwrap(),
            ("okhttp".into(), "logs/okhttp.tsv".into())
        );
        assert!(parse_commit_log_arg("okhttp").is_err());
    }
}
