//! Corpus handling, JSON reports and SVG figures for the `hyp` binary.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod svg;

pub use commands::{parse_point, run, run_with_corpus, CliError, Command, Outcome, RunArgs, Status};
pub use corpus::{corpus_load, CorpusEntry, CorpusError};
pub use report::RunReport;
pub use svg::{render_svg, Figure};
