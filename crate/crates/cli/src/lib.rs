//! Command-line harness: ingestion, single queries, synthetic campaigns.

pub mod checks;
pub mod error;
pub mod experiment;
pub mod io;
pub mod query;
pub mod seeds;

pub use error::{CliError, CliResult};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutput};
pub use io::{ingest, ingest_reader, parse_edge_list, Ingested};
pub use query::{query, query_graph, QueryConfig, QueryResult};
pub use seeds::{filter_overlaps, sample_seed_pairs};
