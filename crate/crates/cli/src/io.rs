//! Edge-list files: one `u v w` triple per line, `#` starts a comment.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use polar_core::{build_graph, SignedGraph};

use crate::error::{CliError, CliResult};

/// Parse an edge list. For `directed` input each line contributes `w/2` to its
/// undirected pair, i.e. `(A + Aᵀ)/2`.
pub fn parse_edge_list<R: Read>(reader: R, directed: bool) -> CliResult<Vec<(String, String, f64)>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| CliError::Data(format!("line {lineno}: {e}")))?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CliError::Data(format!(
                "line {lineno}: expected `u v w`, found {} fields",
                fields.len()
            )));
        }
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| CliError::Data(format!("line {lineno}: bad weight `{}`", fields[2])))?;
        if !w.is_finite() || w == 0.0 {
            return Err(CliError::Data(format!("line {lineno}: weight must be finite and nonzero")));
        }
        if fields[0] == fields[1] {
            return Err(CliError::Data(format!("line {lineno}: self-loop on `{}`", fields[0])));
        }
        let w = if directed { w / 2.0 } else { w };
        out.push((fields[0].to_string(), fields[1].to_string(), w));
    }
    Ok(out)
}

/// A graph restricted to its largest component.
#[derive(Debug)]
pub struct Ingested {
    pub graph: SignedGraph,
    pub dropped_nodes: usize,
    pub dropped_edges: usize,
    pub warnings: Vec<String>,
}

pub fn ingest_reader<R: Read>(reader: R, directed: bool) -> CliResult<Ingested> {
    let edges = parse_edge_list(reader, directed)?;
    if edges.is_empty() {
        return Err(CliError::Data("edge list is empty".into()));
    }
    let full = build_graph(&edges)?;
    let (graph, kept) = full.largest_component()?;
    let dropped_nodes = full.node_count() - kept.len();
    let dropped_edges = full.edge_count() - graph.edge_count();
    let mut warnings = Vec::new();
    if dropped_nodes > 0 {
        warnings.push(format!(
            "kept the largest component: dropped {dropped_nodes} nodes and {dropped_edges} edges"
        ));
    }
    Ok(Ingested {
        graph,
        dropped_nodes,
        dropped_edges,
        warnings,
    })
}

pub fn ingest(path: &Path, directed: bool) -> CliResult<Ingested> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    ingest_reader(file, directed)
}

pub fn write_edge_list<W: Write>(g: &SignedGraph, mut out: W) -> std::io::Result<()> {
    for e in g.edges() {
        writeln!(out, "{} {} {}", g.label(e.u), g.label(e.v), e.w)?;
    }
    Ok(())
}

/// Write `content` to `path`, or stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::io(p.display().to_string(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::io("stdout", e))
        }
    }
}
