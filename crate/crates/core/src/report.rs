//! Run reports and graph input for the command-line tool.

use std::fs::File;
use std::io::{self, BufReader};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::Graph;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance envelope around a command's result.
///
/// Everything except `wall_time_s` is a function of the input graph, the
/// parameters and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub graph_hash: Option<u64>,
    pub seed: u64,
    pub mode: Option<String>,
    pub parameters: Value,
    pub result: Value,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, mode: Option<&str>, parameters: Value) -> RunReportBuilder {
        RunReportBuilder {
            report: RunReport {
                command: command.to_string(),
                version: VERSION,
                graph_hash: None,
                seed,
                mode: mode.map(str::to_string),
                parameters,
                result: Value::Null,
                wall_time_s: 0.0,
            },
            start: Instant::now(),
        }
    }
}

pub struct RunReportBuilder {
    report: RunReport,
    start: Instant,
}

impl RunReportBuilder {
    pub fn graph(mut self, g: &Graph) -> Self {
        self.report.graph_hash = Some(g.graph_hash());
        self
    }

    pub fn finish<T: Serialize>(mut self, result: &T) -> Result<RunReport> {
        self.report.result = serde_json::to_value(result).map_err(io::Error::from)?;
        self.report.wall_time_s = self.start.elapsed().as_secs_f64();
        Ok(self.report)
    }
}

/// Reads an edge list from a file, or from stdin when `path` is `-`.
pub fn read_graph(path: &str) -> Result<Graph> {
    if path == "-" {
        Graph::parse_edge_list(io::stdin().lock())
    } else {
        Graph::parse_edge_list(BufReader::new(File::open(path)?))
    }
}

/// JSON schema of the report envelope; `result` holds the per-command payload.
pub fn report_schema() -> Value {
    let payloads = json!({
        "gen": "GenSpec plus n, m and the output path",
        "certify": "ExpansionReport {mode, exhaustive, alpha_star, lower, upper, lower_method, upper_method, witness, graph_hash} plus verdict",
        "separator": "SeparatorReport {separator {a, s, b}, size, exhaustive, method}",
        "spectral": "SpectralSummary and CutReport of the sweep",
        "extract": "ExtractionTrace, MediumSetOutcome, OnePointReport, SparseExtraction or AlgorithmicOutcome",
        "longpath": "PathOutcome {branch: path | witness}",
        "longcycle": "CycleOutcome {branch: cycle | violation | no_large_component}",
        "cyclelengths": "CycleFamily {branch: family | inapplicable}",
        "ramsey-demo": "RamseyReport",
        "minor": "MinorOutcome {branch: embedding | separator}",
        "clique-minor": "CliqueMinorOutcome {branch: minor | failure}",
        "pipeline": "PipelineReport",
        "oracle": "exact oracle value and its witness"
    });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "RunReport",
        "type": "object",
        "required": ["command", "version", "graph_hash", "seed", "mode", "parameters", "result", "wall_time_s"],
        "properties": {
            "command": {"type": "string", "enum": [
                "gen", "certify", "separator", "spectral", "extract", "longpath", "longcycle",
                "cyclelengths", "ramsey-demo", "minor", "clique-minor", "pipeline", "oracle"
            ]},
            "version": {"type": "string"},
            "graph_hash": {"type": ["integer", "null"], "minimum": 0},
            "seed": {"type": "integer", "minimum": 0},
            "mode": {"type": ["string", "null"], "enum": ["exact", "heuristic", "auto", null]},
            "parameters": {"type": "object"},
            "result": {"type": "object"},
            "wall_time_s": {"type": "number", "minimum": 0}
        },
        "x-payloads": payloads,
        "x-conventions": {
            "infinite_ratio": "the string \"inf\"",
            "vertex_sets": "sorted arrays of vertex ids",
            "exit_codes": {"0": "success", "1": "negative verdict", "2": "error"}
        }
    })
}
