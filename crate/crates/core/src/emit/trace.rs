use std::fmt::Write;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::translate::{CorrespondenceTrace, TraceError, TraceKind};

/// Provenance lines written above the records.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceHeader {
    pub tool: String,
    /// Input path and sha256 of its contents.
    pub inputs: Vec<(String, String)>,
}

impl TraceHeader {
    pub fn new(inputs: &[(String, &str)]) -> Self {
        let mut inputs: Vec<(String, String)> = inputs
            .iter()
            .map(|(path, text)| (path.clone(), sha256_hex(text.as_bytes())))
            .collect();
        inputs.sort();
        TraceHeader {
            tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            inputs,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceLoadError {
    #[error("trace line {line}: expected three tab-separated fields")]
    Malformed { line: usize },
    #[error("trace line {line}: unknown kind {kind}")]
    UnknownKind { line: usize, kind: String },
    #[error("trace line {line}: {source}")]
    Conflict { line: usize, source: TraceError },
}

pub fn print_trace(trace: &CorrespondenceTrace, header: &TraceHeader) -> String {
    let mut out = format!("# {}\n", header.tool);
    for (path, digest) in &header.inputs {
        let _ = writeln!(out, "# input {path} sha256:{digest}");
    }
    for r in trace.records() {
        let _ = writeln!(out, "{}\t{}\t{}", r.kind, r.domain, r.b);
    }
    out
}

/// Reads records back; header lines are returned as written.
pub fn load_trace(text: &str) -> Result<(CorrespondenceTrace, TraceHeader), TraceLoadError> {
    let mut trace = CorrespondenceTrace::new();
    let mut header = TraceHeader::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(comment) = raw.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("input ") {
                if let Some((path, digest)) = rest.rsplit_once(" sha256:") {
                    header.inputs.push((path.to_string(), digest.to_string()));
                }
            } else if header.tool.is_empty() {
                header.tool = comment.to_string();
            }
            continue;
        }
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        let [kind, domain, b] = fields[..] else {
            return Err(TraceLoadError::Malformed { line });
        };
        let kind = TraceKind::from_name(kind).ok_or_else(|| TraceLoadError::UnknownKind {
            line,
            kind: kind.to_string(),
        })?;
        trace
            .insert(kind, domain, b)
            .map_err(|source| TraceLoadError::Conflict { line, source })?;
    }
    Ok((trace, header))
}
