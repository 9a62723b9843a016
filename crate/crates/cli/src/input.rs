//! Reading digraphs and complexes from text.
//!
//! Accepted documents: the edgelist format, digraph json, complex json, and
//! any report whose `results` is one of those (so commands can be piped).

use std::collections::HashMap;

use dvrtop_core::{Digraph, SimplicialComplex};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Guess from the first non-blank character.
    Auto,
    Json,
    Edgelist,
}

#[derive(Clone, Debug)]
pub enum Input {
    Digraph(Digraph),
    /// An abstract complex with recorded witnesses and optional labels.
    Complex { complex: SimplicialComplex, labels: Option<Vec<String>> },
}

impl Input {
    pub fn digraph(&self) -> Result<&Digraph, CliError> {
        match self {
            Input::Digraph(g) => Ok(g),
            Input::Complex { .. } => Err(CliError::Input {
                line: None,
                message: "this command needs a digraph, not a complex".into(),
            }),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            Input::Digraph(g) => g.labels(),
            Input::Complex { labels, .. } => labels.as_deref(),
        }
    }

    /// Resolves a vertex token: a label if one matches, otherwise an index.
    pub fn resolve_vertex(&self, token: &str) -> Result<usize, CliError> {
        let token = token.trim();
        if let Some(i) = self.labels().and_then(|l| l.iter().position(|x| x == token)) {
            return Ok(i);
        }
        token.parse().map_err(|_| CliError::Argument(format!("unknown vertex {token:?}")))
    }

    /// sha256 over a canonical rendering, so formatting and edge order in
    /// the source text do not matter.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        match self {
            Input::Digraph(g) => {
                h.update(format!("digraph {}\n", g.n()));
                if let Some(labels) = g.labels() {
                    for l in labels {
                        h.update(format!("label {l:?}\n"));
                    }
                }
                for (u, v) in g.edges() {
                    h.update(format!("{u} {v}\n"));
                }
            }
            Input::Complex { complex, labels } => {
                h.update("complex\n");
                for l in labels.iter().flatten() {
                    h.update(format!("label {l:?}\n"));
                }
                for s in complex.iter() {
                    h.update(format!("{:?}\n", s.witness()));
                }
            }
        }
        let bytes = h.finalize();
        let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

pub fn parse_input(text: &str, format: Format) -> Result<Input, CliError> {
    let format = match format {
        Format::Auto if text.trim_start().starts_with('{') => Format::Json,
        Format::Auto => Format::Edgelist,
        f => f,
    };
    match format {
        Format::Edgelist => parse_edgelist(text).map(Input::Digraph),
        _ => {
            let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input {
                line: Some(e.line()),
                message: e.to_string(),
            })?;
            from_json(&value)
        }
    }
}

/// Parses a digraph in either format, rejecting complexes.
pub fn parse_digraph(text: &str, format: Format) -> Result<Digraph, CliError> {
    match parse_input(text, format)? {
        Input::Digraph(g) => Ok(g),
        Input::Complex { .. } => Err(CliError::Input { line: None, message: "expected a digraph, found a complex".into() }),
    }
}

fn json_err(message: impl Into<String>) -> CliError {
    CliError::Input { line: None, message: message.into() }
}

fn from_json(value: &Value) -> Result<Input, CliError> {
    let obj = value.as_object().ok_or_else(|| json_err("top level must be an object"))?;
    if let Some(results) = obj.get("results") {
        if obj.get("error").is_some_and(|e| !e.is_null()) {
            return Err(json_err("input report carries an error"));
        }
        return from_json(results);
    }
    if obj.contains_key("simplices") {
        return complex_from_json(obj);
    }
    digraph_from_json(obj).map(Input::Digraph)
}

fn digraph_from_json(obj: &serde_json::Map<String, Value>) -> Result<Digraph, CliError> {
    let (n, labels) = match obj.get("vertices") {
        Some(Value::Number(k)) => {
            let n = k.as_u64().ok_or_else(|| json_err("\"vertices\" count must be a non-negative integer"))?;
            (n as usize, None)
        }
        Some(Value::Array(items)) => {
            let labels = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(x) => Ok(x.to_string()),
                    other => Err(json_err(format!("vertex label {other} must be a string"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            (labels.len(), Some(labels))
        }
        _ => return Err(json_err("missing \"vertices\" (label list or count)")),
    };
    let index: HashMap<&str, usize> = labels
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let vertex = |v: &Value, at: usize| -> Result<usize, CliError> {
        match v {
            Value::String(s) => index
                .get(s.as_str())
                .copied()
                .ok_or_else(|| json_err(format!("edges[{at}]: unknown vertex label {s:?}"))),
            Value::Number(x) => x
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| json_err(format!("edges[{at}]: bad vertex index {x}"))),
            other => Err(json_err(format!("edges[{at}]: bad vertex {other}"))),
        }
    };
    let mut edges = Vec::new();
    let raw = match obj.get("edges") {
        None => &Vec::new(),
        Some(Value::Array(a)) => a,
        Some(_) => return Err(json_err("\"edges\" must be an array")),
    };
    for (at, e) in raw.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| json_err(format!("edges[{at}] must be a pair")))?;
        let (u, v) = (vertex(&pair[0], at)?, vertex(&pair[1], at)?);
        if u >= n || v >= n {
            return Err(json_err(format!("edges[{at}]: ({u}, {v}) out of range for {n} vertices")));
        }
        edges.push((u, v));
    }
    let g = Digraph::from_edge_list(n, &edges)?;
    Ok(match labels {
        Some(l) => g.with_labels(l)?,
        None => g,
    })
}

fn complex_from_json(obj: &serde_json::Map<String, Value>) -> Result<Input, CliError> {
    let simplices = obj["simplices"].as_array().ok_or_else(|| json_err("\"simplices\" must be an array"))?;
    let mut witnesses = Vec::with_capacity(simplices.len());
    for (at, s) in simplices.iter().enumerate() {
        let list = s
            .get("witness")
            .or_else(|| s.get("verts"))
            .and_then(Value::as_array)
            .ok_or_else(|| json_err(format!("simplices[{at}] needs \"witness\" or \"verts\"")))?;
        let w = list
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| json_err(format!("simplices[{at}]: vertices must be integers")))?;
        witnesses.push(w);
    }
    let labels = match obj.get("labels") {
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|v| v.as_str().map(str::to_owned).ok_or_else(|| json_err("labels must be strings")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    let complex = SimplicialComplex::from_witnessed(witnesses)?;
    Ok(Input::Complex { complex, labels })
}

/// First significant line is the vertex count, then one `u v` pair per
/// line. `#` starts a comment.
pub fn parse_edgelist(text: &str) -> Result<Digraph, CliError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CliError::Input { line: Some(line_no), message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(count) = n else {
            if fields.len() != 1 {
                return Err(err(format!("expected the vertex count, found {line:?}")));
            }
            n = Some(fields[0].parse::<usize>().map_err(|_| err(format!("bad vertex count {:?}", fields[0])))?);
            continue;
        };
        if fields.len() != 2 {
            return Err(err(format!("expected \"u v\", found {line:?}")));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex {s:?}")));
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u >= count || v >= count {
            return Err(err(format!("edge ({u}, {v}) out of range for {count} vertices")));
        }
        edges.push((u, v));
    }
    let n = n.ok_or_else(|| CliError::Input { line: None, message: "empty edgelist".into() })?;
    Ok(Digraph::from_edge_list(n, &edges)?)
}
