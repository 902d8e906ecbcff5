//! JSON forms for matroid input and output.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalog::parse_revlex;
use crate::error::{Error, Result};
use crate::matroid::{matroid_from_graph, matroid_from_matrix, uniform, Matroid, Subset};

/// `{"n": 3, "bases": [[0,1],[0,2],[1,2]]}` with ascending element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl From<&Matroid> for MatroidJson {
    fn from(m: &Matroid) -> Self {
        MatroidJson {
            n: m.n(),
            bases: m.bases().iter().map(|b| b.to_vec()).collect(),
        }
    }
}

impl MatroidJson {
    pub fn to_matroid(&self) -> Result<Matroid> {
        let mut bases = Vec::with_capacity(self.bases.len());
        for b in &self.bases {
            if let Some(&e) = b.iter().find(|&&e| e >= self.n.min(32)) {
                return Err(Error::ElementOutOfRange {
                    n: self.n,
                    subset: Subset::singleton(e.min(31)),
                });
            }
            bases.push(Subset::from_elements(b.iter().copied()));
        }
        Matroid::from_bases(self.n, bases)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn to_matroid(&self) -> Result<Matroid> {
        matroid_from_graph(self.vertices, &self.edges)
    }
}

/// Matrix entries as `"p/q"` strings or JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl MatrixJson {
    pub fn to_matroid(&self) -> Result<Matroid> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(parse_entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        matroid_from_matrix(&rows)
    }
}

fn parse_entry(entry: &Entry) -> Result<BigRational> {
    match entry {
        Entry::Int(v) => Ok(BigRational::from_integer((*v).into())),
        Entry::Text(s) => BigRational::from_str(s.trim())
            .map_err(|_| Error::Parse(format!("bad matrix entry {s:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevlexJson {
    pub n: usize,
    pub r: usize,
    pub code: String,
}

/// Any accepted matroid form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatroidInput {
    Bases(MatroidJson),
    Uniform { uniform: (usize, usize) },
    Graph { graph: GraphJson },
    Matrix { matrix: MatrixJson },
    Revlex { revlex: RevlexJson },
}

impl MatroidInput {
    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            MatroidInput::Bases(m) => m.to_matroid(),
            MatroidInput::Uniform { uniform: (r, n) } => uniform(*r, *n),
            MatroidInput::Graph { graph } => graph.to_matroid(),
            MatroidInput::Matrix { matrix } => matrix.to_matroid(),
            MatroidInput::Revlex { revlex } => parse_revlex(revlex.n, revlex.r, &revlex.code),
        }
    }
}

/// Parses one JSON value in any accepted form.
pub fn parse_matroid_json(text: &str) -> Result<Matroid> {
    let input: MatroidInput = serde_json::from_str(text)?;
    input.to_matroid()
}

/// One `n r code` matroid per non-blank line; `#` starts a comment line.
pub fn parse_revlex_lines(text: &str) -> Vec<Result<Matroid>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [n, r, code] = parts[..] else {
                return Err(Error::Parse(format!("expected `n r code`, got {line:?}")));
            };
            let n = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad n in {line:?}")))?;
            let r = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad r in {line:?}")))?;
            parse_revlex(n, r, code)
        })
        .collect()
}

/// A JSON array of matroid forms, or one form per line.
pub fn parse_matroid_documents(text: &str) -> Vec<Result<Matroid>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return match serde_json::from_str::<Vec<MatroidInput>>(trimmed) {
            Ok(items) => items.iter().map(MatroidInput::to_matroid).collect(),
            Err(e) => vec![Err(e.into())],
        };
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_matroid_json)
        .collect()
}
