//! Network descriptions: a line-oriented text format and its JSON twin.
//!
//! ```text
//! # comment
//! directed                       # optional; links are symmetric otherwise
//! node a b c
//! edge a b delay(1)
//! edge b c uniform(1, 3) reliability 0.9
//! ```
//!
//! Link distributions are `delay(n)`, `preserved(p)`, `pdf[...]`, `cdf[...]`
//! or `uniform(from, to)`. A `reliability p` suffix attenuates the link by
//! `p`. Missing links never deliver; every node reaches itself at once.
//!
//! The JSON form carries the same fields:
//!
//! ```json
//! {"directed": false, "nodes": ["a", "b"],
//!  "edges": [{"from": "a", "to": "b", "dist": {"delay": 1}, "reliability": 0.9}]}
//! ```

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::lex::{tokenize, Cursor, Tok};
use super::CliError;
use crate::latency::LatencyDistribution;
use crate::matrix::{NetworkMatrix, SMatrix};
use crate::numeric::{Delay, Probability};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistSpec {
    Delay(u64),
    Preserved(f64),
    Pdf(Vec<f64>),
    Cdf(Vec<f64>),
    Uniform { from: u64, to: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub dist: DistSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliability: Option<f64>,
    #[serde(skip)]
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    #[serde(default)]
    pub directed: bool,
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

/// A validated network: node names plus the one-hop connectivity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub nodes: Vec<String>,
    pub matrix: NetworkMatrix,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

impl DistSpec {
    pub fn to_distribution(&self) -> Result<LatencyDistribution, String> {
        let text = |e: crate::error::Error| e.to_string();
        match self {
            DistSpec::Delay(n) => Delay::new(*n)
                .map(LatencyDistribution::delay_of)
                .map_err(text),
            DistSpec::Preserved(p) => Probability::new(*p)
                .map(LatencyDistribution::preserved)
                .map_err(text),
            DistSpec::Pdf(v) => {
                LatencyDistribution::from_pdf(&Series::from(v.as_slice())).map_err(text)
            }
            DistSpec::Cdf(v) => {
                LatencyDistribution::from_cdf(&Series::from(v.as_slice())).map_err(text)
            }
            DistSpec::Uniform { from, to } => {
                let lo = Delay::new(*from).map_err(text)?;
                let hi = Delay::new(*to).map_err(text)?;
                if lo > hi {
                    return Err(format!("uniform range {from}..{to} is empty"));
                }
                let width = (hi.index() - lo.index() + 1) as f64;
                let mut pdf = vec![0.0; lo.index()];
                pdf.resize(hi.index() + 1, 1.0 / width);
                LatencyDistribution::from_pdf(&Series::new(pdf)).map_err(text)
            }
        }
    }

    fn parse(cur: &mut Cursor<'_>) -> Result<DistSpec, CliError> {
        let (name, line, column) = cur.word("a link distribution")?;
        match name {
            "delay" => {
                cur.expect(Tok::LParen, "`(`")?;
                let n = cur.integer("a non-negative integer delay")?;
                cur.expect(Tok::RParen, "`)`")?;
                Ok(DistSpec::Delay(n))
            }
            "preserved" => {
                cur.expect(Tok::LParen, "`(`")?;
                let p = cur.number("a probability")?;
                cur.expect(Tok::RParen, "`)`")?;
                Ok(DistSpec::Preserved(p))
            }
            "pdf" => Ok(DistSpec::Pdf(cur.number_list()?)),
            "cdf" => Ok(DistSpec::Cdf(cur.number_list()?)),
            "uniform" => {
                cur.expect(Tok::LParen, "`(`")?;
                let from = cur.integer("a non-negative integer delay")?;
                cur.expect(Tok::Comma, "`,`")?;
                let to = cur.integer("a non-negative integer delay")?;
                cur.expect(Tok::RParen, "`)`")?;
                Ok(DistSpec::Uniform { from, to })
            }
            other => Err(CliError::syntax(
                line,
                column,
                format!("unknown link distribution `{other}`"),
            )),
        }
    }
}

impl NetworkSpec {
    /// Parses the text format, or JSON when the input starts with `{`.
    pub fn parse(text: &str) -> Result<NetworkSpec, CliError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()));
        }
        let mut spec = NetworkSpec {
            directed: false,
            nodes: Vec::new(),
            edges: Vec::new(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let tokens = tokenize(raw, line)?;
            let mut cur = Cursor::new(&tokens, line, raw.chars().count() + 1);
            if cur.at_end() {
                continue;
            }
            let (keyword, _, column) = cur.word("`directed`, `node` or `edge`")?;
            match keyword {
                "directed" => {
                    spec.directed = match cur.peek() {
                        None => true,
                        Some(_) => match cur.word("`true` or `false`")? {
                            ("true", ..) => true,
                            ("false", ..) => false,
                            (_, l, c) => {
                                return Err(CliError::syntax(l, c, "expected `true` or `false`"))
                            }
                        },
                    };
                }
                "node" => {
                    if cur.at_end() {
                        return Err(cur.error("expected a node id"));
                    }
                    while !cur.at_end() {
                        let (id, _, _) = cur.word("a node id")?;
                        spec.nodes.push(id.to_string());
                    }
                }
                "edge" => {
                    let from = cur.word("a node id")?.0.to_string();
                    let to = cur.word("a node id")?.0.to_string();
                    let dist = DistSpec::parse(&mut cur)?;
                    let reliability = if cur.at_end() {
                        None
                    } else {
                        match cur.word("`reliability`")? {
                            ("reliability", ..) => Some(cur.number("a probability")?),
                            (_, l, c) => {
                                return Err(CliError::syntax(l, c, "expected `reliability`"))
                            }
                        }
                    };
                    spec.edges.push(EdgeSpec {
                        from,
                        to,
                        dist,
                        reliability,
                        line: Some(line),
                    });
                }
                other => {
                    return Err(CliError::syntax(
                        line,
                        column,
                        format!("unknown statement `{other}`"),
                    ))
                }
            }
            if !cur.at_end() {
                return Err(cur.error("unexpected trailing input"));
            }
        }
        Ok(spec)
    }

    /// Checks ids and links and builds the connectivity matrix.
    pub fn build(&self) -> Result<Network, CliError> {
        let mut index = HashMap::new();
        for id in &self.nodes {
            if !valid_id(id) {
                return Err(CliError::InvalidNode { id: id.clone() });
            }
            if index.insert(id.as_str(), index.len()).is_some() {
                return Err(CliError::DuplicateNode { id: id.clone() });
            }
        }
        if self.nodes.is_empty() {
            return Err(CliError::EmptyNetwork);
        }

        let mut links = HashMap::new();
        let mut seen = HashSet::new();
        for edge in &self.edges {
            let line = edge.line;
            let lookup = |id: &String| {
                index
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| CliError::UnknownNode {
                        line,
                        id: id.clone(),
                    })
            };
            let (i, j) = (lookup(&edge.from)?, lookup(&edge.to)?);
            if i == j {
                return Err(CliError::SelfLoop {
                    line,
                    id: edge.from.clone(),
                });
            }
            let pairs = if self.directed {
                vec![(i, j)]
            } else {
                vec![(i, j), (j, i)]
            };
            if pairs.iter().any(|p| !seen.insert(*p)) {
                return Err(CliError::DuplicateEdge {
                    line,
                    from: edge.from.clone(),
                    to: edge.to.clone(),
                });
            }
            let mut ld = edge
                .dist
                .to_distribution()
                .map_err(|message| CliError::InvalidLink { line, message })?;
            if let Some(r) = edge.reliability {
                let p = Probability::new(r).map_err(|_| CliError::InvalidProbability {
                    line,
                    column: None,
                    value: r,
                })?;
                ld = LatencyDistribution::scale_probability(p, &ld);
            }
            for p in pairs {
                links.insert(p, ld.clone());
            }
        }

        let matrix = SMatrix::build(self.nodes.len(), |i, j| {
            if i == j {
                LatencyDistribution::no_delay()
            } else {
                links
                    .get(&(i, j))
                    .cloned()
                    .unwrap_or_else(LatencyDistribution::all_lost)
            }
        })
        .map_err(CliError::Algebra)?;
        Ok(Network {
            nodes: self.nodes.clone(),
            matrix,
        })
    }
}

impl Network {
    pub fn parse(text: &str) -> Result<Network, CliError> {
        NetworkSpec::parse(text)?.build()
    }
}
