use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{EdgeDrops, Graph, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    /// `u v` per line, 0-based; `#` starts a comment line.
    EdgeList,
    /// `p edge n m` header then `e u v` lines, 1-based.
    Dimacs,
}

impl std::str::FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" => Ok(InputFormat::EdgeList),
            "dimacs" => Ok(InputFormat::Dimacs),
            other => Err(format!("unknown format '{other}' (expected edge-list or dimacs)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub drops: EdgeDrops,
}

pub fn load_graph<R: BufRead>(source: R, format: InputFormat) -> Result<LoadedGraph, GraphError> {
    match format {
        InputFormat::EdgeList => parse_edge_list(source),
        InputFormat::Dimacs => parse_dimacs(source),
    }
}

pub fn parse_graph(text: &str, format: InputFormat) -> Result<LoadedGraph, GraphError> {
    load_graph(text.as_bytes(), format)
}

fn parse_vertex(token: &str, line: usize) -> Result<Vertex, GraphError> {
    token.parse::<Vertex>().map_err(|_| GraphError::Parse {
        line,
        message: format!("invalid vertex id '{token}'"),
    })
}

fn parse_edge_list<R: BufRead>(source: R) -> Result<LoadedGraph, GraphError> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(GraphError::Parse {
                line: lineno,
                message: "expected exactly two vertex ids".into(),
            });
        };
        let u = parse_vertex(a, lineno)?;
        let v = parse_vertex(b, lineno)?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let (graph, drops) = Graph::from_edges(n, edges)?;
    Ok(LoadedGraph { graph, drops })
}

fn parse_dimacs<R: BufRead>(source: R) -> Result<LoadedGraph, GraphError> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "duplicate problem line".into(),
                    });
                }
                if tokens.len() != 4 || (tokens[1] != "edge" && tokens[1] != "col") {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "expected 'p edge n m'".into(),
                    });
                }
                header = Some(parse_vertex(tokens[2], lineno)?);
                parse_vertex(tokens[3], lineno)?;
            }
            Some(&"e") => {
                let Some(n) = header else {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "edge line before problem line".into(),
                    });
                };
                if tokens.len() != 3 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "expected 'e u v'".into(),
                    });
                }
                let u = parse_vertex(tokens[1], lineno)?;
                let v = parse_vertex(tokens[2], lineno)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: format!("vertex out of range 1..={n}"),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(GraphError::Parse {
                    line: lineno,
                    message: format!("unknown line type '{other}'"),
                })
            }
        }
    }
    let Some(n) = header else {
        return Err(GraphError::NoEdges);
    };
    if edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let (graph, drops) = Graph::from_edges(n, edges)?;
    Ok(LoadedGraph { graph, drops })
}

/// Writes `g` as a 0-based edge list with a comment header.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n={} m={}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
