//! Edge-list reading and writing.
//!
//! Format: `#` starts a comment line; the first other line is `n <n> m <m>`;
//! each of the following `m` lines is `u v` or `u v mult`. Lines for the same
//! pair accumulate multiplicity. Output is ASCII with LF endings, one line per
//! distinct pair in lexicographic order, multiplicity written only when > 1.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_edge_list(BufReader::new(file), &path.display().to_string())
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_edge_list(g, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

pub fn write_edge_list<W: Write>(g: &Graph, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "n {} m {}", g.n(), g.num_pairs())?;
    for &(u, v, m) in g.edges() {
        if m == 1 {
            writeln!(w, "{u} {v}")?;
        } else {
            writeln!(w, "{u} {v} {m}")?;
        }
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn read_edge_list<R: Read>(reader: R, name: &str) -> Result<Graph> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: name.to_string(),
        line,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: name.into(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((n, _)) = header else {
            match fields.as_slice() {
                ["n", n, "m", m] => {
                    let n = n
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad vertex count {n:?}")))?;
                    let m = m
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad edge count {m:?}")))?;
                    header = Some((n, m));
                    continue;
                }
                _ => return Err(parse_err(lineno, "expected header `n <n> m <m>`".into())),
            }
        };
        let nums = fields
            .iter()
            .map(|f| f.parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err(lineno, format!("malformed edge line {line:?}")))?;
        let (u, v, mult) = match nums.as_slice() {
            [u, v] => (*u, *v, 1),
            [u, v, m] => (*u, *v, *m),
            _ => return Err(parse_err(lineno, format!("malformed edge line {line:?}"))),
        };
        let mult = u32::try_from(mult)
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| parse_err(lineno, format!("bad multiplicity {mult}")))?;
        for x in [u, v] {
            if x >= n as u64 {
                return Err(Error::VertexOutOfRange {
                    context: format!("{name}: line {lineno}"),
                    vertex: x as usize,
                    n,
                });
            }
        }
        if u == v {
            return Err(Error::LoopEdge {
                path: name.into(),
                line: lineno,
                vertex: u as usize,
            });
        }
        edges.push((u as usize, v as usize, mult));
    }

    let (n, m) = header.ok_or_else(|| parse_err(0, "missing header".into()))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edge lines, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}
