//! Undirected graphs without loops, bipartitions and the built-in library.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// A finite graph without edge loops. Edge multiplicities are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    adj: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    /// Builds a graph from vertex ids and an edge list; repeated edges add multiplicity.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() || v.ends_with('\'') || v.contains(char::is_whitespace) {
                return Err(Error::InvalidGraph(format!("bad vertex id `{v}`")));
            }
            if vertices[..i].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let n = vertices.len();
        let mut adj = vec![vec![0u32; n]; n];
        let index = |s: &str| {
            vertices
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| Error::InvalidGraph(format!("edge mentions unknown vertex `{s}`")))
        };
        for (a, b) in edges {
            let (i, j) = (index(a.as_ref())?, index(b.as_ref())?);
            if i == j {
                return Err(Error::InvalidGraph(format!("edge loop at `{}`", vertices[i])));
            }
            adj[i][j] += 1;
            adj[j][i] += 1;
        }
        Ok(Graph { vertices, adj })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Number of edges between `i` and `j`.
    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adj[i][j] > 0)
    }

    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i][j] > 0 {
                    out.push((i, j, self.adj[i][j]));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = Vec::new();
        for (i, j, m) in self.edges() {
            for _ in 0..m {
                edges.push((self.vertices[i].clone(), self.vertices[j].clone()));
            }
        }
        serde_json::to_value(GraphJson {
            vertices: self.vertices.clone(),
            edges,
        })
        .expect("graph serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Graph> {
        let g: GraphJson = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        let edges: Vec<(&str, &str)> = g.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let verts: Vec<&str> = g.vertices.iter().map(String::as_str).collect();
        Graph::new(&verts, &edges)
    }

    /// Proper two-colouring with colour 0 on the first vertex of each component.
    pub fn two_coloring(&self) -> Result<Vec<u8>> {
        let n = self.len();
        let mut color: Vec<Option<u8>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let c = color[i].unwrap();
                for j in self.neighbors(i) {
                    match color[j] {
                        None => {
                            color[j] = Some(1 - c);
                            queue.push_back(j);
                        }
                        Some(d) if d == c => {
                            return Err(Error::NotBipartite(format!(
                                "odd cycle through `{}` and `{}`",
                                self.vertices[i], self.vertices[j]
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(Option::unwrap).collect())
    }
}

/// A graph with a bipartition `I = I0 ⊔ I1`. The parity `ξ_i` is 0 on `I0`
/// and 1 on `I1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    parity: Vec<u8>,
}

impl BipartiteGraph {
    /// Uses `i0` as the parity-0 part; with `None` a two-colouring is chosen.
    pub fn new<S: AsRef<str>>(graph: Graph, i0: Option<&[S]>) -> Result<BipartiteGraph> {
        let parity = match i0 {
            None => graph.two_coloring()?,
            Some(ids) => {
                let mut parity = vec![1u8; graph.len()];
                for id in ids {
                    parity[graph.index(id.as_ref())?] = 0;
                }
                for (i, j, _) in graph.edges() {
                    if parity[i] == parity[j] {
                        return Err(Error::NotBipartite(format!(
                            "edge `{}`-`{}` lies inside one part",
                            graph.vertices[i], graph.vertices[j]
                        )));
                    }
                }
                parity
            }
        };
        Ok(BipartiteGraph { graph, parity })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        self.graph.vertices()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.graph.a(i, j)
    }

    pub fn i0(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parity[i] == 0).collect()
    }

    pub fn i1(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parity[i] == 1).collect()
    }

    pub fn i0_ids(&self) -> Vec<String> {
        self.i0().into_iter().map(|i| self.ids()[i].clone()).collect()
    }
}

/// Identifier of the frozen copy of principal vertex `id`.
pub fn frozen_id(id: &str) -> String {
    format!("{id}'")
}

/// Names of the built-in graphs accepted by [`library`].
pub const LIBRARY: &[&str] = &["a2", "a3", "a4", "d4", "d5", "e6", "kronecker"];

/// A built-in graph together with its default `I0`.
pub fn library(name: &str) -> Result<(Graph, Vec<String>)> {
    let path = |n: usize| -> (Vec<String>, Vec<(String, String)>) {
        let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let e = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        (v, e)
    };
    let (verts, edges, i0): (Vec<String>, Vec<(String, String)>, Vec<&str>) = match name.to_ascii_lowercase().as_str() {
        "a2" => {
            let (v, e) = path(2);
            (v, e, vec!["1"])
        }
        "a3" => {
            let (v, e) = path(3);
            (v, e, vec!["1", "3"])
        }
        "a4" => {
            let (v, e) = path(4);
            (v, e, vec!["1", "3"])
        }
        "d4" => {
            let (v, mut e) = path(3);
            let mut v = v;
            v.push("4".into());
            e.push(("2".into(), "4".into()));
            (v, e, vec!["1", "3", "4"])
        }
        "d5" => {
            let (mut v, mut e) = path(4);
            v.push("5".into());
            e.push(("3".into(), "5".into()));
            (v, e, vec!["1", "3"])
        }
        "e6" => {
            let v: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
            let e = [("1", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("2", "4")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            (v, e, vec!["1", "4", "6"])
        }
        "kronecker" => (
            vec!["1".into(), "2".into()],
            vec![("1".into(), "2".into()), ("1".into(), "2".into())],
            vec!["1"],
        ),
        other => return Err(Error::InvalidGraph(format!("unknown graph `{other}`"))),
    };
    let edges: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let verts_ref: Vec<&str> = verts.iter().map(String::as_str).collect();
    let g = Graph::new(&verts_ref, &edges)?;
    Ok((g, i0.into_iter().map(String::from).collect()))
}

/// A built-in bipartite graph, with `parts` overriding the default `I0`.
pub fn library_bipartite(name: &str, parts: Option<&[String]>) -> Result<BipartiteGraph> {
    let (g, i0) = library(name)?;
    BipartiteGraph::new(g, Some(parts.unwrap_or(&i0)))
}

/// Adjacency counts keyed by vertex ids, convenient for display.
pub fn adjacency_map(g: &Graph) -> BTreeMap<(String, String), u32> {
    g.edges()
        .into_iter()
        .map(|(i, j, m)| ((g.vertices[i].clone(), g.vertices[j].clone()), m))
        .collect()
}
