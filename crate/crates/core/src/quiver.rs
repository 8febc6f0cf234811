//! Ice quivers, exchange matrices, mutation and the decorated constructions.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{frozen_id, BipartiteGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub frozen: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<u8>,
}

/// A finite quiver whose vertices are principal or frozen. Arrows are stored
/// with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: BTreeMap<(usize, usize), u32>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<Vertex>,
    arrows: Vec<(String, String)>,
}

impl Quiver {
    /// Builds and validates a quiver; every listed arrow adds one to the multiplicity.
    pub fn new(vertices: Vec<Vertex>, arrows: &[(&str, &str)]) -> Result<Quiver> {
        let mut q = Quiver {
            vertices,
            arrows: BTreeMap::new(),
        };
        for (s, t) in arrows {
            let (s, t) = (q.index(s)?, q.index(t)?);
            *q.arrows.entry((s, t)).or_insert(0) += 1;
        }
        q.validate()?;
        Ok(q)
    }

    fn from_parts(vertices: Vec<Vertex>, arrows: BTreeMap<(usize, usize), u32>) -> Result<Quiver> {
        let q = Quiver { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id.is_empty() || v.id.contains(char::is_whitespace) {
                return Err(Error::InvalidQuiver(format!("bad vertex id `{}`", v.id)));
            }
            if self.vertices[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{}`", v.id)));
            }
            if matches!(v.parity, Some(p) if p > 1) {
                return Err(Error::InvalidQuiver(format!("parity of `{}` must be 0 or 1", v.id)));
            }
        }
        for (&(s, t), &m) in &self.arrows {
            let (vs, vt) = (&self.vertices[s], &self.vertices[t]);
            if m == 0 {
                continue;
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at `{}`", vs.id)));
            }
            if self.arrows.get(&(t, s)).copied().unwrap_or(0) > 0 {
                return Err(Error::InvalidQuiver(format!("2-cycle between `{}` and `{}`", vs.id, vt.id)));
            }
            if vs.frozen && vt.frozen {
                return Err(Error::InvalidQuiver(format!(
                    "arrow between frozen vertices `{}` and `{}`",
                    vs.id, vt.id
                )));
            }
            if !vs.frozen && !vt.frozen {
                if let (Some(a), Some(b)) = (vs.parity, vt.parity) {
                    if a == b {
                        return Err(Error::InvalidQuiver(format!(
                            "principal arrow `{}`->`{}` joins vertices of equal parity",
                            vs.id, vt.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Number of arrows from `s` to `t`.
    pub fn arrows_between(&self, s: usize, t: usize) -> u32 {
        self.arrows.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Arrows as `(source, target, multiplicity)` in index order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.arrows.iter().filter(|(_, &m)| m > 0).map(|(&(s, t), &m)| (s, t, m))
    }

    /// Arrows as id pairs with multiplicity, sorted by ids.
    pub fn arrow_ids(&self) -> Vec<(String, String, u32)> {
        let mut out: Vec<_> = self
            .arrows()
            .map(|(s, t, m)| (self.vertices[s].id.clone(), self.vertices[t].id.clone(), m))
            .collect();
        out.sort();
        out
    }

    pub fn principal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.vertices[i].frozen).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut arrows = Vec::new();
        for (s, t, m) in self.arrows() {
            for _ in 0..m {
                arrows.push((self.vertices[s].id.clone(), self.vertices[t].id.clone()));
            }
        }
        serde_json::to_value(QuiverJson {
            vertices: self.vertices.clone(),
            arrows,
        })
        .expect("quiver serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Quiver> {
        let j: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let arrows: Vec<(&str, &str)> = j.arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Quiver::new(j.vertices, &arrows)
    }

    /// Exchange matrix with `b_ij = #(j -> i) - #(i -> j)`.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        let cols = self.principal();
        let b = (0..self.len())
            .map(|i| {
                cols.iter()
                    .map(|&j| self.arrows_between(j, i) as i64 - self.arrows_between(i, j) as i64)
                    .collect()
            })
            .collect();
        ExchangeMatrix {
            ids: self.vertices.iter().map(|v| v.id.clone()).collect(),
            frozen: self.vertices.iter().map(|v| v.frozen).collect(),
            parity: self.vertices.iter().map(|v| v.parity).collect(),
            cols,
            b,
        }
    }

    pub fn from_matrix(m: &ExchangeMatrix) -> Result<Quiver> {
        m.validate()?;
        let vertices: Vec<Vertex> = (0..m.ids.len())
            .map(|i| Vertex {
                id: m.ids[i].clone(),
                frozen: m.frozen[i],
                parity: m.parity[i],
            })
            .collect();
        let mut arrows = BTreeMap::new();
        for (c, &j) in m.cols.iter().enumerate() {
            for i in 0..m.ids.len() {
                let v = m.b[i][c];
                if v > 0 {
                    arrows.insert((j, i), v as u32);
                } else if v < 0 && m.frozen[i] {
                    arrows.insert((i, j), (-v) as u32);
                }
            }
        }
        Quiver::from_parts(vertices, arrows)
    }

    pub fn mutate(&self, k: &str) -> Result<Quiver> {
        Quiver::from_matrix(&self.to_matrix().mutate(k)?)
    }

    /// True when every vertex has no outgoing arrows.
    pub fn is_sink(&self, i: usize) -> bool {
        (0..self.len()).all(|j| self.arrows_between(i, j) == 0)
    }

    pub fn is_source(&self, i: usize) -> bool {
        (0..self.len()).all(|j| self.arrows_between(j, i) == 0)
    }

    /// The full subquiver on the principal vertices.
    pub fn principal_part(&self) -> Quiver {
        let keep = self.principal();
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut arrows = BTreeMap::new();
        for (s, t, m) in self.arrows() {
            if let (Some(a), Some(b)) = (keep.iter().position(|&x| x == s), keep.iter().position(|&x| x == t)) {
                arrows.insert((a, b), m);
            }
        }
        Quiver { vertices, arrows }
    }
}

/// Extended exchange matrix: rows are all vertices, columns the principal ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeMatrix {
    ids: Vec<String>,
    frozen: Vec<bool>,
    parity: Vec<Option<u8>>,
    cols: Vec<usize>,
    b: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: Vec<String>,
    cols: Vec<String>,
    b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parity: Option<BTreeMap<String, u8>>,
}

impl ExchangeMatrix {
    /// Builds a matrix whose principal rows are the rows named in `cols`.
    pub fn new(ids: Vec<String>, frozen: Vec<bool>, b: Vec<Vec<i64>>) -> Result<ExchangeMatrix> {
        let cols = (0..ids.len()).filter(|&i| !frozen[i]).collect();
        let parity = vec![None; ids.len()];
        let m = ExchangeMatrix {
            ids,
            frozen,
            parity,
            cols,
            b,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ids.len();
        if self.frozen.len() != n || self.parity.len() != n || self.b.len() != n {
            return Err(Error::InvalidMatrix("row count mismatch".into()));
        }
        if self.b.iter().any(|r| r.len() != self.cols.len()) {
            return Err(Error::InvalidMatrix("column count mismatch".into()));
        }
        for (a, &i) in self.cols.iter().enumerate() {
            for (c, &j) in self.cols.iter().enumerate() {
                if self.b[i][c] != -self.b[j][a] {
                    return Err(Error::InvalidMatrix(format!(
                        "principal block is not skew-symmetric at ({}, {}): {} vs {}",
                        self.ids[i], self.ids[j], self.b[i][c], self.b[j][a]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn parity(&self, i: usize) -> Option<u8> {
        self.parity[i]
    }

    /// Row indices of the principal vertices, in column order.
    pub fn principal(&self) -> &[usize] {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.ids.len()
    }

    pub fn row(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Column position of principal row `i`.
    pub fn col_of(&self, i: usize) -> Option<usize> {
        self.cols.iter().position(|&c| c == i)
    }

    /// Entry `b_ij` for row `i` and principal row `j`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        let c = self.col_of(j).expect("column index must be principal");
        self.b[i][c]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Mutation in direction `k`.
    ///
    /// Parity labels survive only if the principal arrows stay bipartite.
    pub fn mutate(&self, k: &str) -> Result<ExchangeMatrix> {
        let k = self.row(k)?;
        if self.frozen[k] {
            return Err(Error::FrozenVertex(self.ids[k].clone()));
        }
        let kc = self.col_of(k).unwrap();
        let mut b = self.b.clone();
        for (i, row) in b.iter_mut().enumerate() {
            for (c, &j) in self.cols.iter().enumerate() {
                let old = self.b[i][c];
                row[c] = if i == k || j == k {
                    -old
                } else {
                    let bik = self.b[i][kc];
                    let bkj = self.b[k][c];
                    old + bik.signum() * (bik * bkj).max(0)
                };
            }
        }
        let mut out = ExchangeMatrix {
            ids: self.ids.clone(),
            frozen: self.frozen.clone(),
            parity: self.parity.clone(),
            cols: self.cols.clone(),
            b,
        };
        if !out.parity_is_bipartite() {
            out.parity = vec![None; out.ids.len()];
        }
        Ok(out)
    }

    fn parity_is_bipartite(&self) -> bool {
        for (a, &i) in self.cols.iter().enumerate() {
            for &j in &self.cols[a + 1..] {
                if self.b(i, j) != 0 {
                    if let (Some(x), Some(y)) = (self.parity[i], self.parity[j]) {
                        if x == y {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The principal `n x n` block as a coefficient-free matrix.
    pub fn principal_block(&self) -> ExchangeMatrix {
        let ids = self.cols.iter().map(|&i| self.ids[i].clone()).collect();
        let parity = self.cols.iter().map(|&i| self.parity[i]).collect();
        let b = self.cols.iter().map(|&i| self.b[i].clone()).collect();
        ExchangeMatrix {
            ids,
            frozen: vec![false; self.cols.len()],
            parity,
            cols: (0..self.cols.len()).collect(),
            b,
        }
    }

    /// Principal block extended by an identity frozen block, with frozen
    /// vertex `j'` attached to principal `j`.
    pub fn with_principal_coefficients(&self) -> ExchangeMatrix {
        let base = self.principal_block();
        let n = base.ids.len();
        let mut ids = base.ids.clone();
        ids.extend(base.ids.iter().map(|s| frozen_id(s)));
        let mut frozen = vec![false; n];
        frozen.extend(vec![true; n]);
        let mut parity = base.parity.clone();
        parity.extend(vec![None; n]);
        let mut b = base.b.clone();
        for j in 0..n {
            let mut row = vec![0; n];
            row[j] = 1;
            b.push(row);
        }
        ExchangeMatrix {
            ids,
            frozen,
            parity,
            cols: (0..n).collect(),
            b,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let parity: BTreeMap<String, u8> = self
            .ids
            .iter()
            .zip(&self.parity)
            .filter_map(|(id, p)| p.map(|p| (id.clone(), p)))
            .collect();
        serde_json::to_value(MatrixJson {
            rows: self.ids.clone(),
            cols: self.cols.iter().map(|&i| self.ids[i].clone()).collect(),
            b: self.b.clone(),
            parity: (!parity.is_empty()).then_some(parity),
        })
        .expect("matrix serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ExchangeMatrix> {
        let j: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let cols: Vec<usize> = j
            .cols
            .iter()
            .map(|c| {
                j.rows
                    .iter()
                    .position(|r| r == c)
                    .ok_or_else(|| Error::UnknownVertex(c.clone()))
            })
            .collect::<Result<_>>()?;
        let frozen = (0..j.rows.len()).map(|i| !cols.contains(&i)).collect();
        let parity = j
            .rows
            .iter()
            .map(|r| j.parity.as_ref().and_then(|m| m.get(r).copied()))
            .collect();
        let m = ExchangeMatrix {
            ids: j.rows,
            frozen,
            parity,
            cols,
            b: j.b,
        };
        m.validate()?;
        Ok(m)
    }
}

fn graph_vertices(bg: &BipartiteGraph) -> Vec<Vertex> {
    let n = bg.len();
    let mut v: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            id: bg.ids()[i].clone(),
            frozen: false,
            parity: Some(bg.parity(i)),
        })
        .collect();
    v.extend((0..n).map(|i| Vertex {
        id: frozen_id(&bg.ids()[i]),
        frozen: true,
        parity: None,
    }));
    v
}

/// Shared shape of the decorated quivers: principal arrows go from parity
/// `from` to the other part, and frozen `i'` points at `i` exactly when
/// `ξ_i` equals `frozen_in`.
fn decorate(bg: &BipartiteGraph, from: u8, frozen_in: Option<u8>) -> Quiver {
    let n = bg.len();
    let mut arrows = BTreeMap::new();
    for (i, j, m) in bg.graph().edges() {
        let (s, t) = if bg.parity(i) == from { (i, j) } else { (j, i) };
        arrows.insert((s, t), m);
    }
    for i in 0..n {
        if Some(bg.parity(i)) == frozen_in {
            arrows.insert((n + i, i), 1);
        } else {
            arrows.insert((i, n + i), 1);
        }
    }
    Quiver {
        vertices: graph_vertices(bg),
        arrows,
    }
}

/// Principal vertices of `I0` are sinks and those of `I1` sources; frozen
/// arrows are `i' -> i` on `I0` and `i -> i'` on `I1`.
pub fn build_decorated(bg: &BipartiteGraph) -> Quiver {
    decorate(bg, 1, Some(0))
}

/// Initial quiver of the cluster algebra: principal arrows `I0 -> I1`,
/// frozen arrows `i' -> i` on `I0` and `i -> i'` on `I1`.
pub fn build_x_quiver(bg: &BipartiteGraph) -> Quiver {
    decorate(bg, 0, Some(0))
}

/// The x-quiver mutated once at every vertex of `I1`.
pub fn build_z_quiver(bg: &BipartiteGraph) -> Quiver {
    let mut m = build_x_quiver(bg).to_matrix();
    for i in bg.i1() {
        m = m.mutate(&bg.ids()[i]).expect("principal vertex");
    }
    Quiver::from_matrix(&m).expect("mutation preserves validity")
}

/// Quiver carrying the reflected representations: `i -> i'` for every `i`
/// and principal arrows `I1 -> I0`.
pub fn build_sigma_quiver(bg: &BipartiteGraph) -> Quiver {
    decorate(bg, 1, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::library_bipartite;

    fn ids(q: &Quiver) -> Vec<(String, String, u32)> {
        q.arrow_ids()
    }

    fn arr(list: &[(&str, &str)]) -> Vec<(String, String, u32)> {
        let mut v: Vec<_> = list.iter().map(|(a, b)| (a.to_string(), b.to_string(), 1)).collect();
        v.sort();
        v
    }

    #[test]
    fn decorated_a3() {
        let bg = library_bipartite("a3", None).unwrap();
        let q = build_decorated(&bg);
        assert_eq!(
            ids(&q),
            arr(&[("2", "1"), ("2", "3"), ("1'", "1"), ("2", "2'"), ("3'", "3")])
        );
    }

    #[test]
    fn x_quiver_a3() {
        let bg = library_bipartite("a3", None).unwrap();
        let q = build_x_quiver(&bg);
        assert_eq!(
            ids(&q),
            arr(&[("1", "2"), ("3", "2"), ("1'", "1"), ("2", "2'"), ("3'", "3")])
        );
    }

    #[test]
    fn z_quiver_a3() {
        let bg = library_bipartite("a3", None).unwrap();
        let q = build_z_quiver(&bg);
        assert_eq!(
            ids(&q),
            arr(&[
                ("2", "1"),
                ("2", "3"),
                ("1", "2'"),
                ("3", "2'"),
                ("1'", "1"),
                ("2'", "2"),
                ("3'", "3")
            ])
        );
    }

    #[test]
    fn matrix_round_trip() {
        let bg = library_bipartite("a3", None).unwrap();
        let q = build_x_quiver(&bg);
        assert_eq!(Quiver::from_matrix(&q.to_matrix()).unwrap(), q);
        let j = q.to_matrix().to_json();
        assert_eq!(ExchangeMatrix::from_json(&j).unwrap(), q.to_matrix());
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn frozen_mutation_is_rejected() {
        let bg = library_bipartite("a2", None).unwrap();
        let m = build_x_quiver(&bg).to_matrix();
        assert_eq!(m.mutate("1'"), Err(Error::FrozenVertex("1'".into())));
    }

    #[test]
    fn invalid_quivers() {
        let v = |id: &str, frozen| Vertex {
            id: id.into(),
            frozen,
            parity: None,
        };
        assert!(Quiver::new(vec![v("a", false), v("b", false)], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Quiver::new(vec![v("a", false)], &[("a", "a")]).is_err());
        assert!(Quiver::new(vec![v("a", true), v("b", true)], &[("a", "b")]).is_err());
    }

    #[test]
    fn non_skew_matrix_is_rejected() {
        let r = ExchangeMatrix::new(
            vec!["1".into(), "2".into()],
            vec![false, false],
            vec![vec![0, 1], vec![1, 0]],
        );
        assert!(matches!(r, Err(Error::InvalidMatrix(_))));
    }
}
