//! Graded dimension vectors, the Y-monomials `e^W`, `e^V`, l-dominance and
//! the dimension pairing of graded quiver varieties.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::laurent::Monomial;

/// Dimensions indexed by `(vertex, n)`, where `n` is the exponent of `q` in
/// the spectral parameter `q^n`. Zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDim {
    entries: BTreeMap<(usize, i32), u32>,
}

impl GradedDim {
    pub fn new() -> GradedDim {
        GradedDim::default()
    }

    pub fn get(&self, i: usize, n: i32) -> u32 {
        self.entries.get(&(i, n)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, n: i32, d: u32) {
        if d == 0 {
            self.entries.remove(&(i, n));
        } else {
            self.entries.insert((i, n), d);
        }
    }

    pub fn add(&mut self, i: usize, n: i32, d: u32) {
        let v = self.get(i, n) + d;
        self.set(i, n, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i32), u32)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn slot_range(&self) -> (i32, i32) {
        let lo = self.entries.keys().map(|k| k.1).min().unwrap_or(0);
        let hi = self.entries.keys().map(|k| k.1).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn to_json(&self, bg: &BipartiteGraph) -> serde_json::Value {
        let m: BTreeMap<String, u32> = self
            .iter()
            .map(|((i, n), d)| (format!("{}:{}", bg.ids()[i], n), d))
            .collect();
        serde_json::to_value(m).expect("graded dimension serializes")
    }

    pub fn from_json(bg: &BipartiteGraph, v: &serde_json::Value) -> Result<GradedDim> {
        let m: BTreeMap<String, u32> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = GradedDim::new();
        for (k, d) in m {
            let (id, n) = k
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("key `{k}` is not of the form i:n")))?;
            let n: i32 = n.parse().map_err(|_| Error::Parse(format!("bad slot in `{k}`")))?;
            g.add(bg.graph().index(id)?, n, d);
        }
        Ok(g)
    }
}

/// Dimension data of a representation of the decorated quiver: `w[i]` on
/// principal vertex `i` and `wf[i]` on its frozen copy `i'`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecoratedDim {
    pub w: Vec<usize>,
    pub wf: Vec<usize>,
}

impl DecoratedDim {
    pub fn zero(n: usize) -> DecoratedDim {
        DecoratedDim {
            w: vec![0; n],
            wf: vec![0; n],
        }
    }

    pub fn principal(w: Vec<usize>) -> DecoratedDim {
        let n = w.len();
        DecoratedDim { w, wf: vec![0; n] }
    }

    /// The simple module at principal vertex `i`.
    pub fn simple(n: usize, i: usize) -> DecoratedDim {
        let mut d = DecoratedDim::zero(n);
        d.w[i] = 1;
        d
    }

    /// The simple module at frozen vertex `i'`.
    pub fn frozen_simple(n: usize, i: usize) -> DecoratedDim {
        let mut d = DecoratedDim::zero(n);
        d.wf[i] = 1;
        d
    }

    /// `F^i`: one-dimensional at both `i` and `i'`.
    pub fn kr(n: usize, i: usize) -> DecoratedDim {
        let mut d = DecoratedDim::simple(n, i);
        d.wf[i] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().chain(&self.wf).all(|&x| x == 0)
    }

    /// Principal entries followed by frozen entries, matching the vertex
    /// order of the decorated quivers.
    pub fn flat(&self) -> Vec<usize> {
        self.w.iter().chain(&self.wf).copied().collect()
    }

    pub fn from_flat(v: &[usize]) -> DecoratedDim {
        let n = v.len() / 2;
        DecoratedDim {
            w: v[..n].to_vec(),
            wf: v[n..].to_vec(),
        }
    }

    pub fn sum(&self, other: &DecoratedDim) -> DecoratedDim {
        DecoratedDim {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
            wf: self.wf.iter().zip(&other.wf).map(|(a, b)| a + b).collect(),
        }
    }

    /// `W_i` sits at `q^{3ξ_i}` and `W_{i'}` at `q^{2-ξ_i}`.
    pub fn to_graded(&self, bg: &BipartiteGraph) -> GradedDim {
        let mut g = GradedDim::new();
        for i in 0..bg.len() {
            let xi = bg.parity(i) as i32;
            g.add(i, 3 * xi, self.w[i] as u32);
            g.add(i, 2 - xi, self.wf[i] as u32);
        }
        g
    }

    /// Inverse of [`DecoratedDim::to_graded`]; rejects entries outside the
    /// two slots allowed at each vertex.
    pub fn from_graded(bg: &BipartiteGraph, g: &GradedDim) -> Result<DecoratedDim> {
        let mut d = DecoratedDim::zero(bg.len());
        for ((i, n), v) in g.iter() {
            if i >= bg.len() {
                return Err(Error::GradingCondition(format!("vertex index {i} out of range")));
            }
            let xi = bg.parity(i) as i32;
            if n == 3 * xi {
                d.w[i] = v as usize;
            } else if n == 2 - xi {
                d.wf[i] = v as usize;
            } else {
                return Err(Error::GradingCondition(format!(
                    "W at vertex `{}` has support at q^{n}",
                    bg.ids()[i]
                )));
            }
        }
        Ok(d)
    }

    /// Parses `w_1:w_1',w_2:w_2',...` in vertex order; missing vertices are zero.
    pub fn parse_pairs(bg: &BipartiteGraph, s: &str) -> Result<DecoratedDim> {
        let mut d = DecoratedDim::zero(bg.len());
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() > bg.len() {
            return Err(Error::Parse(format!("{} pairs given for {} vertices", parts.len(), bg.len())));
        }
        for (i, p) in parts.iter().enumerate() {
            let (a, b) = p.split_once(':').unwrap_or((p, "0"));
            d.w[i] = a.parse().map_err(|_| Error::Parse(format!("bad dimension `{a}`")))?;
            d.wf[i] = b.parse().map_err(|_| Error::Parse(format!("bad dimension `{b}`")))?;
        }
        Ok(d)
    }
}

/// V is concentrated at `(i, q^{ξ_i + 1})`.
pub fn v_from_principal(bg: &BipartiteGraph, v: &[usize]) -> GradedDim {
    let mut g = GradedDim::new();
    for (i, &d) in v.iter().enumerate() {
        g.add(i, bg.parity(i) as i32 + 1, d as u32);
    }
    g
}

/// Name of the variable `Y_{i,q^n}`.
pub fn y_var(bg: &BipartiteGraph, i: usize, n: i32) -> String {
    format!("Y[{},{}]", bg.ids()[i], n)
}

/// `e^W = prod Y_{i,n}^{dim W_i(n)}`.
pub fn e_w(bg: &BipartiteGraph, w: &GradedDim) -> Monomial {
    Monomial::from_exponents(w.iter().map(|((i, n), d)| (y_var(bg, i, n), d as i64)))
}

/// `V_{i,n} = Y_{i,n-1}^{-1} Y_{i,n+1}^{-1} prod_j Y_{j,n}^{a_ij}`.
pub fn v_monomial(bg: &BipartiteGraph, i: usize, n: i32) -> Monomial {
    let mut e = vec![(y_var(bg, i, n - 1), -1i64), (y_var(bg, i, n + 1), -1)];
    for j in bg.graph().neighbors(i) {
        e.push((y_var(bg, j, n), bg.a(i, j) as i64));
    }
    Monomial::from_exponents(e)
}

pub fn e_v(bg: &BipartiteGraph, v: &GradedDim) -> Monomial {
    v.iter()
        .fold(Monomial::one(), |acc, ((i, n), d)| acc.mul(&v_monomial(bg, i, n).pow(d as i64)))
}

/// Checks `dim W_i(n) - dim V_i(n+1) - dim V_i(n-1) + sum_j a_ij dim V_j(n) >= 0`
/// at every `(i, n)`.
pub fn is_l_dominant(bg: &BipartiteGraph, v: &GradedDim, w: &GradedDim) -> bool {
    let (lo_v, hi_v) = v.slot_range();
    let (lo_w, hi_w) = w.slot_range();
    let (lo, hi) = (lo_v.min(lo_w) - 2, hi_v.max(hi_w) + 2);
    for i in 0..bg.len() {
        for n in lo..=hi {
            let mut x = w.get(i, n) as i64 - v.get(i, n + 1) as i64 - v.get(i, n - 1) as i64;
            for j in bg.graph().neighbors(i) {
                x += bg.a(i, j) as i64 * v.get(j, n) as i64;
            }
            if x < 0 {
                return false;
            }
        }
    }
    true
}

/// `<dim V, (q + q^{-1}) dim W - q^{-1} C_q dim V>`, the dimension of the
/// graded quiver variety attached to `(V, W)`.
pub fn dim_m_bullet(bg: &BipartiteGraph, v: &GradedDim, w: &GradedDim) -> i64 {
    let mut total = 0i64;
    for ((i, n), d) in v.iter() {
        let mut x = w.get(i, n + 1) as i64 + w.get(i, n - 1) as i64 - v.get(i, n) as i64 - v.get(i, n - 2) as i64;
        for j in bg.graph().neighbors(i) {
            x += bg.a(i, j) as i64 * v.get(j, n - 1) as i64;
        }
        total += d as i64 * x;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::library_bipartite;

    #[test]
    fn kr_monomial() {
        let bg = library_bipartite("a3", None).unwrap();
        for i in 0..3 {
            let w = DecoratedDim::kr(3, i).to_graded(&bg);
            let xi = bg.parity(i) as i32;
            let expect = Monomial::from_exponents([(y_var(&bg, i, xi), 1), (y_var(&bg, i, xi + 2), 1)]);
            assert_eq!(e_w(&bg, &w), expect);
        }
    }

    #[test]
    fn graded_round_trip_and_rejection() {
        let bg = library_bipartite("a3", None).unwrap();
        let d = DecoratedDim {
            w: vec![1, 2, 0],
            wf: vec![0, 1, 2],
        };
        assert_eq!(DecoratedDim::from_graded(&bg, &d.to_graded(&bg)).unwrap(), d);
        let mut bad = GradedDim::new();
        bad.set(0, 1, 1);
        assert!(DecoratedDim::from_graded(&bg, &bad).is_err());
        let j = d.to_graded(&bg).to_json(&bg);
        assert_eq!(GradedDim::from_json(&bg, &j).unwrap(), d.to_graded(&bg));
    }

    #[test]
    fn l_dominance_examples() {
        let bg = library_bipartite("a3", None).unwrap();
        let w = DecoratedDim::kr(3, 0).to_graded(&bg);
        assert!(is_l_dominant(&bg, &GradedDim::new(), &w));
        let v = v_from_principal(&bg, &[1, 0, 0]);
        assert!(is_l_dominant(&bg, &v, &w));
        assert!(!is_l_dominant(&bg, &v, &GradedDim::new()));
    }

    #[test]
    fn m_bullet_pairing() {
        let bg = library_bipartite("a3", None).unwrap();
        let w = DecoratedDim::kr(3, 0).to_graded(&bg);
        assert_eq!(dim_m_bullet(&bg, &GradedDim::new(), &w), 0);
        assert_eq!(dim_m_bullet(&bg, &v_from_principal(&bg, &[1, 0, 0]), &w), 1);
        let v = v_from_principal(&bg, &[1, 1, 0]);
        let w1 = DecoratedDim::kr(3, 0).to_graded(&bg);
        let w2 = DecoratedDim::frozen_simple(3, 1).to_graded(&bg);
        let mut w12 = w1.clone();
        for ((i, n), d) in w2.iter() {
            w12.add(i, n, d);
        }
        let base = dim_m_bullet(&bg, &v, &GradedDim::new());
        assert_eq!(
            dim_m_bullet(&bg, &v, &w12) - base,
            (dim_m_bullet(&bg, &v, &w1) - base) + (dim_m_bullet(&bg, &v, &w2) - base)
        );
    }
}
