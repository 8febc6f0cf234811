//! Seeds, mutation, exchange-graph enumeration and principal coefficients.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::ExchangeMatrix;

/// Prefixes used to name initial variables after vertex ids. Frozen ids drop
/// their trailing `'`, so vertex `2'` with frozen prefix `f` becomes `f2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNaming {
    pub principal: String,
    pub frozen: String,
}

impl VarNaming {
    pub fn new(principal: &str, frozen: &str) -> VarNaming {
        VarNaming {
            principal: principal.into(),
            frozen: frozen.into(),
        }
    }

    pub fn cluster() -> VarNaming {
        VarNaming::new("x", "f")
    }

    pub fn principal_coefficients() -> VarNaming {
        VarNaming::new("u", "f")
    }

    pub fn name(&self, id: &str, frozen: bool) -> String {
        if frozen {
            format!("{}{}", self.frozen, id.trim_end_matches('\''))
        } else {
            format!("{}{}", self.principal, id)
        }
    }
}

/// An extended exchange matrix with one variable per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    vars: Vec<LaurentPoly>,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    matrix: serde_json::Value,
    variables: BTreeMap<String, String>,
    #[serde(default)]
    path: Vec<String>,
}

impl Seed {
    pub fn initial(matrix: ExchangeMatrix, naming: &VarNaming) -> Seed {
        let vars = (0..matrix.n_rows())
            .map(|i| LaurentPoly::var(&naming.name(&matrix.ids()[i], matrix.is_frozen(i))))
            .collect();
        Seed {
            matrix,
            vars,
            path: Vec::new(),
        }
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    /// Mutation history from the initial seed, as vertex ids.
    pub fn path(&self) -> &[String] {
        &self.path
    }

    pub fn variable(&self, id: &str) -> Result<&LaurentPoly> {
        Ok(&self.vars[self.matrix.row(id)?])
    }

    pub fn variables(&self) -> impl Iterator<Item = (&str, &LaurentPoly)> {
        self.matrix.ids().iter().map(String::as_str).zip(&self.vars)
    }

    /// The cluster: variables at principal vertices, in column order.
    pub fn cluster(&self) -> Vec<&LaurentPoly> {
        self.matrix.principal().iter().map(|&i| &self.vars[i]).collect()
    }

    pub fn frozen_variables(&self) -> Vec<&LaurentPoly> {
        (0..self.vars.len())
            .filter(|&i| self.matrix.is_frozen(i))
            .map(|i| &self.vars[i])
            .collect()
    }

    /// Sorted canonical texts of the cluster; identifies the unlabelled seed.
    pub fn key(&self) -> Vec<String> {
        let mut k: Vec<String> = self.cluster().iter().map(|v| v.to_string()).collect();
        k.sort();
        k
    }

    /// Exchange relation `x_k x_k' = prod_{b_ik>0} x_i^{b_ik} + prod_{b_ik<0} x_i^{-b_ik}`.
    pub fn exchange_binomial(&self, k: &str) -> Result<LaurentPoly> {
        let kr = self.matrix.row(k)?;
        if self.matrix.is_frozen(kr) {
            return Err(Error::FrozenVertex(k.to_string()));
        }
        let mut pos = LaurentPoly::one();
        let mut neg = LaurentPoly::one();
        for i in 0..self.matrix.n_rows() {
            let b = self.matrix.b(i, kr);
            if b > 0 {
                pos = &pos * &self.vars[i].pow(b as u32);
            } else if b < 0 {
                neg = &neg * &self.vars[i].pow((-b) as u32);
            }
        }
        Ok(&pos + &neg)
    }

    pub fn mutate(&self, k: &str) -> Result<Seed> {
        let kr = self.matrix.row(k)?;
        let binomial = self.exchange_binomial(k)?;
        let new = binomial.exact_div(&self.vars[kr])?;
        let mut vars = self.vars.clone();
        vars[kr] = new;
        let mut path = self.path.clone();
        if path.last().map(String::as_str) == Some(k) {
            path.pop();
        } else {
            path.push(k.to_string());
        }
        Ok(Seed {
            matrix: self.matrix.mutate(k)?,
            vars,
            path,
        })
    }

    pub fn mutate_path<S: AsRef<str>>(&self, path: &[S]) -> Result<Seed> {
        let mut s = self.clone();
        for k in path {
            s = s.mutate(k.as_ref())?;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeedJson {
            matrix: self.matrix.to_json(),
            variables: self
                .variables()
                .map(|(id, v)| (id.to_string(), v.to_string()))
                .collect(),
            path: self.path.clone(),
        })
        .expect("seed serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Seed> {
        let j: SeedJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let matrix = ExchangeMatrix::from_json(&j.matrix)?;
        let vars = matrix
            .ids()
            .iter()
            .map(|id| {
                j.variables
                    .get(id)
                    .ok_or_else(|| Error::Parse(format!("missing variable for vertex `{id}`")))
                    .and_then(|s| s.parse())
            })
            .collect::<Result<_>>()?;
        Ok(Seed {
            matrix,
            vars,
            path: j.path,
        })
    }
}

/// Where a cluster variable first appears during enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableRecord {
    pub value: LaurentPoly,
    pub path: Vec<String>,
    pub vertex: String,
}

#[derive(Clone, Debug)]
pub struct ClusterEnumeration {
    pub seeds: Vec<Seed>,
    /// `(from, vertex, to)` for every mutation explored.
    pub edges: Vec<(usize, String, usize)>,
    /// True when no seed was left unexplored.
    pub closed: bool,
}

impl ClusterEnumeration {
    pub fn clusters(&self) -> Vec<Vec<String>> {
        self.seeds.iter().map(Seed::key).collect()
    }

    /// Cluster variables keyed by canonical text, in order of discovery.
    pub fn variables(&self) -> Vec<(String, VariableRecord)> {
        let mut seen: HashMap<String, ()> = HashMap::new();
        let mut out = Vec::new();
        for s in &self.seeds {
            for &i in s.matrix.principal() {
                let text = s.vars[i].to_string();
                if seen.insert(text.clone(), ()).is_none() {
                    out.push((
                        text,
                        VariableRecord {
                            value: s.vars[i].clone(),
                            path: s.path.clone(),
                            vertex: s.matrix.ids()[i].clone(),
                        },
                    ));
                }
            }
        }
        out
    }
}

/// Breadth-first enumeration of the exchange graph, stopping after `max_seeds` seeds.
pub fn enumerate_clusters(initial: &Seed, max_seeds: usize) -> Result<ClusterEnumeration> {
    let mut seeds = vec![initial.clone()];
    let mut index: HashMap<Vec<String>, usize> = HashMap::from([(initial.key(), 0)]);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut closed = true;
    let directions: Vec<String> = initial
        .matrix
        .principal()
        .iter()
        .map(|&i| initial.matrix.ids()[i].clone())
        .collect();
    while !frontier.is_empty() {
        let jobs: Vec<(usize, &String)> = frontier
            .iter()
            .flat_map(|&s| directions.iter().map(move |k| (s, k)))
            .collect();
        let results: Vec<Result<(usize, String, Seed)>> = jobs
            .par_iter()
            .map(|&(s, k)| seeds[s].mutate(k).map(|n| (s, k.clone(), n)))
            .collect();
        let mut next = Vec::new();
        for r in results {
            let (s, k, new) = r?;
            let key = new.key();
            if let Some(&t) = index.get(&key) {
                edges.push((s, k, t));
            } else if seeds.len() < max_seeds {
                let t = seeds.len();
                index.insert(key, t);
                seeds.push(new);
                edges.push((s, k, t));
                next.push(t);
            } else {
                closed = false;
            }
        }
        frontier = next;
    }
    Ok(ClusterEnumeration { seeds, edges, closed })
}

/// The principal-coefficient seed built on the principal block of a matrix:
/// variables `u_j` and coefficients `f_j`, one per principal vertex `j`.
#[derive(Clone, Debug)]
pub struct PrincipalSeed {
    seed: Seed,
    block: ExchangeMatrix,
}

impl PrincipalSeed {
    pub fn new(b: &ExchangeMatrix) -> PrincipalSeed {
        let block = b.principal_block();
        let seed = Seed::initial(b.with_principal_coefficients(), &VarNaming::principal_coefficients());
        PrincipalSeed { seed, block }
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn principal_ids(&self) -> &[String] {
        self.block.ids()
    }

    pub fn principal_var(&self, j: usize) -> String {
        VarNaming::principal_coefficients().name(&self.block.ids()[j], false)
    }

    pub fn coefficient_var(&self, j: usize) -> String {
        VarNaming::principal_coefficients().name(&self.block.ids()[j], true)
    }

    /// F-polynomial: the expansion with every `u_j` set to 1.
    pub fn f_polynomial(&self, x: &LaurentPoly) -> Result<LaurentPoly> {
        let us: Vec<String> = (0..self.block.n_rows()).map(|j| self.principal_var(j)).collect();
        let f = x.specialize_to_one(&us);
        if !f.is_polynomial() {
            return Err(Error::Other(format!("F-polynomial `{f}` has negative exponents")));
        }
        Ok(f)
    }

    /// g-vector under the grading `deg u_i = e_i`, `deg f_j = -sum_i b_ij e_i`.
    pub fn g_vector(&self, x: &LaurentPoly) -> Result<Vec<i64>> {
        let n = self.block.n_rows();
        let mut degree: Option<Vec<i64>> = None;
        for (m, _) in x.terms() {
            let mut d = vec![0i64; n];
            for j in 0..n {
                let eu = m.exponent(&self.principal_var(j));
                d[j] += eu;
                let ef = m.exponent(&self.coefficient_var(j));
                if ef != 0 {
                    for (i, di) in d.iter_mut().enumerate() {
                        *di -= ef * self.block.entries()[i][j];
                    }
                }
            }
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => {
                    return Err(Error::Inhomogeneous(format!("{x}: degrees {prev:?} and {d:?}")))
                }
                _ => {}
            }
        }
        degree.ok_or_else(|| Error::Inhomogeneous("zero polynomial".into()))
    }

    /// Expresses the variable with F-polynomial `f` and g-vector `g` in the
    /// initial seed `target`, whose principal block must match this one:
    /// `x = F(ŷ) / F|_P(y) * x^g`.
    pub fn reconstruct(&self, f: &LaurentPoly, g: &[i64], target: &Seed) -> Result<LaurentPoly> {
        let tm = target.matrix();
        if tm.principal_block().entries() != self.block.entries() || tm.principal_block().ids() != self.block.ids() {
            return Err(Error::InvalidMatrix("principal blocks differ".into()));
        }
        let mono = |i: usize| -> Result<Monomial> {
            target.vars[i]
                .as_monomial()
                .cloned()
                .ok_or_else(|| Error::Other(format!("variable `{}` of the target seed is not a monomial", target.vars[i])))
        };
        let mut y_trop = BTreeMap::new();
        let mut y_hat = BTreeMap::new();
        for (c, &j) in tm.principal().iter().enumerate() {
            let mut y = Monomial::one();
            let mut yh = Monomial::one();
            for i in 0..tm.n_rows() {
                let b = tm.b(i, j);
                if b == 0 {
                    continue;
                }
                let m = mono(i)?.pow(b);
                if tm.is_frozen(i) {
                    y = y.mul(&m);
                }
                yh = yh.mul(&m);
            }
            let var = self.coefficient_var(c);
            y_trop.insert(var.clone(), y.clone());
            y_hat.insert(var, LaurentPoly::monomial(yh.mul(&Monomial::one())));
        }
        let denom = f.tropical_eval(&y_trop)?;
        let mut xg = Monomial::one();
        for (c, &j) in tm.principal().iter().enumerate() {
            xg = xg.mul(&mono(j)?.pow(g[c]));
        }
        Ok(f.substitute(&y_hat)?.mul_monomial(&denom.inv().mul(&xg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::library_bipartite;
    use crate::quiver::{build_x_quiver, build_z_quiver};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn a2_coefficient_free_pentagon() {
        let bg = library_bipartite("a2", None).unwrap();
        let b = build_x_quiver(&bg).to_matrix().principal_block();
        let e = enumerate_clusters(&Seed::initial(b, &VarNaming::cluster()), 100).unwrap();
        assert!(e.closed);
        assert_eq!(e.seeds.len(), 5);
        assert_eq!(e.variables().len(), 5);
    }

    #[test]
    fn mutation_is_an_involution_on_seeds() {
        let bg = library_bipartite("a3", None).unwrap();
        let s = Seed::initial(build_x_quiver(&bg).to_matrix(), &VarNaming::cluster());
        for k in ["1", "2", "3"] {
            let back = s.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back.matrix(), s.matrix());
            assert_eq!(back.key(), s.key());
        }
    }

    #[test]
    fn exchange_relation_a2() {
        let bg = library_bipartite("a2", None).unwrap();
        let s = Seed::initial(build_x_quiver(&bg).to_matrix(), &VarNaming::cluster());
        let m = s.mutate("1").unwrap();
        assert_eq!(m.variable("1").unwrap(), &lp("f1*x1^-1 + x1^-1*x2"));
    }

    #[test]
    fn principal_coefficients_a2_z_quiver() {
        let bg = library_bipartite("a2", None).unwrap();
        let pr = PrincipalSeed::new(&build_z_quiver(&bg).to_matrix());
        let s = pr.seed().mutate("1").unwrap().mutate("2").unwrap();
        let x = s.variable("2").unwrap();
        assert_eq!(pr.f_polynomial(x).unwrap(), lp("f1*f2 + f1 + 1"));
        assert_eq!(pr.g_vector(x).unwrap(), vec![-1, 0]);
    }

    #[test]
    fn reconstruction_matches_replay() {
        let bg = library_bipartite("a3", None).unwrap();
        let z = build_z_quiver(&bg).to_matrix();
        let pr = PrincipalSeed::new(&z);
        let target = Seed::initial(z, &VarNaming::new("z", "f"));
        let e = enumerate_clusters(pr.seed(), 100).unwrap();
        for (_, rec) in e.variables() {
            let f = pr.f_polynomial(&rec.value).unwrap();
            let g = pr.g_vector(&rec.value).unwrap();
            let direct = target.mutate_path(&rec.path).unwrap();
            assert_eq!(
                &pr.reconstruct(&f, &g, &target).unwrap(),
                direct.variable(&rec.vertex).unwrap()
            );
        }
    }

    #[test]
    fn seed_json_round_trip() {
        let bg = library_bipartite("a3", None).unwrap();
        let s = Seed::initial(build_x_quiver(&bg).to_matrix(), &VarNaming::cluster())
            .mutate("2")
            .unwrap();
        assert_eq!(Seed::from_json(&s.to_json()).unwrap(), s);
    }
}
