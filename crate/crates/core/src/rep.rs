//! Representations of quivers over F_p: Hom and Ext, decomposition into
//! indecomposables, canonical decompositions and reflection functors.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::{is_prime, Mat};
use crate::quiver::Quiver;
use crate::rng::Rng;

/// A quiver with individually indexed arrows, used to carry representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepQuiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl RepQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> RepQuiver {
        RepQuiver { vertices, arrows }
    }

    /// All vertices of `q`, frozen or not; parallel arrows become separate entries.
    pub fn from_quiver(q: &Quiver) -> RepQuiver {
        let mut arrows = Vec::new();
        for (s, t, m) in q.arrows() {
            arrows.extend(std::iter::repeat_n((s, t), m as usize));
        }
        RepQuiver {
            vertices: q.vertices().iter().map(|v| v.id.clone()).collect(),
            arrows,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
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
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| (a * b) as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| (d[s] * e[t]) as i64).sum();
        diag - off
    }

    pub fn opposite(&self) -> RepQuiver {
        RepQuiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Reverses every arrow incident to `i`, keeping arrow positions.
    pub fn reflect_at(&self, i: usize) -> RepQuiver {
        RepQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
                .collect(),
        }
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    /// Vertices ordered so that every arrow points from a later to an
    /// earlier vertex; `None` for cyclic quivers.
    pub fn sinks_first(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut out_deg = vec![0usize; n];
        for &(s, _) in &self.arrows {
            out_deg[s] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let next = (0..n).find(|&v| !done[v] && out_deg[v] == 0)?;
            done[next] = true;
            order.push(next);
            for &(s, t) in &self.arrows {
                if t == next {
                    out_deg[s] -= 1;
                }
            }
        }
        Some(order)
    }
}

/// A representation over F_p. The matrix for arrow `a: s -> t` has shape
/// `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpRep {
    quiver: Arc<RepQuiver>,
    p: u32,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    p: u32,
    dims: BTreeMap<String, usize>,
    maps: BTreeMap<String, Vec<Vec<u32>>>,
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) || p > 46_337 {
        return Err(Error::BadPrime(p as u64));
    }
    Ok(())
}

impl FpRep {
    pub fn new(quiver: Arc<RepQuiver>, p: u32, dims: Vec<usize>, maps: Vec<Mat>) -> Result<FpRep> {
        check_prime(p)?;
        if dims.len() != quiver.len() || maps.len() != quiver.arrows.len() {
            return Err(Error::Other("representation shape does not match quiver".into()));
        }
        for (a, &(s, t)) in quiver.arrows.iter().enumerate() {
            let m = &maps[a];
            if m.rows() != dims[t] || m.cols() != dims[s] || m.p() != p {
                return Err(Error::Other(format!("matrix for arrow {a} has the wrong shape")));
            }
        }
        Ok(FpRep { quiver, p, dims, maps })
    }

    pub fn random(quiver: Arc<RepQuiver>, p: u32, dims: &[usize], rng: &mut Rng) -> FpRep {
        let maps = quiver
            .arrows
            .iter()
            .map(|&(s, t)| Mat::random(p, dims[t], dims[s], rng))
            .collect();
        FpRep {
            quiver,
            p,
            dims: dims.to_vec(),
            maps,
        }
    }

    pub fn zero(quiver: Arc<RepQuiver>, p: u32) -> FpRep {
        let n = quiver.len();
        let maps = quiver.arrows.iter().map(|_| Mat::zeros(p, 0, 0)).collect();
        FpRep {
            quiver,
            p,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn quiver(&self) -> &Arc<RepQuiver> {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn direct_sum(&self, other: &FpRep) -> FpRep {
        assert_eq!(self.quiver, other.quiver);
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zeros(self.p, dims[t], dims[s]);
                let (x, y) = (&self.maps[a], &other.maps[a]);
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        m.set(i, j, x.get(i, j));
                    }
                }
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        m.set(x.rows() + i, x.cols() + j, y.get(i, j));
                    }
                }
                m
            })
            .collect();
        FpRep {
            quiver: self.quiver.clone(),
            p: self.p,
            dims,
            maps,
        }
    }

    /// Linear dual, a representation of the opposite quiver.
    pub fn dual(&self) -> FpRep {
        FpRep {
            quiver: Arc::new(self.quiver.opposite()),
            p: self.p,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Mat::transpose).collect(),
        }
    }

    /// The subrepresentation spanned by the given per-vertex bases, which
    /// must be stable under every arrow.
    pub fn restrict(&self, bases: &[Mat]) -> Result<FpRep> {
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, &(s, t)) in self.quiver.arrows.iter().enumerate() {
            let image = self.maps[a].mul(&bases[s]);
            let m = bases[t]
                .solve(&image)
                .ok_or_else(|| Error::Other("subspaces are not stable under the arrows".into()))?;
            maps.push(m);
        }
        Ok(FpRep {
            quiver: self.quiver.clone(),
            p: self.p,
            dims,
            maps,
        })
    }

    /// Reflection at a sink (kernel construction) or a source (cokernel
    /// construction). The result lives on the quiver reflected at `i`.
    pub fn reflect(&self, i: usize) -> Result<FpRep> {
        let q = &self.quiver;
        let incident: Vec<usize> = (0..q.arrows.len())
            .filter(|&a| q.arrows[a].0 == i || q.arrows[a].1 == i)
            .collect();
        let p = self.p;
        let new_quiver = Arc::new(q.reflect_at(i));
        let mut maps = self.maps.clone();
        let mut dims = self.dims.clone();
        if q.is_sink(i) {
            // ker( sum_a M_a : ⊕ M_{s(a)} -> M_i ) with projections to each summand
            let mut big = Mat::zeros(p, self.dims[i], 0);
            for &a in &incident {
                big = big.hstack(&self.maps[a]);
            }
            let k = big.kernel();
            dims[i] = k.cols();
            let mut offset = 0;
            for &a in &incident {
                let s = q.arrows[a].0;
                maps[a] = k.row_block(offset, self.dims[s]);
                offset += self.dims[s];
            }
        } else if q.is_source(i) {
            let mut big = Mat::zeros(p, 0, self.dims[i]);
            for &a in &incident {
                big = big.vstack(&self.maps[a]);
            }
            let pi = big.annihilator();
            dims[i] = pi.rows();
            let mut offset = 0;
            for &a in &incident {
                let t = q.arrows[a].1;
                maps[a] = pi.col_block(offset, self.dims[t]);
                offset += self.dims[t];
            }
        } else {
            return Err(Error::NotSinkOrSource {
                vertex: q.vertices[i].clone(),
            });
        }
        Ok(FpRep {
            quiver: new_quiver,
            p,
            dims,
            maps,
        })
    }

    /// Reorders arrows to match `target`, which must have the same arrows
    /// as a multiset.
    pub fn relabel(&self, target: Arc<RepQuiver>) -> Result<FpRep> {
        let mut used = vec![false; self.quiver.arrows.len()];
        let mut maps = Vec::with_capacity(target.arrows.len());
        for &arrow in &target.arrows {
            let a = (0..used.len())
                .find(|&a| !used[a] && self.quiver.arrows[a] == arrow)
                .ok_or_else(|| Error::Other("quivers have different arrows".into()))?;
            used[a] = true;
            maps.push(self.maps[a].clone());
        }
        if target.vertices != self.quiver.vertices || used.iter().any(|u| !u) {
            return Err(Error::Other("quivers have different arrows".into()));
        }
        Ok(FpRep {
            quiver: target,
            p: self.p,
            dims: self.dims.clone(),
            maps,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RepJson {
            p: self.p,
            dims: self.quiver.vertices.iter().cloned().zip(self.dims.iter().copied()).collect(),
            maps: self.maps.iter().enumerate().map(|(a, m)| (a.to_string(), m.to_rows())).collect(),
        })
        .expect("representation serializes")
    }

    pub fn from_json(quiver: Arc<RepQuiver>, v: &serde_json::Value) -> Result<FpRep> {
        let j: RepJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        check_prime(j.p)?;
        let dims: Vec<usize> = quiver
            .vertices
            .iter()
            .map(|id| j.dims.get(id).copied().unwrap_or(0))
            .collect();
        let maps = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let rows = j.maps.get(&a.to_string()).cloned().unwrap_or_default();
                let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
                if rows.len() != dims[t] || rows.iter().any(|r| r.len() != dims[s]) {
                    return Err(Error::Parse(format!("matrix for arrow {a} has the wrong shape")));
                }
                Ok(Mat::from_rows(j.p, dims[t], dims[s], &rows))
            })
            .collect::<Result<_>>()?;
        FpRep::new(quiver, j.p, dims, maps)
    }
}

/// A basis of `Hom(m, n)`, each element given by its per-vertex matrices.
pub fn hom_space(m: &FpRep, n: &FpRep) -> Vec<Vec<Mat>> {
    assert_eq!(m.p, n.p);
    let q = &m.quiver;
    let p = m.p;
    let nv = q.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let eq_rows: usize = q.arrows.iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut sys = Mat::zeros(p, eq_rows, unknowns);
    let mut row0 = 0;
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for x in 0..n.dims[t] {
            for y in 0..m.dims[s] {
                let row = row0 + x * m.dims[s] + y;
                // (N_a f_s)[x][y] = sum_r N_a[x][r] f_s[r][y]
                for r in 0..n.dims[s] {
                    let c = na.get(x, r);
                    if c != 0 {
                        let col = offset[s] + r * m.dims[s] + y;
                        sys.set(row, col, (sys.get(row, col) + c) % p);
                    }
                }
                // (f_t M_a)[x][y] = sum_c f_t[x][c] M_a[c][y]
                for c in 0..m.dims[t] {
                    let v = ma.get(c, y);
                    if v != 0 {
                        let col = offset[t] + x * m.dims[t] + c;
                        sys.set(row, col, (sys.get(row, col) + p - v) % p);
                    }
                }
            }
        }
        row0 += n.dims[t] * m.dims[s];
    }
    let ker = sys.kernel();
    (0..ker.cols())
        .map(|k| {
            (0..nv)
                .map(|v| {
                    let mut f = Mat::zeros(p, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            f.set(r, c, ker.get(offset[v] + r * m.dims[v] + c, k));
                        }
                    }
                    f
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim(m: &FpRep, n: &FpRep) -> usize {
    hom_space(m, n).len()
}

/// `dim Ext^1(m, n) = dim Hom(m, n) - <dim m, dim n>` for path algebras.
pub fn ext1_dim(m: &FpRep, n: &FpRep) -> usize {
    let h = hom_dim(m, n) as i64;
    let e = h - m.quiver.euler_form(&m.dims, &n.dims);
    debug_assert!(e >= 0);
    e.max(0) as usize
}

/// Searches for an invertible homomorphism among random combinations of a
/// Hom basis.
pub fn is_isomorphic(m: &FpRep, n: &FpRep, rng: &mut Rng) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let basis = hom_space(m, n);
    if basis.is_empty() {
        return m.total_dim() == 0;
    }
    for _ in 0..32 {
        let f = random_combination(&basis, m.p, rng);
        if f.iter().all(Mat::is_invertible) {
            return true;
        }
    }
    false
}

fn random_combination(basis: &[Vec<Mat>], p: u32, rng: &mut Rng) -> Vec<Mat> {
    let mut acc: Vec<Mat> = basis[0].iter().map(|m| Mat::zeros(p, m.rows(), m.cols())).collect();
    for b in basis {
        let c = rng.gen_range(0..p);
        for (x, y) in acc.iter_mut().zip(b) {
            *x = x.add(&y.scale(c));
        }
    }
    acc
}

/// Splits `m` into indecomposable summands by Fitting decompositions of
/// random endomorphisms.
///
/// Fails with [`Error::SplitsOverExtension`] when an endomorphism has no
/// eigenvalue in F_p on some summand, which signals a summand that is
/// indecomposable over F_p but splits over an extension field.
pub fn decompose(m: &FpRep, rng: &mut Rng) -> Result<Vec<FpRep>> {
    if m.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let end = hom_space(m, m);
    if end.len() == 1 {
        return Ok(vec![m.clone()]);
    }
    let p = m.p;
    let nmax = *m.dims.iter().max().unwrap() as u32;
    let mut saw_missing_eigenvalue = false;
    for _ in 0..24 {
        let phi = random_combination(&end, p, rng);
        let mut single = false;
        for lambda in 0..p {
            let psi: Vec<Mat> = phi
                .iter()
                .map(|f| f.sub(&Mat::identity(p, f.rows()).scale(lambda)).pow(nmax))
                .collect();
            let kernels: Vec<Mat> = psi.iter().map(Mat::kernel).collect();
            let kdim: usize = kernels.iter().map(Mat::cols).sum();
            if kdim == 0 {
                continue;
            }
            if kdim == m.total_dim() {
                single = true;
                break;
            }
            let images: Vec<Mat> = psi.iter().map(Mat::column_basis).collect();
            let mut parts = decompose(&m.restrict(&kernels)?, rng)?;
            parts.extend(decompose(&m.restrict(&images)?, rng)?);
            return Ok(parts);
        }
        if !single {
            saw_missing_eigenvalue = true;
        }
    }
    if saw_missing_eigenvalue {
        return Err(Error::SplitsOverExtension { p });
    }
    Ok(vec![m.clone()])
}

/// Sampling parameters shared by the generic-representation routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Prime used for canonical decompositions and generic Ext values.
    pub reference_prime: u32,
    /// Number of independent samples per generic quantity.
    pub samples: usize,
    /// Upper bound on draws while looking for a generic representative.
    pub max_tries: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            reference_prime: 101,
            samples: 5,
            max_tries: 20_000,
        }
    }
}

/// Generic value of `dim Ext^1` between representations of dimensions `d`
/// and `e`: the minimum over independent samples.
pub fn generic_ext(q: &Arc<RepQuiver>, d: &[usize], e: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> usize {
    (0..cfg.samples.max(1))
        .map(|_| {
            let m = FpRep::random(q.clone(), cfg.reference_prime, d, rng);
            let n = FpRep::random(q.clone(), cfg.reference_prime, e, rng);
            ext1_dim(&m, &n)
        })
        .min()
        .unwrap()
}

/// Generic `dim Ext^1(M, M)` for a single representation `M` of dimension
/// `d`: the minimum over samples. Zero exactly when `d` is rigid.
pub fn generic_self_ext(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> usize {
    (0..cfg.samples.max(1))
        .map(|_| {
            let m = FpRep::random(q.clone(), cfg.reference_prime, d, rng);
            ext1_dim(&m, &m)
        })
        .min()
        .unwrap()
}

/// Generic `dim Hom(d, d)`, the minimum over samples.
pub fn generic_end_dim(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> usize {
    (0..cfg.samples.max(1))
        .map(|_| {
            let m = FpRep::random(q.clone(), cfg.reference_prime, d, rng);
            hom_dim(&m, &m)
        })
        .min()
        .unwrap()
}

pub fn is_schur_root(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> bool {
    d.iter().any(|&x| x > 0) && generic_end_dim(q, d, cfg, rng) == 1
}

pub fn is_real_schur_root(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> bool {
    q.euler_form(d, d) == 1 && is_schur_root(q, d, cfg, rng)
}

/// Dimension vectors of the generic summands of `d`, sorted.
///
/// Takes the modal decomposition over `cfg.samples` random representations
/// at the reference prime, then checks that every summand is a Schur root
/// and that distinct summands have no generic extensions either way.
pub fn canonical_decomposition(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> Result<Vec<Vec<usize>>> {
    if d.iter().all(|&x| x == 0) {
        return Ok(Vec::new());
    }
    let mut tallies: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
    let mut good = 0;
    let mut attempts = 0;
    while good < cfg.samples.max(1) && attempts < 20 * cfg.samples.max(1) {
        attempts += 1;
        let m = FpRep::random(q.clone(), cfg.reference_prime, d, rng);
        match decompose(&m, rng) {
            Ok(parts) => {
                let mut dims: Vec<Vec<usize>> = parts.iter().map(|r| r.dims.clone()).collect();
                dims.sort();
                *tallies.entry(dims).or_insert(0) += 1;
                good += 1;
            }
            Err(Error::SplitsOverExtension { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let best = tallies.values().copied().max().unwrap_or(0);
    let modes: Vec<&Vec<Vec<usize>>> = tallies.iter().filter(|(_, &c)| c == best).map(|(k, _)| k).collect();
    if best == 0 || modes.len() != 1 {
        return Err(Error::UnstableDecomposition(format!("{tallies:?}")));
    }
    let factors = modes[0].clone();
    for f in &factors {
        if !is_schur_root(q, f, cfg, rng) {
            return Err(Error::DecompositionCheck(format!("summand {f:?} is not a Schur root")));
        }
    }
    for k in 0..factors.len() {
        for l in 0..factors.len() {
            if k != l && generic_ext(q, &factors[k], &factors[l], cfg, rng) != 0 {
                return Err(Error::DecompositionCheck(format!(
                    "summands {:?} and {:?} have generic extensions",
                    factors[k], factors[l]
                )));
            }
        }
    }
    Ok(factors)
}

/// Draws representations in general position for a fixed dimension vector,
/// as direct sums of bricks following its canonical decomposition.
#[derive(Clone, Debug)]
pub struct GenericSampler {
    quiver: Arc<RepQuiver>,
    dims: Vec<usize>,
    factors: Vec<Vec<usize>>,
    max_tries: usize,
}

impl GenericSampler {
    pub fn new(q: &Arc<RepQuiver>, d: &[usize], cfg: &SamplingConfig, rng: &mut Rng) -> Result<GenericSampler> {
        let factors = canonical_decomposition(q, d, cfg, rng)?;
        Ok(GenericSampler {
            quiver: q.clone(),
            dims: d.to_vec(),
            factors,
            max_tries: cfg.max_tries,
        })
    }

    pub fn factors(&self) -> &[Vec<usize>] {
        &self.factors
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// A representation over F_p whose summands are bricks of the factor
    /// dimensions, with `dim Hom` between distinct summands equal to the
    /// Euler form.
    pub fn sample(&self, p: u32, rng: &mut Rng) -> Result<FpRep> {
        check_prime(p)?;
        let q = &self.quiver;
        let mut chosen: Vec<FpRep> = Vec::new();
        for beta in &self.factors {
            let mut found = None;
            for _ in 0..self.max_tries {
                let m = FpRep::random(q.clone(), p, beta, rng);
                if hom_dim(&m, &m) != 1 {
                    continue;
                }
                let ok = chosen.iter().all(|c| {
                    hom_dim(c, &m) as i64 == q.euler_form(&c.dims, beta)
                        && hom_dim(&m, c) as i64 == q.euler_form(beta, &c.dims)
                });
                if ok {
                    found = Some(m);
                    break;
                }
            }
            let m = found.ok_or_else(|| {
                Error::GenericityFailure(format!("no brick of dimension {beta:?} in general position over F_{p}"))
            })?;
            chosen.push(m);
        }
        let mut acc = FpRep::zero(q.clone(), p);
        for c in &chosen {
            acc = acc.direct_sum(c);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;
    use rand::SeedableRng;

    fn kronecker() -> Arc<RepQuiver> {
        Arc::new(RepQuiver::new(vec!["1".into(), "2".into()], vec![(1, 0), (1, 0)]))
    }

    fn a3() -> Arc<RepQuiver> {
        Arc::new(RepQuiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![(1, 0), (1, 2)],
        ))
    }

    #[test]
    fn hom_minus_ext_is_euler_form() {
        let q = a3();
        let mut rng = Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let e: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let m = FpRep::random(q.clone(), 7, &d, &mut rng);
            let n = FpRep::random(q.clone(), 7, &e, &mut rng);
            let h = hom_dim(&m, &n) as i64;
            let x = ext1_dim(&m, &n) as i64;
            assert_eq!(h - x, q.euler_form(&d, &e));
        }
    }

    #[test]
    fn kronecker_canonical_decompositions() {
        let q = kronecker();
        let cfg = SamplingConfig::default();
        let mut rng = rng_for(1, "kronecker");
        assert_eq!(canonical_decomposition(&q, &[1, 1], &cfg, &mut rng).unwrap(), vec![vec![1, 1]]);
        assert_eq!(
            canonical_decomposition(&q, &[2, 2], &cfg, &mut rng).unwrap(),
            vec![vec![1, 1], vec![1, 1]]
        );
        assert_eq!(canonical_decomposition(&q, &[3, 2], &cfg, &mut rng).unwrap(), vec![vec![3, 2]]);
        assert!(!is_schur_root(&q, &[2, 0], &cfg, &mut rng));
        assert!(is_schur_root(&q, &[1, 1], &cfg, &mut rng));
        assert!(!is_real_schur_root(&q, &[1, 1], &cfg, &mut rng));
    }

    #[test]
    fn irreducible_pencil_is_reported() {
        let q = kronecker();
        // x -> (x, ax) with a a non-square: the pencil (1, [[0,3],[1,0]]) over F_7
        let i = Mat::identity(7, 2);
        let j = Mat::from_rows(7, 2, 2, &[vec![0, 3], vec![1, 0]]);
        let m = FpRep::new(q, 7, vec![2, 2], vec![i, j]).unwrap();
        let mut rng = Rng::seed_from_u64(2);
        assert!(matches!(decompose(&m, &mut rng), Err(Error::SplitsOverExtension { p: 7 })));
    }

    #[test]
    fn reflections_are_mutually_inverse() {
        let q = a3();
        let mut rng = Rng::seed_from_u64(5);
        for d in [[1usize, 1, 0], [1, 1, 1], [0, 1, 1], [1, 2, 1]] {
            let m = FpRep::random(q.clone(), 5, &d, &mut rng);
            // vertex 0 is a sink of 2 -> 1, 2 -> 3
            let r = m.reflect(0).unwrap();
            let back = r.reflect(0).unwrap();
            assert_eq!(back.quiver().as_ref(), m.quiver().as_ref());
            let rank = m.maps()[0].rank();
            if rank == m.dims()[0] {
                assert!(is_isomorphic(&back, &m, &mut rng));
            } else {
                assert_eq!(back.dims()[0], rank);
            }
        }
    }

    #[test]
    fn generic_sampler_gives_distinct_points() {
        let q = kronecker();
        let cfg = SamplingConfig::default();
        let mut rng = rng_for(3, "sampler");
        let s = GenericSampler::new(&q, &[2, 2], &cfg, &mut rng).unwrap();
        for p in [2u32, 3, 5] {
            let m = s.sample(p, &mut rng).unwrap();
            assert_eq!(hom_dim(&m, &m), 2);
        }
    }

    #[test]
    fn json_round_trip() {
        let q = a3();
        let mut rng = Rng::seed_from_u64(9);
        let m = FpRep::random(q.clone(), 13, &[2, 1, 1], &mut rng);
        assert_eq!(FpRep::from_json(q, &m.to_json()).unwrap(), m);
    }
}
