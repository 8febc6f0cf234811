//! Truncated q-characters of decorated modules computed from quiver
//! Grassmannians of `σW`, with the KR and canonical factorizations.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fp::first_primes;
use crate::graded::{dim_m_bullet, e_v, e_w, v_from_principal, DecoratedDim, GradedDim};
use crate::grassmannian::{counting_polynomials, degree_bound, CountingPolynomial, DEFAULT_BUDGET};
use crate::graph::BipartiteGraph;
use crate::laurent::{LaurentPoly, Monomial};
use crate::rep::{canonical_decomposition, is_real_schur_root, GenericSampler, SamplingConfig};
use crate::rng::rng_for;
use crate::sigma::{phi_dim, sigma_dim, sigma_rep, DecoratedQuivers};

/// Whether characters are evaluated at `t = 1` or kept as polynomials in `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMode {
    AtOne,
    WithT,
}

/// One summand `P(Gr_V(σW)) e^W e^V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTerm {
    /// Principal dimension vector of `V`.
    pub v: Vec<usize>,
    pub counting: CountingPolynomial,
    /// `dim M•(V, W)`, the normalization exponent.
    pub shift: i64,
    /// `e^W e^V`.
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCharacter {
    pub w: DecoratedDim,
    pub terms: Vec<CharacterTerm>,
}

impl QCharacter {
    /// `sum_V e(Gr_V(σW)) e^W e^V`.
    pub fn at_one(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|t| (t.monomial.clone(), t.counting.euler_number())))
    }

    /// `sum_V t^{-dim M•(V,W)} c_V(t^2) e^W e^V` in the extra variable `t`.
    pub fn with_t(&self) -> LaurentPoly {
        self.terms.iter().fold(LaurentPoly::zero(), |acc, t| {
            let shift = Monomial::var("t").pow(-t.shift).mul(&t.monomial);
            &acc + &t.counting.in_variable("t", 2).mul_monomial(&shift)
        })
    }

    /// `sum_V c_V(t^2) e^W e^V` without the normalization shift.
    pub fn unnormalized(&self) -> LaurentPoly {
        self.terms.iter().fold(LaurentPoly::zero(), |acc, t| {
            &acc + &t.counting.in_variable("t", 2).mul_monomial(&t.monomial)
        })
    }

    pub fn evaluate(&self, mode: TMode) -> LaurentPoly {
        match mode {
            TMode::AtOne => self.at_one(),
            TMode::WithT => self.with_t(),
        }
    }

    /// Euler numbers of the Grassmannians, keyed by the principal part of `V`.
    pub fn euler_numbers(&self) -> BTreeMap<Vec<usize>, BigInt> {
        self.terms.iter().map(|t| (t.v.clone(), t.counting.euler_number())).collect()
    }
}

/// Computes and caches characters for one bipartite graph.
pub struct CharacterEngine {
    dq: DecoratedQuivers,
    cfg: SamplingConfig,
    root_seed: u64,
    budget: u128,
    resamples: usize,
    cache: Mutex<HashMap<DecoratedDim, Arc<QCharacter>>>,
    samplers: Mutex<HashMap<Vec<usize>, Arc<GenericSampler>>>,
}

impl CharacterEngine {
    pub fn new(bg: &BipartiteGraph, root_seed: u64) -> CharacterEngine {
        CharacterEngine::with_config(bg, SamplingConfig::default(), root_seed)
    }

    pub fn with_config(bg: &BipartiteGraph, cfg: SamplingConfig, root_seed: u64) -> CharacterEngine {
        CharacterEngine {
            dq: DecoratedQuivers::new(bg),
            cfg,
            root_seed,
            budget: DEFAULT_BUDGET,
            resamples: 1,
            cache: Mutex::new(HashMap::new()),
            samplers: Mutex::new(HashMap::new()),
        }
    }

    /// Number of independent draws per prime; more than one detects
    /// non-generic samples.
    pub fn set_resamples(&mut self, n: usize) {
        self.resamples = n.max(1);
    }

    pub fn set_budget(&mut self, budget: u128) {
        self.budget = budget;
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.dq.bg
    }

    pub fn quivers(&self) -> &DecoratedQuivers {
        &self.dq
    }

    pub fn config(&self) -> &SamplingConfig {
        &self.cfg
    }

    pub fn root_seed(&self) -> u64 {
        self.root_seed
    }

    fn sampler(&self, w: &DecoratedDim) -> Result<Arc<GenericSampler>> {
        let flat = w.flat();
        if let Some(s) = self.samplers.lock().unwrap().get(&flat) {
            return Ok(s.clone());
        }
        let mut rng = rng_for(self.root_seed, &format!("sampler:{flat:?}"));
        let s = Arc::new(GenericSampler::new(&self.dq.decorated, &flat, &self.cfg, &mut rng)?);
        self.samplers.lock().unwrap().insert(flat, s.clone());
        Ok(s)
    }

    /// `χ_{q,t}(𝕃(W))_{≤2}` for `W` given by its decorated dimension data.
    pub fn character(&self, w: &DecoratedDim) -> Result<Arc<QCharacter>> {
        if w.len() != self.dq.len() {
            return Err(Error::GradingCondition(format!(
                "expected {} vertices, got {}",
                self.dq.len(),
                w.len()
            )));
        }
        if let Some(c) = self.cache.lock().unwrap().get(w) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.compute(w)?);
        self.cache.lock().unwrap().insert(w.clone(), c.clone());
        Ok(c)
    }

    fn compute(&self, w: &DecoratedDim) -> Result<QCharacter> {
        let bg = &self.dq.bg;
        let n = bg.len();
        let s = sigma_dim(bg, w);
        let flat_s = s.flat();
        let mut fixed: Vec<Option<usize>> = vec![None; 2 * n];
        for i in 0..n {
            fixed[n + i] = Some(if bg.parity(i) == 0 { 0 } else { s.wf[i] });
        }
        let maxdeg: usize = s.w.iter().map(|&x| (x / 2) * (x - x / 2)).sum();
        let primes = first_primes(maxdeg + 2);
        let sampler = self.sampler(w)?;
        let dq = &self.dq;
        let polys = counting_polynomials(
            |p, rng| {
                let m = sampler.sample(p, rng)?;
                let r = sigma_rep(dq, &m)?;
                if r.dims() != flat_s.as_slice() {
                    return Err(Error::GenericityFailure(format!(
                        "σ of a sample over F_{p} has dimension {:?}, expected {:?}",
                        r.dims(),
                        flat_s
                    )));
                }
                Ok(r)
            },
            &fixed,
            &primes,
            self.resamples,
            crate::rng::derive_seed(self.root_seed, &format!("character:{:?}", w.flat())),
            self.budget,
        )?;
        let wg = w.to_graded(bg);
        let ew = e_w(bg, &wg);
        let mut terms = Vec::new();
        for (v, counting) in polys {
            if counting.is_zero() {
                continue;
            }
            let vp = v[..n].to_vec();
            debug_assert_eq!(degree_bound(&s.w, &vp), counting.degree_bound);
            let vg = v_from_principal(bg, &vp);
            terms.push(CharacterTerm {
                shift: dim_m_bullet(bg, &vg, &wg),
                monomial: ew.mul(&e_v(bg, &vg)),
                v: vp,
                counting,
            });
        }
        Ok(QCharacter { w: w.clone(), terms })
    }

    /// Character of a `W` given as graded dimensions; validates the grading.
    pub fn truncated_character(&self, w: &GradedDim, mode: TMode) -> Result<LaurentPoly> {
        let d = DecoratedDim::from_graded(&self.dq.bg, w)?;
        Ok(self.character(&d)?.evaluate(mode))
    }

    /// Character of `x_i`, the simple module `S_{i'}`.
    pub fn x(&self, i: usize) -> Result<Arc<QCharacter>> {
        self.character(&DecoratedDim::frozen_simple(self.dq.len(), i))
    }

    /// Character of `x_i'`, the simple module `S_i`.
    pub fn x_prime(&self, i: usize) -> Result<Arc<QCharacter>> {
        self.character(&DecoratedDim::simple(self.dq.len(), i))
    }

    /// Character of the Kirillov-Reshetikhin module `f_i`, the space `F^i`.
    pub fn f(&self, i: usize) -> Result<Arc<QCharacter>> {
        self.character(&DecoratedDim::kr(self.dq.len(), i))
    }

    /// Factors of `𝕃(W)`: KR modules `F^i`, frozen simples `S_{i'}` and the
    /// canonical decomposition of the principal part of `φW`.
    pub fn tensor_factorize(&self, w: &DecoratedDim) -> Result<Vec<DecoratedDim>> {
        let n = self.dq.len();
        let (phi, kr) = phi_dim(w);
        let mut out = Vec::new();
        for i in 0..n {
            out.extend(std::iter::repeat_n(DecoratedDim::kr(n, i), kr[i]));
        }
        for i in 0..n {
            out.extend(std::iter::repeat_n(DecoratedDim::frozen_simple(n, i), phi.wf[i]));
        }
        let mut rng = rng_for(self.root_seed, &format!("factorize:{:?}", w.flat()));
        for beta in canonical_decomposition(&self.dq.principal, &phi.w, &self.cfg, &mut rng)? {
            out.push(DecoratedDim::principal(beta));
        }
        Ok(out)
    }

    /// Every canonical summand of `φW` is a real Schur root.
    pub fn condition_c(&self, w: &DecoratedDim) -> Result<bool> {
        let (phi, _) = phi_dim(w);
        let mut rng = rng_for(self.root_seed, &format!("condition-c:{:?}", w.flat()));
        for beta in canonical_decomposition(&self.dq.principal, &phi.w, &self.cfg, &mut rng)? {
            if !is_real_schur_root(&self.dq.principal, &beta, &self.cfg, &mut rng) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Product of the characters of the given factors at `t = 1`.
    pub fn product_at_one(&self, factors: &[DecoratedDim]) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for f in factors {
            acc = &acc * &self.character(f)?.at_one();
        }
        Ok(acc)
    }
}

/// `prod_i (Y_{i,ξ_i} Y_{i,ξ_i+2})^{m_i}`, the characters of the KR factors.
pub fn kr_monomial(bg: &BipartiteGraph, mult: &[usize]) -> Monomial {
    let mut d = DecoratedDim::zero(bg.len());
    for (i, &m) in mult.iter().enumerate() {
        d.w[i] = m;
        d.wf[i] = m;
    }
    e_w(bg, &d.to_graded(bg))
}

/// Whether every coefficient of `p` is nonnegative.
pub fn has_nonnegative_coefficients(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| *c >= BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{v_monomial, y_var};
    use crate::graph::library_bipartite;

    fn y(bg: &BipartiteGraph, i: usize, n: i32) -> LaurentPoly {
        LaurentPoly::var(&y_var(bg, i, n))
    }

    fn vm(bg: &BipartiteGraph, i: usize, n: i32) -> LaurentPoly {
        LaurentPoly::monomial(v_monomial(bg, i, n))
    }

    #[test]
    fn kronecker_delta_character() {
        let bg = library_bipartite("kronecker", None).unwrap();
        let e = CharacterEngine::new(&bg, 7);
        let delta = DecoratedDim::principal(vec![1, 1]);
        let c = e.character(&delta).unwrap().at_one();
        let ew = LaurentPoly::monomial(e_w(&bg, &delta.to_graded(&bg)));
        let v1 = vm(&bg, 0, 1);
        let v12 = &v1 * &vm(&bg, 1, 2);
        let expect = &ew * &(&(&LaurentPoly::one() + &v1) + &v12);
        assert_eq!(c, expect);
    }

    #[test]
    fn fundamental_characters_a2() {
        let bg = library_bipartite("a2", None).unwrap();
        let e = CharacterEngine::new(&bg, 1);
        // vertex 1 in I0, vertex 2 in I1
        assert_eq!(e.x(0).unwrap().at_one(), y(&bg, 0, 2));
        let x2 = &y(&bg, 1, 1) * &(&LaurentPoly::one() + &vm(&bg, 1, 2));
        assert_eq!(e.x(1).unwrap().at_one(), x2);
        assert_eq!(e.f(0).unwrap().at_one(), &y(&bg, 0, 0) * &y(&bg, 0, 2));
        assert_eq!(e.x_prime(1).unwrap().at_one(), y(&bg, 1, 3));
    }
}
