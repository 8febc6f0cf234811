//! Verification suites producing deterministic reports with witnesses.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::index::sample;
use rand::Rng as _;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cluster::{enumerate_clusters, PrincipalSeed, Seed, VarNaming};
use crate::error::{Error, Result};
use crate::graded::{v_monomial, y_var, DecoratedDim};
use crate::grassmannian::{counting_polynomials, DEFAULT_BUDGET};
use crate::graph::BipartiteGraph;
use crate::laurent::{LaurentPoly, Monomial};
use crate::qchar::{has_nonnegative_coefficients, kr_monomial, CharacterEngine};
use crate::quiver::{build_x_quiver, build_z_quiver};
use crate::rep::{canonical_decomposition, generic_ext, generic_self_ext, is_real_schur_root, GenericSampler, RepQuiver, SamplingConfig};
use crate::rng::{derive_seed, rng_for};
use crate::sigma::{phi_dim, sigma_inverse_principal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub graph: String,
    pub root_seed: u64,
    pub cases: Vec<Case>,
    pub elapsed: Duration,
}

impl Report {
    fn new(suite: &str, graph: &str, root_seed: u64) -> Report {
        Report {
            suite: suite.to_string(),
            graph: graph.to_string(),
            root_seed,
            cases: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn push(&mut self, name: impl Into<String>, status: Status, witness: Value) {
        self.cases.push(Case {
            name: name.into(),
            status,
            witness,
        });
    }

    fn error(&mut self, name: impl Into<String>, e: &Error) {
        self.push(name, Status::Fail, json!({ "error": e.to_string() }));
    }

    fn finish(mut self, start: Instant) -> Report {
        self.elapsed = start.elapsed();
        self
    }

    /// No case failed. Informational entries do not count either way.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    /// Canonical JSON: identical bytes for identical inputs and seed.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "graph": self.graph,
            "root_seed": self.root_seed,
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "witness": c.witness,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_with_timing(&self) -> Value {
        let mut v = self.to_json();
        v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        v
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} [{}] seed={}", self.suite, self.graph, self.root_seed);
        for c in &self.cases {
            let _ = writeln!(s, "  {:<4}  {}", c.status.as_str(), c.name);
        }
        let _ = writeln!(
            s,
            "  {} pass, {} fail, {} info in {:.2}s",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info),
            self.elapsed.as_secs_f64()
        );
        s
    }
}

fn graph_name(bg: &BipartiteGraph) -> String {
    bg.ids().join(",")
}

/// Character provider used by the T-system suite, so that a corrupted
/// provider can serve as a negative control.
pub type CharacterFn<'a> = dyn Fn(&DecoratedDim) -> Result<LaurentPoly> + Sync + 'a;

/// `χ(x_i) χ(x_i') = χ(f_i) + prod_j χ(x_j)^{a_ij}` at every vertex.
pub fn verify_t_system(bg: &BipartiteGraph, root_seed: u64) -> Report {
    let engine = CharacterEngine::new(bg, root_seed);
    verify_t_system_with(bg, root_seed, &|w| Ok(engine.character(w)?.at_one()))
}

pub fn verify_t_system_with(bg: &BipartiteGraph, root_seed: u64, chi: &CharacterFn<'_>) -> Report {
    let start = Instant::now();
    let mut report = Report::new("t-system", &graph_name(bg), root_seed);
    let n = bg.len();
    for i in 0..n {
        let name = format!("vertex {}", bg.ids()[i]);
        let run = || -> Result<(LaurentPoly, LaurentPoly)> {
            let lhs = &chi(&DecoratedDim::frozen_simple(n, i))? * &chi(&DecoratedDim::simple(n, i))?;
            let mut prod = LaurentPoly::one();
            for j in bg.graph().neighbors(i) {
                prod = &prod * &chi(&DecoratedDim::frozen_simple(n, j))?.pow(bg.a(i, j));
            }
            let rhs = &chi(&DecoratedDim::kr(n, i))? + &prod;
            Ok((lhs, rhs))
        };
        match run() {
            Ok((lhs, rhs)) => report.push(
                name,
                Status::of(lhs == rhs),
                json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() }),
            ),
            Err(e) => report.error(name, &e),
        }
    }
    report.finish(start)
}

/// The closed forms of the fundamental and KR characters:
/// `χ(f_i) = Y_{i,ξ} Y_{i,ξ+2}`, `χ(x_i) = Y_{i,2}`, `χ(x_i') = Y_{i,3}` on
/// `I0` resp. `I1`, `χ(x_i) = Y_{i,1}(1 + V_{i,2})` on `I1` and
/// `χ(x_i') = Y_{i,0}(1 + V_{i,1} prod_j (1 + V_{j,2})^{a_ij})` on `I0`.
pub fn verify_kr_characters(bg: &BipartiteGraph, root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("kr-characters", &graph_name(bg), root_seed);
    let engine = CharacterEngine::new(bg, root_seed);
    let n = bg.len();
    let y = |i: usize, k: i32| LaurentPoly::var(&y_var(bg, i, k));
    let one_plus_v = |i: usize, k: i32| &LaurentPoly::one() + &LaurentPoly::monomial(v_monomial(bg, i, k));
    for i in 0..n {
        let xi = bg.parity(i) as i32;
        let id = &bg.ids()[i];
        let mut expected: Vec<(String, DecoratedDim, LaurentPoly)> =
            vec![(format!("f{id}"), DecoratedDim::kr(n, i), &y(i, xi) * &y(i, xi + 2))];
        if xi == 0 {
            expected.push((format!("x{id}"), DecoratedDim::frozen_simple(n, i), y(i, 2)));
            let mut inner = LaurentPoly::monomial(v_monomial(bg, i, 1));
            for j in bg.graph().neighbors(i) {
                inner = &inner * &one_plus_v(j, 2).pow(bg.a(i, j));
            }
            expected.push((format!("x{id}'"), DecoratedDim::simple(n, i), &y(i, 0) * &(&LaurentPoly::one() + &inner)));
        } else {
            expected.push((format!("x{id}"), DecoratedDim::frozen_simple(n, i), &y(i, 1) * &one_plus_v(i, 2)));
            expected.push((format!("x{id}'"), DecoratedDim::simple(n, i), y(i, 3)));
        }
        for (name, w, want) in expected {
            match engine.character(&w) {
                Ok(c) => {
                    let got = c.at_one();
                    report.push(
                        name,
                        Status::of(got == want),
                        json!({ "computed": got.to_string(), "expected": want.to_string() }),
                    )
                }
                Err(e) => report.error(name, &e),
            }
        }
    }
    report.finish(start)
}

/// Module data attached to one cluster variable of the z-quiver algebra
/// with principal coefficients.
#[derive(Clone, Debug)]
pub struct VariableModule {
    pub text: String,
    pub path: Vec<String>,
    pub vertex: String,
    pub value: LaurentPoly,
    pub initial: bool,
    /// `None` when no module matches.
    pub w: Option<DecoratedDim>,
    pub f: LaurentPoly,
    pub g: Vec<i64>,
}

/// The cluster variables of the principal-coefficient z-quiver algebra,
/// their clusters, and the modules matching them.
pub struct HlDictionary {
    pub principal: PrincipalSeed,
    pub z_seed: Seed,
    pub variables: Vec<VariableModule>,
    pub clusters: Vec<BTreeSet<String>>,
    pub closed: bool,
}

fn vertex_index(bg: &BipartiteGraph, id: &str) -> Result<usize> {
    bg.ids().iter().position(|x| x == id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
}

/// Top exponent vector of an F-polynomial, in graph vertex order.
fn top_degree(bg: &BipartiteGraph, ps: &PrincipalSeed, f: &LaurentPoly) -> Result<Vec<i64>> {
    let top = f.max_exponents();
    if f.coefficient(&top) != BigInt::one() {
        return Err(Error::Other(format!("F-polynomial `{f}` has no unique top monomial")));
    }
    let mut d = vec![0i64; bg.len()];
    for (c, id) in ps.principal_ids().iter().enumerate() {
        d[vertex_index(bg, id)?] = top.exponent(&ps.coefficient_var(c));
    }
    Ok(d)
}

/// The module of a non-initial variable from the top degree `d` of its
/// F-polynomial: `S_{i'}` when `d = e_i` with `i ∈ I1`, otherwise the
/// principal `W` with `σW = d`, required to be a real Schur root.
fn module_for_top(engine: &CharacterEngine, d: &[i64], rng: &mut crate::rng::Rng) -> Option<DecoratedDim> {
    let bg = engine.graph();
    let n = bg.len();
    let support: Vec<usize> = (0..n).filter(|&i| d[i] != 0).collect();
    if support.len() == 1 && d[support[0]] == 1 && bg.parity(support[0]) == 1 {
        return Some(DecoratedDim::frozen_simple(n, support[0]));
    }
    let w = sigma_inverse_principal(bg, d)?;
    if !is_real_schur_root(&engine.quivers().principal, &w, engine.config(), rng) {
        return None;
    }
    Some(DecoratedDim::principal(w))
}

pub fn hl_dictionary(engine: &CharacterEngine, max_seeds: usize) -> Result<HlDictionary> {
    let bg = engine.graph();
    let z = build_z_quiver(bg).to_matrix();
    let ps = PrincipalSeed::new(&z);
    let z_seed = Seed::initial(z, &VarNaming::new("z", "f"));
    let en = enumerate_clusters(ps.seed(), max_seeds)?;
    let mut rng = rng_for(engine.root_seed(), "hl-dictionary");
    let initial: BTreeMap<String, usize> = (0..ps.principal_ids().len())
        .map(|c| (ps.principal_var(c), c))
        .collect();
    let mut variables = Vec::new();
    for (text, rec) in en.variables() {
        let f = ps.f_polynomial(&rec.value)?;
        let g = ps.g_vector(&rec.value)?;
        let n = bg.len();
        let (is_initial, w) = match initial.get(&text) {
            Some(&c) => {
                let i = vertex_index(bg, &ps.principal_ids()[c])?;
                let w = if bg.parity(i) == 0 {
                    DecoratedDim::frozen_simple(n, i)
                } else {
                    DecoratedDim::simple(n, i)
                };
                (true, Some(w))
            }
            None => (false, module_for_top(engine, &top_degree(bg, &ps, &f)?, &mut rng)),
        };
        variables.push(VariableModule {
            text,
            path: rec.path,
            vertex: rec.vertex,
            value: rec.value,
            initial: is_initial,
            w,
            f,
            g,
        });
    }
    let clusters = en
        .seeds
        .iter()
        .map(|s| s.cluster().into_iter().map(|x| x.to_string()).collect())
        .collect();
    Ok(HlDictionary {
        principal: ps,
        z_seed,
        variables,
        clusters,
        closed: en.closed,
    })
}

/// Substitution `z_i -> Y_{i,2}` on `I0`, `z_i -> Y_{i,3}` on `I1` and
/// `f_i -> Y_{i,ξ_i} Y_{i,ξ_i+2}`.
pub fn z_to_y(bg: &BipartiteGraph) -> BTreeMap<String, LaurentPoly> {
    let naming = VarNaming::new("z", "f");
    let mut map = BTreeMap::new();
    for (i, id) in bg.ids().iter().enumerate() {
        let xi = bg.parity(i) as i32;
        map.insert(naming.name(id, false), LaurentPoly::var(&y_var(bg, i, 2 + xi)));
        let kr = Monomial::var(&y_var(bg, i, xi)).mul(&Monomial::var(&y_var(bg, i, xi + 2)));
        map.insert(naming.name(&format!("{id}'"), true), LaurentPoly::monomial(kr));
    }
    map
}

/// For every non-initial variable: the F-polynomial is the generating
/// function of Euler numbers of `Gr_V(σW)`, the g-vector is
/// `-sum_i ε_i (W_i - W_{i'}) e_i`, and the variable expressed in the
/// z-seed maps to the truncated character of `W` under [`z_to_y`].
/// Also checks that every `ŷ_j` maps to `V_{j,ξ_j+1}`.
pub fn verify_hl_correspondence(bg: &BipartiteGraph, max_seeds: usize, root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("hl-correspondence", &graph_name(bg), root_seed);
    let engine = CharacterEngine::new(bg, root_seed);
    let dict = match hl_dictionary(&engine, max_seeds) {
        Ok(d) => d,
        Err(e) => {
            report.error("enumeration", &e);
            return report.finish(start);
        }
    };
    if !dict.closed {
        report.push("enumeration", Status::Info, json!({ "closed": false, "max_seeds": max_seeds }));
    }
    let subst = z_to_y(bg);
    let zm = dict.z_seed.matrix();
    for j in 0..bg.len() {
        let col = zm.row(&bg.ids()[j]).unwrap();
        let mut yhat = LaurentPoly::one();
        for i in 0..zm.n_rows() {
            let b = zm.b(i, col);
            if b != 0 {
                yhat = yhat.mul_monomial(&dict.z_seed.variable(&zm.ids()[i]).unwrap().as_monomial().unwrap().pow(b));
            }
        }
        let name = format!("y-hat {}", bg.ids()[j]);
        match yhat.substitute(&subst) {
            Ok(got) => {
                let want = LaurentPoly::monomial(v_monomial(bg, j, bg.parity(j) as i32 + 1));
                report.push(name, Status::of(got == want), json!({ "computed": got.to_string(), "expected": want.to_string() }));
            }
            Err(e) => report.error(name, &e),
        }
    }
    for var in dict.variables.iter().filter(|v| !v.initial) {
        let name = format!("{} via {}", var.text, var.path.join(","));
        match hl_case(&engine, &dict, var, &subst) {
            Ok((ok, witness)) => report.push(name, Status::of(ok), witness),
            Err(e) => report.error(name, &e),
        }
    }
    report.finish(start)
}

fn hl_case(
    engine: &CharacterEngine,
    dict: &HlDictionary,
    var: &VariableModule,
    subst: &BTreeMap<String, LaurentPoly>,
) -> Result<(bool, Value)> {
    let bg = engine.graph();
    let ps = &dict.principal;
    let Some(w) = &var.w else {
        return Ok((false, json!({ "orphan": var.text, "f": var.f.to_string(), "g": var.g })));
    };
    let chi = engine.character(w)?;
    let mut gen = LaurentPoly::zero();
    let coeff_var: BTreeMap<&str, String> = ps
        .principal_ids()
        .iter()
        .enumerate()
        .map(|(c, id)| (id.as_str(), ps.coefficient_var(c)))
        .collect();
    for (v, e) in chi.euler_numbers() {
        let m = Monomial::from_exponents(
            v.iter()
                .enumerate()
                .map(|(i, &k)| (coeff_var[bg.ids()[i].as_str()].clone(), k as i64)),
        );
        gen = &gen + &LaurentPoly::term(e, m);
    }
    let f_ok = gen == var.f;

    let mut g_expected = vec![0i64; bg.len()];
    for (c, id) in ps.principal_ids().iter().enumerate() {
        let i = vertex_index(bg, id)?;
        let eps = if bg.parity(i) == 0 { 1 } else { -1 };
        g_expected[c] = -eps * (w.w[i] as i64 - w.wf[i] as i64);
    }
    let g_ok = g_expected == var.g;

    let x_z = ps.reconstruct(&var.f, &var.g, &dict.z_seed)?;
    let replay = dict.z_seed.mutate_path(&var.path)?.variable(&var.vertex)?.clone();
    let replay_ok = replay == x_z;
    let image = x_z.substitute(subst)?;
    let character = chi.at_one();
    let chi_ok = image == character;
    Ok((
        f_ok && g_ok && replay_ok && chi_ok,
        json!({
            "w": w.flat(),
            "f_polynomial": var.f.to_string(),
            "grassmannian_series": gen.to_string(),
            "g_vector": var.g,
            "g_expected": g_expected,
            "z_seed_expansion": x_z.to_string(),
            "replayed": replay_ok,
            "character_image": image.to_string(),
            "truncated_character": character.to_string(),
        }),
    ))
}

/// Whether two modules are compatible: frozen simples always are with each
/// other, `S_{i'}` is compatible with a principal `W` iff `W_i = 0`, and two
/// principal modules iff generic extensions vanish both ways.
pub fn modules_compatible(engine: &CharacterEngine, a: &DecoratedDim, b: &DecoratedDim, rng: &mut crate::rng::Rng) -> bool {
    let a_frozen = a.w.iter().all(|&x| x == 0);
    let b_frozen = b.w.iter().all(|&x| x == 0);
    match (a_frozen, b_frozen) {
        (true, true) => true,
        (true, false) => (0..a.len()).all(|i| a.wf[i] == 0 || b.w[i] == 0),
        (false, true) => (0..a.len()).all(|i| b.wf[i] == 0 || a.w[i] == 0),
        (false, false) => {
            let q = &engine.quivers().principal;
            generic_ext(q, &a.w, &b.w, engine.config(), rng) == 0 && generic_ext(q, &b.w, &a.w, engine.config(), rng) == 0
        }
    }
}

/// Sampled pairs of cluster variables and coefficients: membership in a
/// common enumerated cluster agrees with [`modules_compatible`].
pub fn verify_common_cluster(bg: &BipartiteGraph, pairs: usize, max_seeds: usize, root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("common-cluster", &graph_name(bg), root_seed);
    let engine = CharacterEngine::new(bg, root_seed);
    let dict = match hl_dictionary(&engine, max_seeds) {
        Ok(d) => d,
        Err(e) => {
            report.error("enumeration", &e);
            return report.finish(start);
        }
    };
    let n = bg.len();
    let mut items: Vec<(String, Option<DecoratedDim>)> =
        dict.variables.iter().map(|v| (v.text.clone(), v.w.clone())).collect();
    let coefficients: BTreeSet<String> = (0..n).map(|c| dict.principal.coefficient_var(c)).collect();
    for (c, id) in dict.principal.principal_ids().iter().enumerate() {
        let i = vertex_index(bg, id).unwrap();
        items.push((dict.principal.coefficient_var(c), Some(DecoratedDim::kr(n, i))));
    }
    let mut all = Vec::new();
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            all.push((a, b));
        }
    }
    let mut rng = rng_for(root_seed, "common-cluster");
    let chosen: Vec<(usize, usize)> = if all.len() <= pairs {
        all
    } else {
        let mut idx = sample(&mut rng, all.len(), pairs).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|k| all[k]).collect()
    };
    for (a, b) in chosen {
        let (ta, wa) = &items[a];
        let (tb, wb) = &items[b];
        let name = format!("{ta} | {tb}");
        let (Some(wa), Some(wb)) = (wa, wb) else {
            report.push(name, Status::Fail, json!({ "orphan": true }));
            continue;
        };
        let common = coefficients.contains(ta)
            || coefficients.contains(tb)
            || dict.clusters.iter().any(|c| c.contains(ta) && c.contains(tb));
        let compatible = if coefficients.contains(ta) || coefficients.contains(tb) {
            true
        } else {
            modules_compatible(&engine, wa, wb, &mut rng)
        };
        report.push(
            name,
            Status::of(common == compatible),
            json!({ "common_cluster": common, "ext_vanishes": compatible, "w": [wa.flat(), wb.flat()] }),
        );
    }
    report.finish(start)
}

/// For every listed dimension vector that is rigid (generic self-extension
/// zero), every subdimension has a counting polynomial over `primes` with
/// nonnegative integer coefficients. Non-rigid vectors get an informational
/// entry.
pub fn verify_odd_vanishing(
    q: &Arc<RepQuiver>,
    label: &str,
    dims: &[Vec<usize>],
    primes: &[u64],
    cfg: &SamplingConfig,
    root_seed: u64,
) -> Report {
    let start = Instant::now();
    let mut report = Report::new("odd-vanishing", label, root_seed);
    for d in dims {
        let mut rng = rng_for(root_seed, &format!("odd:{d:?}"));
        let self_ext = generic_self_ext(q, d, cfg, &mut rng);
        if self_ext != 0 {
            report.push(
                format!("{d:?} not rigid"),
                Status::Info,
                json!({ "dims": d, "generic_self_ext": self_ext }),
            );
            continue;
        }
        let run = || -> Result<_> {
            let sampler = GenericSampler::new(q, d, cfg, &mut rng.clone())?;
            counting_polynomials(
                |p, r| sampler.sample(p, r),
                &vec![None; d.len()],
                primes,
                1,
                derive_seed(root_seed, &format!("odd-count:{d:?}")),
                DEFAULT_BUDGET,
            )
        };
        match run() {
            Ok(polys) => {
                for v in subdimensions(d) {
                    let name = format!("{d:?} sub {v:?}");
                    match polys.get(&v) {
                        Some(c) => report.push(
                            name,
                            Status::of(c.coeffs.iter().all(|x| !x.is_negative())),
                            json!({
                                "polynomial": c.to_string(),
                                "samples": c.samples.iter().map(|(p, n)| json!([p, n.to_string()])).collect::<Vec<_>>(),
                            }),
                        ),
                        None => report.push(name, Status::Pass, json!({ "polynomial": "0" })),
                    }
                }
            }
            Err(e) => report.error(format!("{d:?}"), &e),
        }
    }
    report.finish(start)
}

/// All `v` with `0 <= v <= d` componentwise, in lexicographic order.
pub fn subdimensions(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=x).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Random decorated dimension vectors with entries in `0..=max_dim`, not all zero.
pub fn random_dims(n: usize, count: usize, max_dim: usize, root_seed: u64) -> Vec<DecoratedDim> {
    let mut rng = rng_for(root_seed, "random-dims");
    let mut out = Vec::new();
    while out.len() < count {
        let flat: Vec<usize> = (0..2 * n).map(|_| rng.gen_range(0..=max_dim)).collect();
        if flat.iter().any(|&x| x > 0) {
            out.push(DecoratedDim::from_flat(&flat));
        }
    }
    out
}

/// KR factorization `χ(W) = χ(φW) prod (Y_{i,ξ}Y_{i,ξ+2})^{min(W_i,W_i')}`
/// at `t = 1` and on the unnormalized `t`-coefficients, and the tensor
/// factorization along the canonical decomposition at `t = 1`.
pub fn verify_factorizations(bg: &BipartiteGraph, ws: &[DecoratedDim], root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("factorizations", &graph_name(bg), root_seed);
    let engine = CharacterEngine::new(bg, root_seed);
    for w in ws {
        let label = format!("{:?}", w.flat());
        let run = || -> Result<(bool, Value, bool, Value)> {
            let (phi, kr) = phi_dim(w);
            let krm = kr_monomial(bg, &kr);
            let full = engine.character(w)?;
            let reduced = engine.character(&phi)?;
            let at_one = full.at_one() == reduced.at_one().mul_monomial(&krm);
            let with_t = full.unnormalized() == reduced.unnormalized().mul_monomial(&krm);
            let kr_w = json!({
                "phi_w": phi.flat(),
                "kr": kr,
                "at_one": at_one,
                "unnormalized_t": with_t,
                "character": full.at_one().to_string(),
            });
            let factors = engine.tensor_factorize(w)?;
            let prod = engine.product_at_one(&factors)?;
            let lhs = full.at_one();
            let can_w = json!({
                "factors": factors.iter().map(DecoratedDim::flat).collect::<Vec<_>>(),
                "product": prod.to_string(),
                "character": lhs.to_string(),
            });
            Ok((at_one && with_t, kr_w, prod == lhs, can_w))
        };
        match run() {
            Ok((kr_ok, kr_w, can_ok, can_w)) => {
                report.push(format!("kr {label}"), Status::of(kr_ok), kr_w);
                report.push(format!("canonical {label}"), Status::of(can_ok), can_w);
            }
            Err(e) => report.error(label, &e),
        }
    }
    report.finish(start)
}

/// Every cluster variable of the x-quiver algebra reached within
/// `max_seeds` has a Laurent expansion with nonnegative coefficients.
pub fn verify_positivity(bg: &BipartiteGraph, max_seeds: usize, root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("positivity", &graph_name(bg), root_seed);
    let seed = Seed::initial(build_x_quiver(bg).to_matrix(), &VarNaming::cluster());
    match enumerate_clusters(&seed, max_seeds) {
        Ok(en) => {
            for (text, rec) in en.variables() {
                report.push(
                    format!("{text} via {}", rec.path.join(",")),
                    Status::of(has_nonnegative_coefficients(&rec.value)),
                    json!({ "terms": rec.value.len() }),
                );
            }
        }
        Err(e) => report.error("enumeration", &e),
    }
    report.finish(start)
}

/// Counts from a bounded exchange-graph search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub variables: usize,
    pub clusters: usize,
    pub closed: bool,
}

pub fn census(seed: &Seed, max_seeds: usize) -> Result<Census> {
    let en = enumerate_clusters(seed, max_seeds)?;
    Ok(Census {
        variables: en.variables().len(),
        clusters: en.seeds.len(),
        closed: en.closed,
    })
}

/// The Kronecker checks: `(2,2)` decomposes as `δ ⊕ δ`, a generic `2δ` has
/// exactly two subrepresentations of dimension `δ` over each prime, and
/// `χ(2δ) = χ(δ)^2` at `t = 1`.
pub fn verify_kronecker(primes: &[u64], root_seed: u64) -> Report {
    let start = Instant::now();
    let mut report = Report::new("kronecker", "kronecker", root_seed);
    let bg = match crate::graph::library_bipartite("kronecker", None) {
        Ok(bg) => bg,
        Err(e) => {
            report.error("graph", &e);
            return report.finish(start);
        }
    };
    let engine = CharacterEngine::new(&bg, root_seed);
    let q = engine.quivers().principal.clone();
    let cfg = engine.config().clone();
    let mut rng = rng_for(root_seed, "kronecker");
    match canonical_decomposition(&q, &[2, 2], &cfg, &mut rng) {
        Ok(f) => report.push(
            "canonical decomposition of (2,2)",
            Status::of(f == vec![vec![1, 1], vec![1, 1]]),
            json!({ "factors": f }),
        ),
        Err(e) => report.error("canonical decomposition of (2,2)", &e),
    }
    let sampler = GenericSampler::new(&q, &[2, 2], &cfg, &mut rng);
    for &p in primes {
        let name = format!("subrepresentations of dimension (1,1) over F_{p}");
        let run = || -> Result<u128> {
            let s = sampler.as_ref().map_err(Clone::clone)?;
            let m = s.sample(p as u32, &mut rng_for(root_seed, &format!("kronecker:{p}")))?;
            crate::grassmannian::count_subreps(&m, &[1, 1], DEFAULT_BUDGET)
        };
        match run() {
            Ok(c) => report.push(name, Status::of(c == 2), json!({ "count": c.to_string() })),
            Err(e) => report.error(name, &e),
        }
    }
    let run = || -> Result<(LaurentPoly, LaurentPoly)> {
        let two = engine.character(&DecoratedDim::principal(vec![2, 2]))?.at_one();
        let one = engine.character(&DecoratedDim::principal(vec![1, 1]))?.at_one();
        Ok((two, one.pow(2)))
    };
    match run() {
        Ok((two, sq)) => report.push(
            "character of 2δ is the square of that of δ",
            Status::of(two == sq),
            json!({ "chi_2delta": two.to_string(), "chi_delta_squared": sq.to_string() }),
        ),
        Err(e) => report.error("character of 2δ", &e),
    }
    let cond = engine.condition_c(&DecoratedDim::principal(vec![1, 1]));
    report.push(
        "condition (C) fails for δ",
        Status::Info,
        json!({ "condition_c": cond.map_err(|e| e.to_string()) }),
    );
    report.finish(start)
}
