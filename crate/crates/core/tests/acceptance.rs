//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use cq_core::graded::DecoratedDim;
use cq_core::grassmannian::{count_subreps, DEFAULT_BUDGET};
use cq_core::qchar::CharacterEngine;
use cq_core::rep::{canonical_decomposition, GenericSampler, SamplingConfig};
use cq_core::rng::rng_for;
use cq_core::sigma::DecoratedQuivers;
use cq_core::verify::*;
use cq_core::{build_x_quiver, library_bipartite, BipartiteGraph, LaurentPoly, Seed, VarNaming};
use proptest::test_runner::{Config, TestRunner};

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn bg(name: &str) -> BipartiteGraph {
    library_bipartite(name, None).unwrap()
}

fn a3() -> BipartiteGraph {
    library_bipartite("a3", Some(&["1".to_string(), "3".to_string()])).unwrap()
}

fn first_failure(r: &Report) -> String {
    r.cases
        .iter()
        .find(|c| c.status == Status::Fail)
        .map(|c| format!("; {} {}: {} {}", r.suite, r.graph, c.name, c.witness))
        .unwrap_or_default()
}

fn t_system() -> Outcome {
    let start = Instant::now();
    for g in ["a2", "a3", "a4", "d4"] {
        let r = verify_t_system(&bg(g), SEED);
        if !r.passed() || r.count(Status::Pass) != bg(g).len() {
            return outcome(false, first_failure(&r));
        }
    }
    let t = start.elapsed();
    outcome(t < Duration::from_secs(10), format!("a2 a3 a4 d4, every vertex, {:.2}s", t.as_secs_f64()))
}

fn kr_characters() -> Outcome {
    let e = CharacterEngine::new(&a3(), SEED);
    let checks: Vec<(&str, DecoratedDim, LaurentPoly)> = vec![
        ("f1", DecoratedDim::kr(3, 0), y_poly(&[(1, &[("Y[1,0]", 1), ("Y[1,2]", 1)])])),
        ("f2", DecoratedDim::kr(3, 1), y_poly(&[(1, &[("Y[2,1]", 1), ("Y[2,3]", 1)])])),
        ("f3", DecoratedDim::kr(3, 2), y_poly(&[(1, &[("Y[3,0]", 1), ("Y[3,2]", 1)])])),
        (
            "x2",
            DecoratedDim::frozen_simple(3, 1),
            y_poly(&[(1, &[("Y[2,1]", 1)]), (1, &[("Y[1,2]", 1), ("Y[3,2]", 1), ("Y[2,3]", -1)])]),
        ),
        (
            "x1'",
            DecoratedDim::simple(3, 0),
            y_poly(&[(1, &[("Y[1,0]", 1)]), (1, &[("Y[2,1]", 1), ("Y[1,2]", -1)]), (1, &[("Y[3,2]", 1), ("Y[2,3]", -1)])]),
        ),
        (
            "x3'",
            DecoratedDim::simple(3, 2),
            y_poly(&[(1, &[("Y[3,0]", 1)]), (1, &[("Y[2,1]", 1), ("Y[3,2]", -1)]), (1, &[("Y[1,2]", 1), ("Y[2,3]", -1)])]),
        ),
    ];
    for (name, w, want) in &checks {
        match e.character(w) {
            Ok(c) if c.at_one() == *want => {}
            Ok(c) => return outcome(false, format!("{name}: computed {} expected {want}", c.at_one())),
            Err(err) => return outcome(false, format!("{name}: {err}")),
        }
    }
    outcome(true, "f1 f2 f3, x2 on I1, x1' x3' on I0")
}

fn hl_correspondence() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (g, roots) in [("a2", 3), ("a3", 6), ("d4", 12)] {
        let r = verify_hl_correspondence(&bg(g), 1000, SEED);
        let vars = r.cases.iter().filter(|c| c.name.contains(" via ")).count();
        if !r.passed() || vars != roots {
            return outcome(false, format!("{g}: {vars} variables{}", first_failure(&r)));
        }
        counts.push(format!("{g}:{vars}"));
    }
    let t = start.elapsed();
    outcome(t < Duration::from_secs(300), format!("{} variables, {:.2}s", counts.join(" "), t.as_secs_f64()))
}

fn census_counts() -> Outcome {
    let a2 = bg("a2");
    let free = Seed::initial(build_x_quiver(&a2).to_matrix().principal_block(), &VarNaming::cluster());
    let c2 = census(&free, 1000).unwrap();
    let a3 = Seed::initial(build_x_quiver(&a3()).to_matrix(), &VarNaming::cluster());
    let c3 = census(&a3, 1000).unwrap();
    outcome(
        c2 == Census { variables: 5, clusters: 5, closed: true } && c3.variables == 9 && c3.closed,
        format!("a2 {} variables {} clusters, a3 {} variables", c2.variables, c2.clusters, c3.variables),
    )
}

fn odd_vanishing() -> Outcome {
    let dq = DecoratedQuivers::new(&a3());
    let roots = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1]];
    let expected_cases: usize = roots.iter().map(|d| d.iter().map(|x| x + 1).product::<usize>()).sum();
    let r = verify_odd_vanishing(&dq.principal, "a3", &roots, &[2, 3, 5, 7, 11, 13], &SamplingConfig::default(), SEED);
    outcome(
        r.passed() && r.count(Status::Pass) == expected_cases && r.count(Status::Info) == 0,
        format!("{} of {expected_cases} subdimensions over 2,3,5,7,11,13{}", r.count(Status::Pass), first_failure(&r)),
    )
}

fn kronecker() -> Outcome {
    let b = bg("kronecker");
    let e = CharacterEngine::new(&b, SEED);
    let q = e.quivers().principal.clone();
    let cfg = SamplingConfig::default();
    let mut rng = rng_for(SEED, "acceptance-kronecker");
    let dec = canonical_decomposition(&q, &[2, 2], &cfg, &mut rng).unwrap();
    if dec != vec![vec![1, 1], vec![1, 1]] {
        return outcome(false, format!("canonical decomposition {dec:?}"));
    }
    let sampler = GenericSampler::new(&q, &[2, 2], &cfg, &mut rng).unwrap();
    let mut counts = Vec::new();
    for p in [3u32, 5, 7, 11] {
        let m = sampler.sample(p, &mut rng).unwrap();
        counts.push(count_subreps(&m, &[1, 1], DEFAULT_BUDGET).unwrap());
    }
    if counts.iter().any(|&c| c != 2) {
        return outcome(false, format!("counts {counts:?}"));
    }
    let two = e.character(&DecoratedDim::principal(vec![2, 2])).unwrap().at_one();
    let one = e.character(&DecoratedDim::principal(vec![1, 1])).unwrap().at_one();
    outcome(two == one.pow(2), format!("(2,2) = δ+δ, counts {counts:?} over 3,5,7,11, χ(2δ) = χ(δ)^2"))
}

fn factorizations() -> Outcome {
    let ws = random_dims(3, 50, 2, SEED);
    let r = verify_factorizations(&a3(), &ws, SEED);
    outcome(
        r.passed() && r.count(Status::Pass) == 100,
        format!("{} of 100 identities on 50 random W{}", r.count(Status::Pass), first_failure(&r)),
    )
}

fn positivity() -> Outcome {
    let mut counts = Vec::new();
    for (g, n) in [("a2", 5), ("a3", 9), ("d4", 16)] {
        let r = verify_positivity(&bg(g), 1000, SEED);
        if !r.passed() || r.cases.len() != n {
            return outcome(false, format!("{g}: {} variables{}", r.cases.len(), first_failure(&r)));
        }
        counts.push(format!("{g}:{n}"));
    }
    outcome(true, format!("{} variables, all coefficients nonnegative", counts.join(" ")))
}

fn structural() -> Outcome {
    let mut total = 0;
    let mut run = |name: &str, cases: u32, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| -> Result<(), String> {
        let mut runner = TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        });
        f(&mut runner).map_err(|e| format!("{name}: {e}"))?;
        total += cases;
        Ok(())
    };
    let result = (|| -> Result<(), String> {
        run("matrix mutation", 300, &|r| r.run(&matrix_and_vertex(), check_matrix_involution).map_err(|e| e.to_string()))?;
        run("seed mutation", 100, &|r| r.run(&matrix_and_vertex(), check_seed_involution).map_err(|e| e.to_string()))?;
        run("laurent division", 300, &|r| r.run(&(laurent(), laurent()), check_division).map_err(|e| e.to_string()))?;
        run("large division", 100, &|r| r.run(&(large_laurent(), large_laurent()), check_large_product).map_err(|e| e.to_string()))?;
        run("tau involution", 300, &|r| r.run(&graph_and_gamma(), check_tau_involution).map_err(|e| e.to_string()))?;
        run("hom - ext", 300, &|r| r.run(&quiver_pair(), check_euler_form).map_err(|e| e.to_string()))?;
        Ok(())
    })();
    match result {
        Ok(()) => outcome(total >= 1000, format!("{total} random cases")),
        Err(e) => outcome(false, e),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("t-system", t_system),
        ("kr-characters", kr_characters),
        ("hl-correspondence", hl_correspondence),
        ("cluster-census", census_counts),
        ("odd-vanishing", odd_vanishing),
        ("kronecker", kronecker),
        ("factorizations", factorizations),
        ("positivity", positivity),
        ("structural-invariants", structural),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.2}s)",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
