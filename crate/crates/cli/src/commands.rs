use std::net::SocketAddr;
use std::path::Path;
use std::sync::Arc;

use cq_core::grassmannian::{counting_polynomials, primes_needed, DEFAULT_BUDGET};
use cq_core::qchar::{CharacterEngine, TMode};
use cq_core::rep::{canonical_decomposition, is_real_schur_root, is_schur_root, GenericSampler, RepQuiver, SamplingConfig};
use cq_core::rng::rng_for;
use cq_core::sigma::DecoratedQuivers;
use cq_core::verify::{self, Report};
use cq_core::{
    build_decorated, build_sigma_quiver, build_x_quiver, build_z_quiver, enumerate_clusters, library_bipartite,
    BipartiteGraph, Graph, Quiver, Seed, VarNaming,
};
use cq_core::fp::first_primes;
use cq_core::graded::DecoratedDim;
use serde_json::{json, Value};

use crate::format::{dotted, shorthand, vector};
use crate::{Command, Failure, GraphArgs, QuiverKind, RepCarrier, Suite};

pub fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Quiver { graph, kind, out } => quiver(&graph, kind, out.json),
        Command::Mutate {
            seed,
            graph,
            coefficient_free,
            at,
        } => mutate(seed.as_deref(), &graph, coefficient_free, &at),
        Command::Clusters {
            graph,
            coefficient_free,
            max_seeds,
            out,
        } => clusters(&graph, coefficient_free, max_seeds, out.json),
        Command::Grcount {
            graph,
            on,
            dim,
            sub,
            primes,
            seed,
            out,
        } => grcount(&graph, on, &dim, sub.as_deref(), primes, seed, out.json),
        Command::Qchar {
            graph,
            w,
            t,
            shorthand,
            seed,
            out,
        } => qchar(&graph, &w, t, shorthand, seed, out.json),
        Command::Decomp { graph, on, dim, seed, out } => decomp(&graph, on, &dim, seed, out.json),
        Command::Verify {
            suite,
            graph,
            max_seeds,
            count,
            max_dim,
            primes,
            seed,
            timing,
            out,
        } => {
            let opts = VerifyOptions {
                max_seeds,
                count,
                max_dim,
                primes,
                seed,
            };
            verify_cmd(suite, &graph, &opts, out.json, timing)
        }
        Command::Serve { host, port, state_dir } => serve(&host, port, state_dir),
    }
}

fn bipartite(args: &GraphArgs) -> Result<BipartiteGraph, Failure> {
    let parts = args.parts.as_deref();
    match &args.graph_file {
        Some(path) => {
            let v: Value = read_json(path)?;
            Ok(BipartiteGraph::new(Graph::from_json(&v)?, parts)?)
        }
        None => Ok(library_bipartite(&args.graph, parts)?),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn quiver(args: &GraphArgs, kind: QuiverKind, json: bool) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let q: Quiver = match kind {
        QuiverKind::Decorated => build_decorated(&bg),
        QuiverKind::X => build_x_quiver(&bg),
        QuiverKind::Z => build_z_quiver(&bg),
        QuiverKind::Sigma => build_sigma_quiver(&bg),
    };
    if json {
        print_json(&json!({
            "parts": { "I0": bg.i0_ids(), "I1": bg.i1().iter().map(|&i| &bg.ids()[i]).collect::<Vec<_>>() },
            "quiver": q.to_json(),
            "matrix": q.to_matrix().to_json(),
        }));
        return Ok(());
    }
    let names: Vec<String> = q
        .vertices()
        .iter()
        .map(|v| if v.frozen { format!("{} (frozen)", v.id) } else { v.id.clone() })
        .collect();
    println!("vertices: {}", names.join(", "));
    println!("I0: {}", bg.i0_ids().join(", "));
    for (s, t, m) in q.arrow_ids() {
        if m == 1 {
            println!("  {s} -> {t}");
        } else {
            println!("  {s} -> {t}  x{m}");
        }
    }
    Ok(())
}

fn initial_seed(bg: &BipartiteGraph, coefficient_free: bool) -> Seed {
    let x = build_x_quiver(bg).to_matrix();
    let m = if coefficient_free { x.principal_block() } else { x };
    Seed::initial(m, &VarNaming::cluster())
}

fn mutate(seed: Option<&Path>, args: &GraphArgs, coefficient_free: bool, at: &[String]) -> Result<(), Failure> {
    let start = match seed {
        Some(path) => Seed::from_json(&read_json(path)?)?,
        None => initial_seed(&bipartite(args)?, coefficient_free),
    };
    let end = start.mutate_path(at)?;
    print_json(&end.to_json());
    Ok(())
}

fn clusters(args: &GraphArgs, coefficient_free: bool, max_seeds: usize, json: bool) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let seed = initial_seed(&bg, coefficient_free);
    let en = enumerate_clusters(&seed, max_seeds)?;
    let variables = en.variables();
    if json {
        print_json(&json!({
            "variables": variables.iter().map(|(text, r)| json!({
                "laurent": text,
                "fraction": r.value.to_fraction(),
                "path": r.path,
                "vertex": r.vertex,
            })).collect::<Vec<_>>(),
            "clusters": en.clusters(),
            "closed": en.closed,
        }));
        return Ok(());
    }
    println!(
        "{} cluster variables, {} clusters{}",
        variables.len(),
        en.seeds.len(),
        if en.closed { "" } else { " (enumeration truncated)" }
    );
    for (_, r) in &variables {
        let path = if r.path.is_empty() { "initial".to_string() } else { format!("μ {}", r.path.join(" ")) };
        println!("  {:<24} {}", path, r.value.to_fraction());
    }
    Ok(())
}

fn carrier(bg: &BipartiteGraph, on: RepCarrier) -> Arc<RepQuiver> {
    let dq = DecoratedQuivers::new(bg);
    match on {
        RepCarrier::Principal => dq.principal,
        RepCarrier::Decorated => dq.decorated,
        RepCarrier::Sigma => dq.sigma,
    }
}

fn check_len(q: &RepQuiver, d: &[usize], what: &str) -> Result<(), Failure> {
    if d.len() != q.len() {
        return Err(Failure::Usage(format!(
            "{what} has {} entries; the quiver has vertices {}",
            d.len(),
            q.vertices().join(",")
        )));
    }
    Ok(())
}

fn grcount(
    args: &GraphArgs,
    on: RepCarrier,
    dim: &[usize],
    sub: Option<&[usize]>,
    primes: Option<Vec<u64>>,
    seed: u64,
    json: bool,
) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let q = carrier(&bg, on);
    check_len(&q, dim, "--dim")?;
    let fixed: Vec<Option<usize>> = match sub {
        Some(v) => {
            check_len(&q, v, "--sub")?;
            v.iter().map(|&x| Some(x)).collect()
        }
        None => vec![None; dim.len()],
    };
    let primes = primes.unwrap_or_else(|| first_primes(primes_needed(dim)));
    let cfg = SamplingConfig::default();
    let sampler = GenericSampler::new(&q, dim, &cfg, &mut rng_for(seed, "grcount"))?;
    let polys = counting_polynomials(|p, rng| sampler.sample(p, rng), &fixed, &primes, 1, seed, DEFAULT_BUDGET)?;
    if json {
        let rows: Vec<Value> = polys
            .iter()
            .flat_map(|(v, c)| c.samples.iter().map(move |(p, n)| json!({ "v": v, "prime": p, "count": n.to_string() })))
            .collect();
        let fits: Vec<Value> = polys
            .iter()
            .map(|(v, c)| json!({ "v": v, "polynomial": c.to_string(), "euler": c.euler_number().to_string() }))
            .collect();
        print_json(&json!({ "dim": dim, "vertices": q.vertices(), "rows": rows, "polynomials": fits }));
        return Ok(());
    }
    println!("v,prime,count");
    for (v, c) in &polys {
        for (p, n) in &c.samples {
            println!("\"{}\",{p},{n}", vector(v));
        }
    }
    println!();
    for (v, c) in &polys {
        println!("{:<12} {}", vector(v), c);
    }
    Ok(())
}

fn qchar(args: &GraphArgs, w: &str, t: bool, short: bool, seed: u64, json: bool) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let w = DecoratedDim::parse_pairs(&bg, w)?;
    let engine = CharacterEngine::new(&bg, seed);
    let chi = engine.character(&w)?;
    let value = chi.evaluate(if t { TMode::WithT } else { TMode::AtOne });
    if json {
        print_json(&json!({
            "w": w,
            "character": value.to_string(),
            "terms": chi.terms.iter().map(|term| json!({
                "v": term.v,
                "counting": term.counting.to_string(),
                "euler": term.counting.euler_number().to_string(),
                "shift": term.shift,
                "monomial": term.monomial.to_string(),
            })).collect::<Vec<_>>(),
        }));
        return Ok(());
    }
    let mut pairs: Vec<String> = w.w.iter().zip(&w.wf).map(|(a, b)| format!("{a}:{b}")).collect();
    while pairs.len() > 1 && pairs.last().map(String::as_str) == Some("0:0") {
        pairs.pop();
    }
    let text = dotted(&value);
    let text = if short { shorthand(&text) } else { text };
    println!("χ({})_{{≤2}} = {text}", pairs.join(","));
    Ok(())
}

fn decomp(args: &GraphArgs, on: RepCarrier, dim: &[usize], seed: u64, json: bool) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let q = carrier(&bg, on);
    check_len(&q, dim, "--dim")?;
    let cfg = SamplingConfig::default();
    let mut rng = rng_for(seed, "decomp");
    let factors = canonical_decomposition(&q, dim, &cfg, &mut rng)?;
    let described: Vec<(Vec<usize>, bool)> = factors
        .iter()
        .map(|f| (f.clone(), is_real_schur_root(&q, f, &cfg, &mut rng)))
        .collect();
    let schur = is_schur_root(&q, dim, &cfg, &mut rng);
    if json {
        print_json(&json!({
            "dim": dim,
            "vertices": q.vertices(),
            "schur_root": schur,
            "factors": described.iter().map(|(f, real)| json!({ "dim": f, "real": real })).collect::<Vec<_>>(),
        }));
        return Ok(());
    }
    let parts: Vec<String> = described
        .iter()
        .map(|(f, real)| format!("{}{}", vector(f), if *real { "" } else { " imaginary" }))
        .collect();
    println!("{} = {}", vector(dim), parts.join(" + "));
    Ok(())
}

struct VerifyOptions {
    max_seeds: usize,
    count: usize,
    max_dim: usize,
    primes: Vec<u64>,
    seed: u64,
}

fn dims_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|d| {
                (0..=max).map(move |x| {
                    let mut e = d.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out
}

fn suite_reports(suite: Suite, bg: &BipartiteGraph, o: &VerifyOptions) -> Vec<Report> {
    match suite {
        Suite::TSystem => vec![verify::verify_t_system(bg, o.seed)],
        Suite::Kr => vec![verify::verify_kr_characters(bg, o.seed)],
        Suite::Hl => vec![verify::verify_hl_correspondence(bg, o.max_seeds, o.seed)],
        Suite::CommonCluster => vec![verify::verify_common_cluster(bg, o.count, o.max_seeds, o.seed)],
        Suite::OddVanishing => {
            let dq = DecoratedQuivers::new(bg);
            let dims = dims_up_to(bg.len(), o.max_dim);
            let label = bg.ids().join(",");
            vec![verify::verify_odd_vanishing(&dq.principal, &label, &dims, &o.primes, &SamplingConfig::default(), o.seed)]
        }
        Suite::Factorizations => {
            let ws = verify::random_dims(bg.len(), o.count, 2, o.seed);
            vec![verify::verify_factorizations(bg, &ws, o.seed)]
        }
        Suite::Positivity => vec![verify::verify_positivity(bg, o.max_seeds, o.seed)],
        Suite::Kronecker => vec![verify::verify_kronecker(&o.primes, o.seed)],
        Suite::All => [
            Suite::TSystem,
            Suite::Kr,
            Suite::Hl,
            Suite::CommonCluster,
            Suite::OddVanishing,
            Suite::Factorizations,
            Suite::Positivity,
        ]
        .into_iter()
        .flat_map(|s| suite_reports(s, bg, o))
        .collect(),
    }
}

fn verify_cmd(suite: Suite, args: &GraphArgs, o: &VerifyOptions, json: bool, timing: bool) -> Result<(), Failure> {
    let bg = bipartite(args)?;
    let reports = suite_reports(suite, &bg, o);
    if json {
        let docs: Vec<Value> = reports
            .iter()
            .map(|r| if timing { r.to_json_with_timing() } else { r.to_json() })
            .collect();
        print_json(&if docs.len() == 1 { docs[0].clone() } else { Value::Array(docs) });
    } else {
        for r in &reports {
            print!("{}", r.table());
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
        }
    }
    if reports.iter().all(Report::passed) {
        Ok(())
    } else {
        Err(Failure::Suite)
    }
}

fn serve(host: &str, port: u16, state_dir: Option<std::path::PathBuf>) -> Result<(), Failure> {
    let addr: SocketAddr = format!("{host}:{port}")
        .parse()
        .map_err(|e| Failure::Usage(format!("bad address {host}:{port}: {e}")))?;
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    eprintln!("cq explorer listening on http://{addr}");
    rt.block_on(cq_explorer::serve(addr, state_dir))?;
    Ok(())
}
