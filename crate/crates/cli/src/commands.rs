use std::path::Path;
use std::time::Instant;

use pconn::approx::approx_p_edge_cvc;
use pconn::fpt_pcvc::solve_p_cvc_fpt;
use pconn::fpt_pecvc::solve_p_ecvc_fpt_report;
use pconn::gomory_hu::build_gomory_hu;
use pconn::instgen;
use pconn::io::{parse_graph, parse_vertex_list, write_graph};
use pconn::kernel::{self, KernelResult};
use pconn::oracle::exact_opt;
use pconn::{Graph, Variant, Vertex};
use serde_json::{json, Value};

use crate::report::{checked, emit, load_graph, one_based, out, read_text, write_text, CliError, CliResult, Status, Verdict, SCHEMA};
use crate::{Algo, GenKind, GraphInput, KernelArgs, Problem};

/// The brute-force oracle packs vertex sets into 128-bit masks.
const BRUTE_MAX_N: usize = 128;

fn need_p(p: usize) -> Result<(), CliError> {
    if p == 0 {
        return Err(CliError::Usage("--p must be at least 1".into()));
    }
    Ok(())
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn u128_json(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn solve(input: &GraphInput, problem: Problem, algo: Algo, k: Option<usize>, p: usize, seed: u64) -> CliResult {
    need_p(p)?;
    let g = load_graph(input.graph.as_deref())?;
    let variant = problem.variant();
    let budget = k.unwrap_or(g.n());
    let start = Instant::now();
    let mut stats = json!({});
    // approximate answers may exceed the budget; exact ones may not
    let mut checked_budget = Some(budget);
    let solution: Option<Vec<Vertex>> = match (algo, problem) {
        (Algo::Fpt, Problem::Pcvc) => solve_p_cvc_fpt(&g, budget, p),
        (Algo::Fpt, Problem::Pecvc) => {
            let r = solve_p_ecvc_fpt_report(&g, budget, p);
            stats = json!({
                "k_used": r.k_used,
                "slots_touched": r.stats.slots_touched,
                "max_slot_size": r.stats.max_slot_size,
                "reductions": r.stats.reductions,
            });
            r.solution().map(<[Vertex]>::to_vec)
        }
        (Algo::Brute, _) => {
            if g.n() > BRUTE_MAX_N {
                return Err(CliError::Usage(format!("brute force handles at most {BRUTE_MAX_N} vertices")));
            }
            let r = exact_opt(&g, p, variant, budget);
            stats = json!({ "examined": r.examined });
            r.solution().map(<[Vertex]>::to_vec)
        }
        (Algo::Approx, Problem::Pecvc) => {
            checked_budget = None;
            approx_p_edge_cvc(&g, p)?.map(|t| {
                stats = json!({ "seed_size": t.seed.len(), "iterations": t.iterations() });
                t.solution
            })
        }
        (Algo::Approx, Problem::Pcvc) => {
            return Err(CliError::Usage("--algo approx supports only --problem pecvc".into()));
        }
    };
    let elapsed_ms = millis(start);
    let verification = match &solution {
        Some(s) => match checked(&g, s, p, variant, checked_budget) {
            Ok(v) => Some(v.to_json()),
            Err(status) => return Ok(status),
        },
        None => None,
    };
    emit(&json!({
        "schema": SCHEMA,
        "command": "solve",
        "problem": format!("{problem:?}").to_lowercase(),
        "algo": format!("{algo:?}").to_lowercase(),
        "variant": variant,
        "p": p,
        "k": budget,
        "seed": seed,
        "n": g.n(),
        "m": g.m(),
        "feasible": solution.is_some(),
        "within_budget": solution.as_ref().map(|s| s.len() <= budget),
        "solution": solution.as_deref().map(one_based),
        "size": solution.as_ref().map(Vec::len),
        "verification": verification,
        "stats": stats,
        "elapsed_ms": elapsed_ms,
    }));
    Ok(Status::Ok)
}

pub fn approx(input: &GraphInput, p: usize, seed: u64) -> CliResult {
    need_p(p)?;
    let g = load_graph(input.graph.as_deref())?;
    let start = Instant::now();
    let trace = approx_p_edge_cvc(&g, p)?;
    let elapsed_ms = millis(start);
    let verification = match &trace {
        Some(t) => match checked(&g, &t.solution, p, Variant::Edge, None) {
            Ok(v) => Some(v.to_json()),
            Err(status) => return Ok(status),
        },
        None => None,
    };
    emit(&json!({
        "schema": SCHEMA,
        "command": "approx",
        "p": p,
        "seed": seed,
        "feasible": trace.is_some(),
        "solution": trace.as_ref().map(|t| one_based(&t.solution)),
        "size": trace.as_ref().map(|t| t.solution.len()),
        "seed_size": trace.as_ref().map(|t| t.seed.len()),
        "iterations": trace.as_ref().map(|t| t.iterations()),
        "verification": verification,
        "elapsed_ms": elapsed_ms,
    }));
    Ok(Status::Ok)
}

fn run_kernel(g: &Graph, a: &KernelArgs) -> Result<KernelResult, CliError> {
    need_p(a.p)?;
    Ok(kernel::reduce(g, a.k, a.epsilon, a.p, a.variant)?)
}

pub fn kernel(input: &GraphInput, a: &KernelArgs, out: Option<&Path>, seed: u64) -> CliResult {
    let g = load_graph(input.graph.as_deref())?;
    let start = Instant::now();
    let kr = run_kernel(&g, a)?;
    let elapsed_ms = millis(start);
    let text = write_graph(&kr.g_prime);
    if let Some(path) = out {
        write_text(path, &text)?;
    }
    emit(&json!({
        "schema": SCHEMA,
        "command": "kernel",
        "p": a.p,
        "k": a.k,
        "epsilon": a.epsilon.to_string(),
        "epsilon_used": kr.epsilon_used.to_string(),
        "variant": kr.variant,
        "seed": seed,
        "n": g.n(),
        "n_prime": kr.g_prime.n(),
        "m_prime": kr.g_prime.m(),
        "k_prime": kr.k_prime,
        "size_bound": u128_json(kernel::size_bound(a.k, a.epsilon, a.p)),
        "H": one_based(&kr.h),
        "R": one_based(&kr.r),
        "L": one_based(&kr.l),
        "kept": one_based(&kr.kept),
        "sentinel": kr.sentinel,
        "passthrough": kr.passthrough,
        "graph": text,
        "elapsed_ms": elapsed_ms,
    }));
    Ok(Status::Ok)
}

pub fn lift(input: &GraphInput, a: &KernelArgs, solution: &Path, seed: u64) -> CliResult {
    let g = load_graph(input.graph.as_deref())?;
    let s_prime = parse_vertex_list(&read_text(Some(solution))?)?;
    let kr = run_kernel(&g, a)?;
    let reduced_ok = Verdict::check(&kr.g_prime, &s_prime, a.p, a.variant, None).ok();
    let lifted = kernel::lift_solution(&g, &kr, &s_prime, a.p, a.variant);
    let feasible = !lifted.is_empty();
    let verification = if feasible {
        match checked(&g, &lifted, a.p, a.variant, None) {
            Ok(v) => Some(v.to_json()),
            Err(status) => return Ok(status),
        }
    } else {
        None
    };
    emit(&json!({
        "schema": SCHEMA,
        "command": "lift",
        "p": a.p,
        "k": a.k,
        "epsilon": a.epsilon.to_string(),
        "variant": a.variant,
        "seed": seed,
        "k_prime": kr.k_prime,
        "sentinel": kr.sentinel,
        "reduced_solution_valid": reduced_ok,
        "feasible": feasible,
        "solution": feasible.then(|| one_based(&lifted)),
        "size": feasible.then_some(lifted.len()),
        "verification": verification,
    }));
    Ok(Status::Ok)
}

pub fn ghtree(input: &GraphInput) -> CliResult {
    let g = load_graph(input.graph.as_deref())?;
    out(&build_gomory_hu(&g)?.to_text());
    Ok(Status::Ok)
}

pub fn gen(kind: &GenKind, seed: u64) -> CliResult {
    let text = match kind {
        GenKind::Random { n, prob } => {
            let g = instgen::random_instance(*n, *prob, seed)?;
            format!("c random n={n} prob={prob} seed={seed}\n{}", write_graph(&g))
        }
        GenKind::Planted { core, fringe, p } => {
            let (g, bound) = instgen::planted_instance(*core, *fringe, *p, seed)?;
            format!(
                "c planted core={core} fringe={fringe} p={p} seed={seed}\nc bound {bound}\n{}",
                write_graph(&g)
            )
        }
        GenKind::FromCvc { input, k, p } => {
            need_p(*p)?;
            let g = load_graph(input.graph.as_deref())?;
            let (h, budget) = instgen::cvc_to_pcvc(&g, *k, *p);
            format!("c from-cvc k={k} p={p}\nc budget {budget}\n{}", write_graph(&h))
        }
        GenKind::FromRbds { rbds, p } => {
            let inst = instgen::parse_rbds(&read_text(rbds.as_deref())?)?;
            let (h, budget) = instgen::rbds_to_pecvc(&inst, *p)?;
            format!("c from-rbds p={p}\nc budget {budget}\n{}", write_graph(&h))
        }
        GenKind::Rbds { reds, blues, prob, k } => {
            let inst = instgen::random_rbds(*reds, *blues, *prob, *k, seed)?;
            format!("c rbds seed={seed}\n{}", instgen::write_rbds(&inst))
        }
    };
    // generated graphs must read back
    if !matches!(kind, GenKind::Rbds { .. }) {
        parse_graph(&text)?;
    }
    out(&text);
    Ok(Status::Ok)
}

pub fn verify(
    input: &GraphInput,
    solution: &Path,
    p: usize,
    variant: Variant,
    k: Option<usize>,
    seed: u64,
) -> CliResult {
    let g = load_graph(input.graph.as_deref())?;
    let set = parse_vertex_list(&read_text(Some(solution))?)?;
    let v = Verdict::check(&g, &set, p, variant, k);
    emit(&json!({
        "schema": SCHEMA,
        "command": "verify",
        "p": p,
        "k": k,
        "variant": variant,
        "seed": seed,
        "solution": one_based(&set),
        "size": set.len(),
        "verification": v.to_json(),
    }));
    Ok(if v.ok() { Status::Ok } else { Status::Failed })
}
