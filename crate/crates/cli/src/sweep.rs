//! Cross-validation of the fast solvers against the brute-force oracle.

use std::path::Path;

use pconn::approx::approx_p_edge_cvc;
use pconn::fpt_pcvc::solve_p_cvc_fpt;
use pconn::fpt_pecvc::solve_p_ecvc_fpt;
use pconn::instgen::random_instance;
use pconn::io::write_graph;
use pconn::kernel::{self, Epsilon};
use pconn::oracle::exact_opt;
use pconn::{Graph, Variant, Vertex};
use serde_json::json;

use crate::report::{emit, write_text, CliError, CliResult, Status, Verdict, SCHEMA};

const PROBS: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
const NMAX_LIMIT: usize = 16;

pub struct Config {
    pub p: usize,
    pub nmax: usize,
    pub count: usize,
    pub variant: Variant,
    pub epsilon: Epsilon,
    pub seed: u64,
}

#[derive(Default)]
struct Tally {
    feasible: usize,
    fpt: usize,
    approx: usize,
    kernel: usize,
}

/// Instance `i` of the corpus: sizes cycle through `p+1..=nmax`, densities
/// through `PROBS`.
fn instance(c: &Config, i: usize) -> pconn::Result<Graph> {
    let span = c.nmax - c.p;
    let n = c.p + 1 + i % span;
    let prob = PROBS[(i / span) % PROBS.len()];
    random_instance(n, prob, c.seed.wrapping_mul(1_000_003).wrapping_add(i as u64))
}

fn fpt(g: &Graph, k: usize, p: usize, variant: Variant) -> Option<Vec<Vertex>> {
    match variant {
        Variant::Vertex => solve_p_cvc_fpt(g, k, p),
        Variant::Edge => solve_p_ecvc_fpt(g, k, p),
    }
}

/// Runs every check on `g`; `Err` describes the first disagreement.
fn check(g: &Graph, c: &Config, tally: &mut Tally) -> Result<(), String> {
    let (p, variant) = (c.p, c.variant);
    let opt = exact_opt(g, p, variant, g.n()).opt();
    if opt.is_some() {
        tally.feasible += 1;
    }

    match opt {
        Some(o) => {
            let s = fpt(g, o, p, variant).ok_or(format!("fpt found nothing with k = opt = {o}"))?;
            if s.len() != o || !Verdict::check(g, &s, p, variant, Some(o)).ok() {
                return Err(format!("fpt returned {s:?}, not a valid cover of size {o}"));
            }
            if o > 0 {
                if let Some(s) = fpt(g, o - 1, p, variant) {
                    return Err(format!("fpt returned {s:?} below the optimum {o}"));
                }
            }
        }
        None => {
            if let Some(s) = fpt(g, g.n(), p, variant) {
                return Err(format!("fpt returned {s:?} on an infeasible instance"));
            }
        }
    }
    tally.fpt += 1;

    if variant == Variant::Edge {
        let trace = approx_p_edge_cvc(g, p).map_err(|e| format!("approx failed: {e}"))?;
        match (trace, opt) {
            (None, None) => {}
            (Some(t), Some(o)) => {
                let y = t.solution.len();
                if !Verdict::check(g, &t.solution, p, variant, None).ok() {
                    return Err(format!("approx returned invalid {:?}", t.solution));
                }
                if y > 2 * (p + 1) * o || y > (p + 1) * t.seed.len() {
                    return Err(format!("approx size {y} breaks its bound (opt {o}, seed {})", t.seed.len()));
                }
            }
            (t, o) => return Err(format!("approx feasibility {} but opt {o:?}", t.is_some())),
        }
        tally.approx += 1;
    }

    let k = opt.unwrap_or(g.n()).max(1);
    let kr = kernel::reduce(g, k, c.epsilon, p, variant).map_err(|e| format!("kernel failed: {e}"))?;
    let reduced = exact_opt(&kr.g_prime, p, variant, kr.g_prime.n());
    let lifted = kernel::lift_solution(g, &kr, reduced.solution().unwrap_or(&[]), p, variant);
    match opt {
        None if !lifted.is_empty() => return Err(format!("lift returned {lifted:?} on an infeasible instance")),
        None => {}
        Some(o) => {
            if !Verdict::check(g, &lifted, p, variant, None).ok() {
                return Err(format!("lifted solution {lifted:?} is invalid"));
            }
            let (num, den) = (*c.epsilon.numer() as u128, *c.epsilon.denom() as u128);
            if lifted.len() as u128 * den > (num + den) * o as u128 {
                return Err(format!("lifted size {} exceeds (1+eps) * {o}", lifted.len()));
            }
        }
    }
    tally.kernel += 1;
    Ok(())
}

/// Deletes vertices one at a time while `fails` keeps holding, until no single
/// deletion does.
pub fn shrink(g: &Graph, fails: &mut dyn FnMut(&Graph) -> bool) -> Graph {
    let mut cur = g.relabeled_identity();
    'outer: loop {
        for v in cur.vertices() {
            let smaller = cur.without(&[v]).relabeled_identity();
            if fails(&smaller) {
                cur = smaller;
                continue 'outer;
            }
        }
        return cur;
    }
}

pub fn run(c: &Config, dump: Option<&Path>) -> CliResult {
    if c.p == 0 {
        return Err(CliError::Usage("--p must be at least 1".into()));
    }
    if c.nmax <= c.p || c.nmax > NMAX_LIMIT {
        return Err(CliError::Usage(format!(
            "--nmax must lie in {}..={NMAX_LIMIT}",
            c.p + 1
        )));
    }
    let mut tally = Tally::default();
    for i in 0..c.count {
        let g = instance(c, i)?;
        let Err(reason) = check(&g, c, &mut tally) else {
            continue;
        };
        let small = shrink(&g, &mut |h| check(h, c, &mut Tally::default()).is_err());
        let small_reason = check(&small, c, &mut Tally::default()).expect_err("shrink keeps the failure");
        let text = write_graph(&small);
        if let Some(path) = dump {
            write_text(path, &text)?;
        }
        eprintln!("pconn: sweep mismatch on instance {i}: {reason}");
        emit(&json!({
            "schema": SCHEMA,
            "command": "sweep",
            "p": c.p,
            "variant": c.variant,
            "seed": c.seed,
            "ok": false,
            "mismatch": {
                "instance": i,
                "reason": reason,
                "original_n": g.n(),
                "shrunk_reason": small_reason,
                "n": small.n(),
                "m": small.m(),
                "graph": text,
            },
        }));
        return Ok(Status::Failed);
    }
    emit(&json!({
        "schema": SCHEMA,
        "command": "sweep",
        "p": c.p,
        "variant": c.variant,
        "nmax": c.nmax,
        "epsilon": c.epsilon.to_string(),
        "seed": c.seed,
        "ok": true,
        "instances": c.count,
        "feasible": tally.feasible,
        "checked": { "fpt": tally.fpt, "approx": tally.approx, "kernel": tally.kernel },
    }));
    Ok(Status::Ok)
}
