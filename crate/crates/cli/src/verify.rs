use std::collections::BTreeSet;
use std::ops::Range;

use clap::ValueEnum;
use happy_core::cluster::{find_cluster_modulator, is_cluster_graph, solve_mhv_cluster};
use happy_core::cwexpr::{eval, solve_nmc_cw};
use happy_core::gadgets::{gen_crbds_to_mhv, gen_random_crbds, gen_random_rmis, gen_rmis_to_mhv, GraphClass};
use happy_core::kernel::{cubic_kernel, linear_kernel};
use happy_core::multiway::{gmc_compress_to_mhv, mhv_to_gmc};
use happy_core::oracles::{brute_crbds, brute_gmc, brute_mhv, brute_nmc, brute_rmis, search_mhv, OracleConfig};
use happy_core::{par, potentially_happy_sets, sample, Execution, Vertex};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// Cluster FPT solver against brute-force MHV.
    Cluster,
    /// Happy count against |H| minus the minimum group cut.
    Gmc,
    /// Linear, cubic and compression kernels keep every yes/no answer.
    Kernels,
    /// Clique-width cut DP against brute-force node multiway cut.
    Nmc,
    /// Random source instances against their MHV gadgets.
    Gadgets,
    /// Cluster modulator minimality on random graphs.
    Modulator,
}

pub fn parse_seeds(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected start..end, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..b)
}

type Check = Result<Option<String>, happy_core::Error>;

fn mismatch(ok: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(what)
}

fn cluster(rng: &mut ChaCha8Rng, cfg: &OracleConfig) -> Check {
    let n = rng.gen_range(2..=10);
    let d = rng.gen_range(0..=4.min(n));
    let ell = rng.gen_range(1..=4);
    let g = sample::near_cluster(rng, n, d);
    let p = rng.gen_range(0.2..0.7);
    let g = sample::precolor(rng, g, ell, p);
    let fpt = solve_mhv_cluster(&g, None, Execution::Sequential)?.value;
    let brute = brute_mhv(&g, cfg)?.value;
    Ok(mismatch(fpt == brute, || format!("fpt {fpt}, brute {brute}")))
}

fn gmc(rng: &mut ChaCha8Rng, cfg: &OracleConfig) -> Check {
    let n = rng.gen_range(1..=9);
    let ell = rng.gen_range(1..=4);
    let g = sample::random_instance(rng, n, ell);
    let best = brute_mhv(&g, cfg)?.value;
    let h = potentially_happy_sets(&g).all.len();
    let cut = brute_gmc(&mhv_to_gmc(&g, 0)?, cfg)?.size;
    Ok(mismatch(best + cut == h, || format!("happy {best}, |H| {h}, cut {cut}")))
}

fn kernels(rng: &mut ChaCha8Rng, cfg: &OracleConfig) -> Check {
    let n = rng.gen_range(2..=9);
    let d = rng.gen_range(0..=3.min(n));
    let ell = rng.gen_range(1..=4);
    let g = sample::near_clique(rng, n, d);
    let p = rng.gen_range(0.1..0.6);
    let g = sample::precolor(rng, g, ell, p);
    let s: BTreeSet<Vertex> = (1..=d).collect();
    let best = brute_mhv(&g, cfg)?.value;
    let lin = search_mhv(&linear_kernel(&g, 0, &s)?.0, cfg)?.value;
    let comp = search_mhv(&gmc_compress_to_mhv(&g, 0)?.0, cfg)?.value;
    for k in 0..=n {
        if (best >= k) != (lin >= k) || (best >= k) != (comp >= k) {
            return Ok(Some(format!("k {k}: optimum {best}, linear {lin}, compressed {comp}")));
        }
        let trace = cubic_kernel(&g, k, None)?;
        let cubic = search_mhv(&trace.graph, cfg)?.value as i64;
        if (best >= k) != (cubic >= trace.k) {
            return Ok(Some(format!("k {k}: optimum {best}, cubic {cubic} against k' {}", trace.k)));
        }
    }
    Ok(None)
}

fn nmc(rng: &mut ChaCha8Rng, cfg: &OracleConfig) -> Check {
    let n = rng.gen_range(1..=8);
    let w = rng.gen_range(1..=3);
    let expr = sample::random_expression(rng, n, w);
    let t = rng.gen_range(0..=3.min(n));
    let terminals: BTreeSet<Vertex> = (1..=n).choose_multiple(rng, t).into_iter().collect();
    let dp = solve_nmc_cw(&expr, &terminals, Execution::Sequential)?.min_cut;
    let lg = eval(&expr);
    let mapped = terminals.iter().map(|&t| lg.index_of(t).expect("terminal is a vertex")).collect();
    let brute = brute_nmc(&lg.graph, &mapped, cfg)?.cost;
    Ok(mismatch(dp == brute, || format!("dp {dp:?}, brute {brute:?}")))
}

fn gadgets(rng: &mut ChaCha8Rng, cfg: &OracleConfig) -> Check {
    let seed = rng.gen();
    let (k, q) = (rng.gen_range(2..=3), 2);
    let inst = gen_random_rmis(k, q, rng.gen_range(0..=1), seed)?;
    let red = gen_rmis_to_mhv(&inst)?;
    let source = brute_rmis(&inst, cfg)?.is_some();
    let target = search_mhv(&red.graph, cfg)?.value >= red.k;
    if source != target || !GraphClass::Paths3.recognizes(&red.without_selectors()) {
        return Ok(Some(format!("rmis: source {source}, target {target}")));
    }
    let inst = gen_random_crbds(rng.gen_range(1..=2), 2, rng.gen_range(1..=3), 0.4, seed)?;
    let red = gen_crbds_to_mhv(&inst)?;
    let source = brute_crbds(&inst, cfg)?.is_some();
    let target = search_mhv(&red.graph, cfg)?.value >= red.k;
    let stars = GraphClass::Stars.recognizes(&red.without_selectors());
    Ok(mismatch(source == target && stars, || format!("crbds: source {source}, target {target}")))
}

fn modulator(rng: &mut ChaCha8Rng, _cfg: &OracleConfig) -> Check {
    let n = rng.gen_range(1..=8);
    let p = rng.gen_range(0.2..0.95);
    let g = sample::gnp(rng, n, p);
    let s = find_cluster_modulator(&g);
    let best = (0u32..1 << n)
        .filter(|mask| {
            let removed: BTreeSet<Vertex> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            is_cluster_graph(&g, &removed)
        })
        .map(u32::count_ones)
        .min()
        .unwrap_or(0) as usize;
    Ok(mismatch(is_cluster_graph(&g, &s) && s.len() == best, || format!("found {s:?}, optimum {best}")))
}

pub fn run(suite: Suite, seeds: Range<u64>, cfg: &OracleConfig) -> Outcome {
    let check: fn(&mut ChaCha8Rng, &OracleConfig) -> Check = match suite {
        Suite::Cluster => cluster,
        Suite::Gmc => gmc,
        Suite::Kernels => kernels,
        Suite::Nmc => nmc,
        Suite::Gadgets => gadgets,
        Suite::Modulator => modulator,
    };
    let inner = OracleConfig { execution: Execution::Sequential, ..*cfg };
    let start = seeds.start;
    let len = (seeds.end - seeds.start) as usize;
    let results = par::map_indexed(cfg.execution, len, |i| {
        let seed = start + i as u64;
        check(&mut ChaCha8Rng::seed_from_u64(seed), &inner)
    });
    let mut failed = 0;
    for (i, result) in results.into_iter().enumerate() {
        let seed = start + i as u64;
        match result {
            Ok(None) => println!("seed {seed} ok"),
            Ok(Some(what)) => {
                failed += 1;
                println!("seed {seed} mismatch: {what}");
            }
            Err(e) => return Err(Failure::from(e)),
        }
    }
    println!("VERDICT {} OPT {}", if failed == 0 { "yes" } else { "no" }, len - failed);
    Ok(failed == 0)
}
