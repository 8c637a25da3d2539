//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion
//! and exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use happy_core::cluster::{find_cluster_modulator, is_cluster_graph, solve_mhv_cluster};
use happy_core::cwexpr::{cut_states, eval, solve_nmc_cw};
use happy_core::gadgets::{
    gen_crbds_to_mhe, gen_crbds_to_mhv, gen_random_crbds, gen_random_rmis, gen_rmis_to_mhe,
    gen_rmis_to_mhv, GraphClass, PathVariant, Reduction, StarVariant,
};
use happy_core::io::InstanceFile;
use happy_core::kernel::{
    clique_happy_bound, clique_modulator_2approx, cubic_kernel, is_clique_modulator,
    linear_kernel, min_clique_modulator,
};
use happy_core::multiway::{gmc_compress_to_mhv, mhv_to_gmc, GmcInstance};
use happy_core::oracles::{
    brute_crbds, brute_gmc, brute_mhv, brute_nmc, brute_rmis, cover_mhe, search_mhv, OracleConfig,
};
use happy_core::{potentially_happy_sets, Execution, Graph, Vertex};
use rand::seq::IteratorRandom;
use rand::Rng;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn binom2(s: usize) -> usize {
    s * s.saturating_sub(1) / 2
}

fn fpt_vs_oracle() -> Outcome {
    let mut out = Outcome::new();
    let cfg = OracleConfig::default();
    let start = Instant::now();
    for seed in 0..200 {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=10);
        let d = rng.gen_range(0..=4.min(n));
        let ell = rng.gen_range(1..=4);
        let g = common::near_cluster(&mut rng, n, d);
        let p = rng.gen_range(0.2..0.7);
        let g = common::precolor(&mut rng, g, ell, p);
        let fpt = solve_mhv_cluster(&g, None, Execution::default()).unwrap().value;
        let brute = brute_mhv(&g, &cfg).unwrap().value;
        out.check(fpt == brute, || format!("seed {seed}: fpt {fpt}, brute {brute}"));
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= Duration::from_secs(60), || format!("took {elapsed:?}"));
    out.notes.push(format!("{elapsed:.2?}"));
    out
}

fn gmc_correspondence() -> Outcome {
    let mut out = Outcome::new();
    let cfg = OracleConfig::default();
    for seed in 0..200 {
        let mut rng = common::rng(1000 + seed);
        let n = rng.gen_range(1..=9);
        let ell = rng.gen_range(1..=4);
        let g = common::random_instance(&mut rng, n, ell);
        let best = brute_mhv(&g, &cfg).unwrap().value;
        let h = potentially_happy_sets(&g).all.len();
        let cut = brute_gmc(&mhv_to_gmc(&g, 0).unwrap(), &cfg).unwrap().size;
        out.check(best + cut == h, || format!("seed {seed}: happy {best}, |H| {h}, cut {cut}"));
    }
    out
}

fn kernels() -> Outcome {
    let mut out = Outcome::new();
    let cfg = OracleConfig::default();
    for seed in 0..100 {
        let mut rng = common::rng(2000 + seed);
        let n = rng.gen_range(2..=9);
        let d = rng.gen_range(0..=3.min(n));
        let ell = rng.gen_range(1..=4);
        let g = common::near_clique(&mut rng, n, d);
        let p = rng.gen_range(0.1..0.6);
        let g = common::precolor(&mut rng, g, ell, p);
        let s: BTreeSet<Vertex> = (1..=d).collect();
        let best = brute_mhv(&g, &cfg).unwrap().value;
        let h = potentially_happy_sets(&g).all.len();

        let (lin, _) = linear_kernel(&g, 0, &s).unwrap();
        let lin_best = search_mhv(&lin, &cfg).unwrap().value;
        let lin_bound = 2 * h + 3 * s.len() + 3 * binom2(s.len()) + 2;
        out.check(lin.n() <= lin_bound, || format!("seed {seed}: linear size {} > {lin_bound}", lin.n()));

        let (comp, _) = gmc_compress_to_mhv(&g, 0).unwrap();
        let comp_best = search_mhv(&comp, &cfg).unwrap().value;
        let comp_bound = h * h.saturating_sub(1) / 2 + h + 2;
        out.check(comp.n() <= comp_bound, || format!("seed {seed}: compressed size {} > {comp_bound}", comp.n()));

        for k in 0..=n {
            out.check((best >= k) == (lin_best >= k), || format!("seed {seed} k {k}: linear"));
            out.check((best >= k) == (comp_best >= k), || format!("seed {seed} k {k}: compression"));
            let trace = cubic_kernel(&g, k, None).unwrap();
            let dd = trace.d();
            let bound = dd * dd + dd * (dd + 1) * (dd + 1);
            out.check(bound == clique_happy_bound(dd) && trace.clique_happy <= bound, || {
                format!("seed {seed} k {k}: |C ∩ H| {} > {bound}", trace.clique_happy)
            });
            let cubic_best = search_mhv(&trace.graph, &cfg).unwrap().value as i64;
            out.check((best >= k) == (cubic_best >= trace.k), || {
                format!("seed {seed} k {k}: cubic kept k' {} with optimum {cubic_best}", trace.k)
            });
        }
    }
    out
}

fn nmc_dp() -> Outcome {
    let mut out = Outcome::new();
    let cfg = OracleConfig::default();
    let (mut raw_max, mut projected_max) = (0usize, 0usize);
    let mut raw_over = 0usize;
    for seed in 0..100 {
        let mut rng = common::rng(3000 + seed);
        let n = rng.gen_range(1..=8);
        let w = rng.gen_range(1..=3);
        let expr = common::random_expression(&mut rng, n, w);
        let t = rng.gen_range(0..=3.min(n));
        let terminals: BTreeSet<Vertex> = (1..=n).choose_multiple(&mut rng, t).into_iter().collect();
        let dp = solve_nmc_cw(&expr, &terminals, Execution::default()).unwrap();
        let lg = eval(&expr);
        let mapped = terminals.iter().map(|&t| lg.index_of(t).unwrap()).collect();
        let brute = brute_nmc(&lg.graph, &mapped, &cfg).unwrap().cost;
        out.check(dp.min_cut == brute, || format!("seed {seed}: dp {:?}, brute {brute:?}", dp.min_cut));

        let w = expr.width();
        let bound = (w + 3).pow(w as u32);
        let projected = cut_states(&expr, &terminals).iter().map(|t| t.len()).max().unwrap_or(0);
        out.check(projected <= bound, || format!("seed {seed}: {projected} label-type states > {bound}"));
        raw_max = raw_max.max(dp.max_states);
        projected_max = projected_max.max(projected);
        if dp.max_states > bound {
            raw_over += 1;
        }
    }
    out.notes.push(format!("max label-type states {projected_max}"));
    out.notes.push(format!("max component states {raw_max}, over (w+3)^w on {raw_over} expressions"));
    out
}

fn rmis_formula(inst: &happy_core::source::RmisInstance, variant: Option<PathVariant>) -> usize {
    let (n, m, k, r) = (inst.graph().n(), inst.graph().edge_count(), inst.k(), inst.r());
    match variant {
        None => k * r,
        Some(PathVariant::Path) => k * r + (m + k * r) + (3 * k + 2 * n) * m,
        Some(PathVariant::Triangle) => k * r + (m + k * r) + (3 * k + 2 * n) * m + n * m,
    }
}

fn gadget_equivalence(generated: &mut Vec<(GraphClass, Reduction)>) -> Outcome {
    let mut out = Outcome::new();
    let cfg = OracleConfig::with_budget(1 << 30);
    let rmis = common::all_rmis(6);
    for (i, inst) in rmis.iter().enumerate() {
        let yes = brute_rmis(inst, &cfg).unwrap().is_some();
        let red = gen_rmis_to_mhv(inst).unwrap();
        out.check(red.k == rmis_formula(inst, None), || format!("rmis {i}: mhv k' {}", red.k));
        let got = search_mhv(&red.graph, &cfg).unwrap().value >= red.k;
        out.check(got == yes, || format!("rmis {i}: mhv {got}, source {yes}"));
        generated.push((GraphClass::Paths3, red));
        for (variant, class) in [(PathVariant::Path, GraphClass::Paths3), (PathVariant::Triangle, GraphClass::Triangles)] {
            let red = gen_rmis_to_mhe(inst, variant).unwrap();
            out.check(red.k == rmis_formula(inst, Some(variant)), || format!("rmis {i}: {variant:?} k' {}", red.k));
            let got = cover_mhe(&red.graph, &cfg).unwrap().value >= red.k;
            out.check(got == yes, || format!("rmis {i}: mhe {variant:?} {got}, source {yes}"));
            generated.push((class, red));
        }
    }
    let crbds = common::all_crbds(4, 3);
    for (i, inst) in crbds.iter().enumerate() {
        let yes = brute_crbds(inst, &cfg).unwrap().is_some();
        let red = gen_crbds_to_mhv(inst).unwrap();
        out.check(red.k == inst.nb(), || format!("crbds {i}: mhv k' {}", red.k));
        let got = search_mhv(&red.graph, &cfg).unwrap().value >= red.k;
        out.check(got == yes, || format!("crbds {i}: mhv {got}, source {yes}"));
        generated.push((GraphClass::Stars, red));
        for (variant, class) in [(StarVariant::Star, GraphClass::Stars), (StarVariant::Cluster, GraphClass::Cliques)] {
            let red = gen_crbds_to_mhe(inst, variant).unwrap();
            out.check(red.k == (2 + inst.k()) * inst.nb(), || format!("crbds {i}: {variant:?} k' {}", red.k));
            let got = cover_mhe(&red.graph, &cfg).unwrap().value >= red.k;
            out.check(got == yes, || format!("crbds {i}: mhe {variant:?} {got}, source {yes}"));
            generated.push((class, red));
        }
    }
    out.notes.push(format!("{} rmis, {} crbds sources", rmis.len(), crbds.len()));
    out
}

fn min_cluster_modulator(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| {
            let removed: BTreeSet<Vertex> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            is_cluster_graph(g, &removed)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn modulator_quality() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..150 {
        let mut rng = common::rng(4000 + seed);
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.95);
        let g = common::gnp(&mut rng, n, p);
        let s = find_cluster_modulator(&g);
        let opt = min_cluster_modulator(&g);
        out.check(is_cluster_graph(&g, &s) && s.len() == opt, || {
            format!("seed {seed}: cluster modulator {s:?}, optimum {opt}")
        });
        let approx = clique_modulator_2approx(&g);
        let opt = min_clique_modulator(&g).len();
        out.check(is_clique_modulator(&g, &approx) && approx.len() <= 2 * opt, || {
            format!("seed {seed}: clique modulator {approx:?}, optimum {opt}")
        });
    }
    out
}

fn structural(mut generated: Vec<(GraphClass, Reduction)>) -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..50 {
        let mut rng = common::rng(5000 + seed);
        let k = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=4);
        let x = if k * q % 2 == 0 { rng.gen_range(0..=q.min(2)) } else { 0 };
        let inst = gen_random_rmis(k, q, x, seed).unwrap();
        generated.push((GraphClass::Paths3, gen_rmis_to_mhv(&inst).unwrap()));
        generated.push((GraphClass::Paths3, gen_rmis_to_mhe(&inst, PathVariant::Path).unwrap()));
        generated.push((GraphClass::Triangles, gen_rmis_to_mhe(&inst, PathVariant::Triangle).unwrap()));
        let inst = gen_random_crbds(rng.gen_range(1..=3), 2, rng.gen_range(1..=4), 0.4, seed).unwrap();
        generated.push((GraphClass::Stars, gen_crbds_to_mhv(&inst).unwrap()));
        generated.push((GraphClass::Stars, gen_crbds_to_mhe(&inst, StarVariant::Star).unwrap()));
        generated.push((GraphClass::Cliques, gen_crbds_to_mhe(&inst, StarVariant::Cluster).unwrap()));
    }
    for (i, (class, red)) in generated.iter().enumerate() {
        out.check(class.recognizes(&red.without_selectors()), || format!("instance {i}: not {class:?}"));
    }
    out
}

fn round_trips() -> Outcome {
    let mut out = Outcome::new();
    let check = |out: &mut Outcome, file: InstanceFile| {
        let text = file.serialize();
        let ok = InstanceFile::parse(&text).is_ok_and(|back| back == file && back.serialize() == text);
        out.check(ok, || format!("{:?} did not round-trip:\n{text}", file.kind()));
    };
    for seed in 0..1000 {
        let mut rng = common::rng(6000 + seed);
        let n = rng.gen_range(1..=16);
        let ell = rng.gen_range(1..=5);
        let g = common::random_instance(&mut rng, n, ell);
        check(&mut out, InstanceFile::Happy(g.clone()));
        let mut groups = vec![BTreeSet::new(); rng.gen_range(0..=4)];
        for v in 1..=n {
            if !groups.is_empty() && rng.gen_bool(0.5) {
                let i = rng.gen_range(0..groups.len());
                groups[i].insert(v);
            }
        }
        match GmcInstance::new(g.graph().clone(), groups, 0) {
            Ok(inst) => check(&mut out, InstanceFile::Gmc(inst)),
            Err(e) => out.check(false, || format!("seed {seed}: gmc instance rejected: {e}")),
        }
        let w = rng.gen_range(1..=5);
        check(&mut out, InstanceFile::Wexpr(common::random_expression(&mut rng, n, w)));
        let (k, q) = (rng.gen_range(2..=5), rng.gen_range(2..=4));
        let x = if k * q % 2 == 0 { rng.gen_range(0..=q.min(3)) } else { 0 };
        check(&mut out, InstanceFile::Rmis(gen_random_rmis(k, q, x, seed).unwrap()));
        let p = rng.gen_range(0.0..1.0);
        let inst = gen_random_crbds(rng.gen_range(1..=4), rng.gen_range(2..=3), rng.gen_range(1..=5), p, seed);
        check(&mut out, InstanceFile::Crbds(inst.unwrap()));
    }
    out
}

fn report(index: usize, name: &str, elapsed: Duration, out: &Outcome) -> bool {
    let pass = out.failures.is_empty();
    let mut line = format!(
        "{} criterion {index} {name}: {} checks, {} failures, {elapsed:.2?}",
        if pass { "PASS" } else { "FAIL" },
        out.checked,
        out.failures.len(),
    );
    for note in &out.notes {
        line.push_str(&format!("; {note}"));
    }
    println!("{line}");
    for f in out.failures.iter().take(5) {
        println!("    {f}");
    }
    pass
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let mut generated = Vec::new();
    let mut all_pass = true;
    let mut run = |index: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        all_pass &= report(index, name, t.elapsed(), &out);
    };
    run(1, "fpt-vs-oracle", &mut fpt_vs_oracle);
    run(2, "gmc-correspondence", &mut gmc_correspondence);
    run(3, "kernels", &mut kernels);
    run(4, "nmc-clique-width", &mut nmc_dp);
    run(5, "gadget-equivalence", &mut || gadget_equivalence(&mut generated));
    run(6, "modulator-quality", &mut modulator_quality);
    run(7, "structural-checks", &mut || structural(std::mem::take(&mut generated)));
    run(8, "round-trip-io", &mut round_trips);
    let total = start.elapsed();
    println!("acceptance wall-clock {total:.2?}");
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
