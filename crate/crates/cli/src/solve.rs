use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use happy_core::cluster::solve_mhv_cluster;
use happy_core::cwexpr::solve_nmc_cw;
use happy_core::io::{parse_gmc, parse_happy, parse_wexpr, serialize_gmc, serialize_happy};
use happy_core::kernel::{clique_modulator_2approx, cubic_kernel, linear_kernel};
use happy_core::multiway::{gmc_compress_to_mhv, mhv_to_gmc};
use happy_core::oracles::{brute_gmc, brute_mhe, brute_mhv, OracleConfig};
use happy_core::{happy_edge_count, happy_vertices, ColoredGraph, Coloring, Error, Execution, Vertex};

use crate::{emit, write, KernelMode, MhvAlgo, Outcome};

fn verdict(yes: bool, opt: impl std::fmt::Display) -> bool {
    println!("VERDICT {} OPT {opt}", if yes { "yes" } else { "no" });
    yes
}

/// `c <v> <color>` per vertex, preceded by a comment with the objective.
fn coloring_text(c: &Coloring, objective: &str, value: usize) -> String {
    let mut out = format!("# {objective} {value}\n");
    for (i, color) in c.as_slice().iter().enumerate() {
        let _ = writeln!(out, "c {} {color}", i + 1);
    }
    out
}

fn cut_text(cut: &BTreeSet<Vertex>) -> String {
    let mut out = format!("# cut {}\n", cut.len());
    for v in cut {
        let _ = writeln!(out, "x {v}");
    }
    out
}

pub fn mhv(
    text: &str,
    k: usize,
    algo: MhvAlgo,
    modulator: Option<&BTreeSet<Vertex>>,
    witness: Option<&Path>,
    cfg: &OracleConfig,
) -> Outcome {
    let g = parse_happy(text)?;
    let (value, coloring) = match algo {
        MhvAlgo::Brute => {
            let best = brute_mhv(&g, cfg)?;
            (best.value, best.witness)
        }
        MhvAlgo::ClusterFpt => {
            let best = solve_mhv_cluster(&g, modulator, cfg.execution)?;
            eprintln!("modulator {:?}, {} guesses", best.modulator, best.guesses);
            (best.value, best.witness)
        }
    };
    debug_assert_eq!(happy_vertices(&g, &coloring)?.len(), value);
    if let Some(path) = witness {
        write(path, &coloring_text(&coloring, "happy-vertices", value))?;
    }
    Ok(verdict(value >= k, value))
}

pub fn mhe(text: &str, k: usize, witness: Option<&Path>, cfg: &OracleConfig) -> Outcome {
    let g = parse_happy(text)?;
    let best = brute_mhe(&g, cfg)?;
    debug_assert_eq!(happy_edge_count(&g, &best.witness)?, best.value);
    if let Some(path) = witness {
        write(path, &coloring_text(&best.witness, "happy-edges", best.value))?;
    }
    Ok(verdict(best.value >= k, best.value))
}

pub fn gmc(text: &str, k: usize, witness: Option<&Path>, cfg: &OracleConfig) -> Outcome {
    let inst = parse_gmc(text)?.with_budget(k);
    let cut = brute_gmc(&inst, cfg)?;
    if let Some(path) = witness {
        write(path, &cut_text(&cut.cut))?;
    }
    Ok(verdict(cut.is_yes(&inst), cut.size))
}

pub fn nmc(
    text: &str,
    terminals: &BTreeSet<Vertex>,
    k: usize,
    exec: Execution,
) -> Outcome {
    let expr = parse_wexpr(text)?;
    let sol = solve_nmc_cw(&expr, terminals, exec)?;
    eprintln!("largest table {} states", sol.max_states);
    match sol.min_cut.finite() {
        Some(c) => Ok(verdict(c <= k, c)),
        None => Ok(verdict(false, "inf")),
    }
}

pub fn to_gmc(text: &str, k: usize, output: Option<&Path>) -> Outcome {
    let g = parse_happy(text)?;
    match mhv_to_gmc(&g, k) {
        Ok(inst) => {
            eprintln!("budget {}", inst.budget());
            emit(output, &format!("# budget {}\n{}", inst.budget(), serialize_gmc(&inst)))?;
            Ok(true)
        }
        Err(Error::TrivialNo { k, h }) => {
            eprintln!("k = {k} exceeds the {h} potentially happy vertices");
            Ok(verdict(false, h))
        }
        Err(e) => Err(e.into()),
    }
}

fn kernel_text(g: &ColoredGraph, k: impl std::fmt::Display) -> String {
    format!("# k {k}\n{}", serialize_happy(g))
}

pub fn kernelize(
    text: &str,
    k: usize,
    mode: KernelMode,
    modulator: Option<&BTreeSet<Vertex>>,
    trace: Option<&Path>,
    output: Option<&Path>,
) -> Outcome {
    let g = parse_happy(text)?;
    let out = match mode {
        KernelMode::Linear => {
            let s = modulator.cloned().unwrap_or_else(|| clique_modulator_2approx(g.graph()));
            let (kernel, k2) = linear_kernel(&g, k, &s)?;
            eprintln!("n {} -> {}, k {k} -> {k2}", g.n(), kernel.n());
            kernel_text(&kernel, k2)
        }
        KernelMode::Cubic => {
            let result = cubic_kernel(&g, k, modulator)?;
            if let Some(path) = trace {
                write(path, &result.to_string())?;
            }
            eprintln!("n {} -> {}, k {k} -> {}", g.n(), result.graph.n(), result.k);
            kernel_text(&result.graph, result.k)
        }
        KernelMode::GmcCompress => {
            let (kernel, k2) = gmc_compress_to_mhv(&g, k)?;
            eprintln!("n {} -> {}, k {k} -> {k2}", g.n(), kernel.n());
            kernel_text(&kernel, k2)
        }
    };
    emit(output, &out)?;
    Ok(true)
}
