use std::time::{Duration, Instant};

use happy_core::cluster::solve_mhv_cluster;
use happy_core::oracles::{brute_mhv, search_mhv, OracleConfig};
use happy_core::{sample, Execution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Outcome;

fn time<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

/// One row per instance size: mean milliseconds per solver, plus whether
/// all solvers agreed.
pub fn run(count: u64, seed: u64, cfg: &OracleConfig) -> Outcome {
    println!("{:>4} {:>3} {:>12} {:>12} {:>12} {:>12} {:>6}", "n", "d", "brute", "search", "cluster-seq", "cluster-par", "agree");
    let mut all_agree = true;
    for (n, d) in [(8, 2), (10, 3), (12, 3), (14, 4)] {
        let mut totals = [Duration::ZERO; 4];
        let mut agree = true;
        for i in 0..count {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let g = sample::near_cluster(&mut rng, n, d);
            let g = sample::precolor(&mut rng, g, 3, 0.3);
            let (brute, t0) = time(|| brute_mhv(&g, cfg));
            let (search, t1) = time(|| search_mhv(&g, cfg));
            let (seq, t2) = time(|| solve_mhv_cluster(&g, None, Execution::Sequential));
            let (par, t3) = time(|| solve_mhv_cluster(&g, None, Execution::Parallel));
            let values = [brute?.value, search?.value, seq?.value, par?.value];
            agree &= values.iter().all(|&v| v == values[0]);
            for (total, t) in totals.iter_mut().zip([t0, t1, t2, t3]) {
                *total += t;
            }
        }
        let mean = |t: Duration| ms(t / count.max(1) as u32);
        println!(
            "{n:>4} {d:>3} {:>12} {:>12} {:>12} {:>12} {:>6}",
            mean(totals[0]),
            mean(totals[1]),
            mean(totals[2]),
            mean(totals[3]),
            agree
        );
        all_agree &= agree;
    }
    Ok(all_agree)
}
