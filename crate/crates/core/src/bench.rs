//! Timing harness comparing the four-cycle recognizer with the brute oracle.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cayley::{low_cayley_brute, low_cayley_fast};
use crate::error::{Error, Result};
use crate::generators::{gen_fan, random_steps, Generated};

/// Largest size at which the brute oracle is timed.
pub const BRUTE_MAX_N: usize = 300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub algo: String,
    pub median_ms: f64,
}

/// `10, 20, 40, ...` below `max_n`, then `max_n` itself. The brute cap is
/// added when it falls inside the range so the oracle is measured up to it.
pub fn bench_sizes(max_n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut n = 10;
    while n < max_n {
        sizes.push(n);
        n *= 2;
    }
    sizes.push(max_n);
    if max_n > BRUTE_MAX_N && !sizes.contains(&BRUTE_MAX_N) {
        sizes.push(BRUTE_MAX_N);
        sizes.sort_unstable();
    }
    sizes
}

/// Shortest batch worth timing; faster calls are repeated inside one sample.
const MIN_SAMPLE_MS: f64 = 2.0;

fn median_ms(repeats: usize, mut run: impl FnMut()) -> f64 {
    let t = Instant::now();
    run();
    let once = t.elapsed().as_secs_f64() * 1e3;
    let batch = ((MIN_SAMPLE_MS / once.max(1e-6)).ceil() as usize).clamp(1, 10_000);
    let mut samples: Vec<f64> = (0..repeats.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..batch {
                run();
            }
            t.elapsed().as_secs_f64() * 1e3 / batch as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn instance(family: &str, n: usize) -> Generated {
    match family {
        "fan" => gen_fan(n).expect("n >= 10"),
        // n vertices: two base endpoints plus one vertex per step
        _ => random_steps(n as u64, n - 2, true, false),
    }
}

pub fn bench_family(family: &str, max_n: usize, repeats: usize) -> Result<Vec<BenchRow>> {
    if max_n < 10 {
        return Err(Error::BadSize(format!(
            "bench needs max_n >= 10, got {max_n}"
        )));
    }
    if family != "fan" && family != "random" {
        return Err(Error::UnknownFamily(family.to_string()));
    }
    let mut rows = Vec::new();
    for n in bench_sizes(max_n) {
        let g = instance(family, n);
        let mut algos: Vec<(&str, &dyn Fn() -> bool)> = Vec::new();
        let fast = || {
            low_cayley_fast(&g.graph, g.base)
                .expect("generated base")
                .low_complexity
        };
        let brute = || {
            low_cayley_brute(&g.graph, g.base)
                .expect("generated base")
                .low_complexity
        };
        algos.push(("fast", &fast));
        if n <= BRUTE_MAX_N {
            algos.push(("brute", &brute));
        }
        for (algo, run) in algos {
            rows.push(BenchRow {
                family: family.to_string(),
                n,
                algo: algo.to_string(),
                median_ms: median_ms(repeats, || {
                    std::hint::black_box(run());
                }),
            });
        }
    }
    Ok(rows)
}

/// Fan and random families.
pub fn bench(max_n: usize, repeats: usize) -> Result<Vec<BenchRow>> {
    let mut rows = bench_family("fan", max_n, repeats)?;
    rows.extend(bench_family("random", max_n, repeats)?);
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("family,n,algo,median_ms\n");
    for r in rows {
        out += &format!("{},{},{},{:.4}\n", r.family, r.n, r.algo, r.median_ms);
    }
    out
}

/// Least-squares slope of `ln(median_ms)` against `ln(n)` for one family and algorithm.
pub fn fit_exponent(rows: &[BenchRow], family: &str, algo: &str) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.family == family && r.algo == algo && r.median_ms > 0.0)
        .map(|r| ((r.n as f64).ln(), r.median_ms.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
