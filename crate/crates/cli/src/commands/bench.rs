use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use adft_core::numerics::max_relative_deviation;
use adft_core::transforms::DirectOpCount;
use adft_core::{approx_dft8, build_approx_matrix, build_factorization, complexity_report, ComplexF, DirectTransform};

use super::{json_document, random_frames};
use crate::config::{BenchConfig, BenchMode, Format};
use crate::format::{fmt_f64, num};
use crate::Report;

pub const GATE_FRAMES: usize = 1000;
pub const GATE_TOLERANCE: f64 = 1e-12;
/// Distinct input frames cycled through during timing.
const POOL: usize = 4096;

pub type Kernel = fn(&DenseMatrix, &[ComplexF; 8]) -> [ComplexF; 8];

pub type DenseMatrix = [[ComplexF; 8]; 8];

pub fn dense_matrix() -> DenseMatrix {
    let m = build_approx_matrix();
    let m = m.float_matrix();
    std::array::from_fn(|i| std::array::from_fn(|k| m.get(i, k)))
}

/// Plain matrix-vector product: 64 complex multiplies, 56 complex adds.
pub fn direct_kernel(m: &DenseMatrix, x: &[ComplexF; 8]) -> [ComplexF; 8] {
    std::array::from_fn(|i| {
        let row = &m[i];
        let mut acc = row[0] * x[0];
        for k in 1..8 {
            acc += row[k] * x[k];
        }
        acc
    })
}

pub fn fast_kernel(_: &DenseMatrix, x: &[ComplexF; 8]) -> [ComplexF; 8] {
    approx_dft8(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub frames: usize,
    pub max_relative_deviation: f64,
    pub passed: bool,
}

/// Compares two kernels on `frames` before anything is timed.
pub fn correctness_gate(frames: &[[ComplexF; 8]], fast: Kernel, direct: Kernel) -> GateReport {
    let m = dense_matrix();
    let worst = frames.iter().map(|x| max_relative_deviation(&fast(&m, x), &direct(&m, x))).fold(0.0_f64, f64::max);
    GateReport { frames: frames.len(), max_relative_deviation: worst, passed: worst <= GATE_TOLERANCE }
}

/// Real scalar operations per frame, from the stage structure and the dense
/// matrix respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarCounts {
    pub real_additions: usize,
    pub real_multiplications: usize,
    /// Scalings by 1/2 (one per real component), not general multiplies.
    pub real_halvings: usize,
}

pub fn fast_counts() -> ScalarCounts {
    let c = complexity_report(&build_factorization());
    ScalarCounts { real_additions: c.real_additions(), real_multiplications: 0, real_halvings: 2 * c.halvings }
}

pub fn direct_counts() -> ScalarCounts {
    let d = DirectOpCount::from_matrix(build_approx_matrix().float_matrix());
    ScalarCounts {
        real_additions: d.real_additions(),
        real_multiplications: d.real_multiplications(),
        real_halvings: 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub mode: &'static str,
    pub frames: usize,
    pub lanes: usize,
    pub seconds: f64,
    pub frames_per_second: f64,
    pub counts: ScalarCounts,
}

/// Runs `kernel` over `frames` inputs split across `lanes` threads. Each lane
/// owns its accumulator; the input pool is shared read-only.
pub fn time_kernel(kernel: Kernel, pool: &[[ComplexF; 8]], frames: usize, lanes: usize) -> f64 {
    let m = dense_matrix();
    let start = Instant::now();
    std::thread::scope(|s| {
        for lane in 0..lanes {
            let share = frames / lanes + usize::from(lane < frames % lanes);
            let m = &m;
            s.spawn(move || {
                let mut sink = [ComplexF::new(0.0, 0.0); 8];
                for i in 0..share {
                    let out = kernel(m, black_box(&pool[(i + lane) % pool.len()]));
                    for (acc, z) in sink.iter_mut().zip(out) {
                        *acc += z;
                    }
                }
                black_box(sink);
            });
        }
    });
    start.elapsed().as_secs_f64()
}

pub fn run(c: &BenchConfig) -> Report {
    let pool = random_frames(POOL.min(c.frames.max(GATE_FRAMES)), c.seed);
    let gate = correctness_gate(&pool[..GATE_FRAMES.min(pool.len())], fast_kernel, direct_kernel);
    let (fast, direct) = (fast_counts(), direct_counts());
    let gate_line = format!(
        "correctness gate: {} ({} frames, max relative deviation {})\n",
        if gate.passed { "pass" } else { "FAIL" },
        gate.frames,
        fmt_f64(gate.max_relative_deviation)
    );
    if !gate.passed {
        return Report { body: gate_line, notes: "verification failed: correctness gate\n".into(), passed: false };
    }

    let modes: Vec<(&'static str, Kernel, ScalarCounts)> = match c.mode {
        BenchMode::Fast => vec![("fast", fast_kernel, fast)],
        BenchMode::Direct => vec![("direct", direct_kernel, direct)],
        BenchMode::Both => vec![("fast", fast_kernel, fast), ("direct", direct_kernel, direct)],
    };
    let timings: Vec<Timing> = modes
        .into_iter()
        .map(|(mode, kernel, counts)| {
            let seconds = time_kernel(kernel, &pool, c.frames, c.lanes);
            Timing {
                mode,
                frames: c.frames,
                lanes: c.lanes,
                seconds,
                frames_per_second: c.frames as f64 / seconds.max(f64::MIN_POSITIVE),
                counts,
            }
        })
        .collect();

    let body = match c.format {
        Format::Json => {
            let modes: Vec<_> = timings
                .iter()
                .map(|t| {
                    json!({
                        "mode": t.mode,
                        "frames": t.frames,
                        "lanes": t.lanes,
                        "seconds": num(t.seconds),
                        "frames_per_second": num(t.frames_per_second),
                        "real_additions_per_frame": t.counts.real_additions,
                        "real_multiplications_per_frame": t.counts.real_multiplications,
                        "real_halvings_per_frame": t.counts.real_halvings,
                    })
                })
                .collect();
            let payload = json!({
                "gate": { "passed": gate.passed, "frames": gate.frames, "max_relative_deviation": num(gate.max_relative_deviation) },
                "modes": modes,
            });
            json_document("bench", c, payload, Some(c.seed))
        }
        _ => {
            let mut s = gate_line;
            s.push_str(&format!(
                "{:<6} {:>10} {:>5} {:>12} {:>15} {:>9} {:>9} {:>9}\n",
                "mode", "frames", "lanes", "seconds", "frames/s", "add/frm", "mul/frm", "half/frm"
            ));
            for t in &timings {
                s.push_str(&format!(
                    "{:<6} {:>10} {:>5} {:>12} {:>15} {:>9} {:>9} {:>9}\n",
                    t.mode,
                    t.frames,
                    t.lanes,
                    fmt_f64(t.seconds),
                    fmt_f64(t.frames_per_second.round()),
                    t.counts.real_additions,
                    t.counts.real_multiplications,
                    t.counts.real_halvings
                ));
            }
            s
        }
    };
    Report::ok(body)
}
