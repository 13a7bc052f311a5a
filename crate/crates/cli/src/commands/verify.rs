use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use adft_core::numerics::max_relative_deviation;
use adft_core::transforms::DirectOpCount;
use adft_core::{
    apply_direct, build_approx_matrix, build_factorization, DirectTransform, DyadicGaussian, Factorization, OpCount,
};

use super::{json_document, random_frames};
use crate::config::{Format, VerifyConfig};
use crate::format::{fmt_f64, num};
use crate::Report;

pub const FAST_DIRECT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub counts: OpCount,
    pub general_multiplications: usize,
    pub direct: DirectOpCount,
    pub max_relative_deviation: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn random_dyadic(rng: &mut ChaCha8Rng) -> DyadicGaussian {
    DyadicGaussian::new(rng.random_range(-1024..=1024), rng.random_range(-1024..=1024), rng.random_range(0..4))
}

/// Runs every check against `f`; the CLI passes the built-in factorization.
pub fn verify_with(f: &Factorization, frames: usize, seed: u64) -> VerifyReport {
    let t = build_approx_matrix();
    let mut checks = Vec::new();

    let identity = f.verify_against(&t);
    checks.push(Check {
        name: "factorization identity",
        passed: identity.exact_equal,
        detail: format!(
            "stage product equals the matrix exactly; max float deviation {}",
            fmt_f64(identity.max_abs_deviation)
        ),
    });

    let mut worst = 0.0_f64;
    let mut shape_ok = true;
    for v in random_frames(frames, seed) {
        match (f.apply(&v), apply_direct(&t, &v)) {
            (Ok(a), Ok(b)) => worst = worst.max(max_relative_deviation(&a, &b)),
            _ => shape_ok = false,
        }
    }
    checks.push(Check {
        name: "fast vs direct",
        passed: shape_ok && worst <= FAST_DIRECT_TOLERANCE,
        detail: format!("{frames} random frames, seed {seed}, max relative deviation {}", fmt_f64(worst)),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let exact_frames = frames.min(1000);
    let exact_ok = (0..exact_frames).all(|_| {
        let v: Vec<DyadicGaussian> = (0..8).map(|_| random_dyadic(&mut rng)).collect();
        matches!((f.apply(&v), t.apply_direct_exact(&v)), (Ok(a), Ok(b)) if a == b)
    });
    checks.push(Check {
        name: "fast vs direct (exact)",
        passed: exact_ok,
        detail: format!("{exact_frames} dyadic frames compared for equality"),
    });

    let general = f.general_multiplications();
    checks.push(Check {
        name: "multiplierless stages",
        passed: general == 0,
        detail: format!("{general} stage entries outside {{0, +-1, +-j, 1/2}}"),
    });

    VerifyReport {
        checks,
        counts: f.op_count(),
        general_multiplications: general,
        direct: DirectOpCount::from_matrix(t.float_matrix()),
        max_relative_deviation: worst,
    }
}

pub fn render_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s.push_str(&format!("{}: {} ({})\n", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail));
    }
    let k = &r.counts;
    s.push_str(&format!("complex multiplications: {}\n", r.general_multiplications));
    s.push_str(&format!("complex additions: {} (real additions: {})\n", k.complex_additions, k.real_additions()));
    s.push_str(&format!("halvings: {}\n", k.halvings));
    s.push_str(&format!("j-rotations: {}\n", k.j_rotations));
    s.push_str(&format!("negations: {}\n", k.negations));
    s.push_str(&format!(
        "direct: {} complex additions, {} complex multiplications ({} real additions, {} real multiplications)\n",
        r.direct.complex_additions,
        r.direct.complex_multiplications,
        r.direct.real_additions(),
        r.direct.real_multiplications()
    ));
    s
}

pub fn run(c: &VerifyConfig) -> Report {
    let r = verify_with(&build_factorization(), c.frames, c.seed);
    let body = match c.format {
        Format::Json => {
            let payload = json!({
                "passed": r.passed(),
                "checks": r.checks,
                "complex_multiplications": r.general_multiplications,
                "counts": {
                    "complex_additions": r.counts.complex_additions,
                    "real_additions": r.counts.real_additions(),
                    "halvings": r.counts.halvings,
                    "j_rotations": r.counts.j_rotations,
                    "negations": r.counts.negations,
                },
                "direct_counts": {
                    "complex_additions": r.direct.complex_additions,
                    "complex_multiplications": r.direct.complex_multiplications,
                    "real_additions": r.direct.real_additions(),
                    "real_multiplications": r.direct.real_multiplications(),
                },
                "max_relative_deviation": num(r.max_relative_deviation),
            });
            json_document("verify", c, payload, Some(c.seed))
        }
        _ => render_text(&r),
    };
    let notes = r.first_failure().map(|f| format!("verification failed: {}\n", f.name)).unwrap_or_default();
    Report { body, notes, passed: r.passed() }
}
