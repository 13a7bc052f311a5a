pub mod beamsim;
pub mod bench;
pub mod matrix;
pub mod pattern;
pub mod search;
pub mod verify;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use adft_core::ComplexF;

use crate::config::RunConfig;
use crate::document::ResultDocument;
use crate::{CliError, Report};

pub fn dispatch(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg {
        RunConfig::Matrix(c) => matrix::run(c),
        RunConfig::Verify(c) => Ok(verify::run(c)),
        RunConfig::Search(c) => Ok(search::run(c)),
        RunConfig::Pattern(c) => pattern::run(c),
        RunConfig::Beamsim(c) => beamsim::run(c),
        RunConfig::Bench(c) => Ok(bench::run(c)),
    }
}

pub(crate) fn json_document(command: &str, params: &impl Serialize, payload: Value, seed: Option<u64>) -> String {
    ResultDocument::new(command, params, payload, seed).to_json()
}

/// Frames with components uniform in `[-1, 1)`.
pub fn random_frames(count: usize, seed: u64) -> Vec<[ComplexF; 8]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| ComplexF::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect()
}
