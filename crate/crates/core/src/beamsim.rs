//! Far-field beams of a uniform linear array fed through an 8-point transform.
//!
//! Angles are in degrees from broadside, in `[-90, 90]`. Element `n` of a
//! plane wave arriving from `θ` sees phase `2π (Δx/λ) n sin θ`. Beam `k` of a
//! transform is the inner product of row `k` with the element signals, so its
//! weight vector (in the `Σ conj(w_n) a_n` convention) is the conjugate of
//! row `k`. With that convention beam `k` points at `asin(k / (N Δx/λ))` for
//! `k` in the centered range `0, 1, .., N/2, -(N/2 - 1), .., -1`.
//!
//! Spacing is stored in wavelengths, so ideal patterns do not depend on
//! frequency. [`ArrayGeometry::at_frequency`] converts a physical frequency
//! for an array cut to half a wavelength at some design frequency.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::ComplexF;
use crate::transforms::{DirectTransform, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArrayGeometry {
    n_elements: usize,
    spacing_wavelengths: f64,
}

impl Default for ArrayGeometry {
    fn default() -> Self {
        Self { n_elements: 8, spacing_wavelengths: 0.5 }
    }
}

impl ArrayGeometry {
    pub fn new(n_elements: usize, spacing_wavelengths: f64) -> Result<Self> {
        if n_elements < 2 {
            return Err(Error::InvalidParameter { name: "n_elements", reason: "need at least 2 elements".into() });
        }
        if !(spacing_wavelengths > 0.0 && spacing_wavelengths.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "spacing",
                reason: format!("{spacing_wavelengths} is not a positive spacing"),
            });
        }
        Ok(Self { n_elements, spacing_wavelengths })
    }

    /// Array with `Δx = λ/2` at `design_hz`, operated at `freq_hz`.
    pub fn at_frequency(n_elements: usize, freq_hz: f64, design_hz: f64) -> Result<Self> {
        if !(freq_hz > 0.0 && design_hz > 0.0) {
            return Err(Error::InvalidParameter { name: "frequency", reason: "frequencies must be positive".into() });
        }
        Self::new(n_elements, 0.5 * freq_hz / design_hz)
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn spacing_wavelengths(&self) -> f64 {
        self.spacing_wavelengths
    }
}

/// Sampling grid and dB floor for patterns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PatternOptions {
    pub grid_step_deg: f64,
    pub floor_db: f64,
}

impl Default for PatternOptions {
    fn default() -> Self {
        Self { grid_step_deg: 0.1, floor_db: -60.0 }
    }
}

impl PatternOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_step_deg > 0.0 && self.grid_step_deg <= 90.0) {
            return Err(Error::InvalidParameter {
                name: "grid_step",
                reason: format!("{} is not in (0, 90]", self.grid_step_deg),
            });
        }
        if !(self.floor_db < 0.0 && self.floor_db.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "floor_db",
                reason: format!("{} is not a negative dB level", self.floor_db),
            });
        }
        Ok(())
    }
}

/// `-90, -90 + step, ...`, always ending exactly at `90`.
pub fn angle_grid(step_deg: f64) -> Result<Vec<f64>> {
    PatternOptions { grid_step_deg: step_deg, floor_db: -1.0 }.validate()?;
    let ratio = 180.0 / step_deg;
    let count = if (ratio - ratio.round()).abs() < 1e-9 { ratio.round() } else { ratio.ceil() } as usize;
    let mut grid: Vec<f64> = (0..count).map(|i| -90.0 + i as f64 * step_deg).collect();
    grid.push(90.0);
    Ok(grid)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PatternSample {
    pub angle_deg: f64,
    pub magnitude: f64,
    /// Relative to the largest sampled magnitude, clamped at the floor.
    pub magnitude_db: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeamPattern {
    pub beam_index: usize,
    pub floor_db: f64,
    samples: Vec<PatternSample>,
}

impl BeamPattern {
    pub fn samples(&self) -> &[PatternSample] {
        &self.samples
    }

    pub fn peak_magnitude(&self) -> f64 {
        self.samples.iter().map(|s| s.magnitude).fold(0.0, f64::max)
    }

    fn with_index(mut self, beam_index: usize) -> Self {
        self.beam_index = beam_index;
        self
    }
}

/// Element phases of a plane wave from `angle_deg`.
pub fn steering_vector(g: &ArrayGeometry, angle_deg: f64) -> Result<Vec<ComplexF>> {
    check_angle(angle_deg)?;
    let k = 2.0 * PI * g.spacing_wavelengths * angle_deg.to_radians().sin();
    Ok((0..g.n_elements).map(|n| ComplexF::from_polar(1.0, k * n as f64)).collect())
}

fn check_angle(angle_deg: f64) -> Result<()> {
    if angle_deg.is_nan() || angle_deg.abs() > 90.0 {
        return Err(Error::AngleOutOfRange(angle_deg));
    }
    Ok(())
}

/// `Σ conj(w_n) a_n(θ)`.
pub fn array_response(weights: &[ComplexF], g: &ArrayGeometry, angle_deg: f64) -> Result<ComplexF> {
    if weights.len() != g.n_elements {
        return Err(Error::dims(format!("{} weights", g.n_elements), weights.len()));
    }
    let a = steering_vector(g, angle_deg)?;
    Ok(weights.iter().zip(&a).map(|(w, x)| w.conj() * x).sum())
}

/// Sampled `|Σ conj(w_n) a_n(θ)|` over the angle grid.
pub fn beam_pattern(weights: &[ComplexF], g: &ArrayGeometry, opts: &PatternOptions) -> Result<BeamPattern> {
    opts.validate()?;
    if weights.len() != g.n_elements {
        return Err(Error::dims(format!("{} weights", g.n_elements), weights.len()));
    }
    if weights.iter().all(|w| w.norm_sqr() == 0.0) {
        return Err(Error::ZeroWeights);
    }
    let mags = angle_grid(opts.grid_step_deg)?
        .into_iter()
        .map(|a| Ok((a, array_response(weights, g, a)?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let peak = mags.iter().map(|&(_, m)| m).fold(0.0, f64::max);
    let samples = mags
        .into_iter()
        .map(|(angle_deg, magnitude)| {
            let db = if magnitude > 0.0 { 20.0 * (magnitude / peak).log10() } else { f64::NEG_INFINITY };
            PatternSample { angle_deg, magnitude, magnitude_db: db.max(opts.floor_db) }
        })
        .collect();
    Ok(BeamPattern { beam_index: 0, floor_db: opts.floor_db, samples })
}

/// Weight vector of beam `k`: the conjugate of row `k`.
pub fn beam_weights<T: DirectTransform + ?Sized>(t: &T, k: usize) -> Vec<ComplexF> {
    t.float_matrix().row(k).iter().map(|z| z.conj()).collect()
}

/// One pattern per transform row.
pub fn all_patterns<T: DirectTransform + ?Sized>(
    t: &T,
    g: &ArrayGeometry,
    opts: &PatternOptions,
) -> Result<Vec<BeamPattern>> {
    if t.size() != g.n_elements {
        return Err(Error::dims(format!("{}-point transform", g.n_elements), t.size()));
    }
    let weights: Vec<Vec<ComplexF>> = (0..t.size()).map(|k| beam_weights(t, k)).collect();
    weights.par_iter().enumerate().map(|(k, w)| Ok(beam_pattern(w, g, opts)?.with_index(k))).collect()
}

/// Grid argmax refined by a parabola through the dB values around it.
///
/// Tied maxima resolve to the smallest angle, except that a tie between the
/// two endfire samples (the same steering vector at half-wave spacing) is
/// reported as `+90`.
pub fn beam_peak_direction(p: &BeamPattern) -> Result<f64> {
    let s = &p.samples;
    if s.len() < 3 {
        return Err(Error::InvalidParameter { name: "pattern", reason: "need at least 3 samples".into() });
    }
    let peak = p.peak_magnitude();
    let tol = peak * 1e-12;
    let tied: Vec<usize> = (0..s.len()).filter(|&i| s[i].magnitude >= peak - tol).collect();
    let last = s.len() - 1;
    if tied.contains(&0) && tied.contains(&last) {
        return Ok(s[last].angle_deg);
    }
    let i = tied[0];
    if i == 0 || i == last {
        return Ok(s[i].angle_deg);
    }
    let (y0, y1, y2) = (s[i - 1].magnitude_db, s[i].magnitude_db, s[i + 1].magnitude_db);
    let denom = y0 - 2.0 * y1 + y2;
    if denom >= 0.0 {
        return Ok(s[i].angle_deg);
    }
    let offset = (0.5 * (y0 - y2) / denom).clamp(-0.5, 0.5);
    let step = if offset >= 0.0 { s[i + 1].angle_deg - s[i].angle_deg } else { s[i].angle_deg - s[i - 1].angle_deg };
    Ok(s[i].angle_deg + offset * step)
}

/// Centered beam number for output index `i` of an `n`-point transform.
pub fn centered_index(i: usize, n: usize) -> i64 {
    if i <= n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// `asin(k / (N Δx/λ))` per beam; `None` where the beam lies outside visible space.
pub fn theoretical_directions(g: &ArrayGeometry) -> Vec<Option<f64>> {
    let n = g.n_elements;
    (0..n)
        .map(|i| {
            let s = centered_index(i, n) as f64 / (n as f64 * g.spacing_wavelengths);
            (s.abs() <= 1.0).then(|| s.asin().to_degrees())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneWave {
    pub angle_deg: f64,
    pub amplitude: f64,
    pub phase_deg: f64,
}

impl PlaneWave {
    pub fn new(angle_deg: f64, amplitude: f64, phase_deg: f64) -> Result<Self> {
        check_angle(angle_deg)?;
        if !amplitude.is_finite() || !phase_deg.is_finite() {
            return Err(Error::InvalidParameter { name: "amplitude", reason: "must be finite".into() });
        }
        Ok(Self { angle_deg, amplitude, phase_deg })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneWaveResponse {
    pub outputs: Vec<ComplexF>,
    /// Index of the largest output; ties go to the lower index.
    pub winner: usize,
}

/// Feeds a plane wave through the fast algorithm.
pub fn simulate_plane_wave(f: &Factorization, g: &ArrayGeometry, w: &PlaneWave) -> Result<PlaneWaveResponse> {
    if f.size() != g.n_elements {
        return Err(Error::dims(format!("{}-point transform", g.n_elements), f.size()));
    }
    let carrier = ComplexF::from_polar(w.amplitude, w.phase_deg.to_radians());
    let signals: Vec<ComplexF> = steering_vector(g, w.angle_deg)?.into_iter().map(|a| a * carrier).collect();
    let outputs = f.apply(&signals)?;
    let mut winner = 0;
    for (i, z) in outputs.iter().enumerate() {
        if z.norm() > outputs[winner].norm() {
            winner = i;
        }
    }
    Ok(PlaneWaveResponse { outputs, winner })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PatternDeviation {
    pub max_db: f64,
    pub mean_db: f64,
    /// Samples where both patterns exceed the floor.
    pub compared: usize,
}

/// dB differences over the samples where both patterns are above `floor_db`.
pub fn pattern_deviation(a: &BeamPattern, b: &BeamPattern, floor_db: f64) -> Result<PatternDeviation> {
    if a.samples.len() != b.samples.len()
        || a.samples.iter().zip(&b.samples).any(|(x, y)| (x.angle_deg - y.angle_deg).abs() > 1e-9)
    {
        return Err(Error::GridMismatch);
    }
    let diffs: Vec<f64> = a
        .samples
        .iter()
        .zip(&b.samples)
        .filter(|(x, y)| x.magnitude_db > floor_db && y.magnitude_db > floor_db)
        .map(|(x, y)| (x.magnitude_db - y.magnitude_db).abs())
        .collect();
    if diffs.is_empty() {
        return Ok(PatternDeviation { max_db: 0.0, mean_db: 0.0, compared: 0 });
    }
    Ok(PatternDeviation {
        max_db: diffs.iter().copied().fold(0.0, f64::max),
        mean_db: diffs.iter().sum::<f64>() / diffs.len() as f64,
        compared: diffs.len(),
    })
}

/// Random gain and phase errors on the beam weights.
///
/// This is a generic stand-in for hardware imperfections, not a circuit model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbationModel {
    pub gain_sigma: f64,
    pub phase_sigma_deg: f64,
    pub trials: usize,
    pub seed: u64,
}

impl PerturbationModel {
    pub fn new(gain_sigma: f64, phase_sigma_deg: f64, trials: usize, seed: u64) -> Result<Self> {
        if !(gain_sigma >= 0.0 && gain_sigma.is_finite()) {
            return Err(Error::InvalidParameter { name: "gain_sigma", reason: "must be >= 0".into() });
        }
        if !(phase_sigma_deg >= 0.0 && phase_sigma_deg.is_finite()) {
            return Err(Error::InvalidParameter { name: "phase_sigma", reason: "must be >= 0".into() });
        }
        if trials == 0 {
            return Err(Error::InvalidParameter { name: "trials", reason: "must be at least 1".into() });
        }
        Ok(Self { gain_sigma, phase_sigma_deg, trials, seed })
    }

    /// Weights for trial `t`, drawn from the trial's own ChaCha stream.
    pub fn perturb(&self, weights: &[ComplexF], trial: usize) -> Vec<ComplexF> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        let gain = Normal::new(0.0, self.gain_sigma).expect("sigma validated");
        let phase = Normal::new(0.0, self.phase_sigma_deg.to_radians()).expect("sigma validated");
        weights
            .iter()
            .map(|&w| {
                let eg = gain.sample(&mut rng);
                let ep = phase.sample(&mut rng);
                w * ComplexF::from_polar(1.0 + eg, ep)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub angles_deg: Vec<f64>,
    pub mean_db: Vec<f64>,
    pub p5_db: Vec<f64>,
    pub p95_db: Vec<f64>,
    pub nominal_peak_deg: f64,
    /// Refined peak direction of each trial.
    pub peak_directions_deg: Vec<f64>,
    /// 95th percentile of `|trial peak - nominal peak|`.
    pub peak_shift_p95_deg: f64,
}

/// Linear interpolation between closest ranks; `sorted` must be ascending.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of an empty set");
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Monte Carlo pattern statistics under [`PerturbationModel`].
///
/// Trials use independent streams, so the result does not depend on how the
/// trials are scheduled across threads.
pub fn perturbed_patterns(
    weights: &[ComplexF],
    g: &ArrayGeometry,
    m: &PerturbationModel,
    opts: &PatternOptions,
) -> Result<EnsembleStats> {
    let nominal = beam_pattern(weights, g, opts)?;
    let nominal_peak_deg = beam_peak_direction(&nominal)?;
    let trials = (0..m.trials)
        .into_par_iter()
        .map(|t| {
            let p = beam_pattern(&m.perturb(weights, t), g, opts)?;
            let peak = beam_peak_direction(&p)?;
            Ok((p, peak))
        })
        .collect::<Result<Vec<_>>>()?;

    let n_angles = nominal.samples.len();
    let mut mean_db = Vec::with_capacity(n_angles);
    let mut p5_db = Vec::with_capacity(n_angles);
    let mut p95_db = Vec::with_capacity(n_angles);
    let mut column = Vec::with_capacity(trials.len());
    for a in 0..n_angles {
        column.clear();
        column.extend(trials.iter().map(|(p, _)| p.samples[a].magnitude_db));
        mean_db.push(column.iter().sum::<f64>() / column.len() as f64);
        column.sort_by(f64::total_cmp);
        p5_db.push(percentile(&column, 0.05));
        p95_db.push(percentile(&column, 0.95));
    }
    let peak_directions_deg: Vec<f64> = trials.iter().map(|&(_, d)| d).collect();
    let mut shifts: Vec<f64> = peak_directions_deg.iter().map(|d| (d - nominal_peak_deg).abs()).collect();
    shifts.sort_by(f64::total_cmp);

    Ok(EnsembleStats {
        angles_deg: nominal.samples.iter().map(|s| s.angle_deg).collect(),
        mean_db,
        p5_db,
        p95_db,
        nominal_peak_deg,
        peak_directions_deg,
        peak_shift_p95_deg: percentile(&shifts, 0.95),
    })
}
