use serde_json::{json, Value};

use adft_core::beamsim::{
    all_patterns, beam_peak_direction, beam_weights, perturbed_patterns, theoretical_directions, ArrayGeometry,
    BeamPattern, EnsembleStats, PerturbationModel,
};
use adft_core::{build_approx_matrix, build_exact_dft, DirectTransform};

use super::json_document;
use crate::config::{Format, PatternConfig, PerturbationConfig, TransformKind};
use crate::format::{csv_line, fmt_f64, num};
use crate::{CliError, Report};

/// Peak of one beam in both angle conventions.
#[derive(Clone, Debug, PartialEq)]
pub struct PeakSummary {
    pub beam: usize,
    /// From broadside, in [-90, 90].
    pub broadside_deg: f64,
    /// From the array axis, `90 - broadside`.
    pub axis_deg: f64,
    pub theoretical_deg: Option<f64>,
}

pub fn peak_summary(patterns: &[BeamPattern], g: &ArrayGeometry) -> Result<Vec<PeakSummary>, CliError> {
    let theory = theoretical_directions(g);
    patterns
        .iter()
        .map(|p| {
            let d = beam_peak_direction(p)?;
            Ok(PeakSummary {
                beam: p.beam_index,
                broadside_deg: d,
                axis_deg: 90.0 - d,
                theoretical_deg: theory[p.beam_index],
            })
        })
        .collect()
}

fn transform(kind: TransformKind) -> Box<dyn DirectTransform> {
    match kind {
        TransformKind::Approx => Box::new(build_approx_matrix()),
        TransformKind::Exact => Box::new(build_exact_dft(8).expect("n = 8")),
    }
}

fn summary_text(peaks: &[PeakSummary]) -> String {
    let mut s = String::from("# beam peaks (deg from broadside / from array axis / theory)\n");
    for p in peaks {
        let theory = p.theoretical_deg.map(fmt_f64).unwrap_or_else(|| "invisible".into());
        s.push_str(&format!("beam {}: {} / {} / {}\n", p.beam, fmt_f64(p.broadside_deg), fmt_f64(p.axis_deg), theory));
    }
    s
}

fn summary_json(peaks: &[PeakSummary]) -> Value {
    peaks
        .iter()
        .map(|p| {
            json!({
                "beam": p.beam,
                "peak_deg_from_broadside": num(p.broadside_deg),
                "peak_deg_from_axis": num(p.axis_deg),
                "theoretical_deg_from_broadside": p.theoretical_deg.map(num),
            })
        })
        .collect()
}

pub fn run(c: &PatternConfig) -> Result<Report, CliError> {
    let g = c.geometry.geometry();
    let opts = c.grid.options();
    let t = transform(c.transform);
    if let Some(pc) = &c.perturbation {
        return run_ensemble(c, pc, t.as_ref(), &g);
    }
    let patterns = all_patterns(t.as_ref(), &g, &opts)?;
    let peaks = peak_summary(&patterns, &g)?;
    let angles: Vec<f64> = patterns[0].samples().iter().map(|s| s.angle_deg).collect();

    Ok(match c.format {
        Format::Csv => {
            let mut header = vec!["angle_deg".to_string()];
            header.extend((0..patterns.len()).map(|k| format!("beam{k}_db")));
            let mut body = csv_line(&header);
            for (i, a) in angles.iter().enumerate() {
                let mut row = vec![fmt_f64(*a)];
                row.extend(patterns.iter().map(|p| fmt_f64(p.samples()[i].magnitude_db)));
                body.push_str(&csv_line(&row));
            }
            Report { body, notes: summary_text(&peaks), passed: true }
        }
        Format::Json => {
            let beams: Vec<Value> = patterns
                .iter()
                .map(|p| {
                    json!({
                        "beam": p.beam_index,
                        "magnitude_db": p.samples().iter().map(|s| num(s.magnitude_db)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let payload = json!({
                "angles_deg": angles.iter().map(|a| num(*a)).collect::<Vec<_>>(),
                "beams": beams,
                "peaks": summary_json(&peaks),
            });
            Report::ok(json_document("pattern", c, payload, None))
        }
        Format::Text => Report::ok(summary_text(&peaks)),
    })
}

fn ensemble_summary(pc: &PerturbationConfig, e: &EnsembleStats) -> String {
    format!(
        "# beam {}, {} trials: nominal peak {} deg, 95th percentile peak shift {} deg\n",
        pc.beam,
        pc.trials,
        fmt_f64(e.nominal_peak_deg),
        fmt_f64(e.peak_shift_p95_deg)
    )
}

fn run_ensemble(
    c: &PatternConfig,
    pc: &PerturbationConfig,
    t: &dyn DirectTransform,
    g: &ArrayGeometry,
) -> Result<Report, CliError> {
    let model = PerturbationModel::new(pc.gain_sigma, pc.phase_sigma_deg, pc.trials, pc.seed)?;
    let e = perturbed_patterns(&beam_weights(t, pc.beam), g, &model, &c.grid.options())?;
    Ok(match c.format {
        Format::Csv => {
            let b = pc.beam;
            let mut body = csv_line(&[
                "angle_deg".to_string(),
                format!("beam{b}_mean_db"),
                format!("beam{b}_p5_db"),
                format!("beam{b}_p95_db"),
            ]);
            for i in 0..e.angles_deg.len() {
                body.push_str(&csv_line(&[
                    fmt_f64(e.angles_deg[i]),
                    fmt_f64(e.mean_db[i]),
                    fmt_f64(e.p5_db[i]),
                    fmt_f64(e.p95_db[i]),
                ]));
            }
            Report { body, notes: ensemble_summary(pc, &e), passed: true }
        }
        Format::Json => {
            let v = |xs: &[f64]| xs.iter().map(|x| num(*x)).collect::<Vec<_>>();
            let payload = json!({
                "beam": pc.beam,
                "angles_deg": v(&e.angles_deg),
                "mean_db": v(&e.mean_db),
                "p5_db": v(&e.p5_db),
                "p95_db": v(&e.p95_db),
                "nominal_peak_deg": num(e.nominal_peak_deg),
                "peak_directions_deg": v(&e.peak_directions_deg),
                "peak_shift_p95_deg": num(e.peak_shift_p95_deg),
            });
            Report::ok(json_document("pattern", c, payload, Some(pc.seed)))
        }
        Format::Text => Report::ok(ensemble_summary(pc, &e)),
    })
}
