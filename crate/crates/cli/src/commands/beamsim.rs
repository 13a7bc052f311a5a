use serde_json::{json, Value};

use adft_core::beamsim::{simulate_plane_wave, theoretical_directions, PlaneWave};
use adft_core::build_factorization;

use super::json_document;
use crate::config::{BeamsimConfig, Format};
use crate::format::{csv_line, fmt_f64, num};
use crate::{CliError, Report};

pub fn run(c: &BeamsimConfig) -> Result<Report, CliError> {
    let g = c.geometry.geometry();
    let wave = PlaneWave::new(c.angle_deg, c.amplitude, c.phase_deg)?;
    let r = simulate_plane_wave(&build_factorization(), &g, &wave)?;
    let theory = theoretical_directions(&g);
    let top = r.outputs[r.winner].norm();
    // relative level in dB, floored so an exact null stays finite
    let level = |m: f64| if m > 0.0 { (20.0 * (m / top).log10()).max(-300.0) } else { -300.0 };
    let dir = |k: usize| theory[k].map(fmt_f64).unwrap_or_else(|| "invisible".into());

    let body = match c.format {
        Format::Json => {
            let outputs: Vec<Value> = r
                .outputs
                .iter()
                .enumerate()
                .map(|(k, z)| {
                    json!({
                        "beam": k,
                        "direction_deg": theory[k].map(num),
                        "re": num(z.re),
                        "im": num(z.im),
                        "magnitude": num(z.norm()),
                        "level_db": num(level(z.norm())),
                    })
                })
                .collect();
            json_document("beamsim", c, json!({ "outputs": outputs, "winner": r.winner }), None)
        }
        Format::Csv => {
            let mut s = csv_line(&["beam", "direction_deg", "re", "im", "magnitude", "level_db"]);
            for (k, z) in r.outputs.iter().enumerate() {
                s.push_str(&csv_line(&[
                    k.to_string(),
                    dir(k),
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                    fmt_f64(z.norm()),
                    fmt_f64(level(z.norm())),
                ]));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:>4} {:>15} {:>15} {:>15}\n", "beam", "direction_deg", "magnitude", "level_db");
            for (k, z) in r.outputs.iter().enumerate() {
                s.push_str(&format!(
                    "{:>4} {:>15} {:>15} {:>15}\n",
                    k,
                    dir(k),
                    fmt_f64(z.norm()),
                    fmt_f64(level(z.norm()))
                ));
            }
            s.push_str(&format!("winner: {}\n", r.winner));
            s
        }
    };
    let notes = if c.format == Format::Csv { format!("winner: {}\n", r.winner) } else { String::new() };
    Ok(Report { body, notes, passed: true })
}
