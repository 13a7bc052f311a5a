use serde_json::{json, Value};

use adft_core::{build_approx_matrix, build_factorization, DyadicGaussian, Matrix};

use super::json_document;
use crate::config::{Format, MatrixConfig, Which};
use crate::{CliError, Report};

/// Entry `(i, k)` of the exact DFT as an exact symbol: axis values are
/// written out, everything else as a power of `w = exp(-2 pi j / n)`.
pub fn exact_entry(i: usize, k: usize, n: usize) -> String {
    let m = (i * k) % n;
    if (4 * m).is_multiple_of(n) {
        return match 4 * m / n {
            0 => "1",
            1 => "-1j",
            2 => "-1",
            _ => "1j",
        }
        .into();
    }
    format!("w^{m}")
}

fn dyadic_rows(m: &Matrix<DyadicGaussian>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn text_rows(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(" ") + "\n").collect()
}

pub fn run(c: &MatrixConfig) -> Result<Report, CliError> {
    let (text, payload) = match c.which {
        Which::Exact => {
            let rows: Vec<Vec<String>> = (0..c.n).map(|i| (0..c.n).map(|k| exact_entry(i, k, c.n)).collect()).collect();
            let exponents: Vec<Vec<usize>> = (0..c.n).map(|i| (0..c.n).map(|k| (i * k) % c.n).collect()).collect();
            let text = format!("# exact DFT, n = {}, w = exp(-2*pi*j/{})\n{}", c.n, c.n, text_rows(&rows));
            (
                text,
                json!({ "which": "exact", "n": c.n, "root": format!("exp(-2*pi*j/{})", c.n), "rows": rows, "exponents": exponents }),
            )
        }
        Which::Approx => {
            let t = build_approx_matrix();
            let rows = dyadic_rows(&t.dyadic_matrix());
            let integer_rows: Vec<Vec<String>> =
                (0..8).map(|i| t.integer_matrix().row(i).iter().map(ToString::to_string).collect()).collect();
            let text = format!("# approximate DFT, n = 8, scale {}\n{}", t.scale(), text_rows(&rows));
            (
                text,
                json!({ "which": "approx", "n": 8, "scale": t.scale().to_string(), "rows": rows, "integer_rows": integer_rows }),
            )
        }
        Which::Stages => {
            let f = build_factorization();
            let mut text = format!("# {} stages, applied first to last\n", f.stages().len());
            let mut stages = Vec::new();
            for (idx, s) in f.stages().iter().enumerate() {
                let rows = dyadic_rows(&s.to_matrix());
                text.push_str(&format!("\nstage {}: {}\n{}", idx + 1, s.name(), text_rows(&rows)));
                stages.push(json!({ "index": idx + 1, "name": s.name(), "rows": rows }));
            }
            (text, json!({ "which": "stages", "n": 8, "stages": Value::Array(stages) }))
        }
    };
    let body = match c.format {
        Format::Json => json_document("matrix", c, payload, None),
        _ => text,
    };
    Ok(Report::ok(body))
}
