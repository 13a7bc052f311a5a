use serde_json::{json, Value};

use adft_core::search::{run_search, CandidateParams, SearchResult};
use adft_core::GaussianInt;

use super::json_document;
use crate::config::{Format, SearchConfig};
use crate::format::{csv_line, fmt_f64, num};
use crate::Report;

/// `(2, 1-j, -2j)`, i.e. the scaled elements `1, (1-j)/2, -j`.
pub fn expected_optimum() -> CandidateParams {
    CandidateParams::new(2, GaussianInt::new(1, -1), GaussianInt::new(0, -2)).expect("valid candidate")
}

fn dyadic(r: &SearchResult) -> String {
    r.dyadic_scale().map(|d| d.to_string()).unwrap_or_else(|| "-".into())
}

fn ortho(r: &SearchResult) -> String {
    r.orthogonality_deviation.map(fmt_f64).unwrap_or_else(|| "-".into())
}

fn to_json(rank: usize, r: &SearchResult) -> Value {
    json!({
        "rank": rank,
        "h0": r.params.h0,
        "h1": r.params.h1.to_string(),
        "h2": r.params.h2.to_string(),
        "scale": num(r.scale),
        "dyadic_scale": r.dyadic_scale().map(|d| d.to_string()),
        "frobenius_error": num(r.frobenius_error),
        "orthogonality_deviation": r.orthogonality_deviation.map(num),
        "adder_cost": r.adder_cost,
        "condition_number": num(r.condition_number),
    })
}

pub fn run(c: &SearchConfig) -> Report {
    let ranked = run_search();
    let matches = ranked[0].params == expected_optimum();
    let top = &ranked[..c.top_k];
    let body = match c.format {
        Format::Json => {
            let results: Vec<Value> = top.iter().enumerate().map(|(i, r)| to_json(i + 1, r)).collect();
            let payload = json!({
                "candidates": ranked.len(),
                "rank1_matches_expected": matches,
                "expected": expected_optimum().to_string(),
                "results": results,
            });
            json_document("search", c, payload, None)
        }
        Format::Csv => {
            let mut s = csv_line(&[
                "rank",
                "h0",
                "h1",
                "h2",
                "scale",
                "dyadic_scale",
                "frobenius_error",
                "orthogonality_deviation",
                "adder_cost",
                "condition_number",
            ]);
            for (i, r) in top.iter().enumerate() {
                s.push_str(&csv_line(&[
                    (i + 1).to_string(),
                    r.params.h0.to_string(),
                    r.params.h1.to_string(),
                    r.params.h2.to_string(),
                    fmt_f64(r.scale),
                    dyadic(r),
                    fmt_f64(r.frobenius_error),
                    ortho(r),
                    r.adder_cost.to_string(),
                    fmt_f64(r.condition_number),
                ]));
            }
            s
        }
        Format::Text => {
            let mut s = format!("# {} candidates, best first\n", ranked.len());
            s.push_str(&format!(
                "{:>4}  {:<18} {:>15} {:>6} {:>15} {:>15} {:>6} {:>15}\n",
                "rank", "(h0, h1, h2)", "scale", "2^-k", "error", "orthogonality", "adders", "condition"
            ));
            for (i, r) in top.iter().enumerate() {
                s.push_str(&format!(
                    "{:>4}  {:<18} {:>15} {:>6} {:>15} {:>15} {:>6} {:>15}\n",
                    i + 1,
                    r.params.to_string(),
                    fmt_f64(r.scale),
                    dyadic(r),
                    fmt_f64(r.frobenius_error),
                    ortho(r),
                    r.adder_cost,
                    fmt_f64(r.condition_number)
                ));
            }
            s
        }
    };
    let notes = if matches {
        String::new()
    } else {
        format!("rank 1 is {}, expected {}\n", ranked[0].params, expected_optimum())
    };
    Report { body, notes, passed: matches }
}
