//! Number rendering shared by the text, CSV and JSON writers.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Shortest text for the 12-digit rounding of `x`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = sig12(x);
    if r == 0.0 {
        "0".into()
    } else if r.abs() < 1e-4 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// JSON number rounded to 12 digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(sig12(x))
    } else {
        Value::String(fmt_f64(x))
    }
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let mut line = fields.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(fmt_f64(0.5295866830266497), "0.529586683027");
        assert_eq!(fmt_f64(30.000000000000004), "30");
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(2.220446049250313e-16), "2.22044604925e-16");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(num(f64::NEG_INFINITY), Value::String("-inf".into()));
        assert_eq!(fmt_f64(1234567.0), "1234567");
    }

    #[test]
    fn csv() {
        assert_eq!(csv_line(&["a", "b"]), "a,b\n");
    }
}
