//! Number formatting for the command-line output.
//!
//! Human-readable output uses 10 significant digits with trailing zeros
//! removed; JSON and CSV use 17, enough to round-trip any `f64`.

use serde::Serializer;
use serde_json::value::RawValue;

pub const TEXT_DIGITS: usize = 10;
pub const EXACT_DIGITS: usize = 17;

/// Formats `x` with `digits` significant digits. Positional notation is
/// used for decimal exponents in `[-5, 15]`, scientific otherwise.
pub fn significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    // Round first, then read the exponent off the rounded value.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn text(x: f64) -> String {
    significant(x, TEXT_DIGITS)
}

pub fn exact(x: f64) -> String {
    significant(x, EXACT_DIGITS)
}

/// A JSON number with 17 significant digits; non-finite values become the
/// strings `"inf"`, `"-inf"` and `"nan"`.
pub fn json_number(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() {
        exact(x)
    } else {
        format!("\"{}\"", exact(x))
    };
    RawValue::from_string(s).expect("formatted number is valid JSON")
}

/// `serialize_with` adapter for [`json_number`].
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&json_number(*x), s)
}

/// `serialize_with` adapter for an interval.
pub fn sig17_pair<S: Serializer>(x: &(f64, f64), s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[json_number(x.0), json_number(x.1)], s)
}

/// CSV with a fixed header, LF line endings and `.` decimal separator.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(exact).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
