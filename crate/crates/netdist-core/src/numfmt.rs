//! Significant-digit formatting for report output.

use alloc::format;
use alloc::string::{String, ToString};

/// Formats `x` with the given number of significant digits, keeping
/// trailing zeros (`1.41421`, `1.00000`, `0.533748`). Falls back to
/// scientific notation when the decimal form would be unwieldy, mirroring
/// `%g` thresholds.
pub fn format_significant(x: f64, digits: usize) -> String {
    format_sig(x, digits, false)
}

/// As [`format_significant`] but with trailing zeros (and a trailing `.`)
/// trimmed, so exact small integers print bare: `1`, `-1`, `0`.
pub fn format_significant_trimmed(x: f64, digits: usize) -> String {
    format_sig(x, digits, true)
}

fn format_sig(x: f64, digits: usize, trim: bool) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        let s = format!("{:.*}", digits - 1, 0.0);
        return if trim { trim_zeros(s) } else { s };
    }
    let exponent = decimal_exponent(x);
    // %g switches to scientific outside [-4, digits)
    if exponent < -4 || exponent >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        return if trim { trim_exp_zeros(s) } else { s };
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if trim {
        trim_zeros(s)
    } else {
        s
    }
}

/// Power-of-ten exponent of `x`, read off the `{:e}` rendering so that
/// boundary values round the same way the formatter does.
fn decimal_exponent(x: f64) -> i32 {
    let sci = format!("{x:e}");
    let (_, exp) = sci.split_once('e').expect("{:e} always contains 'e'");
    exp.parse().expect("exponent is an integer")
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t.is_empty() || t == "-" {
        String::from("0")
    } else {
        String::from(t)
    }
}

fn trim_exp_zeros(s: String) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let m = trim_zeros(String::from(mantissa));
            format!("{m}e{exp}")
        }
        None => s,
    }
}
