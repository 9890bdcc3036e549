//! Canonical JSON: sorted keys, floats rounded to 12 significant digits,
//! complex numbers as `{"re", "im"}`.

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

pub const SIG_DIGITS: usize = 12;
/// Magnitudes below this are rounding noise and print as `0`.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Rounds to [`SIG_DIGITS`] significant digits. `-0.0` and anything below
/// [`NOISE_FLOOR`] become `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < NOISE_FLOOR {
        return 0.0;
    }
    let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_list(zs: &[C64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

/// Rounds every float in `v`; non-finite floats become `null`.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            Number::from_f64(round_sig(x)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonicalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// Serializes `value` canonically, pretty-printed with a trailing newline.
pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let v = canonicalize(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
