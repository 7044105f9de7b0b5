use bicircle::scalar::rational_string;
use bicircle::{Rational, Scalar, Vec3};
use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA: &str = "bicircle.report/1";

/// Decimal string with 17 significant digits.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() });
    }
    Value::String(format!("{:.16e}", x + 0.0))
}

pub fn exact(q: &Rational) -> Value {
    json!({ "value": num(q.to_f64()), "exact": rational_string(q) })
}

/// Exact string only for exact scalars.
pub fn scalar<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        exact(&x.to_rational())
    } else {
        num(x.to_f64())
    }
}

pub fn vec3(v: &Vec3<f64>) -> Value {
    Value::Array(v.to_array().iter().map(|&x| num(x)).collect())
}

/// Replaces every float in a serialized value by its 17-digit string.
pub fn stringify_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() || n.to_string().contains(['.', 'e', 'E']) => {
            num(n.as_f64().unwrap_or(f64::NAN))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_floats(v))).collect()),
        other => other,
    }
}

pub fn serialized<T: serde::Serialize>(x: &T) -> Value {
    stringify_floats(serde_json::to_value(x).expect("report values serialize"))
}

pub fn envelope(command: &str, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(REPORT_SCHEMA.into()));
    m.insert("command".into(), Value::String(command.into()));
    m.insert("status".into(), Value::String("ok".into()));
    m.insert("result".into(), result);
    Value::Object(m)
}

pub fn error_envelope(command: &str, code: &str, message: &str) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "command": command,
        "status": "error",
        "error": { "code": code, "message": message },
    })
}
