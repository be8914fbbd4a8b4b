//! JSON records and plain tables.

use fincat::ktheory::{GClass, KClass};
use fincat::linalg::{format_rational, Matrix, Subspace};
use fincat::quiver::{Representation, Subrepresentation};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

/// What a command produces: records, or a document printed verbatim.
pub enum Output {
    Records(Vec<Value>),
    Text(String),
}

pub fn rat(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn class(c: &GClass) -> Value {
    json!(c.coeffs())
}

pub fn kclass(k: &KClass) -> Value {
    Value::Array(k.coeffs().iter().map(rat).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|s| Value::String(s.to_string())).collect()))
            .collect(),
    )
}

fn subspace(s: &Subspace) -> Value {
    matrix(s.basis_rows())
}

/// Dimension vector and per-vertex basis rows of a subobject.
pub fn subrep(e: &Subrepresentation) -> Value {
    json!({
        "dims": e.dims(),
        "basis": e.spaces().iter().map(subspace).collect::<Vec<_>>(),
    })
}

pub fn rep(v: &Representation) -> Value {
    let alg = v.algebra();
    let mut maps = Map::new();
    for (arrow, m) in alg.arrows().iter().zip(v.maps()) {
        maps.insert(arrow.name.clone(), matrix(m));
    }
    json!({
        "field": v.field().to_string(),
        "dims": v.dims(),
        "maps": maps,
    })
}

pub fn json_lines(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// One `key  value` block per record, blank line between records.
pub fn tables(records: &[Value]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match r {
            Value::Object(m) => {
                let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
                for (k, v) in m {
                    out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
                }
            }
            other => {
                out.push_str(&cell(other));
                out.push('\n');
            }
        }
    }
    out
}
