//! JSON report shapes (schema 1) and exact-number serialization helpers.

use num_traits::Zero;
use origami_core::matrix::QMat;
use origami_core::{EdgeChain, Rat};
use serde::Serialize;
use serde_json::Value;

/// Exact scalar: a JSON integer when it fits, otherwise a `"p/q"` string.
pub fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.to_integer()) {
            return Value::from(i);
        }
    }
    Value::from(format!("{r}"))
}

pub fn matrix_json(m: &QMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| rat_json(m.get(r, c))).collect()))
            .collect(),
    )
}

/// Row-major text with one row per line.
pub fn matrix_text(m: &QMat) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format!("{}", m.get(r, c))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Sparse edge-coefficient serialization of a chain: nonzero `x_i`/`y_i`
/// entries with 1-based square indices.
pub fn chain_json(c: &EdgeChain) -> Value {
    let mut x = serde_json::Map::new();
    let mut y = serde_json::Map::new();
    for i in 0..c.squares() {
        if !c.x(i).is_zero() {
            x.insert(format!("{}", i + 1), rat_json(c.x(i)));
        }
        if !c.y(i).is_zero() {
            y.insert(format!("{}", i + 1), rat_json(c.y(i)));
        }
    }
    serde_json::json!({ "x": x, "y": y })
}

pub fn chain_text(c: &EdgeChain) -> String {
    let mut parts: Vec<String> = Vec::new();
    for i in 0..c.squares() {
        if !c.x(i).is_zero() {
            parts.push(format!("{}*x{}", c.x(i), i + 1));
        }
    }
    for i in 0..c.squares() {
        if !c.y(i).is_zero() {
            parts.push(format!("{}*y{}", c.y(i), i + 1));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[derive(Serialize)]
pub struct StratumReport {
    pub name: String,
    pub zero_orders: Vec<usize>,
    pub genus: usize,
    pub marked_regular_points: usize,
}

impl StratumReport {
    pub fn from(s: &origami_core::StratumSignature) -> Self {
        StratumReport {
            name: s.name(),
            zero_orders: s.zero_orders.clone(),
            genus: s.genus,
            marked_regular_points: s.marked_regular_points,
        }
    }
}
