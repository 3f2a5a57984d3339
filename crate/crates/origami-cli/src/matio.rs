//! Matrix input for the density command: whitespace text or JSON, including
//! the JSON emitted by `monodromy --json`.

use std::str::FromStr;

use origami_core::matrix::QMat;
use origami_core::{Int, Rat};
use serde_json::Value;

pub struct DensityInput {
    pub matrices: Vec<QMat>,
    pub form: Option<QMat>,
}

pub fn parse_density_input(text: &str) -> Result<DensityInput, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        parse_json(&value)
    } else {
        parse_text(text)
    }
}

fn parse_json(value: &Value) -> Result<DensityInput, String> {
    match value {
        Value::Array(_) => {
            // a bare array of matrices
            let matrices = matrix_list(value)?;
            Ok(DensityInput {
                matrices,
                form: None,
            })
        }
        Value::Object(obj) => {
            if let Some(dirs) = obj.get("directions") {
                // piped monodromy output: one perp matrix per direction
                let list = dirs
                    .as_array()
                    .ok_or_else(|| "\"directions\" must be an array".to_string())?;
                let mut matrices = Vec::new();
                for d in list {
                    let m = d
                        .get("perp_matrix")
                        .ok_or_else(|| "direction entry lacks \"perp_matrix\"".to_string())?;
                    matrices.push(matrix_value(m)?);
                }
                let form = obj.get("perp_gram").map(matrix_value).transpose()?;
                return Ok(DensityInput { matrices, form });
            }
            let matrices = matrix_list(
                obj.get("matrices")
                    .ok_or_else(|| "JSON object lacks \"matrices\"".to_string())?,
            )?;
            let form = obj.get("form").map(matrix_value).transpose()?;
            Ok(DensityInput { matrices, form })
        }
        _ => Err("JSON input must be an object or an array of matrices".to_string()),
    }
}

fn matrix_list(value: &Value) -> Result<Vec<QMat>, String> {
    value
        .as_array()
        .ok_or_else(|| "expected an array of matrices".to_string())?
        .iter()
        .map(matrix_value)
        .collect()
}

fn matrix_value(value: &Value) -> Result<QMat, String> {
    let rows = value
        .as_array()
        .ok_or_else(|| "matrix must be an array of rows".to_string())?;
    let mut data: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| "matrix row must be an array".to_string())?;
        data.push(
            entries
                .iter()
                .map(scalar_value)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    build(data)
}

fn scalar_value(v: &Value) -> Result<Rat, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(u.into()))
            } else {
                Err(format!(
                    "non-integer JSON number {n}; write rationals as \"p/q\""
                ))
            }
        }
        Value::String(s) => parse_rat(s),
        other => Err(format!("not a matrix entry: {other}")),
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = Int::from_str(p.trim()).map_err(|_| format!("bad numerator \"{p}\""))?;
        let q = Int::from_str(q.trim()).map_err(|_| format!("bad denominator \"{q}\""))?;
        if q == Int::from(0) {
            return Err("zero denominator".to_string());
        }
        Ok(Rat::new(p, q))
    } else {
        let p = Int::from_str(s).map_err(|_| format!("bad number \"{s}\""))?;
        Ok(Rat::from_integer(p))
    }
}

/// Whitespace matrices: rows on lines, matrices separated by blank lines,
/// `#` comment lines ignored.
fn parse_text(text: &str) -> Result<DensityInput, String> {
    let mut matrices = Vec::new();
    let mut block: Vec<Vec<Rat>> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !block.is_empty() {
                matrices.push(build(std::mem::take(&mut block))?);
            }
            continue;
        }
        let row: Result<Vec<Rat>, String> = line.split_whitespace().map(parse_rat).collect();
        block.push(row?);
    }
    if matrices.is_empty() {
        return Err("no matrices found in input".to_string());
    }
    Ok(DensityInput {
        matrices,
        form: None,
    })
}

fn build(rows: Vec<Vec<Rat>>) -> Result<QMat, String> {
    let r = rows.len();
    if r == 0 {
        return Err("empty matrix".to_string());
    }
    let c = rows[0].len();
    if rows.iter().any(|row| row.len() != c) {
        return Err("ragged matrix rows".to_string());
    }
    Ok(QMat::from_fn(r, c, |i, j| rows[i][j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_blocks() {
        let input = "# two generators\n1 1\n0 1\n\n1 0\n1 1\n";
        let parsed = parse_density_input(input).unwrap();
        assert_eq!(parsed.matrices.len(), 2);
        assert_eq!(parsed.matrices[0], QMat::from_i64_rows(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn json_forms() {
        let input = r#"{"matrices": [[[1, "1/2"], [0, 1]]], "form": [[0,1],[-1,0]]}"#;
        let parsed = parse_density_input(input).unwrap();
        assert_eq!(parsed.matrices.len(), 1);
        assert!(parsed.form.is_some());
        assert_eq!(*parsed.matrices[0].get(0, 1), Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn monodromy_shape() {
        let input = r#"{"schema":1,"perp_gram":[[0,1],[-1,0]],
            "directions":[{"direction":"1,0","perp_matrix":[[1,1],[0,1]]}]}"#;
        let parsed = parse_density_input(input).unwrap();
        assert_eq!(parsed.matrices.len(), 1);
        assert!(parsed.form.is_some());
    }
}
