//! Argument parsing: spins and label-keyed coefficient lists.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use nalgebra::{DMatrix, DVector};
use serde_json::Value;
use spinalg::{BasisLabel, BasisSet, HalfInt};

/// A spin `S` with `2S` a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinArg(pub HalfInt);

impl FromStr for SpinArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let h: HalfInt = s.parse().map_err(|e| format!("{e}"))?;
        if h.twice() <= 0 {
            return Err(format!("spin must be positive, got {h}"));
        }
        Ok(SpinArg(h))
    }
}

impl fmt::Display for SpinArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Split `key=value`.
fn split_pair(item: &str) -> Result<(&str, f64)> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| anyhow!("expected label=value, got {item:?}"))?;
    let v: f64 = value
        .trim()
        .parse()
        .with_context(|| format!("bad number in {item:?}"))?;
    if !v.is_finite() {
        bail!("non-finite coefficient in {item:?}");
    }
    Ok((key.trim(), v))
}

fn label_index(basis: &BasisSet, text: &str) -> Result<usize> {
    let label: BasisLabel = text.parse().map_err(|e| anyhow!("{e}"))?;
    Ok(basis.index_of(&label)?)
}

fn pair_index(b1: &BasisSet, b2: &BasisSet, key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once('*')
        .ok_or_else(|| anyhow!("two-qudit keys are written A*B, got {key:?}"))?;
    Ok((label_index(b1, a.trim())?, label_index(b2, b.trim())?))
}

/// One-qudit coefficients from `label=value` items.
pub fn vector_from_items(basis: &BasisSet, items: &[String]) -> Result<DVector<f64>> {
    let mut v = DVector::zeros(basis.len());
    let mut seen = BTreeMap::new();
    for item in items {
        let (key, value) = split_pair(item)?;
        let idx = label_index(basis, key)?;
        if seen.insert(idx, key.to_string()).is_some() {
            bail!("coefficient for {key} given twice");
        }
        v[idx] = value;
    }
    Ok(v)
}

/// Two-qudit coefficients from `A*B=value` items.
pub fn matrix_from_items(b1: &BasisSet, b2: &BasisSet, items: &[String]) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(b1.len(), b2.len());
    let mut seen = BTreeMap::new();
    for item in items {
        let (key, value) = split_pair(item)?;
        let idx = pair_index(b1, b2, key)?;
        if seen.insert(idx, key.to_string()).is_some() {
            bail!("coefficient for {key} given twice");
        }
        m[idx] = value;
    }
    Ok(m)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| anyhow!("{what}: expected a finite number, got {v}"))
}

/// Object of `label: value` pairs, or an array in canonical order.
pub fn vector_from_json(basis: &BasisSet, path: &Path) -> Result<DVector<f64>> {
    match read_json(path)? {
        Value::Object(map) => {
            let items = map
                .iter()
                .map(|(k, v)| Ok(format!("{k}={}", number(v, k)?)))
                .collect::<Result<Vec<_>>>()?;
            vector_from_items(basis, &items)
        }
        Value::Array(xs) => {
            if xs.len() != basis.len() {
                bail!("expected {} coefficients, got {}", basis.len(), xs.len());
            }
            let vals = xs
                .iter()
                .enumerate()
                .map(|(i, x)| number(x, &format!("entry {i}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(DVector::from_vec(vals))
        }
        other => bail!("expected an object or array, got {other}"),
    }
}

/// Object of `A*B: value` pairs, or an array of rows in canonical order.
pub fn matrix_from_json(b1: &BasisSet, b2: &BasisSet, path: &Path) -> Result<DMatrix<f64>> {
    match read_json(path)? {
        Value::Object(map) => {
            let items = map
                .iter()
                .map(|(k, v)| Ok(format!("{k}={}", number(v, k)?)))
                .collect::<Result<Vec<_>>>()?;
            matrix_from_items(b1, b2, &items)
        }
        Value::Array(rows) => {
            if rows.len() != b1.len() {
                bail!("expected {} rows, got {}", b1.len(), rows.len());
            }
            let mut m = DMatrix::zeros(b1.len(), b2.len());
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| anyhow!("row {i} is not an array"))?;
                if row.len() != b2.len() {
                    bail!("row {i}: expected {} entries, got {}", b2.len(), row.len());
                }
                for (j, x) in row.iter().enumerate() {
                    m[(i, j)] = number(x, &format!("entry ({i},{j})"))?;
                }
            }
            Ok(m)
        }
        other => bail!("expected an object or array, got {other}"),
    }
}
