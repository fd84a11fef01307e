//! Newline-delimited JSON trajectory files.
//!
//! The first line is a header record; every following line is one snapshot:
//!
//! ```text
//! {"spins":["1/2"],"dt":0.001,"steps":10000,"h_shape":[4],"h":[0.0,0.0,0.0,2.0]}
//! {"t":0.0,"R":[1.0,1.0,0.0,0.0],"bloch_length":1.0}
//! ```
//!
//! Two-qudit `R` and `h` arrays are flattened row-major, with shape
//! `[n1 + 1, n2 + 1]` recorded in `h_shape`.

use std::io::{BufRead, Write};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::integrate::Trajectory;
use crate::error::{Error, Result};
use crate::wigner::HalfInt;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryHeader {
    pub spins: Vec<HalfInt>,
    pub dt: f64,
    pub steps: usize,
    pub h_shape: Vec<usize>,
    pub h: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: f64,
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    pub bloch_length: f64,
}

/// Row-major flattening used in trajectory files.
pub trait FlatComponents {
    fn flat_row_major(&self) -> Vec<f64>;
    fn shape(&self) -> Vec<usize>;
}

impl FlatComponents for DVector<f64> {
    fn flat_row_major(&self) -> Vec<f64> {
        self.iter().copied().collect()
    }

    fn shape(&self) -> Vec<usize> {
        vec![self.len()]
    }
}

impl FlatComponents for DMatrix<f64> {
    fn flat_row_major(&self) -> Vec<f64> {
        self.transpose().iter().copied().collect()
    }

    fn shape(&self) -> Vec<usize> {
        vec![self.nrows(), self.ncols()]
    }
}

impl TrajectoryHeader {
    pub fn new<H: FlatComponents>(spins: Vec<HalfInt>, dt: f64, steps: usize, h: &H) -> Self {
        TrajectoryHeader {
            spins,
            dt,
            steps,
            h_shape: h.shape(),
            h: h.flat_row_major(),
        }
    }
}

pub fn write_trajectory_jsonl<S: FlatComponents, W: Write>(
    header: &TrajectoryHeader,
    trajectory: &Trajectory<S>,
    mut out: W,
) -> Result<()> {
    serde_json::to_writer(&mut out, header)?;
    out.write_all(b"\n")?;
    for (t, s, b) in trajectory.iter() {
        let rec = TrajectoryRecord {
            t,
            r: s.flat_row_major(),
            bloch_length: b,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_trajectory_jsonl<R: BufRead>(input: R) -> Result<(TrajectoryHeader, Vec<TrajectoryRecord>)> {
    let mut lines = input.lines();
    let header: TrajectoryHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?)?,
        None => return Err(Error::Parse("empty trajectory file".into())),
    };
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            records.push(serde_json::from_str(&line)?);
        }
    }
    Ok((header, records))
}
