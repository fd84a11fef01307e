//! CSV serialization of [`StructureTables`].
//!
//! ```text
//! type,i,j,k,label_i,label_j,label_k,value
//! e,1,2,3,X:1:1,Y:1:1,Z:1,0.50000000000000000
//! ```
//!
//! Rows are ordered by type (`e` before `g`) and then lexicographically by
//! the sorted index triple. Values carry 17 significant digits, enough to
//! round-trip an `f64`.

use std::fmt;
use std::io::{BufRead, Write};

use super::StructureTables;
use crate::error::{Error, Result};
use crate::spinbasis::{BasisLabel, BasisSet};

pub const CSV_HEADER: &str = "type,i,j,k,label_i,label_j,label_k,value";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableType {
    E,
    G,
}

impl fmt::Display for TableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableType::E => "e",
            TableType::G => "g",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub kind: TableType,
    pub indices: (usize, usize, usize),
    pub labels: [BasisLabel; 3],
    pub value: f64,
}

/// Positional decimal with 17 significant digits; scientific notation for
/// very large or very small magnitudes.
pub fn format_sig17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.16e}", v);
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if !(-7..=16).contains(&exp) {
        return sci;
    }
    let decimals = (16 - exp).max(0) as usize;
    format!("{:.*}", decimals, v)
}

pub fn write_csv<W: Write>(tables: &StructureTables, basis: &BasisSet, mut out: W) -> Result<()> {
    if tables.spin() != basis.spin() {
        return Err(Error::SpinMismatch {
            tables: tables.spin(),
            state: basis.spin(),
        });
    }
    writeln!(out, "{CSV_HEADER}")?;
    let rows = tables
        .e_entries()
        .map(|r| (TableType::E, r))
        .chain(tables.g_entries().map(|r| (TableType::G, r)));
    for (kind, ((i, j, k), v)) in rows {
        writeln!(
            out,
            "{kind},{i},{j},{k},{},{},{},{}",
            basis.labels()[i],
            basis.labels()[j],
            basis.labels()[k],
            format_sig17(v)
        )?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<TableRow>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == CSV_HEADER => {}
        Some(Ok(h)) => return Err(Error::Parse(format!("unexpected header {h:?}"))),
        Some(Err(e)) => return Err(e.into()),
        None => return Err(Error::Parse("empty table file".into())),
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line:?}", lineno + 2));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(bad("expected 8 fields"));
        }
        let kind = match f[0] {
            "e" => TableType::E,
            "g" => TableType::G,
            _ => return Err(bad("type must be e or g")),
        };
        let idx = |s: &str| s.parse::<usize>().map_err(|_| bad("bad index"));
        let indices = (idx(f[1])?, idx(f[2])?, idx(f[3])?);
        let labels = [f[4].parse()?, f[5].parse()?, f[6].parse()?];
        let value = f[7].parse::<f64>().map_err(|_| bad("bad value"))?;
        rows.push(TableRow {
            kind,
            indices,
            labels,
            value,
        });
    }
    Ok(rows)
}
