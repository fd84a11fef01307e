//! File formats written by the CLI that are not part of the library.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;
use spinalg::dynamics::{FlatComponents, Trajectory};
use spinalg::structconst::{format_sig17, StructureTables};
use spinalg::BasisSet;

/// Buffered writer to a file, or to standard output when `path` is `None`.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// One JSON object per basis element:
/// `{"index","label","kind","k","q","dim","re","im"}` with row-major entries.
pub fn basis_jsonl(basis: &BasisSet, out: &mut dyn Write) -> Result<()> {
    for (i, (label, m)) in basis.labels().iter().zip(basis.matrices()).enumerate() {
        let d = m.nrows();
        let mut re = Vec::with_capacity(d * d);
        let mut im = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                re.push(m[(r, c)].re);
                im.push(m[(r, c)].im);
            }
        }
        let rec = json!({
            "index": i,
            "label": label.to_string(),
            "kind": format!("{:?}", label.kind),
            "k": label.k,
            "q": label.q,
            "dim": d,
            "re": re,
            "im": im,
        });
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub const BASIS_CSV_HEADER: &str = "index,label,k,q,row,col,re,im";

/// One CSV row per matrix entry.
pub fn basis_csv(basis: &BasisSet, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{BASIS_CSV_HEADER}")?;
    for (i, (label, m)) in basis.labels().iter().zip(basis.matrices()).enumerate() {
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                writeln!(
                    out,
                    "{i},{label},{},{},{r},{c},{},{}",
                    label.k,
                    label.q,
                    format_sig17(z.re),
                    format_sig17(z.im)
                )?;
            }
        }
    }
    Ok(())
}

/// Structure-constant rows as JSON objects, same fields as the CSV.
pub fn tables_jsonl(tables: &StructureTables, basis: &BasisSet, out: &mut dyn Write) -> Result<()> {
    let labels = basis.labels();
    let rows = tables
        .e_entries()
        .map(|t| ("e", t))
        .chain(tables.g_entries().map(|t| ("g", t)));
    for (kind, ((i, j, k), value)) in rows {
        let rec = json!({
            "type": kind,
            "i": i, "j": j, "k": k,
            "label_i": labels[i].to_string(),
            "label_j": labels[j].to_string(),
            "label_k": labels[k].to_string(),
            "value": value,
        });
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// `t,bloch_length,<component columns>`, components row-major.
pub fn trajectory_csv<S: FlatComponents>(
    columns: &[String],
    trajectory: &Trajectory<S>,
    out: &mut dyn Write,
) -> Result<()> {
    write!(out, "t,bloch_length")?;
    for c in columns {
        write!(out, ",R[{c}]")?;
    }
    writeln!(out)?;
    for (t, s, b) in trajectory.iter() {
        write!(out, "{},{}", format_sig17(t), format_sig17(b))?;
        for x in s.flat_row_major() {
            write!(out, ",{}", format_sig17(x))?;
        }
        writeln!(out)?;
    }
    Ok(())
}
