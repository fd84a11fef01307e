//! Antisymmetric (`e`) and symmetric (`g`) structure constants of su(2S+1)
//! over the Hermitian basis, defined by
//!
//! ```text
//! C_i C_j = (c/d) E δ_ij + (g_ijk + i e_ijk) C_k
//! ```
//!
//! Tables are computed either from closed-form 3jm/6j expressions
//! ([`Method::Analytic`]) or from trace definitions ([`Method::Trace`]).

mod analytic;
mod csv;
mod oracle;

pub use analytic::{
    coefficient_f, coefficient_f_exact, e_analytic, g_analytic, triple_trace, AntisymmetricForm, PatternClass,
    SymmetricForm,
};
pub use csv::{format_sig17, read_csv, write_csv, TableRow, TableType, CSV_HEADER};
pub use oracle::{e_trace, g_trace};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::spinbasis::BasisSet;
use crate::wigner::HalfInt;
use analytic::AnalyticEvaluator;

/// Entries with magnitude at or below this are not stored.
pub const SPARSITY_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Trace,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Analytic => "analytic",
            Method::Trace => "trace",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "trace" => Ok(Method::Trace),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

pub type Triple = (usize, usize, usize);

/// Sorts a triple ascending and returns the parity of the sorting permutation.
pub fn sort_triple(i: usize, j: usize, k: usize) -> (Triple, f64) {
    let mut t = [i, j, k];
    let mut sign = 1.0;
    for pass in 0..2 {
        for a in 0..2 - pass {
            if t[a] > t[a + 1] {
                t.swap(a, a + 1);
                sign = -sign;
            }
        }
    }
    ((t[0], t[1], t[2]), sign)
}

/// Distinct orderings of a sorted triple, each with its permutation parity.
pub fn permutations((i, j, k): Triple) -> Vec<(Triple, f64)> {
    let all = [
        ((i, j, k), 1.0),
        ((j, k, i), 1.0),
        ((k, i, j), 1.0),
        ((j, i, k), -1.0),
        ((i, k, j), -1.0),
        ((k, j, i), -1.0),
    ];
    let mut out: Vec<(Triple, f64)> = Vec::with_capacity(6);
    for (t, s) in all {
        if !out.iter().any(|(u, _)| *u == t) {
            out.push((t, s));
        }
    }
    out
}

/// Sparse `e` and `g` tables for one spin, keyed by sorted index triples
/// `i <= j <= k` over the traceless indices `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTables {
    spin: HalfInt,
    norm: f64,
    n: usize,
    e: BTreeMap<Triple, f64>,
    g: BTreeMap<Triple, f64>,
}

impl StructureTables {
    /// Assembles tables from sorted-triple entries, dropping values at or
    /// below [`SPARSITY_THRESHOLD`].
    pub fn from_entries(
        spin: HalfInt,
        e: impl IntoIterator<Item = (Triple, f64)>,
        g: impl IntoIterator<Item = (Triple, f64)>,
    ) -> Result<Self> {
        let n = (spin.multiplicity() as usize).pow(2) - 1;
        let mut tables = StructureTables {
            spin,
            norm: crate::spinbasis::norm_constant(spin),
            n,
            e: BTreeMap::new(),
            g: BTreeMap::new(),
        };
        for (t, v) in e {
            tables.check_key(t, true)?;
            if v.abs() > SPARSITY_THRESHOLD {
                tables.e.insert(t, v);
            }
        }
        for (t, v) in g {
            tables.check_key(t, false)?;
            if v.abs() > SPARSITY_THRESHOLD {
                tables.g.insert(t, v);
            }
        }
        Ok(tables)
    }

    fn check_key(&self, (i, j, k): Triple, strict: bool) -> Result<()> {
        let ordered = if strict { i < j && j < k } else { i <= j && j <= k };
        if !ordered || i == 0 || k > self.n {
            return Err(Error::domain(format!("table key ({i},{j},{k}) is not a sorted traceless triple")));
        }
        Ok(())
    }

    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    /// `c = S(S+1)(2S+1)/3`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Number of traceless indices.
    pub fn traceless_len(&self) -> usize {
        self.n
    }

    /// `e_ijk` for any index order. Indices outside `1..=n` give 0.
    pub fn e(&self, i: usize, j: usize, k: usize) -> f64 {
        let (t, sign) = sort_triple(i, j, k);
        self.e.get(&t).map_or(0.0, |v| sign * v)
    }

    /// `g_ijk` for any index order. Indices outside `1..=n` give 0.
    pub fn g(&self, i: usize, j: usize, k: usize) -> f64 {
        let (t, _) = sort_triple(i, j, k);
        self.g.get(&t).copied().unwrap_or(0.0)
    }

    /// Stored `e` entries in lexicographic key order.
    pub fn e_entries(&self) -> impl Iterator<Item = (Triple, f64)> + '_ {
        self.e.iter().map(|(t, v)| (*t, *v))
    }

    /// Stored `g` entries in lexicographic key order.
    pub fn g_entries(&self) -> impl Iterator<Item = (Triple, f64)> + '_ {
        self.g.iter().map(|(t, v)| (*t, *v))
    }

    /// Every nonzero `e_ijk` over all index orders.
    pub fn e_expanded(&self) -> Vec<(Triple, f64)> {
        self.e
            .iter()
            .flat_map(|(t, v)| permutations(*t).into_iter().map(move |(p, s)| (p, s * v)))
            .collect()
    }

    /// Every nonzero `g_ijk` over all index orders.
    pub fn g_expanded(&self) -> Vec<(Triple, f64)> {
        self.g
            .iter()
            .flat_map(|(t, v)| permutations(*t).into_iter().map(move |(p, _)| (p, *v)))
            .collect()
    }

    /// Largest `|e - e'|` and `|g - g'|` over all sorted triples.
    pub fn max_deviation(&self, other: &StructureTables) -> (f64, f64) {
        fn dev(a: &BTreeMap<Triple, f64>, b: &BTreeMap<Triple, f64>) -> f64 {
            let one_way = |x: &BTreeMap<Triple, f64>, y: &BTreeMap<Triple, f64>| {
                x.iter()
                    .map(|(t, v)| (v - y.get(t).copied().unwrap_or(0.0)).abs())
                    .fold(0.0, f64::max)
            };
            one_way(a, b).max(one_way(b, a))
        }
        (dev(&self.e, &other.e), dev(&self.g, &other.g))
    }
}

/// All sorted triples `1 <= i <= j <= k <= n`.
fn sorted_triples(n: usize) -> impl ParallelIterator<Item = Triple> {
    (1..=n)
        .into_par_iter()
        .flat_map_iter(move |i| (i..=n).flat_map(move |j| (j..=n).map(move |k| (i, j, k))))
}

/// Sweeps every sorted triple of traceless indices and tabulates `e` and `g`.
///
/// Runs on the current rayon pool; wrap in `ThreadPool::install` to control
/// parallelism.
pub fn build_tables(basis: &BasisSet, method: Method) -> Result<StructureTables> {
    let n = basis.traceless_len();
    let spin = basis.spin();
    let labels = basis.labels();
    let norm = basis.norm();

    type Row = (Triple, f64, f64);
    let rows: Vec<Row> = match method {
        Method::Analytic => sorted_triples(n)
            .map_init(
                || AnalyticEvaluator::new(spin),
                |ev, (i, j, k)| {
                    let l = [labels[i], labels[j], labels[k]];
                    let e = if i < j && j < k { ev.e(l)? } else { 0.0 };
                    Ok(((i, j, k), e, ev.g(l)?))
                },
            )
            .collect::<Result<_>>()?,
        Method::Trace => sorted_triples(n)
            .map(|(i, j, k)| {
                let (ci, cj, ck) = (basis.matrix(i), basis.matrix(j), basis.matrix(k));
                let e = if i < j && j < k { e_trace(ci, cj, ck, norm)? } else { 0.0 };
                Ok(((i, j, k), e, g_trace(ci, cj, ck, norm)?))
            })
            .collect::<Result<_>>()?,
    };
    let e = rows.iter().filter(|(t, _, _)| t.0 < t.1 && t.1 < t.2).map(|(t, e, _)| (*t, *e));
    let g = rows.iter().map(|(t, _, g)| (*t, *g));
    StructureTables::from_entries(spin, e, g)
}

/// `(c/d) E δ_ij + Σ_k (g_ijk + i e_ijk) C_k`, the expansion of `C_i C_j`.
pub fn reconstruct_product(i: usize, j: usize, tables: &StructureTables, basis: &BasisSet) -> Result<ComplexMatrix> {
    if tables.spin() != basis.spin() {
        return Err(Error::SpinMismatch {
            tables: tables.spin(),
            state: basis.spin(),
        });
    }
    let n = basis.traceless_len();
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(Error::domain(format!("index {idx} outside 1..={n}")));
        }
    }
    let d = basis.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    if i == j {
        out += crate::linalg::identity(d) * Complex64::from(tables.norm() / d as f64);
    }
    for k in 1..=n {
        let z = Complex64::new(tables.g(i, j, k), tables.e(i, j, k));
        if z != Complex64::new(0.0, 0.0) {
            out += basis.matrix(k) * z;
        }
    }
    Ok(out)
}
