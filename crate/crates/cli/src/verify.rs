//! Invariant suites behind `spinalg verify`.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinalg::dynamics::{
    density_to_bloch, density_to_bloch2, integrate, HamiltonianCoeffs1, HamiltonianCoeffs2, OneQuditGenerator,
    TwoQuditGenerator, UnitaryPropagator,
};
use spinalg::linalg::{max_abs_diff, trace_product};
use spinalg::spinbasis::tensor_operator;
use spinalg::structconst::{e_analytic, e_trace, g_analytic, g_trace, reconstruct_product, sort_triple};
use spinalg::{build_tables, BasisKind, BasisSet, ComplexMatrix, HalfInt, Method, StructureTables};

use crate::commands::{EQUIVALENCE_TOL, ORACLE_TOL};
use crate::{Outcome, Suite, VerifyArgs};

const MATRIX_TOL: f64 = 1e-12;
const ALGEBRA_TOL: f64 = 1e-10;
const DRIFT_TOL: f64 = 1e-8;
const SEED: u64 = 0x5eed;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

pub fn run(args: &VerifyArgs) -> Result<Outcome> {
    let spin = args.spin.0;
    let spin2 = args.spin2.map(|s| s.0);
    if args.suite == Suite::Appendix && spin != HalfInt::ONE {
        bail!("the appendix suite applies to spin 1 only, got {spin}");
    }
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Appendix,
            Suite::Orthogonality,
            Suite::Kparity,
            Suite::Equivalence,
            Suite::Jacobi,
            Suite::Closure,
            Suite::Conservation,
        ],
        s => vec![s],
    };

    let basis = BasisSet::new(spin)?;
    let tables = build_tables(&basis, Method::Analytic)?;
    let mut failed = false;
    for suite in suites {
        let (name, v) = match suite {
            Suite::Appendix => ("appendix", appendix(&basis, &tables)?),
            Suite::Orthogonality => ("orthogonality", orthogonality(&basis)?),
            Suite::Kparity => ("kparity", k_parity(&basis)?),
            Suite::Equivalence => ("equivalence", equivalence(&basis, &tables)?),
            Suite::Jacobi => ("jacobi", jacobi(&tables)),
            Suite::Closure => ("closure", closure(&basis, &tables)?),
            Suite::Conservation => ("conservation", conservation(&basis, &tables, spin2)?),
            Suite::All => unreachable!(),
        };
        match v {
            Verdict::Pass(d) => println!("PASS {name} (S={spin}): {d}"),
            Verdict::Skip(d) => println!("SKIP {name} (S={spin}): {d}"),
            Verdict::Fail(d) => {
                failed = true;
                println!("FAIL {name} (S={spin}): {d}");
            }
        }
    }
    Ok(if failed { Outcome::CheckFailed } else { Outcome::Ok })
}

type Triple = (usize, usize, usize);

/// Qutrit constants in the conventional enumeration (indices into the
/// reordered basis), keyed by sorted triple.
fn qutrit_reference() -> (BTreeMap<Triple, f64>, BTreeMap<Triple, f64>) {
    let h = 0.5;
    let r = 3f64.sqrt() / 2.0;
    let a = 1.0 / 3f64.sqrt();
    let b = -1.0 / (2.0 * 3f64.sqrt());
    let e = [
        ((1, 2, 3), h),
        ((1, 5, 8), h),
        ((2, 5, 4), h),
        ((2, 7, 8), h),
        ((3, 7, 5), h),
        ((4, 7, 1), h),
        ((1, 5, 6), r),
        ((6, 7, 2), r),
        ((3, 4, 8), -1.0),
    ];
    let g = [
        ((3, 3, 6), a),
        ((4, 4, 6), a),
        ((6, 6, 6), -a),
        ((6, 8, 8), a),
        ((5, 5, 6), b),
        ((1, 1, 6), b),
        ((2, 2, 6), b),
        ((6, 7, 7), b),
        ((2, 3, 5), 0.5),
        ((1, 1, 8), 0.5),
        ((5, 5, 8), 0.5),
        ((1, 2, 4), 0.5),
        ((1, 3, 7), 0.5),
        ((2, 2, 8), -0.5),
        ((7, 7, 8), -0.5),
        ((4, 7, 5), -0.5),
    ];
    let e = e
        .into_iter()
        .map(|((i, j, k), v)| {
            let (t, s) = sort_triple(i, j, k);
            (t, v * s)
        })
        .collect();
    let g = g
        .into_iter()
        .map(|((i, j, k), v)| (sort_triple(i, j, k).0, v))
        .collect();
    (e, g)
}

fn appendix(basis: &BasisSet, tables: &StructureTables) -> Result<Verdict> {
    if basis.spin() != HalfInt::ONE {
        return Ok(Verdict::Skip("defined for spin 1 only".into()));
    }
    let perm = basis.appendix_permutation()?;
    let mut e = BTreeMap::new();
    let mut g = BTreeMap::new();
    for ((i, j, k), v) in tables.e_entries() {
        let (t, s) = sort_triple(perm[i], perm[j], perm[k]);
        e.insert(t, v * s);
    }
    for ((i, j, k), v) in tables.g_entries() {
        g.insert(sort_triple(perm[i], perm[j], perm[k]).0, v);
    }
    let (want_e, want_g) = qutrit_reference();
    let same_support = e.keys().eq(want_e.keys()) && g.keys().eq(want_g.keys());
    if !same_support {
        return Ok(Verdict::Fail(format!(
            "nonzero entries differ: {} e / {} g, expected {} / {}",
            e.len(),
            g.len(),
            want_e.len(),
            want_g.len()
        )));
    }
    let dev = want_e
        .iter()
        .map(|(t, v)| (e[t] - v).abs())
        .chain(want_g.iter().map(|(t, v)| (g[t] - v).abs()))
        .fold(0.0, f64::max);
    Ok(verdict(
        dev < MATRIX_TOL,
        format!("{} e and {} g entries, max deviation {dev:.1e}", e.len(), g.len()),
    ))
}

fn orthogonality(basis: &BasisSet) -> Result<Verdict> {
    let spin = basis.spin();
    let d = basis.dim();
    let mut tensors = Vec::new();
    for k in 0..=spin.twice() {
        for q in -k..=k {
            tensors.push(tensor_operator(spin, k as u32, q)?);
        }
    }
    let mut ortho = 0.0f64;
    for (a, ta) in tensors.iter().enumerate() {
        for (b, tb) in tensors.iter().enumerate() {
            let want = if a == b { d as f64 } else { 0.0 };
            ortho = ortho.max((trace_product(&ta.adjoint(), tb) - Complex64::new(want, 0.0)).norm());
        }
    }
    let c = basis.norm();
    let mut gram = 0.0f64;
    for (i, a) in basis.matrices().iter().enumerate() {
        for (j, b) in basis.matrices().iter().enumerate() {
            let want = if i == j { c } else { 0.0 };
            gram = gram.max((trace_product(a, b) - Complex64::new(want, 0.0)).norm());
        }
    }
    let z_diagonal = basis
        .labels()
        .iter()
        .zip(basis.matrices())
        .filter(|(l, _)| l.kind == BasisKind::Z)
        .all(|(_, m)| (0..d).all(|r| (0..d).all(|col| r == col || m[(r, col)] == Complex64::new(0.0, 0.0))));
    Ok(verdict(
        ortho < MATRIX_TOL && gram < MATRIX_TOL && z_diagonal,
        format!("tensor orthogonality {ortho:.1e}, Gram {gram:.1e}, Z diagonal: {z_diagonal}"),
    ))
}

fn k_parity(basis: &BasisSet) -> Result<Verdict> {
    let n = basis.traceless_len();
    let labels = basis.labels();
    let c = basis.norm();
    let mut worst = 0.0f64;
    let mut exact = true;
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                let l = [labels[i], labels[j], labels[k]];
                let m = [basis.matrix(i), basis.matrix(j), basis.matrix(k)];
                let (a, t) = if (l[0].k + l[1].k + l[2].k).is_multiple_of(2) {
                    (e_analytic(basis.spin(), l[0], l[1], l[2])?, e_trace(m[0], m[1], m[2], c)?)
                } else {
                    (g_analytic(basis.spin(), l[0], l[1], l[2])?, g_trace(m[0], m[1], m[2], c)?)
                };
                exact &= a == 0.0;
                worst = worst.max(t.abs());
            }
        }
    }
    Ok(verdict(
        exact && worst < MATRIX_TOL,
        format!("analytic exactly zero: {exact}, trace residue {worst:.1e}"),
    ))
}

fn equivalence(basis: &BasisSet, tables: &StructureTables) -> Result<Verdict> {
    let trace = build_tables(basis, Method::Trace)?;
    let (de, dg) = tables.max_deviation(&trace);
    Ok(verdict(
        de.max(dg) < EQUIVALENCE_TOL,
        format!("max |Δe| {de:.1e}, max |Δg| {dg:.1e}"),
    ))
}

fn jacobi(tables: &StructureTables) -> Verdict {
    let n = tables.traceless_len();
    let w = n + 1;
    let mut e = vec![0.0; w * w * w];
    for ((i, j, k), v) in tables.e_expanded() {
        e[(i * w + j) * w + k] = v;
    }
    let at = |i: usize, j: usize, k: usize| e[(i * w + j) * w + k];
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    let s: f64 = (1..=n)
                        .map(|l| at(i, j, l) * at(l, k, m) + at(j, k, l) * at(l, i, m) + at(k, i, l) * at(l, j, m))
                        .sum();
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    verdict(worst < ALGEBRA_TOL, format!("max residual {worst:.1e}"))
}

fn closure(basis: &BasisSet, tables: &StructureTables) -> Result<Verdict> {
    let n = basis.traceless_len();
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let direct = basis.matrix(i) * basis.matrix(j);
            worst = worst.max(max_abs_diff(&direct, &reconstruct_product(i, j, tables, basis)?));
        }
    }
    let offset = basis.norm() / basis.dim() as f64;
    Ok(verdict(
        worst < ALGEBRA_TOL,
        format!("max deviation {worst:.1e}, δ_ij offset c/d = {offset:.6}"),
    ))
}

fn random_pure(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let v = DVector::from_fn(d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let v = &v / Complex64::new(v.norm(), 0.0);
    &v * v.adjoint()
}

fn conservation(basis: &BasisSet, tables: &StructureTables, spin2: Option<HalfInt>) -> Result<Verdict> {
    let (dt, steps) = (spinalg::dynamics::DEFAULT_DT, spinalg::dynamics::DEFAULT_STEPS);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spin = basis.spin();

    let h = DVector::from_fn(basis.len(), |_, _| rng.random_range(-1.0..1.0));
    let h = HamiltonianCoeffs1::new(spin, h)?;
    let rho0 = random_pure(basis.dim(), &mut rng);
    let r0 = density_to_bloch(&rho0, basis)?;
    let gen = OneQuditGenerator::new(&h, tables)?;
    let tr = integrate(|r: &DVector<f64>| gen.apply(r), r0.into_components(), dt, steps)?;
    let prop = UnitaryPropagator::new(&h.to_matrix(basis))?;
    let mut dev1 = 0.0f64;
    for (t, r, _) in tr.iter().step_by(10) {
        dev1 = dev1.max((r - density_to_bloch(&prop.evolve(&rho0, t)?, basis)?.components()).amax());
    }
    let drift1 = tr.max_length_drift();
    let mut ok = drift1 < DRIFT_TOL && dev1 < ORACLE_TOL;
    let mut detail = format!("one qudit: drift {drift1:.1e}, oracle {dev1:.1e}");

    if let Some(s2) = spin2 {
        let b2 = BasisSet::new(s2)?;
        let t2 = build_tables(&b2, Method::Analytic)?;
        let h = DMatrix::from_fn(basis.len(), b2.len(), |_, _| rng.random_range(-1.0..1.0));
        let h = HamiltonianCoeffs2::new((spin, s2), h)?;
        let rho0 = random_pure(basis.dim() * b2.dim(), &mut rng);
        let r0 = density_to_bloch2(&rho0, basis, &b2)?;
        let gen = TwoQuditGenerator::new(&h, tables, &t2)?;
        let tr = integrate(|r: &DMatrix<f64>| gen.apply(r), r0.into_components(), dt, steps)?;
        let prop = UnitaryPropagator::new(&h.to_matrix(basis, &b2))?;
        let mut dev2 = 0.0f64;
        for (t, r, _) in tr.iter().step_by(10) {
            let exact = density_to_bloch2(&prop.evolve(&rho0, t)?, basis, &b2)?;
            dev2 = dev2.max((r - exact.components()).amax());
        }
        let drift2 = tr.max_length_drift();
        ok &= drift2 < DRIFT_TOL && dev2 < ORACLE_TOL;
        detail.push_str(&format!("; pair ({spin}, {s2}): drift {drift2:.1e}, oracle {dev2:.1e}"));
    }
    Ok(verdict(ok, detail))
}
