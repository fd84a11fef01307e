use std::io::Write;

use anyhow::{bail, Context, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use spinalg::dynamics::{
    density_to_bloch, density_to_bloch2, integrate, write_trajectory_jsonl, BlochState1, BlochState2,
    HamiltonianCoeffs1, HamiltonianCoeffs2, OneQuditGenerator, TrajectoryHeader, TwoQuditGenerator,
    UnitaryPropagator,
};
use spinalg::structconst::{format_sig17, write_csv};
use spinalg::wigner::{six_j, three_jm};
use spinalg::{build_tables, BasisSet, ComplexMatrix, Method, SqrtRational};

use crate::input::{matrix_from_items, matrix_from_json, vector_from_items, vector_from_json};
use crate::output;
use crate::{BasisArgs, Evolve2Args, EvolveArgs, Format, IntegrationArgs, MethodArg, Outcome, StructArgs, WignerArgs, WignerKind};

/// Largest tolerated deviation from the unitary propagator.
pub const ORACLE_TOL: f64 = 1e-6;
/// Largest tolerated analytic-vs-trace table deviation.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// `+sqrt(p/q) = 0.40824829046386302`, or `0`.
pub fn render_symbol(v: &SqrtRational) -> String {
    if v.is_zero() {
        "0".to_string()
    } else {
        format!("{v} = {}", format_sig17(v.to_f64()))
    }
}

pub fn wigner(args: &WignerArgs) -> Result<Outcome> {
    let v = &args.values;
    let value = match args.kind {
        WignerKind::ThreeJm => three_jm(v[0], v[1], v[2], v[3], v[4], v[5])?,
        WignerKind::SixJ => six_j(v[0], v[1], v[2], v[3], v[4], v[5])?,
    };
    println!("{}", render_symbol(&value));
    Ok(Outcome::Ok)
}

pub fn basis(args: &BasisArgs) -> Result<Outcome> {
    let basis = BasisSet::new(args.spin.0)?;
    let mut out = output::open(args.out.as_deref())?;
    match args.format {
        Format::Jsonl => output::basis_jsonl(&basis, &mut out)?,
        Format::Csv => output::basis_csv(&basis, &mut out)?,
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

pub fn structconst(args: &StructArgs) -> Result<Outcome> {
    let basis = BasisSet::new(args.spin.0)?;
    let (tables, check) = match args.method {
        MethodArg::Analytic => (build_tables(&basis, Method::Analytic)?, None),
        MethodArg::Trace => (build_tables(&basis, Method::Trace)?, None),
        MethodArg::Both => {
            let a = build_tables(&basis, Method::Analytic)?;
            let t = build_tables(&basis, Method::Trace)?;
            let dev = a.max_deviation(&t);
            (a, Some(dev))
        }
    };
    let mut out = output::open(args.out.as_deref())?;
    match args.format {
        Format::Csv => write_csv(&tables, &basis, &mut out)?,
        Format::Jsonl => output::tables_jsonl(&tables, &basis, &mut out)?,
    }
    out.flush()?;
    drop(out);

    let Some((de, dg)) = check else {
        return Ok(Outcome::Ok);
    };
    let report = format!("max |e_analytic - e_trace| = {de:.3e}\nmax |g_analytic - g_trace| = {dg:.3e}");
    // keep stdout clean when it carries the table
    if args.out.is_some() {
        println!("{report}");
    } else {
        eprintln!("{report}");
    }
    if de.max(dg) > EQUIVALENCE_TOL {
        eprintln!("analytic and trace tables differ by more than {EQUIVALENCE_TOL:e}");
        return Ok(Outcome::CheckFailed);
    }
    Ok(Outcome::Ok)
}

fn check_integration(run: &IntegrationArgs) -> Result<()> {
    if !(run.dt > 0.0 && run.dt.is_finite()) {
        bail!("--dt must be positive and finite, got {}", run.dt);
    }
    if run.steps == 0 {
        bail!("--steps must be at least 1");
    }
    Ok(())
}

/// `|m = S⟩⟨m = S|` (first basis vector), the default initial state.
fn top_state(d: usize) -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(d, d);
    rho[(0, 0)] = Complex64::new(1.0, 0.0);
    rho
}

fn warn_if_not_positive(rho: &ComplexMatrix) {
    let sym = (rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let min = SymmetricEigen::new(sym).eigenvalues.min();
    if min < -1e-9 {
        eprintln!("warning: initial Bloch vector is not a valid density matrix (eigenvalue {min:.3e})");
    }
}

fn unit_component_check(value: f64) -> Result<()> {
    if value != 0.0 && value != 1.0 {
        bail!("the unit component of R is fixed to 1, got {value}");
    }
    Ok(())
}

/// Prints to stdout unless stdout carries the trajectory.
fn report(to_stdout: bool, line: String) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

pub fn evolve1(args: &EvolveArgs) -> Result<Outcome> {
    let run = &args.run;
    check_integration(run)?;
    let spin = args.spin.0;
    let basis = BasisSet::new(spin)?;
    let tables = build_tables(&basis, Method::Analytic)?;

    let h = match &run.h_file {
        Some(p) => vector_from_json(&basis, p)?,
        None => vector_from_items(&basis, &run.h)?,
    };
    let h = HamiltonianCoeffs1::new(spin, h)?;

    let r0 = if let Some(p) = &run.r0_file {
        Some(vector_from_json(&basis, p)?)
    } else if !run.r0.is_empty() {
        Some(vector_from_items(&basis, &run.r0)?)
    } else {
        None
    };
    let r0 = match r0 {
        Some(v) => {
            unit_component_check(v[0])?;
            let s = BlochState1::new(spin, v)?;
            warn_if_not_positive(&spinalg::dynamics::bloch_to_density(&s, &basis)?);
            s
        }
        None => density_to_bloch(&top_state(basis.dim()), &basis)?,
    };

    let gen = OneQuditGenerator::new(&h, &tables)?;
    let tr = integrate(|r: &DVector<f64>| gen.apply(r), r0.into_components(), run.dt, run.steps)
        .context("integration failed")?;

    let mut out = output::open(run.out.as_deref())?;
    match run.format {
        Format::Jsonl => {
            let header = TrajectoryHeader::new(vec![spin], run.dt, run.steps, &h.h);
            write_trajectory_jsonl(&header, &tr, &mut out)?;
        }
        Format::Csv => {
            let cols: Vec<String> = basis.labels().iter().map(|l| l.to_string()).collect();
            output::trajectory_csv(&cols, &tr, &mut out)?;
        }
    }
    out.flush()?;
    drop(out);

    let to_stdout = run.out.is_some();
    summarize(to_stdout, tr.bloch_lengths[0], *tr.bloch_lengths.last().unwrap(), tr.max_length_drift());

    if run.oracle_check {
        let rho0 = spinalg::dynamics::bloch_to_density(&BlochState1::new(spin, tr.first().clone())?, &basis)?;
        let prop = UnitaryPropagator::new(&h.to_matrix(&basis))?;
        let mut worst = 0.0f64;
        for (t, r, _) in tr.iter() {
            let exact = density_to_bloch(&prop.evolve(&rho0, t)?, &basis)?;
            worst = worst.max((r - exact.components()).amax());
        }
        return Ok(oracle_verdict(to_stdout, worst));
    }
    Ok(Outcome::Ok)
}

pub fn evolve2(args: &Evolve2Args) -> Result<Outcome> {
    let run = &args.run;
    check_integration(run)?;
    let spins = (args.spin.0, args.spin2.0);
    let b1 = BasisSet::new(spins.0)?;
    let b2 = BasisSet::new(spins.1)?;
    let t1 = build_tables(&b1, Method::Analytic)?;
    let t2 = build_tables(&b2, Method::Analytic)?;

    let h = match &run.h_file {
        Some(p) => matrix_from_json(&b1, &b2, p)?,
        None => matrix_from_items(&b1, &b2, &run.h)?,
    };
    let h = HamiltonianCoeffs2::new(spins, h)?;

    let r0 = if let Some(p) = &run.r0_file {
        Some(matrix_from_json(&b1, &b2, p)?)
    } else if !run.r0.is_empty() {
        Some(matrix_from_items(&b1, &b2, &run.r0)?)
    } else {
        None
    };
    let r0 = match r0 {
        Some(m) => {
            unit_component_check(m[(0, 0)])?;
            let s = BlochState2::new(spins, m)?;
            warn_if_not_positive(&spinalg::dynamics::bloch_to_density2(&s, &b1, &b2)?);
            s
        }
        None => density_to_bloch2(&top_state(b1.dim() * b2.dim()), &b1, &b2)?,
    };

    let gen = TwoQuditGenerator::new(&h, &t1, &t2)?;
    let tr = integrate(|r: &DMatrix<f64>| gen.apply(r), r0.into_components(), run.dt, run.steps)
        .context("integration failed")?;

    let mut out = output::open(run.out.as_deref())?;
    match run.format {
        Format::Jsonl => {
            let header = TrajectoryHeader::new(vec![spins.0, spins.1], run.dt, run.steps, &h.h);
            write_trajectory_jsonl(&header, &tr, &mut out)?;
        }
        Format::Csv => {
            let mut cols = Vec::with_capacity(b1.len() * b2.len());
            for a in b1.labels() {
                for b in b2.labels() {
                    cols.push(format!("{a}*{b}"));
                }
            }
            output::trajectory_csv(&cols, &tr, &mut out)?;
        }
    }
    out.flush()?;
    drop(out);

    let to_stdout = run.out.is_some();
    summarize(to_stdout, tr.bloch_lengths[0], *tr.bloch_lengths.last().unwrap(), tr.max_length_drift());

    if run.oracle_check {
        let first = BlochState2::new(spins, tr.first().clone())?;
        let rho0 = spinalg::dynamics::bloch_to_density2(&first, &b1, &b2)?;
        let prop = UnitaryPropagator::new(&h.to_matrix(&b1, &b2))?;
        let mut worst = 0.0f64;
        for (t, r, _) in tr.iter() {
            let exact = density_to_bloch2(&prop.evolve(&rho0, t)?, &b1, &b2)?;
            worst = worst.max((r - exact.components()).amax());
        }
        return Ok(oracle_verdict(to_stdout, worst));
    }
    Ok(Outcome::Ok)
}

fn summarize(to_stdout: bool, initial: f64, last: f64, drift: f64) {
    report(to_stdout, format!("initial Bloch length = {}", format_sig17(initial)));
    report(to_stdout, format!("final Bloch length = {}", format_sig17(last)));
    report(to_stdout, format!("max Bloch length drift = {drift:.3e}"));
}

fn oracle_verdict(to_stdout: bool, worst: f64) -> Outcome {
    report(to_stdout, format!("max |R - R_oracle| = {worst:.3e}"));
    if worst < ORACLE_TOL {
        Outcome::Ok
    } else {
        eprintln!("deviation from the unitary propagator exceeds {ORACLE_TOL:e}");
        Outcome::CheckFailed
    }
}
