//! Whole-criterion checks shared by the integration tests and the
//! acceptance harness. Each returns `Ok(summary)` or `Err(reason)`.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};

use spinalg::dynamics::{
    bloch_to_density, bloch_to_density2, density_to_bloch, density_to_bloch2, integrate, BlochState1, BlochState2,
    HamiltonianCoeffs1, HamiltonianCoeffs2, OneQuditGenerator, TwoQuditGenerator, UnitaryPropagator,
};
use spinalg::linalg::{anticommutator, commutator};
use spinalg::spinbasis::tensor_operator;
use spinalg::structconst::{e_analytic, e_trace, g_analytic, g_trace, reconstruct_product, triple_trace};
use spinalg::wigner::{six_j, three_jm, triangle_satisfied};
use spinalg::{build_tables, BasisKind, BasisSet, ComplexMatrix, HalfInt, Method, SqrtRational, StructureTables};

use super::{c, max_abs_diff, normal, qutrit_e, qutrit_g, random_density, rng};

pub type Check = Result<String, String>;

fn spin(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn sorted(t: (usize, usize, usize)) -> (usize, usize, usize) {
    let mut v = [t.0, t.1, t.2];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Sign of an index permutation taking `t` to sorted order (0 if repeated).
fn parity(t: (usize, usize, usize)) -> f64 {
    let v = [t.0, t.1, t.2];
    if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
        return 0.0;
    }
    let inversions = (v[0] > v[1]) as u8 + (v[0] > v[2]) as u8 + (v[1] > v[2]) as u8;
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

// ---------------------------------------------------------------- tables

pub type SparseTable = BTreeMap<(usize, usize, usize), f64>;

/// Qutrit tables re-indexed into the conventional enumeration.
pub fn qutrit_tables(method: Method) -> (SparseTable, SparseTable) {
    let basis = BasisSet::new(HalfInt::ONE).unwrap();
    let perm = basis.appendix_permutation().unwrap();
    let tables = build_tables(&basis, method).unwrap();
    let mut e = BTreeMap::new();
    let mut g = BTreeMap::new();
    for ((i, j, k), v) in tables.e_entries() {
        let t = (perm[i], perm[j], perm[k]);
        e.insert(sorted(t), v * parity(t));
    }
    for ((i, j, k), v) in tables.g_entries() {
        g.insert(sorted((perm[i], perm[j], perm[k])), v);
    }
    (e, g)
}

fn compare_golden(
    label: &str,
    got: &SparseTable,
    golden: &[((usize, usize, usize), f64)],
    antisymmetric: bool,
) -> Result<f64, String> {
    let mut want = BTreeMap::new();
    for &(t, v) in golden {
        let sign = if antisymmetric { parity(t) } else { 1.0 };
        want.insert(sorted(t), v * sign);
    }
    let got_keys: Vec<_> = got.keys().collect();
    let want_keys: Vec<_> = want.keys().collect();
    if got_keys != want_keys {
        return Err(format!("{label} support differs: got {got_keys:?}, want {want_keys:?}"));
    }
    let mut worst = 0.0f64;
    for (t, w) in &want {
        worst = worst.max((got[t] - w).abs());
    }
    if worst >= 1e-12 {
        return Err(format!("{label} max deviation {worst:e}"));
    }
    Ok(worst)
}

pub fn appendix_golden() -> Check {
    let (e, g) = qutrit_tables(Method::Analytic);
    let de = compare_golden("e", &e, &qutrit_e(), true)?;
    let dg = compare_golden("g", &g, &qutrit_g(), false)?;
    Ok(format!(
        "{} e and {} g entries, max deviation {:.1e}",
        e.len(),
        g.len(),
        de.max(dg)
    ))
}

/// `(max |Δe|, max |Δg|)` between analytic and trace tables.
pub fn analytic_vs_trace(twice_s: i32) -> (f64, f64) {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let a = build_tables(&basis, Method::Analytic).unwrap();
    let t = build_tables(&basis, Method::Trace).unwrap();
    a.max_deviation(&t)
}

pub fn analytic_vs_trace_all() -> Check {
    let mut worst = 0.0f64;
    for tw in 1..=5 {
        let (de, dg) = analytic_vs_trace(tw);
        if de >= 1e-10 || dg >= 1e-10 {
            return Err(format!("S={}: |Δe|={de:e}, |Δg|={dg:e}", spin(tw)));
        }
        worst = worst.max(de).max(dg);
    }
    Ok(format!("S=1/2..5/2, max deviation {worst:.1e}"))
}

fn rank_sum(basis: &BasisSet, t: [usize; 3]) -> u32 {
    t.iter().map(|&i| basis.labels()[i].k).sum()
}

/// Selection rule `K` even ⇒ `e = 0`, `K` odd ⇒ `g = 0`: exact on the
/// analytic path, below 1e-12 on the trace path. Returns triples checked.
pub fn k_parity(twice_s: i32) -> Result<usize, String> {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let n = basis.traceless_len();
    let labels = basis.labels();
    let cn = basis.norm();
    let mut count = 0;
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                let big_k = rank_sum(&basis, [i, j, k]);
                let l = [labels[i], labels[j], labels[k]];
                let m = [basis.matrix(i), basis.matrix(j), basis.matrix(k)];
                let (exact, traced, what) = if big_k.is_multiple_of(2) {
                    (
                        e_analytic(basis.spin(), l[0], l[1], l[2]).unwrap(),
                        e_trace(m[0], m[1], m[2], cn).unwrap(),
                        "e",
                    )
                } else {
                    (
                        g_analytic(basis.spin(), l[0], l[1], l[2]).unwrap(),
                        g_trace(m[0], m[1], m[2], cn).unwrap(),
                        "g",
                    )
                };
                if exact != 0.0 || traced.abs() >= 1e-12 {
                    return Err(format!(
                        "S={}: {what}({} {} {}) K={big_k}: analytic {exact:e}, trace {traced:e}",
                        basis.spin(),
                        l[0],
                        l[1],
                        l[2]
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------- basis

/// Worst deviations for one spin: tensor orthogonality, Gram condition,
/// and whether every `Z` matrix is exactly diagonal.
pub fn basis_contracts(twice_s: i32) -> Result<(f64, f64), String> {
    let s = spin(twice_s);
    let d = twice_s as usize + 1;
    let mut tensors = Vec::new();
    for k in 0..=twice_s {
        for q in -k..=k {
            tensors.push(tensor_operator(s, k as u32, q).unwrap());
        }
    }
    let mut ortho = 0.0f64;
    for a in &tensors {
        for b in &tensors {
            let tr = (a.adjoint() * b).trace();
            let want = if std::ptr::eq(a, b) { d as f64 } else { 0.0 };
            ortho = ortho.max((tr - c(want, 0.0)).norm());
        }
    }
    let basis = BasisSet::new(s).unwrap();
    let cn = basis.norm();
    let mut gram = 0.0f64;
    for (i, a) in basis.matrices().iter().enumerate() {
        for (j, b) in basis.matrices().iter().enumerate() {
            let want = if i == j { cn } else { 0.0 };
            gram = gram.max(((a * b).trace() - c(want, 0.0)).norm());
        }
    }
    for (label, m) in basis.labels().iter().zip(basis.matrices()) {
        if label.kind == BasisKind::Z {
            for r in 0..d {
                for col in 0..d {
                    if r != col && m[(r, col)] != c(0.0, 0.0) {
                        return Err(format!("S={s}: {label} has off-diagonal entry at ({r},{col})"));
                    }
                }
            }
        }
    }
    Ok((ortho, gram))
}

pub fn spin_half_pauli() -> f64 {
    let b = BasisSet::new(HalfInt::HALF).unwrap();
    let z = c(0.0, 0.0);
    let h = c(0.5, 0.0);
    let ih = c(0.0, 0.5);
    let want = [
        super::cmat(2, &[h, z, z, h]),
        super::cmat(2, &[z, h, h, z]),
        super::cmat(2, &[z, -ih, ih, z]),
        super::cmat(2, &[h, z, z, -h]),
    ];
    want.iter()
        .zip(b.matrices())
        .map(|(w, m)| max_abs_diff(w, m))
        .fold(0.0, f64::max)
}

pub fn basis_contracts_all() -> Check {
    let mut ortho = 0.0f64;
    let mut gram = 0.0f64;
    for tw in 1..=6 {
        let (o, g) = basis_contracts(tw)?;
        ortho = ortho.max(o);
        gram = gram.max(g);
    }
    if ortho >= 1e-12 || gram >= 1e-12 {
        return Err(format!("orthogonality {ortho:e}, Gram {gram:e}"));
    }
    let pauli = spin_half_pauli();
    if pauli >= 1e-15 {
        return Err(format!("spin-1/2 basis off Pauli/2 by {pauli:e}"));
    }
    Ok(format!(
        "S<=3 orthogonality {ortho:.1e}, Gram {gram:.1e}; Z diagonal; Pauli/2 {pauli:.1e}"
    ))
}

/// Largest |analytic − direct| triple trace over all rank/projection triples.
pub fn triple_trace_deviation(twice_s: i32) -> f64 {
    let s = spin(twice_s);
    let mut kq = Vec::new();
    for k in 0..=twice_s {
        for q in -k..=k {
            kq.push((k as u32, q, tensor_operator(s, k as u32, q).unwrap()));
        }
    }
    let mut worst = 0.0f64;
    for a in &kq {
        for b in &kq {
            let ab = &a.2 * &b.2;
            for cc in &kq {
                let direct = (&ab * &cc.2).trace();
                let formula = triple_trace(s, (a.0, a.1), (b.0, b.1), (cc.0, cc.1)).unwrap();
                worst = worst.max((direct - c(formula, 0.0)).norm());
            }
        }
    }
    worst
}

pub fn triple_trace_all() -> Check {
    let mut worst = 0.0f64;
    for tw in 1..=4 {
        let d = triple_trace_deviation(tw);
        if d >= 1e-12 {
            return Err(format!("S={}: deviation {d:e}", spin(tw)));
        }
        worst = worst.max(d);
    }
    Ok(format!("S<=2, max deviation {worst:.1e}"))
}

/// Largest elementwise deviation of the reconstructed `C_i C_j`.
pub fn closure_deviation(twice_s: i32) -> f64 {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let tables = build_tables(&basis, Method::Analytic).unwrap();
    let n = basis.traceless_len();
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let direct = basis.matrix(i) * basis.matrix(j);
            let rebuilt = reconstruct_product(i, j, &tables, &basis).unwrap();
            worst = worst.max(max_abs_diff(&direct, &rebuilt));
        }
    }
    worst
}

pub fn closure_all() -> Check {
    let mut worst = 0.0f64;
    for tw in 1..=4 {
        let d = closure_deviation(tw);
        if d >= 1e-10 {
            return Err(format!("S={}: deviation {d:e}", spin(tw)));
        }
        worst = worst.max(d);
    }
    // spin-1 offset: C_a C_a = (2/3) E + Σ_k (g_aak + i e_aak) C_k
    let basis = BasisSet::new(HalfInt::ONE).unwrap();
    let offset = basis.norm() / basis.dim() as f64;
    if (offset - 2.0 / 3.0).abs() >= 1e-15 {
        return Err(format!("spin-1 offset {offset}, expected 2/3"));
    }
    Ok(format!("S<=2, max deviation {worst:.1e}; spin-1 offset 2/3"))
}

/// Largest `|Σ_l (e_ijl e_lkm + e_jkl e_lim + e_kil e_ljm)|`.
pub fn jacobi_deviation(tables: &StructureTables) -> f64 {
    let n = tables.traceless_len();
    let mut e = vec![0.0; (n + 1).pow(3)];
    let at = |i: usize, j: usize, k: usize| (i * (n + 1) + j) * (n + 1) + k;
    for ((i, j, k), v) in tables.e_expanded() {
        e[at(i, j, k)] = v;
    }
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    let mut s = 0.0;
                    for l in 1..=n {
                        s += e[at(i, j, l)] * e[at(l, k, m)]
                            + e[at(j, k, l)] * e[at(l, i, m)]
                            + e[at(k, i, l)] * e[at(l, j, m)];
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    worst
}

pub fn jacobi_spin_one() -> Check {
    let basis = BasisSet::new(HalfInt::ONE).unwrap();
    let tables = build_tables(&basis, Method::Analytic).unwrap();
    let d = jacobi_deviation(&tables);
    if d < 1e-10 {
        Ok(format!("max |Jacobi| {d:.1e}"))
    } else {
        Err(format!("max |Jacobi| {d:e}"))
    }
}

/// Direct commutator/anticommutator expansion as a second witness.
pub fn commutator_residual(basis: &BasisSet, tables: &StructureTables, i: usize, j: usize) -> f64 {
    let n = basis.traceless_len();
    let mut comm = ComplexMatrix::zeros(basis.dim(), basis.dim());
    let mut anti = ComplexMatrix::zeros(basis.dim(), basis.dim());
    for k in 1..=n {
        comm += basis.matrix(k) * c(0.0, 2.0 * tables.e(i, j, k));
        anti += basis.matrix(k) * c(2.0 * tables.g(i, j, k), 0.0);
    }
    if i == j {
        anti += ComplexMatrix::identity(basis.dim(), basis.dim()) * c(2.0 * basis.norm() / basis.dim() as f64, 0.0);
    }
    let dc = max_abs_diff(&commutator(basis.matrix(i), basis.matrix(j)), &comm);
    let da = max_abs_diff(&anticommutator(basis.matrix(i), basis.matrix(j)), &anti);
    dc.max(da)
}

// ---------------------------------------------------------------- dynamics

pub struct DynamicsReport {
    pub max_deviation: f64,
    pub max_drift: f64,
}

pub fn random_h1(twice_s: i32, seed: u64) -> HamiltonianCoeffs1 {
    let s = spin(twice_s);
    let len = (s.multiplicity() as usize).pow(2);
    let mut r = rng(seed);
    let h = DVector::from_fn(len, |_, _| normal(&mut r));
    HamiltonianCoeffs1::new(s, h).unwrap()
}

pub fn random_h2(tw1: i32, tw2: i32, seed: u64) -> HamiltonianCoeffs2 {
    let (s1, s2) = (spin(tw1), spin(tw2));
    let shape = ((s1.multiplicity() as usize).pow(2), (s2.multiplicity() as usize).pow(2));
    let mut r = rng(seed);
    let h = DMatrix::from_fn(shape.0, shape.1, |_, _| normal(&mut r));
    HamiltonianCoeffs2::new((s1, s2), h).unwrap()
}

/// RK4 versus `U ρ U†` for one qudit from a random mixed state.
pub fn one_qudit_vs_oracle(twice_s: i32, seed: u64, dt: f64, steps: usize, stride: usize) -> DynamicsReport {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let tables = build_tables(&basis, Method::Analytic).unwrap();
    let h = random_h1(twice_s, seed);
    let rho0 = random_density(basis.dim(), &mut rng(seed + 1));
    let r0 = density_to_bloch(&rho0, &basis).unwrap();
    let gen = OneQuditGenerator::new(&h, &tables).unwrap();
    let tr = integrate(|r: &DVector<f64>| gen.apply(r), r0.into_components(), dt, steps).unwrap();
    let prop = UnitaryPropagator::new(&h.to_matrix(&basis)).unwrap();
    let mut worst = 0.0f64;
    for (idx, (t, r, _)) in tr.iter().enumerate() {
        if idx % stride != 0 && idx + 1 != tr.len() {
            continue;
        }
        let exact = density_to_bloch(&prop.evolve(&rho0, t).unwrap(), &basis).unwrap();
        worst = worst.max((r - exact.components()).amax());
    }
    DynamicsReport {
        max_deviation: worst,
        max_drift: tr.max_length_drift(),
    }
}

/// RK4 versus `U ρ U†` for two coupled qudits from a random mixed state.
pub fn two_qudit_vs_oracle(tw1: i32, tw2: i32, seed: u64, dt: f64, steps: usize, stride: usize) -> DynamicsReport {
    let b1 = BasisSet::new(spin(tw1)).unwrap();
    let b2 = BasisSet::new(spin(tw2)).unwrap();
    let t1 = build_tables(&b1, Method::Analytic).unwrap();
    let t2 = build_tables(&b2, Method::Analytic).unwrap();
    let h = random_h2(tw1, tw2, seed);
    let rho0 = random_density(b1.dim() * b2.dim(), &mut rng(seed + 1));
    let r0 = density_to_bloch2(&rho0, &b1, &b2).unwrap();
    let gen = TwoQuditGenerator::new(&h, &t1, &t2).unwrap();
    let tr = integrate(|r: &DMatrix<f64>| gen.apply(r), r0.into_components(), dt, steps).unwrap();
    let prop = UnitaryPropagator::new(&h.to_matrix(&b1, &b2)).unwrap();
    let mut worst = 0.0f64;
    for (idx, (t, r, _)) in tr.iter().enumerate() {
        if idx % stride != 0 && idx + 1 != tr.len() {
            continue;
        }
        let exact = density_to_bloch2(&prop.evolve(&rho0, t).unwrap(), &b1, &b2).unwrap();
        worst = worst.max((r - exact.components()).amax());
    }
    DynamicsReport {
        max_deviation: worst,
        max_drift: tr.max_length_drift(),
    }
}

/// Qubit precession under `h = (0, 0, 0, 2ω)` from `R = (1, 1, 0, 0)`;
/// returns the largest deviation from `(cos ωt, sin ωt)`.
pub fn qubit_precession(omega: f64, dt: f64, steps: usize) -> f64 {
    let basis = BasisSet::new(HalfInt::HALF).unwrap();
    let tables = build_tables(&basis, Method::Analytic).unwrap();
    let h = HamiltonianCoeffs1::new(HalfInt::HALF, DVector::from_vec(vec![0.0, 0.0, 0.0, 2.0 * omega])).unwrap();
    let gen = OneQuditGenerator::new(&h, &tables).unwrap();
    let r0 = DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]);
    let tr = integrate(|r: &DVector<f64>| gen.apply(r), r0, dt, steps).unwrap();
    tr.iter()
        .map(|(t, r, _)| {
            let dx = (r[1] - (omega * t).cos()).abs();
            let dy = (r[2] - (omega * t).sin()).abs();
            dx.max(dy).max(r[3].abs())
        })
        .fold(0.0, f64::max)
}

pub fn dynamics_all() -> Check {
    let one = one_qudit_vs_oracle(2, 11, 1e-3, 10_000, 1);
    let two = two_qudit_vs_oracle(2, 1, 12, 1e-3, 10_000, 1);
    let prec = qubit_precession(1.0, 1e-3, 10_000);
    let dev = one.max_deviation.max(two.max_deviation);
    let drift = one.max_drift.max(two.max_drift);
    let summary = format!("oracle deviation {dev:.1e}, length drift {drift:.1e}, precession {prec:.1e}");
    if dev < 1e-6 && drift < 1e-8 && prec < 1e-8 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

pub fn density_round_trip_1(twice_s: i32, seed: u64) -> f64 {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let rho = random_density(basis.dim(), &mut rng(seed));
    let r = density_to_bloch(&rho, &basis).unwrap();
    let back = bloch_to_density(&r, &basis).unwrap();
    let r2 = density_to_bloch(&back, &basis).unwrap();
    max_abs_diff(&rho, &back).max((r.components() - r2.components()).amax())
}

pub fn density_round_trip_2(tw1: i32, tw2: i32, seed: u64) -> f64 {
    let b1 = BasisSet::new(spin(tw1)).unwrap();
    let b2 = BasisSet::new(spin(tw2)).unwrap();
    let rho = random_density(b1.dim() * b2.dim(), &mut rng(seed));
    let r: BlochState2 = density_to_bloch2(&rho, &b1, &b2).unwrap();
    let back = bloch_to_density2(&r, &b1, &b2).unwrap();
    max_abs_diff(&rho, &back)
}

pub fn maximally_mixed_is_identity(twice_s: i32) -> f64 {
    let basis = BasisSet::new(spin(twice_s)).unwrap();
    let rho = bloch_to_density(&BlochState1::maximally_mixed(basis.spin()), &basis).unwrap();
    let d = basis.dim();
    max_abs_diff(&rho, &(ComplexMatrix::identity(d, d) * c(1.0 / d as f64, 0.0)))
}

// ---------------------------------------------------------------- wigner

fn hi(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn phase(twice_exponent: i32) -> i8 {
    // (-1)^(x) for integral x = twice_exponent / 2
    debug_assert!(twice_exponent % 2 == 0);
    if (twice_exponent / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(s: i8, v: &SqrtRational) -> SqrtRational {
    if s < 0 {
        -v.clone()
    } else {
        v.clone()
    }
}

type Key3 = [i32; 6];

/// Every 3jm with `2j ≤ twice_max`, keyed by twice-values.
pub fn all_three_jm(twice_max: i32) -> HashMap<Key3, SqrtRational> {
    let mut out = HashMap::new();
    for a in 0..=twice_max {
        for b in 0..=twice_max {
            for cc in 0..=twice_max {
                if !triangle_satisfied(hi(a), hi(b), hi(cc)) {
                    continue;
                }
                for ma in (-a..=a).step_by(2) {
                    for mb in (-b..=b).step_by(2) {
                        let mc = -ma - mb;
                        if mc.abs() > cc || (cc - mc) % 2 != 0 {
                            continue;
                        }
                        let w = three_jm(hi(a), hi(b), hi(cc), hi(ma), hi(mb), hi(mc)).unwrap();
                        out.insert([a, b, cc, ma, mb, mc], w);
                    }
                }
            }
        }
    }
    out
}

/// Column permutations and the projection flip, compared exactly.
pub fn three_jm_symmetry_violations(table: &HashMap<Key3, SqrtRational>) -> Vec<Key3> {
    let mut bad = Vec::new();
    for (&[a, b, cc, ma, mb, mc], w) in table {
        let odd = phase(a + b + cc);
        let checks = [
            ([b, cc, a, mb, mc, ma], 1),
            ([cc, a, b, mc, ma, mb], 1),
            ([b, a, cc, mb, ma, mc], odd),
            ([a, cc, b, ma, mc, mb], odd),
            ([cc, b, a, mc, mb, ma], odd),
            ([a, b, cc, -ma, -mb, -mc], odd),
        ];
        for (key, s) in checks {
            if table.get(&key) != Some(&signed(s, w)) {
                bad.push([a, b, cc, ma, mb, mc]);
                break;
            }
        }
    }
    bad
}

/// `Σ_{m1 m2} (2j3+1) (j1 j2 j3; m1 m2 m3)(j1 j2 j3'; m1 m2 m3') = δ δ`.
pub fn three_jm_orthogonality(twice_max: i32) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..=twice_max {
        for b in 0..=twice_max {
            let j3s: Vec<i32> = ((a - b).abs()..=(a + b)).step_by(2).collect();
            for &c1 in &j3s {
                for &c2 in &j3s {
                    for m3 in (-c1.min(c2)..=c1.min(c2)).step_by(2) {
                        let mut s = 0.0;
                        for ma in (-a..=a).step_by(2) {
                            let mb = -ma - m3;
                            if mb.abs() > b {
                                continue;
                            }
                            let x = three_jm(hi(a), hi(b), hi(c1), hi(ma), hi(mb), hi(m3)).unwrap();
                            let y = three_jm(hi(a), hi(b), hi(c2), hi(ma), hi(mb), hi(m3)).unwrap();
                            s += (x * y).to_f64();
                        }
                        s *= f64::from(c1 + 1);
                        let want = if c1 == c2 { 1.0 } else { 0.0 };
                        worst = worst.max((s - want).abs());
                    }
                }
            }
            // completeness over (j3, m3) for fixed (m1, m2) and (m1', m2')
            for ma in (-a..=a).step_by(2) {
                for mb in (-b..=b).step_by(2) {
                    for na in (-a..=a).step_by(2) {
                        let nb = ma + mb - na;
                        if nb.abs() > b {
                            continue;
                        }
                        let mut s = 0.0;
                        for &cc in &j3s {
                            let m3 = -ma - mb;
                            if m3.abs() > cc {
                                continue;
                            }
                            let x = three_jm(hi(a), hi(b), hi(cc), hi(ma), hi(mb), hi(m3)).unwrap();
                            let y = three_jm(hi(a), hi(b), hi(cc), hi(na), hi(nb), hi(m3)).unwrap();
                            s += f64::from(cc + 1) * (x * y).to_f64();
                        }
                        let want = if ma == na { 1.0 } else { 0.0 };
                        worst = worst.max((s - want).abs());
                    }
                }
            }
        }
    }
    worst
}

type Key6 = [i32; 6];

fn six_j_admissible(k: &Key6) -> bool {
    let [a, b, cc, d, e, f] = k.map(hi);
    triangle_satisfied(a, b, cc) && triangle_satisfied(a, e, f) && triangle_satisfied(d, b, f) && triangle_satisfied(d, e, cc)
}

/// Every admissible 6j with `2j ≤ twice_max`.
pub fn all_six_j(twice_max: i32) -> HashMap<Key6, SqrtRational> {
    let mut out = HashMap::new();
    let r = 0..=twice_max;
    for a in r.clone() {
        for b in r.clone() {
            for cc in r.clone() {
                if !triangle_satisfied(hi(a), hi(b), hi(cc)) {
                    continue;
                }
                for d in r.clone() {
                    for e in r.clone() {
                        for f in r.clone() {
                            let k = [a, b, cc, d, e, f];
                            if six_j_admissible(&k) {
                                let v = six_j(hi(a), hi(b), hi(cc), hi(d), hi(e), hi(f)).unwrap();
                                out.insert(k, v);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Column permutations and upper/lower swaps in pairs of columns.
pub fn six_j_symmetry_violations(table: &HashMap<Key6, SqrtRational>) -> Vec<Key6> {
    let mut bad = Vec::new();
    for (&[a, b, cc, d, e, f], w) in table {
        let images = [
            [b, a, cc, e, d, f],
            [a, cc, b, d, f, e],
            [cc, b, a, f, e, d],
            [b, cc, a, e, f, d],
            [d, e, cc, a, b, f],
            [a, e, f, d, b, cc],
            [d, b, f, a, e, cc],
        ];
        if images.iter().any(|k| table.get(k) != Some(w)) {
            bad.push([a, b, cc, d, e, f]);
        }
    }
    bad
}

/// `Σ_{j3} (2j3+1)(2j6+1) {j1 j2 j3; j4 j5 j6}{j1 j2 j3; j4 j5 j6'} = δ`.
pub fn six_j_orthogonality(table: &HashMap<Key6, SqrtRational>, twice_max: i32) -> f64 {
    let mut worst = 0.0f64;
    let r = 0..=twice_max;
    for a in r.clone() {
        for b in r.clone() {
            for d in r.clone() {
                for e in r.clone() {
                    for f1 in r.clone() {
                        for f2 in r.clone() {
                            // both j6 values must be reachable for the identity to apply
                            let ok = |f: i32| {
                                triangle_satisfied(hi(a), hi(e), hi(f)) && triangle_satisfied(hi(d), hi(b), hi(f))
                            };
                            if !ok(f1) || !ok(f2) {
                                continue;
                            }
                            let lo = (a - b).abs().max((d - e).abs());
                            let hi_ = (a + b).min(d + e);
                            let mut s = 0.0;
                            for cc in (lo..=hi_).step_by(2) {
                                let get = |f: i32| match table.get(&[a, b, cc, d, e, f]) {
                                    Some(v) => v.clone(),
                                    None => six_j(hi(a), hi(b), hi(cc), hi(d), hi(e), hi(f)).unwrap(),
                                };
                                s += f64::from((cc + 1) * (f1 + 1)) * (get(f1) * get(f2)).to_f64();
                            }
                            let want = if f1 == f2 { 1.0 } else { 0.0 };
                            worst = worst.max((s - want).abs());
                        }
                    }
                }
            }
        }
    }
    worst
}

pub fn wigner_exactness() -> Check {
    let t3 = all_three_jm(8);
    let bad3 = three_jm_symmetry_violations(&t3);
    if !bad3.is_empty() {
        return Err(format!("{} 3jm symmetry violations, e.g. {:?}", bad3.len(), bad3[0]));
    }
    let t6 = all_six_j(8);
    let bad6 = six_j_symmetry_violations(&t6);
    if !bad6.is_empty() {
        return Err(format!("{} 6j symmetry violations, e.g. {:?}", bad6.len(), bad6[0]));
    }
    let o3 = three_jm_orthogonality(8);
    let o6 = six_j_orthogonality(&t6, 8);
    let summary = format!(
        "{} 3jm and {} 6j symbols exact under symmetry; orthogonality {:.1e}",
        t3.len(),
        t6.len(),
        o3.max(o6)
    );
    if o3 < 1e-12 && o6 < 1e-12 {
        Ok(summary)
    } else {
        Err(summary)
    }
}
