//! Structure constants straight from their trace definitions:
//! `e_ijk = Tr([C_i, C_j] C_k) / 2ic` and `g_ijk = Tr({C_i, C_j} C_k) / 2c`.

use crate::error::{Error, Result};
use crate::linalg::{trace_product, ComplexMatrix};

/// Imaginary residue tolerated on a trace that must be real.
const IMAG_TOL: f64 = 1e-12;

fn check_dims(ci: &ComplexMatrix, cj: &ComplexMatrix, ck: &ComplexMatrix) -> Result<usize> {
    let d = ci.nrows();
    for m in [ci, cj, ck] {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::dimension(format!("{d}x{d}"), format!("{}x{}", m.nrows(), m.ncols())));
        }
    }
    Ok(d)
}

fn check_norm(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("normalization constant must be positive, got {c}")))
    }
}

pub fn e_trace(ci: &ComplexMatrix, cj: &ComplexMatrix, ck: &ComplexMatrix, c: f64) -> Result<f64> {
    check_dims(ci, cj, ck)?;
    check_norm(c)?;
    let t = trace_product(&(ci * cj), ck) - trace_product(&(cj * ci), ck);
    // t / (2ic) = -i t / 2c
    let v = num_complex::Complex64::new(t.im, -t.re) / (2.0 * c);
    if v.im.abs() > IMAG_TOL {
        return Err(Error::Numerical(format!("e trace has imaginary part {:e}", v.im)));
    }
    Ok(v.re)
}

pub fn g_trace(ci: &ComplexMatrix, cj: &ComplexMatrix, ck: &ComplexMatrix, c: f64) -> Result<f64> {
    check_dims(ci, cj, ck)?;
    check_norm(c)?;
    let t = trace_product(&(ci * cj), ck) + trace_product(&(cj * ci), ck);
    let v = t / (2.0 * c);
    if v.im.abs() > IMAG_TOL {
        return Err(Error::Numerical(format!("g trace has imaginary part {:e}", v.im)));
    }
    Ok(v.re)
}
