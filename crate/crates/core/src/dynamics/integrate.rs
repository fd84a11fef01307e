use nalgebra::{DMatrix, DVector};

use super::state::{bloch_length_1, bloch_length_2};
use crate::error::{Error, Result};

/// A state the fixed-step integrator can advance: a vector space element
/// whose Bloch length is defined.
pub trait OdeState: Clone {
    /// `self + a · k`.
    fn add_scaled(&self, k: &Self, a: f64) -> Self;
    fn all_finite(&self) -> bool;
    fn bloch_length(&self) -> f64;
}

impl OdeState for DVector<f64> {
    fn add_scaled(&self, k: &Self, a: f64) -> Self {
        self + k * a
    }

    fn all_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }

    fn bloch_length(&self) -> f64 {
        bloch_length_1(self)
    }
}

impl OdeState for DMatrix<f64> {
    fn add_scaled(&self, k: &Self, a: f64) -> Self {
        self + k * a
    }

    fn all_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }

    fn bloch_length(&self) -> f64 {
        bloch_length_2(self)
    }
}

/// Snapshots on a uniform time grid, `steps + 1` of them including `t = 0`.
#[derive(Clone, Debug)]
pub struct Trajectory<S> {
    pub dt: f64,
    pub times: Vec<f64>,
    pub states: Vec<S>,
    pub bloch_lengths: Vec<f64>,
}

impl<S> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn first(&self) -> &S {
        &self.states[0]
    }

    pub fn last(&self) -> &S {
        self.states.last().expect("trajectory has at least one snapshot")
    }

    /// Largest `|b(t) - b(0)|` along the trajectory.
    pub fn max_length_drift(&self) -> f64 {
        let b0 = self.bloch_lengths[0];
        self.bloch_lengths.iter().map(|b| (b - b0).abs()).fold(0.0, f64::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S, f64)> {
        self.times
            .iter()
            .zip(&self.states)
            .zip(&self.bloch_lengths)
            .map(|((t, s), b)| (*t, s, *b))
    }
}

/// Classical fixed-step fourth-order Runge–Kutta.
///
/// Aborts with [`Error::NonFinite`] as soon as a step produces a NaN or
/// infinite component.
pub fn integrate<S, F>(mut deriv: F, state0: S, dt: f64, steps: usize) -> Result<Trajectory<S>>
where
    S: OdeState,
    F: FnMut(&S) -> S,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::domain(format!("time step must be positive, got {dt}")));
    }
    if steps == 0 {
        return Err(Error::domain("at least one step is required"));
    }
    if !state0.all_finite() {
        return Err(Error::NonFinite { step: 0, time: 0.0 });
    }

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut lengths = Vec::with_capacity(steps + 1);
    times.push(0.0);
    lengths.push(state0.bloch_length());
    states.push(state0);

    for step in 1..=steps {
        let y = states.last().unwrap();
        let k1 = deriv(y);
        let k2 = deriv(&y.add_scaled(&k1, 0.5 * dt));
        let k3 = deriv(&y.add_scaled(&k2, 0.5 * dt));
        let k4 = deriv(&y.add_scaled(&k3, dt));
        let next = y
            .add_scaled(&k1, dt / 6.0)
            .add_scaled(&k2, dt / 3.0)
            .add_scaled(&k3, dt / 3.0)
            .add_scaled(&k4, dt / 6.0);
        let t = step as f64 * dt;
        if !next.all_finite() {
            return Err(Error::NonFinite { step, time: t });
        }
        times.push(t);
        lengths.push(next.bloch_length());
        states.push(next);
    }

    Ok(Trajectory {
        dt,
        times,
        states,
        bloch_lengths: lengths,
    })
}
