//! Replicator dynamics with payoff matrix `M = A + cI`.
//!
//! The continuous flow `ẋ_i = x_i((Mx)_i - xᵀMx)` is integrated with a
//! fixed-step RK4 scheme followed by a projection back onto the simplex.
//! The discrete map is the multiplicative update `x_i (Mx)_i / xᵀMx`.

use std::io::{self, Write};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kkt::{float_payoffs, kkt_residual, KktResidual, ParametricProgram};
use crate::rational::Rational;
use crate::simplex::SimplexPoint;

/// Tolerances for accepting a float vector as a point of the simplex.
pub const SUM_TOL: f64 = 1e-9;
pub const NEG_TOL: f64 = 1e-12;
/// Integration stops once `‖ẋ‖∞` drops below this.
pub const STATIONARY_TOL: f64 = 1e-10;
/// Coordinates above this count as support when measuring KKT residuals.
pub const SUPPORT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    Continuous,
    Discrete,
}

impl StepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            StepMode::Continuous => "continuous",
            StepMode::Discrete => "discrete",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<Vec<f64>>,
    pub times: Vec<f64>,
    /// `f_c` at each state.
    pub objective: Vec<f64>,
    pub c: f64,
    pub step_mode: StepMode,
    /// Shift added to every payoff by the discrete map; zero otherwise.
    pub kappa: f64,
}

/// One exported line of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord<'a> {
    pub step: usize,
    pub time: f64,
    pub coords: &'a [f64],
    pub objective: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn terminal(&self) -> &[f64] {
        self.states.last().expect("trajectory holds its initial state")
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    /// Largest single-step drop of `f_c`; zero for monotone trajectories.
    pub fn max_decrease(&self) -> f64 {
        self.objective
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(0.0, f64::max)
    }

    pub fn is_monotone(&self, slack: f64) -> bool {
        self.max_decrease() <= slack
    }

    pub fn terminal_residual(&self, g: &Graph) -> KktResidual {
        kkt_residual(g, self.c, self.terminal(), SUPPORT_TOL)
    }

    pub fn records(&self) -> impl Iterator<Item = TrajectoryRecord<'_>> {
        (0..self.states.len()).map(move |k| TrajectoryRecord {
            step: k,
            time: self.times[k],
            coords: &self.states[k],
            objective: self.objective[k],
        })
    }

    /// Writes one whitespace-separated line per state:
    /// `step time x_1 .. x_n f_c`.
    pub fn write_records<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in self.records() {
            write!(w, "{} {:.16e}", r.step, r.time)?;
            for v in r.coords {
                write!(w, " {v:.16e}")?;
            }
            writeln!(w, " {:.16e}", r.objective)?;
        }
        Ok(())
    }
}

pub fn objective(g: &Graph, c: f64, x: &[f64]) -> f64 {
    let mx = float_payoffs(g, c, x);
    x.iter().zip(&mx).map(|(a, b)| a * b).sum()
}

fn check_point(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let sum: f64 = x.iter().sum();
    if !x.iter().all(|v| v.is_finite() && *v >= -NEG_TOL) || (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::NotOnSimplex(format!("{x:?}")));
    }
    Ok(())
}

fn project(x: &mut [f64]) {
    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= sum;
    }
}

fn field_unchecked(g: &Graph, c: f64, x: &[f64]) -> Vec<f64> {
    let mx = float_payoffs(g, c, x);
    let mean: f64 = x.iter().zip(&mx).map(|(a, b)| a * b).sum();
    x.iter().zip(&mx).map(|(xi, m)| xi * (m - mean)).collect()
}

pub fn vector_field(g: &Graph, c: f64, x: &[f64]) -> Result<Vec<f64>> {
    check_point(g, x)?;
    Ok(field_unchecked(g, c, x))
}

/// The vector field evaluated in exact arithmetic.
pub fn exact_vector_field(g: &Graph, c: &Rational, x: &SimplexPoint) -> Result<Vec<Rational>> {
    let program = ParametricProgram::new(g, c.clone());
    let mx = program.payoffs(x)?;
    let mean: Rational = x.coords().iter().zip(&mx).map(|(a, b)| a * b).sum();
    Ok(x.coords()
        .iter()
        .zip(&mx)
        .map(|(xi, m)| if xi.is_zero() { Rational::zero() } else { xi * (m - &mean) })
        .collect())
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn rk4_step(g: &Graph, c: f64, x: &[f64], dt: f64) -> Vec<f64> {
    let shifted = |k: &[f64], h: f64| -> Vec<f64> { x.iter().zip(k).map(|(a, b)| a + h * b).collect() };
    let k1 = field_unchecked(g, c, x);
    let k2 = field_unchecked(g, c, &shifted(&k1, dt / 2.0));
    let k3 = field_unchecked(g, c, &shifted(&k2, dt / 2.0));
    let k4 = field_unchecked(g, c, &shifted(&k3, dt));
    let mut next: Vec<f64> = (0..x.len())
        .map(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    project(&mut next);
    next
}

/// Integrates the flow from `x0` for `⌈t_end / dt⌉` steps, stopping early
/// at a numerically stationary state.
pub fn integrate(g: &Graph, c: f64, x0: &[f64], t_end: f64, dt: f64) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidIntegration(format!("dt must be positive, got {dt}")));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidIntegration(format!("t_end must be positive, got {t_end}")));
    }
    if !c.is_finite() {
        return Err(Error::InvalidIntegration(format!("c must be finite, got {c}")));
    }
    check_point(g, x0)?;
    let mut x = x0.to_vec();
    project(&mut x);

    let steps = (t_end / dt).ceil() as usize;
    let mut traj = Trajectory {
        states: Vec::with_capacity(steps.min(1 << 16) + 1),
        times: Vec::with_capacity(steps.min(1 << 16) + 1),
        objective: Vec::with_capacity(steps.min(1 << 16) + 1),
        c,
        step_mode: StepMode::Continuous,
        kappa: 0.0,
    };
    traj.objective.push(objective(g, c, &x));
    traj.times.push(0.0);
    traj.states.push(x.clone());
    for k in 1..=steps {
        if sup_norm(&field_unchecked(g, c, &x)) < STATIONARY_TOL {
            break;
        }
        x = rk4_step(g, c, &x, dt);
        traj.objective.push(objective(g, c, &x));
        traj.times.push((k as f64 * dt).min(t_end));
        traj.states.push(x.clone());
    }
    Ok(traj)
}

/// The shift making every payoff positive: `1 - c` when `c <= 0`, else 0.
pub fn default_shift(c: f64) -> f64 {
    if c <= 0.0 {
        1.0 - c
    } else {
        0.0
    }
}

/// One step of the multiplicative map with payoffs `Mx + κ1`.
pub fn discrete_step_shifted(g: &Graph, c: f64, kappa: f64, x: &[f64]) -> Result<Vec<f64>> {
    check_point(g, x)?;
    let payoff: Vec<f64> = float_payoffs(g, c, x).into_iter().map(|m| m + kappa).collect();
    if let Some(i) = (0..x.len()).find(|&i| x[i] > 0.0 && payoff[i] <= 0.0) {
        return Err(Error::DiscreteMapUndefined {
            vertex: i + 1,
            payoff: payoff[i],
        });
    }
    let mean: f64 = x.iter().zip(&payoff).map(|(a, b)| a * b).sum();
    let mut next: Vec<f64> = x.iter().zip(&payoff).map(|(xi, p)| xi * p / mean).collect();
    project(&mut next);
    Ok(next)
}

pub fn discrete_step(g: &Graph, c: f64, x: &[f64]) -> Result<Vec<f64>> {
    discrete_step_shifted(g, c, 0.0, x)
}

/// Iterates the discrete map, shifting payoffs by [`default_shift`] so the
/// map is defined for every `c`.
pub fn iterate_discrete(g: &Graph, c: f64, x0: &[f64], steps: usize) -> Result<Trajectory> {
    check_point(g, x0)?;
    let kappa = default_shift(c);
    let mut x = x0.to_vec();
    project(&mut x);
    let mut traj = Trajectory {
        states: vec![x.clone()],
        times: vec![0.0],
        objective: vec![objective(g, c, &x)],
        c,
        step_mode: StepMode::Discrete,
        kappa,
    };
    for k in 1..=steps {
        let next = discrete_step_shifted(g, c, kappa, &x)?;
        let moved = x.iter().zip(&next).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        x = next;
        traj.objective.push(objective(g, c, &x));
        traj.times.push(k as f64);
        traj.states.push(x.clone());
        if moved == 0.0 {
            break;
        }
    }
    Ok(traj)
}
