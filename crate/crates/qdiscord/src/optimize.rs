//! Derivative-free minimization over one or two Bloch-angle pairs.
//!
//! Strategy: exhaustive scan of a fixed (theta, phi) grid, then Nelder-Mead
//! refinement started from the best cell. Both stages are fully deterministic;
//! ties on the grid (values equal within [`GRID_TIE_TOL`]) resolve to the
//! lexicographically smallest coordinate tuple, so flat landscapes (e.g. the
//! rotationally invariant Werner family) always report (0, 0).

use crate::error::{QdError, Result};
use crate::maps::BlochAngles;
use std::f64::consts::{PI, TAU};

/// Grid values within this tolerance of the minimum count as ties.
pub const GRID_TIE_TOL: f64 = 1e-9;

/// Grid densities and refinement limits for the minimizers.
///
/// `theta_points`/`phi_points` drive single-PVM searches; the `pair_*` counts
/// are used per side in four-parameter (two-PVM) searches, where the full
/// product grid is scanned.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub theta_points: usize,
    pub phi_points: usize,
    pub pair_theta_points: usize,
    pub pair_phi_points: usize,
    pub refine_max_iter: usize,
    pub refine_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_points: 33,
            phi_points: 64,
            pair_theta_points: 9,
            pair_phi_points: 16,
            refine_max_iter: 200,
            refine_tol: 1e-10,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            self.theta_points,
            self.phi_points,
            self.pair_theta_points,
            self.pair_phi_points,
        ];
        if counts.iter().any(|&c| c < 2) {
            return Err(QdError::InvalidOptimizerConfig(
                "all grid point counts must be at least 2".into(),
            ));
        }
        if !self.refine_tol.is_finite() || self.refine_tol <= 0.0 {
            return Err(QdError::InvalidOptimizerConfig(
                "refinement tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// What the minimizer saw: best raw grid value, best refined value, and the
/// number of Nelder-Mead iterations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerDiagnostics {
    pub grid_best: f64,
    pub refined: f64,
    pub iterations: usize,
}

fn wrap_phi(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Clamps theta components (even indices) into [0, pi]; phi components are
/// left free in storage and wrapped only at evaluation time, keeping the
/// simplex geometry smooth across the periodic seam.
fn clamp_thetas(x: &mut [f64]) {
    for i in (0..x.len()).step_by(2) {
        x[i] = x[i].clamp(0.0, PI);
    }
}

fn to_angles(x: &[f64]) -> BlochAngles {
    BlochAngles::new(x[0].clamp(0.0, PI), wrap_phi(x[1])).expect("sanitized angles")
}

struct GridSpec {
    thetas: Vec<f64>,
    phis: Vec<f64>,
}

impl GridSpec {
    fn new(theta_points: usize, phi_points: usize) -> Self {
        let thetas = (0..theta_points)
            .map(|i| i as f64 * PI / (theta_points - 1) as f64)
            .collect();
        let phis = (0..phi_points)
            .map(|j| j as f64 * TAU / phi_points as f64)
            .collect();
        Self { thetas, phis }
    }

    fn theta_step(&self) -> f64 {
        self.thetas[1] - self.thetas[0]
    }

    fn phi_step(&self) -> f64 {
        self.phis[1] - self.phis[0]
    }
}

/// Core minimizer over `pairs` Bloch-angle pairs (1 or 2), packed as
/// `[theta_1, phi_1, (theta_2, phi_2)]`.
fn minimize_packed(
    f: &dyn Fn(&[f64]) -> f64,
    grid: &GridSpec,
    pairs: usize,
    cfg: &OptimizerConfig,
) -> Result<(Vec<f64>, f64, OptimizerDiagnostics)> {
    let dims = 2 * pairs;
    let eval = |x: &[f64]| -> Result<f64> {
        let mut s = x.to_vec();
        clamp_thetas(&mut s);
        for i in (1..s.len()).step_by(2) {
            s[i] = wrap_phi(s[i]);
        }
        let v = f(&s);
        if !v.is_finite() {
            return Err(QdError::NonFiniteObjective);
        }
        Ok(v)
    };

    // Exhaustive scan in lexicographic coordinate order.
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut coords = vec![0usize; dims];
    loop {
        let pt: Vec<f64> = (0..dims)
            .map(|d| {
                if d % 2 == 0 {
                    grid.thetas[coords[d]]
                } else {
                    grid.phis[coords[d]]
                }
            })
            .collect();
        points.push(pt);
        // Odometer increment, last coordinate fastest.
        let mut d = dims;
        loop {
            if d == 0 {
                break;
            }
            d -= 1;
            let limit = if d.is_multiple_of(2) {
                grid.thetas.len()
            } else {
                grid.phis.len()
            };
            coords[d] += 1;
            if coords[d] < limit {
                break;
            }
            coords[d] = 0;
            if d == 0 {
                coords.clear();
                break;
            }
        }
        if coords.is_empty() {
            break;
        }
    }
    let mut values = Vec::with_capacity(points.len());
    for pt in &points {
        values.push(eval(pt)?);
    }
    let grid_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let best_idx = values
        .iter()
        .position(|&v| v <= grid_min + GRID_TIE_TOL)
        .expect("non-empty grid");
    let grid_best_point = points[best_idx].clone();
    let grid_best = values[best_idx];

    // Nelder-Mead refinement from the winning cell.
    let steps: Vec<f64> = (0..dims)
        .map(|d| {
            if d % 2 == 0 {
                grid.theta_step()
            } else {
                grid.phi_step()
            }
        })
        .collect();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dims + 1);
    simplex.push((grid_best_point.clone(), grid_best));
    for d in 0..dims {
        let mut v = grid_best_point.clone();
        if d % 2 == 0 && v[d] + steps[d] > PI {
            v[d] -= steps[d];
        } else {
            v[d] += steps[d];
        }
        clamp_thetas(&mut v);
        let fv = eval(&v)?;
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    while iterations < cfg.refine_max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[dims].1 - simplex[0].1 <= cfg.refine_tol {
            break;
        }
        iterations += 1;
        let centroid: Vec<f64> = (0..dims)
            .map(|d| simplex[..dims].iter().map(|(v, _)| v[d]).sum::<f64>() / dims as f64)
            .collect();
        let worst = simplex[dims].clone();
        let shift = |scale: f64| -> Vec<f64> {
            let mut v: Vec<f64> = (0..dims)
                .map(|d| centroid[d] + scale * (centroid[d] - worst.0[d]))
                .collect();
            clamp_thetas(&mut v);
            v
        };
        let reflected = shift(1.0);
        let fr = eval(&reflected)?;
        if fr < simplex[0].1 {
            let expanded = shift(2.0);
            let fe = eval(&expanded)?;
            simplex[dims] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[dims - 1].1 {
            simplex[dims] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                shift(0.5)
            } else {
                shift(-0.5)
            };
            let fc = eval(&contracted)?;
            if fc < worst.1.min(fr) {
                simplex[dims] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for (coord, &anchor) in entry.0.iter_mut().zip(&best) {
                        *coord = anchor + 0.5 * (*coord - anchor);
                    }
                    clamp_thetas(&mut entry.0);
                    entry.1 = eval(&entry.0)?;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (refined_point, refined) = simplex[0].clone();

    let diagnostics = OptimizerDiagnostics {
        grid_best,
        refined,
        iterations,
    };
    // Keep the grid point unless refinement produced a real improvement; this
    // preserves the documented tie-break on flat landscapes.
    if refined < grid_best - cfg.refine_tol {
        let mut s = refined_point;
        clamp_thetas(&mut s);
        for i in (1..s.len()).step_by(2) {
            s[i] = wrap_phi(s[i]);
        }
        Ok((s, refined, diagnostics))
    } else {
        Ok((grid_best_point, grid_best, diagnostics))
    }
}

/// Minimizes an objective over a single Bloch-angle pair.
pub fn minimize_bloch(
    objective: impl Fn(BlochAngles) -> f64,
    cfg: &OptimizerConfig,
) -> Result<(BlochAngles, f64, OptimizerDiagnostics)> {
    cfg.validate()?;
    let grid = GridSpec::new(cfg.theta_points, cfg.phi_points);
    let f = |x: &[f64]| objective(to_angles(x));
    let (point, value, diag) = minimize_packed(&f, &grid, 1, cfg)?;
    Ok((to_angles(&point), value, diag))
}

/// Minimizes an objective over a pair of Bloch-angle pairs (A side, B side).
pub fn minimize_bloch_pair(
    objective: impl Fn(BlochAngles, BlochAngles) -> f64,
    cfg: &OptimizerConfig,
) -> Result<((BlochAngles, BlochAngles), f64, OptimizerDiagnostics)> {
    cfg.validate()?;
    let grid = GridSpec::new(cfg.pair_theta_points, cfg.pair_phi_points);
    let f = |x: &[f64]| objective(to_angles(&x[..2]), to_angles(&x[2..]));
    let (point, value, diag) = minimize_packed(&f, &grid, 2, cfg)?;
    Ok((
        (to_angles(&point[..2]), to_angles(&point[2..])),
        value,
        diag,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constant_objective_returns_origin() {
        let cfg = OptimizerConfig::default();
        let (angles, value, diag) = minimize_bloch(|_| 2.5, &cfg).unwrap();
        assert_eq!(value, 2.5);
        assert_eq!((angles.theta(), angles.phi()), (0.0, 0.0));
        assert!(diag.refined <= diag.grid_best + 1e-12);

        let ((a, b), value, _) = minimize_bloch_pair(|_, _| -1.25, &cfg).unwrap();
        assert_eq!(value, -1.25);
        assert_eq!((a.theta(), a.phi()), (0.0, 0.0));
        assert_eq!((b.theta(), b.phi()), (0.0, 0.0));
    }

    #[test]
    fn quadratic_in_theta_hits_analytic_minimum() {
        let cfg = OptimizerConfig::default();
        let (angles, value, _) = minimize_bloch(|a| a.theta().cos().powi(2), &cfg).unwrap();
        assert_abs_diff_eq!(angles.theta(), FRAC_PI_2, epsilon = 1e-5);
        assert!(value < 1e-10);
    }

    #[test]
    fn off_grid_minimum_is_refined() {
        // Minimum at (theta, phi) = (1.0, 2.5), away from any grid node.
        let cfg = OptimizerConfig::default();
        let f = |a: BlochAngles| {
            (a.theta() - 1.0).powi(2) + 0.5 * ((a.phi() - 2.5) / 2.0).sin().powi(2)
        };
        let (angles, value, diag) = minimize_bloch(f, &cfg).unwrap();
        assert_abs_diff_eq!(angles.theta(), 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(angles.phi(), 2.5, epsilon = 1e-3);
        assert!(value < 1e-8);
        assert!(diag.refined <= diag.grid_best + 1e-12);
        assert!(diag.iterations > 0);
    }

    #[test]
    fn periodic_seam_is_handled() {
        // Minimum at phi = 6.0, close to the 2*pi wrap.
        let cfg = OptimizerConfig::default();
        let f = |a: BlochAngles| (a.theta() - 0.5).powi(2) + ((a.phi() - 6.0) / 2.0).sin().powi(2);
        let (angles, value, _) = minimize_bloch(f, &cfg).unwrap();
        assert_abs_diff_eq!(angles.phi(), 6.0, epsilon = 1e-3);
        assert!(value < 1e-7);
        assert!(angles.phi() < TAU);
    }

    #[test]
    fn tie_break_prefers_lexicographically_smallest() {
        // sin^2(theta) has minima at both poles; theta = 0 wins.
        let cfg = OptimizerConfig::default();
        let (angles, _, _) = minimize_bloch(|a| a.theta().sin().powi(2), &cfg).unwrap();
        assert_eq!((angles.theta(), angles.phi()), (0.0, 0.0));
    }

    #[test]
    fn separable_pair_matches_componentwise_optima() {
        let cfg = OptimizerConfig::default();
        let fa = |a: BlochAngles| (a.theta() - 1.3).powi(2);
        let fb = |b: BlochAngles| (b.theta().cos() - 0.2).powi(2);
        let (_, va, _) = minimize_bloch(fa, &cfg).unwrap();
        let (_, vb, _) = minimize_bloch(fb, &cfg).unwrap();
        let (_, vab, _) = minimize_bloch_pair(|a, b| fa(a) + fb(b), &cfg).unwrap();
        assert_abs_diff_eq!(vab, va + vb, epsilon = 1e-6);
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let cfg = OptimizerConfig::default();
        let res = minimize_bloch(|a| if a.theta() > 2.0 { f64::NAN } else { 0.0 }, &cfg);
        assert!(matches!(res, Err(QdError::NonFiniteObjective)));
    }

    #[test]
    fn deterministic_across_runs() {
        let cfg = OptimizerConfig::default();
        let f = |a: BlochAngles| (a.theta() - 0.77).powi(2) + (a.phi() - 1.9).powi(2) * 0.1;
        let r1 = minimize_bloch(f, &cfg).unwrap();
        let r2 = minimize_bloch(f, &cfg).unwrap();
        assert_eq!(r1.0.theta().to_bits(), r2.0.theta().to_bits());
        assert_eq!(r1.0.phi().to_bits(), r2.0.phi().to_bits());
        assert_eq!(r1.1.to_bits(), r2.1.to_bits());
        assert_eq!(r1.2.iterations, r2.2.iterations);
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = OptimizerConfig {
            theta_points: 1,
            ..OptimizerConfig::default()
        };
        assert!(minimize_bloch(|_| 0.0, &cfg).is_err());
        let cfg = OptimizerConfig {
            refine_tol: 0.0,
            ..OptimizerConfig::default()
        };
        assert!(minimize_bloch(|_| 0.0, &cfg).is_err());
    }
}
