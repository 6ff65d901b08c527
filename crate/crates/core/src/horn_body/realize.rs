//! Numerical search for a unitary `U` with `s(diag(λ) U diag(μ)) = ν`.
//!
//! Each restart starts from a Haar unitary and runs Levenberg–Marquardt over
//! the Lie algebra: a step is `U ← U · cayley(H)` with `H` Hermitian, so the
//! iterate stays unitary. Two residuals are used in sequence:
//!
//! 1. power sums `tr((X*X)^k) - Σ ν_i^{2k}`, `k = 1..n`, which are
//!    polynomial in `U` and smooth through singular-value collisions;
//! 2. the singular values themselves, `s(X) - ν`, to polish.
//!
//! Restarts run in parallel. The result with the smallest residual wins,
//! ties going to the lowest restart index, so output depends only on the
//! seed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::membership::{membership, on_boundary, BodySpec};
use crate::error::{Error, Result};
use crate::spectra::{
    haar_unitary, singular_values_with_scale, ComplexMatrix, RngSeed, SingularSpectrum,
};

#[derive(Clone, Debug)]
pub struct RealizeConfig {
    /// Success threshold on `‖s(diag λ U diag μ) - ν‖₂` for interior targets.
    pub tol: f64,
    /// Success threshold used instead when `ν` lies on the boundary.
    pub boundary_tol: f64,
    /// Log-domain tolerance of the membership precondition.
    pub membership_tol: f64,
    /// Total iteration budget, split evenly across restarts.
    pub budget: usize,
    pub restarts: usize,
    pub seed: RngSeed,
}

impl Default for RealizeConfig {
    fn default() -> Self {
        RealizeConfig {
            tol: 1e-9,
            boundary_tol: 1e-4,
            membership_tol: 1e-8,
            budget: 5000,
            restarts: 4,
            seed: RngSeed(0),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationResult {
    pub unitary: ComplexMatrix,
    pub achieved: SingularSpectrum,
    /// Euclidean distance from `achieved` to the target.
    pub residual: f64,
    /// Iterations summed over all restarts.
    pub iterations: usize,
    pub converged: bool,
    /// Whether the target was classified as a boundary point.
    pub boundary: bool,
    /// Threshold the residual was held to.
    pub threshold: f64,
    /// Index of the winning restart.
    pub restart: usize,
    pub seed: RngSeed,
}

/// Finds `U` realizing `nu`. Fails with [`Error::NotMember`] when `nu` does
/// not pass the membership test; running out of budget is reported through
/// `converged = false`.
pub fn realize(
    spec: &BodySpec,
    nu: &SingularSpectrum,
    cfg: &RealizeConfig,
) -> Result<RealizationResult> {
    let report = membership(spec, nu, cfg.membership_tol)?;
    if !report.passed() {
        return Err(Error::NotMember(Box::new(report)));
    }
    let boundary = on_boundary(&report, nu, 1e-9);
    let threshold = if boundary {
        cfg.tol.max(cfg.boundary_tol)
    } else {
        cfg.tol
    };
    let restarts = cfg.restarts.max(1);
    let per_restart = (cfg.budget / restarts).max(1);

    let problem = Problem::new(spec, nu);
    let runs: Vec<Run> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            problem.run(
                haar_unitary(spec.n(), cfg.seed.derive(k as u64)),
                per_restart,
                threshold,
            )
        })
        .collect::<Result<_>>()?;
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let (restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.residual < a.1.residual { b } else { a })
        .expect("at least one restart");
    Ok(RealizationResult {
        achieved: best.achieved,
        residual: best.residual,
        converged: best.residual <= threshold,
        unitary: ComplexMatrix::from_dmatrix(best.unitary)?,
        iterations,
        boundary,
        threshold,
        restart,
        seed: cfg.seed,
    })
}

struct Run {
    unitary: DMatrix<Complex64>,
    achieved: SingularSpectrum,
    residual: f64,
    iterations: usize,
}

#[derive(Clone, Copy)]
enum Residual {
    PowerSums,
    Singular,
}

struct Problem {
    n: usize,
    lam: Vec<f64>,
    mu: Vec<f64>,
    nu: SingularSpectrum,
    scale: f64,
    power_targets: Vec<f64>,
}

impl Problem {
    fn new(spec: &BodySpec, nu: &SingularSpectrum) -> Self {
        let n = spec.n();
        let scale = (spec.lam().largest() * spec.mu().largest())
            .max(nu.largest())
            .max(f64::MIN_POSITIVE);
        let power_targets = (1..=n)
            .map(|k| {
                nu.values()
                    .iter()
                    .map(|v| (v / scale).powi(2 * k as i32))
                    .sum()
            })
            .collect();
        Problem {
            n,
            lam: spec.lam().values().to_vec(),
            mu: spec.mu().values().to_vec(),
            nu: nu.clone(),
            scale,
            power_targets,
        }
    }

    fn product(&self, u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            u[(i, j)] * (self.lam[i] * self.mu[j] / self.scale)
        })
    }

    fn spectrum(&self, u: &DMatrix<Complex64>) -> Result<SingularSpectrum> {
        let x = ComplexMatrix::from_dmatrix(self.product(u))?;
        let s = singular_values_with_scale(&x, 1.0)?;
        s.scaled(self.scale)
    }

    fn residual(&self, kind: Residual, u: &DMatrix<Complex64>) -> Result<Vec<f64>> {
        match kind {
            Residual::PowerSums => {
                let x = self.product(u);
                let g = x.adjoint() * &x;
                let mut p = g.clone();
                let mut out = Vec::with_capacity(self.n);
                for k in 0..self.n {
                    if k > 0 {
                        p = &p * &g;
                    }
                    out.push(p.trace().re - self.power_targets[k]);
                }
                Ok(out)
            }
            Residual::Singular => {
                let s = self.spectrum(u)?;
                Ok(s.values()
                    .iter()
                    .zip(self.nu.values())
                    .map(|(a, b)| (a - b) / self.scale)
                    .collect())
            }
        }
    }

    fn distance(&self, u: &DMatrix<Complex64>) -> Result<(SingularSpectrum, f64)> {
        let s = self.spectrum(u)?;
        let d = s.distance(&self.nu);
        Ok((s, d))
    }

    fn run(&self, start: ComplexMatrix, budget: usize, threshold: f64) -> Result<Run> {
        let mut u = start.into_inner();
        let (mut achieved, mut residual) = self.distance(&u)?;
        let mut best = u.clone();
        let mut iterations = 0;
        for kind in [Residual::PowerSums, Residual::Singular] {
            if residual <= threshold || iterations >= budget {
                break;
            }
            let (next, used) =
                self.levenberg_marquardt(kind, best.clone(), budget - iterations, threshold)?;
            iterations += used;
            let (s, d) = self.distance(&next)?;
            if d < residual {
                residual = d;
                achieved = s;
                best = next;
            }
        }
        u.copy_from(&best);
        Ok(Run {
            unitary: u,
            achieved,
            residual,
            iterations,
        })
    }

    fn levenberg_marquardt(
        &self,
        kind: Residual,
        mut u: DMatrix<Complex64>,
        budget: usize,
        threshold: f64,
    ) -> Result<(DMatrix<Complex64>, usize)> {
        let p = self.n * self.n;
        let mut r = self.residual(kind, &u)?;
        let mut cost = norm_sq(&r);
        let mut damping = 1e-3;
        let mut since_reorth = 0;
        let mut used = 0;
        while used < budget {
            used += 1;
            let (_, d) = self.distance(&u)?;
            if d <= threshold {
                break;
            }
            let jac = self.jacobian(kind, &u, &r)?;
            // minimum-norm damped step: δ = -Jᵀ (J Jᵀ + λI)⁻¹ r
            let m = r.len();
            let jt = jac.transpose();
            let mut normal = &jac * &jt;
            let diag_scale = (0..m)
                .map(|i| normal[(i, i)])
                .fold(0.0, f64::max)
                .max(1e-300);
            for i in 0..m {
                normal[(i, i)] += damping * diag_scale;
            }
            let rhs = DVector::from_column_slice(&r);
            let Some(y) = normal.lu().solve(&rhs) else {
                damping *= 10.0;
                continue;
            };
            let delta = -(&jt * y);
            debug_assert_eq!(delta.len(), p);
            let trial = &u * cayley(self.n, delta.as_slice());
            let r_trial = self.residual(kind, &trial)?;
            let c_trial = norm_sq(&r_trial);
            if c_trial < cost {
                u = trial;
                r = r_trial;
                cost = c_trial;
                damping = (damping / 3.0).max(1e-15);
                since_reorth += 1;
                if since_reorth >= 25 {
                    u = reunitarize(u);
                    r = self.residual(kind, &u)?;
                    cost = norm_sq(&r);
                    since_reorth = 0;
                }
            } else {
                damping *= 4.0;
                if damping > 1e12 {
                    break;
                }
            }
        }
        Ok((u, used))
    }

    /// Central differences along the `n²` Hermitian generator directions.
    fn jacobian(&self, kind: Residual, u: &DMatrix<Complex64>, r: &[f64]) -> Result<DMatrix<f64>> {
        let p = self.n * self.n;
        let h = match kind {
            Residual::PowerSums => 1e-5,
            Residual::Singular => 1e-7,
        };
        let mut jac = DMatrix::zeros(r.len(), p);
        let mut theta = vec![0.0; p];
        for a in 0..p {
            theta[a] = h;
            let plus = self.residual(kind, &(u * cayley(self.n, &theta)))?;
            theta[a] = -h;
            let minus = self.residual(kind, &(u * cayley(self.n, &theta)))?;
            theta[a] = 0.0;
            for (i, (x, y)) in plus.iter().zip(&minus).enumerate() {
                jac[(i, a)] = (x - y) / (2.0 * h);
            }
        }
        Ok(jac)
    }
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Hermitian `H` from `n²` reals: diagonal first, then `(re, im)` pairs of
/// the strict upper triangle.
fn hermitian_from(n: usize, theta: &[f64]) -> DMatrix<Complex64> {
    let mut h = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for k in 0..n {
        h[(k, k)] = Complex64::new(theta[k], 0.0);
    }
    let mut idx = n;
    for i in 0..n {
        for j in i + 1..n {
            let z = Complex64::new(theta[idx], theta[idx + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            idx += 2;
        }
    }
    h
}

/// `(I + iH/2)(I - iH/2)⁻¹`, unitary for Hermitian `H`.
fn cayley(n: usize, theta: &[f64]) -> DMatrix<Complex64> {
    let half_ih = hermitian_from(n, theta) * Complex64::new(0.0, 0.5);
    let id = DMatrix::<Complex64>::identity(n, n);
    let num = &id + &half_ih;
    let den = &id - &half_ih;
    // I - iH/2 has eigenvalues 1 - iλ/2, never zero
    let inv = den.try_inverse().expect("Cayley denominator is invertible");
    num * inv
}

fn reunitarize(u: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = u.nrows();
    let (mut q, r) = u.qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}
