//! Independent numerical checks of the closed forms.
//!
//! Energies are compared against the eigenvalues of the transformed operator
//! `-phi''/2 + W phi` discretized in `q`; wavefunctions are checked directly
//! against the untransformed radial equation in `r`.

mod eigen;
mod grid;

pub use eigen::{discretize, discretize_with, eigen_lowest, TridiagonalOperator};
pub use grid::{build_grid, Boundary, CoordinateMap, Grid, GridOverride};

use crate::error::{PctError, Result};
use crate::model::{degeneracy_ladder, CaseId, CaseSpec, Flag, QuantumNumbers, VerificationReport};
use crate::pct::{point_of_z, RadialPoint};
use crate::specfun::CompensatedSum;
use crate::spectra::{closed_form_energy, target_potential_at, ClosedFormSolution};

/// Pass/fail thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Bound on `|E_numeric - E_closed| / max(|E_closed|, 1)`.
    pub energy: f64,
    /// Bound on `|int R^2 dr - 1|`.
    pub norm: f64,
    /// Bound on the relative residual of the radial equation.
    pub residual: f64,
    /// Finite-difference step (in `ln r`) of the residual.
    pub residual_h: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            energy: 1e-5,
            norm: 1e-8,
            residual: 1e-6,
            residual_h: 1e-3,
        }
    }
}

/// Discretization settings for [`verify_energy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    pub n: usize,
    pub bounds: GridOverride,
    /// Combine `h` and `h/2` as `(4 E_{h/2} - E_h) / 3`.
    pub richardson: bool,
}

impl Default for GridSettings {
    fn default() -> Self {
        Self {
            n: 4000,
            bounds: GridOverride::default(),
            richardson: true,
        }
    }
}

impl GridSettings {
    pub fn with_n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }
}

/// Eigenvalue of the state's level on the grid, optionally extrapolated.
pub fn grid_energy(case: &CaseSpec, qn: &QuantumNumbers, settings: &GridSettings) -> Result<f64> {
    // the extent comes from the physical twin so both flags share one grid
    let extent = case.with_flag(Flag::ReDerived);
    let grid = build_grid(&extent, qn, settings.n, settings.bounds)?;
    let k = case.level_index(qn);
    let coarse = discretize(case, qn, &grid)?.eigenvalue(k)?;
    if !settings.richardson {
        return Ok(coarse);
    }
    let fine = discretize(case, qn, &grid.refined())?.eigenvalue(k)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Compares the closed-form energy of a state with the grid eigenvalue and
/// checks the normalized closed-form `R` against the radial equation.
///
/// Invalid input is an error; failures of the numerical stages are recorded
/// in the report.
pub fn verify_energy(
    case: &CaseSpec,
    qn: &QuantumNumbers,
    settings: &GridSettings,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let e_closed = closed_form_energy(case, qn)?;
    let mut failure = None;
    let e_numeric = match grid_energy(case, qn, settings) {
        Ok(e) => e,
        Err(e) if matches!(e, PctError::Validation(_) | PctError::Domain { .. }) => return Err(e),
        Err(e) => {
            failure = Some(e.to_string());
            f64::NAN
        }
    };
    let (residual_l2, norm_defect) = match ClosedFormSolution::solve(case, qn) {
        Ok(sol) => (
            residual_with_energy(&sol, sol.energy, tol.residual_h).unwrap_or(f64::INFINITY),
            norm_defect(&sol).unwrap_or(f64::INFINITY),
        ),
        Err(_) => (f64::INFINITY, f64::INFINITY),
    };
    let abs_err = (e_numeric - e_closed).abs();
    let rel_err = abs_err / e_closed.abs().max(1.0);
    let passed = failure.is_none()
        && rel_err <= tol.energy
        && norm_defect <= tol.norm
        && residual_l2 <= tol.residual;
    Ok(VerificationReport {
        case: case.id,
        qn: *qn,
        flag: case.id.is_flagged().then_some(case.flag),
        e_closed,
        e_numeric,
        abs_err,
        rel_err,
        residual_l2,
        norm_defect,
        grid_n: settings.n,
        passed,
        failure,
    })
}

/// Runs [`verify_energy`] under both flags of a flagged case, or once otherwise.
pub fn verify_flags(
    case: &CaseSpec,
    qn: &QuantumNumbers,
    settings: &GridSettings,
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    if case.id.is_flagged() {
        Flag::BOTH
            .iter()
            .map(|f| verify_energy(&case.with_flag(*f), qn, settings, tol))
            .collect()
    } else {
        Ok(vec![verify_energy(case, qn, settings, tol)?])
    }
}

/// Relative residual of the normalized closed form in the radial equation; see
/// [`residual_with_energy`].
pub fn residual_norm(case: &CaseSpec, qn: &QuantumNumbers, h: f64) -> Result<f64> {
    let sol = ClosedFormSolution::solve(case, qn)?;
    residual_with_energy(&sol, sol.energy, h)
}

/// Residual of the radial equation
/// `R'' - ell_d(ell_d+1) R / r^2 + (m'/m)((d-1) R/(2r) - R') - 2m (V - E) R`
/// for a given energy.
///
/// At each point the residual is divided by the summed magnitude of its five
/// terms plus `|R| / len^2`, with `len` the local length below; the measure
/// then stays scale-free near singular endpoints where the terms grow like
/// `R / r^2`. The result is the RMS of that ratio weighted by
/// `R^2 dr`. Derivatives are fourth-order central differences with local
/// step `h len`, `len = min(r, 1/sqrt(m))`, further reduced near the pole at `r = 1` of the
/// logarithmic cases. Tails where `|R|` is below `1e-6` of its peak are
/// skipped.
pub fn residual_with_energy(sol: &ClosedFormSolution, energy: f64, h: f64) -> Result<f64> {
    let case = &sol.case;
    let qn = &sol.qn;
    let grid = sol.grid();
    let samples = 2000;
    let dx = (grid.x_max - grid.x_min) / (samples + 1) as f64;
    let mut pts = Vec::with_capacity(samples);
    for i in 1..=samples {
        let x = grid.x_min + i as f64 * dx;
        let p = point_of_z(&case.mass, grid.map.q(x))?;
        let r_val = sol.radial_at(&p)?;
        let dr = grid.map.dq(x) * dx / case.mass.m(p.r).sqrt();
        pts.push((p, r_val, dr));
    }
    let peak = pts.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
    let keep = |v: f64| v.abs() >= 1e-6 * peak;
    let first = pts.iter().position(|p| keep(p.1)).unwrap_or(0);
    let last = pts.iter().rposition(|p| keep(p.1)).unwrap_or(0);
    let cent = qn.centrifugal()?;
    let d = f64::from(qn.d);
    let split = matches!(case.id, CaseId::SpikedOscillatorLog | CaseId::KratzerLog);
    let mut res2 = CompensatedSum::default();
    let mut norm2 = CompensatedSum::default();
    for (p, r_val, dr) in &pts[first..=last] {
        let r = p.r;
        let mut hl = h * r.min(case.mass.m(r).sqrt().recip());
        if split {
            hl *= p.ln_r.abs().min(1.0);
        }
        let f = |k: f64| {
            let step = k * hl;
            sol.radial_at(&RadialPoint {
                r: r + step,
                ln_r: p.ln_r + (step / r).ln_1p(),
            })
        };
        let (fm2, fm1, fp1, fp2) = (f(-2.0)?, f(-1.0)?, f(1.0)?, f(2.0)?);
        let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * hl);
        let d2 = (-fp2 + 16.0 * fp1 - 30.0 * r_val + 16.0 * fm1 - fm2) / (12.0 * hl * hl);
        let m = case.mass.m(r);
        let mp = case.mass.dm(r);
        let v = target_potential_at(case, qn, p)?;
        let terms = [
            d2,
            -cent * r_val / (r * r),
            mp / m * (d - 1.0) * r_val / (2.0 * r),
            -mp / m * d1,
            -2.0 * m * (v - energy) * r_val,
        ];
        // |R| / len^2 is the size of R'' for a function varying on the local length
        let len = hl / h;
        let scale = terms.iter().map(|t| t.abs()).sum::<f64>() + r_val.abs() / (len * len);
        if scale > 0.0 {
            let rel = terms.iter().sum::<f64>() / scale;
            res2.add(rel * rel * r_val * r_val * dr);
        }
        norm2.add(r_val * r_val * dr);
    }
    let out = (res2.value() / norm2.value()).sqrt();
    if out.is_finite() {
        Ok(out)
    } else {
        Err(PctError::Numerical("residual is not finite".into()))
    }
}

/// `|int R^2 dr - 1|` evaluated in `r` (through `t = ln r`) by
/// double-exponential quadrature, independently of the `q`-space
/// normalization.
pub fn norm_defect(sol: &ClosedFormSolution) -> Result<f64> {
    let grid = sol.grid();
    let a = point_of_z(&sol.case.mass, grid.q_min)?.ln_r;
    let b = point_of_z(&sol.case.mass, grid.q_max)?.ln_r;
    let (lo, hi) = (a.min(b), a.max(b));
    let pieces = (((hi - lo) / 0.25).ceil() as usize).max(64);
    let width = (hi - lo) / pieces as f64;
    let mut acc = CompensatedSum::default();
    let failed = std::cell::RefCell::new(None);
    for k in 0..pieces {
        let t0 = lo + k as f64 * width;
        let out = quadrature::double_exponential::integrate(
            |t| match sol.radial_at(&RadialPoint { r: t.exp(), ln_r: t }) {
                Ok(v) => v * v * t.exp(),
                Err(e) => {
                    failed.replace(Some(e));
                    0.0
                }
            },
            t0,
            t0 + width,
            1e-15,
        );
        acc.add(out.integral);
    }
    if let Some(e) = failed.into_inner() {
        return Err(e);
    }
    Ok((acc.value() - 1.0).abs())
}

/// Whether closed-form energies agree to `1e-12` absolute along the
/// interdimensional ladder `(ell, d) -> (ell - 1, d + 2) -> ...`.
pub fn check_degeneracy(case: &CaseSpec, n_r: u32, ell: u32, d: u32) -> Result<bool> {
    if !case.id.is_power_law() {
        return Err(PctError::validation(format!(
            "degeneracy ladder applies to power-law cases, not {}",
            case.id
        )));
    }
    if ell < 1 {
        return Err(PctError::validation("degeneracy ladder needs ell >= 1"));
    }
    let energies = degeneracy_ladder(n_r, ell, d)?
        .into_iter()
        .map(|(l, dd)| closed_form_energy(case, &QuantumNumbers::new(n_r, l, dd)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(energies.iter().all(|e| (e - energies[0]).abs() <= 1e-12))
}

#[cfg(test)]
mod tests;
