//! Closed-form radial functions `R(r)` and their normalization.

use crate::error::{PctError, Result};
use crate::model::{CaseParams, CaseSpec, Flag, QuantumNumbers};
use crate::pct::{point_of_z, RadialPoint};
use crate::specfun::{gauss2f1_terminating, kummer_terminating, laguerre, CompensatedSum};
use crate::verify::Grid;

use super::reference::{hulthen_checked_q, hulthen_sum, morse_s};
use super::{case_domain, closed_form_energy, power_index};

/// Trapezoid intervals used for the normalization integral.
const NORM_INTERVALS: usize = 8192;
/// Relative level below which the wavefunction counts as negligible.
const TAIL: f64 = 1e-12;

/// Finite `q` window carrying the wavefunction. A wall end coincides with a
/// finite end of the domain; the other ends are cut where `|phi|` has fallen
/// below `1e-12` of its peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QWindow {
    pub lo: f64,
    pub hi: f64,
    pub lo_wall: bool,
    pub hi_wall: bool,
}

/// Unnormalized `R(r)` from the printed closed forms, with the flagged
/// factors following the case flag.
pub(crate) fn radial_shape(case: &CaseSpec, qn: &QuantumNumbers, p: &RadialPoint) -> Result<f64> {
    let n = qn.n_r;
    let nf = f64::from(n);
    let alpha = case.mass.alpha();
    let g = case.mass.gamma().unwrap_or(0.0);
    let ln_r = p.ln_r;
    // (zeta r)^{e} exp(-x/2) L(x) with x = (zeta r)^{k}; `ln_zeta_k` is k ln zeta
    let power_form = |ln_zeta_k: f64, k: f64, e: f64, order: f64| {
        let lzr = ln_zeta_k / k + ln_r;
        let x = (k * lzr).exp();
        (e * lzr - 0.5 * x).exp() * laguerre(n, order, x)
    };
    let half = g / 2.0 + 1.0;
    let log_t = || {
        if ln_r > 0.0 {
            Ok(ln_r)
        } else {
            Err(PctError::Domain {
                what: "r",
                value: p.r,
                domain: "(1, inf)".into(),
            })
        }
    };
    Ok(match case.params {
        CaseParams::Oscillator { omega } | CaseParams::SpikedOscillator { omega, .. } => {
            let (_, lam) = power_index(case, qn)?;
            let idx = match case.params {
                CaseParams::SpikedOscillator { beta, .. } => (lam * lam + beta).sqrt(),
                _ => lam,
            };
            let ln_zk = (2.0 * alpha * omega / (g + 2.0)).ln();
            power_form(ln_zk, g + 2.0, half * idx + (g + 1.0) / 2.0, idx)
        }
        CaseParams::Coulomb { a } | CaseParams::Kratzer { a, .. } => {
            let (_, lam) = power_index(case, qn)?;
            let idx = match case.params {
                CaseParams::Kratzer { beta, .. } => (lam * lam + beta).sqrt(),
                _ => lam,
            };
            let c = a * (g + 2.0);
            let ln_zk = (4.0 * c * alpha.sqrt() / ((g + 2.0).powi(2) * (nf + idx + 0.5))).ln();
            power_form(ln_zk, half, half * idx + (g + 1.0) / 2.0, 2.0 * idx)
        }
        CaseParams::SpikedOscillatorLog { c } => {
            let t = log_t()?;
            let omega = 0.5 * (1.0 + 4.0 * alpha * c * c).sqrt();
            (-0.5 * t + (omega + 0.5) * t.ln() - 0.5 * t * t).exp() * laguerre(n, omega, t * t)
        }
        CaseParams::KratzerLog { a, beta } => {
            let t = log_t()?;
            let k = -0.5 + (0.25 + beta).sqrt();
            let x = 2.0 * a / (nf + k + 1.0) * alpha.sqrt() * t;
            (-0.5 * t + (k + 1.0) * t.ln() - 0.5 * x).exp() * laguerre(n, 2.0 * k + 1.0, x)
        }
        CaseParams::MorseLog { a } => {
            let s = morse_s(a, alpha, n)?;
            let u = (8.0 * alpha * a).sqrt() * (-ln_r).exp();
            (-(s + 0.5) * ln_r - 0.5 * u).exp() * kummer_terminating(n, 2.0 * s + 1.0, u)?
        }
        CaseParams::PoschlTeller { kappa, tau } => {
            let r = p.r;
            let l1p = r.ln_1p();
            let ln_y = ln_r - l1p;
            let tau_exp = match case.flag {
                Flag::AsPrinted => tau,
                Flag::ReDerived => tau / 2.0,
            };
            let ln_m = (alpha / 4.0).ln() - ln_r - 2.0 * l1p;
            let f = gauss2f1_terminating(n, kappa + tau + nf, kappa + 0.5, r / (1.0 + r))?;
            (0.25 * ln_m + 0.5 * kappa * ln_y - tau_exp * l1p).exp() * f
        }
        CaseParams::Hulthen => {
            let q = hulthen_checked_q(alpha, n)?;
            let r = p.r;
            let base = match case.flag {
                Flag::AsPrinted => 1.0 - r,
                Flag::ReDerived => r / (1.0 + r),
            };
            ((-q - 0.5) * r.ln_1p()).exp() * hulthen_sum(alpha, n, base)
        }
    })
}

/// `m^{-1/4} R` at `q`, unnormalized.
pub(crate) fn twin_shape(case: &CaseSpec, qn: &QuantumNumbers, q: f64) -> Result<f64> {
    let p = point_of_z(&case.mass, q)?;
    Ok(radial_shape(case, qn, &p)? * case.mass.m(p.r).powf(-0.25))
}

/// Locates the window carrying the closed-form wavefunction of a state.
///
/// Infinite ends are scanned geometrically from the finite end (or from `0`);
/// a function that has not decayed by `|q| ~ 1e7`, or before it stops being
/// representable, is reported as unnormalizable.
pub fn q_window(case: &CaseSpec, qn: &QuantumNumbers) -> Result<QWindow> {
    let (lo, hi) = case_domain(case);
    // `None` once the map or the closed form leaves the floating-point range
    let f = |q: f64| -> Result<Option<f64>> {
        let v = twin_shape(case, qn, q)?;
        Ok(v.is_finite().then_some(v.abs()))
    };
    let offsets: Vec<f64> = std::iter::successors(Some(1e-6), |d| Some(d * 1.03))
        .take_while(|d| *d < 1e7)
        .collect();
    let (lo_wall, hi_wall) = (lo.is_finite(), hi.is_finite());
    // (origin, direction) of every scanned ray
    let rays: Vec<(f64, f64)> = match (lo_wall, hi_wall) {
        (true, true) => Vec::new(),
        (true, false) => vec![(lo, 1.0)],
        (false, true) => vec![(hi, -1.0)],
        (false, false) => vec![(0.0, 1.0), (0.0, -1.0)],
    };
    let mut samples = Vec::with_capacity(rays.len());
    let mut peak = 0.0f64;
    for &(origin, dir) in &rays {
        let mut vals = Vec::with_capacity(offsets.len());
        for d in &offsets {
            match f(origin + dir * d)? {
                Some(v) => vals.push(v),
                None => break,
            }
        }
        peak = vals.iter().fold(peak, |m, v| m.max(*v));
        samples.push(vals);
    }
    let mut window = QWindow {
        lo,
        hi,
        lo_wall,
        hi_wall,
    };
    if rays.is_empty() {
        return Ok(window);
    }
    if !(peak > 0.0) {
        return Err(PctError::Unnormalizable("wavefunction vanishes identically".into()));
    }
    for (&(origin, dir), vals) in rays.iter().zip(&samples) {
        let last = vals.iter().rposition(|v| *v >= TAIL * peak).unwrap_or(0);
        if last + 1 >= vals.len() {
            return Err(PctError::Unnormalizable(format!(
                "|phi| has not decayed below {TAIL:e} of its peak by q = {}",
                origin + dir * offsets[last.min(offsets.len() - 1)]
            )));
        }
        let end = origin + dir * offsets[last + 1];
        if dir > 0.0 {
            window.hi = end;
        } else {
            window.lo = end;
        }
    }
    Ok(window)
}

/// A normalized closed-form eigenpair of a case.
#[derive(Debug, Clone)]
pub struct ClosedFormSolution {
    pub case: CaseSpec,
    pub qn: QuantumNumbers,
    pub energy: f64,
    /// Factor turning the printed shape into `R` with `int R^2 dr = 1`.
    pub normalization: f64,
    pub window: QWindow,
    grid: Grid,
}

impl ClosedFormSolution {
    pub fn solve(case: &CaseSpec, qn: &QuantumNumbers) -> Result<Self> {
        let energy = closed_form_energy(case, qn)?;
        let window = q_window(case, qn)?;
        let grid = Grid::over_window(&window, NORM_INTERVALS)?;
        let mut acc = CompensatedSum::default();
        for (q, w) in grid.quadrature(NORM_INTERVALS) {
            let v = twin_shape(case, qn, q)?;
            acc.add(w * v * v);
        }
        let integral = acc.value();
        if !(integral > 0.0 && integral.is_finite()) {
            return Err(PctError::Unnormalizable(format!("int R^2 dr = {integral}")));
        }
        Ok(Self {
            case: *case,
            qn: *qn,
            energy,
            normalization: integral.sqrt().recip(),
            window,
            grid,
        })
    }

    /// Normalized `R(r)`.
    pub fn radial(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(PctError::Domain {
                what: "r",
                value: r,
                domain: "(0, inf)".into(),
            });
        }
        self.radial_at(&RadialPoint::new(r))
    }

    pub fn radial_at(&self, p: &RadialPoint) -> Result<f64> {
        Ok(self.normalization * radial_shape(&self.case, &self.qn, p)?)
    }

    /// Normalized `phi(q) = m^{-1/4} R(r(q))`.
    pub fn phi(&self, q: f64) -> Result<f64> {
        Ok(self.normalization * twin_shape(&self.case, &self.qn, q)?)
    }

    /// Mapped grid spanning the window, used for sampling and quadrature.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Sign changes of `R` over `samples` points spread along the window.
    pub fn node_count(&self, samples: usize) -> Result<usize> {
        let vals = self
            .grid
            .sample_q(samples)
            .into_iter()
            .map(|q| self.phi(q))
            .collect::<Result<Vec<f64>>>()?;
        let peak = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut last = 0.0f64;
        let mut nodes = 0;
        for v in vals.into_iter().filter(|v| v.abs() > 1e-9 * peak) {
            if last != 0.0 && v.signum() != last.signum() {
                nodes += 1;
            }
            last = v;
        }
        Ok(nodes)
    }
}

/// Normalized closed-form `R(r)` for one state.
pub fn closed_form_wavefunction(case: &CaseSpec, qn: &QuantumNumbers, r: f64) -> Result<f64> {
    ClosedFormSolution::solve(case, qn)?.radial(r)
}
