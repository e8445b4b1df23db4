//! Constants of the Poschl-Teller target, as printed and re-derived.

use crate::error::Result;
use crate::model::{CaseParams, CaseSpec, Flag, MassProfile, QuantumNumbers};
use crate::pct::u_d;

/// `U_d = -eta1 r - eta2 / r + eta3` and the target coefficients `V1`, `V2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtConstants {
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub v1: f64,
    pub v2: f64,
}

/// Printed and re-derived constants side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtComparison {
    pub printed: PtConstants,
    pub rederived: PtConstants,
    /// Energy shift `E - eps` recovered from the fit.
    pub fitted_shift: f64,
}

impl PtComparison {
    /// Largest absolute difference between the two eta triples.
    pub fn eta_mismatch(&self) -> f64 {
        let (p, r) = (&self.printed, &self.rederived);
        [p.eta1 - r.eta1, p.eta2 - r.eta2, p.eta3 - r.eta3]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Largest absolute difference between the potential coefficients.
    pub fn v_mismatch(&self) -> f64 {
        let (p, r) = (&self.printed, &self.rederived);
        (p.v1 - r.v1).abs().max((p.v2 - r.v2).abs())
    }
}

impl PtConstants {
    /// Constants exactly as printed: `V1` carries `kappa`, `V2` carries `tau`.
    pub fn printed(alpha: f64, d: u32, kappa: f64, tau: f64, ell_d: f64) -> Self {
        let d = f64::from(d);
        let eta1 = (24.0 * d - 9.0) / (8.0 * alpha);
        let eta2 = (8.0 * d - 9.0) / (8.0 * alpha);
        let eta3 = -(32.0 * d - 22.0) / (8.0 * alpha);
        let c = 4.0 * ell_d * (ell_d + 1.0);
        Self {
            eta1,
            eta2,
            eta3,
            v1: (kappa * (kappa - 1.0) - (2.0 * alpha * eta1 + c)) / (2.0 * alpha),
            v2: (tau * (tau - 1.0) - (2.0 * alpha * eta2 + c)) / (2.0 * alpha),
        }
    }

    /// Constants obtained by substituting `sin^2(zeta q) = r/(1+r)` into the
    /// reference potential: the `r` term collects `tau`, the `1/r` term `kappa`.
    pub fn rederived(alpha: f64, d: u32, kappa: f64, tau: f64, ell_d: f64) -> Self {
        let p = Self::printed(alpha, d, kappa, tau, ell_d);
        let c = 4.0 * ell_d * (ell_d + 1.0);
        Self {
            v1: (tau * (tau - 1.0) - (2.0 * alpha * p.eta1 + c)) / (2.0 * alpha),
            v2: (kappa * (kappa - 1.0) - (2.0 * alpha * p.eta2 + c)) / (2.0 * alpha),
            ..p
        }
    }

    /// Constants for a case, following its flag.
    pub fn for_case(case: &CaseSpec, qn: &QuantumNumbers) -> Result<Self> {
        let (kappa, tau) = match case.params {
            CaseParams::PoschlTeller { kappa, tau } => (kappa, tau),
            _ => (0.0, 0.0),
        };
        let ld = qn.ell_d()?;
        let alpha = case.mass.alpha();
        Ok(match case.flag {
            Flag::AsPrinted => Self::printed(alpha, qn.d, kappa, tau, ld),
            Flag::ReDerived => Self::rederived(alpha, qn.d, kappa, tau, ld),
        })
    }

    /// Fits `U_d` and the mapped reference potential at three radii and
    /// compares the result against the printed constants.
    pub fn compare(alpha: f64, d: u32, kappa: f64, tau: f64, ell_d: f64) -> Result<PtComparison> {
        let mass = MassProfile::poschl_teller(alpha)?;
        let radii = [0.5, 1.0, 2.0];
        let mut u = [0.0; 3];
        let mut g = [0.0; 3];
        for (i, &r) in radii.iter().enumerate() {
            u[i] = u_d(&mass, d, r)?;
            let s2 = r / (1.0 + r);
            let v_ref = (tau * (tau - 1.0) / (1.0 - s2) + kappa * (kappa - 1.0) / s2) / (2.0 * alpha);
            let cent = ell_d * (ell_d + 1.0) / (2.0 * r * r * mass.m(r));
            // V - (E - eps) = V_ref - cent + U_d
            g[i] = v_ref - cent + u[i];
        }
        let [cu_r, cu_inv, cu_1] = fit_linear_inverse(&radii, &u);
        let [a, b, c] = fit_linear_inverse(&radii, &g);
        let rederived = PtConstants {
            eta1: -cu_r,
            eta2: -cu_inv,
            eta3: cu_1,
            v1: a,
            v2: b,
        };
        Ok(PtComparison {
            printed: Self::printed(alpha, d, kappa, tau, ell_d),
            rederived,
            fitted_shift: a + b - c,
        })
    }
}

/// Solves `y = c0 r + c1 / r + c2` through three points by Cramer's rule.
fn fit_linear_inverse(r: &[f64; 3], y: &[f64; 3]) -> [f64; 3] {
    let rows: Vec<[f64; 3]> = r.iter().map(|&x| [x, 1.0 / x, 1.0]).collect();
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let base = [rows[0], rows[1], rows[2]];
    let det = det3(base);
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut m = base;
        for (row, yi) in y.iter().enumerate() {
            m[row][col] = *yi;
        }
        *slot = det3(m) / det;
    }
    out
}
