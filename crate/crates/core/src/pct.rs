//! The point canonical transformation `q = Z(r)`, `Z' = sqrt(m)`, and the
//! quantities it induces in the transformed one-dimensional problem.
//!
//! After `R(r) = m(r)^{1/4} phi(Z(r))` the radial equation becomes
//! `-phi''/2 + W(q) phi = E phi` with
//! `W = ell_d(ell_d+1) / (2 r^2 m) + V(r) - U_d(r)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{PctError, Result};
use crate::model::{CaseSpec, MassProfile, QuantumNumbers};
use crate::spectra;

/// A point of the radial half-line, carrying `ln r` separately so that the
/// logarithmic branch keeps full relative precision near `r = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub r: f64,
    pub ln_r: f64,
}

impl RadialPoint {
    pub fn new(r: f64) -> Self {
        Self { r, ln_r: r.ln() }
    }
}

/// The transformation attached to a mass profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PctMap {
    pub mass: MassProfile,
}

impl PctMap {
    pub fn new(mass: MassProfile) -> Self {
        Self { mass }
    }

    pub fn z(&self, r: f64) -> Result<f64> {
        z_of_r(&self.mass, r)
    }

    pub fn z_inv(&self, q: f64) -> Result<f64> {
        r_of_z(&self.mass, q)
    }

    pub fn q_domain(&self) -> (f64, f64) {
        q_domain(&self.mass)
    }
}

/// Image of `(0, inf)` under `Z`, as an open interval.
pub fn q_domain(mass: &MassProfile) -> (f64, f64) {
    match *mass {
        MassProfile::PowerLaw { gamma, .. } if gamma > -2.0 => (0.0, f64::INFINITY),
        MassProfile::PowerLaw { .. } => (f64::NEG_INFINITY, 0.0),
        MassProfile::InverseSquare { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        MassProfile::PoschlTeller { alpha } => (0.0, alpha.sqrt() * FRAC_PI_2),
        MassProfile::Hulthen { .. } => (0.0, f64::INFINITY),
    }
}

/// `q = Z(r)` with the integration constant fixed to zero.
pub fn z_of_r(mass: &MassProfile, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(PctError::Domain {
            what: "r",
            value: r,
            domain: "(0, inf)".into(),
        });
    }
    Ok(match *mass {
        MassProfile::PowerLaw { alpha, gamma } => {
            let p = gamma + 2.0;
            2.0 * alpha.sqrt() * r.powf(p / 2.0) / p
        }
        MassProfile::InverseSquare { alpha } => alpha.sqrt() * r.ln(),
        MassProfile::PoschlTeller { alpha } => alpha.sqrt() * r.sqrt().atan(),
        MassProfile::Hulthen { alpha } => r.ln_1p() / alpha,
    })
}

/// Analytic inverse of [`z_of_r`].
pub fn r_of_z(mass: &MassProfile, q: f64) -> Result<f64> {
    Ok(point_of_z(mass, q)?.r)
}

/// Inverse map returning `r` together with an accurate `ln r`.
pub fn point_of_z(mass: &MassProfile, q: f64) -> Result<RadialPoint> {
    let (lo, hi) = q_domain(mass);
    if !(q > lo && q < hi) {
        return Err(PctError::Domain {
            what: "q",
            value: q,
            domain: format!("({lo}, {hi})"),
        });
    }
    Ok(match *mass {
        MassProfile::PowerLaw { alpha, gamma } => {
            let p = gamma + 2.0;
            let base = p * q / (2.0 * alpha.sqrt());
            let ln_r = 2.0 * base.ln() / p;
            RadialPoint {
                r: base.powf(2.0 / p),
                ln_r,
            }
        }
        MassProfile::InverseSquare { alpha } => {
            let ln_r = q / alpha.sqrt();
            RadialPoint { r: ln_r.exp(), ln_r }
        }
        MassProfile::PoschlTeller { alpha } => RadialPoint::new((q / alpha.sqrt()).tan().powi(2)),
        MassProfile::Hulthen { alpha } => RadialPoint::new((alpha * q).exp_m1()),
    })
}

/// Deformation potential
/// `U_d = m''/(8 m^2) - 7 m'^2/(32 m^3) + (d-1) m' / (4 r m^2)`
/// evaluated from the analytic derivatives of the mass.
pub fn u_d(mass: &MassProfile, d: u32, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(PctError::Domain {
            what: "r",
            value: r,
            domain: "(0, inf)".into(),
        });
    }
    if d == 0 {
        return Err(PctError::validation("dimension d must be >= 1"));
    }
    let m = mass.m(r);
    // in terms of m'/m and m''/m so that no power of m beyond the first appears
    let a = mass.dm(r) / m;
    let b = mass.d2m(r) / m;
    let dm1 = f64::from(d) - 1.0;
    Ok((b / 8.0 - 7.0 * a * a / 32.0 + dm1 * a / (4.0 * r)) / m)
}

/// Power-law closed form `U_d = -gamma (3 gamma + 12 - 8 d) / (32 r^2 m)`.
///
/// Kept as an independent cross-check of [`u_d`].
pub fn u_d_power_law(alpha: f64, gamma: f64, d: u32, r: f64) -> f64 {
    let m = alpha * r.powf(gamma);
    -gamma * (3.0 * gamma + 12.0 - 8.0 * f64::from(d)) / (32.0 * r * r * m)
}

/// Constant left over by the inverse-square mass once the centrifugal term is
/// folded in: `-[(ell_d + 1/2)^2 + d - 1] / (2 alpha)`.
pub fn u_tilde_gm2(alpha: f64, ell_d: f64, d: u32) -> f64 {
    let s = ell_d + 0.5;
    -(s * s + f64::from(d) - 1.0) / (2.0 * alpha)
}

/// Effective angular index of a power-law mass, returned as
/// `(lambda_tilde, lambda)` with `lambda = lambda_tilde + 1/2`.
pub fn lambda_eff(gamma: f64, ell_d: f64, d: u32) -> Result<(f64, f64)> {
    if gamma == -2.0 {
        return Err(PctError::UnsupportedBranch);
    }
    let radicand =
        4.0 * ell_d * (ell_d + 1.0) + (gamma - 1.0).powi(2) + 2.0 * gamma * (3.0 - f64::from(d));
    if radicand < 0.0 {
        return Err(PctError::ComplexIndex { radicand });
    }
    let lambda = radicand.sqrt() / (gamma + 2.0).abs();
    Ok((lambda - 0.5, lambda))
}

/// Full effective potential of the transformed problem at `q`.
pub fn effective_potential_q(case: &CaseSpec, qn: &QuantumNumbers, q: f64) -> Result<f64> {
    let (lo, hi) = spectra::case_domain(case);
    if !(q > lo && q < hi) {
        return Err(PctError::Domain {
            what: "q",
            value: q,
            domain: format!("({lo}, {hi})"),
        });
    }
    let p = point_of_z(&case.mass, q)?;
    let cent = qn.centrifugal()? / (2.0 * p.r * p.r * case.mass.m(p.r));
    let v = spectra::target_potential_at(case, qn, &p)?;
    Ok(cent + v - u_d(&case.mass, qn.d, p.r)?)
}
