//! Constant-mass reference problems in the `q` variable.
//!
//! Each reference solves `-psi'' + [L(L+1)/q^2 + 2 (V(q) - eps)] psi = 0`.

use crate::error::{PctError, Result};
use crate::model::Flag;
use crate::specfun::{binomial_real, gauss2f1_terminating, kummer_terminating, laguerre};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    /// `V = lambda^4 q^2 / 2` with angular index `ang`.
    Oscillator { lambda_sq: f64, ang: f64 },
    /// `V = -A / q`.
    Coulomb { a: f64, ang: f64 },
    /// `V = lambda^4 q^2 / 2 + beta / (2 q^2)`.
    SpikedOscillator { lambda_sq: f64, beta: f64, ang: f64 },
    /// `V = -A / q + beta / (2 q^2)`.
    Kratzer { a: f64, beta: f64, ang: f64 },
    /// `V = A e^{-2 q/sqrt(alpha)} - 2A e^{-q/sqrt(alpha)}`, s-states.
    Morse { depth: f64, alpha: f64 },
    /// `V = (zeta^2/2) [tau(tau-1)/cos^2(zeta q) + kappa(kappa-1)/sin^2(zeta q)]`.
    PoschlTeller { zeta: f64, kappa: f64, tau: f64 },
    /// `V = -alpha e^{-alpha q} / (1 - e^{-alpha q})`, states indexed from 1.
    Hulthen { alpha: f64, flag: Flag },
}

/// `-1/2 + sqrt((ang + 1/2)^2 + beta)`, the index shifted by a `1/q^2` spike.
pub fn spiked_index(ang: f64, beta: f64) -> f64 {
    -0.5 + ((ang + 0.5).powi(2) + beta).sqrt()
}

/// `Q_n = (2/(n alpha) - n) / 2`.
pub fn hulthen_q(alpha: f64, n: u32) -> f64 {
    0.5 * (2.0 / (f64::from(n) * alpha) - f64::from(n))
}

impl Reference {
    /// Reference potential `V(q)` (without the angular term).
    pub fn potential(&self, q: f64) -> f64 {
        match *self {
            Self::Oscillator { lambda_sq, .. } => 0.5 * lambda_sq * lambda_sq * q * q,
            Self::Coulomb { a, .. } => -a / q,
            Self::SpikedOscillator {
                lambda_sq, beta, ..
            } => 0.5 * lambda_sq * lambda_sq * q * q + 0.5 * beta / (q * q),
            Self::Kratzer { a, beta, .. } => -a / q + 0.5 * beta / (q * q),
            Self::Morse { depth, alpha } => {
                let e = (-q / alpha.sqrt()).exp();
                depth * e * e - 2.0 * depth * e
            }
            Self::PoschlTeller { zeta, kappa, tau } => {
                let (s, c) = (zeta * q).sin_cos();
                0.5 * zeta * zeta * (tau * (tau - 1.0) / (c * c) + kappa * (kappa - 1.0) / (s * s))
            }
            Self::Hulthen { alpha, .. } => {
                let x = (-alpha * q).exp();
                -alpha * x / (-(-alpha * q).exp_m1())
            }
        }
    }

    /// Angular index carried by the reference equation.
    pub fn angular_index(&self) -> f64 {
        match *self {
            Self::Oscillator { ang, .. }
            | Self::Coulomb { ang, .. }
            | Self::SpikedOscillator { ang, .. }
            | Self::Kratzer { ang, .. } => ang,
            _ => 0.0,
        }
    }

    /// Reference eigenvalue `eps` of radial state `n`.
    pub fn energy(&self, n: u32) -> Result<f64> {
        let nf = f64::from(n);
        match *self {
            Self::Oscillator { lambda_sq, ang } => Ok(lambda_sq * (2.0 * nf + ang + 1.5)),
            Self::Coulomb { a, ang } => {
                let lam = 2.0 * a / (nf + ang + 1.0);
                Ok(-lam * lam / 8.0)
            }
            Self::SpikedOscillator {
                lambda_sq,
                beta,
                ang,
            } => Ok(lambda_sq * (2.0 * nf + spiked_index(ang, beta) + 1.5)),
            Self::Kratzer { a, beta, ang } => {
                let lam = 2.0 * a / (nf + spiked_index(ang, beta) + 1.0);
                Ok(-lam * lam / 8.0)
            }
            Self::Morse { depth, alpha } => {
                morse_s(depth, alpha, n)?;
                Ok(-depth * (1.0 - (nf + 0.5) / (2.0 * depth * alpha).sqrt()).powi(2))
            }
            Self::PoschlTeller { zeta, kappa, tau } => {
                Ok(0.5 * zeta * zeta * (kappa + tau + 2.0 * nf).powi(2))
            }
            Self::Hulthen { alpha, flag } => {
                let q = hulthen_checked_q(alpha, n)?;
                let mag = 0.5 * alpha * alpha * q * q;
                Ok(match flag {
                    Flag::AsPrinted => mag,
                    Flag::ReDerived => -mag,
                })
            }
        }
    }

    /// Unnormalized reference eigenfunction `psi_n(q)`.
    pub fn wavefunction(&self, n: u32, q: f64) -> Result<f64> {
        let nf = f64::from(n);
        match *self {
            Self::Oscillator { lambda_sq, ang } => {
                Ok(oscillator_shape(lambda_sq, ang, n, q))
            }
            Self::SpikedOscillator {
                lambda_sq,
                beta,
                ang,
            } => Ok(oscillator_shape(lambda_sq, spiked_index(ang, beta), n, q)),
            Self::Coulomb { a, ang } => Ok(coulomb_shape(a, ang, n, q)),
            Self::Kratzer { a, beta, ang } => Ok(coulomb_shape(a, spiked_index(ang, beta), n, q)),
            Self::Morse { depth, alpha } => {
                let s = morse_s(depth, alpha, n)?;
                let u = (8.0 * alpha * depth).sqrt() * (-q / alpha.sqrt()).exp();
                let f = kummer_terminating(n, 2.0 * s + 1.0, u)?;
                Ok((s * u.ln() - 0.5 * u).exp() * f)
            }
            Self::PoschlTeller { zeta, kappa, tau } => {
                let (s, c) = (zeta * q).sin_cos();
                let f = gauss2f1_terminating(n, kappa + tau + nf, kappa + 0.5, s * s)?;
                Ok(s.powf(kappa) * c.powf(tau) * f)
            }
            Self::Hulthen { alpha, .. } => {
                let qn = hulthen_checked_q(alpha, n)?;
                let one_minus = -(-alpha * q).exp_m1();
                Ok((-qn * alpha * q).exp() * hulthen_sum(alpha, n, one_minus))
            }
        }
    }
}

/// `(lambda |q|)^{L+1} exp(-lambda^2 q^2 / 2) L_n^{L+1/2}(lambda^2 q^2)`.
fn oscillator_shape(lambda_sq: f64, ang: f64, n: u32, q: f64) -> f64 {
    let t = lambda_sq * q * q;
    let lq = lambda_sq.sqrt() * q.abs();
    ((ang + 1.0) * lq.ln() - 0.5 * t).exp() * laguerre(n, ang + 0.5, t)
}

/// `q^{L+1} exp(-lambda q / 2) L_n^{2L+1}(lambda q)` with `lambda = 2A/(n+L+1)`.
fn coulomb_shape(a: f64, ang: f64, n: u32, q: f64) -> f64 {
    let lam = 2.0 * a / (f64::from(n) + ang + 1.0);
    ((ang + 1.0) * q.ln() - 0.5 * lam * q).exp() * laguerre(n, 2.0 * ang + 1.0, lam * q)
}

/// Morse decay index `s = sqrt(2 A alpha) - n - 1/2`, which must be positive.
pub(crate) fn morse_s(depth: f64, alpha: f64, n: u32) -> Result<f64> {
    let s = (2.0 * depth * alpha).sqrt() - f64::from(n) - 0.5;
    if s > 0.0 {
        Ok(s)
    } else {
        Err(PctError::NoBoundState(format!(
            "Morse state n_r = {n} needs sqrt(2 A alpha) > n_r + 1/2 (s = {s})"
        )))
    }
}

pub(crate) fn hulthen_checked_q(alpha: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(PctError::validation("Hulthen states are indexed from n_r = 1"));
    }
    let q = hulthen_q(alpha, n);
    if q > 0.0 {
        Ok(q)
    } else {
        Err(PctError::NoBoundState(format!(
            "Hulthen state n_r = {n} needs n_r^2 < 2/alpha (Q = {q})"
        )))
    }
}

/// `sum_{nu=1}^{n} (-1)^{nu-1} C(n-1, nu-1) C(n + beta_n + nu - 2, nu) y^nu`
/// with `beta_n = 1 + 2 Q_n`.
pub(crate) fn hulthen_sum(alpha: f64, n: u32, y: f64) -> f64 {
    let beta = 1.0 + 2.0 * hulthen_q(alpha, n);
    let nf = f64::from(n);
    let mut acc = 0.0;
    for nu in 1..=n {
        let sign = if nu % 2 == 1 { 1.0 } else { -1.0 };
        let c1 = binomial_real(nf - 1.0, nu - 1);
        let c2 = binomial_real(nf + beta + f64::from(nu) - 2.0, nu);
        acc += sign * c1 * c2 * y.powi(nu as i32);
    }
    acc
}
