//! Closed-form target potentials, energies and radial functions for the nine
//! worked cases.

mod poschl_teller;
mod radial;
pub mod reference;

pub use poschl_teller::{PtConstants, PtComparison};
pub use radial::{closed_form_wavefunction, q_window, ClosedFormSolution, QWindow};
pub use reference::Reference;

use crate::error::{PctError, Result};
use crate::model::{CaseId, CaseParams, CaseSpec, Flag, MassProfile, QuantumNumbers};
use crate::pct::{lambda_eff, u_tilde_gm2, RadialPoint};

/// Open `q` interval on which the transformed problem is posed.
///
/// The logarithmic spiked and Kratzer targets have a pole at `r = 1`; they are
/// posed on `r > 1` only, which is the half-line `q > 0`.
pub fn case_domain(case: &CaseSpec) -> (f64, f64) {
    match case.id {
        CaseId::SpikedOscillatorLog | CaseId::KratzerLog => (0.0, f64::INFINITY),
        _ => crate::pct::q_domain(&case.mass),
    }
}

/// `(lambda_tilde, lambda)` of a power-law case.
pub(crate) fn power_index(case: &CaseSpec, qn: &QuantumNumbers) -> Result<(f64, f64)> {
    let gamma = case.mass.gamma().ok_or(PctError::UnsupportedBranch)?;
    lambda_eff(gamma, qn.ell_d()?, qn.d)
}

fn gamma_of(case: &CaseSpec) -> f64 {
    case.mass.gamma().unwrap_or(0.0)
}

/// The reference problem a case is mapped from, with its induced angular index.
pub fn reference(case: &CaseSpec, qn: &QuantumNumbers) -> Result<Reference> {
    case.validate()?;
    case.check_state(qn)?;
    let alpha = case.mass.alpha();
    let g2 = gamma_of(case) + 2.0;
    Ok(match case.params {
        CaseParams::Oscillator { omega } => Reference::Oscillator {
            lambda_sq: g2 * omega / 2.0,
            ang: power_index(case, qn)?.0,
        },
        CaseParams::Coulomb { a } => Reference::Coulomb {
            a,
            ang: power_index(case, qn)?.0,
        },
        CaseParams::SpikedOscillator { omega, beta } => Reference::SpikedOscillator {
            lambda_sq: g2 * omega / 2.0,
            beta,
            ang: power_index(case, qn)?.0,
        },
        CaseParams::Kratzer { a, beta } => Reference::Kratzer {
            a,
            beta,
            ang: power_index(case, qn)?.0,
        },
        CaseParams::SpikedOscillatorLog { c } => Reference::SpikedOscillator {
            lambda_sq: 1.0 / alpha,
            beta: alpha * c * c,
            ang: 0.0,
        },
        CaseParams::KratzerLog { a, beta } => Reference::Kratzer { a, beta, ang: 0.0 },
        CaseParams::MorseLog { a } => Reference::Morse { depth: a, alpha },
        CaseParams::PoschlTeller { kappa, tau } => Reference::PoschlTeller {
            zeta: 1.0 / alpha.sqrt(),
            kappa,
            tau,
        },
        CaseParams::Hulthen => Reference::Hulthen {
            alpha,
            flag: case.flag,
        },
    })
}

/// Reference eigenvalue `eps` for the state.
pub fn reference_energy(case: &CaseSpec, qn: &QuantumNumbers) -> Result<f64> {
    reference(case, qn)?.energy(qn.n_r)
}

/// `E - eps`: zero for power-law masses, `-U~_d` for the inverse-square mass,
/// `-(eta1 + eta2 + eta3)` for Poschl-Teller and `B` for Hulthen.
pub fn energy_shift(case: &CaseSpec, qn: &QuantumNumbers) -> Result<f64> {
    let alpha = case.mass.alpha();
    let d = f64::from(qn.d);
    Ok(match case.id {
        id if id.is_power_law() => 0.0,
        id if id.is_log_branch() => -u_tilde_gm2(alpha, qn.ell_d()?, qn.d),
        CaseId::PoschlTeller => {
            let k = PtConstants::printed(alpha, qn.d, 0.0, 0.0, 0.0);
            -(k.eta1 + k.eta2 + k.eta3)
        }
        _ => alpha * alpha * (4.0 * d - 3.0) / 8.0,
    })
}

/// Target eigenvalue from the printed closed forms.
pub fn closed_form_energy(case: &CaseSpec, qn: &QuantumNumbers) -> Result<f64> {
    case.validate()?;
    case.check_state(qn)?;
    let n = f64::from(qn.n_r);
    let alpha = case.mass.alpha();
    let g2 = gamma_of(case) + 2.0;
    let log_const = |ld: f64| ((ld + 0.5).powi(2) + f64::from(qn.d) - 1.0) / (2.0 * alpha);
    match case.params {
        CaseParams::Oscillator { omega } => {
            let (_, lam) = power_index(case, qn)?;
            Ok(g2 * omega / 2.0 * (2.0 * n + lam + 1.0))
        }
        CaseParams::SpikedOscillator { omega, beta } => {
            let (_, lam) = power_index(case, qn)?;
            let delta = (lam * lam + beta).sqrt();
            Ok(g2 * omega / 2.0 * (2.0 * n + delta + 1.0))
        }
        CaseParams::Coulomb { a } => {
            let (_, lam) = power_index(case, qn)?;
            let c = a * g2;
            Ok(-(c * c / 2.0) / (g2 * g2) / (n + lam + 0.5).powi(2))
        }
        CaseParams::Kratzer { a, beta } => {
            let (_, lam) = power_index(case, qn)?;
            let c = a * g2;
            let delta = (lam * lam + beta).sqrt();
            Ok(-(c * c / 2.0) / (g2 * g2) / (n + delta + 0.5).powi(2))
        }
        CaseParams::SpikedOscillatorLog { c } => {
            let ld = qn.ell_d()?;
            let omega = 0.5 * (1.0 + 4.0 * alpha * c * c).sqrt();
            Ok((2.0 * n + omega + ((ld + 0.5).powi(2) + f64::from(qn.d) + 1.0) / 2.0) / alpha)
        }
        CaseParams::KratzerLog { a, beta } => {
            let k = -0.5 + (0.25 + beta).sqrt();
            let lt = 2.0 * a / (n + k + 1.0);
            Ok(log_const(qn.ell_d()?) - lt * lt / 8.0)
        }
        CaseParams::MorseLog { a } => {
            reference::morse_s(a, alpha, qn.n_r)?;
            let t = 1.0 - (n + 0.5) / (2.0 * a * alpha).sqrt();
            Ok(log_const(qn.ell_d()?) - a * t * t)
        }
        CaseParams::PoschlTeller { kappa, tau } => {
            let k = PtConstants::printed(alpha, qn.d, kappa, tau, qn.ell_d()?);
            Ok((kappa + tau + 2.0 * n).powi(2) / (2.0 * alpha) - (k.eta1 + k.eta2 + k.eta3))
        }
        CaseParams::Hulthen => {
            let q = reference::hulthen_checked_q(alpha, qn.n_r)?;
            let eps = alpha * alpha * q * q / 2.0;
            let eps = match case.flag {
                Flag::AsPrinted => eps,
                Flag::ReDerived => -eps,
            };
            Ok(eps + energy_shift(case, qn)?)
        }
    }
}

/// Target potential `V(r)`.
pub fn target_potential(case: &CaseSpec, qn: &QuantumNumbers, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(PctError::Domain {
            what: "r",
            value: r,
            domain: "(0, inf)".into(),
        });
    }
    target_potential_at(case, qn, &RadialPoint::new(r))
}

/// [`target_potential`] at a point whose `ln r` is known exactly.
pub fn target_potential_at(case: &CaseSpec, qn: &QuantumNumbers, p: &RadialPoint) -> Result<f64> {
    let alpha = case.mass.alpha();
    let g = gamma_of(case);
    let r = p.r;
    let osc = |omega: f64| omega * omega * alpha * r.powf(g + 2.0) / 2.0;
    let coul = |a: f64| -a * (g + 2.0) / (2.0 * alpha.sqrt()) * r.powf(-1.0 - g / 2.0);
    let spike = |beta: f64| {
        let bt = beta * (g + 2.0).powi(2) / 4.0;
        bt / (2.0 * alpha) * r.powf(-g - 2.0)
    };
    let pole = || PctError::Pole { r };
    Ok(match case.params {
        CaseParams::Oscillator { omega } => osc(omega),
        CaseParams::Coulomb { a } => coul(a),
        CaseParams::SpikedOscillator { omega, beta } => osc(omega) + spike(beta),
        CaseParams::Kratzer { a, beta } => coul(a) + spike(beta),
        CaseParams::SpikedOscillatorLog { c } => {
            let t = p.ln_r;
            if t == 0.0 {
                if c != 0.0 {
                    return Err(pole());
                }
                0.0
            } else {
                t * t / (2.0 * alpha) + c * c / (2.0 * t * t)
            }
        }
        CaseParams::KratzerLog { a, beta } => {
            let t = p.ln_r;
            if t == 0.0 {
                return Err(pole());
            }
            -a / (alpha.sqrt() * t) + beta / (2.0 * alpha * t * t)
        }
        CaseParams::MorseLog { a } => {
            let v = a * (1.0 / (r * r) - 2.0 / r);
            match case.flag {
                Flag::AsPrinted => -v,
                Flag::ReDerived => v,
            }
        }
        CaseParams::PoschlTeller { .. } => {
            let k = PtConstants::for_case(case, qn)?;
            match case.flag {
                Flag::AsPrinted => k.v1 * (1.0 + r * r) + k.v2 * (1.0 + 1.0 / (r * r)),
                Flag::ReDerived => k.v1 * (1.0 + r) + k.v2 * (1.0 + 1.0 / r),
            }
        }
        CaseParams::Hulthen => {
            let d = f64::from(qn.d);
            -alpha * (alpha * (d - 1.0) / 2.0 + 1.0) / r
        }
    })
}

/// Checks the reduction of the spiked oscillator to the `gamma = -3`,
/// one-dimensional spectrum `E_n = sqrt(2A) (2n + 3)`, `n = 0..=5`, along
/// three routes: the spiked reference with `beta = 15/4` and `L = 0` or `-1`,
/// the oscillator target with `gamma = -3`, and the spiked target with
/// `beta = 0`, each for both parities.
pub fn spiked_reduction_check(a: f64) -> Result<bool> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(PctError::validation("A must be finite and > 0"));
    }
    let lambda_sq = (2.0 * a).sqrt();
    // lambda^2 = (gamma + 2) omega / 2 with gamma = -3
    let omega = -2.0 * lambda_sq;
    let mass = MassProfile::power_law(1.0, -3.0)?;
    let ho = CaseSpec {
        id: CaseId::Oscillator,
        mass,
        params: CaseParams::Oscillator { omega },
        flag: Flag::ReDerived,
    };
    let spiked = CaseSpec {
        id: CaseId::SpikedOscillator,
        mass,
        params: CaseParams::SpikedOscillator { omega, beta: 0.0 },
        flag: Flag::ReDerived,
    };
    let mut ok = true;
    for n in 0..=5u32 {
        let want = lambda_sq * (2.0 * f64::from(n) + 3.0);
        for parity in [crate::model::Parity::Even, crate::model::Parity::Odd] {
            let qn = QuantumNumbers::one_dimensional(n, parity);
            let ang = qn.ell_d()?;
            let reference = Reference::SpikedOscillator {
                lambda_sq,
                beta: 15.0 / 4.0,
                ang,
            };
            let routes = [
                reference.energy(n)?,
                closed_form_energy(&ho, &qn)?,
                closed_form_energy(&spiked, &qn)?,
            ];
            ok &= routes.iter().all(|e| (e - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests;
