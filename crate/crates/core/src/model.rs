//! Domain types: quantum numbers, mass profiles, worked-case descriptors and
//! the verification report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{PctError, Result};

/// Parity label used to pick the angular index in one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = PctError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Self::Even),
            "odd" => Ok(Self::Odd),
            other => Err(PctError::validation(format!(
                "parity must be `even` or `odd`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Even => "even",
            Self::Odd => "odd",
        })
    }
}

/// Effective angular index `ell_d`.
///
/// For `d >= 2` this is `ell + (d - 3) / 2`; the half is formed from integers so
/// it is exact in binary floating point. In one dimension the index is `-1`
/// (even parity) or `0` (odd parity) and `ell` is ignored.
pub fn ell_d(ell: u32, d: u32, parity: Option<Parity>) -> Result<f64> {
    match (d, parity) {
        (0, _) => Err(PctError::validation("dimension d must be >= 1")),
        (1, Some(Parity::Even)) => Ok(-1.0),
        (1, Some(Parity::Odd)) => Ok(0.0),
        (1, None) => Err(PctError::validation("d = 1 requires an explicit parity")),
        (d, _) => Ok(f64::from(ell) + (f64::from(d) - 3.0) / 2.0),
    }
}

/// Interdimensional ladder `(ell - k, d + 2k)` for `k = 0..=ell`.
///
/// Every rung shares the same `ell_d`.
pub fn degeneracy_ladder(_n_r: u32, ell: u32, d: u32) -> Result<Vec<(u32, u32)>> {
    if d < 2 {
        return Err(PctError::validation("degeneracy ladder requires d >= 2"));
    }
    Ok((0..=ell).map(|k| (ell - k, d + 2 * k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub ell: u32,
    pub d: u32,
    pub parity: Option<Parity>,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, ell: u32, d: u32) -> Self {
        Self {
            n_r,
            ell,
            d,
            parity: None,
        }
    }

    pub fn one_dimensional(n_r: u32, parity: Parity) -> Self {
        Self {
            n_r,
            ell: 0,
            d: 1,
            parity: Some(parity),
        }
    }

    pub fn with_n_r(self, n_r: u32) -> Self {
        Self { n_r, ..self }
    }

    pub fn ell_d(&self) -> Result<f64> {
        ell_d(self.ell, self.d, self.parity)
    }

    /// `ell_d (ell_d + 1)`, the centrifugal strength.
    pub fn centrifugal(&self) -> Result<f64> {
        let l = self.ell_d()?;
        Ok(l * (l + 1.0))
    }
}

/// One of the four analytic mass families, `M(r) = m0 * m(r)` with `m0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassProfile {
    /// `m = alpha r^gamma`, `gamma != -2`.
    PowerLaw { alpha: f64, gamma: f64 },
    /// `m = alpha / r^2`.
    InverseSquare { alpha: f64 },
    /// `m = alpha / (4 r (1 + r)^2)`.
    PoschlTeller { alpha: f64 },
    /// `m = 1 / (alpha^2 (1 + r)^2)`.
    Hulthen { alpha: f64 },
}

impl MassProfile {
    pub fn power_law(alpha: f64, gamma: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        if !gamma.is_finite() {
            return Err(PctError::validation("gamma must be finite"));
        }
        if gamma == -2.0 {
            return Err(PctError::UnsupportedBranch);
        }
        Ok(Self::PowerLaw { alpha, gamma })
    }

    pub fn inverse_square(alpha: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        Ok(Self::InverseSquare { alpha })
    }

    pub fn poschl_teller(alpha: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        Ok(Self::PoschlTeller { alpha })
    }

    pub fn hulthen(alpha: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        Ok(Self::Hulthen { alpha })
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            Self::PowerLaw { alpha, .. }
            | Self::InverseSquare { alpha }
            | Self::PoschlTeller { alpha }
            | Self::Hulthen { alpha } => alpha,
        }
    }

    /// Power-law exponent, with `-2` for the inverse-square family.
    pub fn gamma(&self) -> Option<f64> {
        match *self {
            Self::PowerLaw { gamma, .. } => Some(gamma),
            Self::InverseSquare { .. } => Some(-2.0),
            _ => None,
        }
    }

    pub fn m(&self, r: f64) -> f64 {
        match *self {
            Self::PowerLaw { alpha, gamma } => alpha * r.powf(gamma),
            Self::InverseSquare { alpha } => alpha / (r * r),
            Self::PoschlTeller { alpha } => alpha / (4.0 * r * (1.0 + r).powi(2)),
            Self::Hulthen { alpha } => 1.0 / (alpha * alpha * (1.0 + r).powi(2)),
        }
    }

    pub fn dm(&self, r: f64) -> f64 {
        match *self {
            Self::PowerLaw { alpha, gamma } => alpha * gamma * r.powf(gamma - 1.0),
            Self::InverseSquare { alpha } => -2.0 * alpha / (r * r * r),
            Self::PoschlTeller { alpha } => {
                // d/dr [r (1+r)^2]^{-1} = -(1 + 3r) / (r^2 (1+r)^3)
                -alpha * (1.0 + 3.0 * r) / (4.0 * r * r * (1.0 + r).powi(3))
            }
            Self::Hulthen { alpha } => -2.0 / (alpha * alpha * (1.0 + r).powi(3)),
        }
    }

    pub fn d2m(&self, r: f64) -> f64 {
        match *self {
            Self::PowerLaw { alpha, gamma } => alpha * gamma * (gamma - 1.0) * r.powf(gamma - 2.0),
            Self::InverseSquare { alpha } => 6.0 * alpha / r.powi(4),
            Self::PoschlTeller { alpha } => {
                alpha * (1.0 + 4.0 * r + 6.0 * r * r) / (2.0 * r.powi(3) * (1.0 + r).powi(4))
            }
            Self::Hulthen { alpha } => 6.0 / (alpha * alpha * (1.0 + r).powi(4)),
        }
    }
}

/// The nine worked reference-to-target pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    Oscillator,
    Coulomb,
    SpikedOscillator,
    Kratzer,
    SpikedOscillatorLog,
    KratzerLog,
    MorseLog,
    PoschlTeller,
    Hulthen,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        Self::Oscillator,
        Self::Coulomb,
        Self::SpikedOscillator,
        Self::Kratzer,
        Self::SpikedOscillatorLog,
        Self::KratzerLog,
        Self::MorseLog,
        Self::PoschlTeller,
        Self::Hulthen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Oscillator => "ho",
            Self::Coulomb => "coulomb",
            Self::SpikedOscillator => "spiked-ho",
            Self::Kratzer => "kratzer",
            Self::SpikedOscillatorLog => "spiked-ho-gm2",
            Self::KratzerLog => "kratzer-gm2",
            Self::MorseLog => "morse-gm2",
            Self::PoschlTeller => "poschl-teller",
            Self::Hulthen => "hulthen",
        }
    }

    /// Cases whose printed target carries a discrepancy flag.
    pub fn is_flagged(self) -> bool {
        matches!(self, Self::MorseLog | Self::PoschlTeller | Self::Hulthen)
    }

    /// Power-law mass with `gamma != -2`.
    pub fn is_power_law(self) -> bool {
        matches!(
            self,
            Self::Oscillator | Self::Coulomb | Self::SpikedOscillator | Self::Kratzer
        )
    }

    /// Inverse-square (`gamma = -2`) mass.
    pub fn is_log_branch(self) -> bool {
        matches!(
            self,
            Self::SpikedOscillatorLog | Self::KratzerLog | Self::MorseLog
        )
    }

    pub fn mass_family(self) -> &'static str {
        match self {
            c if c.is_power_law() => "alpha*r^gamma",
            c if c.is_log_branch() => "alpha/r^2",
            Self::PoschlTeller => "alpha/(4r(1+r)^2)",
            _ => "1/(alpha^2(1+r)^2)",
        }
    }

    pub fn reference_name(self) -> &'static str {
        match self {
            Self::Oscillator => "harmonic oscillator",
            Self::Coulomb => "Coulomb",
            Self::SpikedOscillator | Self::SpikedOscillatorLog => "spiked harmonic oscillator",
            Self::Kratzer | Self::KratzerLog => "Kratzer",
            Self::MorseLog => "Morse",
            Self::PoschlTeller => "generalized Poschl-Teller",
            Self::Hulthen => "generalized Hulthen",
        }
    }

    /// Parameter schema as `(key, description)`; alternatives are joined by `|`.
    pub fn schema(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Self::Oscillator => &[("omega|lambda", "target frequency or reference lambda")],
            Self::Coulomb => &[("A", "reference Coulomb strength, > 0")],
            Self::SpikedOscillator => &[
                ("omega|lambda", "target frequency or reference lambda"),
                ("beta|beta_tilde", "reference spike strength or its target image, >= 0"),
            ],
            Self::Kratzer => &[
                ("A", "reference Coulomb strength, > 0"),
                ("beta|beta_tilde", "reference spike strength or its target image, >= 0"),
            ],
            Self::SpikedOscillatorLog => &[("C", "log-spike strength, C^2 = beta/alpha, >= 0")],
            Self::KratzerLog => &[("A", "Coulomb strength, > 0"), ("beta", "spike strength, >= 0")],
            Self::MorseLog => &[("A", "Morse depth (B = 2A), > 0")],
            Self::PoschlTeller => &[("kappa", "sin-wall index, > 1"), ("tau", "cos-wall index, > 1")],
            Self::Hulthen => &[],
        }
    }

    /// Whether the user supplies `gamma` for this case.
    pub fn takes_gamma(self) -> bool {
        self.is_power_law()
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = PctError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| PctError::validation(format!("unknown case `{s}`")))
    }
}

/// Which reading of a flagged printed formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    AsPrinted,
    ReDerived,
}

impl Flag {
    pub const BOTH: [Flag; 2] = [Flag::AsPrinted, Flag::ReDerived];

    pub fn name(self) -> &'static str {
        match self {
            Self::AsPrinted => "as-printed",
            Self::ReDerived => "re-derived",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flag {
    type Err = PctError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(Self::AsPrinted),
            "re-derived" => Ok(Self::ReDerived),
            other => Err(PctError::validation(format!(
                "flag must be `as-printed` or `re-derived`, got `{other}`"
            ))),
        }
    }
}

/// Case parameters after validation. Derived symbols are computed on demand in
/// [`crate::spectra`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseParams {
    Oscillator { omega: f64 },
    Coulomb { a: f64 },
    SpikedOscillator { omega: f64, beta: f64 },
    Kratzer { a: f64, beta: f64 },
    SpikedOscillatorLog { c: f64 },
    KratzerLog { a: f64, beta: f64 },
    MorseLog { a: f64 },
    PoschlTeller { kappa: f64, tau: f64 },
    Hulthen,
}

/// A reference-to-target pairing with its mass and parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseSpec {
    pub id: CaseId,
    pub mass: MassProfile,
    pub params: CaseParams,
    pub flag: Flag,
}

impl CaseSpec {
    /// Builds a case from generic `key=value` parameters, validating them
    /// against the case schema. Unknown keys are errors.
    pub fn from_params(
        id: CaseId,
        alpha: f64,
        gamma: Option<f64>,
        params: &BTreeMap<String, f64>,
        flag: Flag,
    ) -> Result<Self> {
        let mut p = ParamReader::new(id, params);
        let spec = match id {
            CaseId::Oscillator | CaseId::SpikedOscillator => {
                let gamma = require_gamma(id, gamma)?;
                let mass = MassProfile::power_law(alpha, gamma)?;
                let omega = p.omega(gamma)?;
                let params = if id == CaseId::Oscillator {
                    CaseParams::Oscillator { omega }
                } else {
                    CaseParams::SpikedOscillator {
                        omega,
                        beta: p.beta(gamma)?,
                    }
                };
                Self::assemble(id, mass, params, flag)
            }
            CaseId::Coulomb | CaseId::Kratzer => {
                let gamma = require_gamma(id, gamma)?;
                let mass = MassProfile::power_law(alpha, gamma)?;
                let a = p.required("A")?;
                let params = if id == CaseId::Coulomb {
                    CaseParams::Coulomb { a }
                } else {
                    CaseParams::Kratzer {
                        a,
                        beta: p.beta(gamma)?,
                    }
                };
                Self::assemble(id, mass, params, flag)
            }
            CaseId::SpikedOscillatorLog | CaseId::KratzerLog | CaseId::MorseLog => {
                reject_gamma(id, gamma, Some(-2.0))?;
                let mass = MassProfile::inverse_square(alpha)?;
                let params = match id {
                    CaseId::SpikedOscillatorLog => CaseParams::SpikedOscillatorLog {
                        c: p.required("C")?,
                    },
                    CaseId::KratzerLog => CaseParams::KratzerLog {
                        a: p.required("A")?,
                        beta: p.required("beta")?,
                    },
                    _ => CaseParams::MorseLog {
                        a: p.required("A")?,
                    },
                };
                Self::assemble(id, mass, params, flag)
            }
            CaseId::PoschlTeller => {
                reject_gamma(id, gamma, None)?;
                let params = CaseParams::PoschlTeller {
                    kappa: p.required("kappa")?,
                    tau: p.required("tau")?,
                };
                Self::assemble(id, MassProfile::poschl_teller(alpha)?, params, flag)
            }
            CaseId::Hulthen => {
                reject_gamma(id, gamma, None)?;
                Self::assemble(id, MassProfile::hulthen(alpha)?, CaseParams::Hulthen, flag)
            }
        }?;
        p.finish()?;
        Ok(spec)
    }

    fn assemble(id: CaseId, mass: MassProfile, params: CaseParams, flag: Flag) -> Result<Self> {
        let spec = Self {
            id,
            mass,
            params,
            flag,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks parameter ranges and mass/case compatibility.
    pub fn validate(&self) -> Result<()> {
        let gamma = self.mass.gamma();
        let compatible = match self.params {
            CaseParams::Oscillator { .. }
            | CaseParams::Coulomb { .. }
            | CaseParams::SpikedOscillator { .. }
            | CaseParams::Kratzer { .. } => matches!(self.mass, MassProfile::PowerLaw { .. }),
            CaseParams::SpikedOscillatorLog { .. }
            | CaseParams::KratzerLog { .. }
            | CaseParams::MorseLog { .. } => matches!(self.mass, MassProfile::InverseSquare { .. }),
            CaseParams::PoschlTeller { .. } => matches!(self.mass, MassProfile::PoschlTeller { .. }),
            CaseParams::Hulthen => matches!(self.mass, MassProfile::Hulthen { .. }),
        };
        if !compatible {
            return Err(PctError::validation(format!(
                "mass family {:?} is not compatible with case {}",
                self.mass, self.id
            )));
        }
        match self.params {
            CaseParams::Oscillator { omega } | CaseParams::SpikedOscillator { omega, .. } => {
                let g = gamma.unwrap_or(0.0);
                if !((g + 2.0) * omega > 0.0) {
                    return Err(PctError::validation(
                        "oscillator requires (gamma + 2) * omega > 0 (lambda^2 > 0)",
                    ));
                }
            }
            CaseParams::Coulomb { a } | CaseParams::Kratzer { a, .. } => {
                check_positive("A", a)?;
                if gamma.unwrap_or(0.0) <= -2.0 {
                    return Err(PctError::validation(
                        "Coulomb-type targets require gamma > -2 (the image of q is then positive)",
                    ));
                }
            }
            CaseParams::SpikedOscillatorLog { c } => check_non_negative("C", c)?,
            CaseParams::KratzerLog { a, beta } => {
                check_positive("A", a)?;
                check_non_negative("beta", beta)?;
            }
            CaseParams::MorseLog { a } => check_positive("A", a)?,
            CaseParams::PoschlTeller { kappa, tau } => {
                if !(kappa > 1.0 && tau > 1.0) {
                    return Err(PctError::validation(
                        "Poschl-Teller case requires kappa > 1 and tau > 1",
                    ));
                }
            }
            CaseParams::Hulthen => {}
        }
        if let CaseParams::SpikedOscillator { beta, .. } | CaseParams::Kratzer { beta, .. } =
            self.params
        {
            check_non_negative("beta", beta)?;
        }
        Ok(())
    }

    pub fn with_flag(self, flag: Flag) -> Self {
        Self { flag, ..self }
    }

    /// Canonical `key=value` listing, used for hashing and reporting.
    pub fn canonical_params(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![("alpha", self.mass.alpha())];
        if let MassProfile::PowerLaw { gamma, .. } = self.mass {
            out.push(("gamma", gamma));
        }
        match self.params {
            CaseParams::Oscillator { omega } => out.push(("omega", omega)),
            CaseParams::Coulomb { a } => out.push(("A", a)),
            CaseParams::SpikedOscillator { omega, beta } => {
                out.extend([("omega", omega), ("beta", beta)])
            }
            CaseParams::Kratzer { a, beta } | CaseParams::KratzerLog { a, beta } => {
                out.extend([("A", a), ("beta", beta)])
            }
            CaseParams::SpikedOscillatorLog { c } => out.push(("C", c)),
            CaseParams::MorseLog { a } => out.push(("A", a)),
            CaseParams::PoschlTeller { kappa, tau } => out.extend([("kappa", kappa), ("tau", tau)]),
            CaseParams::Hulthen => {}
        }
        out
    }

    /// Checks that a state is admissible for this case.
    pub fn check_state(&self, qn: &QuantumNumbers) -> Result<()> {
        let ld = qn.ell_d()?;
        if self.id == CaseId::Hulthen {
            if qn.n_r == 0 {
                return Err(PctError::validation(
                    "Hulthen states are indexed from n_r = 1",
                ));
            }
            if ld * (ld + 1.0) != 0.0 {
                return Err(PctError::validation(
                    "Hulthen target carries no centrifugal term; it needs ell_d in {0, -1}",
                ));
            }
        }
        Ok(())
    }

    /// Index of the state in its channel's ascending spectrum.
    pub fn level_index(&self, qn: &QuantumNumbers) -> usize {
        if self.id == CaseId::Hulthen {
            qn.n_r.saturating_sub(1) as usize
        } else {
            qn.n_r as usize
        }
    }

    /// Number of interior nodes of the radial function for this state.
    pub fn expected_nodes(&self, qn: &QuantumNumbers) -> usize {
        self.level_index(qn)
    }
}

fn require_gamma(id: CaseId, gamma: Option<f64>) -> Result<f64> {
    gamma.ok_or_else(|| PctError::validation(format!("case {id} requires gamma")))
}

fn reject_gamma(id: CaseId, gamma: Option<f64>, allowed: Option<f64>) -> Result<()> {
    match (gamma, allowed) {
        (None, _) => Ok(()),
        (Some(g), Some(a)) if g == a => Ok(()),
        (Some(g), _) => Err(PctError::validation(format!(
            "case {id} fixes its mass; gamma = {g} is not accepted"
        ))),
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(PctError::validation(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn check_non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(PctError::validation(format!("{name} must be finite and >= 0, got {v}")))
    }
}

struct ParamReader<'a> {
    id: CaseId,
    params: &'a BTreeMap<String, f64>,
    used: Vec<&'static str>,
}

impl<'a> ParamReader<'a> {
    fn new(id: CaseId, params: &'a BTreeMap<String, f64>) -> Self {
        Self {
            id,
            params,
            used: Vec::new(),
        }
    }

    fn get(&mut self, key: &'static str) -> Option<f64> {
        let v = self.params.get(key).copied();
        if v.is_some() {
            self.used.push(key);
        }
        v
    }

    fn required(&mut self, key: &'static str) -> Result<f64> {
        let id = self.id;
        let v = self
            .get(key)
            .ok_or_else(|| PctError::validation(format!("case {id} requires param `{key}`")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(PctError::validation(format!("param `{key}` must be finite")))
        }
    }

    fn exactly_one(&mut self, a: &'static str, b: &'static str) -> Result<(bool, f64)> {
        match (self.get(a), self.get(b)) {
            (Some(v), None) => Ok((true, v)),
            (None, Some(v)) => Ok((false, v)),
            _ => Err(PctError::validation(format!(
                "case {} requires exactly one of `{a}` or `{b}`",
                self.id
            ))),
        }
    }

    /// Target frequency; `lambda` is converted through `omega = 2 lambda^2 / (gamma + 2)`.
    fn omega(&mut self, gamma: f64) -> Result<f64> {
        let (is_omega, v) = self.exactly_one("omega", "lambda")?;
        if is_omega {
            Ok(v)
        } else {
            Ok(2.0 * v * v / (gamma + 2.0))
        }
    }

    /// Reference spike strength; `beta_tilde = beta (gamma + 2)^2 / 4`.
    fn beta(&mut self, gamma: f64) -> Result<f64> {
        let (is_beta, v) = self.exactly_one("beta", "beta_tilde")?;
        if is_beta {
            Ok(v)
        } else {
            Ok(4.0 * v / ((gamma + 2.0) * (gamma + 2.0)))
        }
    }

    fn finish(self) -> Result<()> {
        for key in self.params.keys() {
            if !self.used.iter().any(|u| u == key) {
                return Err(PctError::validation(format!(
                    "unknown param `{key}` for case {}",
                    self.id
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of comparing a closed form against the grid and the direct residual.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: CaseId,
    pub qn: QuantumNumbers,
    pub flag: Option<Flag>,
    pub e_closed: f64,
    pub e_numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub residual_l2: f64,
    pub norm_defect: f64,
    pub grid_n: usize,
    pub passed: bool,
    /// Set when some stage failed; the numeric fields are then NaN or infinite.
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn is_numerical_failure(&self) -> bool {
        self.failure.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_d_examples() {
        assert_eq!(ell_d(0, 3, None).unwrap(), 0.0);
        assert_eq!(ell_d(1, 5, None).unwrap(), 2.0);
        assert_eq!(ell_d(0, 1, Some(Parity::Even)).unwrap(), -1.0);
        assert_eq!(ell_d(0, 1, Some(Parity::Odd)).unwrap(), 0.0);
        assert_eq!(ell_d(0, 2, None).unwrap(), -0.5);
    }

    #[test]
    fn ell_d_errors() {
        assert!(matches!(ell_d(0, 1, None), Err(PctError::Validation(_))));
        assert!(matches!(ell_d(0, 0, None), Err(PctError::Validation(_))));
    }

    #[test]
    fn ell_d_shift_invariance() {
        for ell in 1..20 {
            for d in 2..20 {
                assert_eq!(
                    ell_d(ell, d, None).unwrap(),
                    ell_d(ell - 1, d + 2, None).unwrap()
                );
            }
        }
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(degeneracy_ladder(0, 2, 3).unwrap(), vec![(2, 3), (1, 5), (0, 7)]);
        assert_eq!(degeneracy_ladder(1, 0, 4).unwrap(), vec![(0, 4)]);
        assert_eq!(degeneracy_ladder(0, 1, 2).unwrap(), vec![(1, 2), (0, 4)]);
    }

    fn central_diff_check(mass: MassProfile) {
        let h = 1e-4;
        let mut r = 0.5;
        while r <= 5.0 {
            let d1 = (mass.m(r + h) - mass.m(r - h)) / (2.0 * h);
            let d2 = (mass.m(r + h) - 2.0 * mass.m(r) + mass.m(r - h)) / (h * h);
            let (a1, a2) = (mass.dm(r), mass.d2m(r));
            assert!(
                (d1 - a1).abs() <= 1e-6 * a1.abs().max(mass.m(r)),
                "{mass:?} m' at {r}: {d1} vs {a1}"
            );
            assert!(
                (d2 - a2).abs() <= 1e-6 * a2.abs().max(mass.m(r)),
                "{mass:?} m'' at {r}: {d2} vs {a2}"
            );
            r += 0.05;
        }
    }

    #[test]
    fn mass_derivatives_match_central_differences() {
        for gamma in [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0] {
            central_diff_check(MassProfile::power_law(1.3, gamma).unwrap());
        }
        central_diff_check(MassProfile::inverse_square(2.0).unwrap());
        central_diff_check(MassProfile::poschl_teller(1.5).unwrap());
        central_diff_check(MassProfile::hulthen(0.7).unwrap());
    }

    #[test]
    fn masses_positive() {
        let masses = [
            MassProfile::power_law(1.0, -3.0).unwrap(),
            MassProfile::inverse_square(1.0).unwrap(),
            MassProfile::poschl_teller(1.0).unwrap(),
            MassProfile::hulthen(1.0).unwrap(),
        ];
        for m in masses {
            for r in [1e-6, 0.1, 1.0, 10.0, 1e6] {
                assert!(m.m(r) > 0.0);
            }
        }
    }

    #[test]
    fn power_law_rejects_gamma_minus_two() {
        assert_eq!(MassProfile::power_law(1.0, -2.0), Err(PctError::UnsupportedBranch));
    }

    #[test]
    fn params_schema_enforced() {
        let mut p = BTreeMap::new();
        p.insert("omega".to_string(), 1.0);
        let ok = CaseSpec::from_params(CaseId::Oscillator, 1.0, Some(0.0), &p, Flag::ReDerived);
        assert!(ok.is_ok());
        p.insert("bogus".to_string(), 1.0);
        let err = CaseSpec::from_params(CaseId::Oscillator, 1.0, Some(0.0), &p, Flag::ReDerived);
        assert!(matches!(err, Err(PctError::Validation(_))));

        let mut p = BTreeMap::new();
        p.insert("omega".to_string(), 1.0);
        p.insert("lambda".to_string(), 1.0);
        assert!(CaseSpec::from_params(CaseId::Oscillator, 1.0, Some(0.0), &p, Flag::ReDerived).is_err());
    }

    #[test]
    fn lambda_and_beta_tilde_conversions() {
        let mut p = BTreeMap::new();
        p.insert("lambda".to_string(), 1.0);
        p.insert("beta_tilde".to_string(), 2.0);
        let s = CaseSpec::from_params(CaseId::SpikedOscillator, 1.0, Some(1.0), &p, Flag::ReDerived)
            .unwrap();
        match s.params {
            CaseParams::SpikedOscillator { omega, beta } => {
                assert!((omega - 2.0 / 3.0).abs() < 1e-15);
                assert!((beta - 8.0 / 9.0).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn case_constraints() {
        let mut p = BTreeMap::new();
        p.insert("kappa".to_string(), 1.0);
        p.insert("tau".to_string(), 2.0);
        assert!(CaseSpec::from_params(CaseId::PoschlTeller, 1.0, None, &p, Flag::ReDerived).is_err());

        let mut p = BTreeMap::new();
        p.insert("A".to_string(), 1.0);
        assert!(CaseSpec::from_params(CaseId::Coulomb, 1.0, Some(-3.0), &p, Flag::ReDerived).is_err());
        assert!(CaseSpec::from_params(CaseId::MorseLog, 1.0, Some(1.0), &p, Flag::ReDerived).is_err());
        assert!(CaseSpec::from_params(CaseId::MorseLog, 1.0, Some(-2.0), &p, Flag::ReDerived).is_ok());
    }

    #[test]
    fn case_names_round_trip() {
        for id in CaseId::ALL {
            assert_eq!(id.name().parse::<CaseId>().unwrap(), id);
        }
    }
}
