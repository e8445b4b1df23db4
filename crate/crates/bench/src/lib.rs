//! Fixtures shared by the benchmarks under `benches/`.

use std::collections::BTreeMap;

use pctlab::{CaseId, CaseSpec, Flag, QuantumNumbers};

/// A case built from `key=value` pairs; panics on invalid input.
pub fn case(id: CaseId, alpha: f64, gamma: Option<f64>, params: &[(&str, f64)]) -> CaseSpec {
    let p: BTreeMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    CaseSpec::from_params(id, alpha, gamma, &p, Flag::ReDerived).expect("valid benchmark case")
}

/// One representative state per mass family.
pub fn representative_states() -> Vec<(&'static str, CaseSpec, QuantumNumbers)> {
    let s = QuantumNumbers::new(0, 0, 3);
    vec![
        ("ho-gamma1", case(CaseId::Oscillator, 1.0, Some(1.0), &[("omega", 1.0)]), s),
        ("coulomb", case(CaseId::Coulomb, 1.0, Some(0.0), &[("A", 1.0)]), s),
        ("morse-gm2", case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]), s),
        ("poschl-teller", case(CaseId::PoschlTeller, 1.0, None, &[("kappa", 2.0), ("tau", 3.0)]), s),
        ("hulthen", case(CaseId::Hulthen, 0.5, None, &[]), s.with_n_r(1)),
    ]
}
