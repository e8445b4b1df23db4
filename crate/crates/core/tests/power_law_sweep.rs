use std::collections::BTreeMap;

use pctlab::*;

fn case(id: CaseId, gamma: f64, p: &[(&str, f64)]) -> CaseSpec {
    let m: BTreeMap<String, f64> = p.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    CaseSpec::from_params(id, 1.0, Some(gamma), &m, Flag::ReDerived).unwrap()
}

#[test]
fn power_law_cases_match_the_grid() {
    let tol = Tolerances::default();
    let mut failures = Vec::new();
    for gamma in [-1.0, 0.0, 1.0, 2.0] {
        let cases = [
            case(CaseId::Oscillator, gamma, &[("omega", 1.0)]),
            case(CaseId::Coulomb, gamma, &[("A", 1.0)]),
            case(CaseId::SpikedOscillator, gamma, &[("omega", 1.0), ("beta", 0.6)]),
            case(CaseId::Kratzer, gamma, &[("A", 1.0), ("beta", 0.6)]),
        ];
        for c in &cases {
            for d in [2, 3, 5] {
                for ell in 0..=1 {
                    for n in 0..=2 {
                        let qn = QuantumNumbers::new(n, ell, d);
                        let r = verify_energy(c, &qn, &GridSettings::default(), &tol).unwrap();
                        if !(r.rel_err <= 1e-5 && r.residual_l2 <= tol.residual) {
                            failures.push(format!("{} gamma={gamma} {qn:?}: {r:?}", c.id));
                        }
                    }
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
