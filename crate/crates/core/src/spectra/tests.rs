use std::collections::BTreeMap;

use super::*;
use crate::model::Parity;
use crate::pct::z_of_r;

fn case(id: CaseId, alpha: f64, gamma: Option<f64>, p: &[(&str, f64)]) -> CaseSpec {
    let m: BTreeMap<String, f64> = p.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    CaseSpec::from_params(id, alpha, gamma, &m, Flag::ReDerived).unwrap()
}

fn ho(gamma: f64, omega: f64) -> CaseSpec {
    case(CaseId::Oscillator, 1.0, Some(gamma), &[("omega", omega)])
}

fn coulomb(gamma: f64, a: f64) -> CaseSpec {
    case(CaseId::Coulomb, 1.0, Some(gamma), &[("A", a)])
}

/// A ground state of every case, with the re-derived flag.
fn ground_states() -> Vec<(CaseSpec, QuantumNumbers)> {
    let s = QuantumNumbers::new(0, 0, 3);
    vec![
        (ho(0.0, 1.0), s),
        (coulomb(1.0, 1.0), s),
        (case(CaseId::SpikedOscillator, 1.0, Some(1.0), &[("omega", 1.0), ("beta", 0.7)]), s),
        (case(CaseId::Kratzer, 1.0, Some(-1.0), &[("A", 1.0), ("beta", 0.7)]), s),
        (case(CaseId::SpikedOscillatorLog, 1.0, None, &[("C", 1.0)]), s),
        (case(CaseId::KratzerLog, 1.0, None, &[("A", 1.0), ("beta", 0.5)]), s),
        (case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]), s),
        (case(CaseId::PoschlTeller, 1.0, None, &[("kappa", 2.0), ("tau", 3.0)]), s),
        (case(CaseId::Hulthen, 0.5, None, &[]), s.with_n_r(1)),
    ]
}

#[test]
fn target_potential_examples() {
    let s = QuantumNumbers::new(0, 0, 3);
    assert!((target_potential(&ho(0.0, 1.0), &s, 2.0).unwrap() - 2.0).abs() < 1e-14);
    assert!((target_potential(&coulomb(0.0, 1.0), &s, 4.0).unwrap() + 0.25).abs() < 1e-14);
    let spiked = case(CaseId::SpikedOscillator, 1.0, Some(1.0), &[("omega", 1.0), ("beta_tilde", 2.0)]);
    assert!((target_potential(&spiked, &s, 1.0).unwrap() - 1.5).abs() < 1e-14);
    assert!(target_potential(&ho(0.0, 1.0), &s, 0.0).is_err());
}

#[test]
fn pole_at_unit_radius() {
    let s = QuantumNumbers::new(0, 0, 3);
    let spiked = case(CaseId::SpikedOscillatorLog, 1.0, None, &[("C", 1.0)]);
    assert!(matches!(target_potential(&spiked, &s, 1.0), Err(PctError::Pole { .. })));
    let kratzer = case(CaseId::KratzerLog, 1.0, None, &[("A", 1.0), ("beta", 0.5)]);
    assert!(matches!(target_potential(&kratzer, &s, 1.0), Err(PctError::Pole { .. })));
    let free = case(CaseId::SpikedOscillatorLog, 1.0, None, &[("C", 0.0)]);
    assert_eq!(target_potential(&free, &s, 1.0).unwrap(), 0.0);
}

#[test]
fn closed_form_energy_examples() {
    let s = QuantumNumbers::new(0, 0, 3);
    let e = |c: &CaseSpec, q: &QuantumNumbers| closed_form_energy(c, q).unwrap();
    assert!((e(&ho(0.0, 1.0), &s) - 1.5).abs() < 1e-14);
    assert!((e(&coulomb(0.0, 1.0), &s) + 0.5).abs() < 1e-14);
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    assert!(e(&morse, &s).abs() < 1e-14);
    let spiked = case(CaseId::SpikedOscillatorLog, 1.0, None, &[("C", 0.0)]);
    assert!((e(&spiked, &s) - 2.625).abs() < 1e-14);
    assert!((e(&ho(2.0, 1.0), &QuantumNumbers::new(0, 0, 5)) - 2.5).abs() < 1e-14);
}

#[test]
fn unbound_states_are_errors() {
    let s = QuantumNumbers::new(2, 0, 3);
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    assert!(matches!(closed_form_energy(&morse, &s), Err(PctError::NoBoundState(_))));
    let hulthen = case(CaseId::Hulthen, 0.5, None, &[]);
    assert!(matches!(closed_form_energy(&hulthen, &s), Err(PctError::NoBoundState(_))));
    assert!(closed_form_energy(&hulthen, &s.with_n_r(0)).is_err());
    assert!(closed_form_energy(&hulthen, &QuantumNumbers::new(1, 1, 3)).is_err());
}

#[test]
fn energy_is_reference_plus_shift() {
    let mut checked = 0;
    for (c, s) in ground_states() {
        for n in 0..3 {
            let qn = s.with_n_r(s.n_r + n);
            for d in [2, 3, 5] {
                let qn = QuantumNumbers { d, ..qn };
                let Ok(e) = closed_form_energy(&c, &qn) else {
                    continue;
                };
                let want = reference_energy(&c, &qn).unwrap() + energy_shift(&c, &qn).unwrap();
                assert!((e - want).abs() <= 1e-12 * e.abs().max(1.0), "{} {qn:?}: {e} vs {want}", c.id);
                checked += 1;
            }
        }
    }
    assert!(checked > 60);
}

#[test]
fn reference_examples() {
    let r = Reference::SpikedOscillator {
        lambda_sq: 1.0,
        beta: 0.0,
        ang: 0.0,
    };
    assert!((r.energy(0).unwrap() - 1.5).abs() < 1e-14);
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    let s = QuantumNumbers::new(0, 0, 3);
    assert!((reference_energy(&morse, &s).unwrap() + 1.125).abs() < 1e-14);
    let hulthen = case(CaseId::Hulthen, 0.5, None, &[]);
    let s1 = s.with_n_r(1);
    assert!((reference_energy(&hulthen, &s1).unwrap() + 0.28125).abs() < 1e-14);
    let printed = hulthen.with_flag(Flag::AsPrinted);
    assert!((reference_energy(&printed, &s1).unwrap() - 0.28125).abs() < 1e-14);
}

#[test]
fn vanishing_spike_reduces_to_plain_case() {
    for gamma in [-1.0, 0.0, 1.0, 2.0] {
        for (ell, d) in [(0, 2), (0, 3), (1, 3), (2, 5)] {
            for n in 0..4 {
                let qn = QuantumNumbers::new(n, ell, d);
                let spiked = case(CaseId::SpikedOscillator, 1.3, Some(gamma), &[("omega", 0.8), ("beta", 0.0)]);
                let plain = case(CaseId::Oscillator, 1.3, Some(gamma), &[("omega", 0.8)]);
                let (a, b) = (closed_form_energy(&spiked, &qn).unwrap(), closed_form_energy(&plain, &qn).unwrap());
                assert!((a - b).abs() <= 1e-12, "gamma={gamma} {qn:?}");
                let kratzer = case(CaseId::Kratzer, 1.3, Some(gamma), &[("A", 0.9), ("beta", 0.0)]);
                let plain = case(CaseId::Coulomb, 1.3, Some(gamma), &[("A", 0.9)]);
                let (a, b) = (closed_form_energy(&kratzer, &qn).unwrap(), closed_form_energy(&plain, &qn).unwrap());
                assert!((a - b).abs() <= 1e-12, "gamma={gamma} {qn:?}");
            }
        }
    }
}

#[test]
fn constant_mass_textbook_spectra() {
    for d in [2, 3, 5] {
        for ell in 0..=2 {
            for n in 0..=3 {
                let qn = QuantumNumbers::new(n, ell, d);
                let ld = qn.ell_d().unwrap();
                let nf = f64::from(n);
                let omega = 1.7;
                let e = closed_form_energy(&ho(0.0, omega), &qn).unwrap();
                assert!((e - omega * (2.0 * nf + ld + 1.5)).abs() < 1e-12);
                let a = 0.6;
                let e = closed_form_energy(&coulomb(0.0, a), &qn).unwrap();
                assert!((e + a * a / (2.0 * (nf + ld + 1.0).powi(2))).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn one_dimensional_parities_agree() {
    for n in 0..4 {
        let even = QuantumNumbers::one_dimensional(n, Parity::Even);
        let odd = QuantumNumbers::one_dimensional(n, Parity::Odd);
        for c in [ho(1.0, 1.0), coulomb(2.0, 1.0)] {
            assert_eq!(closed_form_energy(&c, &even).unwrap(), closed_form_energy(&c, &odd).unwrap());
        }
    }
}

#[test]
fn spiked_reduction_examples() {
    for a in [0.125, 0.5, 2.0] {
        assert!(spiked_reduction_check(a).unwrap(), "A={a}");
    }
    assert!(spiked_reduction_check(0.0).is_err());
    let lambda_sq = (2.0f64 * 0.5).sqrt();
    let r = Reference::SpikedOscillator {
        lambda_sq,
        beta: 3.75,
        ang: 0.0,
    };
    assert!((r.energy(0).unwrap() - 3.0).abs() < 1e-12);
    let r = Reference::SpikedOscillator {
        lambda_sq: 2.0,
        beta: 3.75,
        ang: -1.0,
    };
    assert!((r.energy(1).unwrap() - 10.0).abs() < 1e-12);
}

#[test]
fn oscillator_ground_state_shape() {
    let c = ho(0.0, 1.0);
    let qn = QuantumNumbers::new(0, 0, 3);
    let sol = ClosedFormSolution::solve(&c, &qn).unwrap();
    // int_0^inf r^2 exp(-r^2) dr = sqrt(pi) / 4
    let norm = (4.0 / std::f64::consts::PI.sqrt()).sqrt();
    for r in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let want = norm * r * (-r * r / 2.0f64).exp();
        assert!((sol.radial(r).unwrap() - want).abs() < 1e-10 * norm, "r={r}");
    }
}

#[test]
fn hulthen_single_term_value() {
    // n_r = 1 at alpha = 0.5: Q = 3/2 and the sum is the single term y
    let c = case(CaseId::Hulthen, 0.5, None, &[]);
    let qn = QuantumNumbers::new(1, 0, 3);
    // R = N r (1 + r)^{-3}, int r^2 (1 + r)^{-6} dr = B(3, 3) = 1/30
    let r = closed_form_wavefunction(&c, &qn, 0.5).unwrap();
    assert!((r - 30.0f64.sqrt() * 0.5 / 3.375).abs() < 1e-10, "{r}");
    // R = N (1 - r) (1 + r)^{-2}, int (1 - r)^2 (1 + r)^{-4} dr = 1/3
    let r = closed_form_wavefunction(&c.with_flag(Flag::AsPrinted), &qn, 0.5).unwrap();
    assert!((r - 3.0f64.sqrt() * 0.5 / 2.25).abs() < 1e-10, "{r}");
}

#[test]
fn map_identity_on_ground_states() {
    for (c, qn) in ground_states() {
        let sol = ClosedFormSolution::solve(&c, &qn).unwrap();
        let reference = reference(&c, &qn).unwrap();
        let qs = sol.grid().sample_q(200);
        let phi: Vec<f64> = qs.iter().map(|q| sol.phi(*q).unwrap()).collect();
        let refs: Vec<f64> = qs.iter().map(|q| reference.wavefunction(qn.n_r, *q).unwrap()).collect();
        let scale = phi.iter().zip(&refs).map(|(a, b)| a * b).sum::<f64>() / refs.iter().map(|b| b * b).sum::<f64>();
        let peak = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for ((q, a), b) in qs.iter().zip(&phi).zip(&refs) {
            assert!((a - scale * b).abs() <= 1e-10 * peak, "{} q={q}: {a} vs {}", c.id, scale * b);
        }
        // the same identity through r
        for q in [qs[50], qs[100], qs[150]] {
            let r = crate::pct::r_of_z(&c.mass, q).unwrap();
            assert!((z_of_r(&c.mass, r).unwrap() - q).abs() <= 1e-10 * q.abs().max(1.0));
        }
    }
}

#[test]
fn node_counts_match_level() {
    let states: Vec<(CaseSpec, QuantumNumbers)> = vec![
        (ho(0.0, 1.0), QuantumNumbers::new(0, 0, 3)),
        (coulomb(1.0, 1.0), QuantumNumbers::new(0, 1, 3)),
        (case(CaseId::SpikedOscillator, 1.0, Some(2.0), &[("omega", 1.0), ("beta", 0.7)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::Kratzer, 1.0, Some(-1.0), &[("A", 1.0), ("beta", 0.7)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::SpikedOscillatorLog, 1.0, None, &[("C", 1.0)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::KratzerLog, 1.0, None, &[("A", 1.0), ("beta", 0.5)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::MorseLog, 1.0, None, &[("A", 8.0)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::PoschlTeller, 1.0, None, &[("kappa", 2.0), ("tau", 3.0)]), QuantumNumbers::new(0, 0, 3)),
        (case(CaseId::Hulthen, 0.1, None, &[]), QuantumNumbers::new(1, 0, 3)),
    ];
    for (c, s) in states {
        for k in 0..=3 {
            let qn = s.with_n_r(s.n_r + k);
            let sol = ClosedFormSolution::solve(&c, &qn).unwrap();
            assert_eq!(sol.node_count(10_000).unwrap(), c.expected_nodes(&qn), "{} {qn:?}", c.id);
        }
    }
}

#[test]
fn oscillator_second_excited_state_has_two_nodes_in_box() {
    let c = ho(0.0, 1.0);
    let sol = ClosedFormSolution::solve(&c, &QuantumNumbers::new(2, 0, 3)).unwrap();
    let vals: Vec<f64> = (1..10_000).map(|i| sol.radial(8.0 * f64::from(i) / 10_000.0).unwrap()).collect();
    let changes = vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    assert_eq!(changes, 2);
}

#[test]
fn normalized_wavefunctions_have_unit_norm() {
    for (c, qn) in ground_states() {
        let sol = ClosedFormSolution::solve(&c, &qn).unwrap();
        assert!(crate::verify::norm_defect(&sol).unwrap() < 1e-8, "{}", c.id);
    }
}

#[test]
fn morse_unnormalizable_state_is_an_error() {
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    assert!(closed_form_wavefunction(&morse, &QuantumNumbers::new(2, 0, 3), 1.0).is_err());
}
