use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;

fn case(id: CaseId, alpha: f64, gamma: Option<f64>, p: &[(&str, f64)]) -> CaseSpec {
    let m: BTreeMap<String, f64> = p.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    CaseSpec::from_params(id, alpha, gamma, &m, Flag::ReDerived).unwrap()
}

fn ho(gamma: f64) -> CaseSpec {
    case(CaseId::Oscillator, 1.0, Some(gamma), &[("omega", 1.0)])
}

const S: QuantumNumbers = QuantumNumbers {
    n_r: 0,
    ell: 0,
    d: 3,
    parity: None,
};

#[test]
fn oscillator_lowest_three() {
    let bounds = GridOverride {
        q_min: Some(0.0),
        q_max: Some(8.0),
    };
    let grid = build_grid(&ho(0.0), &S, 4000, bounds).unwrap();
    let op = discretize(&ho(0.0), &S, &grid).unwrap();
    let e = eigen_lowest(&op, 3).unwrap();
    for (got, want) in e.iter().zip([1.5, 3.5, 5.5]) {
        assert!((got - want).abs() < 1e-5, "{got} vs {want}");
    }
}

#[test]
fn oscillator_extrapolated_ground_state() {
    let e = grid_energy(&ho(0.0), &S, &GridSettings::with_n(2000)).unwrap();
    assert!((e - 1.5).abs() < 1e-6, "{e}");
}

#[test]
fn second_order_convergence() {
    let err = |n: usize| {
        let settings = GridSettings {
            richardson: false,
            ..GridSettings::with_n(n)
        };
        (grid_energy(&ho(0.0), &S, &settings).unwrap() - 1.5).abs()
    };
    let (e1, e2, e4) = (err(1000), err(2000), err(4000));
    for ratio in [e1 / e2, e2 / e4] {
        assert!((3.5..4.5).contains(&ratio), "ratios {} {}", e1 / e2, e2 / e4);
    }
}

#[test]
fn verify_examples() {
    let tol = Tolerances::default();
    let r = verify_energy(&ho(0.0), &S, &GridSettings::default(), &tol).unwrap();
    assert!(r.passed && r.rel_err <= 1e-6, "{r:?}");
    assert!(r.residual_l2 <= 1e-8 && r.norm_defect <= 1e-8);

    let coulomb = case(CaseId::Coulomb, 1.0, Some(0.0), &[("A", 1.0)]);
    let settings = GridSettings {
        bounds: GridOverride {
            q_min: None,
            q_max: Some(40.0),
        },
        ..GridSettings::with_n(6000)
    };
    let r = verify_energy(&coulomb, &S, &settings, &tol).unwrap();
    assert!((r.e_numeric + 0.5).abs() < 1e-5, "{r:?}");

    let r = verify_energy(&ho(2.0), &QuantumNumbers::new(0, 0, 5), &GridSettings::default(), &tol).unwrap();
    assert!((r.e_numeric - 2.5).abs() < 1e-5 && r.passed, "{r:?}");
}

#[test]
fn invalid_state_is_an_error_not_a_report() {
    let hulthen = case(CaseId::Hulthen, 0.5, None, &[]);
    let tol = Tolerances::default();
    assert!(verify_energy(&hulthen, &S, &GridSettings::default(), &tol).is_err());
    assert!(grid_energy(&ho(0.0), &S, &GridSettings::with_n(10)).is_err());
}

#[test]
fn oscillator_residual_example() {
    let r = residual_norm(&ho(0.0), &S, 1e-3).unwrap();
    assert!(r <= 1e-8, "{r}");
}

#[test]
fn perturbed_energy_raises_residual() {
    let cases = [
        (ho(0.0), S),
        (case(CaseId::Coulomb, 1.0, Some(1.0), &[("A", 1.0)]), S),
        (case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]), S),
        (case(CaseId::PoschlTeller, 1.0, None, &[("kappa", 2.0), ("tau", 3.0)]), S),
    ];
    for (c, qn) in cases {
        let sol = ClosedFormSolution::solve(&c, &qn).unwrap();
        let base = residual_with_energy(&sol, sol.energy, 1e-3).unwrap();
        let bumped = residual_with_energy(&sol, sol.energy + 0.01, 1e-3).unwrap();
        assert!(bumped >= 10.0 * base, "{}: {base} -> {bumped}", c.id);
    }
}

#[test]
fn morse_flags_are_adjudicated() {
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    let tol = Tolerances::default();
    let reports = verify_flags(&morse, &S, &GridSettings::default(), &tol).unwrap();
    assert_eq!(reports.len(), 2);
    let small: Vec<bool> = reports.iter().map(|r| r.residual_l2 <= tol.residual && r.rel_err <= 1e-4).collect();
    assert_eq!(small, vec![false, true], "{reports:?}");
    assert_eq!(reports[1].flag, Some(Flag::ReDerived));
}

#[test]
fn build_grid_examples() {
    let g = build_grid(&ho(0.0), &S, 2000, GridOverride::default()).unwrap();
    assert!(g.q_min >= 0.0 && g.q_min < 1e-6);
    assert!((7.0..9.0).contains(&g.q_max), "{}", g.q_max);

    let pt = case(CaseId::PoschlTeller, 1.0, None, &[("kappa", 2.0), ("tau", 3.0)]);
    let g = build_grid(&pt, &S, 2000, GridOverride::default()).unwrap();
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert!(g.q_min > 0.0 && g.q_max < half_pi && g.q_max > half_pi - 1e-6);
    assert!(g.nodes().iter().all(|q| *q > 0.0 && *q < half_pi));

    let echo = GridOverride {
        q_min: Some(0.0),
        q_max: Some(10.0),
    };
    let g = build_grid(&ho(0.0), &S, 100, echo).unwrap();
    assert_eq!((g.q_min, g.q_max, g.n), (0.0, 10.0, 100));
    assert!((g.h - 10.0 / 101.0).abs() < 1e-15);

    assert!(build_grid(&ho(0.0), &S, 49, GridOverride::default()).is_err());
}

#[test]
fn degeneracy_examples() {
    assert!(check_degeneracy(&ho(0.0), 1, 2, 3).unwrap());
    let coulomb = case(CaseId::Coulomb, 1.0, Some(0.0), &[("A", 1.0)]);
    assert!(check_degeneracy(&coulomb, 2, 1, 3).unwrap());
    // Lambda carries 2 gamma (3 - d), which the ladder shifts by -4 gamma
    assert!(!check_degeneracy(&ho(1.0), 0, 1, 2).unwrap());
    assert!(check_degeneracy(&ho(0.0), 0, 0, 3).is_err());
    let morse = case(CaseId::MorseLog, 1.0, None, &[("A", 2.0)]);
    assert!(check_degeneracy(&morse, 0, 1, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_mass_ladder_holds(
        which in 0usize..4,
        alpha in 0.2f64..3.0,
        strength in 0.2f64..3.0,
        beta in 0.0f64..2.0,
        n_r in 0u32..5,
        ell in 1u32..=3,
        d in 2u32..7,
    ) {
        let c = match which {
            0 => case(CaseId::Oscillator, alpha, Some(0.0), &[("omega", strength)]),
            1 => case(CaseId::Coulomb, alpha, Some(0.0), &[("A", strength)]),
            2 => case(CaseId::SpikedOscillator, alpha, Some(0.0), &[("omega", strength), ("beta", beta)]),
            _ => case(CaseId::Kratzer, alpha, Some(0.0), &[("A", strength), ("beta", beta)]),
        };
        prop_assert!(check_degeneracy(&c, n_r, ell, d).unwrap());
    }

    #[test]
    fn ladder_breaks_for_nonzero_gamma(
        gamma in prop_oneof![-1.5f64..-0.1, 0.1f64..3.0],
        n_r in 0u32..4,
        ell in 1u32..=3,
        d in 2u32..6,
    ) {
        let c = case(CaseId::Oscillator, 1.0, Some(gamma), &[("omega", 1.0)]);
        // a complex index on some rung is also a broken ladder
        prop_assert!(!check_degeneracy(&c, n_r, ell, d).unwrap_or(false));
    }
}
