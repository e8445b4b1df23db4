use std::io::Write;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use pctlab::spectra::{energy_shift, reference_energy};
use pctlab::{
    check_degeneracy, closed_form_energy, degeneracy_ladder, effective_potential_q, r_of_z,
    target_potential, verify_energy, z_of_r, CaseId, CaseSpec, ClosedFormSolution, Flag,
    GridSettings, PctError, QuantumNumbers, VerificationReport,
};

use crate::args::{Command, RunArgs};
use crate::config::{Output, RunConfig};
use crate::error::CliError;
use crate::table::{float, Cell, Table};

pub const VERIFY_HEADER: [&str; 13] = [
    "case",
    "n_r",
    "ell",
    "d",
    "param_hash",
    "E_closed",
    "E_numeric",
    "abs_err",
    "rel_err",
    "residual_l2",
    "norm_defect",
    "flag",
    "passed",
];

pub fn run(command: Command) -> Result<(), CliError> {
    let resolve = |args: RunArgs| RunConfig::resolve(args);
    match command {
        Command::Cases(out) => emit(&cases(), &Output::resolve(out)),
        Command::Spectrum(args) => {
            let cfg = resolve(args)?;
            emit(&spectrum(&cfg)?, &cfg.output)
        }
        Command::Wavefunction(args) => {
            let cfg = resolve(args)?;
            emit(&wavefunction(&cfg)?, &cfg.output)
        }
        Command::Potential(args) => {
            let cfg = resolve(args)?;
            emit(&potential(&cfg)?, &cfg.output)
        }
        Command::Degeneracy(args) => {
            let cfg = resolve(args)?;
            emit(&degeneracy(&cfg)?, &cfg.output)
        }
        Command::Verify(args) => {
            let cfg = resolve(args)?;
            let reports = verify(&cfg)?;
            emit(&verify_table(&cfg.case, &reports), &cfg.output)?;
            adjudicate(&cfg, &reports)
        }
    }
}

fn emit(table: &Table, output: &Output) -> Result<(), CliError> {
    let text = table.render(output.format);
    let written = match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    written.map_err(CliError::Validation)
}

/// First 16 hex digits of the SHA-256 of the canonical parameter listing.
pub fn param_hash(case: &CaseSpec) -> String {
    let mut text = case.id.name().to_string();
    for (k, v) in case.canonical_params() {
        text.push_str(&format!(";{k}={}", float(v)));
    }
    Sha256::digest(text.as_bytes())[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn flag_label(case: &CaseSpec) -> &'static str {
    if case.id.is_flagged() {
        case.flag.name()
    } else {
        "none"
    }
}

/// `(state, flagged case)` pairs in output order.
fn jobs(cfg: &RunConfig) -> Vec<(QuantumNumbers, CaseSpec)> {
    let flags = cfg.flag.flags_for(cfg.case.id);
    cfg.states
        .iter()
        .flat_map(|qn| flags.iter().map(|f| (*qn, cfg.case.with_flag(*f))))
        .collect()
}

fn state_cells(case: &CaseSpec, qn: &QuantumNumbers) -> Vec<Cell> {
    vec![
        case.id.name().into(),
        qn.n_r.into(),
        qn.ell.into(),
        qn.d.into(),
        param_hash(case).into(),
    ]
}

fn cases() -> Table {
    let mut t = Table::new(&["case", "mass", "reference", "flagged", "gamma", "params", "param_notes"]);
    for id in CaseId::ALL {
        let gamma = match id {
            c if c.takes_gamma() => "required",
            c if c.is_log_branch() => "-2",
            _ => "n/a",
        };
        let keys: Vec<&str> = id.schema().iter().map(|(k, _)| *k).collect();
        let notes: Vec<String> = id.schema().iter().map(|(k, d)| format!("{k}: {d}")).collect();
        t.push(vec![
            id.name().into(),
            id.mass_family().into(),
            id.reference_name().into(),
            id.is_flagged().into(),
            gamma.into(),
            keys.join(";").into(),
            notes.join("; ").into(),
        ]);
    }
    t
}

fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "case", "n_r", "ell", "d", "param_hash", "flag", "E_reference", "E_shift", "E_closed",
    ]);
    for (qn, case) in jobs(cfg) {
        let mut row = state_cells(&case, &qn);
        row.extend([
            flag_label(&case).into(),
            reference_energy(&case, &qn)?.into(),
            energy_shift(&case, &qn)?.into(),
            closed_form_energy(&case, &qn)?.into(),
        ]);
        t.push(row);
    }
    Ok(t)
}

/// `points` values of `r`, evenly spaced in `ln r`, across the window
/// carrying the state.
fn log_grid(sol: &ClosedFormSolution, points: usize) -> Result<Vec<f64>, PctError> {
    let qs = sol.grid().sample_q(points);
    let a = r_of_z(&sol.case.mass, qs[0])?.ln();
    let b = r_of_z(&sol.case.mass, qs[qs.len() - 1])?.ln();
    let (lo, hi) = (a.min(b), a.max(b));
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| (lo + i as f64 * step).exp()).collect())
}

fn wavefunction(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&["case", "n_r", "ell", "d", "param_hash", "flag", "r", "q", "R"]);
    for (qn, case) in jobs(cfg) {
        let sol = ClosedFormSolution::solve(&case, &qn)?;
        for r in log_grid(&sol, cfg.points)? {
            let mut row = state_cells(&case, &qn);
            row.extend([
                flag_label(&case).into(),
                r.into(),
                z_of_r(&case.mass, r)?.into(),
                sol.radial(r)?.into(),
            ]);
            t.push(row);
        }
    }
    Ok(t)
}

/// Tabulated over the window of the lowest state in the channel.
fn potential(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&["case", "ell", "d", "param_hash", "flag", "r", "q", "V", "W"]);
    let qn = cfg.states[0];
    for f in cfg.flag.flags_for(cfg.case.id) {
        let case = cfg.case.with_flag(f);
        let window = ClosedFormSolution::solve(&case.with_flag(Flag::ReDerived), &qn)?;
        for r in log_grid(&window, cfg.points)? {
            let q = z_of_r(&case.mass, r)?;
            t.push(vec![
                case.id.name().into(),
                qn.ell.into(),
                qn.d.into(),
                param_hash(&case).into(),
                flag_label(&case).into(),
                r.into(),
                q.into(),
                target_potential(&case, &qn, r)?.into(),
                effective_potential_q(&case, &qn, q)?.into(),
            ]);
        }
    }
    Ok(t)
}

fn degeneracy(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "case", "n_r", "ell", "d", "param_hash", "rungs", "E_first", "max_spread", "holds",
    ]);
    let case = &cfg.case;
    for qn in &cfg.states {
        let holds = check_degeneracy(case, qn.n_r, qn.ell, qn.d)?;
        let ladder = degeneracy_ladder(qn.n_r, qn.ell, qn.d)?;
        let energies = ladder
            .iter()
            .map(|(l, d)| closed_form_energy(case, &QuantumNumbers::new(qn.n_r, *l, *d)))
            .collect::<Result<Vec<f64>, PctError>>()?;
        let spread = energies.iter().fold(0.0f64, |m, e| m.max((e - energies[0]).abs()));
        let rungs: Vec<String> = ladder.iter().map(|(l, d)| format!("{l}:{d}")).collect();
        let mut row = state_cells(case, qn);
        row.extend([rungs.join(";").into(), energies[0].into(), spread.into(), holds.into()]);
        t.push(row);
    }
    Ok(t)
}

fn verify(cfg: &RunConfig) -> Result<Vec<VerificationReport>, CliError> {
    let settings = GridSettings {
        n: cfg.grid_n,
        bounds: cfg.bounds,
        richardson: true,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))?;
    let jobs = jobs(cfg);
    let results: Vec<Result<VerificationReport, PctError>> = pool.install(|| {
        jobs.par_iter()
            .map(|(qn, case)| verify_energy(case, qn, &settings, &cfg.tol))
            .collect()
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    reports.sort_by_key(|r| (r.case, r.qn.d, r.qn.ell, r.qn.n_r, r.flag));
    Ok(reports)
}

fn verify_table(case: &CaseSpec, reports: &[VerificationReport]) -> Table {
    let mut t = Table::new(&VERIFY_HEADER);
    for r in reports {
        let mut row = state_cells(case, &r.qn);
        row.extend([
            r.e_closed.into(),
            r.e_numeric.into(),
            r.abs_err.into(),
            r.rel_err.into(),
            r.residual_l2.into(),
            r.norm_defect.into(),
            r.flag.map_or("none", Flag::name).into(),
            r.passed.into(),
        ]);
        t.push(row);
    }
    t
}

/// A state passes when its single report passes or, when both flags ran,
/// when exactly one of them does. The verdicts go to stderr.
fn adjudicate(cfg: &RunConfig, reports: &[VerificationReport]) -> Result<(), CliError> {
    let mut failed = Vec::new();
    let mut numerical = false;
    for group in reports.chunk_by(|a, b| a.qn == b.qn) {
        let qn = group[0].qn;
        let label = format!("{} n_r={} ell={} d={}", cfg.case.id, qn.n_r, qn.ell, qn.d);
        let winners: Vec<&VerificationReport> = group.iter().filter(|r| r.passed).collect();
        let ok = match group.len() {
            1 => winners.len() == 1,
            _ => {
                let verdict = match winners.as_slice() {
                    [] => "no flag passes".to_string(),
                    [w] => format!("{} passes", w.flag.map_or("none", Flag::name)),
                    _ => "both flags pass".to_string(),
                };
                eprintln!("{label}: {verdict}");
                winners.len() == 1
            }
        };
        if !ok {
            for r in group.iter().filter_map(|r| r.failure.as_ref()) {
                eprintln!("{label}: {r}");
            }
            numerical |= group.iter().all(VerificationReport::is_numerical_failure);
            failed.push(label);
        }
    }
    match (failed.is_empty(), numerical) {
        (true, _) => Ok(()),
        (false, true) => Err(CliError::Numerical(failed.join(", "))),
        (false, false) => Err(CliError::Verification(failed.join(", "))),
    }
}
