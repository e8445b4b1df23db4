//! Terminating polynomial kernels used by the closed-form wavefunctions.

use crate::error::{PctError, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Generalized Laguerre polynomial `L_n^a(x)` by the three-term recurrence
/// `k L_k = (2k - 1 + a - x) L_{k-1} - (k - 1 + a) L_{k-2}`.
pub fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 2..=n {
        let k = f64::from(k);
        let next = ((2.0 * k - 1.0 + a - x) * cur - (k - 1.0 + a) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

/// `1F1(-n; b; x)` summed over its `n + 1` terms.
pub fn kummer_terminating(n: u32, b: f64, x: f64) -> Result<f64> {
    check_pole("b", b, n)?;
    let mut term = 1.0;
    let mut acc = CompensatedSum::default();
    acc.add(term);
    for k in 0..n {
        let k = f64::from(k);
        term *= (k - f64::from(n)) * x / ((b + k) * (k + 1.0));
        acc.add(term);
    }
    Ok(acc.value())
}

/// `2F1(-n, b; c; x)` summed over its `n + 1` terms.
pub fn gauss2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    check_pole("c", c, n)?;
    let mut term = 1.0;
    let mut acc = CompensatedSum::default();
    acc.add(term);
    for k in 0..n {
        let k = f64::from(k);
        term *= (k - f64::from(n)) * (b + k) * x / ((c + k) * (k + 1.0));
        acc.add(term);
    }
    Ok(acc.value())
}

/// Generalized binomial coefficient `a (a-1) ... (a-k+1) / k!`.
pub fn binomial_real(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a - f64::from(j)) / f64::from(j + 1))
}

/// The lower parameter must not hit a non-positive integer before the series
/// terminates: the denominators are `b, b+1, ..., b+n-1`.
fn check_pole(name: &str, b: f64, n: u32) -> Result<()> {
    for k in 0..n {
        if b + f64::from(k) == 0.0 {
            return Err(PctError::Parameter(format!(
                "{name} = {b} puts a zero in the Pochhammer denominator at term {}",
                k + 1
            )));
        }
    }
    Ok(())
}

/// A polynomial kernel with its parameters bound; evaluation is by value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyEval {
    Laguerre { n: u32, a: f64 },
    Kummer { n: u32, b: f64 },
    Gauss { n: u32, b: f64, c: f64 },
}

impl PolyEval {
    pub fn degree(&self) -> u32 {
        match *self {
            Self::Laguerre { n, .. } | Self::Kummer { n, .. } | Self::Gauss { n, .. } => n,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            Self::Laguerre { n, a } => Ok(laguerre(n, a, x)),
            Self::Kummer { n, b } => kummer_terminating(n, b, x),
            Self::Gauss { n, b, c } => gauss2f1_terminating(n, b, c, x),
        }
    }
}
