//! Grids in `q`, possibly through a smooth coordinate map `q = g(x)`.
//!
//! With `phi = sqrt(g') chi` the operator `-phi''/2 + W phi` becomes
//! `-chi''/2 + [g'^2 W - {g, x}/4] chi = E g'^2 chi`, where `{g, x}` is the
//! Schwarzian derivative. Mapping a singular wall to `x -> -inf` turns the
//! power-law behaviour `phi ~ (q - a)^{L+1}` into a plain exponential in `x`.

use crate::error::{PctError, Result};
use crate::model::{CaseSpec, QuantumNumbers};
use crate::spectra::{q_window, QWindow};

/// Half-width in `x` of the logistic map of a finite box.
const LOGISTIC_HALF_WIDTH: f64 = 20.0;
/// Distance of the first half-line node from its wall, relative to the window.
const WALL_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinateMap {
    /// `q = x`.
    Uniform,
    /// `q = origin + dir * scale * ln(1 + e^x)`.
    HalfLine { origin: f64, dir: f64, scale: f64 },
    /// `q = lo + len / (1 + e^{-x})`.
    Interval { lo: f64, len: f64 },
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn softplus_inv(t: f64) -> f64 {
    t.exp_m1().ln()
}

impl CoordinateMap {
    pub fn q(&self, x: f64) -> f64 {
        match *self {
            Self::Uniform => x,
            Self::HalfLine { origin, dir, scale } => origin + dir * scale * softplus(x),
            Self::Interval { lo, len } => lo + len * logistic(x),
        }
    }

    /// `dq/dx`.
    pub fn dq(&self, x: f64) -> f64 {
        match *self {
            Self::Uniform => 1.0,
            Self::HalfLine { scale, .. } => scale * logistic(x),
            Self::Interval { len, .. } => {
                let s = logistic(x);
                len * s * (1.0 - s)
            }
        }
    }

    /// `-{g, x} / 4`.
    pub fn schwarzian_term(&self, x: f64) -> f64 {
        match *self {
            Self::Uniform => 0.0,
            Self::HalfLine { .. } => {
                let s = logistic(x);
                (1.0 - s * s) / 8.0
            }
            Self::Interval { .. } => 0.125,
        }
    }

    pub fn x_of_q(&self, q: f64) -> f64 {
        match *self {
            Self::Uniform => q,
            Self::HalfLine { origin, dir, scale } => softplus_inv(dir * (q - origin) / scale),
            Self::Interval { lo, len } => {
                let s = (q - lo) / len;
                (s / (1.0 - s)).ln()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// `chi = 0` one step beyond the last node.
    Dirichlet,
    /// The last node sits on the boundary and `chi' = Lambda chi` there, with
    /// `Lambda` fixed by the local inverse-square strength of `W`.
    Robin,
}

/// Nodes `x_i = x_min + (i + s) h`, `i = 0..n`, with `s = 0` at a Robin end and
/// `s = 1` at a Dirichlet end; for the uniform Dirichlet grid this is
/// `q_i = q_min + (i + 1) h` with `h = (q_max - q_min) / (n + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub q_min: f64,
    pub q_max: f64,
    pub n: usize,
    /// Spacing in `x`.
    pub h: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub map: CoordinateMap,
    /// Boundary at `x_min`.
    pub left: Boundary,
    /// Boundary at `x_max`.
    pub right: Boundary,
}

impl Grid {
    /// Plain uniform Dirichlet grid on `(q_min, q_max)`.
    pub fn uniform(q_min: f64, q_max: f64, n: usize) -> Result<Self> {
        if !(q_min < q_max) || !q_min.is_finite() || !q_max.is_finite() {
            return Err(PctError::validation(format!(
                "grid bounds must be finite with q_min < q_max, got ({q_min}, {q_max})"
            )));
        }
        Self::mapped(CoordinateMap::Uniform, q_min, q_max, n, Boundary::Dirichlet, Boundary::Dirichlet)
    }

    fn mapped(
        map: CoordinateMap,
        x_min: f64,
        x_max: f64,
        n: usize,
        left: Boundary,
        right: Boundary,
    ) -> Result<Self> {
        if n < 2 {
            return Err(PctError::validation("grid needs at least two nodes"));
        }
        let intervals = n - 1 + usize::from(left == Boundary::Dirichlet) + usize::from(right == Boundary::Dirichlet);
        let h = (x_max - x_min) / intervals as f64;
        let (a, b) = (map.q(x_min), map.q(x_max));
        Ok(Self {
            q_min: a.min(b),
            q_max: a.max(b),
            n,
            h,
            x_min,
            x_max,
            map,
            left,
            right,
        })
    }

    /// Grid adapted to a wavefunction window: logistic map for a box,
    /// softplus map for a half-line, uniform otherwise.
    pub fn over_window(w: &QWindow, n: usize) -> Result<Self> {
        let span = w.hi - w.lo;
        match (w.lo_wall, w.hi_wall) {
            (true, true) => Self::mapped(
                CoordinateMap::Interval { lo: w.lo, len: span },
                -LOGISTIC_HALF_WIDTH,
                LOGISTIC_HALF_WIDTH,
                n,
                Boundary::Robin,
                Boundary::Robin,
            ),
            (true, false) | (false, true) => {
                let (origin, dir) = if w.lo_wall { (w.lo, 1.0) } else { (w.hi, -1.0) };
                let scale = span / 10.0;
                let map = CoordinateMap::HalfLine { origin, dir, scale };
                let x_min = softplus_inv(WALL_GAP * span / scale);
                Self::mapped(map, x_min, softplus_inv(10.0), n, Boundary::Robin, Boundary::Dirichlet)
            }
            (false, false) => Self::uniform(w.lo, w.hi, n),
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        let shift = if self.left == Boundary::Dirichlet { 1.0 } else { 0.0 };
        self.x_min + (i as f64 + shift) * self.h
    }

    /// Node positions in `q`.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.map.q(self.x(i))).collect()
    }

    /// The same span with half the spacing.
    pub fn refined(&self) -> Self {
        let d = usize::from(self.left == Boundary::Dirichlet) + usize::from(self.right == Boundary::Dirichlet);
        let intervals = 2 * (self.n - 1 + d);
        Self {
            n: intervals + 1 - d,
            h: self.h / 2.0,
            ..self.clone()
        }
    }

    /// Trapezoid nodes `(q, w)` for `int f dq` over the span with `m` intervals
    /// in `x`.
    pub fn quadrature(&self, m: usize) -> Vec<(f64, f64)> {
        let dx = (self.x_max - self.x_min) / m as f64;
        (0..=m)
            .map(|i| {
                let x = self.x_min + i as f64 * dx;
                let end = if i == 0 || i == m { 0.5 } else { 1.0 };
                (self.map.q(x), end * dx * self.map.dq(x))
            })
            .collect()
    }

    /// `m` points evenly spaced in `x` strictly inside the span.
    pub fn sample_q(&self, m: usize) -> Vec<f64> {
        let dx = (self.x_max - self.x_min) / (m + 1) as f64;
        (1..=m).map(|i| self.map.q(self.x_min + i as f64 * dx)).collect()
    }
}

/// Explicit grid bounds; a given bound replaces the automatic one and becomes
/// a Dirichlet end.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverride {
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
}

/// Builds the grid for a state, sizing it from the closed-form wavefunction.
pub fn build_grid(
    case: &CaseSpec,
    qn: &QuantumNumbers,
    n: usize,
    bounds: GridOverride,
) -> Result<Grid> {
    if n < 50 {
        return Err(PctError::validation(format!("grid needs n >= 50, got {n}")));
    }
    if let (Some(a), Some(b)) = (bounds.q_min, bounds.q_max) {
        return Grid::uniform(a, b, n);
    }
    let mut w = q_window(case, qn)?;
    if let Some(a) = bounds.q_min {
        w.lo = a;
        w.lo_wall = false;
    }
    if let Some(b) = bounds.q_max {
        w.hi = b;
        w.hi_wall = false;
    }
    if !(w.lo < w.hi) {
        return Err(PctError::validation(format!(
            "grid bounds must satisfy q_min < q_max, got ({}, {})",
            w.lo, w.hi
        )));
    }
    Grid::over_window(&w, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_invert() {
        let maps = [
            CoordinateMap::Uniform,
            CoordinateMap::HalfLine { origin: 0.5, dir: 1.0, scale: 2.0 },
            CoordinateMap::HalfLine { origin: 0.0, dir: -1.0, scale: 0.7 },
            CoordinateMap::Interval { lo: 0.0, len: 1.5 },
        ];
        for m in maps {
            for x in [-15.0, -3.0, 0.0, 2.5, 9.0] {
                let back = m.x_of_q(m.q(x));
                assert!((back - x).abs() < 1e-9 * x.abs().max(1.0), "{m:?} x={x} back={back}");
            }
        }
    }

    #[test]
    fn map_derivatives_match_differences() {
        let maps = [
            CoordinateMap::HalfLine { origin: 0.5, dir: 1.0, scale: 2.0 },
            CoordinateMap::Interval { lo: 0.0, len: 1.5 },
        ];
        for m in maps {
            for x in [-4.0, -1.0, 0.3, 2.0] {
                let h = 1e-3;
                let g = |x: f64| m.q(x);
                let d1 = (g(x + h) - g(x - h)) / (2.0 * h);
                assert!((d1 - m.dq(x)).abs() < 1e-6);
                let d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
                let d3 = (g(x + 2.0 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2.0 * h)) / (2.0 * h * h * h);
                let s = d3 / d1 - 1.5 * (d2 / d1).powi(2);
                assert!((-0.25 * s - m.schwarzian_term(x)).abs() < 1e-4, "{m:?} x={x}");
            }
        }
    }

    #[test]
    fn uniform_grid_matches_textbook_layout() {
        let g = Grid::uniform(0.0, 10.0, 99).unwrap();
        assert!((g.h - 0.1).abs() < 1e-15);
        let q = g.nodes();
        assert!((q[0] - 0.1).abs() < 1e-15 && (q[98] - 9.9).abs() < 1e-12);
        let r = g.refined();
        assert_eq!(r.n, 199);
        assert!((r.nodes()[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn refinement_keeps_the_span() {
        let w = QWindow { lo: 0.0, hi: 8.0, lo_wall: true, hi_wall: false };
        let g = Grid::over_window(&w, 100).unwrap();
        let r = g.refined();
        assert_eq!(r.n, 2 * 100);
        assert_eq!(g.x(0), r.x(0));
        assert!((g.x(99) - r.x(198)).abs() < 1e-12);
        let b = QWindow { lo: 0.0, hi: 1.0, lo_wall: true, hi_wall: true };
        let g = Grid::over_window(&b, 101).unwrap();
        assert_eq!(g.refined().n, 201);
    }

    #[test]
    fn quadrature_integrates_on_mapped_spans() {
        let w = QWindow { lo: 0.0, hi: 40.0, lo_wall: true, hi_wall: false };
        let g = Grid::over_window(&w, 100).unwrap();
        let s: f64 = g.quadrature(4000).iter().map(|(q, w)| w * q * q * (-q).exp()).sum();
        assert!((s - 2.0).abs() < 1e-10);
        let b = QWindow { lo: 0.0, hi: std::f64::consts::PI, lo_wall: true, hi_wall: true };
        let g = Grid::over_window(&b, 100).unwrap();
        let s: f64 = g.quadrature(4000).iter().map(|(q, w)| w * q.sin().powi(2)).sum();
        assert!((s - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }
}
