//! Certified maximization of a 2π-periodic function over the circle.
//!
//! The functions handled here are of the form `f(θ) = λ_max(H₀ + Re(e^{iθ} N))`
//! for Hermitian `H₀`. Two independent ceilings bound `f` on an arc `[a, b]`
//! from its endpoint values:
//!
//! * Lipschitz: `(f(a) + f(b)) / 2 + L (b - a) / 2`.
//! * Sinusoid: with `c >= -λ_min(H₀)`, `g = f + c` satisfies `g'' + g >= 0`
//!   (it is a maximum of functions `α + p cos θ + q sin θ` with `α >= 0`), so
//!   on arcs shorter than π it lies below the sinusoid `A cos θ + B sin θ`
//!   interpolating its endpoint values. For numerical radii `c = 0` and this is
//!   the tangent-line outer polygon of the numerical range.
//!
//! The sinusoid ceiling is second order in the arc width, so refinement only
//! needs a few halvings around each maximizer. The smaller of the two ceilings
//! is used on every arc.

use std::f64::consts::TAU;

use crate::error::Result;

/// Number of equally spaced angles in the initial grid.
pub const INITIAL_GRID: usize = 64;

/// Maximum number of function evaluations before giving up on the requested
/// certificate width.
pub const EVALUATION_BUDGET: usize = 1 << 17;

const POLISH_BRACKET: f64 = 1e-10;

pub(crate) struct AngularProblem<F> {
    pub eval: F,
    /// Lipschitz constant of `f` in θ.
    pub lipschitz: f64,
    /// Shift `c` with `(f + c)'' + (f + c) >= 0`.
    pub shift: f64,
    /// A priori upper bound on `sup f`.
    pub cap: f64,
    /// Absolute allowance for rounding in a single evaluation.
    pub rounding: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SweepOutcome {
    pub lower: f64,
    pub upper: f64,
    pub theta_star: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    ceiling: f64,
}

/// Maximum over `[0, h]` of the sinusoid `A cos t + B sin t` through `(0, fa)`
/// and `(h, fb)`; `0 < h < π`.
pub(crate) fn sinusoid_ceiling(fa: f64, fb: f64, h: f64) -> f64 {
    let b = (fb - fa * h.cos()) / h.sin();
    let peak = b.atan2(fa);
    if (0.0..=h).contains(&peak) {
        fa.hypot(b)
    } else {
        fa.max(fb)
    }
}

struct Sweeper<F> {
    problem: AngularProblem<F>,
    evaluations: usize,
    lower: f64,
    theta_star: f64,
}

impl<F: FnMut(f64) -> Result<f64>> Sweeper<F> {
    fn eval(&mut self, theta: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.problem.eval)(theta)?;
        if v > self.lower {
            self.lower = v;
            self.theta_star = theta;
        }
        Ok(v)
    }

    fn arc(&self, a: f64, fa: f64, b: f64, fb: f64) -> Arc {
        let p = &self.problem;
        let h = b - a;
        let lipschitz = 0.5 * (fa + fb) + 0.5 * p.lipschitz * h;
        let sinusoid = sinusoid_ceiling(fa + p.shift, fb + p.shift, h) - p.shift;
        let ceiling = lipschitz.min(sinusoid).min(p.cap) + p.rounding;
        Arc { a, fa, b, fb, ceiling }
    }

    /// Golden-section ascent on `[center - half_width, center + half_width]`.
    /// Only ever raises `lower`.
    fn polish(&mut self, center: f64, half_width: f64) -> Result<()> {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let (mut lo, mut hi) = (center - half_width, center + half_width);
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.eval(x1)?;
        let mut f2 = self.eval(x2)?;
        while hi - lo > POLISH_BRACKET {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.eval(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.eval(x2)?;
            }
        }
        Ok(())
    }
}

/// Certified enclosure `[lower, upper]` of `sup_θ f(θ)` with
/// `upper - lower <= tol * (1 + max(lower, 0))` unless the evaluation budget
/// runs out first (then `converged` is false and the enclosure is still valid).
pub(crate) fn certified_max<F>(problem: AngularProblem<F>, tol: f64) -> Result<SweepOutcome>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut s = Sweeper {
        problem,
        evaluations: 0,
        lower: f64::NEG_INFINITY,
        theta_star: 0.0,
    };
    let step = TAU / INITIAL_GRID as f64;
    let mut values = Vec::with_capacity(INITIAL_GRID + 1);
    for i in 0..INITIAL_GRID {
        values.push(s.eval(step * i as f64)?);
    }
    values.push(values[0]);
    let mut arcs: Vec<Arc> = (0..INITIAL_GRID)
        .map(|i| s.arc(step * i as f64, values[i], step * (i + 1) as f64, values[i + 1]))
        .collect();

    s.polish(s.theta_star, step)?;

    let mut pruned = f64::NEG_INFINITY;
    let mut width = step;
    let converged = loop {
        let target = tol * (1.0 + s.lower.max(0.0));
        let upper = arcs.iter().map(|a| a.ceiling).fold(pruned, f64::max);
        if upper - s.lower <= target {
            break true;
        }
        if s.evaluations >= EVALUATION_BUDGET {
            break false;
        }
        let mut next = Vec::with_capacity(arcs.len() * 2);
        for arc in arcs {
            if arc.ceiling <= s.lower + target {
                pruned = pruned.max(arc.ceiling);
                continue;
            }
            let mid = 0.5 * (arc.a + arc.b);
            let fm = s.eval(mid)?;
            next.push(s.arc(arc.a, arc.fa, mid, fm));
            next.push(s.arc(mid, fm, arc.b, arc.fb));
        }
        arcs = next;
        width *= 0.5;
    };

    if converged {
        s.polish(s.theta_star, width)?;
    }
    let upper = arcs.iter().map(|a| a.ceiling).fold(pruned, f64::max).max(s.lower);
    Ok(SweepOutcome {
        lower: s.lower,
        upper,
        theta_star: s.theta_star.rem_euclid(TAU),
        evaluations: s.evaluations,
        converged,
    })
}
