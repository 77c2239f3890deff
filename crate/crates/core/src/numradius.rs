//! Certified numerical radius via `ω(T) = sup_θ λ_max(Re(e^{iθ} T))`.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::linalg::{hermitian_eigen, operator_norm, ComplexMatrix, TridiagonalWorkspace, C64};
use crate::sweep::{certified_max, AngularProblem, SweepOutcome};
use crate::tolerance::ToleranceConfig;

/// Certified enclosure of a numerical radius (or any angular supremum).
///
/// `lower` is attained: it is the value of the swept function at `theta_star`.
/// `converged` is false when the evaluation budget ran out before the
/// enclosure reached the requested width; the enclosure is valid either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    pub lower: f64,
    pub upper: f64,
    pub theta_star: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl RadiusEstimate {
    pub fn exact(value: f64, theta_star: f64) -> Self {
        Self {
            lower: value,
            upper: value,
            theta_star,
            evaluations: 0,
            converged: true,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// Whether `value` lies in the enclosure widened by `slack` on both sides.
    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper + slack
    }

    pub fn overlaps(&self, other: &Self, slack: f64) -> bool {
        self.lower.max(other.lower) <= self.upper.min(other.upper) + slack
    }

    /// Enclosure of `factor * value` for `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        debug_assert!(factor >= 0.0);
        Self {
            lower: self.lower * factor,
            upper: self.upper * factor,
            ..*self
        }
    }
}

impl From<SweepOutcome> for RadiusEstimate {
    fn from(o: SweepOutcome) -> Self {
        Self {
            lower: o.lower,
            upper: o.upper,
            theta_star: o.theta_star,
            evaluations: o.evaluations,
            converged: o.converged,
        }
    }
}

/// `(e^{iθ} T + e^{-iθ} T*) / 2`.
pub fn rotated_real_part(t: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    t.ensure_square()?;
    t.scale(C64::from_polar(1.0, theta)).real_part()
}

/// Rounding allowance for one swept eigenvalue of an `n x n` matrix of norm `scale`.
pub(crate) fn rounding_allowance(n: usize, scale: f64) -> f64 {
    32.0 * f64::EPSILON * (n as f64) * scale
}

/// Swept function `θ ↦ λ_max(cos θ Re T − sin θ Im T)` with a reusable buffer.
struct RotatedSpectrum {
    re: Vec<C64>,
    im: Vec<C64>,
    buf: Vec<C64>,
    n: usize,
    workspace: TridiagonalWorkspace,
}

impl RotatedSpectrum {
    fn new(t: &ComplexMatrix) -> Result<Self> {
        let n = t.ensure_square()?;
        Ok(Self {
            re: t.real_part()?.into_entries(),
            im: t.imag_part()?.into_entries(),
            buf: vec![C64::new(0.0, 0.0); n * n],
            n,
            workspace: TridiagonalWorkspace::default(),
        })
    }

    fn lambda_max(&mut self, theta: f64) -> Result<f64> {
        let (s, c) = theta.sin_cos();
        for ((b, r), i) in self.buf.iter_mut().zip(&self.re).zip(&self.im) {
            *b = r * c - i * s;
        }
        Ok(self.workspace.lambda_max(&mut self.buf, self.n))
    }
}

/// Certified numerical radius of a square matrix.
///
/// Normal inputs (commutator `||TT* − T*T||_F <= eig_tol ||T||²`) are resolved
/// through `ω(T) = ||T||`; everything else goes through the angular sweep with
/// Lipschitz constant `||T||`.
pub fn numerical_radius(t: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<RadiusEstimate> {
    cfg.validate()?;
    let n = t.ensure_square()?;
    let norm = operator_norm(t);
    if norm == 0.0 {
        return Ok(RadiusEstimate::exact(0.0, 0.0));
    }
    let mut spectrum = RotatedSpectrum::new(t)?;

    let adj = t.adjoint();
    let commutator = &(t * &adj) - &(&adj * t);
    if commutator.frobenius_norm() <= cfg.eig_tol * norm * norm {
        if let Some(est) = normal_shortcut(t, norm, &mut spectrum, cfg)? {
            return Ok(est);
        }
    }

    let outcome = certified_max(
        AngularProblem {
            eval: |theta| spectrum.lambda_max(theta),
            lipschitz: norm,
            shift: 0.0,
            cap: norm,
            rounding: rounding_allowance(n, norm),
        },
        cfg.radius_tol,
    )?;
    Ok(outcome.into())
}

/// For normal `T`, `ω(T) = ||T||`, attained at `θ* = −arg⟨Tv, v⟩` for a top
/// right singular vector `v`. Returns `None` when the attained value does not
/// certify (ties between eigenvalues of equal modulus and different phase).
fn normal_shortcut(
    t: &ComplexMatrix,
    norm: f64,
    spectrum: &mut RotatedSpectrum,
    cfg: &ToleranceConfig,
) -> Result<Option<RadiusEstimate>> {
    let top = hermitian_eigen(&t.gram(), cfg)?.eigenvector(0);
    let n = t.rows();
    let mut quad = C64::new(0.0, 0.0);
    for i in 0..n {
        let tv: C64 = (0..n).map(|j| t.get(i, j) * top[j]).sum();
        quad += top[i].conj() * tv;
    }
    let theta = if quad.norm() > 0.0 {
        (-quad.arg()).rem_euclid(TAU)
    } else {
        0.0
    };
    let attained = spectrum.lambda_max(theta)?;
    if norm - attained <= cfg.radius_tol * (1.0 + attained) {
        Ok(Some(RadiusEstimate {
            lower: attained.min(norm),
            upper: norm,
            theta_star: theta,
            evaluations: 1,
            converged: true,
        }))
    } else {
        Ok(None)
    }
}

/// Monte Carlo lower bound on `ω(T)`: the largest `|⟨Tx, x⟩|` over `samples`
/// unit vectors drawn uniformly from the complex unit sphere. Deterministic in
/// `seed`; zero samples give the vacuous bound 0.
pub fn radius_sampling_oracle(t: &ComplexMatrix, samples: usize, seed: u64) -> Result<f64> {
    let n = t.ensure_square()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![C64::new(0.0, 0.0); n];
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let mut norm_sq = 0.0;
        for xi in x.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *xi = C64::new(re, im);
            norm_sq += xi.norm_sqr();
        }
        if norm_sq == 0.0 {
            continue;
        }
        let mut quad = C64::new(0.0, 0.0);
        for i in 0..n {
            let tx: C64 = (0..n).map(|j| t.get(i, j) * x[j]).sum();
            quad += x[i].conj() * tx;
        }
        best = best.max(quad.norm() / norm_sq);
    }
    Ok(best)
}
