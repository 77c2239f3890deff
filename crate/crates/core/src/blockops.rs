//! The off-diagonal operator matrix `[[O, T₁], [T₂*, O]]` and the rotation
//! identity `ω([[O, T₁], [T₂*, O]]) = ½ sup_θ ||T₁ + e^{iθ} T₂||`.

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix, TridiagonalWorkspace, C64};
use crate::numradius::{numerical_radius, rounding_allowance, RadiusEstimate};
use crate::sweep::{certified_max, AngularProblem};
use crate::tolerance::ToleranceConfig;

/// `[[O, upper], [lower, O]]` for square blocks of equal size.
pub fn antidiagonal_block(upper: &ComplexMatrix, lower: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = upper.ensure_square()?;
    lower.ensure_square()?;
    upper.ensure_same_shape(lower, "block operands")?;
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, n + j, upper.get(i, j));
            m.set(n + i, j, lower.get(i, j));
        }
    }
    Ok(m)
}

/// `[[O, T₁], [T₂*, O]]`.
pub fn offdiag_block(t1: &ComplexMatrix, t2: &ComplexMatrix) -> Result<ComplexMatrix> {
    antidiagonal_block(t1, &t2.adjoint())
}

/// Certified enclosure of `sup_θ ||T₁ + e^{iθ} T₂||`.
///
/// The swept norm is `λ_max` of the Hermitian dilation of `T₁ + e^{iθ}T₂`,
/// whose constant part has spectrum `±s_j(T₁)`; hence the sinusoid ceiling
/// uses the shift `||T₁||`. Lipschitz constant is `||T₂||`.
pub fn sup_theta_norm(t1: &ComplexMatrix, t2: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<RadiusEstimate> {
    cfg.validate()?;
    t1.ensure_same_shape(t2, "sup_theta_norm operands")?;
    let n1 = operator_norm(t1);
    let n2 = operator_norm(t2);
    if n2 == 0.0 {
        return Ok(RadiusEstimate::exact(n1, 0.0));
    }
    if n1 == 0.0 {
        return Ok(RadiusEstimate::exact(n2, 0.0));
    }

    let (rows, cols) = (t1.rows(), t1.cols());
    let a = t1.entries().to_vec();
    let b = t2.entries().to_vec();
    let mut x = vec![C64::new(0.0, 0.0); rows * cols];
    let mut gram = vec![C64::new(0.0, 0.0); cols * cols];
    let mut workspace = TridiagonalWorkspace::default();
    let eval = |theta: f64| -> Result<f64> {
        let phase = C64::from_polar(1.0, theta);
        for ((xi, ai), bi) in x.iter_mut().zip(&a).zip(&b) {
            *xi = ai + bi * phase;
        }
        for i in 0..cols {
            for j in i..cols {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..rows {
                    acc += x[k * cols + i].conj() * x[k * cols + j];
                }
                gram[i * cols + j] = acc;
                gram[j * cols + i] = acc.conj();
            }
        }
        let hi = workspace.lambda_max(&mut gram, cols);
        Ok(hi.max(0.0).sqrt())
    };

    let outcome = certified_max(
        AngularProblem {
            eval,
            lipschitz: n2,
            shift: n1,
            cap: n1 + n2,
            rounding: rounding_allowance(2 * cols.max(rows), n1 + n2),
        },
        cfg.radius_tol,
    )?;
    Ok(outcome.into())
}

/// Both sides of the block rotation identity, computed independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockIdentityReport {
    /// Direct certified `ω` of the `2n x 2n` block matrix.
    pub omega_block: RadiusEstimate,
    /// `½ sup_θ ||T₁ + e^{iθ}T₂||`.
    pub half_sup: RadiusEstimate,
    /// Enclosures overlap after widening by `slack_tol`.
    pub agree: bool,
}

pub fn block_identity_check(
    t1: &ComplexMatrix,
    t2: &ComplexMatrix,
    cfg: &ToleranceConfig,
) -> Result<BlockIdentityReport> {
    if !t1.is_square() || !t2.is_square() || t1.rows() != t2.rows() {
        return Err(Error::DimensionMismatch(format!(
            "block identity needs two square blocks of equal size, got {}x{} and {}x{}",
            t1.rows(),
            t1.cols(),
            t2.rows(),
            t2.cols()
        )));
    }
    let omega_block = numerical_radius(&offdiag_block(t1, t2)?, cfg)?;
    let half_sup = sup_theta_norm(t1, t2, cfg)?.scaled(0.5);
    let agree = omega_block.overlaps(&half_sup, cfg.slack_tol);
    Ok(BlockIdentityReport {
        omega_block,
        half_sup,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn block_layout() {
        let t1 = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let t2 = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(0.0, 1.0),
                C64::new(5.0, 0.0),
                C64::new(6.0, 0.0),
                C64::new(7.0, 0.0),
            ],
        )
        .unwrap();
        let b = offdiag_block(&t1, &t2).unwrap();
        assert_eq!((b.rows(), b.cols()), (4, 4));
        assert_eq!(b.get(0, 3), C64::new(2.0, 0.0));
        // Lower-left holds T₂*.
        assert_eq!(b.get(2, 0), C64::new(0.0, -1.0));
        assert_eq!(b.get(2, 1), C64::new(6.0, 0.0));
        assert_eq!(b.get(0, 0), C64::new(0.0, 0.0));
        assert_eq!(b.get(3, 3), C64::new(0.0, 0.0));
    }

    #[test]
    fn zero_and_identity_blocks() {
        let z = ComplexMatrix::zeros(2, 2);
        assert!(offdiag_block(&z, &z).unwrap().is_zero());
        let id = ComplexMatrix::identity(2);
        let b = offdiag_block(&id, &id).unwrap();
        let est = numerical_radius(&b, &cfg()).unwrap();
        assert!((est.lower - 1.0).abs() < 1e-14 && (est.upper - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_mismatched_blocks() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(offdiag_block(&a, &b).is_err());
        assert!(offdiag_block(&a, &ComplexMatrix::zeros(2, 3)).is_err());
        assert!(sup_theta_norm(&a, &b, &cfg()).is_err());
        assert!(block_identity_check(&a, &b, &cfg()).is_err());
    }

    #[test]
    fn sup_theta_norm_degenerate_operands() {
        let t = real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let z = ComplexMatrix::zeros(2, 2);
        let norm = operator_norm(&t);
        assert_eq!(
            sup_theta_norm(&t, &z, &cfg()).unwrap(),
            RadiusEstimate::exact(norm, 0.0)
        );
        assert_eq!(
            sup_theta_norm(&z, &t, &cfg()).unwrap(),
            RadiusEstimate::exact(norm, 0.0)
        );
    }

    #[test]
    fn sup_theta_norm_example_pair() {
        let t1 = real(&[&[-3.0, 3.0], &[1.0, 0.0]]);
        let t2 = real(&[&[-1.0, -3.0], &[1.0, 3.0]]);
        let est = sup_theta_norm(&t1, &t2, &cfg()).unwrap();
        assert!(est.converged);
        let half = est.scaled(0.5);
        assert!((half.lower * half.lower - 12.0635).abs() < 5e-5);
        assert!((est.midpoint() - 6.947).abs() < 1e-3);
    }

    #[test]
    fn identity_blocks_agree() {
        let id = ComplexMatrix::identity(2);
        let r = block_identity_check(&id, &id, &cfg()).unwrap();
        assert!(r.agree);
        assert!((r.omega_block.lower - 1.0).abs() < 1e-12);
        assert!((r.half_sup.lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example_pairs_agree() {
        let pairs = [
            (
                real(&[&[-2.0, 0.0], &[0.0, 1.0]]),
                real(&[&[-1.0, 1.0], &[-2.0, 2.0]]),
                5.15604,
            ),
            (
                real(&[&[-3.0, 3.0], &[1.0, 0.0]]),
                real(&[&[-1.0, -3.0], &[1.0, 3.0]]),
                12.0635,
            ),
        ];
        for (t1, t2, printed) in pairs {
            let r = block_identity_check(&t1, &t2, &cfg()).unwrap();
            assert!(r.agree, "{r:?}");
            let tol = if printed < 10.0 { 5e-6 } else { 5e-5 };
            assert!((r.omega_block.upper.powi(2) - printed).abs() < tol);
            assert!((r.half_sup.lower.powi(2) - printed).abs() < tol);
        }
    }
}
