//! Catalog of n-tuple operator inequalities and classical comparators.
//!
//! Every entry is evaluated as `lhs <= rhs` with `slack = rhs - lhs`. All
//! quantities are homogeneous of degree two in the operands, so baselines are
//! stated in squared form as well. Notation used in component labels:
//! `S = sum T_k`, `P = sum T_k* T_k`, `M = P + ((n-2)P + S*S)/2`.
//!
//! Numerical radii enter through certified enclosures. A radius on the left
//! side contributes its upper end and a radius on the right side its lower
//! end, so a `holds` verdict is never an artifact of the enclosure width.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::blockops::{antidiagonal_block, offdiag_block};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_norm, operator_norm, operator_norm_squared, psd_eigenvalues, sum_of, ComplexMatrix};
use crate::numradius::numerical_radius;
use crate::tolerance::ToleranceConfig;

/// Operand contract of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Single,
    Pair,
    NTuple,
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arity::Single => "single",
            Arity::Pair => "pair",
            Arity::NTuple => "n-tuple",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B10b,
    B11,
    B11b,
    B12,
    BaseTri,
    Base2W,
    BaseEq11Lo,
    BaseEq11Hi,
    BaseEq12Lo,
    BaseEq12Hi,
    BaseEq15,
}

impl BoundId {
    pub const ALL: [BoundId; 21] = [
        BoundId::B1,
        BoundId::B2,
        BoundId::B3,
        BoundId::B4,
        BoundId::B5,
        BoundId::B6,
        BoundId::B7,
        BoundId::B8,
        BoundId::B9,
        BoundId::B10,
        BoundId::B10b,
        BoundId::B11,
        BoundId::B11b,
        BoundId::B12,
        BoundId::BaseTri,
        BoundId::Base2W,
        BoundId::BaseEq11Lo,
        BoundId::BaseEq11Hi,
        BoundId::BaseEq12Lo,
        BoundId::BaseEq12Hi,
        BoundId::BaseEq15,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::B1 => "B1",
            BoundId::B2 => "B2",
            BoundId::B3 => "B3",
            BoundId::B4 => "B4",
            BoundId::B5 => "B5",
            BoundId::B6 => "B6",
            BoundId::B7 => "B7",
            BoundId::B8 => "B8",
            BoundId::B9 => "B9",
            BoundId::B10 => "B10",
            BoundId::B10b => "B10b",
            BoundId::B11 => "B11",
            BoundId::B11b => "B11b",
            BoundId::B12 => "B12",
            BoundId::BaseTri => "BASE-TRI",
            BoundId::Base2W => "BASE-2W",
            BoundId::BaseEq11Lo => "BASE-EQ11-LO",
            BoundId::BaseEq11Hi => "BASE-EQ11-HI",
            BoundId::BaseEq12Lo => "BASE-EQ12-LO",
            BoundId::BaseEq12Hi => "BASE-EQ12-HI",
            BoundId::BaseEq15 => "BASE-EQ15",
        }
    }

    pub fn arity(self) -> Arity {
        use BoundId::*;
        match self {
            B1 | B4 | B9 | B12 | BaseTri => Arity::NTuple,
            B2 | B5 | B8 | B10 | B10b | B11 | BaseEq15 => Arity::Pair,
            B3 | B6 | B7 | B11b | Base2W | BaseEq11Lo | BaseEq11Hi | BaseEq12Lo | BaseEq12Hi => Arity::Single,
        }
    }

    pub fn is_baseline(self) -> bool {
        self >= BoundId::BaseTri
    }

    /// The inequality in plain notation.
    pub fn formula(self) -> &'static str {
        use BoundId::*;
        match self {
            B1 => "||S||^2 <= ||P|| + w(S*S - P)",
            B2 => "||T1+T2||^2 <= ||T1*T1 + T2*T2|| + 2||Re(T1*T2)||",
            B3 => "||T||^2 <= 1/2 ||TT* + T*T|| + 2||Im(Re(T) Im(T))||",
            B4 => "||S||^2 <= sum_j w(Tj* S)",
            B5 => "||T1+T2||^2 <= w(T1*(T1+T2)) + w(T2*(T1+T2))",
            B6 => "||Re T||^2 <= 1/2 (w(T* Re T) + w(T Re T))",
            B7 => "||T||^2 <= w(Re(T) T) + w(Im(T) T)",
            B8 => "w^2([[O,T1],[T2*,O]]) <= 1/2 (w([[O,T1*T1],[T2*T1,O]]) + w([[O,T2*T2],[T1*T2,O]]))",
            B9 => "||S||^2 <= ||M||",
            B10 => "||T1+T2||^2 <= ||3/2 (|T1|^2 + |T2|^2) + Re(T1*T2)||",
            B10b => "||T1+T2||^2 <= w(3/2 (|T1|^2 + |T2|^2) + T1*T2)",
            B11 => "w^2([[O,T1],[T2*,O]]) <= 1/2 w([[O, 3/2 (|T1|^2 + |T2|^2)],[T2*T1, O]])",
            B11b => "w^2(T) <= 1/2 w([[O, 3/2 (|T|^2 + |T*|^2)],[T^2, O]])",
            B12 => "s_j(S)^2 <= s_j(M) for every j",
            BaseTri => "||S||^2 <= (sum ||T_k||)^2",
            Base2W => "||T||^2 <= (2 w(T))^2",
            BaseEq11Lo => "||T||^2 / 4 <= w^2(T)",
            BaseEq11Hi => "w^2(T) <= ||T||^2",
            BaseEq12Lo => "1/4 |||T|^2 + |T*|^2|| <= w^2(T)",
            BaseEq12Hi => "w^2(T) <= 1/2 |||T|^2 + |T*|^2||",
            BaseEq15 => "w^2([[O,T1],[T2*,O]]) <= ((||T1|| + ||T2||) / 2)^2",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::UnknownBound(key.to_string()))
    }
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound: BoundId,
    /// Singular value index (1-based) for per-index bounds.
    pub index: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// Normalizing scale `s`; `normalized_slack = slack / s^2`.
    pub scale: f64,
    pub normalized_slack: f64,
    pub holds: bool,
    /// Named sub-terms in evaluation order.
    pub components: Vec<(String, f64)>,
}

impl BoundReport {
    /// `B5`, or `B12[2]` for indexed rows.
    pub fn label(&self) -> String {
        match self.index {
            Some(j) => format!("{}[{j}]", self.bound),
            None => self.bound.to_string(),
        }
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }
}

/// Collects components and picks the certificate-safe side of every radius.
struct Terms<'a> {
    cfg: &'a ToleranceConfig,
    components: Vec<(String, f64)>,
}

impl<'a> Terms<'a> {
    fn new(cfg: &'a ToleranceConfig) -> Self {
        Self {
            cfg,
            components: Vec::new(),
        }
    }

    fn push(&mut self, label: &str, value: f64) -> f64 {
        self.components.push((label.to_string(), value));
        value
    }

    /// Radius entering the left side: upper end of the enclosure.
    fn w_lhs(&mut self, label: &str, m: &ComplexMatrix) -> Result<f64> {
        let est = numerical_radius(m, self.cfg)?;
        Ok(self.push(label, est.upper))
    }

    /// Radius entering the right side: lower end of the enclosure.
    fn w_rhs(&mut self, label: &str, m: &ComplexMatrix) -> Result<f64> {
        let est = numerical_radius(m, self.cfg)?;
        Ok(self.push(label, est.lower))
    }

    fn norm(&mut self, label: &str, m: &ComplexMatrix) -> f64 {
        self.push(label, operator_norm(m))
    }

    fn norm_sq(&mut self, label: &str, m: &ComplexMatrix) -> f64 {
        self.push(label, operator_norm_squared(m))
    }

    fn hnorm(&mut self, label: &str, h: &ComplexMatrix) -> Result<f64> {
        Ok(self.push(label, hermitian_norm(h)?))
    }
}

fn check_operands(bound: BoundId, ops: &[ComplexMatrix]) -> Result<()> {
    let ok = match bound.arity() {
        Arity::Single => ops.len() == 1,
        Arity::Pair => ops.len() == 2,
        Arity::NTuple => !ops.is_empty(),
    };
    if !ok {
        let expected = match bound.arity() {
            Arity::Single => "exactly 1",
            Arity::Pair => "exactly 2",
            Arity::NTuple => "at least 1",
        };
        return Err(Error::Arity {
            bound: bound.to_string(),
            expected: expected.to_string(),
            actual: ops.len(),
        });
    }
    check_square_family(ops)
}

fn check_square_family(ops: &[ComplexMatrix]) -> Result<()> {
    let Some(first) = ops.first() else {
        return Err(Error::InvalidArgument("at least one operand is required".into()));
    };
    first.ensure_square()?;
    for (k, op) in ops.iter().enumerate().skip(1) {
        op.ensure_same_shape(first, &format!("operand {}", k + 1))?;
    }
    Ok(())
}

/// `max(||S||, max_k ||T_k||)`, the normalizing scale for slacks.
pub fn operand_scale(ops: &[ComplexMatrix]) -> f64 {
    let s = operator_norm(&sum_of(ops));
    ops.iter().map(operator_norm).fold(s, f64::max)
}

fn finish(bound: BoundId, index: Option<usize>, lhs: f64, rhs: f64, scale: f64, terms: Terms<'_>) -> BoundReport {
    let slack = rhs - lhs;
    let normalized_slack = if scale > 0.0 { slack / (scale * scale) } else { slack };
    BoundReport {
        bound,
        index,
        lhs,
        rhs,
        slack,
        scale,
        normalized_slack,
        holds: normalized_slack >= -terms.cfg.slack_tol,
        components: terms.components,
    }
}

fn gram_sum(ops: &[ComplexMatrix]) -> ComplexMatrix {
    sum_of(&ops.iter().map(ComplexMatrix::gram).collect::<Vec<_>>())
}

/// `M = P + ((n-2)P + S*S) / 2`.
fn m_matrix(ops: &[ComplexMatrix]) -> ComplexMatrix {
    let p = gram_sum(ops);
    let s = sum_of(ops);
    let n = ops.len() as f64;
    &p + &(&p.scale_real(n - 2.0) + &s.gram()).scale_real(0.5)
}

/// Evaluates one catalog entry on `operands`.
///
/// `B12` is reduced to its worst index (smallest normalized slack); the
/// per-index values are kept as components. Use [`singular_value_bounds`] for
/// one report per index.
pub fn evaluate_bound(bound: BoundId, operands: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<BoundReport> {
    cfg.validate()?;
    check_operands(bound, operands)?;
    let scale = operand_scale(operands);
    let mut t = Terms::new(cfg);
    let ops = operands;
    use BoundId::*;
    let (lhs, rhs) = match bound {
        B1 => {
            let s = sum_of(ops);
            let p = gram_sum(ops);
            let lhs = t.norm_sq("||S||^2", &s);
            let a = t.hnorm("||P||", &p)?;
            let b = t.w_rhs("w(S*S - P)", &(&s.gram() - &p))?;
            (lhs, a + b)
        }
        B2 => {
            let (t1, t2) = (&ops[0], &ops[1]);
            let lhs = t.norm_sq("||T1+T2||^2", &(t1 + t2));
            let a = t.hnorm("||T1*T1 + T2*T2||", &(&t1.gram() + &t2.gram()))?;
            let b = t.hnorm("||Re(T1*T2)||", &(&t1.adjoint() * t2).real_part()?)?;
            (lhs, a + 2.0 * b)
        }
        B3 => {
            let x = &ops[0];
            let lhs = t.norm_sq("||T||^2", x);
            let adj = x.adjoint();
            let a = t.hnorm("||TT* + T*T||", &(&(x * &adj) + &(&adj * x)))?;
            let prod = &x.real_part()? * &x.imag_part()?;
            let b = t.hnorm("||Im(Re(T) Im(T))||", &prod.imag_part()?)?;
            (lhs, 0.5 * a + 2.0 * b)
        }
        B4 | B5 => {
            let s = sum_of(ops);
            let lhs = t.norm_sq("||S||^2", &s);
            let mut rhs = 0.0;
            for (j, tj) in ops.iter().enumerate() {
                let label = if bound == B5 {
                    format!("w(T{}*(T1+T2))", j + 1)
                } else {
                    format!("w(T{}* S)", j + 1)
                };
                rhs += t.w_rhs(&label, &(&tj.adjoint() * &s))?;
            }
            (lhs, rhs)
        }
        B6 => {
            let x = &ops[0];
            let re = x.real_part()?;
            let lhs = t.norm_sq("||Re T||^2", &re);
            let a = t.w_rhs("w(T* Re T)", &(&x.adjoint() * &re))?;
            let b = t.w_rhs("w(T Re T)", &(x * &re))?;
            (lhs, 0.5 * (a + b))
        }
        B7 => {
            let x = &ops[0];
            let lhs = t.norm_sq("||T||^2", x);
            let a = t.w_rhs("w(Re(T) T)", &(&x.real_part()? * x))?;
            let b = t.w_rhs("w(Im(T) T)", &(&x.imag_part()? * x))?;
            (lhs, a + b)
        }
        B8 => {
            let (t1, t2) = (&ops[0], &ops[1]);
            let w = t.w_lhs("w([[O,T1],[T2*,O]])", &offdiag_block(t1, t2)?)?;
            let (a1, a2) = (t1.adjoint(), t2.adjoint());
            let a = t.w_rhs(
                "w([[O,T1*T1],[T2*T1,O]])",
                &antidiagonal_block(&t1.gram(), &(&a2 * t1))?,
            )?;
            let b = t.w_rhs(
                "w([[O,T2*T2],[T1*T2,O]])",
                &antidiagonal_block(&t2.gram(), &(&a1 * t2))?,
            )?;
            (w * w, 0.5 * (a + b))
        }
        B9 => {
            let lhs = t.norm_sq("||S||^2", &sum_of(ops));
            let rhs = t.hnorm("||M||", &m_matrix(ops))?;
            (lhs, rhs)
        }
        B10 | B10b => {
            let (t1, t2) = (&ops[0], &ops[1]);
            let lhs = t.norm_sq("||T1+T2||^2", &(t1 + t2));
            let base = (&t1.gram() + &t2.gram()).scale_real(1.5);
            let cross = &t1.adjoint() * t2;
            let rhs = if bound == B10 {
                t.hnorm("||3/2(|T1|^2+|T2|^2) + Re(T1*T2)||", &(&base + &cross.real_part()?))?
            } else {
                t.w_rhs("w(3/2(|T1|^2+|T2|^2) + T1*T2)", &(&base + &cross))?
            };
            (lhs, rhs)
        }
        B11 => {
            let (t1, t2) = (&ops[0], &ops[1]);
            let w = t.w_lhs("w([[O,T1],[T2*,O]])", &offdiag_block(t1, t2)?)?;
            let upper = (&t1.gram() + &t2.gram()).scale_real(1.5);
            let lower = &t2.adjoint() * t1;
            let r = t.w_rhs(
                "w([[O,3/2(|T1|^2+|T2|^2)],[T2*T1,O]])",
                &antidiagonal_block(&upper, &lower)?,
            )?;
            (w * w, 0.5 * r)
        }
        B11b => {
            let x = &ops[0];
            let w = t.w_lhs("w(T)", x)?;
            let adj = x.adjoint();
            let upper = (&(&adj * x) + &(x * &adj)).scale_real(1.5);
            let r = t.w_rhs(
                "w([[O,3/2(|T|^2+|T*|^2)],[T^2,O]])",
                &antidiagonal_block(&upper, &(x * x))?,
            )?;
            (w * w, 0.5 * r)
        }
        B12 => {
            let rows = singular_value_bounds(ops, cfg)?;
            let worst = rows
                .iter()
                .min_by(|a, b| a.normalized_slack.total_cmp(&b.normalized_slack))
                .expect("at least one singular value");
            for r in &rows {
                let j = r.index.expect("indexed row");
                t.push(&format!("s_{j}(S)^2"), r.lhs);
                t.push(&format!("s_{j}(M)"), r.rhs);
            }
            let (lhs, rhs, index) = (worst.lhs, worst.rhs, worst.index);
            return Ok(finish(B12, index, lhs, rhs, scale, t));
        }
        BaseTri => {
            let lhs = t.norm_sq("||S||^2", &sum_of(ops));
            let mut total = 0.0;
            for (k, op) in ops.iter().enumerate() {
                total += t.norm(&format!("||T{}||", k + 1), op);
            }
            (lhs, total * total)
        }
        Base2W => {
            let x = &ops[0];
            let lhs = t.norm_sq("||T||^2", x);
            let w = t.w_rhs("w(T)", x)?;
            (lhs, 4.0 * w * w)
        }
        BaseEq11Lo => {
            let x = &ops[0];
            let n2 = t.norm_sq("||T||^2", x);
            let w = t.w_rhs("w(T)", x)?;
            (0.25 * n2, w * w)
        }
        BaseEq11Hi => {
            let x = &ops[0];
            let w = t.w_lhs("w(T)", x)?;
            let n2 = t.norm_sq("||T||^2", x);
            (w * w, n2)
        }
        BaseEq12Lo | BaseEq12Hi => {
            let x = &ops[0];
            let adj = x.adjoint();
            let k = &(&adj * x) + &(x * &adj);
            if bound == BaseEq12Lo {
                let a = t.hnorm("|||T|^2 + |T*|^2||", &k)?;
                let w = t.w_rhs("w(T)", x)?;
                (0.25 * a, w * w)
            } else {
                let w = t.w_lhs("w(T)", x)?;
                let a = t.hnorm("|||T|^2 + |T*|^2||", &k)?;
                (w * w, 0.5 * a)
            }
        }
        BaseEq15 => {
            let (t1, t2) = (&ops[0], &ops[1]);
            let w = t.w_lhs("w([[O,T1],[T2*,O]])", &offdiag_block(t1, t2)?)?;
            let a = t.norm("||T1||", t1);
            let b = t.norm("||T2||", t2);
            let h = 0.5 * (a + b);
            (w * w, h * h)
        }
    };
    Ok(finish(bound, None, lhs, rhs, scale, t))
}

/// One report per singular value index `j = 1..d`:
/// `lhs = s_j(S)^2`, `rhs = s_j(M)`.
pub fn singular_value_bounds(operands: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<Vec<BoundReport>> {
    cfg.validate()?;
    check_square_family(operands)?;
    let scale = operand_scale(operands);
    let lhs = psd_eigenvalues(&sum_of(operands).gram(), cfg)?;
    // M is a sum of Gram matrices, hence PSD; its singular values are its
    // eigenvalues. A genuinely indefinite M is reported as NotPsd.
    let rhs = psd_eigenvalues(&m_matrix(operands), cfg)?;
    Ok(lhs
        .into_iter()
        .zip(rhs)
        .enumerate()
        .map(|(j, (l, r))| finish(BoundId::B12, Some(j + 1), l, r, scale, Terms::new(cfg)))
        .collect())
}

/// Largest entry of `sum_{k != j} (T_k + T_j)*(T_k + T_j) - 2((n-2)P + S*S)`
/// over ordered pairs; zero up to rounding.
pub fn pairwise_sum_identity_check(operands: &[ComplexMatrix]) -> Result<f64> {
    check_square_family(operands)?;
    let d = operands[0].rows();
    let mut left = ComplexMatrix::zeros(d, d);
    for (k, tk) in operands.iter().enumerate() {
        for (j, tj) in operands.iter().enumerate() {
            if k != j {
                left = &left + &(tk + tj).gram();
            }
        }
    }
    let n = operands.len() as f64;
    let p = gram_sum(operands);
    let right = (&p.scale_real(n - 2.0) + &sum_of(operands).gram()).scale_real(2.0);
    Ok(left.max_abs_diff(&right))
}

/// Bounds evaluated by [`compare_all`] for a tuple of `n` operands; pair
/// entries are included only when `n = 2`.
pub fn comparison_plan(n: usize) -> Vec<BoundId> {
    BoundId::ALL
        .into_iter()
        .filter(|b| b.arity() != Arity::Pair || n == 2)
        .collect()
}

/// Evaluates `bound` on a tuple: single-operand entries receive `S`, pair
/// entries the first two operands and n-tuple entries every operand.
pub fn evaluate_on_tuple(bound: BoundId, operands: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<BoundReport> {
    check_square_family(operands)?;
    match bound.arity() {
        Arity::Single if operands.len() > 1 => evaluate_bound(bound, &[sum_of(operands)], cfg),
        Arity::Pair if operands.len() < 2 => Err(Error::Arity {
            bound: bound.to_string(),
            expected: "at least 2".into(),
            actual: operands.len(),
        }),
        Arity::Pair => evaluate_bound(bound, &operands[..2], cfg),
        _ => evaluate_bound(bound, operands, cfg),
    }
}

/// [`evaluate_on_tuple`] for several bounds; output order follows `bounds`.
pub fn evaluate_many(
    bounds: &[BoundId],
    operands: &[ComplexMatrix],
    cfg: &ToleranceConfig,
) -> Result<Vec<BoundReport>> {
    bounds
        .par_iter()
        .map(|&b| evaluate_on_tuple(b, operands, cfg))
        .collect()
}

/// Full comparison table for one operand tuple, sorted by `rhs` ascending
/// (ties keep catalog order).
pub fn compare_all(operands: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<Vec<BoundReport>> {
    let mut reports = evaluate_many(&comparison_plan(operands.len()), operands, cfg)?;
    reports.sort_by(|a, b| a.rhs.total_cmp(&b.rhs));
    Ok(reports)
}
