use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::formulas::{cfg, ismail_zhang_terms, th, v1, v2, C};
use crate::error::{QError, Result};
use crate::qcore::{aiq_mirror, eq_small, mirror_factor, qairy_aiq, ramanujan_aq, Base, Eq_big};
use crate::qformal::QDiffOperator;
use crate::qresum::resum_2f0;

/// Named local solutions of the Ramanujan and q-Airy equations, plus the
/// two q-exponentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionId {
    #[serde(rename = "u1")]
    U1,
    #[serde(rename = "u2_resummed")]
    U2Resummed,
    #[serde(rename = "v1")]
    V1,
    #[serde(rename = "v2")]
    V2,
    /// `exp(pi i log x/log q) (T1 - T2)` from the Ismail-Zhang terms.
    #[serde(rename = "v_twisted")]
    VTwisted,
    Aq,
    Aiq,
    #[serde(rename = "Aiq_mirror")]
    AiqMirror,
    #[serde(rename = "eq")]
    EqSmall,
    Eq,
}

impl SolutionId {
    pub const ALL: [SolutionId; 10] = [
        SolutionId::U1,
        SolutionId::U2Resummed,
        SolutionId::V1,
        SolutionId::V2,
        SolutionId::VTwisted,
        SolutionId::Aq,
        SolutionId::Aiq,
        SolutionId::AiqMirror,
        SolutionId::EqSmall,
        SolutionId::Eq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolutionId::U1 => "u1",
            SolutionId::U2Resummed => "u2_resummed",
            SolutionId::V1 => "v1",
            SolutionId::V2 => "v2",
            SolutionId::VTwisted => "v_twisted",
            SolutionId::Aq => "Aq",
            SolutionId::Aiq => "Aiq",
            SolutionId::AiqMirror => "Aiq_mirror",
            SolutionId::EqSmall => "eq",
            SolutionId::Eq => "Eq",
        }
    }

    /// The equation the function is meant to solve, if any.
    pub fn operator(self, base: Base<f64>) -> Option<QDiffOperator<f64>> {
        match self {
            SolutionId::U1
            | SolutionId::U2Resummed
            | SolutionId::V1
            | SolutionId::V2
            | SolutionId::VTwisted
            | SolutionId::Aq => Some(QDiffOperator::ramanujan(base)),
            SolutionId::Aiq | SolutionId::AiqMirror => Some(QDiffOperator::qairy()),
            SolutionId::EqSmall | SolutionId::Eq => None,
        }
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolutionId {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        SolutionId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| QError::InvalidConfig(format!("unknown solution {s:?}")))
    }
}

/// Evaluates a named solution at `x`.
pub fn eval_solution(id: SolutionId, base: Base<f64>, x: C, lambda: Option<C>) -> Result<C> {
    let cfg = cfg();
    let needs_nonzero = !matches!(id, SolutionId::U1 | SolutionId::Aq | SolutionId::Aiq | SolutionId::EqSmall | SolutionId::Eq);
    if needs_nonzero && x.norm() == 0.0 {
        return Err(QError::Domain(format!("{id} needs x != 0")));
    }
    match id {
        SolutionId::U1 | SolutionId::Aq => ramanujan_aq(base, x, &cfg),
        SolutionId::U2Resummed => {
            let lambda = lambda.ok_or_else(|| QError::Domain("u2_resummed needs lambda".into()))?;
            Ok(th(base, x)? * resum_2f0(base, lambda, x)?)
        }
        SolutionId::V1 => v1(base, x),
        SolutionId::V2 => v2(base, x),
        SolutionId::VTwisted => {
            let [t1, t2] = ismail_zhang_terms(base, x)?;
            Ok(mirror_factor(base, x)? * (t1 - t2))
        }
        SolutionId::Aiq => qairy_aiq(base, x, &cfg),
        SolutionId::AiqMirror => aiq_mirror(base, x, &cfg),
        SolutionId::EqSmall => eq_small(base, x, &cfg),
        SolutionId::Eq => Eq_big(base, x, &cfg),
    }
}

/// `sum c x^m u(q^l x)` for a named solution.
pub fn residual(op: &QDiffOperator<f64>, id: SolutionId, base: Base<f64>, x: C, lambda: Option<C>) -> Result<C> {
    op.apply_fn(base, x, |y| eval_solution(id, base, y, lambda))
}

/// Residual divided by the largest individual term.
pub fn relative_residual(op: &QDiffOperator<f64>, id: SolutionId, base: Base<f64>, x: C, lambda: Option<C>) -> Result<f64> {
    let r = residual(op, id, base, x, lambda)?;
    let s = op.residual_scale(base, x, |y| eval_solution(id, base, y, lambda))?;
    Ok(if s > 0.0 { r.norm() / s } else { r.norm() })
}
