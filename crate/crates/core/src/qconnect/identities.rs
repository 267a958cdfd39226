use std::fmt;
use std::str::FromStr;

use super::formulas::{
    c, c1_printed, c2_resolved, cfg, eq_alternate_rhs, eq_rsplit_rhs, eq_via_big, ismail_zhang_terms,
    level_r_terms, ram_qairy_rhs, th, two_f_zero_terms, v1, v2, LevelReading, C,
};
use crate::error::{QError, Result, ResultExt};
use crate::qcore::{eq_inverse_base_series, eq_series, eq_small, ramanujan_aq, Base, Eq_big};
use crate::qresum::{resum_2f0_detailed, resum_rf0_detailed};
use crate::report::VerificationReport;

/// Identities that can be checked pointwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `e_q(x) E_q(-x) = 1`.
    QexpPair,
    /// `e_{1/q}(x) = E_q(-qx)`.
    QexpInverse,
    /// `e_q(x) = (q;q)_inf / theta_q(-x) E_q(-q/x)`.
    EqVsEq,
    /// Two `0phi1` representation of `e_q(x/q)`.
    EqAlternate,
    /// `r`-fold split of `e_q(x)`.
    EqRsplit(u32),
    /// Resummed `2phi0` against its theta / `1phi1` expansion.
    TwoFZero,
    /// `u1 = C11 v1 + C12 v2` with the printed coefficients.
    MainMatrixRow1,
    /// `u2~ = C~21 v1 + C~22 v2` with the resolved coefficients.
    MainMatrixRow2,
    IsmailZhang,
    /// `A_{q^2}(-q^3/x^2)` against `Ai_q(+-x)`.
    RamQairy,
    /// Level `r-1` resummation against the rederived closed form.
    LevelR(u32),
}

impl IdentityId {
    pub fn name(&self) -> String {
        match self {
            IdentityId::QexpPair => "qexp_pair".into(),
            IdentityId::QexpInverse => "qexp_inverse".into(),
            IdentityId::EqVsEq => "eq_vs_Eq".into(),
            IdentityId::EqAlternate => "eq_alternate".into(),
            IdentityId::EqRsplit(r) => format!("eq_rsplit({r})"),
            IdentityId::TwoFZero => "two_f_zero".into(),
            IdentityId::MainMatrixRow1 => "main_matrix_row1".into(),
            IdentityId::MainMatrixRow2 => "main_matrix_row2".into(),
            IdentityId::IsmailZhang => "ismail_zhang".into(),
            IdentityId::RamQairy => "ram_qairy".into(),
            IdentityId::LevelR(r) => format!("level_r({r})"),
        }
    }

    /// Default relative tolerance.
    pub fn default_tol(&self) -> f64 {
        match self {
            IdentityId::QexpPair | IdentityId::QexpInverse => 1e-10,
            IdentityId::TwoFZero | IdentityId::MainMatrixRow2 | IdentityId::LevelR(_) => 1e-8,
            _ => 1e-9,
        }
    }

    pub fn needs_lambda(&self) -> bool {
        matches!(self, IdentityId::TwoFZero | IdentityId::MainMatrixRow2 | IdentityId::LevelR(_))
    }
}

impl IdentityId {
    /// `r` from `level_r(r)` or `level_r:r`.
    pub fn from_str_level(s: &str) -> Option<u32> {
        parse_r(s, "level_r").filter(|r| (2..=8).contains(r))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn parse_r(s: &str, prefix: &str) -> Option<u32> {
    let rest = s.strip_prefix(prefix)?;
    let rest = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix(':'))?;
    rest.parse().ok()
}

impl FromStr for IdentityId {
    type Err = QError;

    /// Accepts the names of [`IdentityId::name`]; `eq_rsplit:3` and
    /// `level_r:3` work as well.
    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "qexp_pair" => IdentityId::QexpPair,
            "qexp_inverse" => IdentityId::QexpInverse,
            "eq_vs_Eq" => IdentityId::EqVsEq,
            "eq_alternate" => IdentityId::EqAlternate,
            "two_f_zero" => IdentityId::TwoFZero,
            "main_matrix_row1" => IdentityId::MainMatrixRow1,
            "main_matrix_row2" => IdentityId::MainMatrixRow2,
            "ismail_zhang" => IdentityId::IsmailZhang,
            "ram_qairy" => IdentityId::RamQairy,
            _ => {
                if let Some(r) = parse_r(s, "eq_rsplit") {
                    IdentityId::EqRsplit(r)
                } else if let Some(r) = parse_r(s, "level_r") {
                    IdentityId::LevelR(r)
                } else {
                    return Err(QError::InvalidConfig(format!("unknown identity {s:?}")));
                }
            }
        };
        match id {
            IdentityId::EqRsplit(r) | IdentityId::LevelR(r) if !(2..=8).contains(&r) => {
                Err(QError::InvalidConfig(format!("{s}: r must lie in 2..=8")))
            }
            _ => Ok(id),
        }
    }
}

/// Evaluation point of an identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub x: C,
    pub lambda: Option<C>,
}

impl Params {
    pub fn at(x: C) -> Self {
        Self { x, lambda: None }
    }

    pub fn with_lambda(x: C, lambda: C) -> Self {
        Self { x, lambda: Some(lambda) }
    }

    fn lambda(&self, id: &IdentityId) -> Result<C> {
        self.lambda
            .ok_or_else(|| QError::Domain(format!("{id} needs lambda")))
    }
}

fn sum(v: &[C]) -> C {
    v.iter().sum()
}

/// Both sides of an identity, computed by independent paths, plus metadata.
pub fn identity_sides(id: IdentityId, base: Base<f64>, p: &Params) -> Result<(C, C, Vec<(&'static str, String)>)> {
    let x = p.x;
    let cfg = cfg();
    if x.norm() == 0.0 {
        return Err(QError::Domain(format!("{id} needs x != 0")));
    }
    let mut meta = Vec::new();
    let (lhs, rhs) = match id {
        IdentityId::QexpPair => {
            let e = if x.norm() < 1.0 {
                meta.push(("e_q", "series".to_string()));
                eq_series(base, x, &cfg)?
            } else {
                meta.push(("e_q", "product".to_string()));
                eq_small(base, x, &cfg)?
            };
            (e * Eq_big(base, -x, &cfg)?, c(1.0))
        }
        IdentityId::QexpInverse => (
            eq_inverse_base_series(base, x, &cfg)?,
            Eq_big(base, -base.q() * x, &cfg)?,
        ),
        IdentityId::EqVsEq => (eq_small(base, x, &cfg).ctx("e_q(x)")?, eq_via_big(base, x)?),
        IdentityId::EqAlternate => (
            eq_small(base, x / base.q(), &cfg).ctx("e_q(x/q)")?,
            eq_alternate_rhs(base, x)?,
        ),
        IdentityId::EqRsplit(r) => (eq_small(base, x, &cfg).ctx("e_q(x)")?, eq_rsplit_rhs(base, r, x)?),
        IdentityId::TwoFZero => {
            let lambda = p.lambda(&id)?;
            let s = resum_2f0_detailed(base, lambda, x).ctx("resummed 2phi0")?;
            meta.push(("window", s.window.to_string()));
            (th(base, x)? * s.value, sum(&two_f_zero_terms(base, lambda, x)?))
        }
        IdentityId::MainMatrixRow1 => {
            meta.push(("coefficients", "printed".to_string()));
            let [c11, c12] = c1_printed(base, x)?;
            (ramanujan_aq(base, x, &cfg)?, c11 * v1(base, x)? + c12 * v2(base, x)?)
        }
        IdentityId::MainMatrixRow2 => {
            let lambda = p.lambda(&id)?;
            meta.push(("coefficients", "audit_resolved".to_string()));
            let s = resum_2f0_detailed(base, lambda, x).ctx("resummed 2phi0")?;
            meta.push(("window", s.window.to_string()));
            let [c21, c22] = c2_resolved(base, lambda, x)?;
            (th(base, x)? * s.value, c21 * v1(base, x)? + c22 * v2(base, x)?)
        }
        IdentityId::IsmailZhang => (ramanujan_aq(base, x, &cfg)?, sum(&ismail_zhang_terms(base, x)?)),
        IdentityId::RamQairy => {
            meta.push(("theta", "theta_q".to_string()));
            let b2 = base.squared();
            (ramanujan_aq(b2, -base.q().powi(3) / (x * x), &cfg)?, ram_qairy_rhs(base, x)?)
        }
        IdentityId::LevelR(r) => {
            let lambda = p.lambda(&id)?;
            let s = resum_rf0_detailed(r, base, lambda, x).ctx("level r-1 resummation")?;
            meta.push(("window", s.window.to_string()));
            meta.push(("reading", LevelReading::Rederived.name().to_string()));
            (s.value, sum(&level_r_terms(base, r, lambda, x, LevelReading::Rederived)?))
        }
    };
    Ok((lhs, rhs, meta))
}

/// Checks one identity at one point. `tol` defaults to
/// [`IdentityId::default_tol`].
pub fn verify_identity(id: IdentityId, base: Base<f64>, p: &Params, tol: Option<f64>) -> Result<VerificationReport> {
    let (lhs, rhs, meta) = identity_sides(id, base, p).map_err(|e| e.context(id.name()))?;
    let tol = tol.unwrap_or_else(|| id.default_tol());
    let mut r = VerificationReport::new(id.name(), base.q(), p.lambda, Some(p.x), lhs, rhs, tol);
    for (k, v) in meta {
        r = r.with_meta(k, v);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(q: f64) -> Base<f64> {
        Base::real(q).unwrap()
    }

    #[test]
    fn parse_names() {
        for id in [
            IdentityId::QexpPair,
            IdentityId::EqRsplit(3),
            IdentityId::LevelR(4),
            IdentityId::MainMatrixRow2,
            IdentityId::EqVsEq,
        ] {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("eq_rsplit:2".parse::<IdentityId>().unwrap(), IdentityId::EqRsplit(2));
        assert!("level_r(1)".parse::<IdentityId>().is_err());
        assert!("nope".parse::<IdentityId>().is_err());
    }

    #[test]
    fn spec_examples() {
        let r = verify_identity(IdentityId::QexpPair, b(0.5), &Params::at(c(0.3)), Some(1e-12)).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_identity(IdentityId::RamQairy, b(0.4), &Params::at(c(1.1)), None).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_identity(IdentityId::TwoFZero, b(0.4), &Params::with_lambda(c(1.3), c(0.9)), None).unwrap();
        assert!(r.pass, "{r:?}");
        let e = verify_identity(IdentityId::TwoFZero, b(0.4), &Params::with_lambda(c(-0.9), c(0.9)), None).unwrap_err();
        assert!(e.is_domain());
    }

    #[test]
    fn q_exponential_identities() {
        let x = C::new(0.8, 1.7);
        for id in [IdentityId::EqVsEq, IdentityId::EqAlternate, IdentityId::EqRsplit(2), IdentityId::EqRsplit(3), IdentityId::EqRsplit(4), IdentityId::QexpInverse] {
            let r = verify_identity(id, b(0.5), &Params::at(x), None).unwrap();
            assert!(r.pass, "{r:?}");
        }
        // rsplit(2) at x/q is the alternate form at x
        let bq = b(0.5);
        let a = eq_rsplit_rhs(bq, 2, x / bq.q()).unwrap();
        let z = eq_alternate_rhs(bq, x).unwrap();
        assert!((a - z).norm() / z.norm() < 1e-12);
    }

    #[test]
    fn row_one_as_printed_fails_and_ismail_zhang_holds() {
        let x = C::new(0.7, 0.3);
        let r = verify_identity(IdentityId::MainMatrixRow1, b(0.4), &Params::at(x), None).unwrap();
        assert!(!r.pass);
        assert!(r.rel_err > 0.1);
        let r = verify_identity(IdentityId::IsmailZhang, b(0.4), &Params::at(x), None).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn row_two_and_level_r() {
        let x = C::new(1.3, 0.4);
        let r = verify_identity(IdentityId::MainMatrixRow2, b(0.4), &Params::with_lambda(x, C::new(0.0, 1.3)), None).unwrap();
        assert!(r.pass, "{r:?}");
        for rr in 2..=4 {
            let r = verify_identity(IdentityId::LevelR(rr), b(0.5), &Params::with_lambda(C::new(0.6, 0.2), c(1.1)), None).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
