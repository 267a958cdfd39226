//! The full verification battery over seeded point sets.

use serde::{Deserialize, Serialize};

use super::checks::{ellipticity_check, Coefficient};
use super::formulas::{c, C};
use super::identities::{verify_identity, IdentityId, Params};
use super::points::{theta_zero_spiral, Exclusion, PointGenerator};
use super::solutions::{relative_residual, SolutionId};
use crate::error::{QError, Result};
use crate::qcore::Base;
use crate::report::{pair, Pair, VerificationReport};

/// Largest `|q|` accepted by the suite.
pub const MAX_SUITE_Q: f64 = 0.75;
pub const DEFAULT_SEED: u64 = 20240501;
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub q: C,
    /// Overrides every per-identity tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub points: usize,
    pub lambdas: Vec<C>,
}

impl SuiteConfig {
    pub fn new(q: C) -> Self {
        Self {
            q,
            tol: None,
            seed: DEFAULT_SEED,
            points: 20,
            lambdas: vec![c(0.9), C::new(0.0, 1.3)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub identity_id: String,
    pub total: usize,
    pub passed: usize,
    pub errors: usize,
    pub worst_rel_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub q: Pair,
    pub seed: u64,
    pub families: Vec<FamilySummary>,
    pub all_pass: bool,
    #[serde(skip)]
    pub reports: Vec<VerificationReport>,
}

fn failed(id: &str, q: C, lambda: Option<C>, x: C, tol: f64, err: &QError) -> VerificationReport {
    let mut r = VerificationReport::from_deviation(id, q, f64::INFINITY, tol).with_meta("error", err);
    r.lambda = lambda.map(pair);
    r.x = Some(pair(x));
    r
}

/// Identity families run by the suite, in order.
pub fn suite_identities() -> Vec<IdentityId> {
    vec![
        IdentityId::QexpPair,
        IdentityId::QexpInverse,
        IdentityId::EqVsEq,
        IdentityId::EqAlternate,
        IdentityId::EqRsplit(2),
        IdentityId::EqRsplit(3),
        IdentityId::EqRsplit(4),
        IdentityId::IsmailZhang,
        IdentityId::RamQairy,
        IdentityId::TwoFZero,
        IdentityId::MainMatrixRow1,
        IdentityId::MainMatrixRow2,
        IdentityId::LevelR(2),
        IdentityId::LevelR(3),
        IdentityId::LevelR(4),
    ]
}

/// Spirals and zero sets an identity's sample points must avoid.
pub fn identity_exclusions(id: IdentityId, q: C, lambda: Option<C>) -> Vec<Exclusion> {
    let lam = lambda.unwrap_or(c(1.0));
    match id {
        IdentityId::QexpPair | IdentityId::QexpInverse | IdentityId::IsmailZhang | IdentityId::RamQairy => vec![],
        IdentityId::EqVsEq | IdentityId::EqAlternate | IdentityId::EqRsplit(_) => vec![Exclusion::new(c(1.0), q)],
        IdentityId::TwoFZero => vec![Exclusion::new(-lam, q)],
        IdentityId::MainMatrixRow1 => vec![theta_zero_spiral(q)],
        IdentityId::MainMatrixRow2 => vec![theta_zero_spiral(q), Exclusion::new(-lam, q)],
        IdentityId::LevelR(r) => vec![Exclusion::new(-lam, q.powi(r as i32 - 1))],
    }
}

/// Sample points for an identity, away from its excluded spirals.
pub fn identity_points(id: IdentityId, q: C, lambda: Option<C>, gen: &mut PointGenerator, n: usize) -> Vec<C> {
    let ex = identity_exclusions(id, q, lambda);
    match id {
        IdentityId::QexpPair => gen.annulus(n, 0.2, 0.95, &ex),
        _ => gen.annulus(n, 0.2, 5.0, &ex),
    }
}

fn summarize(reports: &[VerificationReport]) -> Vec<FamilySummary> {
    let mut out: Vec<FamilySummary> = Vec::new();
    for r in reports {
        let pos = match out.iter().position(|f| f.identity_id == r.identity_id) {
            Some(p) => p,
            None => {
                out.push(FamilySummary {
                    identity_id: r.identity_id.clone(),
                    total: 0,
                    passed: 0,
                    errors: 0,
                    worst_rel_err: 0.0,
                });
                out.len() - 1
            }
        };
        let f = &mut out[pos];
        f.total += 1;
        f.passed += r.pass as usize;
        f.errors += r.metadata.contains_key("error") as usize;
        f.worst_rel_err = f.worst_rel_err.max(r.rel_err);
    }
    out
}

/// Runs every identity, residual and ellipticity family.
///
/// Fails with a domain error when `|q|` exceeds [`MAX_SUITE_Q`].
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    if cfg.q.norm() > MAX_SUITE_Q {
        return Err(QError::Domain(format!(
            "suite precision domain requires |q| <= {MAX_SUITE_Q}, got |q| = {}",
            cfg.q.norm()
        )));
    }
    if cfg.points == 0 {
        return Err(QError::InvalidConfig("suite needs at least one point per family".into()));
    }
    let base = Base::new(cfg.q)?;
    let q = cfg.q;
    let mut gen = PointGenerator::new(cfg.seed);
    let mut reports = Vec::new();

    for id in suite_identities() {
        let lambdas: Vec<Option<C>> = if id.needs_lambda() {
            cfg.lambdas.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let per = if lambdas.len() > 1 { cfg.points.div_ceil(lambdas.len()) } else { cfg.points };
        for lambda in lambdas {
            for x in identity_points(id, q, lambda, &mut gen, per) {
                let p = Params { x, lambda };
                let tol = cfg.tol.unwrap_or_else(|| id.default_tol());
                reports.push(match verify_identity(id, base, &p, Some(tol)) {
                    Ok(r) => r,
                    Err(e) => failed(&id.name(), q, lambda, x, tol, &e),
                });
            }
        }
    }

    let residual_ids = [
        (SolutionId::U1, None),
        (SolutionId::U2Resummed, cfg.lambdas.first().copied()),
        (SolutionId::VTwisted, None),
        (SolutionId::Aiq, None),
        (SolutionId::AiqMirror, None),
    ];
    let tol = cfg.tol.unwrap_or(RESIDUAL_TOL);
    for (id, lambda) in residual_ids {
        let name = format!("residual_{}", id.name());
        let mut ex = vec![theta_zero_spiral(q)];
        if let Some(l) = lambda {
            ex.push(Exclusion::new(-l, q));
        }
        let xs = if matches!(id, SolutionId::VTwisted | SolutionId::AiqMirror) {
            // keep log(q^k x) = k log q + log x on the principal branch for k <= 2
            let max_arg = 0.9 * (std::f64::consts::PI - 2.0 * q.arg().abs());
            if max_arg < 0.05 {
                continue;
            }
            gen.sector(cfg.points, 0.2, 5.0, max_arg, &ex)
        } else {
            gen.annulus(cfg.points, 0.2, 5.0, &ex)
        };
        for x in xs {
            let op = id.operator(base).expect("residual families have an equation");
            let r = match relative_residual(&op, id, base, x, lambda) {
                Ok(dev) => {
                    let mut r = VerificationReport::from_deviation(name.clone(), q, dev, tol);
                    r.x = Some(pair(x));
                    r.lambda = lambda.map(pair);
                    r
                }
                Err(e) => failed(&name, q, lambda, x, tol, &e),
            };
            reports.push(r);
        }
    }

    let tol = cfg.tol.unwrap_or(super::checks::ELLIPTICITY_TOL);
    for coef in [Coefficient::C11, Coefficient::C12] {
        let xs = gen.annulus(cfg.points.min(10), 0.2, 5.0, &[theta_zero_spiral(q)]);
        for x in xs {
            reports.push(match ellipticity_check(coef, base, x) {
                Ok(mut r) => {
                    r.tol = tol;
                    r.pass = r.rel_err <= tol;
                    r
                }
                Err(e) => failed(&format!("ellipticity_{}", coef.name()), q, None, x, tol, &e),
            });
        }
    }

    let families = summarize(&reports);
    let all_pass = reports.iter().all(|r| r.pass);
    Ok(SuiteSummary { q: pair(q), seed: cfg.seed, families, all_pass, reports })
}
