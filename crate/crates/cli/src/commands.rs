use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64 as C;

use qstokes::qconnect::formulas::c2_resolved;
use qstokes::qconnect::{
    audit_normalization, identity_exclusions, identity_points, run_suite, verify_identity, AuditTarget, Exclusion,
    IdentityId, Params, PointGenerator, SolutionId, SuiteConfig,
};
use qstokes::qconnect::points::EXCLUSION_MARGIN;
use qstokes::qconnect::suite::DEFAULT_SEED;
use qstokes::qcore::{phi, theta, Base, EvalConfig, HyperSpec};
use qstokes::qresum::{resum_2f0_detailed, resum_rf0_detailed};
use qstokes::report::pair;
use qstokes::QError;

use crate::args::{parse_complex_list, Format, Opts};
use crate::output::{csv_row, io_err, json_line, sink, ResumRecord, ValueRecord, CSV_HEADER};
use crate::CliError;

/// Function selectors accepted by `eval` and `scan`.
enum Func {
    Theta,
    Phi(HyperSpec<f64>),
    Solution(SolutionId),
    Resum2f0,
    ResumRf0(u32),
    C21,
    C22,
}

impl Func {
    fn parse(opts: &Opts, base: Base<f64>) -> Result<(String, Self), CliError> {
        let name = opts.function.clone().ok_or_else(|| CliError::Usage("missing --fn".into()))?;
        let f = match name.as_str() {
            "theta" => Func::Theta,
            "phi" => {
                let upper = parse_complex_list(opts.upper.as_deref().unwrap_or(""))?;
                let lower = parse_complex_list(opts.lower.as_deref().unwrap_or(""))?;
                Func::Phi(HyperSpec::new(upper, lower, base)?)
            }
            "resum_2f0" => Func::Resum2f0,
            "resum_rf0" => Func::ResumRf0(opts.r.ok_or_else(|| CliError::Usage("resum_rf0 needs --r".into()))?),
            "c21" => Func::C21,
            "c22" => Func::C22,
            other => Func::Solution(SolutionId::from_str(other).map_err(|_| {
                CliError::Usage(format!(
                    "unknown function {other:?}; expected one of theta, phi, resum_2f0, resum_rf0, c21, c22, {}",
                    SolutionId::ALL.map(|s| s.name()).join(", ")
                ))
            })?),
        };
        Ok((name, f))
    }

    fn needs_lambda(&self) -> bool {
        matches!(
            self,
            Func::Resum2f0 | Func::ResumRf0(_) | Func::C21 | Func::C22 | Func::Solution(SolutionId::U2Resummed)
        )
    }

    fn exclusions(&self, q: C, lambda: Option<C>) -> Vec<Exclusion> {
        let lam = lambda.unwrap_or(C::new(1.0, 0.0));
        match self {
            Func::Solution(SolutionId::EqSmall) => vec![Exclusion::new(C::new(1.0, 0.0), q)],
            Func::Resum2f0 | Func::C21 | Func::C22 | Func::Solution(SolutionId::U2Resummed) => {
                vec![Exclusion::new(-lam, q)]
            }
            Func::ResumRf0(r) => vec![Exclusion::new(-lam, q.powi(*r as i32 - 1))],
            _ => vec![],
        }
    }

    fn eval(&self, base: Base<f64>, x: C, lambda: Option<C>) -> Result<C, QError> {
        let cfg = EvalConfig::default();
        let lam = || lambda.ok_or_else(|| QError::Domain("lambda is required".into()));
        match self {
            Func::Theta => theta(base, x, &cfg),
            Func::Phi(spec) => phi(spec, x, &cfg),
            Func::Solution(id) => qstokes::qconnect::eval_solution(*id, base, x, lambda),
            Func::Resum2f0 => Ok(resum_2f0_detailed(base, lam()?, x)?.value),
            Func::ResumRf0(r) => Ok(resum_rf0_detailed(*r, base, lam()?, x)?.value),
            Func::C21 => Ok(c2_resolved(base, lam()?, x)?[0]),
            Func::C22 => Ok(c2_resolved(base, lam()?, x)?[1]),
        }
    }
}

fn base(opts: &Opts) -> Result<(C, Base<f64>), CliError> {
    let q = opts.q()?;
    Ok((q, Base::new(q)?))
}

fn need_points(opts: &Opts) -> Result<Vec<C>, CliError> {
    opts.xs()?.ok_or_else(|| CliError::Usage("give --x or --grid".into()))
}

pub fn eval(opts: &Opts) -> Result<(), CliError> {
    let (q, base) = base(opts)?;
    let (name, f) = Func::parse(opts, base)?;
    let lambda = if f.needs_lambda() { Some(opts.need_lambda(&name)?) } else { opts.lambda()? };
    let xs = need_points(opts)?;
    let mut out = sink(opts)?;
    let csv = opts.format(Format::Json) == Format::Csv;
    if csv {
        writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    }
    for x in xs {
        let v = f
            .eval(base, x, lambda)
            .map_err(|e| CliError::Usage(format!("{name} at x = {x}: {e}")))?;
        if csv {
            csv_row(&mut *out, pair(x), Some(pair(v)), "ok")?;
        } else {
            let rec = ValueRecord { function: name.clone(), q: pair(q), lambda: lambda.map(pair), x: pair(x), value: pair(v) };
            json_line(&mut *out, &rec)?;
        }
    }
    out.flush().map_err(io_err)
}

pub fn resum(opts: &Opts) -> Result<(), CliError> {
    let (q, base) = base(opts)?;
    let lambda = opts.need_lambda("resum")?;
    let xs = need_points(opts)?;
    let mut out = sink(opts)?;
    for x in xs {
        let (function, s) = match opts.r {
            None => ("resum_2f0", resum_2f0_detailed(base, lambda, x)),
            Some(r) => ("resum_rf0", resum_rf0_detailed(r, base, lambda, x)),
        };
        let s = s.map_err(|e| CliError::Usage(format!("{function} at x = {x}: {e}")))?;
        let rec = ResumRecord {
            function: function.into(),
            r: opts.r,
            q: pair(q),
            lambda: pair(lambda),
            x: pair(x),
            value: pair(s.value),
            window: s.window,
            tail: s.tail,
        };
        json_line(&mut *out, &rec)?;
    }
    out.flush().map_err(io_err)
}

fn excluded(ex: &[Exclusion], x: C) -> bool {
    ex.iter().any(|e| e.distance(x) < EXCLUSION_MARGIN)
}

pub fn verify(opts: &Opts) -> Result<(), CliError> {
    let (q, base) = base(opts)?;
    let name = opts.id.as_deref().ok_or_else(|| CliError::Usage("missing --id".into()))?;
    let id = IdentityId::from_str(name)?;
    let lambda = if id.needs_lambda() { Some(opts.need_lambda(name)?) } else { None };
    let ex = identity_exclusions(id, q, lambda);
    // an explicit single point is checked as given; grids skip excluded points
    let (xs, strict) = match opts.xs()? {
        Some(xs) => {
            let single = opts.x.is_some();
            (xs, single)
        }
        None => {
            let mut gen = PointGenerator::new(opts.seed.unwrap_or(DEFAULT_SEED));
            (identity_points(id, q, lambda, &mut gen, opts.points.unwrap_or(20)), false)
        }
    };
    let mut out = sink(opts)?;
    let (mut total, mut failed) = (0usize, 0usize);
    for x in xs {
        if !strict && excluded(&ex, x) {
            eprintln!("qstokes: skipping excluded point x = {x}");
            continue;
        }
        let p = Params { x, lambda };
        let report = match verify_identity(id, base, &p, opts.tol) {
            Ok(r) => r,
            Err(e) if strict => return Err(CliError::Usage(format!("{id} at x = {x}: {e}"))),
            Err(e) if e.is_domain() => {
                eprintln!("qstokes: skipping x = {x}: {e}");
                continue;
            }
            Err(e) => {
                eprintln!("qstokes: {id} at x = {x}: {e}");
                total += 1;
                failed += 1;
                continue;
            }
        };
        total += 1;
        failed += (!report.pass) as usize;
        json_line(&mut *out, &report)?;
    }
    out.flush().map_err(io_err)?;
    if total == 0 {
        return Err(CliError::Usage("no admissible points".into()));
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {total} reports failed for {id}")));
    }
    Ok(())
}

pub fn audit(opts: &Opts) -> Result<(), CliError> {
    let (q, base) = base(opts)?;
    let name = opts.id.as_deref().ok_or_else(|| CliError::Usage("missing --id".into()))?;
    let target = AuditTarget::parse(name)?;
    let id = match target {
        AuditTarget::TwoFZero | AuditTarget::TwoFZeroPerturbed => IdentityId::TwoFZero,
        AuditTarget::MainMatrixRow1 => IdentityId::MainMatrixRow1,
        AuditTarget::MainMatrixRow2 => IdentityId::MainMatrixRow2,
        AuditTarget::LevelR(r) => IdentityId::LevelR(r),
        AuditTarget::QexpPair => IdentityId::QexpPair,
    };
    let lambda = if id.needs_lambda() { opts.need_lambda(name)? } else { opts.lambda()?.unwrap_or(C::new(1.0, 0.0)) };
    let samples = match opts.xs()? {
        Some(xs) => xs,
        None => {
            let mut gen = PointGenerator::new(opts.seed.unwrap_or(DEFAULT_SEED));
            identity_points(id, q, Some(lambda), &mut gen, opts.points.unwrap_or(8))
        }
    };
    let report = audit_normalization(target, base, lambda, &samples)?;
    let mut out = sink(opts)?;
    let s = serde_json::to_string_pretty(&report).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)?;
    out.flush().map_err(io_err)?;
    if report.matching_families.is_empty() {
        return Err(CliError::Failed(format!("no normalization of {} matches", target.name())));
    }
    Ok(())
}

pub fn scan(opts: &Opts) -> Result<(), CliError> {
    let (q, base) = base(opts)?;
    let (name, f) = Func::parse(opts, base)?;
    let lambda = if f.needs_lambda() { Some(opts.need_lambda(&name)?) } else { opts.lambda()? };
    let grid = opts.grid.as_deref().ok_or_else(|| CliError::Usage("scan needs --grid".into()))?;
    let xs = crate::args::Grid::parse(grid)?.points();
    let ex = f.exclusions(q, lambda);
    let mut out = sink(opts)?;
    let csv = opts.format(Format::Csv) == Format::Csv;
    if csv {
        writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    }
    for x in xs {
        let (value, status) = if excluded(&ex, x) {
            (None, "excluded")
        } else {
            match f.eval(base, x, lambda) {
                Ok(v) => (Some(v), "ok"),
                Err(e) if e.is_domain() => (None, "excluded"),
                Err(e) => {
                    eprintln!("qstokes: {name} at x = {x}: {e}");
                    (None, "error")
                }
            }
        };
        if csv {
            csv_row(&mut *out, pair(x), value.map(pair), status)?;
        } else {
            let v = serde_json::json!({
                "function": name,
                "q": pair(q),
                "lambda": lambda.map(pair),
                "x": pair(x),
                "value": value.map(pair),
                "status": status,
            });
            json_line(&mut *out, &v)?;
        }
    }
    out.flush().map_err(io_err)
}

pub fn suite(opts: &Opts) -> Result<(), CliError> {
    let q = match &opts.q {
        Some(_) => opts.q()?,
        None => C::new(0.5, 0.0),
    };
    let mut cfg = SuiteConfig::new(q);
    cfg.tol = opts.tol;
    cfg.seed = opts.seed.unwrap_or(DEFAULT_SEED);
    if let Some(n) = opts.points {
        cfg.points = n;
    }
    if let Some(l) = opts.lambda()? {
        cfg.lambdas = vec![l];
    }
    let summary = run_suite(&cfg)?;
    let mut out = sink(opts)?;
    let s = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)?;
    out.flush().map_err(io_err)?;
    if !summary.all_pass {
        let bad: Vec<String> = summary
            .families
            .iter()
            .filter(|f| f.passed < f.total)
            .map(|f| format!("{} ({}/{})", f.identity_id, f.passed, f.total))
            .collect();
        return Err(CliError::Failed(format!("failing families: {}", bad.join(", "))));
    }
    Ok(())
}
