//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use qstokes::qconnect::formulas::{eq_alternate_rhs, eq_rsplit_rhs};
use qstokes::qconnect::{
    audit_normalization, ellipticity_check, identity_points, relative_residual, stokes_witness, verify_identity,
    AuditTarget, Coefficient, IdentityId, Params, PointGenerator, SolutionId,
};
use qstokes::qcore::{ramanujan_aq, theta, theta_bilateral, theta_product, Base, EvalConfig};
use qstokes::qformal::{check_operational_identity, qborel_minus, qborel_plus, FormalPowerSeries};
use qstokes::qresum::{
    qairy_closed_form, qairy_kernel, qlaplace_contour, qlaplace_spiral, qlaplace_spiral_adaptive,
    residue_laplace_qairy, resum_2f0, resum_2f0_detailed, resum_rf0, resum_rf0_detailed, rf0_sign, Contour, Spiral,
};
use qstokes::scalar::{cpow, rel_err};
use qstokes::{qcore::eq_small, qconnect::formulas::ram_qairy_rhs, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn bases() -> Vec<Base<f64>> {
    [c(0.3, 0.0), c(0.5, 0.0), c(0.7, 0.0), C64::from_polar(0.5, PI / 7.0)]
        .into_iter()
        .map(|q| Base::new(q).unwrap())
        .collect()
}

/// Running worst error of a criterion; any evaluation error is a failure.
struct Gate {
    worst: f64,
    errors: Vec<String>,
    checks: usize,
}

impl Gate {
    fn new() -> Self {
        Self { worst: 0.0, errors: Vec::new(), checks: 0 }
    }

    fn err(&mut self, v: qstokes::Result<f64>) {
        self.checks += 1;
        match v {
            Ok(e) if e.is_nan() => self.errors.push("NaN".into()),
            Ok(e) => self.worst = self.worst.max(e),
            Err(e) => self.errors.push(e.to_string()),
        }
    }

    fn ok(&self, tol: f64) -> bool {
        self.errors.is_empty() && self.worst < tol
    }

    fn detail(&self) -> String {
        let mut s = format!("{} checks, worst {:.2e}", self.checks, self.worst);
        if let Some(e) = self.errors.first() {
            s += &format!(", {} errors, first: {e}", self.errors.len());
        }
        s
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, rmin: f64, rmax: f64) -> Vec<C64> {
    (0..n)
        .map(|_| C64::from_polar(rng.gen_range(rmin.ln()..rmax.ln()).exp(), rng.gen_range(-PI..PI)))
        .collect()
}

fn theta_consistency() -> (bool, String) {
    let cfg = EvalConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut g = Gate::new();
    for b in bases() {
        let q = b.q();
        for x in random_points(&mut rng, 50, 0.2, 5.0) {
            g.err((|| {
                let (sum, _) = theta_bilateral(b, x, &cfg)?
                    .ok_or_else(|| qstokes::QError::Domain(format!("bilateral sum overflows at {x}")))?;
                Ok(rel_err(theta_product(b, x, &cfg)?.value(), sum))
            })());
            let tx = theta(b, x, &cfg);
            for k in -3i64..=3 {
                g.err((|| {
                    let lhs = theta(b, cpow(q, k) * x, &cfg)?;
                    let rhs = cpow(q, -k * (k - 1) / 2) * x.powi(-k as i32) * tx.clone()?;
                    Ok(rel_err(lhs, rhs))
                })());
            }
            g.err((|| Ok(rel_err(theta(b, x.inv(), &cfg)?, tx.clone()? / x)))());
        }
    }
    (g.ok(1e-10), g.detail())
}

fn verify_many(g: &mut Gate, id: IdentityId, b: Base<f64>, xs: &[C64], lambda: Option<C64>, tol: f64) -> usize {
    let mut failed = 0;
    for &x in xs {
        let r = verify_identity(id, b, &Params { x, lambda }, Some(tol));
        if let Ok(r) = &r {
            failed += (!r.pass) as usize;
        }
        g.err(r.map(|r| r.rel_err));
    }
    failed
}

fn q_exponentials() -> (bool, String) {
    let mut g = Gate::new();
    let b = Base::real(0.5).unwrap();
    let mut gen = PointGenerator::new(SEED);
    for id in [IdentityId::QexpPair, IdentityId::QexpInverse] {
        let xs = identity_points(id, b.q(), None, &mut gen, 20);
        verify_many(&mut g, id, b, &xs, None, 1e-10);
    }
    (g.ok(1e-10), g.detail())
}

fn exponential_splittings() -> (bool, String) {
    let mut g = Gate::new();
    let mut internal = Gate::new();
    for q in [0.3, 0.5, 0.7] {
        let b = Base::real(q).unwrap();
        let mut gen = PointGenerator::new(SEED);
        let ids = [
            IdentityId::EqVsEq,
            IdentityId::EqAlternate,
            IdentityId::EqRsplit(2),
            IdentityId::EqRsplit(3),
            IdentityId::EqRsplit(4),
        ];
        for id in ids {
            let xs = identity_points(id, b.q(), None, &mut gen, 20);
            verify_many(&mut g, id, b, &xs, None, 1e-9);
            if id == IdentityId::EqRsplit(2) {
                for &x in &xs {
                    internal.err((|| Ok(rel_err(eq_rsplit_rhs(b, 2, x)?, eq_alternate_rhs(b, b.q() * x)?)))());
                }
            }
        }
    }
    let ok = g.ok(1e-9) && internal.ok(1e-12);
    (ok, format!("{}; r=2 split vs alternate: {}", g.detail(), internal.detail()))
}

fn laplace_inverts_borel() -> (bool, String) {
    let mut spiral = Gate::new();
    let mut contour = Gate::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let b = Base::new(c(0.5, 0.1)).unwrap();
    for level in 1..=3u32 {
        let bs = b.power(level);
        for deg in [0usize, 3, 10] {
            let f = FormalPowerSeries::from_fn(deg, |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let x = C64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(-PI..PI));
            let truth = f.eval(x);

            let g1 = qborel_plus(&f, b, level);
            spiral.err((|| {
                let s = Spiral::new(c(0.9, 0.35), level, b)?;
                Ok(rel_err(qlaplace_spiral_adaptive(|xi| Ok(g1.eval(xi)), &s, x)?.value, truth))
            })());

            // one circle per monomial, radius |x| |Q|^{n - 1/2} balancing the theta terms
            let g2 = qborel_minus(&f, bs);
            contour.err((|| {
                let mut acc = c(0.0, 0.0);
                for n in 0..=deg {
                    let a = g2.coeff(n);
                    let r = x.norm() * bs.modulus().powf(n as f64 - 0.5);
                    let k = Contour::new(r, 256)?;
                    acc += qlaplace_contour(|xi: C64| Ok(a * xi.powi(n as i32)), bs, x, &k)?.value;
                }
                Ok(rel_err(acc, truth))
            })());
        }
    }
    let ok = spiral.ok(1e-12) && contour.ok(1e-12);
    (ok, format!("spiral: {}; contour: {}", spiral.detail(), contour.detail()))
}

fn operational_relation() -> (bool, String) {
    let mut g = Gate::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for b in bases() {
        let f = FormalPowerSeries::from_fn(12, |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        for m in 0..=4 {
            for l in m..=4 {
                g.err(check_operational_identity(m, l, &f, b).map(|r| r.rel_err));
            }
        }
    }
    (g.ok(1e-13), g.detail())
}

fn resummation_ground_truth() -> (bool, String) {
    let mut res = Gate::new();
    let mut reindex = Gate::new();
    for q in [0.3, 0.5] {
        let b = Base::real(q).unwrap();
        let op = SolutionId::U2Resummed.operator(b).unwrap();
        for lam in [c(0.9, 0.0), c(0.0, 1.3)] {
            let mut gen = PointGenerator::new(SEED);
            for x in identity_points(IdentityId::TwoFZero, b.q(), Some(lam), &mut gen, 20) {
                res.err(relative_residual(&op, SolutionId::U2Resummed, b, x, Some(lam)));
                reindex.err((|| Ok(rel_err(resum_2f0(b, lam, x)?, resum_2f0(b, lam * b.q(), x)?)))());
            }
        }
    }
    let ok = res.ok(1e-9) && reindex.ok(1e-12);
    (ok, format!("residual: {}; reindexing: {}", res.detail(), reindex.detail()))
}

fn connection_formula() -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut g = Gate::new();
    let mut fails = 0;
    for q in [0.3, 0.5, 0.7] {
        let b = Base::real(q).unwrap();
        for lam in [c(0.9, 0.0), c(0.0, 1.3)] {
            for (target, id) in [
                (AuditTarget::TwoFZero, IdentityId::TwoFZero),
                (AuditTarget::MainMatrixRow2, IdentityId::MainMatrixRow2),
            ] {
                let mut gen = PointGenerator::new(SEED ^ 1);
                let samples = identity_points(id, b.q(), Some(lam), &mut gen, 8);
                match audit_normalization(target, b, lam, &samples) {
                    Ok(r) if r.unique => notes.push(r.matching_families[0].clone()),
                    Ok(r) => {
                        ok = false;
                        notes.push(format!("{} q={q}: matches {:?}", target.name(), r.matching_families));
                    }
                    Err(e) => {
                        ok = false;
                        notes.push(e.to_string());
                    }
                }
                let fresh = identity_points(id, b.q(), Some(lam), &mut gen, 20);
                fails += verify_many(&mut g, id, b, &fresh, Some(lam), id.default_tol());
            }
        }
    }
    notes.sort();
    notes.dedup();
    let ok = ok && fails == 0 && g.errors.is_empty();
    (ok, format!("audit: {notes:?}; fresh points: {}, {fails} failed", g.detail()))
}

fn row_one_and_ellipticity() -> (bool, String) {
    let b = Base::real(0.5).unwrap();
    let mut gen = PointGenerator::new(SEED);
    let mut iz = Gate::new();
    let xs = identity_points(IdentityId::IsmailZhang, b.q(), None, &mut gen, 20);
    let iz_fail = verify_many(&mut iz, IdentityId::IsmailZhang, b, &xs, None, 1e-9);
    let mut row = Gate::new();
    let xs = identity_points(IdentityId::MainMatrixRow1, b.q(), None, &mut gen, 20);
    let row_fail = verify_many(&mut row, IdentityId::MainMatrixRow1, b, &xs, None, 1e-9);
    let mut ell = Gate::new();
    let mut ell_fail = 0;
    for coef in [Coefficient::C11, Coefficient::C12] {
        for x in identity_points(IdentityId::MainMatrixRow1, b.q(), None, &mut gen, 10) {
            let r = ellipticity_check(coef, b, x);
            if let Ok(r) = &r {
                ell_fail += (!r.pass) as usize;
            }
            ell.err(r.map(|r| r.rel_err));
        }
    }
    let ok = iz_fail == 0 && iz.errors.is_empty() && row_fail == 0 && row.errors.is_empty() && ell_fail == 0;
    let detail = format!(
        "Ismail-Zhang: {} [{}]; row 1 as printed: {} [{}]; ellipticity: {} [{}]",
        iz.detail(),
        if iz_fail == 0 { "pass" } else { "fail" },
        row.detail(),
        if row_fail == 0 { "pass" } else { "fail" },
        ell.detail(),
        if ell_fail == 0 { "pass" } else { "fail" },
    );
    (ok, detail)
}

fn ramanujan_qairy() -> (bool, String) {
    let cfg = EvalConfig::default();
    let mut three = Gate::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for q in [0.3, 0.4, 0.5] {
        let b = Base::real(q).unwrap();
        let k = Contour::for_qairy_kernel(b);
        for t in random_points(&mut rng, 5, 0.3, 3.0) {
            three.err((|| {
                let quad = qlaplace_contour(|tau| qairy_kernel(b, tau, &cfg), b, t, &k)?.value;
                let res = residue_laplace_qairy(b, t, 200)?;
                let closed = qairy_closed_form(b, t)?;
                let direct = ramanujan_aq(b.squared(), -b.q().powi(3) * t * t, &cfg)?;
                // the contour value at t = 1/x against the connection combination
                let conn = ram_qairy_rhs(b, t.inv())?;
                Ok([rel_err(quad, res), rel_err(res, closed), rel_err(quad, closed), rel_err(direct, closed), rel_err(quad, conn)]
                    .into_iter()
                    .fold(0.0, f64::max))
            })());
        }
    }
    let b = Base::real(0.4).unwrap();
    let mut g = Gate::new();
    let mut gen = PointGenerator::new(SEED);
    let xs = identity_points(IdentityId::RamQairy, b.q(), None, &mut gen, 20);
    let fails = verify_many(&mut g, IdentityId::RamQairy, b, &xs, None, 1e-9);
    let ok = three.ok(1e-8) && fails == 0 && g.errors.is_empty();
    (ok, format!("three evaluations: {}; identity: {}", three.detail(), g.detail()))
}

fn level_r() -> (bool, String) {
    let cfg = EvalConfig::default();
    let b = Base::real(0.5).unwrap();
    let lam = c(0.9, 0.35);
    let mut gen = PointGenerator::new(SEED);
    let mut stab = Gate::new();
    let mut coincide = Gate::new();
    let mut notes = Vec::new();
    let mut audit_ok = true;
    for r in 2..=4u32 {
        let id = IdentityId::LevelR(r);
        let xs = identity_points(id, b.q(), Some(lam), &mut gen, 10);
        for &x in &xs {
            stab.err((|| {
                let d = resum_rf0_detailed(r, b, lam, x)?;
                let s = Spiral::new(lam, r - 1, b)?;
                let eps = rf0_sign::<f64>(r);
                let wider = qlaplace_spiral(|xi| eq_small(b, eps * xi, &cfg), &s, x, d.window + 8)?;
                Ok(rel_err(d.value, wider))
            })());
            if r == 2 {
                coincide.err((|| {
                    let a = resum_2f0_detailed(b, -lam, -x * b.q())?.value;
                    Ok(rel_err(a, resum_rf0(2, b, lam, x)?))
                })());
            }
        }
        match audit_normalization(AuditTarget::LevelR(r), b, lam, &xs[..8]) {
            Ok(rep) if !rep.matching_families.is_empty() => notes.push(format!("r={r}: {:?}", rep.matching_families)),
            Ok(rep) => {
                let best = rep.families.iter().map(|f| f.max_rel_err).fold(f64::INFINITY, f64::min);
                notes.push(format!("r={r}: no match, closest {best:.2e}"));
            }
            Err(e) => {
                audit_ok = false;
                notes.push(format!("r={r}: {e}"));
            }
        }
    }
    let ok = stab.ok(1e-11) && coincide.ok(1e-12) && audit_ok;
    (ok, format!("window stability: {}; r=2 vs 2phi0: {}; audit: {notes:?}", stab.detail(), coincide.detail()))
}

fn stokes() -> (bool, String) {
    let b = Base::real(0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let xs: Vec<C64> = random_points(&mut rng, 10, 0.3, 3.0);
    match stokes_witness(b, c(0.9, 0.0), c(0.0, 1.3), &xs) {
        Ok((x, d)) => (d > 1e-6, format!("largest relative jump {d:.3e} at x = {x}")),
        Err(e) => (false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> (bool, String)); 11] = [
        ("theta consistency", theta_consistency),
        ("q-exponential relations", q_exponentials),
        ("q-exponential splittings", exponential_splittings),
        ("Laplace inverts Borel", laplace_inverts_borel),
        ("operational relation", operational_relation),
        ("resummation ground truth", resummation_ground_truth),
        ("connection formula", connection_formula),
        ("Ismail-Zhang, row 1, ellipticity", row_one_and_ellipticity),
        ("Ramanujan and q-Airy", ramanujan_qairy),
        ("level r-1 resummation", level_r),
        ("Stokes witness", stokes),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        failed += (!ok) as usize;
        println!("{} {:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
