//! Resolution of normalization ambiguities: each candidate right-hand side
//! is a sum of terms, and every term may be multiplied by
//! `c (lambda/x)^k q^j` with `c = +-1`, `|k| <= 2`, `|j| <= 3`. A candidate
//! family matches when some choice of corrections reproduces the ground
//! truth at every sample point.

use serde::{Deserialize, Serialize};

use super::formulas::{
    c1_ismail_zhang, c1_printed, c2_printed, c2_resolved, cfg, ismail_zhang_terms, level_r_terms, th,
    two_f_zero_terms, v1, v2, LevelReading, C,
};
use crate::error::{QError, Result};
use crate::qcore::{eq_series, eq_small, ramanujan_aq, Base, Eq_big};
use crate::qresum::{resum_2f0, resum_rf0};
use crate::report::{pair, Pair};

pub const MATCH_TOL: f64 = 1e-8;
pub const MIN_SAMPLES: usize = 8;
const K_RANGE: i32 = 2;
const J_RANGE: i32 = 3;

/// What is audited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditTarget {
    TwoFZero,
    MainMatrixRow1,
    MainMatrixRow2,
    LevelR(u32),
    /// Control case without any known discrepancy.
    QexpPair,
    /// The resummed `2phi0` formula with its first term deliberately
    /// multiplied by `q`.
    TwoFZeroPerturbed,
}

impl AuditTarget {
    pub fn name(&self) -> String {
        match self {
            AuditTarget::TwoFZero => "two_f_zero".into(),
            AuditTarget::MainMatrixRow1 => "main_matrix_row1".into(),
            AuditTarget::MainMatrixRow2 => "main_matrix_row2".into(),
            AuditTarget::LevelR(r) => format!("level_r({r})"),
            AuditTarget::QexpPair => "qexp_pair".into(),
            AuditTarget::TwoFZeroPerturbed => "two_f_zero_perturbed".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "two_f_zero" => AuditTarget::TwoFZero,
            "main_matrix" | "main_matrix_row2" => AuditTarget::MainMatrixRow2,
            "main_matrix_row1" => AuditTarget::MainMatrixRow1,
            "qexp_pair" => AuditTarget::QexpPair,
            "two_f_zero_perturbed" => AuditTarget::TwoFZeroPerturbed,
            _ => match super::identities::IdentityId::from_str_level(s) {
                Some(r) => AuditTarget::LevelR(r),
                None => return Err(QError::InvalidConfig(format!("no audit for {s:?}"))),
            },
        })
    }
}

/// Per-term correction `sign (lambda/x)^k q^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub sign: i8,
    pub k: i8,
    pub j: i8,
}

impl Correction {
    pub const IDENTITY: Correction = Correction { sign: 1, k: 0, j: 0 };

    fn weight(&self) -> i32 {
        self.k.unsigned_abs() as i32 + self.j.unsigned_abs() as i32 + (self.sign < 0) as i32
    }

    fn all() -> Vec<Correction> {
        let mut v = Vec::new();
        for sign in [1i8, -1] {
            for k in -K_RANGE..=K_RANGE {
                for j in -J_RANGE..=J_RANGE {
                    v.push(Correction { sign, k: k as i8, j: j as i8 });
                }
            }
        }
        v
    }
}

/// Outcome for one candidate family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyOutcome {
    pub family: String,
    pub matched: bool,
    /// Matching corrections of least total weight, or the corrections
    /// closest to the first sample when nothing matches.
    pub corrections: Vec<Correction>,
    /// Number of correction choices that match.
    pub matches: usize,
    /// Relative error at each sample under `corrections`.
    pub profile: Vec<f64>,
    pub max_rel_err: f64,
    /// Relative error of the uncorrected family.
    pub baseline_max_rel_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub identity_id: String,
    pub q: Pair,
    pub lambda: Option<Pair>,
    pub samples: Vec<Pair>,
    pub families: Vec<FamilyOutcome>,
    pub matching_families: Vec<String>,
    /// Exactly one family matches.
    pub unique: bool,
}

impl AuditReport {
    pub fn family(&self, name: &str) -> Option<&FamilyOutcome> {
        self.families.iter().find(|f| f.family == name)
    }
}

type TermFn<'a> = Box<dyn Fn(C) -> Result<Vec<C>> + 'a>;

fn setup<'a>(target: AuditTarget, base: Base<f64>, lambda: C) -> (Box<dyn Fn(C) -> Result<C> + 'a>, Vec<(String, TermFn<'a>)>) {
    match target {
        AuditTarget::TwoFZero | AuditTarget::TwoFZeroPerturbed => {
            let truth = Box::new(move |x| Ok(th(base, x)? * resum_2f0(base, lambda, x)?));
            let perturb = target == AuditTarget::TwoFZeroPerturbed;
            let resummed: TermFn = Box::new(move |x| {
                let mut t = two_f_zero_terms(base, lambda, x)?.to_vec();
                if perturb {
                    t[0] *= base.q();
                }
                Ok(t)
            });
            let printed_conn: TermFn = Box::new(move |x| {
                let [a, b] = c2_printed(base, lambda, x)?;
                Ok(vec![a * v1(base, x)?, b * v2(base, x)?])
            });
            (truth, vec![("resummed_theorem".into(), resummed), ("connection_printed".into(), printed_conn)])
        }
        AuditTarget::MainMatrixRow2 => {
            let truth = Box::new(move |x| Ok(th(base, x)? * resum_2f0(base, lambda, x)?));
            let printed: TermFn = Box::new(move |x| {
                let [a, b] = c2_printed(base, lambda, x)?;
                Ok(vec![a * v1(base, x)?, b * v2(base, x)?])
            });
            let resolved: TermFn = Box::new(move |x| {
                let [a, b] = c2_resolved(base, lambda, x)?;
                Ok(vec![a * v1(base, x)?, b * v2(base, x)?])
            });
            (truth, vec![("connection_printed".into(), printed), ("from_resummed_theorem".into(), resolved)])
        }
        AuditTarget::MainMatrixRow1 => {
            let truth = Box::new(move |x| ramanujan_aq(base, x, &cfg()));
            let printed: TermFn = Box::new(move |x| {
                let [a, b] = c1_printed(base, x)?;
                Ok(vec![a * v1(base, x)?, b * v2(base, x)?])
            });
            let iz: TermFn = Box::new(move |x| {
                let [a, b] = c1_ismail_zhang(base, x)?;
                Ok(vec![a * v1(base, x)?, b * v2(base, x)?])
            });
            let terms: TermFn = Box::new(move |x| Ok(ismail_zhang_terms(base, x)?.to_vec()));
            (
                truth,
                vec![
                    ("printed".into(), printed),
                    ("ismail_zhang_coefficients".into(), iz),
                    ("ismail_zhang_terms".into(), terms),
                ],
            )
        }
        AuditTarget::LevelR(r) => {
            let truth = Box::new(move |x| resum_rf0(r, base, lambda, x));
            let fams = LevelReading::ALL
                .into_iter()
                .map(|reading| {
                    let f: TermFn = Box::new(move |x| level_r_terms(base, r, lambda, x, reading));
                    (reading.name().to_string(), f)
                })
                .collect();
            (truth, fams)
        }
        AuditTarget::QexpPair => {
            let truth = Box::new(move |x: C| {
                if x.norm() < 1.0 {
                    eq_series(base, x, &cfg())
                } else {
                    eq_small(base, x, &cfg())
                }
            });
            let f: TermFn = Box::new(move |x| Ok(vec![Eq_big(base, -x, &cfg())?.inv()]));
            (truth, vec![("printed".into(), f)])
        }
    }
}

fn rel(a: C, b: C) -> f64 {
    let s = a.norm().max(b.norm());
    if s > 0.0 {
        (a - b).norm() / s
    } else {
        0.0
    }
}

/// Searches every candidate family under every per-term correction.
///
/// `lambda` is ignored by the control target apart from the `(lambda/x)^k`
/// factors.
pub fn audit_normalization(target: AuditTarget, base: Base<f64>, lambda: C, samples: &[C]) -> Result<AuditReport> {
    if samples.len() < MIN_SAMPLES {
        return Err(QError::InvalidConfig(format!(
            "audit needs at least {MIN_SAMPLES} sample points, got {}",
            samples.len()
        )));
    }
    let (truth, families) = setup(target, base, lambda);
    let truths = samples.iter().map(|&x| truth(x)).collect::<Result<Vec<_>>>()?;
    let options = Correction::all();
    let q = base.q();
    let mut outcomes = Vec::new();
    for (name, terms) in &families {
        let vals = samples.iter().map(|&x| terms(x)).collect::<Result<Vec<_>>>()?;
        let nt = vals[0].len();
        // table[t][o][s]: term t under option o at sample s
        let table: Vec<Vec<Vec<C>>> = (0..nt)
            .map(|t| {
                options
                    .iter()
                    .map(|o| {
                        samples
                            .iter()
                            .enumerate()
                            .map(|(s, &x)| {
                                vals[s][t] * (o.sign as f64) * (lambda / x).powi(o.k as i32) * q.powi(o.j as i32)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let identity_idx = options.iter().position(|o| *o == Correction::IDENTITY).unwrap();
        let eval = |idx: &[usize], s: usize| -> C { (0..nt).map(|t| table[t][idx[t]][s]).sum() };

        let mut idx = vec![0usize; nt];
        let mut best_first = (f64::INFINITY, idx.clone());
        let mut matched: Vec<Vec<usize>> = Vec::new();
        loop {
            let e0 = rel(eval(&idx, 0), truths[0]);
            if e0 < best_first.0 {
                best_first = (e0, idx.clone());
            }
            if e0 < MATCH_TOL && (1..samples.len()).all(|s| rel(eval(&idx, s), truths[s]) < MATCH_TOL) {
                matched.push(idx.clone());
            }
            // mixed-radix increment
            let mut t = 0;
            while t < nt {
                idx[t] += 1;
                if idx[t] < options.len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
            if t == nt {
                break;
            }
        }
        let weight = |ix: &Vec<usize>| ix.iter().map(|&i| options[i].weight()).sum::<i32>();
        let chosen = matched
            .iter()
            .min_by_key(|ix| weight(ix))
            .cloned()
            .unwrap_or(best_first.1);
        let profile: Vec<f64> = (0..samples.len()).map(|s| rel(eval(&chosen, s), truths[s])).collect();
        let baseline = vec![identity_idx; nt];
        let baseline_max = (0..samples.len())
            .map(|s| rel(eval(&baseline, s), truths[s]))
            .fold(0.0, f64::max);
        outcomes.push(FamilyOutcome {
            family: name.clone(),
            matched: !matched.is_empty(),
            corrections: chosen.iter().map(|&i| options[i]).collect(),
            matches: matched.len(),
            max_rel_err: profile.iter().cloned().fold(0.0, f64::max),
            profile,
            baseline_max_rel_err: baseline_max,
        });
    }
    let matching: Vec<String> = outcomes.iter().filter(|f| f.matched).map(|f| f.family.clone()).collect();
    Ok(AuditReport {
        identity_id: target.name(),
        q: pair(base.q()),
        lambda: Some(pair(lambda)),
        samples: samples.iter().map(|&x| pair(x)).collect(),
        unique: matching.len() == 1,
        matching_families: matching,
        families: outcomes,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::qconnect::formulas::c;

    fn samples() -> Vec<C> {
        (0..8)
            .map(|k| C::from_polar(0.5 + 0.3 * k as f64, 0.2 + 0.37 * k as f64))
            .collect()
    }

    #[test]
    fn control_matches_without_correction() {
        let b = Base::real(0.5).unwrap();
        let xs: Vec<C> = samples().into_iter().map(|x| x * 0.5).collect();
        let r = audit_normalization(AuditTarget::QexpPair, b, c(1.0), &xs).unwrap();
        assert!(r.unique);
        assert_eq!(r.families[0].corrections, vec![Correction::IDENTITY]);
    }

    #[test]
    fn two_f_zero_resolves_to_resummed_theorem() {
        let b = Base::real(0.4).unwrap();
        let r = audit_normalization(AuditTarget::TwoFZero, b, c(0.9), &samples()).unwrap();
        assert!(r.unique, "{r:#?}");
        assert_eq!(r.matching_families, vec!["resummed_theorem".to_string()]);
        let f = r.family("resummed_theorem").unwrap();
        assert_eq!(f.corrections, vec![Correction::IDENTITY; 2]);
        assert!(f.max_rel_err < 1e-8);
    }

    #[test]
    fn perturbation_is_detected() {
        let b = Base::real(0.4).unwrap();
        let r = audit_normalization(AuditTarget::TwoFZeroPerturbed, b, c(0.9), &samples()).unwrap();
        let f = r.family("resummed_theorem").unwrap();
        assert!(f.matched);
        assert!(f.baseline_max_rel_err > 1e-3);
        assert_eq!(f.corrections[0], Correction { sign: 1, k: 0, j: -1 });
        assert_eq!(f.corrections[1], Correction::IDENTITY);
    }

    #[test]
    fn too_few_samples() {
        let b = Base::real(0.4).unwrap();
        assert!(audit_normalization(AuditTarget::TwoFZero, b, c(0.9), &samples()[..3]).is_err());
    }
}
