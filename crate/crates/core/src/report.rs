//! Verification of a built ideal against the expected invariants of its
//! family.
//!
//! Each check ends as `pass`, `fail`, `skipped` (not requested or not
//! applicable) or `unverified` (budget exhausted or inconclusive random
//! evidence). The verdict is `pass` iff every non-skipped check passes.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{expected, FamilySpec};
use crate::groebner::Budget;
use crate::hilbert::{rr_expected_h0, HilbertData};
use crate::ideal::Ideal;
use crate::random::Rng;
use crate::resolution::{certify_ag_cy, free_resolution, Resolution};
use crate::smoothness::{singular_locus, MinorStrategy, SingularLocusReport};
use crate::toric;

pub const REPORT_SCHEMA: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default per-check budget in seconds.
pub const DEFAULT_CHECK_SECONDS: f64 = 600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Dimension,
    Degree,
    HilbertRr,
    Betti,
    AgSymmetry,
    CyTwist,
    Smoothness,
    Hodge,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Dimension,
        CheckKind::Degree,
        CheckKind::HilbertRr,
        CheckKind::Betti,
        CheckKind::AgSymmetry,
        CheckKind::CyTwist,
        CheckKind::Smoothness,
        CheckKind::Hodge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dimension => "dimension",
            CheckKind::Degree => "degree",
            CheckKind::HilbertRr => "hilbert_rr",
            CheckKind::Betti => "betti",
            CheckKind::AgSymmetry => "aG_symmetry",
            CheckKind::CyTwist => "cy_twist",
            CheckKind::Smoothness => "smoothness",
            CheckKind::Hodge => "hodge",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Invalid("empty check list".into()));
        }
        Ok(out)
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    pub details: Value,
    pub wall_seconds: f64,
}

impl CheckResult {
    fn new(status: CheckStatus, details: Value, wall_seconds: f64) -> Self {
        CheckResult { status, details, wall_seconds }
    }

    fn skipped(reason: &str) -> Self {
        CheckResult::new(CheckStatus::Skipped, json!({ "reason": reason }), 0.0)
    }

    fn unverified(e: &Error, wall_seconds: f64) -> Self {
        CheckResult::new(CheckStatus::Unverified, json!({ "reason": e.to_string() }), wall_seconds)
    }

    fn judged(ok: bool, details: Value, wall_seconds: f64) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckResult::new(status, details, wall_seconds)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub dimension: CheckResult,
    pub degree: CheckResult,
    pub hilbert_rr: CheckResult,
    pub betti: CheckResult,
    #[serde(rename = "aG_symmetry")]
    pub ag_symmetry: CheckResult,
    pub cy_twist: CheckResult,
    pub smoothness: CheckResult,
    pub hodge: CheckResult,
}

impl Checks {
    pub fn get(&self, k: CheckKind) -> &CheckResult {
        match k {
            CheckKind::Dimension => &self.dimension,
            CheckKind::Degree => &self.degree,
            CheckKind::HilbertRr => &self.hilbert_rr,
            CheckKind::Betti => &self.betti,
            CheckKind::AgSymmetry => &self.ag_symmetry,
            CheckKind::CyTwist => &self.cy_twist,
            CheckKind::Smoothness => &self.smoothness,
            CheckKind::Hodge => &self.hodge,
        }
    }

    fn slot(&mut self, k: CheckKind) -> &mut CheckResult {
        match k {
            CheckKind::Dimension => &mut self.dimension,
            CheckKind::Degree => &mut self.degree,
            CheckKind::HilbertRr => &mut self.hilbert_rr,
            CheckKind::Betti => &mut self.betti,
            CheckKind::AgSymmetry => &mut self.ag_symmetry,
            CheckKind::CyTwist => &mut self.cy_twist,
            CheckKind::Smoothness => &mut self.smoothness,
            CheckKind::Hodge => &mut self.hodge,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub tool_version: String,
    pub family: u32,
    pub seed: u64,
    pub characteristic: u32,
    pub budget_seconds: f64,
    pub checks: Checks,
    pub verdict: Verdict,
}

impl VerificationReport {
    fn verdict_of(checks: &Checks) -> Verdict {
        let statuses: Vec<CheckStatus> = CheckKind::ALL.iter().map(|&k| checks.get(k).status).collect();
        if statuses.contains(&CheckStatus::Fail) {
            Verdict::Fail
        } else if statuses.contains(&CheckStatus::Unverified) {
            Verdict::Unverified
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub checks: Vec<CheckKind>,
    /// Per-check budget in seconds.
    pub budget_seconds: f64,
    /// Worker threads; with two or more the resolution and smoothness
    /// checks run concurrently.
    pub workers: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { checks: CheckKind::ALL.to_vec(), budget_seconds: DEFAULT_CHECK_SECONDS, workers: 1, seed: 0 }
    }
}

impl VerifyOptions {
    fn wants(&self, k: CheckKind) -> bool {
        self.checks.contains(&k)
    }

    fn budget(&self) -> Budget {
        Budget::seconds(self.budget_seconds)
    }
}

/// Runs the requested checks of `ideal` against the expected invariants of
/// `family`.
pub fn verify(family: u32, ideal: &Ideal, opts: &VerifyOptions) -> Result<VerificationReport> {
    let spec = expected(family)?;
    let skipped = CheckResult::skipped("not requested");
    let mut checks = Checks {
        dimension: skipped.clone(),
        degree: skipped.clone(),
        hilbert_rr: skipped.clone(),
        betti: skipped.clone(),
        ag_symmetry: skipped.clone(),
        cy_twist: skipped.clone(),
        smoothness: skipped.clone(),
        hodge: skipped,
    };
    let mut rng = Rng::new(opts.seed);
    let mut res_rng = rng.fork(1);
    let smooth_seed = rng.fork(2).next_u64();

    let hilbert_kinds = [CheckKind::Dimension, CheckKind::Degree, CheckKind::HilbertRr];
    let mut threefold = None;
    if hilbert_kinds.iter().any(|&k| opts.wants(k)) || opts.wants(CheckKind::Smoothness) {
        let t = Instant::now();
        let h = ideal.hilbert_with(&opts.budget());
        let secs = t.elapsed().as_secs_f64();
        let results = match &h {
            Ok(h) => {
                threefold = Some(h.projective_dimension == 3);
                hilbert_checks(h, &spec, secs)
            }
            Err(e) => [(); 3].map(|_| CheckResult::unverified(e, secs)),
        };
        for (k, r) in hilbert_kinds.into_iter().zip(results) {
            if opts.wants(k) {
                *checks.slot(k) = r;
            }
        }
    }

    let res_kinds = [CheckKind::Betti, CheckKind::AgSymmetry, CheckKind::CyTwist];
    let want_res = res_kinds.iter().any(|&k| opts.wants(k));
    let want_smooth = opts.wants(CheckKind::Smoothness);
    let mut run_res = || {
        let t = Instant::now();
        let r = free_resolution(ideal, &mut res_rng, &opts.budget());
        (r, t.elapsed().as_secs_f64())
    };
    let run_smooth = || smoothness_check(ideal, threefold, smooth_seed, opts);
    let (res, smooth) = if want_res && want_smooth && opts.workers >= 2 {
        std::thread::scope(|s| {
            let h = s.spawn(run_smooth);
            let r = run_res();
            (Some(r), Some(h.join().expect("smoothness worker panicked")))
        })
    } else {
        (want_res.then(run_res), want_smooth.then(run_smooth))
    };
    if let Some((res, secs)) = res {
        let results = match res {
            Ok(res) => resolution_checks(ideal, &res, &spec, secs),
            Err(e @ Error::BudgetExceeded { .. }) => [(); 3].map(|_| CheckResult::unverified(&e, secs)),
            Err(e) => [(); 3].map(|_| CheckResult::new(CheckStatus::Fail, json!({ "error": e.to_string() }), secs)),
        };
        for (k, r) in res_kinds.into_iter().zip(results) {
            if opts.wants(k) {
                *checks.slot(k) = r;
            }
        }
    }
    if let Some(s) = smooth {
        checks.smoothness = s;
    }
    if opts.wants(CheckKind::Hodge) {
        checks.hodge = hodge_check(&spec);
    }

    let verdict = VerificationReport::verdict_of(&checks);
    Ok(VerificationReport {
        schema: REPORT_SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        family,
        seed: opts.seed,
        characteristic: ideal.ring().characteristic(),
        budget_seconds: opts.budget_seconds,
        checks,
        verdict,
    })
}

fn hilbert_checks(h: &HilbertData, spec: &FamilySpec, secs: f64) -> [CheckResult; 3] {
    let dim = CheckResult::judged(
        h.projective_dimension == 3,
        json!({ "projective_dimension": h.projective_dimension, "expected": 3 }),
        secs,
    );
    let deg = CheckResult::judged(
        h.degree == spec.degree,
        json!({ "degree": h.degree, "expected": spec.degree }),
        0.0,
    );
    let t = Instant::now();
    let mut values = Vec::new();
    let mut ok = true;
    for m in 1..=4u32 {
        let got = h.hilbert_function(m);
        let want = rr_expected_h0(spec.degree, m as i64);
        ok &= want.as_ref().is_ok_and(|w| *w == got);
        values.push(json!({ "m": m, "hilbert_function": got, "riemann_roch": want.ok() }));
    }
    let rr = CheckResult::judged(ok, json!({ "values": values }), t.elapsed().as_secs_f64());
    [dim, deg, rr]
}

fn resolution_checks(ideal: &Ideal, res: &Resolution, spec: &FamilySpec, secs: f64) -> [CheckResult; 3] {
    let t = Instant::now();
    let sound = res.check_complex().and_then(|_| {
        if res.presents(ideal)? {
            Ok(())
        } else {
            Err(Error::NotAResolution("first map does not generate the ideal".into()))
        }
    });
    let secs = secs + t.elapsed().as_secs_f64();
    if let Err(e) = sound {
        return [(); 3].map(|_| CheckResult::new(CheckStatus::Fail, json!({ "error": e.to_string() }), secs));
    }
    let table = res.betti();
    let generators: Vec<(u32, usize)> = table.module(1).into_iter().map(|(j, b)| (j as u32, b as usize)).collect();
    let (ok, against) = match &spec.betti {
        Some(want) => (table.same_entries(want) && table.is_minimal(), json!({ "table": want, "summary": want.summary() })),
        None => (generators == spec.generator_degrees, json!({ "generator_degrees": spec.generator_degrees })),
    };
    let betti = CheckResult::judged(
        ok,
        json!({
            "table": table,
            "summary": table.summary(),
            "expected": against,
            "characteristic_p_evidence": ideal.ring().characteristic(),
        }),
        secs,
    );
    let (ag, cy) = match certify_ag_cy(table) {
        Ok(c) => {
            let symmetric = c.socle_twist.is_some_and(|k| table.is_symmetric(4, k));
            let ag = CheckResult::judged(
                c.is_ag && symmetric,
                json!({ "length": table.length(), "last_rank": table.rank(table.length()), "socle_twist": c.socle_twist, "symmetric": symmetric }),
                0.0,
            );
            let cy = CheckResult::judged(
                c.is_cy_twist,
                json!({ "socle_twist": c.socle_twist, "expected": 8 }),
                0.0,
            );
            (ag, cy)
        }
        Err(e) => {
            let f = CheckResult::new(CheckStatus::Fail, json!({ "error": e.to_string() }), 0.0);
            (f.clone(), f)
        }
    };
    [betti, ag, cy]
}

/// Random Jacobian minors first; an inconclusive outcome falls back to all
/// minors within what is left of the budget.
fn smoothness_check(ideal: &Ideal, threefold: Option<bool>, seed: u64, opts: &VerifyOptions) -> CheckResult {
    let t = Instant::now();
    if threefold == Some(false) {
        return CheckResult::new(CheckStatus::Fail, json!({ "reason": "not a threefold" }), 0.0);
    }
    let budget = opts.budget();
    let describe = |r: &SingularLocusReport| {
        json!({
            "method": r.method,
            "seed": r.seed,
            "minors_used": r.minors_used,
            "minors_available": r.minors_available,
            "dimension": r.projective_dimension,
            "degree": r.degree,
            "dimension_trace": r.dimension_trace,
        })
    };
    let first = singular_locus(ideal, 4, MinorStrategy::default(), -1, seed, &budget);
    let outcome = match first {
        Ok(r) if r.is_empty() => return CheckResult::new(CheckStatus::Pass, describe(&r), t.elapsed().as_secs_f64()),
        Ok(_) => singular_locus(ideal, 4, MinorStrategy::FullMinors, -1, seed, &budget),
        Err(e) => Err(e),
    };
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(r) => CheckResult::judged(r.is_empty(), describe(&r), secs),
        Err(e @ (Error::BudgetExceeded { .. } | Error::SingularLocusBudget { .. })) => CheckResult::unverified(&e, secs),
        Err(e) => CheckResult::new(CheckStatus::Fail, json!({ "error": e.to_string() }), secs),
    }
}

fn hodge_check(spec: &FamilySpec) -> CheckResult {
    let t = Instant::now();
    if toric::toric_model(spec.id).is_none() {
        return CheckResult::skipped("no toric complete intersection model");
    }
    match toric::hodge(spec.id) {
        Ok(h) => {
            let ok = h.euler == spec.euler() && h.h12 == spec.h12 && h.degree == spec.degree && h.consistency;
            let details = serde_json::to_value(&h).expect("hodge report serializes");
            CheckResult::judged(ok, details, t.elapsed().as_secs_f64())
        }
        Err(e) => CheckResult::new(CheckStatus::Fail, json!({ "error": e.to_string() }), t.elapsed().as_secs_f64()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;

    #[test]
    fn check_names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert_eq!(CheckKind::parse_list("all").unwrap().len(), 8);
        assert_eq!(CheckKind::parse_list("degree, dimension,degree").unwrap(), vec![CheckKind::Dimension, CheckKind::Degree]);
        assert!(CheckKind::parse_list("degree,bogus").is_err());
    }

    #[test]
    fn four_quadrics_pass() {
        let inst = build(3, 1, 32003).unwrap();
        let opts = VerifyOptions { workers: 2, seed: 1, ..Default::default() };
        let r = verify(3, &inst.ideal, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
        assert_eq!(r.checks.hodge.status, CheckStatus::Skipped);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"]["aG_symmetry"]["status"], "pass");
    }

    #[test]
    fn verdict_ignores_skipped_checks() {
        let inst = build(3, 2, 32003).unwrap();
        let opts = VerifyOptions { checks: vec![CheckKind::Degree], ..Default::default() };
        let r = verify(3, &inst.ideal, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.checks.dimension.status, CheckStatus::Skipped);
        let wrong = verify(4, &inst.ideal, &opts).unwrap();
        assert_eq!(wrong.verdict, Verdict::Fail);
    }
}
