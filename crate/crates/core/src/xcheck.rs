//! Randomized cross-check of the kernel against the subset oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::{generate, GenParams, Model};
use crate::instance::Instance;
use crate::reduce::{kernelize, replay, replay_step, KernelStatus, OrderProvider};
use crate::solve::{exact_branch, exact_order, exact_subset, HeuristicProvider, ORDER_LIMIT};

/// Triple-oracle agreement is only checked up to this many vertices.
const TRIPLE_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XcheckParams {
    pub n_max: usize,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureKind {
    /// A trace, size bound, or structural check failed.
    Invariant,
    /// A rule changed the oracle answer, or the oracles disagree.
    OracleDisagreement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub kind: FailureKind,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XcheckReport {
    pub trials: usize,
    /// Rule applications checked, indexed by rule id (index 0 unused).
    pub firings: [usize; 7],
    pub reduced: usize,
    pub trivial_yes: usize,
    pub trivial_no: usize,
    pub failures: Vec<TrialFailure>,
}

impl XcheckReport {
    /// 0 when clean, 3 if any oracle disagreement, else 2.
    pub fn exit_code(&self) -> i32 {
        match self.failures.iter().map(|f| f.kind).max() {
            None => 0,
            Some(FailureKind::Invariant) => 2,
            Some(FailureKind::OracleDisagreement) => 3,
        }
    }
}

impl fmt::Display for XcheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "trials {} passed {} failed {}",
            self.trials,
            self.trials
                - self
                    .failures
                    .iter()
                    .map(|x| x.trial)
                    .collect::<std::collections::BTreeSet<_>>()
                    .len(),
            self.failures.len()
        )?;
        writeln!(
            f,
            "outcomes reduced {} yes {} no {}",
            self.reduced, self.trivial_yes, self.trivial_no
        )?;
        for r in 1..=6 {
            writeln!(f, "rule {r} firings {}", self.firings[r])?;
        }
        for x in &self.failures {
            writeln!(f, "FAIL trial {} {:?}: {}", x.trial, x.kind, x.message)?;
        }
        Ok(())
    }
}

/// YES iff a T-feedback arc set of size at most `k` exists.
pub fn oracle_answer(inst: &Instance) -> bool {
    exact_subset(inst, inst.budget()).is_ok()
}

/// The instance drawn for trial `i`; each trial has its own stream.
pub fn trial_instance(params: &XcheckParams, i: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(i as u64);
    let n = rng.random_range(1..=params.n_max.max(1));
    let k = rng.random_range(0..=params.k_max);
    let model = if rng.random_bool(0.5) {
        Model::Uniform
    } else {
        Model::Planted
    };
    let tfrac = rng.random_range(0.0..=1.0);
    let s = rng
        .random_range(0..=params.k_max + 2)
        .min(n * n.saturating_sub(1) / 2);
    generate(&GenParams {
        model,
        n,
        k,
        tfrac,
        s,
        seed: rng.random(),
    })
}

#[derive(Default)]
struct TrialResult {
    firings: [usize; 7],
    status: Option<u8>,
    failures: Vec<(FailureKind, String)>,
}

fn run_trial(inst: &Instance, provider: &dyn OrderProvider) -> TrialResult {
    let mut res = TrialResult::default();
    let mut fail = |kind, msg: String| res.failures.push((kind, msg));
    if inst.n() <= TRIPLE_LIMIT.min(ORDER_LIMIT) {
        let sub = exact_subset(inst, inst.n() * inst.n());
        let br = exact_branch(inst).optimum;
        let ord = exact_order(inst).map(|o| o.optimum);
        match (sub, ord) {
            (Ok(s), Ok(o)) if s.optimum == br && br == o => {}
            (s, o) => fail(
                FailureKind::OracleDisagreement,
                format!(
                    "optima differ: subset {:?} branch {br} order {o:?}",
                    s.map(|s| s.optimum)
                ),
            ),
        }
    }
    let out = match kernelize(inst, provider) {
        Ok(out) => out,
        Err(e) => {
            fail(FailureKind::Invariant, format!("kernelize: {e}"));
            return res;
        }
    };
    let mut state = inst.clone();
    let mut answer = oracle_answer(&state);
    for rec in &out.trace {
        res.firings[rec.rule as usize] += 1;
        match replay_step(&state, rec) {
            Ok(KernelStatus::Reduced(next)) => {
                let after = oracle_answer(&next);
                if after != answer {
                    fail(
                        FailureKind::OracleDisagreement,
                        format!(
                            "rule {} at step {} turned {answer} into {after}",
                            rec.rule, rec.step
                        ),
                    );
                }
                answer = after;
                state = next;
            }
            Ok(KernelStatus::TrivialYes) if !answer => fail(
                FailureKind::OracleDisagreement,
                format!("rule {} answered YES on a NO instance", rec.rule),
            ),
            Ok(KernelStatus::TrivialNo) if answer => fail(
                FailureKind::OracleDisagreement,
                format!("rule {} answered NO on a YES instance", rec.rule),
            ),
            Ok(_) => {}
            Err(e) => fail(
                FailureKind::Invariant,
                format!("replay step {}: {e}", rec.step),
            ),
        }
        if rec.k_after > rec.k_before {
            fail(
                FailureKind::Invariant,
                format!("budget grew at step {}", rec.step),
            );
        }
    }
    match replay(inst, &out.trace) {
        Ok(st) if st == out.status => {}
        Ok(_) => fail(
            FailureKind::Invariant,
            "replay disagrees with the kernel".into(),
        ),
        Err(e) => fail(FailureKind::Invariant, format!("replay: {e}")),
    }
    res.status = Some(match &out.status {
        KernelStatus::TrivialYes => 1,
        KernelStatus::TrivialNo => 2,
        KernelStatus::Reduced(red) => {
            let bounds = out.bounds.expect("reduced results carry bounds");
            if red.n() > bounds.n_max {
                fail(
                    FailureKind::Invariant,
                    format!("reduced n = {} exceeds n_max = {}", red.n(), bounds.n_max),
                );
            }
            0
        }
    });
    res
}

/// Run `params.trials` independent trials in parallel; the report is
/// ordered by trial index.
pub fn xcheck(params: &XcheckParams) -> Result<XcheckReport> {
    if params.n_max == 0 {
        return Err(Error::BadParameters("n_max must be positive".into()));
    }
    let results: Vec<Result<TrialResult>> = (0..params.trials)
        .into_par_iter()
        .map(|i| Ok(run_trial(&trial_instance(params, i)?, &HeuristicProvider)))
        .collect();
    let mut report = XcheckReport {
        trials: params.trials,
        ..Default::default()
    };
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        for (a, b) in report.firings.iter_mut().zip(r.firings) {
            *a += b;
        }
        match r.status {
            Some(0) => report.reduced += 1,
            Some(1) => report.trivial_yes += 1,
            Some(2) => report.trivial_no += 1,
            _ => {}
        }
        report
            .failures
            .extend(r.failures.into_iter().map(|(kind, message)| TrialFailure {
                trial: i,
                kind,
                message,
            }));
    }
    Ok(report)
}
