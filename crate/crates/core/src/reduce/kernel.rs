//! The kernelization loop and its replayable trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::order::{cost, VertexOrder};
use crate::reduce::rules::{
    plan_rich_replacement, rule1_trivial_no, rule2_trivial_yes, rule3_delete_bypassed,
    rule4_force_arc, RichReplacement,
};
use crate::reduce::BoundSet;
use crate::regular::regularize;
use crate::tournament::{Arc, Tournament};

pub const TRACE_SCHEMA: u32 = 1;

/// Anything that can propose a vertex order for an instance.
pub trait OrderProvider {
    fn name(&self) -> &str;

    /// A sequence that should be a permutation of `0..inst.n()`.
    fn provide(&self, inst: &Instance) -> Vec<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum RuleAction {
    TrivialNo,
    TrivialYes,
    DeleteVertices {
        deleted: Vec<usize>,
    },
    ReverseArc {
        arc: Arc,
        terminal: usize,
        flow: usize,
    },
    ReplaceRich {
        plan: RichReplacement,
    },
    SizeNo {
        n_max: usize,
    },
}

/// One rule firing. Vertex ids refer to the instance the rule saw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub schema: u32,
    pub step: usize,
    pub rule: u8,
    /// Cost of the working order, for rules that read one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    pub action: RuleAction,
    pub budget_delta: i64,
    pub n_before: usize,
    pub n_after: usize,
    pub k_before: usize,
    pub k_after: usize,
}

impl RuleApplication {
    /// Shift every vertex id by `+1` (`up`) or `-1`, for 1-based files.
    pub fn shift_ids(&self, up: bool) -> Result<RuleApplication> {
        let f = |v: usize| -> Result<usize> {
            if up {
                Ok(v + 1)
            } else {
                v.checked_sub(1)
                    .ok_or_else(|| Error::Replay("vertex id 0 in a 1-based trace".into()))
            }
        };
        let list = |vs: &[usize]| vs.iter().map(|&v| f(v)).collect::<Result<Vec<_>>>();
        let pairs = |vs: &[(usize, usize)]| {
            vs.iter()
                .map(|&(v, c)| Ok((f(v)?, c)))
                .collect::<Result<Vec<_>>>()
        };
        let action = match &self.action {
            RuleAction::DeleteVertices { deleted } => RuleAction::DeleteVertices {
                deleted: list(deleted)?,
            },
            RuleAction::ReverseArc {
                arc,
                terminal,
                flow,
            } => RuleAction::ReverseArc {
                arc: Arc::new(f(arc.tail)?, f(arc.head)?),
                terminal: f(*terminal)?,
                flow: *flow,
            },
            RuleAction::ReplaceRich { plan } => RuleAction::ReplaceRich {
                plan: RichReplacement {
                    deleted: list(&plan.deleted)?,
                    out_rich: pairs(&plan.out_rich)?,
                    in_rich: pairs(&plan.in_rich)?,
                    affected_rich: list(&plan.affected_rich)?,
                    left: list(&plan.left)?,
                    right: list(&plan.right)?,
                    middle: list(&plan.middle)?,
                    ..plan.clone()
                },
            },
            other => other.clone(),
        };
        Ok(RuleApplication {
            action,
            ..self.clone()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelStatus {
    TrivialYes,
    TrivialNo,
    Reduced(Instance),
}

impl KernelStatus {
    /// The instance to write out: the reduced instance, or a fixed tiny
    /// stand-in for a trivial answer (one vertex for YES, a 3-cycle through
    /// a terminal with `k = 0` for NO).
    pub fn output_instance(&self) -> Instance {
        match self {
            KernelStatus::Reduced(inst) => inst.clone(),
            KernelStatus::TrivialYes => {
                Instance::new(Tournament::transitive(1), [], 0).expect("valid")
            }
            KernelStatus::TrivialNo => {
                let t = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
                Instance::new(t, [0], 0).expect("valid")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub status: KernelStatus,
    pub trace: Vec<RuleApplication>,
    /// Bounds of the final working order when the status is `Reduced`.
    pub bounds: Option<BoundSet>,
    /// The final working (regular) order when the status is `Reduced`.
    pub order: Option<VertexOrder>,
    /// For each output vertex, its id in the input, or `None` if inserted.
    pub origin: Vec<Option<usize>>,
}

impl KernelResult {
    pub fn is_trivial(&self) -> bool {
        !matches!(self.status, KernelStatus::Reduced(_))
    }
}

/// Provider order, validated and regularized.
pub fn working_order(inst: &Instance, provider: &dyn OrderProvider) -> Result<VertexOrder> {
    let seq = provider.provide(inst);
    if seq.len() != inst.n() {
        return Err(Error::ProviderFailure(format!(
            "{} returned {} vertices for n = {}",
            provider.name(),
            seq.len(),
            inst.n()
        )));
    }
    let order = VertexOrder::new(seq)
        .map_err(|e| Error::ProviderFailure(format!("{}: {e}", provider.name())))?;
    Ok(regularize(inst, &order).result)
}

struct Tracer {
    trace: Vec<RuleApplication>,
}

impl Tracer {
    fn push(
        &mut self,
        rule: u8,
        b: Option<usize>,
        action: RuleAction,
        before: &Instance,
        after: Option<&Instance>,
    ) {
        let (n_after, k_after) =
            after.map_or((before.n(), before.budget()), |a| (a.n(), a.budget()));
        self.trace.push(RuleApplication {
            schema: TRACE_SCHEMA,
            step: self.trace.len(),
            rule,
            b,
            action,
            budget_delta: k_after as i64 - before.budget() as i64,
            n_before: before.n(),
            n_after,
            k_before: before.budget(),
            k_after,
        });
    }
}

/// Apply the rules to a fixpoint. Rules 1-3 are exhausted first; then the
/// provider's order is regularized and Rules 4, 5, 6 are tried in turn,
/// restarting after any change to the instance.
pub fn kernelize(inst: &Instance, provider: &dyn OrderProvider) -> Result<KernelResult> {
    let mut cur = inst.clone();
    let mut origin: Vec<Option<usize>> = (0..inst.n()).map(Some).collect();
    let mut tracer = Tracer { trace: Vec::new() };
    let finish = |status, tracer: Tracer, origin, bounds, order| {
        Ok(KernelResult {
            status,
            trace: tracer.trace,
            bounds,
            order,
            origin,
        })
    };
    loop {
        if rule1_trivial_no(&cur) {
            tracer.push(1, None, RuleAction::TrivialNo, &cur, None);
            return finish(KernelStatus::TrivialNo, tracer, Vec::new(), None, None);
        }
        if rule2_trivial_yes(&cur) {
            tracer.push(2, None, RuleAction::TrivialYes, &cur, None);
            return finish(KernelStatus::TrivialYes, tracer, Vec::new(), None, None);
        }
        if let Some(del) = rule3_delete_bypassed(&cur) {
            tracer.push(
                3,
                None,
                RuleAction::DeleteVertices {
                    deleted: del.deleted.clone(),
                },
                &cur,
                Some(&del.instance),
            );
            origin = del.kept.iter().map(|&old| origin[old]).collect();
            cur = del.instance;
            continue;
        }

        let order = working_order(&cur, provider)?;
        let b = cost(&cur, &order);
        let bounds = BoundSet::new(b, cur.budget());

        if let Some(forced) = rule4_force_arc(&cur, &order) {
            let next = forced.apply(&cur)?;
            tracer.push(
                4,
                Some(b),
                RuleAction::ReverseArc {
                    arc: forced.arc,
                    terminal: forced.terminal,
                    flow: forced.flow,
                },
                &cur,
                Some(&next),
            );
            cur = next;
            continue;
        }

        if let Some(plan) = plan_rich_replacement(&cur, &order, &bounds) {
            let (next, map) = plan.apply(&cur)?;
            tracer.push(
                5,
                Some(b),
                RuleAction::ReplaceRich { plan },
                &cur,
                Some(&next),
            );
            origin = map.iter().map(|o| o.and_then(|old| origin[old])).collect();
            cur = next;
            continue;
        }

        if cur.n() > bounds.n_max {
            tracer.push(
                6,
                Some(b),
                RuleAction::SizeNo {
                    n_max: bounds.n_max,
                },
                &cur,
                None,
            );
            return finish(KernelStatus::TrivialNo, tracer, Vec::new(), None, None);
        }
        return finish(
            KernelStatus::Reduced(cur),
            tracer,
            origin,
            Some(bounds),
            Some(order),
        );
    }
}

/// Apply one recorded rule to `state`.
pub fn replay_step(state: &Instance, rec: &RuleApplication) -> Result<KernelStatus> {
    if rec.schema != TRACE_SCHEMA {
        return Err(Error::Replay(format!("unsupported schema {}", rec.schema)));
    }
    if rec.n_before != state.n() || rec.k_before != state.budget() {
        return Err(Error::Replay(format!(
            "step {}: expected n = {}, k = {}, found n = {}, k = {}",
            rec.step,
            rec.n_before,
            rec.k_before,
            state.n(),
            state.budget()
        )));
    }
    let next = match &rec.action {
        RuleAction::TrivialNo | RuleAction::SizeNo { .. } => return Ok(KernelStatus::TrivialNo),
        RuleAction::TrivialYes => return Ok(KernelStatus::TrivialYes),
        RuleAction::DeleteVertices { deleted } => {
            if deleted.iter().any(|&v| v >= state.n()) {
                return Err(Error::Replay(format!(
                    "step {}: deleted id out of range",
                    rec.step
                )));
            }
            state.delete_vertices(deleted).0
        }
        RuleAction::ReverseArc { arc, .. } => {
            let k = state
                .budget()
                .checked_sub(1)
                .ok_or(Error::BudgetExhausted)?;
            let t = state
                .tournament()
                .reverse_arc(*arc)
                .map_err(|e| Error::Replay(format!("step {}: {e}", rec.step)))?;
            state.with_tournament(t)?.with_budget(k)
        }
        RuleAction::ReplaceRich { plan } => plan.apply(state)?.0,
    };
    if next.n() != rec.n_after || next.budget() != rec.k_after {
        return Err(Error::Replay(format!(
            "step {}: size mismatch after replay",
            rec.step
        )));
    }
    Ok(KernelStatus::Reduced(next))
}

/// Replay a whole trace; an empty trace leaves the instance unchanged.
pub fn replay(input: &Instance, trace: &[RuleApplication]) -> Result<KernelStatus> {
    let mut state = input.clone();
    for (i, rec) in trace.iter().enumerate() {
        match replay_step(&state, rec)? {
            KernelStatus::Reduced(next) => state = next,
            terminal if i + 1 == trace.len() => return Ok(terminal),
            _ => {
                return Err(Error::Replay(format!(
                    "step {i} ends the run but is not the last record"
                )))
            }
        }
    }
    Ok(KernelStatus::Reduced(state))
}

/// Serialize a trace as JSON lines with 1-based vertex ids.
pub fn write_trace(trace: &[RuleApplication]) -> Result<String> {
    let mut out = String::new();
    for rec in trace {
        let shifted = rec.shift_ids(true)?;
        out.push_str(&serde_json::to_string(&shifted).expect("trace records serialize"));
        out.push('\n');
    }
    Ok(out)
}

pub fn read_trace(text: &str) -> Result<Vec<RuleApplication>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let rec: RuleApplication = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            rec.shift_ids(false)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::has_t_cycle;
    use crate::solve::{ExactProvider, HeuristicProvider};

    struct Broken;

    impl OrderProvider for Broken {
        fn name(&self) -> &str {
            "broken"
        }

        fn provide(&self, _: &Instance) -> Vec<usize> {
            vec![0, 0]
        }
    }

    fn cycle_plus(k: usize) -> Instance {
        // 3-cycle on {0, 1, 2} with terminal 0, and a dominated vertex 3
        let t = Tournament::from_fn(4, |u, v| (u, v) != (0, 2));
        Instance::new(t, [0], k).unwrap()
    }

    #[test]
    fn transitive_is_trivial_yes() {
        let inst = Instance::new(Tournament::transitive(5), [1, 3], 2).unwrap();
        let out = kernelize(&inst, &HeuristicProvider).unwrap();
        assert_eq!(out.status, KernelStatus::TrivialYes);
        assert_eq!(out.trace.len(), 1);
        assert_eq!(out.trace[0].rule, 2);
    }

    #[test]
    fn cycle_deletes_then_decides() {
        let out = kernelize(&cycle_plus(1), &ExactProvider).unwrap();
        let rules: Vec<u8> = out.trace.iter().map(|r| r.rule).collect();
        assert_eq!(rules, vec![3]);
        // one forward path per affected arc, so the 3-cycle stays
        assert!(matches!(&out.status, KernelStatus::Reduced(r) if r.n() == 3));
        assert_eq!(out.origin, vec![Some(0), Some(1), Some(2)]);
        let out = kernelize(&cycle_plus(0), &ExactProvider).unwrap();
        assert_eq!(out.status, KernelStatus::TrivialNo);
        assert_eq!(
            replay(&cycle_plus(0), &out.trace).unwrap(),
            KernelStatus::TrivialNo
        );
    }

    #[test]
    fn provider_failure_is_an_error_not_no() {
        let t = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        let inst = Instance::new(t, [0], 1).unwrap();
        assert!(matches!(
            kernelize(&inst, &Broken),
            Err(Error::ProviderFailure(_))
        ));
    }

    #[test]
    fn trace_round_trips_through_json() {
        let inst = cycle_plus(1);
        let out = kernelize(&inst, &ExactProvider).unwrap();
        let text = write_trace(&out.trace).unwrap();
        assert!(text.lines().all(|l| l.contains("\"schema\":1")));
        assert!(text.contains("\"deleted\":[4]"));
        assert_eq!(read_trace(&text).unwrap(), out.trace);
        assert!(read_trace("{").is_err());
    }

    #[test]
    fn replay_rejects_mismatch() {
        let out = kernelize(&cycle_plus(1), &ExactProvider).unwrap();
        assert!(replay(&cycle_plus(2), &out.trace).is_err());
    }

    #[test]
    fn canonical_trivial_instances() {
        let yes = KernelStatus::TrivialYes.output_instance();
        assert!(!has_t_cycle(&yes));
        let no = KernelStatus::TrivialNo.output_instance();
        assert!(has_t_cycle(&no) && no.budget() == 0);
    }
}
