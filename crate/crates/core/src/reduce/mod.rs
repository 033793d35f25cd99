//! Reduction rules, their bounds, and the kernelization loop.

mod bounds;
pub mod checks;
mod flow;
mod kernel;
mod rich;
mod rules;

pub use bounds::BoundSet;
pub use flow::{forward_flow, unit_max_flow};
pub use kernel::{
    kernelize, read_trace, replay, replay_step, working_order, write_trace, KernelResult,
    KernelStatus, OrderProvider, RuleAction, RuleApplication, TRACE_SCHEMA,
};
pub use rich::{classify_rich, RichPartition};
pub use rules::{
    is_reduced, rule1_trivial_no, rule2_trivial_yes, rule3_delete_bypassed, rule4_force_arc,
    rule5_rich_replace, rule6_size_no, BypassDeletion, ForcedArc, RichReplacement,
};
