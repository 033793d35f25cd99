//! Kernelization for Subset Feedback Arc Set in Tournaments.
//!
//! Given a tournament, a terminal set `T`, and a budget `k`, decide whether
//! at most `k` arcs can be removed so that no directed cycle passes through
//! a terminal. [`reduce::kernelize`] shrinks an instance to one whose size
//! is bounded in `k` and the cost of a working order.

pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod order;
pub mod reduce;
pub mod regular;
pub mod scc;
pub mod solve;
pub mod tournament;
pub mod xcheck;

pub use error::{Error, Result};
pub use instance::{
    has_t_cycle, in_t_cycle, order_from_solution, solution_from_order, t_cycle_vertices,
    verify_solution, Instance,
};
pub use order::{
    affected_arcs, backward_arcs, backward_count, cost, maximal_nonterminal_intervals, Interval,
    IntervalPartition, VertexOrder,
};
pub use reduce::{kernelize, BoundSet, KernelResult, KernelStatus, OrderProvider};
pub use regular::{is_regular, regularize, RegularizationReport};
pub use tournament::{Arc, ArcSet, Tournament};
