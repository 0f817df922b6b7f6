//! Indoor visible-light ultra-dense network simulator.
//!
//! A 5×5 grid of ceiling LED access points reuses spectrum in two- or
//! four-block patterns. The central AP serves a handful of mobile UEs and
//! learns per-UE optical transmit powers with tabular Q-learning, trading
//! mean throughput against energy and the interference it leaks into
//! co-channel neighbor cells.
//!
//! Module map:
//!
//! - [`channel`]: Lambertian line-of-sight gain.
//! - [`topology`]: AP grid, spectrum blocks, co-channel neighbors.
//! - [`mobility`]: random-waypoint UEs confined to a cell.
//! - [`link`]: SINR, Shannon rate, outgoing interference, utility.
//! - [`agent`]: action space, state quantization, Q-table, ε-greedy, Bellman update.
//! - [`harness`]: episodes, Monte-Carlo averaging, sweeps, CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agent;
pub mod channel;
mod error;
pub mod harness;
pub mod link;
pub mod mobility;
pub mod topology;

pub use error::{Error, Result};
