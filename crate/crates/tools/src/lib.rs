//! Std companion to `thompson-core`: the length-based attack, experiment
//! sweeps, the line-delimited JSON key exchange and the `thompson` CLI.

pub mod attack;
pub mod bench;
pub mod cli;
pub mod keys;
pub mod sweep;
pub mod wire;
