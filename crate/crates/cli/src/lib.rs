//! File formats and command implementations behind the `scl` binary.

pub mod exact;
pub mod instance;
pub mod simulate;
pub mod sweep;
pub mod verify;
