//! Size caps for the exponential or quadratic-memory routines.
//!
//! Each cap can be overridden through an environment variable.

use std::env;

pub const ISO_CAP_VAR: &str = "PRINCLIFT_ISO_CAP";
pub const CON_CAP_VAR: &str = "PRINCLIFT_CON_CAP";
pub const MAX_ELEMENTS_VAR: &str = "PRINCLIFT_MAX_ELEMENTS";

fn read(var: &str, default: usize) -> usize {
    env::var(var)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Largest poset handed to isomorphism search.
pub fn iso_cap() -> usize {
    read(ISO_CAP_VAR, 64)
}

/// Largest lattice whose full congruence lattice is enumerated.
pub fn con_cap() -> usize {
    read(CON_CAP_VAR, 64)
}

/// Largest lattice for which join/meet tables are materialized.
pub fn max_elements() -> usize {
    read(MAX_ELEMENTS_VAR, 6000)
}
