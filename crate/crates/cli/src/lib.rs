//! Shared plumbing for the `qsober` command-line front end: cap
//! resolution, report rendering, the seeded corpus and the scenario
//! registry.

use qsober_core::cotopology::{Cotopology, DEFAULT_COTOPOLOGY_CAP};
use qsober_core::fuzzy::DEFAULT_ENUM_CAP;
use qsober_core::qorder::QOrder;
use qsober_core::Quantale;
use serde_json::json;

pub mod corpus;
pub mod scenario;

/// Enumeration caps, resolved in precedence order:
/// command-line flag, then `QSOBER_CAP_*` environment variable, then the
/// library default.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Cap on `Q^X` enumerations (`QSOBER_CAP_ENUM`).
    pub enumeration: usize,
    /// Cap on generated closed families (`QSOBER_CAP_COTOPOLOGY`).
    pub cotopology: usize,
}

impl Caps {
    pub fn resolve(enum_flag: Option<usize>, cotopology_flag: Option<usize>) -> Caps {
        Caps {
            enumeration: enum_flag
                .or_else(|| env_cap("QSOBER_CAP_ENUM"))
                .unwrap_or(DEFAULT_ENUM_CAP),
            cotopology: cotopology_flag
                .or_else(|| env_cap("QSOBER_CAP_COTOPOLOGY"))
                .unwrap_or(DEFAULT_COTOPOLOGY_CAP),
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enumeration: DEFAULT_ENUM_CAP, cotopology: DEFAULT_COTOPOLOGY_CAP }
    }
}

fn env_cap(var: &str) -> Option<usize> {
    std::env::var(var).ok()?.parse().ok()
}

/// The closed family of a cotopology as a label table, with both the
/// requested and the re-derived mode.
pub fn family_json(q: &Quantale, tau: &Cotopology) -> serde_json::Value {
    let closed: Vec<Vec<String>> = tau.closed().iter().map(|a| a.value_labels(q)).collect();
    json!({
        "points": tau.space().names(),
        "size": tau.len(),
        "mode": tau.mode().name(),
        "derived_mode": tau.derived_mode(q).name(),
        "closed": closed,
    })
}

/// A Q-order as a label matrix.
pub fn order_json(q: &Quantale, r: &QOrder) -> serde_json::Value {
    let table: Vec<Vec<&str>> = (0..r.space().len())
        .map(|x| (0..r.space().len()).map(|y| q.label(r.value(x, y))).collect())
        .collect();
    json!({
        "points": r.space().names(),
        "R": table,
    })
}
