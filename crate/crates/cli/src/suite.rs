//! The acceptance battery, shared with the core crate's `acceptance` test.

use serde_json::{json, Value};

#[allow(dead_code)]
#[path = "../../core/tests/acceptance/criteria.rs"]
mod criteria;

pub use criteria::Outcome;

pub fn all_checks() -> Vec<Outcome> {
    criteria::run_all()
}

/// The checks that only concern finite groups and their cocycles.
pub fn group_checks() -> Vec<Outcome> {
    [5, 6, 8]
        .into_iter()
        .map(|id| {
            let (name, f) = criteria::CRITERIA[id - 1];
            criteria::run_one(id, name, f)
        })
        .collect()
}

pub fn to_json(outcomes: &[Outcome], timing: bool) -> Value {
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({
                "id": o.id,
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
            });
            if timing {
                v["seconds"] = json!(o.seconds);
            }
            v
        })
        .collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    json!({ "passed": outcomes.len() - failed, "failed": failed, "checks": rows })
}
