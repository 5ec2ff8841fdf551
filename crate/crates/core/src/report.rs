//! Reports of bounded searches. A report always carries the bounds it was
//! produced under; the absence of a counterexample is never a proof.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where in a probe the offending element was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeSide {
    /// `v(n_1)...v(n_t)|0>`
    Radical,
    /// `b(s) v(n_1)...v(n_t)|0>`
    Left,
    /// `(v(n_1)...v(n_t)|0>)(n) w`
    Right,
    /// `v(n) w != 0` for an annihilator or center search.
    Action,
    /// `f^m` in an associative algebra.
    Power,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub side: ProbeSide,
    /// Number of iterated factors (`t`, or the exponent `m` for powers).
    pub t: usize,
    /// `n_1, ..., n_t` in written order (applied right to left).
    pub modes: Vec<i64>,
    /// `b` for the left probe, `w` for the right and action probes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub operand: Option<String>,
    /// `s` for the left probe, `n` for the right probe.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outer_mode: Option<i64>,
    /// The offending element in canonical text form.
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub tested: u64,
    pub bounds: BTreeMap<String, Value>,
    /// First counterexample found, if any.
    pub counterexample: Option<Counterexample>,
    /// One counterexample per falsified `t` (per side), in increasing `t`.
    #[serde(default)]
    pub counterexamples: Vec<Counterexample>,
    /// Every tail `[t0, bound]` with `t0` at most this value contains a
    /// counterexample.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub largest_falsified_tail_start: Option<u64>,
    pub conclusion: String,
}

impl ProbeReport {
    pub fn new(bounds: BTreeMap<String, Value>) -> Self {
        ProbeReport {
            tested: 0,
            bounds,
            counterexample: None,
            counterexamples: Vec::new(),
            largest_falsified_tail_start: None,
            conclusion: String::new(),
        }
    }

    pub fn push(&mut self, cx: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(cx.clone());
        }
        self.counterexamples.push(cx);
    }

    /// The `t` values that produced a counterexample.
    pub fn falsified_lengths(&self) -> Vec<usize> {
        let mut ts: Vec<usize> = self.counterexamples.iter().map(|c| c.t).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    pub fn bounds_text(&self) -> String {
        self.bounds
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub(crate) fn bounds<const N: usize>(entries: [(&str, Value); N]) -> BTreeMap<String, Value> {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
