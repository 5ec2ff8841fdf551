//! The Zhu algebra `A(V) = V/O(V)` of `M_1(1)` seen through a finite window.
//!
//! `a ⋆ b = Σ_i C(deg a, i) a(i-1) b` and `O(V)` is spanned by
//! `a ∘ b = Σ_i C(deg a, i) a(i-2) b`, with `deg a` the weight. The window at
//! cap `c` is the span of `a ∘ b` over monomials with `wt a + wt b <= c`.
//! Generators are kept whole: `a ∘ b` is not homogeneous (`[1] ∘ |0>` is
//! `a(-2)|0> + a(-1)|0>`), so cutting them at the cap would put classes that
//! are not in `O(V)` into the span. A `true` answer is therefore exact; a
//! `false` answer holds relative to the window only.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{partitions_up_to, FockState, Partition};
use crate::linalg::{rank, row_reduce, span_membership, RationalMatrix, SparseVector};
use crate::modes::ModeEngine;
use crate::report::ProbeReport;
use crate::vamz::action_search;

/// All partitions of weight at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCappedSpace {
    pub cap: u64,
    pub basis: Vec<Partition>,
}

impl WeightCappedSpace {
    pub fn new(cap: u64) -> Self {
        WeightCappedSpace {
            cap,
            basis: partitions_up_to(cap),
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn check(&self, x: &FockState) -> Result<()> {
        match x.max_weight() {
            Some(w) if w > self.cap => Err(Error::WeightCapExceeded {
                weight: w,
                cap: self.cap,
            }),
            _ => Ok(()),
        }
    }
}

fn binom_sum(engine: &ModeEngine, a: &FockState, shift: i64, b: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (deg, part) in a.weight_components() {
        for i in 0..=deg {
            let c = BigRational::from_integer(crate::linalg::binomial(deg as i64, i));
            out.add_scaled(&engine.mode_product(&part, i as i64 + shift, b), &c);
        }
    }
    out
}

/// `a ⋆ b`, linear over the homogeneous components of `a`.
pub fn zhu_star(engine: &ModeEngine, a: &FockState, b: &FockState) -> FockState {
    binom_sum(engine, a, -1, b)
}

/// `a ∘ b`, a spanning element of `O(V)`.
pub fn zhu_ov_generator(engine: &ModeEngine, a: &FockState, b: &FockState) -> FockState {
    binom_sum(engine, a, -2, b)
}

/// Echelon basis of the `O(V)` window at one cap.
#[derive(Debug)]
pub struct OvWindow {
    pub cap: u64,
    pub generators: usize,
    basis: Vec<SparseVector<Partition>>,
}

impl OvWindow {
    pub fn build(engine: &ModeEngine, cap: u64) -> Self {
        let monomials = partitions_up_to(cap);
        let mut gens = Vec::new();
        for a in &monomials {
            for b in &monomials {
                if a.weight() + b.weight() <= cap {
                    let g = zhu_ov_generator(
                        engine,
                        &FockState::monomial(a.clone()),
                        &FockState::monomial(b.clone()),
                    );
                    if !g.is_zero() {
                        gens.push(g.into_vector());
                    }
                }
            }
        }
        let generators = gens.len();
        let (reduced, _) = row_reduce(&RationalMatrix::from_rows(gens));
        let basis = reduced.rows().iter().filter(|r| !r.is_zero()).cloned().collect();
        OvWindow {
            cap,
            generators,
            basis,
        }
    }

    /// Cached per cap for the process.
    pub fn cached(cap: u64) -> Arc<OvWindow> {
        static WINDOWS: OnceLock<Mutex<HashMap<u64, Arc<OvWindow>>>> = OnceLock::new();
        let windows = WINDOWS.get_or_init(Default::default);
        if let Some(w) = windows.lock().expect("window cache poisoned").get(&cap) {
            return Arc::clone(w);
        }
        let built = Arc::new(OvWindow::build(ModeEngine::shared(), cap));
        windows
            .lock()
            .expect("window cache poisoned")
            .entry(cap)
            .or_insert(built)
            .clone()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &FockState) -> Result<bool> {
        WeightCappedSpace::new(self.cap).check(x)?;
        Ok(span_membership(&self.basis, x.as_vector()).is_some())
    }

    /// Whether the classes of `xs` are linearly independent modulo the window.
    pub fn independent(&self, xs: &[FockState]) -> Result<bool> {
        let space = WeightCappedSpace::new(self.cap);
        for x in xs {
            space.check(x)?;
        }
        let mut all = self.basis.clone();
        all.extend(xs.iter().map(|x| x.as_vector().clone()));
        Ok(rank(&all) == self.basis.len() + xs.len())
    }
}

/// `x ∈ O(V)` within the window at `cap`.
pub fn zhu_ov_membership(x: &FockState, cap: u64) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    OvWindow::cached(cap).contains(x)
}

/// `a ⋆ b - b ⋆ a ∈ O(V)` at `cap`.
pub fn zhu_commutativity_check(engine: &ModeEngine, a: &FockState, b: &FockState, cap: u64) -> Result<bool> {
    let diff = zhu_star(engine, a, b) - zhu_star(engine, b, a);
    zhu_ov_membership(&diff, cap)
}

/// `(a ⋆ b) ⋆ c - a ⋆ (b ⋆ c) ∈ O(V)` at `cap`.
pub fn zhu_associativity_check(
    engine: &ModeEngine,
    a: &FockState,
    b: &FockState,
    c: &FockState,
    cap: u64,
) -> Result<bool> {
    let left = zhu_star(engine, &zhu_star(engine, a, b), c);
    let right = zhu_star(engine, a, &zhu_star(engine, b, c));
    zhu_ov_membership(&(left - right), cap)
}

/// Whether the classes of `xs` are independent modulo `O(V)` at `cap`.
pub fn zhu_independence_check(xs: &[FockState], cap: u64) -> Result<bool> {
    OvWindow::cached(cap).independent(xs)
}

/// Searches `(w, n)` with `n != -1` and `v(n) w != 0`. A witness refutes
/// `Y(v, z) = v(-1)`; none within bounds is inconclusive.
pub fn center_probe(
    engine: &ModeEngine,
    v: &FockState,
    corpus: &[FockState],
    window: &[i64],
) -> ProbeReport {
    let mut report = action_search(engine, v, corpus, window, &[-1]);
    report.bounds.insert("excluded_mode".into(), json!(-1));
    report.conclusion = match &report.counterexample {
        Some(cx) => format!(
            "v(n) w != 0 for w = {}, n = {}: v is not central",
            cx.operand.as_deref().unwrap_or("?"),
            cx.modes[0]
        ),
        None => "no violation within bounds; centrality is not established beyond them".into(),
    };
    report
}

/// `e(-1) e = e`.
pub fn idempotent_check(engine: &ModeEngine, e: &FockState) -> bool {
    engine.mode_product(e, -1, e) == *e
}
