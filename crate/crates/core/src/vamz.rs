//! Subspaces of `M_1(1)`, their Mathieu-Zhao decisions, and bounded probes
//! of the radical, the left/right strong radicals and the annihilator.
//!
//! Products `v(n_1)...v(n_t)|0>` are operator compositions applied to the
//! vacuum, rightmost first. Probes only ever falsify: a report with no
//! counterexample says nothing beyond its bounds.
//!
//! For length sets the decision follows the constant gate for residue `0`:
//! the vacuum has length `0`, so a proper subspace containing it has `|0>`
//! in its radical but not in its strong radical. This is why an eigenspace
//! union containing residue `0` is reported as not Mathieu-Zhao.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{parse_state, partitions_up_to, FockState};
use crate::linalg::{span_membership, SparseVector};
use crate::modes::{check_skew_symmetry, ModeEngine};
use crate::report::{bounds, Counterexample, ProbeReport, ProbeSide};
use crate::setcalc::{mz_witness_search, MZVerdict, PeriodicSet};
use crate::text::Cursor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceSpec {
    /// Span of the monomials whose α-length lies in the set.
    LengthSet(PeriodicSet),
    /// Span of the monomials with length `≡ l (mod k)` for some listed `l`.
    EigenspaceUnion { k: u64, residues: BTreeSet<u64> },
    /// A finite span. Membership is exact linear algebra and only defined
    /// for states of weight at most `weight_cap`.
    WeightWindowSpan {
        generators: Vec<FockState>,
        weight_cap: u64,
    },
}

impl SubspaceSpec {
    pub fn eigenspace_union(k: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument("eigenspace modulus must be at least 2".into()));
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(r) = residues.iter().find(|&&r| r >= k) {
            return Err(Error::InvalidArgument(format!("residue {r} is not below {k}")));
        }
        Ok(SubspaceSpec::EigenspaceUnion { k, residues })
    }

    pub fn weight_window(generators: Vec<FockState>, weight_cap: u64) -> Result<Self> {
        if let Some(w) = generators.iter().filter_map(FockState::max_weight).max() {
            if w > weight_cap {
                return Err(Error::WeightCapExceeded { weight: w, cap: weight_cap });
            }
        }
        Ok(SubspaceSpec::WeightWindowSpan {
            generators,
            weight_cap,
        })
    }

    /// The length set, for the two monomial variants.
    pub fn length_set(&self) -> Option<PeriodicSet> {
        match self {
            SubspaceSpec::LengthSet(s) => Some(s.clone()),
            SubspaceSpec::EigenspaceUnion { k, residues } => Some(
                PeriodicSet::residue_classes(*k, residues.iter().copied())
                    .expect("validated eigenspace union"),
            ),
            SubspaceSpec::WeightWindowSpan { .. } => None,
        }
    }

    pub fn member(&self, w: &FockState) -> Result<bool> {
        subspace_member(self, w)
    }

    /// Parses `lengths mod 3 in {1,2}`, `lengths in (<set>)` or
    /// `span <file> [cap N]`. The file holds one state per line; blank lines
    /// and lines starting with `#` are skipped. Without `cap` the cap is the
    /// largest generator weight.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if let Some(rest) = trimmed.strip_prefix("span") {
            return parse_span(rest.trim());
        }
        let mut cur = Cursor::new(text);
        if !cur.eat_word("lengths") {
            return Err(cur.error("expected `lengths` or `span`"));
        }
        if cur.eat_word("mod") {
            let k = cur.uint()?;
            if !cur.eat_word("in") {
                return Err(cur.error("expected `in`"));
            }
            let at = cur.pos();
            let residues = cur.uint_set()?;
            cur.finish()?;
            return Self::eigenspace_union(k, residues).map_err(|e| match e {
                Error::InvalidArgument(m) => Error::parse(at, m),
                other => other,
            });
        }
        if !cur.eat_word("in") {
            return Err(cur.error("expected `mod` or `in`"));
        }
        cur.expect("(")?;
        let start = cur.pos();
        let close = text
            .rfind(')')
            .filter(|&c| c >= start)
            .ok_or_else(|| Error::parse(text.len(), "expected `)`"))?;
        if !text[close + 1..].trim().is_empty() {
            return Err(Error::parse(close + 1, "unexpected trailing input"));
        }
        let set = PeriodicSet::parse(&text[start..close]).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(start + position, message),
            other => other,
        })?;
        Ok(SubspaceSpec::LengthSet(set))
    }
}

fn parse_span(rest: &str) -> Result<SubspaceSpec> {
    let (path, cap) = match rest.rsplit_once(" cap ") {
        Some((p, c)) => {
            let cap = c
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad cap `{}`", c.trim())))?;
            (p.trim(), Some(cap))
        }
        None => (rest, None),
    };
    if path.is_empty() {
        return Err(Error::InvalidArgument("`span` needs a generator file".into()));
    }
    let generators = read_generators(Path::new(path))?;
    let cap = cap.unwrap_or_else(|| {
        generators
            .iter()
            .filter_map(FockState::max_weight)
            .max()
            .unwrap_or(0)
    });
    SubspaceSpec::weight_window(generators, cap)
}

fn read_generators(path: &Path) -> Result<Vec<FockState>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            parse_state(l).map_err(|e| {
                Error::InvalidArgument(format!("{}:{}: {e}", path.display(), i + 1))
            })
        })
        .collect()
}

impl fmt::Display for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceSpec::LengthSet(s) => write!(f, "lengths in ({s})"),
            SubspaceSpec::EigenspaceUnion { k, residues } => {
                let r: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "lengths mod {k} in {{{}}}", r.join(","))
            }
            SubspaceSpec::WeightWindowSpan {
                generators,
                weight_cap,
            } => write!(f, "span of {} generators, cap {weight_cap}", generators.len()),
        }
    }
}

/// Membership of `w` in the subspace. Monomial variants test every monomial
/// of `w`; the finite span uses exact row reduction.
pub fn subspace_member(m: &SubspaceSpec, w: &FockState) -> Result<bool> {
    match m {
        SubspaceSpec::WeightWindowSpan {
            generators,
            weight_cap,
        } => {
            if let Some(weight) = w.max_weight().filter(|wt| wt > weight_cap) {
                return Err(Error::WeightCapExceeded {
                    weight,
                    cap: *weight_cap,
                });
            }
            let basis: Vec<SparseVector<_>> =
                generators.iter().map(|g| g.as_vector().clone()).collect();
            Ok(span_membership(&basis, w.as_vector()).is_some())
        }
        _ => {
            let set = m.length_set().expect("monomial variant");
            Ok(w.terms().all(|(p, _)| set.member(p.length() as u64)))
        }
    }
}

/// Mathieu-Zhao decision for length-set subspaces, through the same core as
/// monomial subspaces of `K[x]`.
pub fn fock_mz_decide(m: &SubspaceSpec) -> MZVerdict {
    match m.length_set() {
        Some(set) => mz_witness_search(&set),
        None => MZVerdict::inapplicable(
            "no decision procedure for a finite span; only membership is available",
        ),
    }
}

/// Search limits shared by the probes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeBounds {
    pub window: Vec<i64>,
    pub t_max: usize,
    pub corpus_weight: u64,
}

impl Default for ProbeBounds {
    fn default() -> Self {
        ProbeBounds {
            window: (-4..=4).collect(),
            t_max: 6,
            corpus_weight: 4,
        }
    }
}

impl ProbeBounds {
    /// All monomials of weight at most `corpus_weight`.
    pub fn corpus(&self) -> Vec<FockState> {
        partitions_up_to(self.corpus_weight)
            .into_iter()
            .map(FockState::monomial)
            .collect()
    }
}

/// One level of the product tree: `(modes, v(n_1)...v(n_t)|0>)`, nonzero
/// and deduplicated by state, in deterministic order.
fn product_levels(
    engine: &ModeEngine,
    v: &FockState,
    t_max: usize,
    window: &[i64],
) -> Vec<Vec<(Vec<i64>, FockState)>> {
    let mut levels = Vec::with_capacity(t_max);
    let mut current = vec![(Vec::new(), FockState::vacuum())];
    for _ in 0..t_max {
        let candidates: Vec<(Vec<i64>, FockState)> = current
            .par_iter()
            .flat_map_iter(|(modes, state)| {
                window.iter().map(move |&n| {
                    let mut seq = Vec::with_capacity(modes.len() + 1);
                    seq.push(n);
                    seq.extend_from_slice(modes);
                    (seq, engine.mode_product(v, n, state))
                })
            })
            .collect();
        let mut seen = HashSet::new();
        let next: Vec<_> = candidates
            .into_iter()
            .filter(|(_, s)| !s.is_zero() && seen.insert(s.clone()))
            .collect();
        levels.push(next.clone());
        current = next;
    }
    levels
}

fn window_json(window: &[i64]) -> serde_json::Value {
    json!(window)
}

fn tail_conclusion(report: &ProbeReport, t_max: usize, what: &str) -> String {
    let ts = report.falsified_lengths();
    match ts.last() {
        None => format!(
            "no counterexample up to bound: every tested {what} lies in M for t <= {t_max}; \
             this does not establish radical membership"
        ),
        Some(&last) if last == t_max => format!(
            "counterexamples at t ∈ {ts:?}; every tail [t0, {t_max}] contains one, so no tail \
             is clean up to the bound (recurrence beyond t = {t_max} is not certified)"
        ),
        Some(&last) => format!(
            "counterexamples at t ∈ {ts:?}; tails [t0, {t_max}] with t0 <= {last} contain one, \
             the tail [{}, {t_max}] is clean up to the bound only",
            last + 1
        ),
    }
}

/// Bounded search for products `v(n_1)...v(n_t)|0>` outside `M`. Every `t`
/// in `1..=t_max` is searched; one counterexample is recorded per falsified
/// `t`, and `largest_falsified_tail_start` is the largest such `t`.
pub fn radical_probe(
    engine: &ModeEngine,
    v: &FockState,
    m: &SubspaceSpec,
    t_max: usize,
    window: &[i64],
) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(bounds([
        ("subspace", json!(m.to_string())),
        ("t_max", json!(t_max)),
        ("window", window_json(window)),
    ]));
    for (i, level) in product_levels(engine, v, t_max, window).iter().enumerate() {
        let t = i + 1;
        report.tested += level.len() as u64;
        for (modes, state) in level {
            if !subspace_member(m, state)? {
                report.push(Counterexample {
                    side: ProbeSide::Radical,
                    t,
                    modes: modes.clone(),
                    operand: None,
                    outer_mode: None,
                    state: state.to_string(),
                });
                break;
            }
        }
    }
    report.largest_falsified_tail_start = report.falsified_lengths().last().map(|&t| t as u64);
    report.conclusion = if v.is_zero() {
        "v = 0: every product is 0 and lies in M; no counterexample up to bound".into()
    } else {
        tail_conclusion(&report, t_max, "product")
    };
    Ok(report)
}

fn first_failure<T: Sync>(
    items: &[T],
    eval: impl Fn(&T) -> Result<Option<Counterexample>> + Sync + Send,
) -> Result<Option<Counterexample>> {
    let results: Vec<Result<Option<Counterexample>>> = items.par_iter().map(eval).collect();
    for r in results {
        if let Some(cx) = r? {
            return Ok(Some(cx));
        }
    }
    Ok(None)
}

/// Left probe `b(s) v(n_1)...v(n_t)|0>` and right probe
/// `(v(n_1)...v(n_t)|0>)(n) w` over `b, w` in the corpus and `s, n` in the
/// window. Each side records at most one counterexample per `t`.
pub fn strong_radical_probe(
    engine: &ModeEngine,
    v: &FockState,
    m: &SubspaceSpec,
    corpus: &[FockState],
    t_max: usize,
    window: &[i64],
) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(bounds([
        ("subspace", json!(m.to_string())),
        ("t_max", json!(t_max)),
        ("window", window_json(window)),
        ("corpus_size", json!(corpus.len())),
    ]));
    let pairs: Vec<(&FockState, i64)> = corpus
        .iter()
        .flat_map(|b| window.iter().map(move |&s| (b, s)))
        .collect();
    let mut left_ts = BTreeSet::new();
    let mut right_ts = BTreeSet::new();
    for (i, level) in product_levels(engine, v, t_max, window).iter().enumerate() {
        let t = i + 1;
        let mut left = None;
        let mut right = None;
        for (modes, product) in level {
            report.tested += 2 * pairs.len() as u64;
            if left.is_none() {
                left = first_failure(&pairs, |&(b, s)| {
                    let out = engine.mode_product(b, s, product);
                    Ok((!subspace_member(m, &out)?).then(|| Counterexample {
                        side: ProbeSide::Left,
                        t,
                        modes: modes.clone(),
                        operand: Some(b.to_string()),
                        outer_mode: Some(s),
                        state: out.to_string(),
                    }))
                })?;
            }
            if right.is_none() {
                right = first_failure(&pairs, |&(w, n)| {
                    let out = engine.mode_product(product, n, w);
                    Ok((!subspace_member(m, &out)?).then(|| Counterexample {
                        side: ProbeSide::Right,
                        t,
                        modes: modes.clone(),
                        operand: Some(w.to_string()),
                        outer_mode: Some(n),
                        state: out.to_string(),
                    }))
                })?;
            }
            if left.is_some() && right.is_some() {
                break;
            }
        }
        for cx in [left, right].into_iter().flatten() {
            match cx.side {
                ProbeSide::Left => left_ts.insert(t),
                _ => right_ts.insert(t),
            };
            report.push(cx);
        }
    }
    report.largest_falsified_tail_start = report.falsified_lengths().last().map(|&t| t as u64);
    let side = |name: &str, ts: &BTreeSet<usize>| match ts.last() {
        None => format!("{name}: no counterexample up to bound"),
        Some(&last) => format!(
            "{name}: counterexamples at t ∈ {:?}, largest falsified tail start {last}",
            ts.iter().collect::<Vec<_>>()
        ),
    };
    report.conclusion = format!(
        "{}; {}; bounded search only, this does not establish strong radical membership",
        side("left", &left_ts),
        side("right", &right_ts)
    );
    Ok(report)
}

/// Searches `(w, n)` with `v(n) w != 0`, `w` in the corpus (in order) and `n`
/// in the window from the top down. Modes in `skip` are not tried.
pub(crate) fn action_search(
    engine: &ModeEngine,
    v: &FockState,
    corpus: &[FockState],
    window: &[i64],
    skip: &[i64],
) -> ProbeReport {
    let mut report = ProbeReport::new(bounds([
        ("window", window_json(window)),
        ("corpus_size", json!(corpus.len())),
    ]));
    let mut modes: Vec<i64> = window.iter().copied().filter(|n| !skip.contains(n)).collect();
    modes.sort_unstable_by(|a, b| b.cmp(a));
    'outer: for w in corpus {
        for &n in &modes {
            report.tested += 1;
            let out = engine.mode_product(v, n, w);
            if !out.is_zero() {
                report.push(Counterexample {
                    side: ProbeSide::Action,
                    t: 1,
                    modes: vec![n],
                    operand: Some(w.to_string()),
                    outer_mode: Some(n),
                    state: out.to_string(),
                });
                break 'outer;
            }
        }
    }
    report
}

/// Looks for a witness that `v` does not annihilate the corpus. A nonzero `v`
/// is expected to have one; none within bounds is inconclusive.
pub fn annihilator_probe(
    engine: &ModeEngine,
    v: &FockState,
    corpus: &[FockState],
    window: &[i64],
) -> ProbeReport {
    let mut report = action_search(engine, v, corpus, window, &[]);
    report.conclusion = match (&report.counterexample, v.is_zero()) {
        (_, true) => "v is the zero vector: it annihilates everything, no witness exists".into(),
        (Some(cx), false) => format!(
            "v(n) w != 0 for w = {}, n = {}: v is not in the annihilator",
            cx.operand.as_deref().unwrap_or("?"),
            cx.modes[0]
        ),
        (None, false) => {
            "inconclusive: no witness within bounds; this is not membership in the annihilator"
                .into()
        }
    };
    report
}

/// Recomputes a counterexample from scratch with an uncached engine.
pub fn reevaluate(v: &FockState, cx: &Counterexample) -> Result<FockState> {
    let engine = ModeEngine::uncached();
    let operand = cx.operand.as_deref().map(parse_state).transpose()?;
    if cx.side == ProbeSide::Action {
        let w = operand.ok_or_else(|| Error::InvalidArgument("missing operand".into()))?;
        return Ok(engine.mode_product(v, cx.modes[0], &w));
    }
    let product = cx
        .modes
        .iter()
        .rev()
        .fold(FockState::vacuum(), |acc, &n| engine.mode_product(v, n, &acc));
    let outer = || {
        cx.outer_mode
            .ok_or_else(|| Error::InvalidArgument("missing outer mode".into()))
    };
    let need = || {
        operand
            .clone()
            .ok_or_else(|| Error::InvalidArgument("missing operand".into()))
    };
    Ok(match cx.side {
        ProbeSide::Radical | ProbeSide::Power | ProbeSide::Action => product,
        ProbeSide::Left => engine.mode_product(&need()?, outer()?, &product),
        ProbeSide::Right => engine.mode_product(&product, outer()?, &need()?),
    })
}

/// True iff the recomputed counterexample matches its recorded state and
/// lies outside `M`.
pub fn counterexample_holds(v: &FockState, m: &SubspaceSpec, cx: &Counterexample) -> Result<bool> {
    let state = reevaluate(v, cx)?;
    Ok(state == parse_state(&cx.state)? && !subspace_member(m, &state)?)
}

/// For `b(s)u` in `M`, whether the skew-symmetric expansion of `b(s)u` in
/// terms of `u(s+i)b` also lies in `M`.
pub fn skew_transform_preserves(
    engine: &ModeEngine,
    m: &SubspaceSpec,
    b: &FockState,
    s: i64,
    u: &FockState,
) -> Result<bool> {
    let d = check_skew_symmetry(engine, b, u, s);
    Ok(!subspace_member(m, &d.left)? || subspace_member(m, &d.right)?)
}
