//! The Fock space of the rank-1 Heisenberg vertex algebra: states are
//! rational combinations of monomials `a(-n_1)...a(-n_d)|0>`, indexed by
//! partitions. The generator is normalized so that `<a,a> = 1`, hence
//! `[a(m), a(n)] = m δ_{m+n,0}`, and `a(0)` acts as zero.

mod parse;
mod partition;
mod state;

use std::collections::BTreeMap;

pub use parse::{format_state, parse_state};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use state::FockState;

use crate::linalg::rat;

/// The free-boson mode `a(n)` acting on a state.
///
/// Creation (`n < 0`) inserts the part `-n`; annihilation (`n > 0`) removes
/// one copy of `n` with factor `n * multiplicity`.
pub fn apply_alpha(n: i64, w: &FockState) -> FockState {
    match n {
        0 => FockState::zero(),
        n if n < 0 => w.map_monomials(|p| FockState::monomial(p.with_part((-n) as u32))),
        n => {
            let part = n as u32;
            w.map_monomials(|p| match p.without_part(part) {
                Some(rest) => FockState::term(rest, rat(n * p.multiplicity(part) as i64)),
                None => FockState::zero(),
            })
        }
    }
}

/// Applies `a(-p)` for every part `p`, i.e. multiplies by a creation monomial.
pub fn create(parts: &Partition, w: &FockState) -> FockState {
    w.map_monomials(|q| {
        let mut out = q.clone();
        for &p in parts.parts() {
            out = out.with_part(p);
        }
        FockState::monomial(out)
    })
}

/// The translation operator `D = L(-1)`, the derivation with
/// `a(-n) -> n a(-n-1)` and `D|0> = 0`.
pub fn translate_d(w: &FockState) -> FockState {
    w.map_monomials(|p| {
        let mut out = FockState::zero();
        for (part, mult) in p.grouped() {
            let rest = p.without_part(part).expect("part present");
            out.add_term(rest.with_part(part + 1), rat(i64::from(part) * mult as i64));
        }
        out
    })
}

/// `D^k w`.
pub fn translate_d_pow(k: u64, w: &FockState) -> FockState {
    (0..k).fold(w.clone(), |acc, _| translate_d(&acc))
}

/// Splits a state by `(weight, α-length)`.
pub fn grade_decompose(w: &FockState) -> BTreeMap<(u64, usize), FockState> {
    let mut out: BTreeMap<(u64, usize), FockState> = BTreeMap::new();
    for (p, c) in w.terms() {
        out.entry((p.weight(), p.length()))
            .or_default()
            .add_term(p.clone(), c.clone());
    }
    out
}

/// Projection onto the eigenspace of the order-`k` automorphism
/// `a -> e^{2πi/k} a` with eigenvalue index `l`: keeps monomials whose
/// α-length is congruent to `l` mod `k`.
///
/// # Panics
/// If `k < 2`.
pub fn eigenspace_project(w: &FockState, k: usize, l: usize) -> FockState {
    assert!(k >= 2, "eigenspace modulus must be at least 2");
    w.filter(|p| p.length() % k == l % k)
}
