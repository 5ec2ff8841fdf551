//! Direct coefficient extraction from the normally ordered vertex operator
//!
//! ```text
//! Y(a(-n_1)...a(-n_d)|0>, z) = : Π_j (1/(n_j-1)!) ∂^{n_j-1} a(z) :
//! ```
//!
//! Each factor expands as `Σ_m (-1)^{n_j-1} C(m+n_j-1, n_j-1) a(m) z^{-m-n_j}`.
//! The coefficient of `z^{-n-1}` collects all index tuples with
//! `Σ (m_j + n_j) = n + 1`; normal ordering puts every creation mode to the
//! left of every annihilation mode. This path shares nothing with
//! [`super::ModeEngine`] beyond the single-mode action `a(m)`.

use crate::fock::{apply_alpha, FockState, Partition};
use num_traits::{One, Zero};

use crate::linalg::{binomial, sign_pow, Rational};

/// `A(n)w` by normal-ordered expansion, bilinear in `A` and `w`.
pub fn mode_product_oracle(a: &FockState, n: i64, w: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (pa, ca) in a.terms() {
        for (pw, cw) in w.terms() {
            let c: Rational = ca * cw;
            out.add_scaled(&monomial_oracle(pa, n, pw), &c);
        }
    }
    out
}

fn factor_coeff(part: i64, m: i64) -> Rational {
    let p = (part - 1) as u64;
    Rational::from_integer(binomial(m + part - 1, p) * sign_pow(part - 1))
}

struct Search<'a> {
    parts: Vec<i64>,
    w: &'a Partition,
    /// Σ m_j required.
    mode_sum: i64,
    /// Weight of the result; the total creation magnitude cannot exceed it.
    target: i64,
    out: FockState,
}

impl Search<'_> {
    fn go(&mut self, j: usize, modes: &mut Vec<i64>, sum: i64, lowered: i64, raised: i64, coeff: Rational) {
        let wt = self.w.weight() as i64;
        if j + 1 == self.parts.len() {
            let m = self.mode_sum - sum;
            let (lowered, raised) = match m {
                0 => return,
                m if m > 0 => (lowered + m, raised),
                m => (lowered, raised - m),
            };
            if lowered > wt || raised > self.target {
                return;
            }
            let c = &coeff * factor_coeff(self.parts[j], m);
            if c.is_zero() {
                return;
            }
            modes.push(m);
            self.emit(modes, &c);
            modes.pop();
            return;
        }
        for m in -self.target..=wt {
            if m == 0 {
                continue;
            }
            let (nl, nr) = if m > 0 { (lowered + m, raised) } else { (lowered, raised - m) };
            if nl > wt || nr > self.target {
                continue;
            }
            let c = factor_coeff(self.parts[j], m);
            if c.is_zero() {
                continue;
            }
            modes.push(m);
            self.go(j + 1, modes, sum + m, nl, nr, &coeff * c);
            modes.pop();
        }
    }

    fn emit(&mut self, modes: &[i64], coeff: &Rational) {
        let mut state = FockState::monomial(self.w.clone());
        for &m in modes.iter().filter(|&&m| m > 0) {
            state = apply_alpha(m, &state);
            if state.is_zero() {
                return;
            }
        }
        for &m in modes.iter().filter(|&&m| m < 0) {
            state = apply_alpha(m, &state);
        }
        self.out.add_scaled(&state, coeff);
    }
}

fn monomial_oracle(a: &Partition, n: i64, w: &Partition) -> FockState {
    let weight_a = a.weight() as i64;
    let target = weight_a + w.weight() as i64 - n - 1;
    if target < 0 {
        return FockState::zero();
    }
    if a.is_vacuum() {
        // Y(|0>, z) = 1
        return if n == -1 {
            FockState::monomial(w.clone())
        } else {
            FockState::zero()
        };
    }
    let mut search = Search {
        parts: a.parts().iter().map(|&p| i64::from(p)).collect(),
        w,
        mode_sum: n + 1 - weight_a,
        target,
        out: FockState::zero(),
    };
    search.go(0, &mut Vec::new(), 0, 0, 0, Rational::one());
    search.out
}
