//! Eventually periodic subsets of `{0, 1, 2, ...}` and the decision whether
//! some `d >= 1` has all of its positive multiples inside such a set.
//!
//! For a monomial span (of `x^n` in `K[x]`, or of Fock monomials of α-length
//! `n`) indexed by such a set, the absence of such a `d` is exactly what makes
//! the span a Mathieu-Zhao subspace, provided the set avoids `0` and its tail
//! has gaps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::Cursor;

/// `n >= threshold` is a member iff `n mod modulus` is in `residues`;
/// `1 <= n < threshold` follows the same rule unless overridden in
/// `exceptions`; `0` is a member iff `contains_zero`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSet {
    pub modulus: u64,
    pub residues: BTreeSet<u64>,
    pub threshold: u64,
    pub exceptions: BTreeMap<u64, bool>,
    pub contains_zero: bool,
}

impl PeriodicSet {
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        threshold: u64,
        exceptions: impl IntoIterator<Item = (u64, bool)>,
        contains_zero: bool,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(Error::InvalidArgument(format!(
                "residue {r} is not below the modulus {modulus}"
            )));
        }
        let exceptions: BTreeMap<u64, bool> = exceptions.into_iter().collect();
        if let Some(&n) = exceptions.keys().find(|&&n| n == 0 || n >= threshold) {
            return Err(Error::InvalidArgument(format!(
                "exception {n} must lie in 1..{threshold}"
            )));
        }
        Ok(PeriodicSet {
            modulus,
            residues,
            threshold,
            exceptions,
            contains_zero,
        })
    }

    /// `{d, 2d, 3d, ...}`.
    pub fn multiples_of(d: u64) -> Self {
        Self::new(d, [0], 0, [], false).expect("valid multiples set")
    }

    /// `{n >= 1 : n mod k in residues}`, plus `0` when `0` is a listed residue.
    pub fn residue_classes(k: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        let zero = residues.contains(&0);
        Self::new(k, residues, 0, [], zero)
    }

    pub fn everything() -> Self {
        Self::new(1, [0], 0, [], true).expect("valid")
    }

    pub fn empty() -> Self {
        Self::new(1, [], 0, [], false).expect("valid")
    }

    fn tail_rule(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.modulus))
    }

    pub fn member(&self, n: u64) -> bool {
        if n == 0 {
            self.contains_zero
        } else if n >= self.threshold {
            self.tail_rule(n)
        } else {
            self.exceptions
                .get(&n)
                .copied()
                .unwrap_or_else(|| self.tail_rule(n))
        }
    }

    pub fn is_everything(&self) -> bool {
        let c = self.canonicalize();
        c.contains_zero && c.modulus == 1 && c.residues.len() == 1 && c.exceptions.is_empty()
    }

    pub fn tail_is_full(&self) -> bool {
        self.residues.len() as u64 == self.modulus
    }

    /// Minimal modulus, then minimal threshold; exceptions that agree with
    /// the periodic rule are dropped.
    pub fn canonicalize(&self) -> Self {
        let k = self.modulus;
        let period = (1..=k)
            .filter(|p| k.is_multiple_of(*p))
            .find(|&p| {
                self.residues
                    .iter()
                    .all(|r| self.residues.contains(&((r + p) % k)))
            })
            .unwrap_or(k);
        let residues: BTreeSet<u64> = self.residues.iter().map(|r| r % period).collect();
        let rule = |n: u64| residues.contains(&(n % period));
        let exceptions: BTreeMap<u64, bool> = (1..self.threshold)
            .map(|n| (n, self.member(n)))
            .filter(|&(n, m)| m != rule(n))
            .collect();
        let threshold = exceptions.keys().next_back().map_or(0, |&n| n + 1);
        PeriodicSet {
            modulus: period,
            residues,
            threshold,
            exceptions,
            contains_zero: self.contains_zero,
        }
    }

    /// Parses `mod k in {r1,r2} from T; +{a,b}; -{c}; zero`. Every clause is
    /// optional; `+{...}`/`-{...}` force membership, raising the threshold as
    /// needed, and `+{0}` is the same as `zero`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let mut modulus = 1;
        let mut residues = BTreeSet::new();
        let mut threshold = 0;
        let mut forced: Vec<(u64, bool)> = Vec::new();
        let mut zero = false;
        loop {
            if cur.at_end() {
                break;
            }
            if cur.eat_word("mod") {
                modulus = cur.uint()?;
                if modulus == 0 {
                    return Err(cur.error("modulus must be at least 1"));
                }
                if !cur.eat_word("in") {
                    return Err(cur.error("expected `in`"));
                }
                let at = cur.pos();
                residues = cur.uint_set()?.into_iter().collect();
                if residues.iter().any(|&r| r >= modulus) {
                    return Err(Error::parse(at, "residue not below the modulus"));
                }
                if cur.eat_word("from") {
                    threshold = cur.uint()?;
                }
            } else if cur.eat("+") {
                forced.extend(cur.uint_set()?.into_iter().map(|n| (n, true)));
            } else if cur.eat("-") {
                forced.extend(cur.uint_set()?.into_iter().map(|n| (n, false)));
            } else if cur.eat_word("zero") {
                zero = true;
            } else {
                return Err(cur.error("expected `mod`, `+{`, `-{` or `zero`"));
            }
            if !cur.eat(";") {
                break;
            }
        }
        cur.finish()?;
        let mut exceptions = BTreeMap::new();
        for (n, member) in forced {
            if n == 0 {
                zero = member;
            } else {
                threshold = threshold.max(n + 1);
                exceptions.insert(n, member);
            }
        }
        Self::new(modulus, residues, threshold, exceptions, zero)
    }
}

fn join(xs: impl IntoIterator<Item = u64>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {} in {{{}}}", self.modulus, join(self.residues.iter().copied()))?;
        if self.threshold > 0 {
            write!(f, " from {}", self.threshold)?;
        }
        let plus: Vec<u64> = self.exceptions.iter().filter(|e| *e.1).map(|e| *e.0).collect();
        let minus: Vec<u64> = self.exceptions.iter().filter(|e| !*e.1).map(|e| *e.0).collect();
        if !plus.is_empty() {
            write!(f, "; +{{{}}}", join(plus))?;
        }
        if !minus.is_empty() {
            write!(f, "; -{{{}}}", join(minus))?;
        }
        if self.contains_zero {
            write!(f, "; zero")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    MZ,
    NotMZ,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::MZ => "MZ",
            Verdict::NotMZ => "NotMZ",
            Verdict::Inapplicable => "Inapplicable",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "MZ" => Ok(Verdict::MZ),
            "NotMZ" => Ok(Verdict::NotMZ),
            "Inapplicable" => Ok(Verdict::Inapplicable),
            other => Err(Error::InvalidArgument(format!("unknown verdict `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MZVerdict {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_d: Option<u64>,
    pub reason: String,
}

impl MZVerdict {
    pub fn mz(reason: impl Into<String>) -> Self {
        MZVerdict {
            verdict: Verdict::MZ,
            witness_d: None,
            reason: reason.into(),
        }
    }

    pub fn not_mz(witness_d: Option<u64>, reason: impl Into<String>) -> Self {
        MZVerdict {
            verdict: Verdict::NotMZ,
            witness_d,
            reason: reason.into(),
        }
    }

    pub fn inapplicable(reason: impl Into<String>) -> Self {
        MZVerdict {
            verdict: Verdict::Inapplicable,
            witness_d: None,
            reason: reason.into(),
        }
    }
}

pub const CONSTANT_GATE: &str = "contains the constant/vacuum";

/// Decides whether the monomial span indexed by `set` is Mathieu-Zhao.
///
/// Multiples of `d` cover, modulo `k`, exactly the subgroup generated by
/// `g = gcd(d, k)`. So a witness exists iff some divisor `g` of `k` has its
/// subgroup inside the tail residues; `d = g(1 + kM) >= threshold` then has
/// `gcd(d, k) = g` and no multiple below the threshold.
pub fn mz_witness_search(set: &PeriodicSet) -> MZVerdict {
    let s = set.canonicalize();
    if s.contains_zero {
        if s.is_everything() {
            return MZVerdict::mz("the span is the whole algebra");
        }
        return MZVerdict::not_mz(
            None,
            format!(
                "{CONSTANT_GATE}: 0 is in the set of a proper subspace, so the unit lies in the \
                 radical, and the unit in the strong radical would force the whole algebra"
            ),
        );
    }
    if s.tail_is_full() {
        return MZVerdict::inapplicable(format!(
            "hypothesis fails: every residue mod {} occurs in the tail from {}, so consecutive \
             members eventually differ by 1",
            s.modulus, s.threshold
        ));
    }
    let k = s.modulus;
    for g in (1..=k).filter(|g| k.is_multiple_of(*g)) {
        let subgroup_inside = (0..k / g).all(|j| s.residues.contains(&(j * g)));
        if !subgroup_inside {
            continue;
        }
        let step = g * k;
        let mult = if s.threshold > g {
            (s.threshold - g).div_ceil(step)
        } else {
            0
        };
        let d = g * (1 + k * mult);
        debug_assert_eq!(d.gcd(&k), g);
        let verified = (1..=s.threshold + 3 * k).all(|m| s.member(m * d));
        assert!(verified, "constructed witness {d} failed verification");
        return MZVerdict::not_mz(
            Some(d),
            format!(
                "every positive multiple of {d} is in the set: multiples of {d} cover the \
                 subgroup generated by {g} mod {k}, which lies inside the residues, and {d} \
                 is at least the threshold {}",
                s.threshold
            ),
        );
    }
    if s.residues.is_empty() {
        return MZVerdict::mz(
            "the set is finite and avoids 0, so no power of a nonzero element stays inside; \
             the radical is zero",
        );
    }
    MZVerdict::mz(format!(
        "no d >= 1 has all multiples in the set: no subgroup of Z/{k} lies inside the residues"
    ))
}

/// Smallest `d <= d_max` with `member(m d)` for every `1 <= m <= m_max`.
pub fn mz_witness_bruteforce(set: &PeriodicSet, d_max: u64, m_max: u64) -> Option<u64> {
    (1..=d_max).find(|&d| (1..=m_max).all(|m| set.member(m * d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(k: u64, r: &[u64], t: u64) -> PeriodicSet {
        PeriodicSet::new(k, r.iter().copied(), t, [], false).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = set(3, &[1, 2], 1);
        assert!(s.member(4));
        assert!(!s.member(6));
        assert!(!s.member(0));
        let s = PeriodicSet::new(2, [0], 6, [(3, true), (4, false)], true).unwrap();
        assert!(s.member(0) && s.member(2) && s.member(3) && !s.member(4) && s.member(6));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(set(4, &[1, 3], 0).canonicalize(), set(2, &[1], 0));
        assert_eq!(set(2, &[0, 1], 0).canonicalize(), set(1, &[0], 0));
        let s = PeriodicSet::new(3, [0], 10, [(3, true), (4, true), (6, true), (8, false), (9, false)], false)
            .unwrap();
        let c = s.canonicalize();
        assert_eq!(c.threshold, 10);
        assert_eq!(c.exceptions, BTreeMap::from([(4, true), (9, false)]));
        let shorter = PeriodicSet::new(3, [0], 10, [(3, true), (4, true), (8, false)], false)
            .unwrap();
        assert_eq!(shorter.canonicalize().threshold, 5);
        for n in 0..60 {
            assert_eq!(s.member(n), c.member(n));
        }
    }

    #[test]
    fn search_examples() {
        let v = mz_witness_search(&PeriodicSet::new(3, [0], 1, [], false).unwrap());
        assert_eq!((v.verdict, v.witness_d), (Verdict::NotMZ, Some(3)));
        let v = mz_witness_search(&set(3, &[1, 2], 0));
        assert_eq!(v.verdict, Verdict::MZ);
        let v = mz_witness_search(&set(1, &[0], 2));
        assert_eq!(v.verdict, Verdict::Inapplicable);
        assert!(v.reason.contains("hypothesis"));
        let v = mz_witness_search(&set(6, &[0, 2, 4], 0));
        assert_eq!((v.verdict, v.witness_d), (Verdict::NotMZ, Some(2)));
    }

    #[test]
    fn gates() {
        let v = mz_witness_search(&PeriodicSet::residue_classes(3, [0, 1]).unwrap());
        assert_eq!(v.verdict, Verdict::NotMZ);
        assert!(v.witness_d.is_none());
        assert!(v.reason.contains(CONSTANT_GATE));
        assert_eq!(mz_witness_search(&PeriodicSet::everything()).verdict, Verdict::MZ);
        assert_eq!(mz_witness_search(&PeriodicSet::empty()).verdict, Verdict::MZ);
        let finite = PeriodicSet::parse("+{2,5}").unwrap();
        assert_eq!(mz_witness_search(&finite).verdict, Verdict::MZ);
    }

    #[test]
    fn witness_above_threshold() {
        // multiples of 4 from 30 on, with 4..28 removed from below
        let s = PeriodicSet::parse("mod 4 in {0} from 30; -{4,8,12}").unwrap();
        let v = mz_witness_search(&s);
        assert_eq!(v.verdict, Verdict::NotMZ);
        let d = v.witness_d.unwrap();
        assert!((1..200).all(|m| s.member(m * d)));
        assert_eq!(mz_witness_bruteforce(&s, 60, 60), Some(16));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(mz_witness_bruteforce(&PeriodicSet::multiples_of(3), 10, 50), Some(3));
        assert_eq!(mz_witness_bruteforce(&set(3, &[1, 2], 0), 60, 60), None);
        assert_eq!(mz_witness_bruteforce(&set(6, &[0, 2, 4], 0), 60, 60), Some(2));
    }

    #[test]
    fn text_form() {
        let s = PeriodicSet::parse("mod 3 in {1,2} from 4; +{3}; -{1}; zero").unwrap();
        assert!(s.member(0) && !s.member(1) && s.member(2) && s.member(3) && !s.member(6));
        assert_eq!(s.to_string(), "mod 3 in {1,2} from 4; +{3}; -{1}; zero");
        assert_eq!(PeriodicSet::parse(&s.to_string()).unwrap(), s);
        assert_eq!(PeriodicSet::parse("mod 2 in {0}").unwrap(), PeriodicSet::multiples_of(2));
        assert!(PeriodicSet::parse("mod 3 in {3}").is_err());
        assert!(PeriodicSet::parse("mod 0 in {}").is_err());
        assert!(PeriodicSet::parse("mod 3 {1}").is_err());
    }

    #[test]
    fn json_mirrors_fields() {
        let s = PeriodicSet::parse("mod 3 in {1,2} from 4; -{1}").unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"modulus":3,"residues":[1,2],"threshold":4,"exceptions":{"1":false},"contains_zero":false}"#
        );
        assert_eq!(serde_json::from_str::<PeriodicSet>(&j).unwrap(), s);
    }
}
