//! Text form of Fock states.
//!
//! ```text
//! state   := '0' | [sign] term (('+'|'-') term)*
//! term    := [coeff '*'] factor* '|0>'
//! factor  := 'a(' '-' INT ')' ['^' INT]
//! coeff   := INT | INT '/' INT
//! ```
//!
//! Whitespace is insignificant. The printer emits terms in descending
//! lexicographic partition order with grouped powers, e.g.
//! `-a(-3)|0> + 3/2*a(-1)^2|0>`.

use num_traits::{One, Signed};

use super::{FockState, Partition};
use crate::error::Result;
use crate::linalg::{format_rational, Rational};
use crate::text::Cursor;

const MAX_EXPONENT: u64 = 4096;

pub fn parse_state(text: &str) -> Result<FockState> {
    let mut cur = Cursor::new(text);
    if cur.eat_word("0") && cur.at_end() {
        return Ok(FockState::zero());
    }
    let mut cur = Cursor::new(text);
    let mut state = FockState::zero();
    let mut negate = if cur.eat("-") {
        true
    } else {
        cur.eat("+");
        false
    };
    loop {
        let (p, c) = term(&mut cur)?;
        state.add_term(p, if negate { -c } else { c });
        if cur.eat("+") {
            negate = false;
        } else if cur.eat("-") {
            negate = true;
        } else {
            break;
        }
    }
    cur.finish()?;
    Ok(state)
}

fn term(cur: &mut Cursor) -> Result<(Partition, Rational)> {
    let coeff = if cur.peek_digit() {
        let c = cur.rational()?;
        cur.expect("*")?;
        c
    } else {
        Rational::one()
    };
    let mut parts = Vec::new();
    loop {
        if cur.eat("|") {
            cur.expect("0")?;
            cur.expect(">")?;
            break;
        }
        if !cur.eat("a") {
            return Err(cur.error("expected `a(-n)` or `|0>`"));
        }
        cur.expect("(")?;
        cur.expect("-")?;
        cur.skip_ws();
        let at = cur.pos();
        let n = cur.uint()?;
        if n == 0 || n > u64::from(u32::MAX) {
            return Err(crate::error::Error::parse(
                at,
                "mode index must be a negative integer",
            ));
        }
        cur.expect(")")?;
        let reps = if cur.eat("^") {
            cur.skip_ws();
            let at = cur.pos();
            let e = cur.uint()?;
            if e > MAX_EXPONENT {
                return Err(crate::error::Error::parse(at, "exponent too large"));
            }
            e
        } else {
            1
        };
        parts.extend(std::iter::repeat_n(n as u32, reps as usize));
    }
    Ok((Partition::new(parts), coeff))
}

/// Canonical text of a state; `0` for the zero state.
pub fn format_state(w: &FockState) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (p, c)) in w.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(&format_monomial(p));
    }
    out
}

pub(crate) fn format_monomial(p: &Partition) -> String {
    let mut out = String::new();
    for (part, mult) in p.grouped() {
        out.push_str(&format!("a(-{part})"));
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
    }
    out.push_str("|0>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::{rat, rat_frac};

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_state("a(-2)a(-1)|0>").unwrap(),
            FockState::from_parts(&[2, 1])
        );
        let w = parse_state("3/2*a(-1)^2|0> - a(-3)|0>").unwrap();
        assert_eq!(w.coeff(&Partition::new(vec![1, 1])), rat_frac(3, 2));
        assert_eq!(w.coeff(&Partition::new(vec![3])), rat(-1));
        assert_eq!(w.num_terms(), 2);
        assert_eq!(parse_state("|0>").unwrap(), FockState::vacuum());
    }

    #[test]
    fn factor_order_and_whitespace_are_irrelevant() {
        let a = parse_state(" a ( - 1 ) a(-2) | 0 > ").unwrap();
        assert_eq!(a, FockState::from_parts(&[2, 1]));
        let b = parse_state("a(-1)|0> + a(-1)|0>").unwrap();
        assert_eq!(b, FockState::from_parts(&[1]).scale_int(2));
        assert_eq!(parse_state("a(-1)|0> - a(-1)|0>").unwrap(), FockState::zero());
    }

    #[test]
    fn format_is_canonical() {
        let w = parse_state("3/2*a(-1)^2|0> - a(-3)|0> + 4/6*|0>").unwrap();
        assert_eq!(format_state(&w), "-a(-3)|0> + 3/2*a(-1)^2|0> + 2/3*|0>");
        assert_eq!(format_state(&FockState::zero()), "0");
        assert_eq!(parse_state("0").unwrap(), FockState::zero());
        assert_eq!(parse_state(&format_state(&w)).unwrap(), w);
    }

    #[test]
    fn malformed_inputs_report_positions() {
        for (text, pos) in [
            ("a(-1)", 5),
            ("a(1)|0>", 2),
            ("a(-0)|0>", 3),
            ("1/0*|0>", 2),
            ("|0> +", 5),
            ("|0> |0>", 4),
            ("", 0),
        ] {
            match parse_state(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: expected parse error, got {other:?}"),
            }
        }
    }
}
