//! Textual renderings: re-parseable prefix form and the space-separated
//! postfix token form used by lexicographic comparison.

use crate::frame::{postfix_tokens, Token};
use crate::Term;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Prefix,
    Postfix,
}

pub fn render(t: &Term, style: Style) -> String {
    match style {
        Style::Prefix => prefix(t),
        Style::Postfix => postfix(t),
    }
}

/// Re-parseable prefix form: `C(C(0,W),0)`.
pub fn prefix(t: &Term) -> String {
    let mut s = String::new();
    prefix_into(t, &mut s);
    s
}

fn prefix_into(t: &Term, out: &mut String) {
    match t {
        Term::Zero => out.push('0'),
        Term::Omega(1) => out.push('W'),
        Term::Omega(i) => {
            let _ = write!(out, "W_{i}");
        }
        Term::Ext(k) => {
            let _ = write!(out, "${k}");
        }
        Term::C(args) => {
            out.push('C');
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                prefix_into(a, out);
            }
            out.push(')');
        }
    }
}

/// Space-separated postfix tokens, one per symbol, arguments before the
/// operator with the base first: `C(C(0,W),0)` renders as `0 W 0 C C`.
pub fn postfix(t: &Term) -> String {
    let toks = postfix_tokens(t);
    let mut s = String::new();
    for (i, tok) in toks.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        match tok {
            Token::C => s.push('C'),
            Token::Zero => s.push('0'),
            Token::Ext(k) => {
                let _ = write!(s, "${k}");
            }
            Token::Omega(1) => s.push('W'),
            Token::Omega(i) => {
                let _ = write!(s, "W_{i}");
            }
        }
    }
    s
}

/// Prefix form that abbreviates ternary nodes with a pure successor-chain
/// index as `C_k(a,b)`. Not guaranteed re-parseable; for human output.
pub fn pretty(t: &Term) -> String {
    fn numeral3(t: &Term) -> Option<u32> {
        // 0, C(0,0,0), C(0,0,C(0,0,0)), ...
        let mut n = 0u32;
        let mut cur = t;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::C(args)
                    if args.len() == 3 && args[0].is_zero() && args[1].is_zero() =>
                {
                    n += 1;
                    cur = &args[2];
                }
                _ => return None,
            }
        }
    }
    fn go(t: &Term, out: &mut String) {
        match t {
            Term::C(args) if args.len() == 3 => {
                if let Some(k) = numeral3(&args[0]) {
                    let _ = write!(out, "C_{k}(");
                    go(&args[1], out);
                    out.push(',');
                    go(&args[2], out);
                    out.push(')');
                    return;
                }
                out.push_str("C(");
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    go(a, out);
                }
                out.push(')');
            }
            _ => {
                let mut simple = String::new();
                prefix_into(t, &mut simple);
                if let Term::C(args) = t {
                    // binary nodes recurse so nested ternary parts prettify
                    simple.clear();
                    simple.push_str("C(");
                    let mut first = true;
                    for a in args {
                        if !first {
                            simple.push(',');
                        }
                        first = false;
                        go(a, &mut simple);
                    }
                    simple.push(')');
                }
                out.push_str(&simple);
            }
        }
    }
    let mut s = String::new();
    go(t, &mut s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn postfix_paper_form() {
        // C(C(0,W),0) -> "0 W 0 C C"
        let t = Term::c2(Term::c2(Term::Zero, Term::Omega(1)), Term::Zero);
        assert_eq!(postfix(&t), "0 W 0 C C");
        // C(W,0) -> "0 W C"
        let t = Term::c2(Term::Omega(1), Term::Zero);
        assert_eq!(postfix(&t), "0 W C");
        assert_eq!(postfix(&Term::Zero), "0");
    }

    #[test]
    fn prefix_shapes() {
        let t = Term::c3(Term::Zero, Term::Omega(2), Term::Ext(3));
        assert_eq!(prefix(&t), "C(0,W_2,$3)");
    }

    #[test]
    fn pretty_numeral_index() {
        let one = Term::c3(Term::Zero, Term::Zero, Term::Zero);
        let t = Term::c3(one, Term::Zero, Term::Zero);
        assert_eq!(pretty(&t), "C_1(0,0)");
    }
}
