//! System-generic comparison and base minimization.
//!
//! Two comparison routes are provided. `compare_postfix` compares the
//! postfix token strings lexicographically under the token order
//! `C < 0 < $1 < $2 < ... < W_1 < W_2 < ...`; on standard terms of the
//! binary systems this coincides with the ordinal order. `compare_recursive`
//! follows the collapsing-function comparison rules (the degree rule for
//! binary C, the pair rules for the ternary systems). The canonical order
//! used throughout standardness checking is `compare`: token order for
//! binary systems, the pair rules for ternary ones.
//!
//! Both routes are total on all terms of the right arity; on nonstandard
//! input the result is well defined but carries ordinal meaning only after
//! normalization.

use crate::system::{SystemId, SystemSpec};
use crate::{Error, Term};
use std::cmp::Ordering;

/// Postfix token, encoded so that the derived order is the documented token
/// order `C < 0 < $k (by rank) < W_i (by index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Token {
    C,
    Zero,
    Ext(u32),
    Omega(u32),
}

/// Appends the postfix tokens of `t`: arguments in reverse order (base
/// first), then the operator, one token per symbol.
pub fn postfix_tokens_into(t: &Term, out: &mut Vec<Token>) {
    match t {
        Term::Zero => out.push(Token::Zero),
        Term::Omega(i) => out.push(Token::Omega(*i)),
        Term::Ext(k) => out.push(Token::Ext(*k)),
        Term::C(args) => {
            for a in args.iter().rev() {
                postfix_tokens_into(a, out);
            }
            out.push(Token::C);
        }
    }
}

pub fn postfix_tokens(t: &Term) -> Vec<Token> {
    let mut v = Vec::with_capacity(t.symbols());
    postfix_tokens_into(t, &mut v);
    v
}

/// Lexicographic comparison of postfix token strings; a proper prefix is
/// smaller. Total on all terms.
pub fn lex_cmp(a: &Term, b: &Term) -> Ordering {
    // Stream the tokens instead of materializing both strings.
    struct Stream<'a> {
        stack: Vec<StreamItem<'a>>,
    }
    enum StreamItem<'a> {
        Term(&'a Term),
        Tok(Token),
    }
    impl<'a> Stream<'a> {
        fn new(t: &'a Term) -> Self {
            Stream {
                stack: vec![StreamItem::Term(t)],
            }
        }
        fn next(&mut self) -> Option<Token> {
            loop {
                match self.stack.pop()? {
                    StreamItem::Tok(t) => return Some(t),
                    StreamItem::Term(t) => match t {
                        Term::Zero => return Some(Token::Zero),
                        Term::Omega(i) => return Some(Token::Omega(*i)),
                        Term::Ext(k) => return Some(Token::Ext(*k)),
                        Term::C(args) => {
                            self.stack.push(StreamItem::Tok(Token::C));
                            for a in args.iter() {
                                self.stack.push(StreamItem::Term(a));
                            }
                        }
                    },
                }
            }
        }
    }
    let (mut sa, mut sb) = (Stream::new(a), Stream::new(b));
    loop {
        match (sa.next(), sb.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => continue,
                other => return other,
            },
        }
    }
}

pub(crate) fn lex_lt(a: &Term, b: &Term) -> bool {
    lex_cmp(a, b) == Ordering::Less
}

pub(crate) fn lex_le(a: &Term, b: &Term) -> bool {
    lex_cmp(a, b) != Ordering::Greater
}

/// Recursive comparison for binary C following the degree rule:
/// `C(a,b) < C(c,d)` iff `C(a,b) <= d` or (`b < C(c,d)` and `a < c`),
/// extended to a total comparison with base tie-breaking.
pub(crate) fn rec_cmp2(s: &Term, t: &Term) -> Ordering {
    use Term::*;
    match (s, t) {
        (Zero, Zero) => Ordering::Equal,
        (Zero, _) => Ordering::Less,
        (_, Zero) => Ordering::Greater,
        (Ext(i), Ext(j)) => i.cmp(j),
        (Ext(_), Omega(_)) => Ordering::Less,
        (Omega(_), Ext(_)) => Ordering::Greater,
        (Omega(i), Omega(j)) => i.cmp(j),
        (atom, C(args)) if atom.is_atom() => {
            // atom < C(c,d) iff atom <= d
            if rec_cmp2(atom, &args[1]) != Ordering::Greater {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (C(_), atom) if atom.is_atom() => rec_cmp2(atom, s).reverse(),
        (C(sa), C(ta)) => {
            // s <= d  =>  s < t
            if rec_cmp2(s, &ta[1]) != Ordering::Greater {
                return Ordering::Less;
            }
            // b >= t  =>  s > t
            if rec_cmp2(&sa[1], t) != Ordering::Less {
                return Ordering::Greater;
            }
            match rec_cmp2(&sa[0], &ta[0]) {
                Ordering::Equal => rec_cmp2(&sa[1], &ta[1]),
                other => other,
            }
        }
        _ => unreachable!(),
    }
}

/// Recursive comparison for the ternary systems: the first two arguments
/// form a lexicographic pair, the third is the base.
/// `C(p,q,b) < C(r,s,d)` iff `C(p,q,b) <= d` or (`b < C(r,s,d)` and
/// `(p,q) < (r,s)`), extended to a total comparison.
pub(crate) fn rec_cmp3(s: &Term, t: &Term) -> Ordering {
    use Term::*;
    match (s, t) {
        (Zero, Zero) => Ordering::Equal,
        (Zero, _) => Ordering::Less,
        (_, Zero) => Ordering::Greater,
        (Ext(i), Ext(j)) => i.cmp(j),
        (atom, C(args)) if atom.is_atom() => {
            if rec_cmp3(atom, &args[2]) != Ordering::Greater {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (C(_), atom) if atom.is_atom() => rec_cmp3(atom, s).reverse(),
        (C(sa), C(ta)) => {
            if rec_cmp3(s, &ta[2]) != Ordering::Greater {
                return Ordering::Less;
            }
            if rec_cmp3(&sa[2], t) != Ordering::Less {
                return Ordering::Greater;
            }
            match rec_cmp3(&sa[0], &ta[0]) {
                Ordering::Equal => match rec_cmp3(&sa[1], &ta[1]) {
                    Ordering::Equal => rec_cmp3(&sa[2], &ta[2]),
                    other => other,
                },
                other => other,
            }
        }
        _ => unreachable!(),
    }
}

/// The canonical system order, without validation. Binary systems use the
/// postfix token order, ternary systems the pair rules.
pub(crate) fn sys_cmp(spec: &SystemSpec, a: &Term, b: &Term) -> Ordering {
    if spec.arity() == 2 {
        lex_cmp(a, b)
    } else {
        rec_cmp3(a, b)
    }
}

pub(crate) fn sys_lt(spec: &SystemSpec, a: &Term, b: &Term) -> bool {
    sys_cmp(spec, a, b) == Ordering::Less
}

pub(crate) fn sys_le(spec: &SystemSpec, a: &Term, b: &Term) -> bool {
    sys_cmp(spec, a, b) != Ordering::Greater
}

/// Lexicographic comparison of postfix token sequences.
pub fn compare_postfix(t1: &Term, t2: &Term, spec: &SystemSpec) -> Result<Ordering, Error> {
    spec.validate(t1)?;
    spec.validate(t2)?;
    Ok(lex_cmp(t1, t2))
}

/// Comparison by the recursive collapsing-function rules. For the combined
/// system both terms are first rewritten to a single Omega index.
pub fn compare_recursive(t1: &Term, t2: &Term, spec: &SystemSpec) -> Result<Ordering, Error> {
    spec.validate(t1)?;
    spec.validate(t2)?;
    Ok(match spec.id {
        SystemId::Dri | SystemId::Cpass => rec_cmp3(t1, t2),
        SystemId::Combined => {
            let n = t1
                .max_omega_index()
                .into_iter()
                .chain(t2.max_omega_index())
                .max()
                .unwrap_or(1);
            let a = crate::mainsys::to_single_omega(t1, n)?;
            let b = crate::mainsys::to_single_omega(t2, n)?;
            rec_cmp2(&a, &b)
        }
        _ => rec_cmp2(t1, t2),
    })
}

/// The canonical order of the system, validated.
pub fn compare(t1: &Term, t2: &Term, spec: &SystemSpec) -> Result<Ordering, Error> {
    spec.validate(t1)?;
    spec.validate(t2)?;
    Ok(sys_cmp(spec, t1, t2))
}

/// Repeatedly rewrites `C(x, C(y, z)) -> C(x, z)` while `y < x` (for ternary
/// systems, while the base's leading pair is below the node's), realizing
/// base minimization. Identity on atoms.
pub fn minimize_base(t: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(t)?;
    let Term::C(args) = t else {
        return Ok(t.clone());
    };
    let mut args = args.clone();
    let last = args.len() - 1;
    loop {
        let rewrite = match (&args[..last], &args[last]) {
            (head, Term::C(bargs)) => {
                let smaller = if last == 1 {
                    sys_lt(spec, &bargs[0], &head[0])
                } else {
                    match sys_cmp(spec, &bargs[0], &head[0]) {
                        Ordering::Less => true,
                        Ordering::Equal => sys_lt(spec, &bargs[1], &head[1]),
                        Ordering::Greater => false,
                    }
                };
                if smaller {
                    Some(bargs[last].clone())
                } else {
                    None
                }
            }
            _ => None,
        };
        match rewrite {
            Some(new_base) => args[last] = new_base,
            None => return Ok(Term::C(args)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn bh(s: &str) -> Term {
        parse(s, &SystemSpec::bh()).unwrap()
    }

    #[test]
    fn postfix_paper_examples() {
        // C(C(0,0),0) < C(W,0) because 000CC < 0WC
        let spec = SystemSpec::main(1);
        let a = parse("C(C(0,0),0)", &spec).unwrap();
        let b = parse("C(W,0)", &spec).unwrap();
        assert_eq!(compare_postfix(&a, &b, &spec).unwrap(), Ordering::Less);

        // 0WC < 0W0CC < 0WC0C < W
        let t1 = bh("C(W,0)");
        let t2 = bh("C(C(0,W),0)");
        let t3 = bh("C(0,C(W,0))");
        let w = bh("W");
        assert_eq!(lex_cmp(&t1, &t2), Ordering::Less);
        assert_eq!(lex_cmp(&t2, &t3), Ordering::Less);
        assert_eq!(lex_cmp(&t3, &w), Ordering::Less);
    }

    #[test]
    fn recursive_rule_examples() {
        let spec = SystemSpec::bh();
        // C(0,0) < C(W,0): b=0 < C(W,0) and 0 < W
        let a = bh("C(0,0)");
        let b = bh("C(W,0)");
        assert_eq!(compare_recursive(&a, &b, &spec).unwrap(), Ordering::Less);
        // C(a,b) > b
        for s in ["C(0,0)", "C(W,0)", "C(C(0,W),W)", "C(W,C(W,0))"] {
            let t = bh(s);
            let base = t.base().unwrap();
            assert_eq!(compare_recursive(&t, base, &spec).unwrap(), Ordering::Greater);
        }
        // 0 < C(0,0)
        assert_eq!(
            compare_recursive(&Term::Zero, &a, &spec).unwrap(),
            Ordering::Less
        );
        // t = t
        assert_eq!(compare_recursive(&b, &b, &spec).unwrap(), Ordering::Equal);
    }

    #[test]
    fn postfix_matches_recursive_on_mixed_pairs() {
        let spec = SystemSpec::bh();
        let terms = [
            "0",
            "W",
            "C(0,0)",
            "C(W,0)",
            "C(0,C(W,0))",
            "C(C(0,W),0)",
            "C(C(0,0),0)",
            "C(W,W)",
            "C(C(0,W),W)",
        ];
        for s in terms {
            for t in terms {
                let (a, b) = (bh(s), bh(t));
                assert_eq!(
                    compare_postfix(&a, &b, &spec).unwrap(),
                    compare_recursive(&a, &b, &spec).unwrap(),
                    "disagree on {s} vs {t}"
                );
            }
        }
    }

    #[test]
    fn minimize_base_examples() {
        let spec = SystemSpec::bh();
        // C(W, C(0,0)) -> C(W, 0)
        let t = bh("C(W,C(0,0))");
        assert_eq!(minimize_base(&t, &spec).unwrap(), bh("C(W,0)"));
        // guard: C(0, C(W,0)) unchanged
        let t = bh("C(0,C(W,0))");
        assert_eq!(minimize_base(&t, &spec).unwrap(), t);
        // two steps: C(W, C(0, C(0,0))) -> C(W, 0)
        let t = bh("C(W,C(0,C(0,0)))");
        assert_eq!(minimize_base(&t, &spec).unwrap(), bh("C(W,0)"));
        // chains headed by a large inner degree never rewrite
        let t = bh("C(0,C(0,C(W,0)))");
        assert_eq!(minimize_base(&t, &spec).unwrap(), t);
    }

    #[test]
    fn dri_pair_order_paper_example() {
        // C(1, 0+, 0) > C(1, eps0, 0) where 0+ = C(1,0,0),
        // eps0 = C(0, C(1,0,0), 0), 1 = C(0,0,0).
        let spec = SystemSpec::dri();
        let one = Term::c3(Term::Zero, Term::Zero, Term::Zero);
        let oplus = Term::c3(one.clone(), Term::Zero, Term::Zero);
        let eps0 = Term::c3(Term::Zero, oplus.clone(), Term::Zero);
        let t1 = Term::c3(one.clone(), oplus.clone(), Term::Zero);
        let t2 = Term::c3(one.clone(), eps0.clone(), Term::Zero);
        assert_eq!(compare(&t1, &t2, &spec).unwrap(), Ordering::Greater);
        // and eps0 < 0+ even though 0+ occurs inside eps0
        assert_eq!(compare(&eps0, &oplus, &spec).unwrap(), Ordering::Less);
    }
}
