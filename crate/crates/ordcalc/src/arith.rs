//! Ordinal arithmetic inside the term algebra: addition and
//! omega-exponentiation through the `b + w^a` reading of `C(a, b)`, Cantor
//! normal form decomposition, and the one-variable collapsing layer used for
//! sugar desugaring and readable output.
//!
//! Omega-family constants are treated as epsilon numbers of the term algebra
//! (`w^W = W`), as are collapse nodes lying below their own degree.

use crate::frame::{lex_cmp, lex_lt};
use crate::mainsys::normalize_main;
use crate::render::prefix;
use crate::system::{SystemId, SystemSpec};
use crate::{is_standard, Error, Term};
use std::cmp::Ordering;
use std::fmt::Write;

/// Cantor-normal-form view of a standard term: the value is
/// `C(a_1, C(a_2, ... C(a_n, base) ...))` with the exponent list stored
/// nonincreasing, largest (innermost) first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfView {
    pub base: Term,
    /// Nonincreasing under the postfix order: `[a_n, ..., a_1]`.
    pub exponents: Vec<Term>,
}

impl CnfView {
    /// Rebuilds the term; inverse of [`cnf_view`].
    pub fn recompose(&self, spec: &SystemSpec) -> Term {
        let mut t = self.base.clone();
        for e in &self.exponents {
            t = arith_node(spec, e.clone(), t);
        }
        t
    }
}

/// The arithmetic node `base + w^exp`: `C(exp, base)` for binary systems,
/// `C(0, exp, base)` for ternary ones.
pub(crate) fn arith_node(spec: &SystemSpec, exp: Term, base: Term) -> Term {
    if spec.arity() == 2 {
        Term::c2(exp, base)
    } else {
        Term::c3(Term::Zero, exp, base)
    }
}

/// Destructures an arithmetic node shape (not yet checking the regime).
fn arith_parts(spec: &SystemSpec, t: &Term) -> Option<(Term, Term)> {
    match t {
        Term::C(args) if args.len() == 2 && spec.arity() == 2 => {
            Some((args[0].clone(), args[1].clone()))
        }
        Term::C(args) if args.len() == 3 && spec.arity() == 3 && args[0].is_zero() => {
            Some((args[1].clone(), args[2].clone()))
        }
        _ => None,
    }
}

/// The successor-layer exponent of a C node: the argument compared against
/// the node to decide the arithmetic regime (`C(a,b) = b + w^a` iff the node
/// is `>= a`).
fn node_exponent(t: &Term) -> Option<&Term> {
    match t {
        Term::C(args) if args.len() == 2 => Some(&args[0]),
        Term::C(args) if args.len() == 3 => Some(&args[1]),
        _ => None,
    }
}

/// Epsilon test of the term algebra: `w^t = t`. Omega constants, ternary
/// nodes of positive index, and collapse nodes below their own degree.
pub(crate) fn is_eps(t: &Term) -> bool {
    match t {
        Term::Omega(_) => true,
        Term::C(args) if args.len() == 3 && !args[0].is_zero() => true,
        Term::C(_) => lex_lt(t, node_exponent(t).expect("C node")),
        _ => false,
    }
}

/// `log(t)` for additively indecomposable `t`: the exponent with
/// `w^log(t) = t`.
fn indecomposable_log(spec: &SystemSpec, t: &Term) -> Result<Term, Error> {
    if is_eps(t) {
        return Ok(t.clone());
    }
    match t {
        Term::Ext(_) => Err(Error::Inexpressible {
            reason: format!("opaque constant {} has no known logarithm", prefix(t)),
        }),
        Term::C(_) => match arith_parts(spec, t) {
            Some((e, base)) if base.is_zero() => Ok(e),
            _ => Err(Error::Inexpressible {
                reason: format!("{} is not additively indecomposable", prefix(t)),
            }),
        },
        _ => Err(Error::Inexpressible {
            reason: format!("no logarithm for {}", prefix(t)),
        }),
    }
}

/// Is `t` an arithmetic node `rest + w^e` with a nonzero rest (hence
/// additively decomposable)?
fn decomposable(spec: &SystemSpec, t: &Term) -> Option<(Term, Term)> {
    let (e, rest) = arith_parts(spec, t)?;
    if rest.is_zero() {
        return None;
    }
    // Collapse regime (node < exponent) is indecomposable.
    if lex_lt(t, &e) {
        return None;
    }
    Some((e, rest))
}

/// Ordinal sum of two standard terms, computed by CNF merge: leading
/// exponents of `x` strictly below the least exponent of `y` are absorbed.
pub fn add(x: &Term, y: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(x)?;
    spec.validate(y)?;
    add_unchecked(x, y, spec)
}

fn add_unchecked(x: &Term, y: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    if x.is_zero() {
        return Ok(y.clone());
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    if let Some((e, rest)) = decomposable(spec, y) {
        let inner = add_unchecked(x, &rest, spec)?;
        return Ok(arith_node(spec, e, inner));
    }
    // y is additively indecomposable (atom, pure power, or collapse)
    let log = indecomposable_log(spec, y)?;
    let stripped = strip_below(spec, x.clone(), &log)?;
    Ok(arith_node(spec, log, stripped))
}

/// Removes the trailing CNF terms of `x` whose exponents are below `cut`.
fn strip_below(spec: &SystemSpec, mut x: Term, cut: &Term) -> Result<Term, Error> {
    loop {
        if x.is_zero() {
            return Ok(x);
        }
        if let Some((e, rest)) = decomposable(spec, &x) {
            if lex_lt(&e, cut) {
                x = rest;
                continue;
            }
            return Ok(x);
        }
        // indecomposable: absorbed entirely iff its exponent is below cut
        let log = indecomposable_log(spec, &x)?;
        if lex_lt(&log, cut) {
            return Ok(Term::Zero);
        }
        return Ok(x);
    }
}

/// `t * k` for a natural literal `k`, by repeated addition.
pub fn mul_nat(t: &Term, k: u32, spec: &SystemSpec) -> Result<Term, Error> {
    if k == 0 {
        return Ok(Term::Zero);
    }
    let mut acc = t.clone();
    for _ in 1..k {
        acc = add(&acc, t, spec)?;
    }
    Ok(acc)
}

/// The standard term for `w^a`.
pub fn omega_pow(a: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(a)?;
    if is_eps(a) {
        return Ok(a.clone());
    }
    if let Term::Ext(_) = a {
        return Err(Error::Inexpressible {
            reason: "cannot exponentiate an opaque constant".into(),
        });
    }
    // Above the Omega region the power absorbs Omega itself: w^a = C(a, W).
    if spec.arity() == 2 {
        if let Some(w) = largest_omega_leq(spec, a) {
            if lex_cmp(a, &w) == Ordering::Greater {
                return Ok(Term::c2(a.clone(), w));
            }
        }
    }
    Ok(arith_node(spec, a.clone(), Term::Zero))
}

fn largest_omega_leq(spec: &SystemSpec, a: &Term) -> Option<Term> {
    match spec.id {
        SystemId::Combined => a.max_omega_index().map(Term::Omega),
        _ => spec.omega_index().map(Term::Omega),
    }
}

/// The natural-number literal `k` as a successor chain.
pub fn nat(k: u32, spec: &SystemSpec) -> Term {
    let mut t = Term::Zero;
    for _ in 0..k {
        t = arith_node(spec, Term::Zero, t);
    }
    t
}

/// CNF decomposition of a standard term; recomposition is the identity.
pub fn cnf_view(t: &Term, spec: &SystemSpec) -> Result<CnfView, Error> {
    spec.validate(t)?;
    let mut exponents = Vec::new();
    let mut cur = t.clone();
    loop {
        match arith_parts(spec, &cur) {
            // Arithmetic regime only: a collapse node is its own base.
            Some((e, rest)) if !lex_lt(&cur, &e) => {
                exponents.push(e);
                cur = rest;
            }
            _ => break,
        }
    }
    exponents.reverse();
    Ok(CnfView {
        base: cur,
        exponents,
    })
}

/// `C_1(a, b)`: the two-variable chain
/// `C(a_1, C(a_2, ... C(a_n, b) ...))` for the CNF exponents
/// `a = w^{a_n} + ... + w^{a_1}`, normalizing at non-maximal steps.
pub fn c1_eval(a: &Term, b: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(a)?;
    spec.validate(b)?;
    let view = cnf_view(a, spec)?;
    let mut exps = view.exponents.clone();
    // An atomic or collapse base contributes one leading power.
    match &view.base {
        Term::Zero => {}
        base => exps.push(indecomposable_log(spec, base)?),
    }
    // exps is now [a_n, ..., a_1] largest first; fold from the largest.
    let mut acc = b.clone();
    for e in exps {
        let node = arith_node(spec, e, acc.clone());
        if is_standard(&node, spec)? {
            acc = node;
        } else {
            acc = crate::normalize(&node, spec)?;
        }
    }
    Ok(acc)
}

/// `C_n(k, a, b)`: the k-fold nesting `C(a, ... C(a, b) ...)`.
pub fn expand_repeat(k: u32, a: &Term, b: &Term) -> Result<Term, Error> {
    if k == 0 {
        return Err(Error::Unsupported("repetition count must be positive".into()));
    }
    let mut t = b.clone();
    for _ in 0..k {
        t = Term::c2(a.clone(), t);
    }
    Ok(t)
}

/// Renders a standard term as a one-variable collapse expression
/// `C1(<sum>)`, with `+`, `*k` and `w^` sugar in the argument; a nonzero
/// spine base is emitted as a second argument. Parsing the result and
/// evaluating through [`c1_eval`] reproduces the term.
pub fn to_c1_text(t: &Term, spec: &SystemSpec) -> Result<String, Error> {
    spec.validate(t)?;
    if t.is_atom() {
        return Ok(prefix(t));
    }
    // Full spine: every node contributes one power, innermost first.
    let mut spine = Vec::new();
    let mut cur = t.clone();
    while let Term::C(args) = &cur {
        let (e, rest) = match args.len() {
            2 => (args[0].clone(), args[1].clone()),
            _ => {
                return Err(Error::Unsupported(
                    "C1 rendering is defined for binary systems".into(),
                ))
            }
        };
        spine.push(e);
        cur = rest;
    }
    spine.reverse(); // innermost (largest) first
    let arg = render_power_sum(&spine, spec);
    if cur.is_zero() {
        Ok(format!("C1({arg})"))
    } else {
        Ok(format!("C1({arg},{})", prefix(&cur)))
    }
}

/// `w^{e_1} + w^{e_2} + ...` with runs collected as `*k` and `w^0` runs as
/// numerals.
fn render_power_sum(exps: &[Term], _spec: &SystemSpec) -> String {
    let mut pieces: Vec<String> = Vec::new();
    let mut i = 0;
    while i < exps.len() {
        let mut j = i;
        while j + 1 < exps.len() && exps[j + 1] == exps[i] {
            j += 1;
        }
        let run = (j - i + 1) as u32;
        let e = &exps[i];
        let piece = if e.is_zero() {
            format!("{run}")
        } else {
            let base = match e {
                Term::Omega(_) | Term::Ext(_) => prefix(e),
                Term::Zero => unreachable!(),
                Term::C(_) => format!("({})", prefix(e)),
            };
            if run == 1 {
                format!("w^{base}")
            } else {
                format!("w^{base}*{run}")
            }
        };
        pieces.push(piece);
        i = j + 1;
    }
    pieces.join(" + ")
}

/// Convenience: `w^a` rendered via [`omega_pow`] then normalized if needed
/// (used by the parser's `w^` sugar).
pub(crate) fn omega_pow_sugar(a: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    let t = omega_pow(a, spec)?;
    if is_standard(&t, spec)? {
        Ok(t)
    } else {
        normalize_or_keep(&t, spec)
    }
}

fn normalize_or_keep(t: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    match spec.id {
        SystemId::Dri | SystemId::Cpass => Ok(t.clone()),
        _ => normalize_main(t, spec),
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
    fn add_identities() {
        let spec = SystemSpec::bh();
        let y = bh("C(W,0)");
        assert_eq!(add(&Term::Zero, &y, &spec).unwrap(), y);
        assert_eq!(add(&y, &Term::Zero, &spec).unwrap(), y);
    }

    #[test]
    fn one_plus_one() {
        let spec = SystemSpec::bh();
        let one = bh("C(0,0)");
        assert_eq!(add(&one, &one, &spec).unwrap(), bh("C(0,C(0,0))"));
    }

    #[test]
    fn omega_plus_omega() {
        let spec = SystemSpec::bh();
        let w = Term::Omega(1);
        let sum = add(&w, &w, &spec).unwrap();
        assert_eq!(sum, bh("C(W,W)"));
        // ordering cross-check: W < C(W,W) < C(C(0,W),W)
        assert!(lex_lt(&w, &sum));
        assert!(lex_lt(&sum, &bh("C(C(0,W),W)")));
    }

    #[test]
    fn absorption() {
        let spec = SystemSpec::bh();
        // 1 + W = W
        let one = bh("C(0,0)");
        assert_eq!(add(&one, &Term::Omega(1), &spec).unwrap(), Term::Omega(1));
        // W + 1 = C(0, W)
        assert_eq!(add(&Term::Omega(1), &one, &spec).unwrap(), bh("C(0,W)"));
        // eps0 + eps0 = C(eps0, eps0)
        let e = bh("C(W,0)");
        assert_eq!(
            add(&e, &e, &spec).unwrap(),
            Term::c2(e.clone(), e.clone())
        );
    }

    #[test]
    fn omega_pow_cases() {
        let spec = SystemSpec::bh();
        assert_eq!(omega_pow(&Term::Zero, &spec).unwrap(), bh("C(0,0)"));
        assert_eq!(
            omega_pow(&bh("C(0,0)"), &spec).unwrap(),
            bh("C(C(0,0),0)")
        );
        // Omega is an epsilon number of the algebra
        assert_eq!(omega_pow(&Term::Omega(1), &spec).unwrap(), Term::Omega(1));
        // w^(W+1) = C(C(0,W), W), i.e. W*w
        assert_eq!(
            omega_pow(&bh("C(0,W)"), &spec).unwrap(),
            bh("C(C(0,W),W)")
        );
        // collapses are epsilon numbers
        let e = bh("C(W,0)");
        assert_eq!(omega_pow(&e, &spec).unwrap(), e);
    }

    #[test]
    fn cnf_view_examples() {
        let spec = SystemSpec::bh();
        let v = cnf_view(&bh("C(0,C(0,0))"), &spec).unwrap();
        assert_eq!(v.base, Term::Zero);
        assert_eq!(v.exponents, vec![Term::Zero, Term::Zero]);
        // C(W, C(C(0,W),W)): base W, exponents [C(0,W), W]
        let v = cnf_view(&bh("C(W,C(C(0,W),W))"), &spec).unwrap();
        assert_eq!(v.base, Term::Omega(1));
        assert_eq!(v.exponents, vec![bh("C(0,W)"), Term::Omega(1)]);
        assert_eq!(v.recompose(&spec), bh("C(W,C(C(0,W),W))"));
        let v = cnf_view(&Term::Zero, &spec).unwrap();
        assert_eq!(v.base, Term::Zero);
        assert!(v.exponents.is_empty());
        // a collapse is its own base
        let v = cnf_view(&bh("C(W,0)"), &spec).unwrap();
        assert_eq!(v.base, bh("C(W,0)"));
        assert!(v.exponents.is_empty());
    }

    #[test]
    fn c1_trivial_cases() {
        let spec = SystemSpec::bh();
        let b = bh("C(W,0)");
        assert_eq!(c1_eval(&Term::Zero, &b, &spec).unwrap(), b);
        // C1(w^0, 0) = C(0,0)
        let one = bh("C(0,0)");
        assert_eq!(c1_eval(&one, &Term::Zero, &spec).unwrap(), one);
    }

    #[test]
    fn expand_repeat_cases() {
        let a = Term::Omega(1);
        let b = Term::Zero;
        assert_eq!(expand_repeat(1, &a, &b).unwrap(), Term::c2(a.clone(), b.clone()));
        assert_eq!(
            expand_repeat(2, &Term::Zero, &Term::Zero).unwrap(),
            Term::c2(Term::Zero, Term::c2(Term::Zero, Term::Zero))
        );
        assert_eq!(
            expand_repeat(3, &a, &b).unwrap(),
            Term::c2(a.clone(), Term::c2(a.clone(), Term::c2(a.clone(), b.clone())))
        );
        assert!(expand_repeat(0, &a, &b).is_err());
    }
}
