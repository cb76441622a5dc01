//! Standardness, built-from-below levels, and normalization for the
//! Bachmann-Howard system, the n-th main systems, and the combined system.
//!
//! The level-n condition reads: `a <_0 b` iff `a < b`, and `a <_{n+1} b` iff
//! every subterm occurrence of `a` exceeding `a` lies inside (or is itself)
//! an occurrence that is `<_n b`. Comparisons use the postfix token order
//! throughout, also on nonstandard intermediate terms.

use crate::frame::{lex_cmp, lex_le, lex_lt};
use crate::render::prefix;
use crate::system::{SystemId, SystemSpec};
use crate::term::{Condition, Diagnostic, Path};
use crate::{Error, Term};
use std::cmp::Ordering;
use std::collections::HashMap;

type Memo = HashMap<(Term, u32), bool>;

fn bfb_memo(a: &Term, bound: &Term, n: u32, memo: &mut Memo) -> bool {
    if n == 0 {
        return lex_lt(a, bound);
    }
    let key = (a.clone(), n);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut ok = true;
    'positions: for (pos, x) in a.subterms() {
        if lex_cmp(x, a) == Ordering::Greater {
            for anc in pos.ancestors_including_self() {
                let shield = a.at(&anc).expect("ancestor path valid");
                if bfb_memo(shield, bound, n - 1, memo) {
                    continue 'positions;
                }
            }
            ok = false;
            break;
        }
    }
    memo.insert(key, ok);
    ok
}

/// The rightmost counterexample chain witnessing `not (a <_n bound)`:
/// positions `x1 ⊐ x2 ⊐ ...` within `T_a`, each exceeding the previous
/// level's root and unexcused, ending at a level-0 failure. An empty chain
/// means `a` itself fails at level 0 (`a >= bound`).
fn bfb_witness(a: &Term, bound: &Term, n: u32) -> Option<Vec<Path>> {
    if n == 0 {
        return if lex_lt(a, bound) {
            None
        } else {
            Some(Vec::new())
        };
    }
    let mut memo = Memo::new();
    let mut worst: Option<Path> = None;
    for (pos, x) in a.subterms() {
        if lex_cmp(x, a) == Ordering::Greater {
            let excused = pos.ancestors_including_self().into_iter().any(|anc| {
                let shield = a.at(&anc).expect("ancestor path valid");
                bfb_memo(shield, bound, n - 1, &mut memo)
            });
            if !excused {
                // subterms() is prefix-string order, so the last failing
                // occurrence is the rightmost one.
                worst = Some(pos);
            }
        }
    }
    let pos = worst?;
    let x = a.at(&pos).expect("witness path valid");
    // The occurrence's own shield failed, so the deeper chain exists.
    let tail = bfb_witness(x, bound, n - 1).expect("self shield failed");
    let mut chain = vec![pos.clone()];
    for p in tail {
        let mut full = pos.0.clone();
        full.extend_from_slice(&p.0);
        chain.push(Path(full));
    }
    Some(chain)
}

/// Is `a` n-built from below from `< bound`? The bound is passed as the
/// already-assembled comparison term (usually `C(a, b)` itself).
pub fn n_built_from_below(
    a: &Term,
    bound: &Term,
    n: u32,
    spec: &SystemSpec,
) -> Result<bool, Error> {
    spec.validate(a)?;
    spec.validate(bound)?;
    if spec.id == SystemId::Combined {
        let idx = a
            .max_omega_index()
            .into_iter()
            .chain(bound.max_omega_index())
            .max()
            .unwrap_or(1);
        let a = to_single_omega(a, idx)?;
        let bound = to_single_omega(bound, idx)?;
        return Ok(bfb_memo(&a, &bound, n, &mut Memo::new()));
    }
    Ok(bfb_memo(a, bound, n, &mut Memo::new()))
}

/// Direct (non-recursive) statement of the Bachmann-Howard maximality
/// condition: every subterm occurrence of `a` above `a` lies weakly inside
/// an occurrence below `bound`. Kept separate from the level-1 recursion so
/// the BH/Main(1) agreement check compares two routes.
pub(crate) fn bh_maximal(a: &Term, bound: &Term) -> bool {
    a.subterms().iter().all(|(pos, x)| {
        lex_cmp(x, a) != Ordering::Greater
            || pos
                .ancestors_including_self()
                .iter()
                .any(|anc| lex_lt(a.at(anc).expect("ancestor path valid"), bound))
    })
}

/// Base (second-argument) condition shared by the binary systems: the base
/// is 0, an Omega constant, the top of the constant pool, or `C(c, d)` with
/// the node's degree `<= c`.
fn base_condition2(a: &Term, b: &Term, spec: &SystemSpec) -> Result<(), Diagnostic> {
    match b {
        Term::Zero => {
            if spec.constants > 0 {
                return Err(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path(vec![1])],
                    "base must not lie below the constant pool",
                ));
            }
        }
        Term::Omega(_) => {}
        Term::Ext(k) => {
            if *k != spec.constants {
                return Err(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path(vec![1])],
                    format!("base ${k} lies below the top constant ${}", spec.constants),
                ));
            }
        }
        Term::C(bargs) => {
            if !lex_le(a, &bargs[0]) {
                return Err(Diagnostic::new(
                    Condition::BaseNotMinimal,
                    vec![Path::root()],
                    format!(
                        "base {} can be minimized: its degree is below the node's degree {}",
                        prefix(b),
                        prefix(a)
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn shift_paths(mut d: Diagnostic, idx: u32) -> Diagnostic {
    for p in &mut d.paths {
        p.0.insert(0, idx);
    }
    d
}

/// Standardness of the main family. `level` is the built-from-below level n;
/// `bh_route` selects the direct BH formulation instead of the level
/// recursion (the two must agree for n = 1, which is a checked property).
pub(crate) fn diagnose_main_family(
    t: &Term,
    spec: &SystemSpec,
    level: u32,
    bh_route: bool,
) -> Option<Diagnostic> {
    let Term::C(args) = t else {
        return None;
    };
    // Right-to-left: base side first, matching the normalizer's traversal.
    if let Some(d) = diagnose_main_family(&args[1], spec, level, bh_route) {
        return Some(shift_paths(d, 1));
    }
    if let Some(d) = diagnose_main_family(&args[0], spec, level, bh_route) {
        return Some(shift_paths(d, 0));
    }
    node_diag_main(t, spec, level, bh_route)
}

/// Only this node's conditions, assuming the arguments are standard.
pub(crate) fn node_diag_main(
    t: &Term,
    spec: &SystemSpec,
    level: u32,
    bh_route: bool,
) -> Option<Diagnostic> {
    let Term::C(args) = t else {
        return None;
    };
    if let Err(d) = base_condition2(&args[0], &args[1], spec) {
        return Some(d);
    }
    let ok = if bh_route {
        bh_maximal(&args[0], t)
    } else {
        bfb_memo(&args[0], t, level, &mut Memo::new())
    };
    if !ok {
        let chain = bfb_witness(&args[0], t, level).unwrap_or_default();
        let paths: Vec<Path> = chain
            .iter()
            .map(|p| {
                let mut v = vec![0];
                v.extend_from_slice(&p.0);
                Path(v)
            })
            .collect();
        return Some(Diagnostic::new(
            Condition::BuiltFromBelowViolation,
            paths,
            format!(
                "degree {} is not {level}-built from below from < {}",
                prefix(&args[0]),
                prefix(t)
            ),
        ));
    }
    None
}

/// Standardness in the combined system: no raw `C(W_{i+1}, 0)` spelling, and
/// the single-Omega conversion passes the n-th system's conditions.
pub(crate) fn diagnose_combined(t: &Term) -> Option<Diagnostic> {
    for (pos, s) in t.subterms() {
        if let Term::C(args) = s {
            if args.len() == 2 && matches!(args[0], Term::Omega(_)) && args[1].is_zero() {
                return Some(Diagnostic::new(
                    Condition::OmegaNormalization,
                    vec![pos],
                    "spelling C(W_{i+1},0) must be written W_i in the combined system",
                ));
            }
        }
    }
    let n = t.max_omega_index().unwrap_or(1);
    let conv = to_single_omega(t, n).expect("n is the maximal index");
    let spec = SystemSpec::main(n);
    diagnose_main_family(&conv, &spec, n, false).map(|d| {
        Diagnostic::new(
            d.condition,
            Vec::new(),
            format!("{} (checked in the W_{n} spelling {})", d.message, prefix(&conv)),
        )
    })
}

/// Rewrites every Omega constant of index `< n` to its `C(W_{i+1}, 0)`
/// spelling so the term uses only `W_n`.
pub fn to_single_omega(t: &Term, n: u32) -> Result<Term, Error> {
    if n == 0 {
        return Err(Error::IndexTooSmall {
            target: 0,
            present: t.max_omega_index().unwrap_or(1),
        });
    }
    fn chain(i: u32, n: u32) -> Term {
        if i == n {
            Term::Omega(n)
        } else {
            Term::c2(chain(i + 1, n), Term::Zero)
        }
    }
    match t {
        Term::Omega(i) => {
            if *i > n {
                Err(Error::IndexTooSmall {
                    target: n,
                    present: *i,
                })
            } else {
                Ok(chain(*i, n))
            }
        }
        Term::C(args) => {
            let args = args
                .iter()
                .map(|a| to_single_omega(a, n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::C(args))
        }
        other => Ok(other.clone()),
    }
}

/// Rewrites `C(W_{i+1}, 0)` nodes back to `W_i`, bottom-up.
pub(crate) fn collapse_omegas(t: &Term) -> Term {
    match t {
        Term::C(args) => {
            let args: Vec<Term> = args.iter().map(collapse_omegas).collect();
            if args.len() == 2 && args[1].is_zero() {
                if let Term::Omega(i) = args[0] {
                    if i >= 2 {
                        return Term::Omega(i - 1);
                    }
                }
            }
            Term::C(args)
        }
        other => other.clone(),
    }
}

pub(crate) struct Budget {
    left: usize,
    total: usize,
}

impl Budget {
    pub(crate) fn for_term(t: &Term) -> Budget {
        let total = t.symbols() * 64;
        Budget { left: total, total }
    }

    pub(crate) fn step(&mut self, t: &Term) -> Result<(), Error> {
        if self.left == 0 {
            return Err(Error::StepBudget {
                budget: self.total,
                term: prefix(t),
            });
        }
        self.left -= 1;
        Ok(())
    }
}

/// Keeps the suffix of the prefix rendering that starts at `p`, re-completing
/// with the required number of `C(`: ancestors entered through their degree
/// argument survive, ancestors entered through their base are deleted.
/// Binary systems only.
pub(crate) fn surgery2(t: &Term, p: &Path, repl: Term) -> Result<Term, Error> {
    fn go(t: &Term, rest: &[u32], repl: Term) -> Result<Term, Error> {
        let Some((&i, tail)) = rest.split_first() else {
            return Ok(repl);
        };
        match t {
            Term::C(args) if args.len() == 2 && i <= 1 => {
                if i == 0 {
                    Ok(Term::c2(go(&args[0], tail, repl)?, args[1].clone()))
                } else {
                    go(&args[1], tail, repl)
                }
            }
            _ => Err(Error::InvalidPath),
        }
    }
    go(t, &p.0, repl)
}

/// The nonempty suffix of `t`'s prefix rendering starting at position `p`,
/// augmented with the corresponding number of `C(`.
pub fn suffix_completion(t: &Term, p: &Path) -> Result<Term, Error> {
    let sub = t.at(p).ok_or(Error::InvalidPath)?.clone();
    surgery2(t, p, sub)
}

fn omega_atom(spec: &SystemSpec, level_index: u32) -> Result<Term, Error> {
    match spec.id {
        SystemId::Bh | SystemId::Dor | SystemId::DorPass(_) => Ok(Term::Omega(1)),
        SystemId::Main(n) if n >= 1 => Ok(Term::Omega(n)),
        SystemId::Combined => Ok(Term::Omega(level_index)),
        _ => Err(Error::Unsupported(
            "cannot maximize a degree without an Omega constant".into(),
        )),
    }
}

fn norm_node2(
    mut a: Term,
    mut b: Term,
    spec: &SystemSpec,
    level: u32,
    budget: &mut Budget,
) -> Result<Term, Error> {
    loop {
        // Recursively minimize the base.
        while let Term::C(bargs) = &b {
            if lex_lt(&bargs[0], &a) {
                b = bargs[1].clone();
            } else {
                break;
            }
        }
        if spec.constants > 0 && lex_lt(&b, &Term::Ext(spec.constants)) {
            b = Term::Ext(spec.constants);
        }
        let node = Term::c2(a.clone(), b.clone());
        budget.step(&node)?;
        match bfb_witness(&a, &node, level) {
            None => return Ok(node),
            Some(chain) => {
                let Some(mut end) = chain.last().cloned() else {
                    return Err(Error::Unsupported(
                        "degree exceeds the node and no Omega constant is available".into(),
                    ));
                };
                // Lift chain ends sitting in base position up to the
                // enclosing degree position; those parents fail too.
                while end.0.last() == Some(&1) {
                    end.0.pop();
                }
                let parent = end.parent().ok_or_else(|| {
                    Error::Unsupported("counterexample chain degenerated to the root".into())
                })?;
                let omega = omega_atom(spec, level)?;
                let replaced = surgery2(&a, &parent, omega)?;
                a = norm_rec(&replaced, spec, level, budget)?;
            }
        }
    }
}

fn norm_rec(t: &Term, spec: &SystemSpec, level: u32, budget: &mut Budget) -> Result<Term, Error> {
    match t {
        Term::C(args) if args.len() == 2 => {
            let a = norm_rec(&args[0], spec, level, budget)?;
            let b = norm_rec(&args[1], spec, level, budget)?;
            norm_node2(a, b, spec, level, budget)
        }
        other => Ok(other.clone()),
    }
}

/// Conversion to standard form for the main family (and, via dispatch in
/// [`crate::normalize`], the entry point used by the CLI). For already
/// standard input this is the identity; for `C(a, b)` it yields the least
/// standard term above `b` whose degree is at least `a`.
pub fn normalize_main(t: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(t)?;
    let mut budget = Budget::for_term(t);
    match spec.id {
        SystemId::Bh => norm_rec(t, spec, 1, &mut budget),
        SystemId::Main(n) => norm_rec(t, spec, n, &mut budget),
        SystemId::Combined => {
            let n = t.max_omega_index().unwrap_or(1);
            let conv = to_single_omega(t, n)?;
            let result = norm_rec(&conv, spec, n, &mut budget)?;
            Ok(collapse_omegas(&result))
        }
        _ => Err(Error::Unsupported(format!(
            "normalization is not defined for system {spec}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_standard, parse};

    fn m1(s: &str) -> Term {
        parse(s, &SystemSpec::main(1)).unwrap()
    }

    #[test]
    fn omega_is_one_but_not_zero_built_from_below() {
        let spec = SystemSpec::main(1);
        let w = Term::Omega(1);
        let bound = m1("C(W,0)");
        assert!(n_built_from_below(&w, &bound, 1, &spec).unwrap());
        assert!(!n_built_from_below(&w, &bound, 0, &spec).unwrap());
        // zero is n-built from below from any positive bound
        for n in 0..4 {
            assert!(n_built_from_below(&Term::Zero, &bound, n, &spec).unwrap());
        }
    }

    #[test]
    fn variation_note_term_accepted_strict_rejected_weak() {
        // a = W2 + C(W2*2 + C(C(W2*3,0),0), 0) in the n=2 system:
        // 2-built from below from < C(a,0), but not from <= 0.
        let spec = SystemSpec::main(2);
        let a = parse("W + C(W*2 + C(C(W*3,0),0), 0)", &spec).unwrap();
        let bound = Term::c2(a.clone(), Term::Zero);
        assert!(n_built_from_below(&a, &bound, 2, &spec).unwrap());
        // the <= b variant with b = 0: nothing is below 0
        assert!(!n_built_from_below(&a, &Term::Zero, 2, &spec).unwrap());
        // and the full term is standard
        assert!(is_standard(&bound, &spec).unwrap());
    }

    #[test]
    fn standardness_basic_examples() {
        let spec = SystemSpec::main(1);
        assert!(is_standard(&m1("C(W,0)"), &spec).unwrap());
        assert!(is_standard(&m1("C(0,C(W,0))"), &spec).unwrap());
        let bad = m1("C(W,C(0,0))");
        let d = crate::diagnose(&bad, &spec).unwrap().unwrap();
        assert_eq!(d.condition, Condition::BaseNotMinimal);
        // sums above Omega are standard: W + eps0
        assert!(is_standard(&m1("C(C(W,0),W)"), &spec).unwrap());
    }

    #[test]
    fn normalize_minimizes_base() {
        let spec = SystemSpec::main(1);
        let t = m1("C(W,C(0,0))");
        assert_eq!(normalize_main(&t, &spec).unwrap(), m1("C(W,0)"));
        // idempotent on standard terms
        let s = m1("C(0,C(W,0))");
        assert_eq!(normalize_main(&s, &spec).unwrap(), s);
    }

    #[test]
    fn worked_conversion_example() {
        // b = 0, a = C(0, C(G, C(G, C(C(0,W),W)))) with G the term for the
        // least collapse of degree W^2; the conversion deletes the first two
        // instances and converts the third to W.
        let spec = SystemSpec::bh();
        let g = parse("C(C(C(W,W),W),0)", &spec).unwrap();
        assert!(is_standard(&g, &spec).unwrap());
        let a = Term::c2(
            Term::Zero,
            Term::c2(
                g.clone(),
                Term::c2(g.clone(), parse("C(C(0,W),W)", &spec).unwrap()),
            ),
        );
        let t = Term::c2(a, Term::Zero);
        let expect = parse("C(C(W,C(C(0,W),W)),0)", &spec).unwrap();
        assert_eq!(normalize_main(&t, &spec).unwrap(), expect);
        assert!(is_standard(&expect, &spec).unwrap());
    }

    #[test]
    fn to_single_omega_examples() {
        assert_eq!(
            to_single_omega(&Term::Omega(1), 2).unwrap(),
            Term::c2(Term::Omega(2), Term::Zero)
        );
        assert_eq!(to_single_omega(&Term::Omega(1), 1).unwrap(), Term::Omega(1));
        assert_eq!(
            to_single_omega(&Term::Omega(1), 3).unwrap(),
            Term::c2(Term::c2(Term::Omega(3), Term::Zero), Term::Zero)
        );
        assert!(matches!(
            to_single_omega(&Term::Omega(3), 2),
            Err(Error::IndexTooSmall { .. })
        ));
    }

    #[test]
    fn combined_omega_spelling() {
        let spec = SystemSpec::combined();
        assert!(is_standard(&Term::Omega(1), &spec).unwrap());
        let raw = Term::c2(Term::Omega(2), Term::Zero);
        let d = crate::diagnose(&raw, &spec).unwrap().unwrap();
        assert_eq!(d.condition, Condition::OmegaNormalization);
        assert_eq!(collapse_omegas(&raw), Term::Omega(1));
    }

    #[test]
    fn suffix_completion_matches_paper_note() {
        // for standard C(C(a,b),c), the completion at b is C(b,c)
        let spec = SystemSpec::bh();
        let t = parse("C(C(0,W),W)", &spec).unwrap();
        let comp = suffix_completion(&t, &Path(vec![0, 1])).unwrap();
        assert_eq!(comp, parse("C(W,W)", &spec).unwrap());
        // root completion is the term itself
        assert_eq!(suffix_completion(&t, &Path::root()).unwrap(), t);
    }
}
