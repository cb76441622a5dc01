//! Built-from-below with passthrough for lower indices: ternary terms
//! `C(i, a, b)` where `i` is the reflection level (itself a term), `a` the
//! degree, `b` the base. `(i, a)` is compared as a lexicographic pair; the
//! degree must be built from below from `< C_i(a,b)` except inside terms
//! `C_j(e,f)` with `j < i` that are not shielded by a subterm `< C_j(e,f)`.

use crate::frame::rec_cmp3;
use crate::render::prefix;
use crate::system::SystemSpec;
use crate::term::{Condition, Diagnostic, Path};
use crate::{Error, Term};
use std::cmp::Ordering;

/// Pair-lexicographic comparison of standard terms.
pub fn compare_cpass(t1: &Term, t2: &Term) -> Result<Ordering, Error> {
    let spec = SystemSpec::cpass();
    spec.validate(t1)?;
    spec.validate(t2)?;
    Ok(rec_cmp3(t1, t2))
}

fn lt(a: &Term, b: &Term) -> bool {
    rec_cmp3(a, b) == Ordering::Less
}

fn le(a: &Term, b: &Term) -> bool {
    rec_cmp3(a, b) != Ordering::Greater
}

/// Which side of the equivalent bound formulations to use; the proposition
/// under test says all four agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundVariant {
    /// Excuse occurrences inside terms `<= b` instead of `< C_i(a,b)`.
    pub excuse_le_base: bool,
    /// Block passthrough at subterms `<= f` instead of `< C_j(e,f)`.
    pub block_le_base: bool,
}

/// Built-from-below with passthrough: every occurrence in `checked`
/// exceeding `checked` lies weakly inside a term below the bound, or
/// properly inside some `C_j(e,f)` with `j < level` without an intervening
/// subterm of that node lying below it.
fn bfb_pass(
    checked: &Term,
    level: &Term,
    bound: &Term,
    node_base: &Term,
    v: BoundVariant,
) -> Option<Path> {
    let subs = checked.subterms();
    'positions: for (pos, x) in &subs {
        if rec_cmp3(x, checked) != Ordering::Greater {
            continue;
        }
        for anc in pos.ancestors_including_self() {
            let y = checked.at(&anc).expect("ancestor path valid");
            let excused = if v.excuse_le_base {
                le(y, node_base)
            } else {
                lt(y, bound)
            };
            if excused {
                continue 'positions;
            }
        }
        for zpos in pos.ancestors_including_self() {
            if zpos == *pos {
                continue; // proper subterm of C_j(e,f)
            }
            let z = checked.at(&zpos).expect("ancestor path valid");
            let Term::C(zargs) = z else { continue };
            if zargs.len() != 3 || !lt(&zargs[0], level) {
                continue;
            }
            let blocked = pos
                .ancestors_including_self()
                .into_iter()
                .filter(|w| zpos.strictly_contains(w))
                .any(|wpos| {
                    let w = checked.at(&wpos).expect("ancestor path valid");
                    if v.block_le_base {
                        le(w, &zargs[2])
                    } else {
                        lt(w, z)
                    }
                });
            if !blocked {
                continue 'positions;
            }
        }
        return Some(pos.clone());
    }
    None
}

fn base_condition(i: &Term, a: &Term, b: &Term, spec: &SystemSpec) -> Result<(), Diagnostic> {
    match b {
        Term::Zero => {
            if spec.constants > 0 {
                return Err(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path(vec![2])],
                    "base must not lie below the constant pool",
                ));
            }
        }
        Term::Ext(k) => {
            if *k != spec.constants {
                return Err(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path(vec![2])],
                    "base lies below the top constant",
                ));
            }
        }
        Term::Omega(_) => {
            return Err(Diagnostic::new(
                Condition::ConstantMisuse,
                vec![Path(vec![2])],
                "no Omega constants in this system",
            ));
        }
        Term::C(bargs) => {
            let pair_le = match rec_cmp3(i, &bargs[0]) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => le(a, &bargs[1]),
            };
            if !pair_le {
                return Err(Diagnostic::new(
                    Condition::BaseNotMinimal,
                    vec![Path::root()],
                    format!(
                        "base {} can be minimized: its pair is below the node's",
                        prefix(b)
                    ),
                ));
            }
        }
    }
    Ok(())
}

pub(crate) fn diagnose_cpass(t: &Term, spec: &SystemSpec) -> Option<Diagnostic> {
    diagnose_variant(t, spec, BoundVariant::default())
}

pub(crate) fn diagnose_variant(
    t: &Term,
    spec: &SystemSpec,
    v: BoundVariant,
) -> Option<Diagnostic> {
    let Term::C(args) = t else {
        return None;
    };
    for (idx, sub) in args.iter().enumerate().rev() {
        if let Some(mut d) = diagnose_variant(sub, spec, v) {
            for p in &mut d.paths {
                p.0.insert(0, idx as u32);
            }
            return Some(d);
        }
    }
    let (i, a, b) = (&args[0], &args[1], &args[2]);
    if let Err(d) = base_condition(i, a, b, spec) {
        return Some(d);
    }
    if let Some(p) = bfb_pass(a, i, t, b, v) {
        let mut full = vec![1u32];
        full.extend_from_slice(&p.0);
        return Some(Diagnostic::new(
            Condition::BuiltFromBelowViolation,
            vec![Path(full)],
            format!(
                "degree {} uses an ordinal above itself outside any shield or passthrough",
                prefix(a)
            ),
        ));
    }
    if spec.constants > 0 {
        // augmented system: the index is built from below with passthrough
        // for lower indices, and no constant falls in (b, C_i(a,b)]
        if let Some(p) = bfb_pass(i, i, t, b, v) {
            let mut full = vec![0u32];
            full.extend_from_slice(&p.0);
            return Some(Diagnostic::new(
                Condition::BuiltFromBelowViolation,
                vec![Path(full)],
                "index is not built from below with passthrough for lower indices",
            ));
        }
        for r in 1..=spec.constants {
            let c = Term::Ext(r);
            if lt(b, &c) && le(&c, t) {
                return Some(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path::root()],
                    format!("constant ${r} lies strictly between the base and the node"),
                ));
            }
        }
    }
    None
}

/// The four bound formulations (`< C_i(a,b)` vs `<= b` for the shield,
/// `< C_j(e,f)` vs `<= f` for the passthrough block) must give identical
/// verdicts; returns whether they do on `t` and all its subterms.
pub fn bound_equivalence_check(t: &Term, spec: &SystemSpec) -> Result<bool, Error> {
    spec.validate(t)?;
    let variants = [
        BoundVariant { excuse_le_base: false, block_le_base: false },
        BoundVariant { excuse_le_base: false, block_le_base: true },
        BoundVariant { excuse_le_base: true, block_le_base: false },
        BoundVariant { excuse_le_base: true, block_le_base: true },
    ];
    let verdicts: Vec<bool> = variants
        .iter()
        .map(|v| diagnose_variant(t, spec, *v).is_none())
        .collect();
    Ok(verdicts.iter().all(|&x| x == verdicts[0]))
}

/// Value of a pure successor chain `C(0,0,C(0,0,...))`, if the term is one.
pub(crate) fn successor_chain_value(t: &Term) -> Option<u32> {
    let mut n = 0u32;
    let mut cur = t;
    loop {
        match cur {
            Term::Zero => return Some(n),
            Term::C(args) if args.len() == 3 && args[0].is_zero() && args[1].is_zero() => {
                n += 1;
                cur = &args[2];
            }
            _ => return None,
        }
    }
}

/// Encodes a term with numeral indices into the degrees-of-reflection
/// language via `C_i(a, b) -> C(W*i + a, b)`.
pub fn encode_to_dor(t: &Term) -> Result<Term, Error> {
    let dspec = SystemSpec::dor_pass(crate::system::PassRestriction::Full);
    fn omega_times(k: u32) -> Term {
        let mut t = Term::Omega(1);
        for _ in 1..k {
            t = Term::c2(Term::Omega(1), t);
        }
        t
    }
    fn go(t: &Term, dspec: &SystemSpec) -> Result<Term, Error> {
        match t {
            Term::Zero => Ok(Term::Zero),
            Term::C(args) if args.len() == 3 => {
                let k = successor_chain_value(&args[0]).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "index {} is not a numeral; the pairing encoding needs numerals",
                        prefix(&args[0])
                    ))
                })?;
                let a = go(&args[1], dspec)?;
                let b = go(&args[2], dspec)?;
                let deg = if k == 0 {
                    a
                } else {
                    crate::arith::add(&omega_times(k), &a, dspec)?
                };
                Ok(Term::c2(deg, b))
            }
            other => Err(Error::Unsupported(format!(
                "cannot encode {} into the binary language",
                prefix(other)
            ))),
        }
    }
    go(t, &dspec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_standard, parse};

    fn cp(s: &str) -> Term {
        parse(s, &SystemSpec::cpass()).unwrap()
    }

    fn m() -> Term {
        // M = C_2(0, 0)
        cp("C(2,0,0)")
    }

    #[test]
    fn simple_standard_terms() {
        let spec = SystemSpec::cpass();
        assert!(is_standard(&cp("C(0,0,0)"), &spec).unwrap());
        assert!(is_standard(&m(), &spec).unwrap());
        // C_0(C_1(M, M), 0) = C(0, C(1, M, M), 0)
        let t = Term::c3(
            Term::Zero,
            Term::c3(cp("1"), m(), m()),
            Term::Zero,
        );
        assert!(is_standard(&t, &spec).unwrap());
    }

    #[test]
    fn paper_invalid_example() {
        // C_1(M + C_1(M*2, 0), 0) is invalid: M*2 is above the degree.
        let spec = SystemSpec::cpass();
        let m = m();
        let m2 = crate::arith::mul_nat(&m, 2, &spec).unwrap();
        let y = Term::c3(cp("1"), m2, Term::Zero);
        let deg = crate::arith::add(&m, &crate::arith::omega_pow(&y, &spec).unwrap(), &spec)
            .unwrap();
        let t = Term::c3(cp("1"), deg, Term::Zero);
        assert!(!is_standard(&t, &spec).unwrap());
    }

    #[test]
    fn paper_valid_passthrough_example() {
        // C_1(C_0(C_3(0,0), M), 0) is valid because of passthrough for C_0.
        let spec = SystemSpec::cpass();
        let x = cp("C(3,0,0)");
        let inner = Term::c3(Term::Zero, x, m());
        let t = Term::c3(cp("1"), inner, Term::Zero);
        assert!(is_standard(&t, &spec).unwrap());
    }

    #[test]
    fn bound_equivalence_on_paper_examples() {
        let spec = SystemSpec::cpass();
        for t in [cp("C(0,0,0)"), m(), cp("C(1,C(0,C(3,0,0),C(2,0,0)),0)")] {
            assert!(bound_equivalence_check(&t, &spec).unwrap());
        }
        assert!(bound_equivalence_check(&Term::Zero, &spec).unwrap());
    }

    #[test]
    fn encode_examples() {
        // C_0(a, b) -> C(a, b); C_1(0, 0) -> C(W, 0); C_2(0,0) -> C(W*2, 0)
        let one = cp("C(0,0,0)");
        let enc = encode_to_dor(&one).unwrap();
        assert_eq!(enc, Term::c2(Term::Zero, Term::Zero));
        let c1 = Term::c3(one.clone(), Term::Zero, Term::Zero);
        assert_eq!(
            encode_to_dor(&c1).unwrap(),
            Term::c2(Term::Omega(1), Term::Zero)
        );
        let enc_m = encode_to_dor(&m()).unwrap();
        let dspec = SystemSpec::dor();
        assert_eq!(enc_m, parse("C(W*2,0)", &dspec).unwrap());
    }
}
