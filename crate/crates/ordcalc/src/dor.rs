//! Degrees of reflection with O = C, its passthrough variant, and
//! reflection-configuration extraction and comparison.
//!
//! Standardness of `C(a, b)` requires, beyond the shared base condition,
//! that for every pair of occurrences `y ⊏ x` in `T_a` with `x < y < W`
//! there is `z ⊒ y` with `z < W` and (`z ⊐ x`, or `z < C(a,b)`, or the
//! passthrough clause `z ⊐ y ∧ d(z) < p(a) ∧ ∀t (y ⊑ t ⊑ z) t ≥ z`).

use crate::frame::{lex_cmp, lex_lt};
use crate::render::prefix;
use crate::system::{PassRestriction, SystemId, SystemSpec};
use crate::term::{Condition, Diagnostic, Path};
use crate::{Error, Term};
use std::cmp::Ordering;
use std::fmt::Write;

fn omega() -> Term {
    Term::Omega(1)
}

/// Degree of a node for the passthrough clause: `d(C(e,f)) = e` when the
/// node is standard, undefined (infinite) otherwise.
fn passthrough_degree<'t>(z: &'t Term, spec: &SystemSpec) -> Option<&'t Term> {
    match z {
        Term::C(args) if args.len() == 2 => {
            if diagnose_dor_family(z, spec, None).is_none() {
                Some(&args[0])
            } else {
                None
            }
        }
        _ => None,
    }
}

struct Violation {
    x: Path,
    y: Path,
}

/// Scans `T_a` for the rightmost violating pair, y-major in reverse prefix
/// order, matching the traversal the normalizer uses. `pass` carries the
/// passthrough bound `p(a)` when the passthrough clause is enabled;
/// `allow_z_eq_y` reproduces the known-ill-founded variant that drops the
/// `z ⊐ y` guard (kept for the regression harness).
fn find_violation(
    a: &Term,
    bound: &Term,
    pass: Option<&Term>,
    allow_z_eq_y: bool,
    spec: &SystemSpec,
) -> Option<Violation> {
    let subs = a.subterms();
    let w = omega();
    for (ypos, y) in subs.iter().rev() {
        if !lex_lt(y, &w) {
            continue;
        }
        // candidate x: proper ancestors of y with x < y
        for (xpos, x) in subs.iter() {
            if !xpos.strictly_contains(ypos) || lex_cmp(x, y) != Ordering::Less {
                continue;
            }
            let excused = ypos.ancestors_including_self().into_iter().any(|zpos| {
                let z = a.at(&zpos).expect("ancestor path valid");
                if !lex_lt(z, &w) {
                    return false;
                }
                if zpos.strictly_contains(xpos) || lex_lt(z, bound) {
                    return true;
                }
                let Some(p) = pass else { return false };
                let proper = zpos != *ypos;
                if !(proper || allow_z_eq_y) {
                    return false;
                }
                let Some(dz) = passthrough_degree(z, spec) else {
                    return false;
                };
                if !lex_lt(dz, p) {
                    return false;
                }
                // every t with y ⊑ t ⊑ z must satisfy t >= z
                ypos.ancestors_including_self()
                    .into_iter()
                    .filter(|t| zpos.contains(t))
                    .all(|tpos| {
                        let t = a.at(&tpos).expect("ancestor path valid");
                        !lex_lt(t, z)
                    })
            });
            if !excused {
                return Some(Violation {
                    x: xpos.clone(),
                    y: ypos.clone(),
                });
            }
        }
    }
    None
}

fn pass_bound<'a>(a: &'a Term, p: PassRestriction) -> Option<Term> {
    match p {
        PassRestriction::Full => Some(a.clone()),
        PassRestriction::None => Some(Term::Zero),
    }
}

fn base_condition(a: &Term, b: &Term, spec: &SystemSpec) -> Result<(), Diagnostic> {
    match b {
        Term::Zero | Term::Omega(_) => Ok(()),
        Term::Ext(k) => {
            if *k == spec.constants {
                Ok(())
            } else {
                Err(Diagnostic::new(
                    Condition::ConstantMisuse,
                    vec![Path(vec![1])],
                    "base lies below the top constant",
                ))
            }
        }
        Term::C(bargs) => {
            if lex_cmp(a, &bargs[0]) != Ordering::Greater {
                Ok(())
            } else {
                Err(Diagnostic::new(
                    Condition::BaseNotMinimal,
                    vec![Path::root()],
                    format!(
                        "base {} can be minimized: its degree is below {}",
                        prefix(b),
                        prefix(a)
                    ),
                ))
            }
        }
    }
}

/// Shared standardness for DoR and DoR-with-passthrough; `pass` is the
/// restriction when the passthrough clause is on.
pub(crate) fn diagnose_dor_family(
    t: &Term,
    spec: &SystemSpec,
    pass: Option<PassRestriction>,
) -> Option<Diagnostic> {
    diagnose_dor_variant(t, spec, pass, false)
}

pub(crate) fn diagnose_dor_variant(
    t: &Term,
    spec: &SystemSpec,
    pass: Option<PassRestriction>,
    allow_z_eq_y: bool,
) -> Option<Diagnostic> {
    let Term::C(args) = t else {
        return None;
    };
    for (idx, sub) in args.iter().enumerate().rev() {
        if let Some(mut d) = diagnose_dor_variant(sub, spec, pass, allow_z_eq_y) {
            for p in &mut d.paths {
                p.0.insert(0, idx as u32);
            }
            return Some(d);
        }
    }
    if let Err(d) = base_condition(&args[0], &args[1], spec) {
        return Some(d);
    }
    let pb = pass.and_then(|p| pass_bound(&args[0], p));
    if let Some(v) = find_violation(&args[0], t, pb.as_ref(), allow_z_eq_y, spec) {
        let mut xp = vec![0u32];
        xp.extend_from_slice(&v.x.0);
        let mut yp = vec![0u32];
        yp.extend_from_slice(&v.y.0);
        return Some(Diagnostic::new(
            Condition::BuiltFromBelowViolation,
            vec![Path(xp), Path(yp)],
            format!(
                "occurrence {} exceeds the enclosing {} below W with no admissible cover",
                prefix(a_at(&args[0], &v.y)),
                prefix(a_at(&args[0], &v.x)),
            ),
        ));
    }
    None
}

fn a_at<'a>(a: &'a Term, p: &Path) -> &'a Term {
    a.at(p).expect("violation path valid")
}

/// Conversion to standard form: minimize the base, then repeatedly replace
/// the rightmost violating occurrence with W, deleting everything to its
/// left in the degree.
pub fn normalize_dor(t: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    spec.validate(t)?;
    let pass = match spec.id {
        SystemId::Dor => None,
        SystemId::DorPass(p) => Some(p),
        _ => {
            return Err(Error::Unsupported(format!(
                "normalize_dor expects a degrees-of-reflection system, got {spec}"
            )))
        }
    };
    let mut budget = crate::mainsys::Budget::for_term(t);
    norm_rec(t, spec, pass, &mut budget)
}

fn norm_rec(
    t: &Term,
    spec: &SystemSpec,
    pass: Option<PassRestriction>,
    budget: &mut crate::mainsys::Budget,
) -> Result<Term, Error> {
    let Term::C(args) = t else {
        return Ok(t.clone());
    };
    let mut a = norm_rec(&args[0], spec, pass, budget)?;
    let mut b = norm_rec(&args[1], spec, pass, budget)?;
    loop {
        while let Term::C(bargs) = &b {
            if lex_lt(&bargs[0], &a) {
                b = bargs[1].clone();
            } else {
                break;
            }
        }
        let node = Term::c2(a.clone(), b.clone());
        budget.step(&node)?;
        let pb = pass.and_then(|p| pass_bound(&a, p));
        match find_violation(&a, &node, pb.as_ref(), false, spec) {
            None => return Ok(node),
            Some(v) => {
                let replaced = crate::mainsys::surgery2(&a, &v.y, omega())?;
                a = norm_rec(&replaced, spec, pass, budget)?;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reflection configurations
// ---------------------------------------------------------------------------

/// Where the hole sits relative to W.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoleDomain {
    BelowOmega,
    AboveOmega,
    Unconstrained,
}

/// Body of a reflection configuration: a term with the bound replaced by a
/// hole and subterms below the bound kept as unparsed constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfgNode {
    /// The hole `x`.
    Hole,
    /// Auxiliary hole `x_k` of nested extraction.
    Aux(u32),
    /// An unparsed constant strictly below the bound.
    Const(Term),
    /// An atom at or above the bound (0 never qualifies; in practice W).
    Atom(Term),
    C(Vec<CfgNode>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub body: CfgNode,
    pub domain: HoleDomain,
}

impl Config {
    /// Outermost constants, left to right.
    pub fn constants(&self) -> Vec<&Term> {
        fn go<'c>(n: &'c CfgNode, out: &mut Vec<&'c Term>) {
            match n {
                CfgNode::Const(t) => out.push(t),
                CfgNode::C(args) => args.iter().for_each(|a| go(a, out)),
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(&self.body, &mut out);
        out
    }

    pub fn is_constant(&self) -> bool {
        fn has_hole(n: &CfgNode) -> bool {
            match n {
                CfgNode::Hole | CfgNode::Aux(_) => true,
                CfgNode::C(args) => args.iter().any(has_hole),
                _ => false,
            }
        }
        !has_hole(&self.body)
    }

    pub fn render(&self) -> String {
        fn go(n: &CfgNode, out: &mut String) {
            match n {
                CfgNode::Hole => out.push('x'),
                CfgNode::Aux(k) => {
                    let _ = write!(out, "x{k}");
                }
                CfgNode::Const(t) | CfgNode::Atom(t) => out.push_str(&prefix(t)),
                CfgNode::C(args) => {
                    out.push_str("C(");
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        go(a, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut s = String::from("Lx. ");
        go(&self.body, &mut s);
        match self.domain {
            HoleDomain::BelowOmega => s.push_str(" | x<W"),
            HoleDomain::AboveOmega => s.push_str(" | x>=W"),
            HoleDomain::Unconstrained => {}
        }
        s
    }
}

/// The reflection configuration of `a` above `b`: the representation of `a`
/// over terms <= `b` with every base dipping below `b` bumped to `b`, and
/// `b` replaced by the hole.
pub fn reflection_config(a: &Term, b: &Term, spec: &SystemSpec) -> Result<Config, Error> {
    spec.validate(a)?;
    spec.validate(b)?;
    fn go(t: &Term, b: &Term) -> CfgNode {
        match lex_cmp(t, b) {
            Ordering::Less => CfgNode::Const(t.clone()),
            Ordering::Equal => CfgNode::Hole,
            Ordering::Greater => match t {
                Term::C(args) => {
                    let mut nodes: Vec<CfgNode> =
                        args[..args.len() - 1].iter().map(|c| go(c, b)).collect();
                    let base = args.last().expect("C node has arguments");
                    nodes.push(if lex_lt(base, b) {
                        // C(c, d) > b with d < b: d is bumped to b, then to x
                        CfgNode::Hole
                    } else {
                        go(base, b)
                    });
                    CfgNode::C(nodes)
                }
                atom => CfgNode::Atom(atom.clone()),
            },
        }
    }
    let domain = if spec.omega_index().is_none() {
        HoleDomain::Unconstrained
    } else if lex_lt(b, &omega()) {
        HoleDomain::BelowOmega
    } else {
        HoleDomain::AboveOmega
    };
    Ok(Config {
        body: go(a, b),
        domain,
    })
}

/// Configuration tokens in postfix order, with constants contributing their
/// ordinary term tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CfgTok {
    C,
    Zero,
    Ext(u32),
    /// (index, structural): structural Omegas are subject to the priming
    /// rule in cross-domain comparison, constant-internal ones are not.
    Omega(u32, bool),
    Aux(u32),
    Hole,
}

fn cfg_tokens(body: &CfgNode, out: &mut Vec<CfgTok>) {
    match body {
        CfgNode::Hole => out.push(CfgTok::Hole),
        CfgNode::Aux(k) => out.push(CfgTok::Aux(*k)),
        CfgNode::Const(t) => {
            for tok in crate::frame::postfix_tokens(t) {
                out.push(match tok {
                    crate::frame::Token::C => CfgTok::C,
                    crate::frame::Token::Zero => CfgTok::Zero,
                    crate::frame::Token::Ext(k) => CfgTok::Ext(k),
                    crate::frame::Token::Omega(i) => CfgTok::Omega(i, false),
                });
            }
        }
        CfgNode::Atom(t) => match t {
            Term::Zero => out.push(CfgTok::Zero),
            Term::Ext(k) => out.push(CfgTok::Ext(*k)),
            Term::Omega(i) => out.push(CfgTok::Omega(*i, true)),
            Term::C(_) => unreachable!("atom node"),
        },
        CfgNode::C(args) => {
            for a in args.iter().rev() {
                cfg_tokens(a, out);
            }
            out.push(CfgTok::C);
        }
    }
}

/// Postfix-lexicographic comparison of configurations. Within one domain the
/// token order is `C < 0 < x_0 < x_1 < ... < x < W` (hole below W for
/// x < W, above W otherwise); across domains the below-W configuration's
/// structural W is primed above everything.
pub fn compare_configs(c1: &Config, c2: &Config) -> Ordering {
    #[derive(PartialEq, Eq, Clone, Copy)]
    enum Mode {
        Below,
        Above,
        Cross,
    }
    let mode = match (c1.domain, c2.domain) {
        (HoleDomain::BelowOmega, HoleDomain::AboveOmega)
        | (HoleDomain::AboveOmega, HoleDomain::BelowOmega) => Mode::Cross,
        (HoleDomain::AboveOmega, HoleDomain::AboveOmega) => Mode::Above,
        _ => Mode::Below,
    };
    let rank = |tok: CfgTok, own: HoleDomain| -> u64 {
        const EXT: u64 = 1 << 8;
        const OMEGA_LOW: u64 = 1 << 24;
        const AUX: u64 = 1 << 32;
        const HOLE: u64 = 1 << 40;
        const OMEGA_HIGH: u64 = 1 << 48;
        const PRIME: u64 = 1 << 56;
        match tok {
            CfgTok::C => 0,
            CfgTok::Zero => 1,
            CfgTok::Ext(k) => EXT + k as u64,
            CfgTok::Aux(k) => AUX + k as u64,
            CfgTok::Hole => HOLE,
            CfgTok::Omega(i, structural) => match mode {
                Mode::Below => OMEGA_HIGH + i as u64,
                Mode::Above => OMEGA_LOW + i as u64,
                Mode::Cross => {
                    if structural && own == HoleDomain::BelowOmega {
                        PRIME + i as u64
                    } else {
                        OMEGA_LOW + i as u64
                    }
                }
            },
        }
    };
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    cfg_tokens(&c1.body, &mut t1);
    cfg_tokens(&c2.body, &mut t2);
    let r1: Vec<u64> = t1.into_iter().map(|t| rank(t, c1.domain)).collect();
    let r2: Vec<u64> = t2.into_iter().map(|t| rank(t, c2.domain)).collect();
    r1.cmp(&r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_standard, parse};

    fn dor(s: &str) -> Term {
        parse(s, &SystemSpec::dor()).unwrap()
    }

    #[test]
    fn omega_collapse_standard() {
        let spec = SystemSpec::dor();
        assert!(is_standard(&dor("C(W,0)"), &spec).unwrap());
        assert!(is_standard(&dor("C(W*2,0)"), &spec).unwrap());
    }

    #[test]
    fn witness_term_standard_for_dor() {
        // C(C(W + C(W*2,0), C(W*2,0)), 0)
        let spec = SystemSpec::dor();
        let t = dor("C(C(W+C(W*2,0),C(W*2,0)),0)");
        assert!(is_standard(&t, &spec).unwrap());
        // same term is rejected by the n=2 main system
        let spec2 = SystemSpec::main(2);
        let t2 = parse("C(C(W+C(W*2,0),C(W*2,0)),0)", &spec2).unwrap();
        assert!(!is_standard(&t2, &spec2).unwrap());
    }

    #[test]
    fn eps_above_collapse_rejected_for_dor() {
        // C(W + C(C(W,M),M), 0) with M = C(W*2,0): the least epsilon number
        // above M, spelled with degree M+; valid main:2, invalid DoR.
        let src = "C(W + C(C(W,C(W*2,0)),C(W*2,0)), 0)";
        let spec = SystemSpec::dor();
        let t = parse(src, &spec).unwrap();
        assert!(!is_standard(&t, &spec).unwrap());
        let spec2 = SystemSpec::main(2);
        let t2 = parse(src, &spec2).unwrap();
        assert!(is_standard(&t2, &spec2).unwrap());
    }

    #[test]
    fn pass_none_equals_plain_dor_small() {
        let plain = SystemSpec::dor();
        let none = SystemSpec::dor_pass(PassRestriction::None);
        for t in crate::harness::all_terms(&plain, 9, 0) {
            assert_eq!(
                is_standard(&t, &plain).unwrap(),
                is_standard(&t, &none).unwrap(),
                "disagree on {}",
                prefix(&t)
            );
        }
    }

    #[test]
    fn passthrough_weakening() {
        let plain = SystemSpec::dor();
        let full = SystemSpec::dor_pass(PassRestriction::Full);
        for t in crate::harness::all_terms(&plain, 9, 0) {
            if is_standard(&t, &plain).unwrap() {
                assert!(
                    is_standard(&t, &full).unwrap(),
                    "passthrough must not reject {}",
                    prefix(&t)
                );
            }
        }
    }

    #[test]
    fn hyp_cos_chain_broken_vs_correct() {
        // a1 = M = C(W*2,0), a_{n+1} = C(W + M*a_n, 0)
        let spec = SystemSpec::dor_pass(PassRestriction::Full);
        let m = dor("C(W*2,0)");
        let step = |x: &Term| {
            let prod = crate::arith::omega_pow_sugar(
                &crate::arith::add(&m, x, &spec).unwrap(),
                &spec,
            )
            .unwrap();
            Term::c2(crate::arith::add(&omega(), &prod, &spec).unwrap(), Term::Zero)
        };
        let a2 = step(&m);
        let a3 = step(&a2);
        let a4 = step(&a3);
        // strictly descending
        assert!(lex_lt(&a2, &m));
        assert!(lex_lt(&a3, &a2));
        assert!(lex_lt(&a4, &a3));
        // broken rule accepts the whole chain
        for t in [&m, &a2, &a3, &a4] {
            assert!(
                diagnose_dor_variant(t, &spec, Some(PassRestriction::Full), true).is_none(),
                "broken rule should accept {}",
                prefix(t)
            );
        }
        // correct rule rejects from a3 on
        assert!(is_standard(&m, &spec).unwrap());
        assert!(is_standard(&a2, &spec).unwrap());
        assert!(!is_standard(&a3, &spec).unwrap());
        assert!(!is_standard(&a4, &spec).unwrap());
    }

    #[test]
    fn config_examples() {
        let spec = SystemSpec::bh();
        // eps0 above 0: Lx.C(W,x)
        let c = reflection_config(&dor_term("C(W,0)"), &Term::Zero, &spec).unwrap();
        assert_eq!(c.render(), "Lx. C(W,x) | x<W");
        // a = b: Lx.x
        let b = dor_term("C(W,0)");
        let c = reflection_config(&b, &b, &spec).unwrap();
        assert_eq!(c.render(), "Lx. x | x<W");
        // a = C(W, C(W,0)) above C(W,0): Lx.C(W,x)
        let a = dor_term("C(W,C(W,0))");
        let c = reflection_config(&a, &b, &spec).unwrap();
        assert_eq!(c.render(), "Lx. C(W,x) | x<W");
        fn dor_term(s: &str) -> Term {
            parse(s, &SystemSpec::bh()).unwrap()
        }
    }

    #[test]
    fn config_comparison_chain() {
        let spec = SystemSpec::bh();
        let zero = Term::Zero;
        let id = reflection_config(&zero, &zero, &spec).unwrap();
        let eps = reflection_config(&parse("C(W,0)", &spec).unwrap(), &zero, &spec).unwrap();
        // Lx.x < Lx.C(W,x)
        assert_eq!(compare_configs(&id, &eps), Ordering::Less);
        // constant configuration below the identity
        let five = Config {
            body: CfgNode::Const(crate::arith::nat(5, &spec)),
            domain: HoleDomain::BelowOmega,
        };
        assert_eq!(compare_configs(&five, &id), Ordering::Less);
        // Lx<W.x < Lx<W.W
        let w_cfg = Config {
            body: CfgNode::Atom(omega()),
            domain: HoleDomain::BelowOmega,
        };
        assert_eq!(compare_configs(&id, &w_cfg), Ordering::Less);
    }
}
