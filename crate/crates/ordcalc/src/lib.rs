//! Ordinal notation systems built on a collapsing function `C`: term
//! parsing and printing, standardness predicates, polynomial-time
//! comparison, normalization to standard form, one-variable collapse
//! conversion, reflection-configuration extraction, and an enumeration and
//! fuzzing harness for checking the order-theoretic properties at small
//! scale.
//!
//! The systems share one term language (`0`, `W_i`, opaque constants, and
//! `C` of arity 2 or 3) and differ in which terms are standard:
//!
//! * `bh` — binary `C` with the built-from-below maximality condition;
//! * `main:n` — binary `C` with the level-n built-from-below condition
//!   (`main:1` accepts the same terms as `bh`, `main:0` is the Omega-less
//!   Cantor-normal-form fragment);
//! * `combined` — all `W_i` at once with `W_i = C(W_{i+1}, 0)`;
//! * `dri` — ternary `C(a,b,c)` with closure-set standardness;
//! * `dor`, `dor-pass` — binary `C` with the subterm-pattern condition over
//!   the degree's parse tree, optionally with passthrough;
//! * `cpass` — ternary `C(i,a,b)`, built-from-below with passthrough for
//!   lower indices.

mod arith;
mod cpass;
mod dor;
mod dri;
mod error;
mod frame;
mod mainsys;
mod parse;
mod render;
mod system;
mod term;

pub mod harness;

pub use arith::{add, c1_eval, cnf_view, expand_repeat, mul_nat, nat, omega_pow, to_c1_text, CnfView};
pub use cpass::{bound_equivalence_check, compare_cpass, encode_to_dor};
pub use dor::{
    compare_configs, normalize_dor, reflection_config, CfgNode, Config, HoleDomain,
};
pub use dri::{compare_dri, in_h, maximal_alt};
pub use error::Error;
pub use frame::{compare, compare_postfix, compare_recursive, minimize_base, postfix_tokens, Token};
pub use mainsys::{n_built_from_below, normalize_main, suffix_completion, to_single_omega};
pub use parse::parse;
pub use render::{postfix, prefix, pretty, render, Style};
pub use system::{PassRestriction, SystemId, SystemSpec};
pub use term::{Condition, Diagnostic, Path, Term};

/// Machine-readable reason `t` is nonstandard, or `None` when it is
/// standard. Errors are reserved for terms outside the system's language.
pub fn diagnose(t: &Term, spec: &SystemSpec) -> Result<Option<Diagnostic>, Error> {
    spec.validate(t)?;
    Ok(match spec.id {
        SystemId::Bh => mainsys::diagnose_main_family(t, spec, 1, true),
        SystemId::Main(n) => mainsys::diagnose_main_family(t, spec, n, false),
        SystemId::Combined => mainsys::diagnose_combined(t),
        SystemId::Dri => dri::diagnose_dri(t, spec),
        SystemId::Dor => dor::diagnose_dor_family(t, spec, None),
        SystemId::DorPass(p) => dor::diagnose_dor_family(t, spec, Some(p)),
        SystemId::Cpass => cpass::diagnose_cpass(t, spec),
    })
}

pub fn is_standard(t: &Term, spec: &SystemSpec) -> Result<bool, Error> {
    Ok(diagnose(t, spec)?.is_none())
}

/// Standardness assuming every proper subterm is already standard: only the
/// node-local conditions are checked. This is the enumeration fast path;
/// it agrees with [`is_standard`] when the assumption holds.
pub(crate) fn node_standard(t: &Term, spec: &SystemSpec) -> bool {
    match t {
        Term::Zero | Term::Omega(_) | Term::Ext(_) => spec.validate(t).is_ok(),
        Term::C(_) => match spec.id {
            SystemId::Combined => mainsys::diagnose_combined(t).is_none(),
            _ => {
                let node_only = shallow(t);
                match spec.id {
                    SystemId::Bh => {
                        mainsys::diagnose_main_family(&node_only, spec, 1, true).is_none()
                    }
                    SystemId::Main(n) => {
                        mainsys::diagnose_main_family(&node_only, spec, n, false).is_none()
                    }
                    SystemId::Dri => dri::diagnose_dri(&node_only, spec).is_none(),
                    SystemId::Dor => dor::diagnose_dor_family(&node_only, spec, None).is_none(),
                    SystemId::DorPass(p) => {
                        dor::diagnose_dor_family(&node_only, spec, Some(p)).is_none()
                    }
                    SystemId::Cpass => cpass::diagnose_cpass(&node_only, spec).is_none(),
                    SystemId::Combined => unreachable!(),
                }
            }
        },
    }
}

/// Used by the fast path: node conditions depend on the full subterm
/// structure, so the term itself is passed through; the name documents the
/// contract that children were already vetted.
fn shallow(t: &Term) -> Term {
    t.clone()
}

/// Conversion to standard form. Defined for the binary systems; the main
/// family maximizes degrees toward the system's Omega, the reflection
/// systems replace the offending occurrence.
pub fn normalize(t: &Term, spec: &SystemSpec) -> Result<Term, Error> {
    match spec.id {
        SystemId::Bh | SystemId::Main(_) | SystemId::Combined => mainsys::normalize_main(t, spec),
        SystemId::Dor | SystemId::DorPass(_) => dor::normalize_dor(t, spec),
        SystemId::Dri | SystemId::Cpass => Err(Error::Unsupported(format!(
            "normalization is not defined for system {spec}"
        ))),
    }
}

/// Canonical example terms from the systems' reference material, used by the
/// differential tests and the CLI round-trip fixtures.
pub mod fixtures {
    use crate::{PassRestriction, SystemSpec};

    /// (source text, system selector, expected standard?)
    pub const STANDARDNESS: &[(&str, &str, bool)] = &[
        ("C(W,0)", "bh", true),
        ("C(0,C(W,0))", "bh", true),
        ("C(W,C(0,0))", "bh", false),
        ("C(C(W,C(C(0,W),W)),0)", "bh", true),
        ("C(C(0,0),0)", "main:1", true),
        ("W + C(W*2 + C(C(W*3,0),0), 0)", "main:2", true),
        // cross-system witnesses
        ("C(C(W+C(W*2,0),C(W*2,0)),0)", "dor", true),
        ("C(C(W+C(W*2,0),C(W*2,0)),0)", "main:2", false),
        ("C(W + C(C(W,C(W*2,0)),C(W*2,0)), 0)", "dor", false),
        ("C(W + C(C(W,C(W*2,0)),C(W*2,0)), 0)", "main:2", true),
        ("C(0,C(1,0,0),0)", "dri", true),
        ("C(0,0,0)", "dri", true),
        ("C(0,C(1,C(2,0,0),C(2,0,0)),0)", "cpass", true),
        ("C(1,C(0,C(3,0,0),C(2,0,0)),0)", "cpass", true),
        ("W_1", "combined", true),
        ("C(W_2,W_1)", "combined", true),
    ];

    /// The two witnesses separating degrees-of-reflection from the n=2 main
    /// system, with the epsilon term spelled through its fixpoint degree.
    pub const WITNESS_DOR_ONLY: &str = "C(C(W+C(W*2,0),C(W*2,0)),0)";
    pub const WITNESS_MAIN_ONLY: &str = "C(W + C(C(W,C(W*2,0)),C(W*2,0)), 0)";

    /// Main-system term (n = 2) whose pairing encoding is not a valid
    /// passthrough term.
    pub const HYP_COS_MAIN_ONLY: &str =
        "C(W + C(C(W*2 + C(W + C(W,C(W*2,0)), C(W*2,0)), 0), 0), 0)";

    /// Every fixture term with the system it parses under, for round trips.
    pub fn corpus() -> Vec<(String, SystemSpec)> {
        let mut out: Vec<(String, SystemSpec)> = STANDARDNESS
            .iter()
            .map(|(s, sel, _)| ((*s).to_string(), SystemSpec::parse_selector(sel).unwrap()))
            .collect();
        out.push((HYP_COS_MAIN_ONLY.into(), SystemSpec::main(2)));
        out.push((
            WITNESS_DOR_ONLY.into(),
            SystemSpec::dor_pass(PassRestriction::Full),
        ));
        out
    }
}
