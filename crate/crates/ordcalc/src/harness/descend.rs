//! Descending-chain search: guided mutation looking for a wrapper context
//! `g` and a start term `t` such that `t > g(t) > g(g(t)) > ...` with every
//! step standard. Well-foundedness cannot be proved at desk scale; a found
//! chain is a certified bug, exhaustion is the expected outcome.

use crate::frame::sys_cmp;
use crate::render::prefix;
use crate::system::{PassRestriction, SystemId, SystemSpec};
use crate::Term;
use std::cmp::Ordering;

/// Which standardness rule the search runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleVariant {
    Correct,
    /// The degrees-of-reflection passthrough clause with `z = y` permitted,
    /// a known ill-founded variant kept as a regression fixture.
    BrokenPassthroughZEqY,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DescentReport {
    pub system: String,
    pub rule: String,
    pub wrappers_tried: usize,
    pub starts_tried: usize,
    pub min_chain: usize,
    /// A strictly descending all-standard chain if one was found.
    pub chain: Option<Vec<String>>,
}

fn is_standard_variant(t: &Term, spec: &SystemSpec, rule: RuleVariant) -> bool {
    match rule {
        RuleVariant::Correct => crate::is_standard(t, spec).unwrap_or(false),
        RuleVariant::BrokenPassthroughZEqY => {
            let pass = match spec.id {
                SystemId::DorPass(p) => Some(p),
                SystemId::Dor => Some(PassRestriction::Full),
                _ => None,
            };
            crate::dor::diagnose_dor_variant(t, spec, pass, true).is_none()
        }
    }
}

/// One-hole wrapper built from the inflationary shapes the theory singles
/// out: `x -> C(u + w^(v + x), w)` plus a few simpler contexts.
#[derive(Clone)]
enum Wrapper {
    CollapseSumPow { u: Term, v: Term, w: Term },
    Collapse { w: Term },
    SumCollapse { u: Term, w: Term },
}

impl Wrapper {
    fn apply(&self, x: &Term, spec: &SystemSpec) -> Option<Term> {
        match self {
            Wrapper::CollapseSumPow { u, v, w } => {
                let inner = crate::arith::add(v, x, spec).ok()?;
                let power = crate::arith::omega_pow(&inner, spec).ok()?;
                let deg = crate::arith::add(u, &power, spec).ok()?;
                Some(Term::c2(deg, w.clone()))
            }
            Wrapper::Collapse { w } => Some(Term::c2(x.clone(), w.clone())),
            Wrapper::SumCollapse { u, w } => {
                let deg = crate::arith::add(u, x, spec).ok()?;
                Some(Term::c2(deg, w.clone()))
            }
        }
    }
}

/// Searches for a strictly descending standard chain of length at least
/// `min_chain`. `budget` caps the number of (wrapper, start) probes.
pub fn search_descending(
    spec: &SystemSpec,
    rule: RuleVariant,
    min_chain: usize,
    budget: usize,
) -> DescentReport {
    let rule_name = match rule {
        RuleVariant::Correct => "correct",
        RuleVariant::BrokenPassthroughZEqY => "broken-z-eq-y",
    };
    let mut report = DescentReport {
        system: spec.to_string(),
        rule: rule_name.into(),
        wrappers_tried: 0,
        starts_tried: 0,
        min_chain,
        chain: None,
    };
    if spec.arity() != 2 {
        // The wrapper shapes target the binary systems; ternary systems are
        // covered through the pairing encoding.
        return report;
    }
    let params = crate::harness::enumerate::standard_terms(spec, 5, 2);
    let starts: Vec<Term> = crate::harness::enumerate::standard_terms(spec, 7, 2)
        .into_iter()
        .filter(|t| !t.is_atom())
        .collect();
    report.starts_tried = starts.len();

    let mut wrappers: Vec<Wrapper> = Vec::new();
    for w in params.iter().take(4) {
        wrappers.push(Wrapper::Collapse { w: w.clone() });
        for u in &params {
            wrappers.push(Wrapper::SumCollapse {
                u: u.clone(),
                w: w.clone(),
            });
            for v in &params {
                wrappers.push(Wrapper::CollapseSumPow {
                    u: u.clone(),
                    v: v.clone(),
                    w: w.clone(),
                });
            }
        }
    }

    let mut probes = 0usize;
    'search: for g in &wrappers {
        report.wrappers_tried += 1;
        for start in &starts {
            probes += 1;
            if probes > budget {
                break 'search;
            }
            let mut chain = vec![start.clone()];
            let mut cur = start.clone();
            for _ in 1..min_chain {
                let Some(next) = g.apply(&cur, spec) else { break };
                if next.symbols() > 200 {
                    break;
                }
                if !is_standard_variant(&next, spec, rule) {
                    break;
                }
                if sys_cmp(spec, &next, &cur) != Ordering::Less {
                    break;
                }
                chain.push(next.clone());
                cur = next;
            }
            if chain.len() >= min_chain {
                report.chain = Some(chain.iter().map(prefix).collect());
                break 'search;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_zero_exhausts() {
        let spec = SystemSpec::dor();
        let r = search_descending(&spec, RuleVariant::Correct, 3, 0);
        assert!(r.chain.is_none());
    }

    #[test]
    fn broken_rule_finds_chain() {
        let spec = SystemSpec::dor_pass(PassRestriction::Full);
        let r = search_descending(&spec, RuleVariant::BrokenPassthroughZEqY, 4, 2_000_000);
        assert!(r.chain.is_some(), "expected the ill-foundedness witness");
    }

    #[test]
    fn correct_rule_exhausts() {
        let spec = SystemSpec::dor_pass(PassRestriction::Full);
        let r = search_descending(&spec, RuleVariant::Correct, 4, 200_000);
        assert!(r.chain.is_none(), "found: {:?}", r.chain);
    }
}
