//! Verification backbone: exhaustive enumeration, random generation,
//! order-axiom auditing, differential testing, and descending-chain search.

pub mod cnf_oracle;

mod audit;
mod descend;
mod enumerate;
mod random;

pub use audit::{audit_order, AuditReport, PropertyResult};
pub use descend::{search_descending, DescentReport};
pub use enumerate::{all_terms, enumerate_standard, EnumOptions, EnumReport};
pub use random::random_term;

use crate::system::SystemSpec;
use crate::{render, Term};

/// Per-system standardness verdicts for one term.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DiffReport {
    pub term: String,
    pub verdicts: Vec<DiffVerdict>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DiffVerdict {
    pub system: String,
    /// "standard", "nonstandard", or "n/a" when the term does not fit the
    /// system's language.
    pub verdict: String,
}

/// Standardness of one term across several systems. Omega constants are
/// re-indexed to each single-Omega system's canonical index so the same
/// term can be fed to, say, both `bh` and `main:2`.
pub fn differential(t: &Term, specs: &[SystemSpec]) -> DiffReport {
    let verdicts = specs
        .iter()
        .map(|spec| {
            let adapted = adapt_omegas(t, spec);
            let verdict = match spec.validate(&adapted) {
                Err(_) => "n/a".to_string(),
                Ok(()) => match crate::is_standard(&adapted, spec) {
                    Ok(true) => "standard".to_string(),
                    Ok(false) => "nonstandard".to_string(),
                    Err(_) => "n/a".to_string(),
                },
            };
            DiffVerdict {
                system: spec.to_string(),
                verdict,
            }
        })
        .collect();
    DiffReport {
        term: render::prefix(t),
        verdicts,
    }
}

/// Maps every Omega constant to the system's canonical index for
/// single-Omega systems; identity otherwise.
pub fn adapt_omegas(t: &Term, spec: &SystemSpec) -> Term {
    let Some(canon) = spec.canonical_omega() else {
        return t.clone();
    };
    if spec.id == crate::system::SystemId::Combined {
        return t.clone();
    }
    fn go(t: &Term, canon: u32) -> Term {
        match t {
            Term::Omega(_) => Term::Omega(canon),
            Term::C(args) => Term::C(args.iter().map(|a| go(a, canon)).collect()),
            other => other.clone(),
        }
    }
    go(t, canon)
}
