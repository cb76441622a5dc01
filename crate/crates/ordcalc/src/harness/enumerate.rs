//! Exhaustive small-term enumeration: generate every well-formed term by
//! symbol count, filter by standardness, sort by the system order. The
//! generator is deliberately dumb so it can serve as an oracle.

use crate::frame::sys_cmp;
use crate::harness::cnf_oracle;
use crate::system::{SystemId, SystemSpec};
use crate::{render, Term};
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct EnumOptions {
    pub max_symbols: usize,
    /// Keep only terms strictly below this one.
    pub below: Option<Term>,
    /// Highest Omega index generated in the combined system (the family is
    /// unbounded, so exhaustive enumeration must cap it).
    pub omega_index_cap: u32,
    /// Attach the independent CNF-below-epsilon_0 value of each term
    /// (Omega-less systems only).
    pub with_values: bool,
}

impl EnumOptions {
    pub fn new(max_symbols: usize) -> EnumOptions {
        EnumOptions {
            max_symbols,
            below: None,
            omega_index_cap: 3,
            with_values: false,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EnumReport {
    pub system: String,
    pub max_symbols: usize,
    pub omega_index_cap: u32,
    pub below: Option<String>,
    pub count: usize,
    pub terms: Vec<String>,
    pub values: Option<Vec<String>>,
    #[serde(skip)]
    pub sorted_terms: Vec<Term>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn atoms(spec: &SystemSpec, omega_cap: u32) -> Vec<Term> {
    let mut out = vec![Term::Zero];
    for k in 1..=spec.constants {
        out.push(Term::Ext(k));
    }
    match spec.id {
        SystemId::Combined => {
            for i in 1..=omega_cap.max(1) {
                out.push(Term::Omega(i));
            }
        }
        _ => {
            if let Some(i) = spec.omega_index() {
                out.push(Term::Omega(i));
            }
        }
    }
    out
}

/// Every well-formed term of the system's language with at most
/// `max_symbols` symbols, stratified generation, deterministic order.
pub fn all_terms(spec: &SystemSpec, max_symbols: usize, omega_cap: u32) -> Vec<Term> {
    let by_size = terms_by_size(spec, max_symbols, omega_cap);
    by_size.into_iter().flatten().collect()
}

fn terms_by_size(spec: &SystemSpec, max_symbols: usize, omega_cap: u32) -> Vec<Vec<Term>> {
    let arity = spec.arity();
    // index 0 unused; sizes 1..=max_symbols
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_symbols + 1];
    if max_symbols >= 1 {
        by_size[1] = atoms(spec, omega_cap);
    }
    for size in 2..=max_symbols {
        let mut bucket = Vec::new();
        let budget = size - 1;
        if arity == 2 {
            for i in 1..budget {
                let j = budget - i;
                if j < 1 {
                    continue;
                }
                for a in &by_size[i] {
                    for b in &by_size[j] {
                        bucket.push(Term::c2(a.clone(), b.clone()));
                    }
                }
            }
        } else {
            for i in 1..budget {
                for j in 1..budget - i {
                    let k = budget - i - j;
                    if k < 1 {
                        continue;
                    }
                    for x in &by_size[i] {
                        for y in &by_size[j] {
                            for z in &by_size[k] {
                                bucket.push(Term::c3(x.clone(), y.clone(), z.clone()));
                            }
                        }
                    }
                }
            }
        }
        by_size[size] = bucket;
    }
    by_size
}

/// The standard terms of the system within the symbol budget, sorted by the
/// system order. Generation composes standard children only and checks the
/// node-local conditions on top, which agrees with the full recursive check.
pub fn standard_terms(spec: &SystemSpec, max_symbols: usize, omega_cap: u32) -> Vec<Term> {
    let arity = spec.arity();
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_symbols.max(1) + 1];
    if max_symbols >= 1 {
        by_size[1] = atoms(spec, omega_cap)
            .into_iter()
            .filter(|t| crate::node_standard(t, spec))
            .collect();
    }
    for size in 2..=max_symbols {
        let mut bucket = Vec::new();
        let budget = size - 1;
        if arity == 2 {
            for i in 1..budget {
                let j = budget - i;
                if j < 1 {
                    continue;
                }
                for a in &by_size[i] {
                    for b in &by_size[j] {
                        let t = Term::c2(a.clone(), b.clone());
                        if crate::node_standard(&t, spec) {
                            bucket.push(t);
                        }
                    }
                }
            }
        } else {
            for i in 1..budget {
                for j in 1..budget - i {
                    let k = budget - i - j;
                    if k < 1 {
                        continue;
                    }
                    for x in &by_size[i] {
                        for y in &by_size[j] {
                            for z in &by_size[k] {
                                let t = Term::c3(x.clone(), y.clone(), z.clone());
                                if crate::node_standard(&t, spec) {
                                    bucket.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        by_size[size] = bucket;
    }
    let mut out: Vec<Term> = by_size.into_iter().flatten().collect();
    out.sort_by(|a, b| sys_cmp(spec, a, b));
    out
}

/// Every standard term within the symbol budget, sorted by the system order,
/// with optional CNF oracle values.
pub fn enumerate_standard(spec: &SystemSpec, opts: &EnumOptions) -> EnumReport {
    let start = Instant::now();
    let mut sorted = standard_terms(spec, opts.max_symbols, opts.omega_index_cap);
    if let Some(below) = &opts.below {
        sorted.retain(|t| sys_cmp(spec, t, below) == std::cmp::Ordering::Less);
    }
    let values = if opts.with_values {
        Some(
            sorted
                .iter()
                .map(|t| {
                    cnf_oracle::term_value(t)
                        .map(|v| v.display())
                        .unwrap_or_else(|| "-".into())
                })
                .collect(),
        )
    } else {
        None
    };
    EnumReport {
        system: spec.to_string(),
        max_symbols: opts.max_symbols,
        omega_index_cap: opts.omega_index_cap,
        below: opts.below.as_ref().map(render::prefix),
        count: sorted.len(),
        terms: sorted.iter().map(render::prefix).collect(),
        values,
        sorted_terms: sorted,
        elapsed: start.elapsed(),
    }
}
