//! Order-axiom auditing over a set of terms: irreflexivity, antisymmetry,
//! transitivity, agreement of the postfix and recursive comparison routes,
//! and equality-iff-identity.
//!
//! Transitivity is certified exhaustively on sets up to 2000 terms by
//! checking every pair against a witness linear order (pairwise consistency
//! with a fixed ranking implies all the order axioms on the set); larger
//! sets fall back to seeded triple sampling.

use crate::frame::{compare_postfix, compare_recursive, sys_cmp};
use crate::render::prefix;
use crate::system::SystemSpec;
use crate::Term;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

#[derive(Debug, Clone, serde::Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub trials: u64,
    pub passed: bool,
    pub counterexample: Option<Vec<String>>,
    pub sampled: bool,
}

impl PropertyResult {
    fn new(property: &str) -> PropertyResult {
        PropertyResult {
            property: property.into(),
            trials: 0,
            passed: true,
            counterexample: None,
            sampled: false,
        }
    }

    fn fail(&mut self, witnesses: Vec<String>) {
        self.passed = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(witnesses);
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AuditReport {
    pub system: String,
    pub terms: usize,
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

const EXHAUSTIVE_LIMIT: usize = 2000;
const SAMPLED_TRIPLES: u64 = 100_000;

pub fn audit_order(spec: &SystemSpec, terms: &[Term], seed: u64) -> AuditReport {
    let mut irr = PropertyResult::new("irreflexivity");
    let mut anti = PropertyResult::new("antisymmetry");
    let mut eq_id = PropertyResult::new("equal-iff-identical");
    let mut agree = PropertyResult::new("postfix-recursive-agreement");
    let mut trans = PropertyResult::new("transitivity");

    for t in terms {
        irr.trials += 1;
        if sys_cmp(spec, t, t) != Ordering::Equal {
            irr.fail(vec![prefix(t)]);
            break;
        }
    }

    let check_agreement = spec.arity() == 2;
    let n = terms.len();

    if n <= EXHAUSTIVE_LIMIT {
        // witness linear order: sorted copy of the set
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| sys_cmp(spec, &terms[i], &terms[j]));
        let mut rank = vec![0usize; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut consistent = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let (a, b) = (&terms[i], &terms[j]);
                let ab = sys_cmp(spec, a, b);
                anti.trials += 1;
                if ab != sys_cmp(spec, b, a).reverse() {
                    anti.fail(vec![prefix(a), prefix(b)]);
                    consistent = false;
                    break 'outer;
                }
                eq_id.trials += 1;
                if (ab == Ordering::Equal) != (a == b) {
                    eq_id.fail(vec![prefix(a), prefix(b)]);
                }
                trans.trials += 1;
                if ab != rank[i].cmp(&rank[j]) {
                    consistent = false;
                    trans.fail(vec![prefix(a), prefix(b)]);
                }
                if check_agreement {
                    agree.trials += 1;
                    let p = compare_postfix(a, b, spec).expect("validated terms");
                    let r = compare_recursive(a, b, spec).expect("validated terms");
                    if p != r {
                        agree.fail(vec![prefix(a), prefix(b)]);
                    }
                }
            }
        }
        if !consistent && trans.passed {
            trans.fail(Vec::new());
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        trans.sampled = true;
        for _ in 0..SAMPLED_TRIPLES {
            let a = &terms[rng.gen_range(0..n)];
            let b = &terms[rng.gen_range(0..n)];
            let c = &terms[rng.gen_range(0..n)];
            anti.trials += 1;
            if sys_cmp(spec, a, b) != sys_cmp(spec, b, a).reverse() {
                anti.fail(vec![prefix(a), prefix(b)]);
            }
            trans.trials += 1;
            if sys_cmp(spec, a, b) == Ordering::Less
                && sys_cmp(spec, b, c) == Ordering::Less
                && sys_cmp(spec, a, c) != Ordering::Less
            {
                trans.fail(vec![prefix(a), prefix(b), prefix(c)]);
            }
            if check_agreement {
                agree.trials += 1;
                if compare_postfix(a, b, spec).expect("validated")
                    != compare_recursive(a, b, spec).expect("validated")
                {
                    agree.fail(vec![prefix(a), prefix(b)]);
                }
            }
        }
    }

    let mut results = vec![irr, anti, eq_id];
    if check_agreement {
        results.push(agree);
    }
    results.push(trans);
    AuditReport {
        system: spec.to_string(),
        terms: n,
        seed,
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::enumerate::standard_terms;

    #[test]
    fn passes_on_enumerated_standard_terms() {
        let spec = SystemSpec::main(1);
        let terms = standard_terms(&spec, 7, 0);
        let report = audit_order(&spec, &terms, 7);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn empty_set_passes() {
        let report = audit_order(&SystemSpec::bh(), &[], 0);
        assert!(report.passed());
    }

    #[test]
    fn dri_small_passes() {
        let spec = SystemSpec::dri();
        let terms = standard_terms(&spec, 10, 0);
        assert!(!terms.is_empty());
        let report = audit_order(&spec, &terms, 11);
        assert!(report.passed(), "{report:?}");
    }
}
