//! Deterministic random term generation. Output is well formed for the
//! system but deliberately not biased toward standardness.

use crate::system::{SystemId, SystemSpec};
use crate::Term;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random term with roughly `size_target` symbols, deterministic in
/// `(seed, size_target)`.
pub fn random_term(spec: &SystemSpec, seed: u64, size_target: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen(spec, &mut rng, size_target.max(1))
}

fn atom(spec: &SystemSpec, rng: &mut ChaCha8Rng) -> Term {
    let mut pool = vec![Term::Zero];
    for k in 1..=spec.constants {
        pool.push(Term::Ext(k));
    }
    match spec.id {
        SystemId::Combined => {
            for i in 1..=3 {
                pool.push(Term::Omega(i));
            }
        }
        _ => {
            if let Some(i) = spec.omega_index() {
                pool.push(Term::Omega(i));
            }
        }
    }
    pool[rng.gen_range(0..pool.len())].clone()
}

fn gen(spec: &SystemSpec, rng: &mut ChaCha8Rng, budget: usize) -> Term {
    let arity = spec.arity();
    if budget < arity + 1 || rng.gen_ratio(1, 4) {
        return atom(spec, rng);
    }
    let inner = budget - 1;
    if arity == 2 {
        let left = rng.gen_range(1..inner);
        gen2(spec, rng, left, inner - left)
    } else {
        let a = rng.gen_range(1..inner - 1);
        let b = rng.gen_range(1..inner - a);
        let c = inner - a - b;
        Term::c3(
            gen(spec, rng, a),
            gen(spec, rng, b),
            gen(spec, rng, c),
        )
    }
}

fn gen2(spec: &SystemSpec, rng: &mut ChaCha8Rng, l: usize, r: usize) -> Term {
    Term::c2(gen(spec, rng, l), gen(spec, rng, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed_and_size() {
        let spec = SystemSpec::main(1);
        assert_eq!(random_term(&spec, 1, 3), random_term(&spec, 1, 3));
        assert_eq!(random_term(&spec, 42, 9), random_term(&spec, 42, 9));
    }

    #[test]
    fn size_one_is_an_atom() {
        for seed in 0..8 {
            assert!(random_term(&SystemSpec::bh(), seed, 1).is_atom());
        }
    }

    #[test]
    fn standard_fraction_at_small_sizes() {
        // distribution sanity, frozen after measuring once: at least 10%
        // of random size<=7 terms are standard for the first main system
        let spec = SystemSpec::main(1);
        let total = 2000;
        let mut standard = 0;
        for seed in 0..total {
            let t = random_term(&spec, seed, 7);
            if crate::is_standard(&t, &spec).unwrap() {
                standard += 1;
            }
        }
        assert!(
            standard * 10 >= total,
            "only {standard}/{total} random terms were standard"
        );
    }
}
