//! Independent small-ordinal calculator: ordinals below epsilon_0 in Cantor
//! normal form, with comparison, addition, and base-omega exponentiation.
//!
//! Written from scratch over plain CNF and kept free of the term-comparison
//! machinery it is used to calibrate.

use crate::Term;
use std::cmp::Ordering;

/// `w^{e_1} + w^{e_2} + ...` with exponents nonincreasing. The empty sum
/// is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf(Vec<Cnf>);

impl Cnf {
    pub fn zero() -> Cnf {
        Cnf(Vec::new())
    }

    pub fn one() -> Cnf {
        Cnf(vec![Cnf::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn omega_pow(e: &Cnf) -> Cnf {
        Cnf(vec![e.clone()])
    }

    pub fn add(&self, other: &Cnf) -> Cnf {
        if other.is_zero() {
            return self.clone();
        }
        let lead = &other.0[0];
        let mut terms: Vec<Cnf> = self
            .0
            .iter()
            .take_while(|e| e.cmp(lead) != Ordering::Less)
            .cloned()
            .collect();
        terms.extend(other.0.iter().cloned());
        Cnf(terms)
    }

    pub fn cmp(&self, other: &Cnf) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    /// Parenthesized `w^`-notation, for report output.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j + 1 < self.0.len() && self.0[j + 1] == self.0[i] {
                j += 1;
            }
            let run = j - i + 1;
            let e = &self.0[i];
            let body = if e.is_zero() {
                format!("{run}")
            } else if *e == Cnf::one() {
                "w".to_string()
            } else {
                format!("w^({})", e.display())
            };
            if run > 1 && !e.is_zero() {
                parts.push(format!("{body}*{run}"));
            } else {
                parts.push(body);
            }
            i = j + 1;
        }
        parts.join("+")
    }
}

/// Value of an Omega-less binary term under `C(a, b) = b + w^a`.
pub fn term_value(t: &Term) -> Option<Cnf> {
    match t {
        Term::Zero => Some(Cnf::zero()),
        Term::C(args) if args.len() == 2 => {
            let a = term_value(&args[0])?;
            let b = term_value(&args[1])?;
            Some(b.add(&Cnf::omega_pow(&a)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> Cnf {
        let mut c = Cnf::zero();
        for _ in 0..k {
            c = c.add(&Cnf::one());
        }
        c
    }

    fn w() -> Cnf {
        Cnf::omega_pow(&Cnf::one())
    }

    #[test]
    fn finite_arithmetic() {
        assert_eq!(n(2).add(&n(3)), n(5));
        assert_eq!(n(0).cmp(&n(1)), Ordering::Less);
        assert_eq!(n(7).cmp(&n(7)), Ordering::Equal);
    }

    #[test]
    fn absorption_and_omega() {
        // 1 + w = w
        assert_eq!(n(1).add(&w()), w());
        // w + 1 > w
        assert_eq!(w().add(&n(1)).cmp(&w()), Ordering::Greater);
        // w*2 + w^2 = w^2
        let w2 = Cnf::omega_pow(&n(2));
        assert_eq!(w().add(&w()).add(&w2), w2);
    }

    #[test]
    fn power_ordering() {
        // w < w^2 < w^w
        let w2 = Cnf::omega_pow(&n(2));
        let ww = Cnf::omega_pow(&w());
        assert_eq!(w().cmp(&w2), Ordering::Less);
        assert_eq!(w2.cmp(&ww), Ordering::Less);
    }

    #[test]
    fn term_values() {
        use crate::parse;
        let spec = crate::SystemSpec::main(0);
        let t = parse("C(C(0,0),0)", &spec).unwrap();
        assert_eq!(term_value(&t).unwrap(), w());
        let t = parse("C(0,C(0,0))", &spec).unwrap();
        assert_eq!(term_value(&t).unwrap(), n(2));
        assert!(term_value(&Term::Omega(1)).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cnf::zero().display(), "0");
        assert_eq!(n(3).display(), "3");
        assert_eq!(w().add(&n(1)).display(), "w+1");
        assert_eq!(w().add(&w()).display(), "w*2");
    }
}
