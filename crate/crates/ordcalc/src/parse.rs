//! Recursive-descent parser for the ASCII surface syntax.
//!
//! Pure grammar: `0`, `W`, `W_k`, `$k`, `C(term, term)` / `C(term, term,
//! term)`. Sugar resolved at parse time: `+` (ordinal sum), `*k` (natural
//! multiple), `w^` (omega power), decimal numerals (successor chains),
//! `C#k(a,b)` (k-fold repetition), `C1(a)` / `C1(a,b)` (one-variable
//! collapse), and `( ... )` grouping. Precedence: `w^` over `*k` over `+`.
//! Whitespace is insignificant; `#` is not a comment character inside a term
//! (batch files strip comments before parsing).

use crate::arith::{add, c1_eval, expand_repeat, mul_nat, nat, omega_pow_sugar};
use crate::system::SystemSpec;
use crate::{Error, Term};

pub fn parse(text: &str, spec: &SystemSpec) -> Result<Term, Error> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        spec,
    };
    p.skip_ws();
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    spec.validate(&t)?;
    Ok(t)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    spec: &'a SystemSpec,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32, Error> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn expr(&mut self) -> Result<Term, Error> {
        // sum
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                let rhs = self.product()?;
                acc = add(&acc, &rhs, self.spec)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Term, Error> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let k = self.number()?;
                acc = mul_nat(&acc, k, self.spec)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Term, Error> {
        self.skip_ws();
        if self.peek() == Some(b'w') && self.bytes.get(self.pos + 1) == Some(&b'^') {
            self.pos += 2;
            let e = self.power()?;
            return omega_pow_sugar(&e, self.spec);
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term, Error> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'0') => {
                // a longer numeral like 01 is rejected; plain 0 is the atom
                if matches!(self.bytes.get(self.pos + 1), Some(b) if b.is_ascii_digit()) {
                    return Err(self.err("numerals must not start with 0"));
                }
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(b) if b.is_ascii_digit() => {
                let k = self.number()?;
                Ok(nat(k, self.spec))
            }
            Some(b'W') => {
                self.pos += 1;
                let index = if self.peek() == Some(b'_') {
                    self.pos += 1;
                    self.number()?
                } else {
                    self.spec.canonical_omega().ok_or_else(|| Error::UnknownConstant {
                        name: "W".into(),
                    })?
                };
                if !self.spec.accepts_omega(index) {
                    return Err(Error::UnknownConstant {
                        name: format!("W_{index}"),
                    });
                }
                Ok(Term::Omega(index))
            }
            Some(b'$') => {
                self.pos += 1;
                let k = self.number()?;
                if k < 1 || k > self.spec.constants {
                    return Err(Error::UnknownConstant {
                        name: format!("${k}"),
                    });
                }
                Ok(Term::Ext(k))
            }
            Some(b'C') => {
                self.pos += 1;
                match self.peek() {
                    Some(b'#') => {
                        self.pos += 1;
                        let k = self.number()?;
                        self.expect(b'(')?;
                        let a = self.expr()?;
                        self.expect(b',')?;
                        let b = self.expr()?;
                        self.expect(b')')?;
                        if self.spec.arity() != 2 {
                            return Err(Error::Arity {
                                expected: self.spec.arity(),
                                found: 2,
                            });
                        }
                        expand_repeat(k, &a, &b)
                    }
                    Some(b'1') if self.bytes.get(self.pos + 1) == Some(&b'(') => {
                        self.pos += 1;
                        self.expect(b'(')?;
                        let a = self.expr()?;
                        let b = if self.peek_is(b',') {
                            self.expect(b',')?;
                            self.expr()?
                        } else {
                            Term::Zero
                        };
                        self.expect(b')')?;
                        c1_eval(&a, &b, self.spec)
                    }
                    _ => {
                        self.expect(b'(')?;
                        let mut args = vec![self.expr()?];
                        while self.peek_is(b',') {
                            self.expect(b',')?;
                            args.push(self.expr()?);
                        }
                        self.expect(b')')?;
                        if args.len() != self.spec.arity() {
                            return Err(Error::Arity {
                                expected: self.spec.arity(),
                                found: args.len(),
                            });
                        }
                        Ok(Term::C(args))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn peek_is(&mut self, b: u8) -> bool {
        self.skip_ws();
        self.peek() == Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::{prefix, Style};

    #[test]
    fn pure_terms_round_trip() {
        let spec = SystemSpec::main(1);
        for s in ["0", "W", "C(0,0)", "C(C(0,0),0)", "C(W,C(0,W))"] {
            let t = parse(s, &spec).unwrap();
            assert_eq!(prefix(&t), s);
            assert_eq!(parse(&crate::render(&t, Style::Prefix), &spec).unwrap(), t);
        }
    }

    #[test]
    fn paper_term_parses() {
        let spec = SystemSpec::main(1);
        let t = parse("C(C(0,0),0)", &spec).unwrap();
        assert_eq!(
            t,
            Term::c2(Term::c2(Term::Zero, Term::Zero), Term::Zero)
        );
    }

    #[test]
    fn whitespace_insignificant() {
        let spec = SystemSpec::bh();
        assert_eq!(
            parse(" C( W , C(0, W) ) ", &spec).unwrap(),
            parse("C(W,C(0,W))", &spec).unwrap()
        );
    }

    #[test]
    fn sugar_w2_times_2() {
        // W_2*2 in the combined system desugars to C(W_2, W_2)
        let spec = SystemSpec::combined();
        let t = parse("W_2*2", &spec).unwrap();
        assert_eq!(t, Term::c2(Term::Omega(2), Term::Omega(2)));
    }

    #[test]
    fn sugar_numerals_and_repeat() {
        let spec = SystemSpec::bh();
        assert_eq!(parse("2", &spec).unwrap(), parse("C(0,C(0,0))", &spec).unwrap());
        assert_eq!(
            parse("C#3(W,0)", &spec).unwrap(),
            parse("C(W,C(W,C(W,0)))", &spec).unwrap()
        );
        assert_eq!(
            parse("C#1(W,0)", &spec).unwrap(),
            parse("C(W,0)", &spec).unwrap()
        );
    }

    #[test]
    fn sugar_sum_and_power() {
        let spec = SystemSpec::bh();
        // W + 1
        assert_eq!(parse("W+1", &spec).unwrap(), parse("C(0,W)", &spec).unwrap());
        // w^(W+1) = W*w
        assert_eq!(
            parse("w^(W+1)", &spec).unwrap(),
            parse("C(C(0,W),W)", &spec).unwrap()
        );
        // W*2 = C(W,W)
        assert_eq!(parse("W*2", &spec).unwrap(), parse("C(W,W)", &spec).unwrap());
    }

    #[test]
    fn errors_report_offsets() {
        let spec = SystemSpec::bh();
        match parse("C(0,", &spec) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse("C(0,0,0)", &spec),
            Err(Error::Arity { expected: 2, found: 3 })
        ));
        assert!(matches!(
            parse("$1", &spec),
            Err(Error::UnknownConstant { .. })
        ));
        assert!(matches!(
            parse("W", &SystemSpec::dri()),
            Err(Error::UnknownConstant { .. })
        ));
    }

    #[test]
    fn ternary_terms() {
        let spec = SystemSpec::dri();
        let t = parse("C(0,C(1,0,0),0)", &spec).unwrap();
        assert_eq!(
            t,
            Term::c3(
                Term::Zero,
                Term::c3(
                    Term::c3(Term::Zero, Term::Zero, Term::Zero),
                    Term::Zero,
                    Term::Zero
                ),
                Term::Zero
            )
        );
    }
}
