//! System selection: which notation system's rules govern standardness and
//! comparison, plus the optional constant pool for building above an ordinal.

use crate::{Error, Term};
use std::fmt;

/// Restriction on passthrough for the degrees-of-reflection-with-passthrough
/// system. The framework allows an arbitrary bound per position; the two
/// built-ins cover the spectrum ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PassRestriction {
    /// p(a, ·) = a: unrestricted passthrough.
    Full,
    /// p(a, ·) = 0: passthrough never applies (coincides with plain DoR).
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    /// Bachmann-Howard system: 0, W, binary C, built-from-below.
    Bh,
    /// n-th main system: 0, W_n, binary C, n-built-from-below.
    /// Main(0) is the Omega-less fragment (plain Cantor normal form).
    Main(u32),
    /// Combined main system: 0, W_1, W_2, ..., with W_i = C(W_{i+1}, 0).
    Combined,
    /// Degrees of recursive inaccessibility: ternary C(a, b, c).
    Dri,
    /// Degrees of reflection with O = C: 0, W, binary C.
    Dor,
    /// Degrees of reflection with passthrough.
    DorPass(PassRestriction),
    /// Built-from-below with passthrough for lower indices: ternary C(i, a, b).
    Cpass,
}

/// Identifies which system's rules govern standardness/comparison, plus the
/// pool of opaque constants when the system is built above an ordinal
/// (`constants = k` provides `$1 .. $k`, and standard C-nodes must have base
/// >= `$k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    pub id: SystemId,
    pub constants: u32,
}

impl SystemSpec {
    pub const fn new(id: SystemId) -> SystemSpec {
        SystemSpec { id, constants: 0 }
    }

    pub const fn with_constants(id: SystemId, constants: u32) -> SystemSpec {
        SystemSpec { id, constants }
    }

    pub const fn bh() -> SystemSpec {
        SystemSpec::new(SystemId::Bh)
    }

    pub const fn main(n: u32) -> SystemSpec {
        SystemSpec::new(SystemId::Main(n))
    }

    pub const fn combined() -> SystemSpec {
        SystemSpec::new(SystemId::Combined)
    }

    pub const fn dri() -> SystemSpec {
        SystemSpec::new(SystemId::Dri)
    }

    pub const fn dor() -> SystemSpec {
        SystemSpec::new(SystemId::Dor)
    }

    pub const fn dor_pass(p: PassRestriction) -> SystemSpec {
        SystemSpec::new(SystemId::DorPass(p))
    }

    pub const fn cpass() -> SystemSpec {
        SystemSpec::new(SystemId::Cpass)
    }

    /// Arity of every C node under this system.
    pub fn arity(&self) -> usize {
        match self.id {
            SystemId::Dri | SystemId::Cpass => 3,
            _ => 2,
        }
    }

    /// Omega constants available: `None` for Omega-less systems, `Some(n)`
    /// meaning the single constant W_n, `Some(u32::MAX)` marking the
    /// unbounded combined family.
    pub fn omega_index(&self) -> Option<u32> {
        match self.id {
            SystemId::Bh | SystemId::Dor | SystemId::DorPass(_) => Some(1),
            SystemId::Main(0) => None,
            SystemId::Main(n) => Some(n),
            SystemId::Combined => Some(u32::MAX),
            SystemId::Dri | SystemId::Cpass => None,
        }
    }

    pub fn accepts_omega(&self, index: u32) -> bool {
        match self.id {
            SystemId::Combined => index >= 1,
            _ => self.omega_index().is_some() && index >= 1,
        }
    }

    /// The index a bare `W` (or any Omega constant in a single-Omega system)
    /// stands for.
    pub fn canonical_omega(&self) -> Option<u32> {
        match self.id {
            SystemId::Combined => Some(1),
            _ => self.omega_index(),
        }
    }

    /// Checks arity and constant usage of `t` against this system.
    pub fn validate(&self, t: &Term) -> Result<(), Error> {
        match t {
            Term::Zero => Ok(()),
            Term::Omega(i) => {
                if self.accepts_omega(*i) {
                    Ok(())
                } else {
                    Err(Error::UnknownConstant {
                        name: format!("W_{i}"),
                    })
                }
            }
            Term::Ext(k) => {
                if *k >= 1 && *k <= self.constants {
                    Ok(())
                } else {
                    Err(Error::UnknownConstant {
                        name: format!("${k}"),
                    })
                }
            }
            Term::C(args) => {
                if args.len() != self.arity() {
                    return Err(Error::Arity {
                        expected: self.arity(),
                        found: args.len(),
                    });
                }
                for a in args {
                    self.validate(a)?;
                }
                Ok(())
            }
        }
    }

    /// Parse a CLI-style selector: bh, main:N, combined, dri, dor,
    /// dor-pass[:full|none], cpass.
    pub fn parse_selector(s: &str) -> Result<SystemSpec, Error> {
        let id = match s {
            "bh" => SystemId::Bh,
            "combined" => SystemId::Combined,
            "dri" => SystemId::Dri,
            "dor" => SystemId::Dor,
            "dor-pass" | "dor-pass:full" => SystemId::DorPass(PassRestriction::Full),
            "dor-pass:none" => SystemId::DorPass(PassRestriction::None),
            "cpass" => SystemId::Cpass,
            _ => {
                if let Some(n) = s.strip_prefix("main:") {
                    let n: u32 = n.parse().map_err(|_| Error::Unsupported(format!(
                        "bad system selector `{s}`"
                    )))?;
                    SystemId::Main(n)
                } else {
                    return Err(Error::Unsupported(format!("unknown system selector `{s}`")));
                }
            }
        };
        Ok(SystemSpec::new(id))
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id {
            SystemId::Bh => write!(f, "bh")?,
            SystemId::Main(n) => write!(f, "main:{n}")?,
            SystemId::Combined => write!(f, "combined")?,
            SystemId::Dri => write!(f, "dri")?,
            SystemId::Dor => write!(f, "dor")?,
            SystemId::DorPass(PassRestriction::Full) => write!(f, "dor-pass:full")?,
            SystemId::DorPass(PassRestriction::None) => write!(f, "dor-pass:none")?,
            SystemId::Cpass => write!(f, "cpass")?,
        }
        if self.constants > 0 {
            write!(f, "+{}consts", self.constants)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_round_trip() {
        for s in [
            "bh",
            "main:2",
            "combined",
            "dri",
            "dor",
            "dor-pass:full",
            "dor-pass:none",
            "cpass",
        ] {
            let spec = SystemSpec::parse_selector(s).unwrap();
            assert_eq!(spec.to_string(), s.replace("main:2", "main:2"));
        }
        assert_eq!(
            SystemSpec::parse_selector("dor-pass").unwrap().id,
            SystemId::DorPass(PassRestriction::Full)
        );
        assert!(SystemSpec::parse_selector("veblen").is_err());
    }

    #[test]
    fn validate_arity_and_constants() {
        let t2 = Term::c2(Term::Zero, Term::Zero);
        let t3 = Term::c3(Term::Zero, Term::Zero, Term::Zero);
        assert!(SystemSpec::bh().validate(&t2).is_ok());
        assert!(matches!(
            SystemSpec::bh().validate(&t3),
            Err(Error::Arity { expected: 2, found: 3 })
        ));
        assert!(SystemSpec::dri().validate(&t3).is_ok());
        assert!(SystemSpec::dri().validate(&Term::Omega(1)).is_err());
        assert!(SystemSpec::main(0).validate(&Term::Omega(1)).is_err());
        assert!(SystemSpec::bh().validate(&Term::Ext(1)).is_err());
        assert!(SystemSpec::with_constants(SystemId::Cpass, 2)
            .validate(&Term::Ext(2))
            .is_ok());
    }
}
