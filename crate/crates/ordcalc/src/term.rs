//! The shared term language: constants `0`, `W_i`, opaque external constants
//! `$k`, and the collapsing function `C` applied to 2 or 3 arguments.
//!
//! Terms are immutable values; every operation in this crate is a pure
//! function over them.

use std::fmt;

/// A term of the collapsing-function language.
///
/// The same data type carries the terms of every notation system in this
/// crate; which terms are well formed (arity, which constants exist) and
/// which are standard is decided by a [`crate::SystemSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// The least ordinal.
    Zero,
    /// A member of the Omega family. Index 1 is the single `W` of the
    /// one-Omega systems; larger indices only occur in the combined system.
    Omega(u32),
    /// An opaque constant used when building a system above an ordinal,
    /// ordered by rank (`$1 < $2 < ...`, all above 0 and below every W).
    Ext(u32),
    /// `C(..)` applied to 2 or 3 argument terms, in source order:
    /// `C(a, b)` or `C(i, a, b)` / `C(a, b, c)`.
    C(Vec<Term>),
}

impl Term {
    /// Binary collapse node `C(a, b)`.
    pub fn c2(a: Term, b: Term) -> Term {
        Term::C(vec![a, b])
    }

    /// Ternary node `C(x, y, z)`.
    pub fn c3(x: Term, y: Term, z: Term) -> Term {
        Term::C(vec![x, y, z])
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Term::C(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Zero)
    }

    /// Child terms of a `C` node, empty for atoms.
    pub fn args(&self) -> &[Term] {
        match self {
            Term::C(args) => args,
            _ => &[],
        }
    }

    /// Degree argument of a binary node (`a` in `C(a, b)`).
    pub fn deg2(&self) -> Option<&Term> {
        match self {
            Term::C(args) if args.len() == 2 => Some(&args[0]),
            _ => None,
        }
    }

    /// Base argument: last argument of any `C` node.
    pub fn base(&self) -> Option<&Term> {
        match self {
            Term::C(args) => args.last(),
            _ => None,
        }
    }

    /// Number of symbols, which equals the node count and the token count of
    /// the postfix rendering.
    pub fn symbols(&self) -> usize {
        match self {
            Term::C(args) => 1 + args.iter().map(Term::symbols).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::C(args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            _ => 1,
        }
    }

    /// Largest Omega index occurring in the term, if any.
    pub fn max_omega_index(&self) -> Option<u32> {
        match self {
            Term::Omega(i) => Some(*i),
            Term::C(args) => args.iter().filter_map(Term::max_omega_index).max(),
            _ => None,
        }
    }

    /// The subterm at `path`, or `None` if the path is invalid.
    pub fn at(&self, path: &Path) -> Option<&Term> {
        let mut cur = self;
        for &i in &path.0 {
            cur = cur.args().get(i as usize)?;
        }
        Some(cur)
    }

    /// All positions of the parse tree, root first, children left to right.
    /// This is prefix-string order: position k's head token is the k-th
    /// symbol of the prefix rendering.
    pub fn subterms(&self) -> Vec<(Path, &Term)> {
        let mut out = Vec::with_capacity(self.symbols());
        let mut stack = vec![(Path::root(), self)];
        while let Some((p, t)) = stack.pop() {
            out.push((p.clone(), t));
            for (i, child) in t.args().iter().enumerate().rev() {
                stack.push((p.child(i as u32), child));
            }
        }
        out
    }

    /// Returns a copy of `self` with the subterm at `p` replaced by `s`.
    pub fn replace_at(&self, p: &Path, s: Term) -> Result<Term, crate::Error> {
        fn go(t: &Term, rest: &[u32], s: Term) -> Result<Term, crate::Error> {
            match rest.split_first() {
                None => Ok(s),
                Some((&i, tail)) => match t {
                    Term::C(args) if (i as usize) < args.len() => {
                        let mut args = args.clone();
                        args[i as usize] = go(&args[i as usize], tail, s)?;
                        Ok(Term::C(args))
                    }
                    _ => Err(crate::Error::InvalidPath),
                },
            }
        }
        go(self, &p.0, s)
    }
}

/// A position in a term's parse tree: the sequence of child indices from the
/// root. Two equal subterms at different positions compare as distinct
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(pub Vec<u32>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, i: u32) -> Path {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff `self` is a proper ancestor of `other` (`self ⊐ other` as
    /// subterm occurrences: the position `other` lies strictly inside the
    /// subterm at `self`).
    pub fn strictly_contains(&self, other: &Path) -> bool {
        self.0.len() < other.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// True iff `self` is an ancestor of `other` or equal to it.
    pub fn contains(&self, other: &Path) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// All prefixes of this path from the path itself up to the root,
    /// i.e. the occurrence and its ancestors, innermost first.
    pub fn ancestors_including_self(&self) -> Vec<Path> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut cur = self.clone();
        loop {
            out.push(cur.clone());
            match cur.parent() {
                Some(p) => cur = p,
                None => break,
            }
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[]");
        }
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Which numbered condition of the governing system a nonstandard term
/// violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    BaseNotMinimal,
    BuiltFromBelowViolation,
    Arity,
    ConstantMisuse,
    OmegaNormalization,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::BaseNotMinimal => "base-not-minimal",
            Condition::BuiltFromBelowViolation => "built-from-below-violation",
            Condition::Arity => "arity",
            Condition::ConstantMisuse => "constant-misuse",
            Condition::OmegaNormalization => "omega-normalization",
        };
        f.write_str(s)
    }
}

/// Machine-readable reason a term is nonstandard.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub condition: Condition,
    /// Offending position(s): for built-from-below violations the witness
    /// chain, for base problems the node, etc.
    pub paths: Vec<Path>,
    pub message: String,
}

impl serde::Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Diagnostic {
    pub fn new(condition: Condition, paths: Vec<Path>, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            condition,
            paths,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if !self.paths.is_empty() {
            write!(f, " at ")?;
            for (k, p) in self.paths.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, ": {}", self.message)
    }
}
