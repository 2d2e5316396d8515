//! Signatures, terms, and the formula syntax tree. Constants are handled as
//! functions of arity zero throughout.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::Error;

/// Relation and function symbols with arities. Symbol names are unique
/// across both kinds.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    rels: BTreeMap<String, usize>,
    funcs: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn with_rel(mut self, name: &str, arity: usize) -> Self {
        assert!(
            !self.rels.contains_key(name) && !self.funcs.contains_key(name),
            "duplicate symbol {name}"
        );
        self.rels.insert(name.to_owned(), arity);
        self
    }

    pub fn with_func(mut self, name: &str, arity: usize) -> Self {
        assert!(
            !self.rels.contains_key(name) && !self.funcs.contains_key(name),
            "duplicate symbol {name}"
        );
        self.funcs.insert(name.to_owned(), arity);
        self
    }

    pub fn rel_arity(&self, name: &str) -> Option<usize> {
        self.rels.get(name).copied()
    }

    pub fn func_arity(&self, name: &str) -> Option<usize> {
        self.funcs.get(name).copied()
    }

    pub fn rels(&self) -> impl Iterator<Item = (&String, usize)> {
        self.rels.iter().map(|(n, &a)| (n, a))
    }

    pub fn funcs(&self) -> impl Iterator<Item = (&String, usize)> {
        self.funcs.iter().map(|(n, &a)| (n, a))
    }

    pub fn is_relational(&self) -> bool {
        self.funcs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Function application; a constant is `App(name, [])`.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_owned(), args)
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    fn rename(&self, map: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|t| t.rename(map)).collect())
            }
        }
    }

    pub fn has_application(&self) -> bool {
        matches!(self, Term::App(..))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    Rel(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn rel(name: &str, args: Vec<Term>) -> Formula {
        Formula::Rel(name.to_owned(), args)
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::Forall(
            vars.iter().map(|v| (*v).to_owned()).collect(),
            Box::new(body),
        )
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Exists(
            vars.iter().map(|v| (*v).to_owned()).collect(),
            Box::new(body),
        )
    }

    /// Left-associated conjunction of a nonempty list.
    pub fn and_all(parts: Vec<Formula>) -> Formula {
        let mut it = parts.into_iter();
        let first = it.next().expect("conjunction of nothing");
        it.fold(first, Formula::and)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                let mut vars = BTreeSet::new();
                a.collect_vars(&mut vars);
                b.collect_vars(&mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Rel(_, args) => {
                let mut vars = BTreeSet::new();
                args.iter().for_each(|t| t.collect_vars(&mut vars));
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                let added: Vec<_> = vs
                    .iter()
                    .filter(|v| bound.insert((*v).clone()))
                    .cloned()
                    .collect();
                body.collect_free(bound, out);
                for v in added {
                    bound.remove(&v);
                }
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_vars(&mut out);
        out
    }

    fn walk_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Rel(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(f) => f.walk_vars(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.walk_vars(out);
                b.walk_vars(out);
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                out.extend(vs.iter().cloned());
                body.walk_vars(out);
            }
        }
    }

    /// Renames free variables according to `map`, alpha-renaming bound
    /// variables when they would capture a target name.
    pub fn rename_free(&self, map: &BTreeMap<String, String>) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.rename(map), b.rename(map)),
            Formula::Rel(r, args) => {
                Formula::Rel(r.clone(), args.iter().map(|t| t.rename(map)).collect())
            }
            Formula::Not(f) => Formula::negate(f.rename_free(map)),
            Formula::And(a, b) => Formula::and(a.rename_free(map), b.rename_free(map)),
            Formula::Or(a, b) => Formula::or(a.rename_free(map), b.rename_free(map)),
            Formula::Implies(a, b) => Formula::implies(a.rename_free(map), b.rename_free(map)),
            Formula::Iff(a, b) => Formula::iff(a.rename_free(map), b.rename_free(map)),
            Formula::Forall(vs, body) => {
                let (vs, body) = rename_under_binder(vs, body, map);
                Formula::Forall(vs, Box::new(body))
            }
            Formula::Exists(vs, body) => {
                let (vs, body) = rename_under_binder(vs, body, map);
                Formula::Exists(vs, Box::new(body))
            }
        }
    }

    /// Structural equality up to renaming of bound variables. Quantifier
    /// blocks must have matching sizes.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(
            a: &Term,
            b: &Term,
            ea: &BTreeMap<String, usize>,
            eb: &BTreeMap<String, usize>,
        ) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => match (ea.get(x), eb.get(y)) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                },
                (Term::App(f, xs), Term::App(g, ys)) => {
                    f == g
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, ea, eb))
                }
                _ => false,
            }
        }
        fn go(
            a: &Formula,
            b: &Formula,
            ea: &BTreeMap<String, usize>,
            eb: &BTreeMap<String, usize>,
            depth: usize,
        ) -> bool {
            match (a, b) {
                (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
                    term_eq(a1, b1, ea, eb) && term_eq(a2, b2, ea, eb)
                }
                (Formula::Rel(r, xs), Formula::Rel(s, ys)) => {
                    r == s
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, ea, eb))
                }
                (Formula::Not(x), Formula::Not(y)) => go(x, y, ea, eb, depth),
                (Formula::And(x1, x2), Formula::And(y1, y2))
                | (Formula::Or(x1, x2), Formula::Or(y1, y2))
                | (Formula::Implies(x1, x2), Formula::Implies(y1, y2))
                | (Formula::Iff(x1, x2), Formula::Iff(y1, y2)) => {
                    go(x1, y1, ea, eb, depth) && go(x2, y2, ea, eb, depth)
                }
                (Formula::Forall(vs, x), Formula::Forall(ws, y))
                | (Formula::Exists(vs, x), Formula::Exists(ws, y)) => {
                    if vs.len() != ws.len() {
                        return false;
                    }
                    let mut ea = ea.clone();
                    let mut eb = eb.clone();
                    for (i, (v, w)) in vs.iter().zip(ws).enumerate() {
                        ea.insert(v.clone(), depth + i);
                        eb.insert(w.clone(), depth + i);
                    }
                    go(x, y, &ea, &eb, depth + vs.len())
                }
                _ => false,
            }
        }
        go(self, other, &BTreeMap::new(), &BTreeMap::new(), 0)
    }

    /// Arity and symbol check against a signature.
    pub fn well_formed(&self, sig: &Signature) -> Result<(), Error> {
        fn term_ok(t: &Term, sig: &Signature) -> Result<(), Error> {
            if let Term::App(f, args) = t {
                match sig.func_arity(f) {
                    Some(a) if a == args.len() => {}
                    Some(a) => {
                        return Err(Error::Domain(format!(
                            "function {f} has arity {a}, applied to {} arguments",
                            args.len()
                        )))
                    }
                    None => return Err(Error::Domain(format!("unknown function symbol {f}"))),
                }
                for arg in args {
                    term_ok(arg, sig)?;
                }
            }
            Ok(())
        }
        match self {
            Formula::Eq(a, b) => {
                term_ok(a, sig)?;
                term_ok(b, sig)
            }
            Formula::Rel(r, args) => {
                match sig.rel_arity(r) {
                    Some(a) if a == args.len() => {}
                    Some(a) => {
                        return Err(Error::Domain(format!(
                            "relation {r} has arity {a}, applied to {} arguments",
                            args.len()
                        )))
                    }
                    None => return Err(Error::Domain(format!("unknown relation symbol {r}"))),
                }
                for arg in args {
                    term_ok(arg, sig)?;
                }
                Ok(())
            }
            Formula::Not(f) => f.well_formed(sig),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.well_formed(sig)?;
                b.well_formed(sig)
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.well_formed(sig),
        }
    }
}

fn rename_under_binder(
    vs: &[String],
    body: &Formula,
    map: &BTreeMap<String, String>,
) -> (Vec<String>, Formula) {
    let mut inner: BTreeMap<String, String> = map.clone();
    for v in vs {
        inner.remove(v);
    }
    let targets: BTreeSet<&String> = inner.values().collect();
    let captured: Vec<String> = vs.iter().filter(|v| targets.contains(v)).cloned().collect();
    if captured.is_empty() {
        return (vs.to_vec(), body.rename_free(&inner));
    }
    // alpha-rename captured binders to fresh primed names first
    let mut taken: BTreeSet<String> = body.all_vars();
    taken.extend(inner.keys().cloned());
    taken.extend(inner.values().cloned());
    taken.extend(vs.iter().cloned());
    let mut alpha = BTreeMap::new();
    let mut new_vs = Vec::with_capacity(vs.len());
    for v in vs {
        if captured.contains(v) {
            let mut fresh = format!("{v}'");
            while taken.contains(&fresh) {
                fresh.push('\'');
            }
            taken.insert(fresh.clone());
            alpha.insert(v.clone(), fresh.clone());
            new_vs.push(fresh);
        } else {
            new_vs.push(v.clone());
        }
    }
    let body = body.rename_free(&alpha);
    (new_vs, body.rename_free(&inner))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

// precedence: iff 1 < implies 2 < or 3 < and 4 < not 5 < atoms 6;
// a quantified formula has level 0 and its body extends maximally right
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        Formula::Eq(..) | Formula::Rel(..) => 6,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parens = level(f) < min;
    if parens {
        write!(out, "(")?;
    }
    match f {
        Formula::Eq(a, b) => write!(out, "{a} = {b}")?,
        Formula::Rel(r, args) => {
            write!(out, "{r}(")?;
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    write!(out, ", ")?;
                }
                write!(out, "{arg}")?;
            }
            write!(out, ")")?;
        }
        Formula::Not(x) => {
            write!(out, "!")?;
            write_at(x, 5, out)?;
        }
        Formula::And(a, b) => {
            write_at(a, 4, out)?;
            write!(out, " & ")?;
            write_at(b, 5, out)?;
        }
        Formula::Or(a, b) => {
            write_at(a, 3, out)?;
            write!(out, " | ")?;
            write_at(b, 4, out)?;
        }
        Formula::Implies(a, b) => {
            write_at(a, 3, out)?;
            write!(out, " -> ")?;
            write_at(b, 2, out)?;
        }
        Formula::Iff(a, b) => {
            write_at(a, 1, out)?;
            write!(out, " <-> ")?;
            write_at(b, 2, out)?;
        }
        Formula::Forall(vs, body) => {
            write!(out, "forall {}", vs.join(", "))?;
            write!(out, " ")?;
            write_at(body, 0, out)?;
        }
        Formula::Exists(vs, body) => {
            write!(out, "exists {}", vs.join(", "))?;
            write!(out, " ")?;
            write_at(body, 0, out)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}
