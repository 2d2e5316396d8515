//! Elimination of function symbols: every `k`-ary function symbol `f`
//! becomes a `(k+1)`-ary relation symbol `f'` interpreted by the graph of
//! the function, and sentences are rewritten by flattening nested terms
//! through fresh existentials.

use std::collections::{BTreeMap, BTreeSet};

use crate::folog::structure::FiniteStructure;
use crate::folog::syntax::{Formula, Signature, Term};
use crate::Error;

/// The relational signature, together with the function-to-relation naming
/// map (`f ↦ f'`, primed further on collision).
pub fn relationalize_signature(sig: &Signature) -> (Signature, BTreeMap<String, String>) {
    let mut out = Signature::new();
    for (name, arity) in sig.rels() {
        out = out.with_rel(name, arity);
    }
    let taken: BTreeSet<String> = sig.rels().map(|(n, _)| n.clone()).collect();
    let mut renames = BTreeMap::new();
    for (name, arity) in sig.funcs() {
        let mut graph_name = format!("{name}'");
        while taken.contains(&graph_name) || renames.values().any(|v| v == &graph_name) {
            graph_name.push('\'');
        }
        out = out.with_rel(&graph_name, arity + 1);
        renames.insert(name.clone(), graph_name);
    }
    (out, renames)
}

/// The relational companion structure: same universe, function tables
/// replaced by their graphs.
pub fn relationalize_structure(m: &FiniteStructure) -> Result<FiniteStructure, Error> {
    m.validate()?;
    let (sig, renames) = relationalize_signature(m.sig());
    let mut out = FiniteStructure::new(sig, m.size());
    for (name, _) in m.sig().rels() {
        out.set_rel(
            name,
            m.rel_table(name).expect("table exists").iter().cloned(),
        )?;
    }
    for (name, _) in m.sig().funcs() {
        let graph = &renames[name];
        let table = m.func_table(name).expect("validated");
        out.set_rel(
            graph,
            table.iter().map(|(args, &v)| {
                let mut row = args.clone();
                row.push(v);
                row
            }),
        )?;
    }
    Ok(out)
}

/// Rewrites a sentence over the original signature into one over the
/// relational signature, preserving truth in the companion structure:
/// each atom containing function terms is flattened through fresh
/// existentially quantified variables constrained by graph atoms.
pub fn relationalize_sentence(f: &Formula, sig: &Signature) -> Result<Formula, Error> {
    f.well_formed(sig)?;
    let (_, renames) = relationalize_signature(sig);
    let mut taken = f.all_vars();
    let mut counter = 0usize;
    Ok(rewrite(f, &renames, &mut taken, &mut counter))
}

fn fresh(taken: &mut BTreeSet<String>, counter: &mut usize) -> String {
    loop {
        let name = format!("@{counter}");
        *counter += 1;
        if taken.insert(name.clone()) {
            return name;
        }
    }
}

fn rewrite(
    f: &Formula,
    renames: &BTreeMap<String, String>,
    taken: &mut BTreeSet<String>,
    counter: &mut usize,
) -> Formula {
    match f {
        Formula::Eq(a, b) => {
            let mut bindings = Vec::new();
            let a = flatten(a, renames, taken, counter, &mut bindings);
            let b = flatten(b, renames, taken, counter, &mut bindings);
            close(Formula::Eq(a, b), bindings)
        }
        Formula::Rel(r, args) => {
            let mut bindings = Vec::new();
            let args = args
                .iter()
                .map(|t| flatten(t, renames, taken, counter, &mut bindings))
                .collect();
            close(Formula::Rel(r.clone(), args), bindings)
        }
        Formula::Not(x) => Formula::negate(rewrite(x, renames, taken, counter)),
        Formula::And(a, b) => Formula::and(
            rewrite(a, renames, taken, counter),
            rewrite(b, renames, taken, counter),
        ),
        Formula::Or(a, b) => Formula::or(
            rewrite(a, renames, taken, counter),
            rewrite(b, renames, taken, counter),
        ),
        Formula::Implies(a, b) => Formula::implies(
            rewrite(a, renames, taken, counter),
            rewrite(b, renames, taken, counter),
        ),
        Formula::Iff(a, b) => Formula::iff(
            rewrite(a, renames, taken, counter),
            rewrite(b, renames, taken, counter),
        ),
        Formula::Forall(vs, body) => {
            Formula::Forall(vs.clone(), Box::new(rewrite(body, renames, taken, counter)))
        }
        Formula::Exists(vs, body) => {
            Formula::Exists(vs.clone(), Box::new(rewrite(body, renames, taken, counter)))
        }
    }
}

/// Replaces a term by a variable, pushing one graph atom per application.
fn flatten(
    t: &Term,
    renames: &BTreeMap<String, String>,
    taken: &mut BTreeSet<String>,
    counter: &mut usize,
    bindings: &mut Vec<(String, Formula)>,
) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(fname, args) => {
            let flat_args: Vec<Term> = args
                .iter()
                .map(|a| flatten(a, renames, taken, counter, bindings))
                .collect();
            let v = fresh(taken, counter);
            let mut graph_args = flat_args;
            graph_args.push(Term::var(&v));
            bindings.push((v.clone(), Formula::Rel(renames[fname].clone(), graph_args)));
            Term::var(&v)
        }
    }
}

fn close(atom: Formula, bindings: Vec<(String, Formula)>) -> Formula {
    if bindings.is_empty() {
        return atom;
    }
    let vars: Vec<String> = bindings.iter().map(|(v, _)| v.clone()).collect();
    let mut parts: Vec<Formula> = bindings.into_iter().map(|(_, g)| g).collect();
    parts.push(atom);
    Formula::Exists(vars, Box::new(Formula::and_all(parts)))
}
