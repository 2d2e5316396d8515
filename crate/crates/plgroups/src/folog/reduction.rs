//! Interpretation packages `(φ, ψ, (ξ_σ))` over a host structure, the
//! admissibility conditions, the quotient structure they define, and the
//! sentence reduction `α ↦ αᵗ`: quantifiers relativized by `φ`, equality
//! replaced by `ψ`, every relation symbol replaced by its `ξ_σ`. The
//! defining property, checkable on any finite host, is
//! `quotient(N) ⊨ α  ⇔  N ⊨ αᵗ(ā)`.

use std::collections::BTreeMap;

use crate::folog::structure::{all_tuples, Assignment, FiniteStructure};
use crate::folog::syntax::{Formula, Signature, Term};
use crate::Error;

/// A dimension-`dim` interpretation package with parameter tuple `ā`:
/// `phi(x̄, ȳ)` carves the domain out of `N^dim`, `psi(x̄, ȳ₁, ȳ₂)` is the
/// intended kernel, and `xi[σ]` defines the preimage of each target symbol.
/// Formulas refer to their tuple variables through the accompanying block
/// name lists; parameter names are shared across all of them.
#[derive(Clone, Debug)]
pub struct InterpretationData {
    pub dim: usize,
    pub target_sig: Signature,
    pub params: Vec<String>,
    pub param_values: Vec<usize>,
    pub phi_vars: Vec<String>,
    pub phi: Formula,
    pub psi_vars: (Vec<String>, Vec<String>),
    pub psi: Formula,
    pub xi: BTreeMap<String, (Vec<Vec<String>>, Formula)>,
}

impl InterpretationData {
    pub fn validate(&self) -> Result<(), Error> {
        if self.dim == 0 {
            return Err(Error::Domain(
                "interpretation dimension must be positive".into(),
            ));
        }
        if self.params.len() != self.param_values.len() {
            return Err(Error::Domain(
                "parameter names and values differ in length".into(),
            ));
        }
        if self.params.iter().any(|p| p.contains('@')) {
            return Err(Error::Domain("parameter names must not contain '@'".into()));
        }
        if self.phi_vars.len() != self.dim
            || self.psi_vars.0.len() != self.dim
            || self.psi_vars.1.len() != self.dim
        {
            return Err(Error::Domain(
                "tuple variable blocks must match the dimension".into(),
            ));
        }
        for (sym, (blocks, _)) in &self.xi {
            let arity = self
                .target_sig
                .rel_arity(sym)
                .or_else(|| self.target_sig.func_arity(sym).map(|a| a + 1))
                .ok_or_else(|| Error::Domain(format!("{sym} is not a target symbol")))?;
            if blocks.len() != arity || blocks.iter().any(|b| b.len() != self.dim) {
                return Err(Error::Domain(format!(
                    "tuple blocks for {sym} have the wrong shape"
                )));
            }
        }
        for (sym, _) in self.target_sig.rels() {
            if !self.xi.contains_key(sym) {
                return Err(Error::Domain(format!("missing defining formula for {sym}")));
            }
        }
        for (sym, _) in self.target_sig.funcs() {
            if !self.xi.contains_key(sym) {
                return Err(Error::Domain(format!("missing defining formula for {sym}")));
            }
        }
        Ok(())
    }

    fn base_assignment(&self) -> Assignment {
        self.params
            .iter()
            .cloned()
            .zip(self.param_values.iter().copied())
            .collect()
    }

    fn holds(
        &self,
        host: &FiniteStructure,
        formula: &Formula,
        blocks: &[&[String]],
        tuples: &[&[usize]],
    ) -> Result<bool, Error> {
        let mut asg = self.base_assignment();
        for (block, tuple) in blocks.iter().zip(tuples) {
            for (v, val) in block.iter().zip(tuple.iter()) {
                asg.insert(v.clone(), *val);
            }
        }
        host.evaluate(formula, &asg)
    }

    /// The tuples of `N^dim` satisfying `φ(ā, ·)`, in enumeration order.
    pub fn domain(&self, host: &FiniteStructure) -> Result<Vec<Vec<usize>>, Error> {
        self.validate()?;
        let mut out = Vec::new();
        for t in all_tuples(host.size(), self.dim) {
            if self.holds(host, &self.phi, &[&self.phi_vars], &[&t])? {
                out.push(t);
            }
        }
        Ok(out)
    }

    pub fn kernel_holds(
        &self,
        host: &FiniteStructure,
        t1: &[usize],
        t2: &[usize],
    ) -> Result<bool, Error> {
        self.holds(
            host,
            &self.psi,
            &[&self.psi_vars.0, &self.psi_vars.1],
            &[t1, t2],
        )
    }

    pub fn xi_holds(
        &self,
        host: &FiniteStructure,
        sym: &str,
        tuples: &[&[usize]],
    ) -> Result<bool, Error> {
        let (blocks, formula) = self
            .xi
            .get(sym)
            .ok_or_else(|| Error::Domain(format!("no defining formula for {sym}")))?;
        let block_refs: Vec<&[String]> = blocks.iter().map(|b| b.as_slice()).collect();
        self.holds(host, formula, &block_refs, tuples)
    }

    /// Partitions the domain into kernel classes; returns the class index of
    /// every domain tuple, in domain order.
    fn classes(&self, host: &FiniteStructure, domain: &[Vec<usize>]) -> Result<Vec<usize>, Error> {
        let mut class_of: Vec<usize> = Vec::with_capacity(domain.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, t) in domain.iter().enumerate() {
            let mut found = None;
            for (c, &rep) in reps.iter().enumerate() {
                if self.kernel_holds(host, t, &domain[rep])? {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(c) => class_of.push(c),
                None => {
                    reps.push(i);
                    class_of.push(reps.len() - 1);
                }
            }
        }
        Ok(class_of)
    }

    /// Whether `ψ` is an equivalence on the `φ`-set and every `ξ_σ` is
    /// compatible with it (for function symbols: additionally the graph of a
    /// total single-valued operation on the classes).
    pub fn admissible(&self, host: &FiniteStructure) -> Result<bool, Error> {
        self.validate()?;
        let domain = self.domain(host)?;
        // equivalence on the domain
        for t in &domain {
            if !self.kernel_holds(host, t, t)? {
                return Ok(false);
            }
        }
        let m = domain.len();
        let mut related = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                related[i * m + j] = self.kernel_holds(host, &domain[i], &domain[j])?;
            }
        }
        for i in 0..m {
            for j in 0..m {
                if related[i * m + j] != related[j * m + i] {
                    return Ok(false);
                }
                for k in 0..m {
                    if related[i * m + j] && related[j * m + k] && !related[i * m + k] {
                        return Ok(false);
                    }
                }
            }
        }
        let class_of = self.classes(host, &domain)?;
        // compatibility: membership depends only on the class vector
        for (sym, (blocks, _)) in &self.xi {
            let arity = blocks.len();
            let mut value_of_classes: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
            for combo in all_tuples(m, arity) {
                let tuples: Vec<&[usize]> = combo.iter().map(|&i| domain[i].as_slice()).collect();
                let classes: Vec<usize> = combo.iter().map(|&i| class_of[i]).collect();
                let v = self.xi_holds(host, sym, &tuples)?;
                match value_of_classes.get(&classes) {
                    Some(&prev) if prev != v => return Ok(false),
                    Some(_) => {}
                    None => {
                        value_of_classes.insert(classes, v);
                    }
                }
            }
            // a function symbol's graph must define a total operation
            if let Some(farity) = self.target_sig.func_arity(sym) {
                let class_count = class_of.iter().copied().max().map_or(0, |c| c + 1);
                for args in all_tuples(class_count, farity) {
                    let mut values = Vec::new();
                    for v in 0..class_count {
                        let mut key = args.clone();
                        key.push(v);
                        if value_of_classes[&key] {
                            values.push(v);
                        }
                    }
                    if values.len() != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The structure on the kernel classes of the domain, with every target
    /// symbol induced by its defining formula. Requires admissibility.
    pub fn quotient(&self, host: &FiniteStructure) -> Result<FiniteStructure, Error> {
        if !self.admissible(host)? {
            return Err(Error::Domain(
                "interpretation package is not admissible".into(),
            ));
        }
        let domain = self.domain(host)?;
        let class_of = self.classes(host, &domain)?;
        let class_count = class_of.iter().copied().max().map_or(0, |c| c + 1);
        // first domain tuple of each class is its representative
        let mut rep: Vec<usize> = vec![usize::MAX; class_count];
        for (i, &c) in class_of.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = i;
            }
        }
        let mut out = FiniteStructure::new(self.target_sig.clone(), class_count);
        for (sym, arity) in self.target_sig.rels() {
            let mut tuples = Vec::new();
            for combo in all_tuples(class_count, arity) {
                let reps: Vec<&[usize]> =
                    combo.iter().map(|&c| domain[rep[c]].as_slice()).collect();
                if self.xi_holds(host, sym, &reps)? {
                    tuples.push(combo);
                }
            }
            out.set_rel(sym, tuples)?;
        }
        for (sym, arity) in self.target_sig.funcs() {
            let mut table: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for combo in all_tuples(class_count, arity) {
                let mut value = None;
                for v in 0..class_count {
                    let mut key: Vec<&[usize]> =
                        combo.iter().map(|&c| domain[rep[c]].as_slice()).collect();
                    key.push(domain[rep[v]].as_slice());
                    if self.xi_holds(host, sym, &key)? {
                        value = Some(v);
                        break;
                    }
                }
                table.insert(combo, value.expect("admissibility gives totality"));
            }
            out.set_func(sym, |args| table[args])?;
        }
        Ok(out)
    }

    /// The reduction `α ↦ αᵗ`: a formula over the host signature whose free
    /// variables are exactly the parameter names. `α` must be a relational
    /// sentence over the target signature.
    pub fn reduce(&self, alpha: &Formula) -> Result<Formula, Error> {
        self.validate()?;
        if !alpha.is_sentence() {
            return Err(Error::Domain("only sentences are reduced".into()));
        }
        if !self.target_sig.is_relational() {
            return Err(Error::Domain(
                "reduction needs a relational target signature; relationalize first".into(),
            ));
        }
        alpha.well_formed(&self.target_sig)?;
        let mut env: BTreeMap<String, Vec<String>> = BTreeMap::new();
        self.reduce_inner(alpha, &mut env)
    }

    fn tuple_vars(&self, v: &str) -> Vec<String> {
        (1..=self.dim).map(|i| format!("{v}@{i}")).collect()
    }

    /// `phi` with its tuple block renamed to the given variables.
    fn phi_at(&self, tuple: &[String]) -> Formula {
        let map = self
            .phi_vars
            .iter()
            .cloned()
            .zip(tuple.iter().cloned())
            .collect();
        self.phi.rename_free(&map)
    }

    fn reduce_inner(
        &self,
        f: &Formula,
        env: &mut BTreeMap<String, Vec<String>>,
    ) -> Result<Formula, Error> {
        Ok(match f {
            Formula::Eq(Term::Var(u), Term::Var(v)) => {
                let (tu, tv) = (self.lookup(env, u)?, self.lookup(env, v)?);
                let mut map: BTreeMap<String, String> = BTreeMap::new();
                map.extend(self.psi_vars.0.iter().cloned().zip(tu));
                map.extend(self.psi_vars.1.iter().cloned().zip(tv));
                self.psi.rename_free(&map)
            }
            Formula::Eq(..) => {
                return Err(Error::Domain(
                    "function terms in equality; relationalize first".into(),
                ))
            }
            Formula::Rel(sym, args) => {
                let (blocks, formula) = self
                    .xi
                    .get(sym)
                    .ok_or_else(|| Error::Domain(format!("no ξ for {sym}")))?;
                let mut map: BTreeMap<String, String> = BTreeMap::new();
                for (block, arg) in blocks.iter().zip(args) {
                    let Term::Var(v) = arg else {
                        return Err(Error::Domain(
                            "function terms in a relation atom; relationalize first".into(),
                        ));
                    };
                    map.extend(block.iter().cloned().zip(self.lookup(env, v)?));
                }
                formula.rename_free(&map)
            }
            Formula::Not(x) => Formula::negate(self.reduce_inner(x, env)?),
            Formula::And(a, b) => {
                Formula::and(self.reduce_inner(a, env)?, self.reduce_inner(b, env)?)
            }
            Formula::Or(a, b) => {
                Formula::or(self.reduce_inner(a, env)?, self.reduce_inner(b, env)?)
            }
            Formula::Implies(a, b) => {
                Formula::implies(self.reduce_inner(a, env)?, self.reduce_inner(b, env)?)
            }
            Formula::Iff(a, b) => {
                Formula::iff(self.reduce_inner(a, env)?, self.reduce_inner(b, env)?)
            }
            Formula::Forall(vs, body) => {
                let (all_vars, guards, body) = self.reduce_quantifier(vs, body, env)?;
                Formula::Forall(all_vars, Box::new(Formula::implies(guards, body)))
            }
            Formula::Exists(vs, body) => {
                let (all_vars, guards, body) = self.reduce_quantifier(vs, body, env)?;
                Formula::Exists(all_vars, Box::new(Formula::and(guards, body)))
            }
        })
    }

    fn lookup(&self, env: &BTreeMap<String, Vec<String>>, v: &str) -> Result<Vec<String>, Error> {
        env.get(v)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("unbound variable {v} in a sentence")))
    }

    fn reduce_quantifier(
        &self,
        vs: &[String],
        body: &Formula,
        env: &mut BTreeMap<String, Vec<String>>,
    ) -> Result<(Vec<String>, Formula, Formula), Error> {
        let mut all_vars = Vec::with_capacity(vs.len() * self.dim);
        let mut guards = Vec::with_capacity(vs.len());
        let mut saved: Vec<(String, Option<Vec<String>>)> = Vec::new();
        for v in vs {
            let tuple = self.tuple_vars(v);
            all_vars.extend(tuple.iter().cloned());
            guards.push(self.phi_at(&tuple));
            saved.push((v.clone(), env.insert(v.clone(), tuple)));
        }
        let body = self.reduce_inner(body, env);
        for (v, old) in saved {
            match old {
                Some(t) => {
                    env.insert(v, t);
                }
                None => {
                    env.remove(&v);
                }
            }
        }
        Ok((all_vars, Formula::and_all(guards), body?))
    }

    /// Evaluates the defining equivalence on one sentence over one host:
    /// `quotient(N) ⊨ α ⇔ N ⊨ αᵗ(ā)`.
    pub fn equivalence_holds(
        &self,
        host: &FiniteStructure,
        alpha: &Formula,
    ) -> Result<bool, Error> {
        let quotient = self.quotient(host)?;
        let left = quotient.evaluate(alpha, &Assignment::new())?;
        let reduced = self.reduce(alpha)?;
        let right = host.evaluate(&reduced, &self.base_assignment())?;
        Ok(left == right)
    }
}

/// The identity interpretation of a relational structure in itself:
/// dimension 1, full domain, equality kernel, every symbol its own graph.
pub fn identity_interpretation(sig: &Signature) -> InterpretationData {
    assert!(sig.is_relational());
    let y = || "y0".to_owned();
    let xi = sig
        .rels()
        .map(|(name, arity)| {
            let blocks: Vec<Vec<String>> = (0..arity).map(|i| vec![format!("w{i}")]).collect();
            let args = (0..arity).map(|i| Term::var(&format!("w{i}"))).collect();
            (name.clone(), (blocks, Formula::Rel(name.clone(), args)))
        })
        .collect();
    InterpretationData {
        dim: 1,
        target_sig: sig.clone(),
        params: vec![],
        param_values: vec![],
        phi_vars: vec![y()],
        phi: Formula::Eq(Term::var("y0"), Term::var("y0")),
        psi_vars: (vec!["u0".into()], vec!["v0".into()]),
        psi: Formula::Eq(Term::var("u0"), Term::var("v0")),
        xi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folog::parse::parse;

    fn edge_sig() -> Signature {
        Signature::new().with_rel("edge", 2)
    }

    fn path3() -> FiniteStructure {
        let mut m = FiniteStructure::new(edge_sig(), 3);
        m.set_rel("edge", [vec![0, 1], vec![1, 2]]).unwrap();
        m
    }

    #[test]
    fn identity_interpretation_reproduces_the_structure() {
        let m = path3();
        let data = identity_interpretation(m.sig());
        assert!(data.admissible(&m).unwrap());
        let q = data.quotient(&m).unwrap();
        assert_eq!(q, m);
        for text in [
            "forall x exists y edge(x, y) | edge(y, x)",
            "exists x edge(x, x)",
            "forall x, y (edge(x, y) -> !edge(y, x))",
        ] {
            assert!(
                data.equivalence_holds(&m, &parse(text).unwrap()).unwrap(),
                "{text}"
            );
        }
    }

    /// Dimension 1 over a 4-element host, kernel = parity, domain = all.
    fn parity_data() -> (FiniteStructure, InterpretationData) {
        let host_sig = Signature::new().with_rel("even", 1).with_rel("succ", 2);
        let mut host = FiniteStructure::new(host_sig, 4);
        host.set_rel("even", [vec![0], vec![2]]).unwrap();
        host.set_rel("succ", (0..3).map(|i| vec![i, i + 1]))
            .unwrap();
        let target = Signature::new().with_rel("same", 2);
        let data = InterpretationData {
            dim: 1,
            target_sig: target,
            params: vec![],
            param_values: vec![],
            phi_vars: vec!["y0".into()],
            phi: parse("y0 = y0").unwrap(),
            psi_vars: (vec!["u0".into()], vec!["v0".into()]),
            psi: parse("even(u0) <-> even(v0)").unwrap(),
            xi: BTreeMap::from([(
                "same".to_owned(),
                (
                    vec![vec!["p0".to_owned()], vec!["q0".to_owned()]],
                    parse("even(p0) <-> even(q0)").unwrap(),
                ),
            )]),
        };
        (host, data)
    }

    #[test]
    fn parity_quotient_has_two_classes() {
        let (host, data) = parity_data();
        assert!(data.admissible(&host).unwrap());
        let q = data.quotient(&host).unwrap();
        assert_eq!(q.size(), 2);
        for text in [
            "forall x same(x, x)",
            "exists x, y !same(x, y)",
            "forall x, y (same(x, y) -> same(y, x))",
            "exists x forall y (same(x, y) -> x = y)",
        ] {
            assert!(
                data.equivalence_holds(&host, &parse(text).unwrap())
                    .unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn inadmissible_kernels_are_rejected() {
        let (host, mut data) = parity_data();
        // not symmetric: u0 even implies v0 even only
        data.psi = parse("even(u0) -> even(v0)").unwrap();
        assert!(!data.admissible(&host).unwrap());
        assert!(data.quotient(&host).is_err());
        // incompatible xi: depends on the element, not the class
        let (host, mut data) = parity_data();
        data.xi.get_mut("same").unwrap().1 = parse("succ(p0, q0)").unwrap();
        assert!(!data.admissible(&host).unwrap());
        // kernel coarse, xi separating: classic compatibility failure
        let (host, mut data) = parity_data();
        data.psi = parse("u0 = u0").unwrap();
        assert!(!data.admissible(&host).unwrap());
        // reflexive and symmetric but not transitive: adjacency-or-equality
        let (host, mut data) = parity_data();
        data.psi = parse("u0 = v0 | succ(u0, v0) | succ(v0, u0)").unwrap();
        data.xi.get_mut("same").unwrap().1 = parse("p0 = p0").unwrap();
        assert!(!data.admissible(&host).unwrap());
    }

    #[test]
    fn shadowed_quantifiers_reduce_correctly() {
        let (host, data) = parity_data();
        for text in [
            "forall y exists y same(y, y)",
            "exists y (same(y, y) & forall y same(y, y))",
        ] {
            let alpha = parse(text).unwrap();
            assert!(data.equivalence_holds(&host, &alpha).unwrap(), "{text}");
        }
    }

    #[test]
    fn admissibility_is_isomorphism_invariant() {
        let (host, data) = parity_data();
        assert!(data.admissible(&host).unwrap());
        for perm in [[1usize, 2, 3, 0], [3, 2, 1, 0], [2, 0, 3, 1]] {
            let renamed = host.rename_universe(&perm);
            assert!(data.admissible(&renamed).unwrap(), "perm {perm:?}");
            assert_eq!(
                data.quotient(&renamed).unwrap().size(),
                data.quotient(&host).unwrap().size()
            );
        }
    }

    #[test]
    fn chained_interpretations_compose() {
        // N hosts an interpretation of M = quotient2(N); M hosts one of
        // L = quotient1(M). Reducing twice answers questions about L in N.
        let host_sig = Signature::new().with_rel("even", 1).with_rel("low", 1);
        let mut n = FiniteStructure::new(host_sig, 4);
        n.set_rel("even", [vec![0], vec![2]]).unwrap();
        n.set_rel("low", [vec![0], vec![1]]).unwrap();

        // data2: N -> M, kernel = parity, carry a "cls" predicate
        let mid_sig = Signature::new().with_rel("cls", 1);
        let data2 = InterpretationData {
            dim: 1,
            target_sig: mid_sig.clone(),
            params: vec![],
            param_values: vec![],
            phi_vars: vec!["y0".into()],
            phi: parse("y0 = y0").unwrap(),
            psi_vars: (vec!["u0".into()], vec!["v0".into()]),
            psi: parse("even(u0) <-> even(v0)").unwrap(),
            xi: BTreeMap::from([(
                "cls".to_owned(),
                (vec![vec!["p0".to_owned()]], parse("even(p0)").unwrap()),
            )]),
        };
        let m = data2.quotient(&n).unwrap();
        assert_eq!(m.size(), 2);

        // data1: M -> L, collapse everything, one nullary-ish predicate
        let top_sig = Signature::new().with_rel("any", 1);
        let data1 = InterpretationData {
            dim: 1,
            target_sig: top_sig.clone(),
            params: vec![],
            param_values: vec![],
            phi_vars: vec!["y0".into()],
            phi: parse("y0 = y0").unwrap(),
            psi_vars: (vec!["u0".into()], vec!["v0".into()]),
            psi: parse("u0 = u0").unwrap(),
            xi: BTreeMap::from([(
                "any".to_owned(),
                (
                    vec![vec!["p0".to_owned()]],
                    parse("exists w cls(w)").unwrap(),
                ),
            )]),
        };
        assert!(data1.admissible(&m).unwrap());
        let l = data1.quotient(&m).unwrap();
        assert_eq!(l.size(), 1);

        for text in [
            "forall x any(x)",
            "exists x !any(x)",
            "exists x any(x) & x = x",
        ] {
            let alpha = parse(text).unwrap();
            let direct = l.evaluate(&alpha, &Assignment::new()).unwrap();
            // reduce through data1 (a sentence over mid_sig), then data2
            let step1 = data1.reduce(&alpha).unwrap();
            assert!(step1.is_sentence());
            let step2 = data2.reduce(&step1).unwrap();
            let through_host = n.evaluate(&step2, &Assignment::new()).unwrap();
            assert_eq!(direct, through_host, "{text}");
        }
    }

    #[test]
    fn two_dimensional_projection() {
        // pairs as domain, kernel = equal first coordinate
        let host_sig = Signature::new().with_rel("edge", 2);
        let mut host = FiniteStructure::new(host_sig, 3);
        host.set_rel("edge", [vec![0, 1], vec![1, 2], vec![2, 0]])
            .unwrap();
        let target = Signature::new().with_rel("eq1", 2);
        let data = InterpretationData {
            dim: 2,
            target_sig: target,
            params: vec![],
            param_values: vec![],
            phi_vars: vec!["y1".into(), "y2".into()],
            phi: parse("y1 = y1").unwrap(),
            psi_vars: (
                vec!["u1".into(), "u2".into()],
                vec!["v1".into(), "v2".into()],
            ),
            psi: parse("u1 = v1").unwrap(),
            xi: BTreeMap::from([(
                "eq1".to_owned(),
                (
                    vec![
                        vec!["p1".to_owned(), "p2".to_owned()],
                        vec!["q1".to_owned(), "q2".to_owned()],
                    ],
                    parse("p1 = q1").unwrap(),
                ),
            )]),
        };
        assert!(data.admissible(&host).unwrap());
        let q = data.quotient(&host).unwrap();
        // classes = distinct first coordinates
        assert_eq!(q.size(), 3);
        for text in ["forall x, y (eq1(x, y) -> eq1(y, x))", "exists x eq1(x, x)"] {
            assert!(data
                .equivalence_holds(&host, &parse(text).unwrap())
                .unwrap());
        }
    }

    #[test]
    fn reduction_shape_smallest_case() {
        let (_, data) = parity_data();
        let alpha = parse("exists y y = y").unwrap();
        let reduced = data.reduce(&alpha).unwrap();
        let expected = parse("exists y@1 (y@1 = y@1 & (even(y@1) <-> even(y@1)))").unwrap();
        // φ relativizes the quantifier, ψ replaces equality
        assert!(reduced.alpha_eq(&expected), "got {reduced}");
    }

    #[test]
    fn function_symbols_in_quotients() {
        // host: Z4 successor as a relation; target: unary function f = class successor
        let host_sig = Signature::new().with_rel("even", 1).with_rel("succ", 2);
        let mut host = FiniteStructure::new(host_sig, 4);
        host.set_rel("even", [vec![0], vec![2]]).unwrap();
        host.set_rel("succ", (0..4).map(|i| vec![i, (i + 1) % 4]))
            .unwrap();
        let target = Signature::new().with_func("f", 1);
        let data = InterpretationData {
            dim: 1,
            target_sig: target,
            params: vec![],
            param_values: vec![],
            phi_vars: vec!["y0".into()],
            phi: parse("y0 = y0").unwrap(),
            psi_vars: (vec!["u0".into()], vec!["v0".into()]),
            psi: parse("even(u0) <-> even(v0)").unwrap(),
            // f maps a class to the class of successors
            xi: BTreeMap::from([(
                "f".to_owned(),
                (
                    vec![vec!["p0".to_owned()], vec!["q0".to_owned()]],
                    parse("even(p0) <-> !even(q0)").unwrap(),
                ),
            )]),
        };
        assert!(data.admissible(&host).unwrap());
        let q = data.quotient(&host).unwrap();
        assert_eq!(q.size(), 2);
        let table = q.func_table("f").unwrap();
        assert_eq!(table[&vec![0]], 1);
        assert_eq!(table[&vec![1]], 0);
        // reduce refuses non-relational targets
        assert!(data.reduce(&parse("forall x f(x) = x").unwrap()).is_err());
    }
}
