//! Random relational sentences, structures, and admissible interpretation
//! packages for the equivalence campaigns. Kernels are built as agreement
//! on key formulas and defining formulas are saturated under the kernel, so
//! every generated package is admissible by construction (and re-checked).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::folog::reduction::InterpretationData;
use crate::folog::structure::{all_tuples, FiniteStructure};
use crate::folog::syntax::{Formula, Signature, Term};

pub fn random_structure<R: Rng>(sig: &Signature, size: usize, rng: &mut R) -> FiniteStructure {
    let mut m = FiniteStructure::new(sig.clone(), size);
    for (name, arity) in sig.rels() {
        let tuples: Vec<Vec<usize>> = all_tuples(size, arity)
            .into_iter()
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        m.set_rel(name, tuples).expect("tuples are in range");
    }
    m
}

/// A random relational sentence with at most `max_quant` quantifier blocks.
pub fn random_sentence<R: Rng>(sig: &Signature, rng: &mut R, max_quant: usize) -> Formula {
    let mut scope = Vec::new();
    let mut next_var = 0usize;
    let mut quant_budget = max_quant.max(1);
    gen(sig, rng, 3, &mut scope, &mut next_var, &mut quant_budget)
}

fn gen<R: Rng>(
    sig: &Signature,
    rng: &mut R,
    depth: usize,
    scope: &mut Vec<String>,
    next_var: &mut usize,
    quant_budget: &mut usize,
) -> Formula {
    if scope.is_empty() || (depth > 0 && *quant_budget > 0 && rng.gen_bool(0.35)) {
        *quant_budget = quant_budget.saturating_sub(1);
        let count = if rng.gen_bool(0.3) { 2 } else { 1 };
        let vars: Vec<String> = (0..count)
            .map(|_| {
                let v = format!("v{next_var}");
                *next_var += 1;
                v
            })
            .collect();
        scope.extend(vars.iter().cloned());
        let body = gen(
            sig,
            rng,
            depth.saturating_sub(1),
            scope,
            next_var,
            quant_budget,
        );
        scope.truncate(scope.len() - vars.len());
        return if rng.gen_bool(0.5) {
            Formula::Forall(vars, Box::new(body))
        } else {
            Formula::Exists(vars, Box::new(body))
        };
    }
    if depth == 0 || rng.gen_bool(0.3) {
        return atom(sig, rng, scope);
    }
    let a = gen(sig, rng, depth - 1, scope, next_var, quant_budget);
    match rng.gen_range(0..5) {
        0 => Formula::negate(a),
        1 => Formula::and(a, gen(sig, rng, depth - 1, scope, next_var, quant_budget)),
        2 => Formula::or(a, gen(sig, rng, depth - 1, scope, next_var, quant_budget)),
        3 => Formula::implies(a, gen(sig, rng, depth - 1, scope, next_var, quant_budget)),
        _ => Formula::iff(a, gen(sig, rng, depth - 1, scope, next_var, quant_budget)),
    }
}

fn atom<R: Rng>(sig: &Signature, rng: &mut R, scope: &[String]) -> Formula {
    let pick = |rng: &mut R| Term::var(scope.choose(rng).expect("nonempty scope"));
    let rels: Vec<(&String, usize)> = sig.rels().collect();
    if rels.is_empty() || rng.gen_bool(0.3) {
        Formula::Eq(pick(rng), pick(rng))
    } else {
        let (name, arity) = rels[rng.gen_range(0..rels.len())];
        Formula::Rel(name.clone(), (0..arity).map(|_| pick(rng)).collect())
    }
}

/// An atom or short boolean combination over the given variables.
fn simple_formula<R: Rng>(sig: &Signature, rng: &mut R, vars: &[String]) -> Formula {
    let a = atom(sig, rng, vars);
    match rng.gen_range(0..4) {
        0 => a,
        1 => Formula::negate(a),
        2 => Formula::and(a, atom(sig, rng, vars)),
        _ => Formula::or(a, atom(sig, rng, vars)),
    }
}

fn block(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("{prefix}{i}")).collect()
}

/// A random admissible interpretation package of the given dimension from a
/// relational host signature onto a relational target signature.
pub fn random_interpretation<R: Rng>(
    host_sig: &Signature,
    target_sig: &Signature,
    dim: usize,
    host_size: usize,
    rng: &mut R,
) -> InterpretationData {
    assert!(target_sig.is_relational());
    let phi_vars = block("y", dim);
    let (params, param_values) = if rng.gen_bool(0.3) && host_size > 0 {
        (vec!["pp".to_owned()], vec![rng.gen_range(0..host_size)])
    } else {
        (vec![], vec![])
    };

    // domain: everything, or cut out by a simple condition (which may
    // mention the parameter)
    let trivial = Formula::Eq(Term::var(&phi_vars[0]), Term::var(&phi_vars[0]));
    let phi = if rng.gen_bool(0.5) {
        trivial
    } else {
        let mut vars = phi_vars.clone();
        vars.extend(params.iter().cloned());
        Formula::or(
            simple_formula(host_sig, rng, &vars),
            atom(host_sig, rng, &vars),
        )
    };

    // kernel: agreement on one or two key formulas (always an equivalence),
    // or plain tuple equality
    let u = block("u", dim);
    let v = block("v", dim);
    let psi = if rng.gen_bool(0.3) {
        Formula::and_all(
            (0..dim)
                .map(|i| Formula::Eq(Term::var(&u[i]), Term::var(&v[i])))
                .collect(),
        )
    } else {
        let keys = if rng.gen_bool(0.3) { 2 } else { 1 };
        Formula::and_all(
            (0..keys)
                .map(|_| {
                    let theta = simple_formula(host_sig, rng, &u);
                    let rename: BTreeMap<String, String> =
                        u.iter().cloned().zip(v.iter().cloned()).collect();
                    let theta_v = theta.rename_free(&rename);
                    Formula::iff(theta, theta_v)
                })
                .collect(),
        )
    };

    // defining formulas, saturated under the kernel so compatibility holds
    let mut xi = BTreeMap::new();
    for (sym, arity) in target_sig.rels() {
        let blocks: Vec<Vec<String>> = (0..arity).map(|i| block(&format!("g{i}x"), dim)).collect();
        let z_blocks: Vec<Vec<String>> =
            (0..arity).map(|i| block(&format!("z{i}x"), dim)).collect();
        let core_vars: Vec<String> = z_blocks.iter().flatten().cloned().collect();
        let core = simple_formula(host_sig, rng, &core_vars);
        let mut parts = Vec::new();
        for (yb, zb) in blocks.iter().zip(&z_blocks) {
            let mut map: BTreeMap<String, String> = BTreeMap::new();
            map.extend(u.iter().cloned().zip(yb.iter().cloned()));
            map.extend(v.iter().cloned().zip(zb.iter().cloned()));
            parts.push(psi.rename_free(&map));
        }
        parts.push(core);
        let formula = Formula::Exists(
            z_blocks.iter().flatten().cloned().collect(),
            Box::new(Formula::and_all(parts)),
        );
        xi.insert(sym.clone(), (blocks, formula));
    }

    InterpretationData {
        dim,
        target_sig: target_sig.clone(),
        params,
        param_values,
        phi_vars,
        phi,
        psi_vars: (u, v),
        psi,
        xi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn host_sig() -> Signature {
        Signature::new().with_rel("p", 1).with_rel("e", 2)
    }

    fn target_sig() -> Signature {
        Signature::new().with_rel("s", 2)
    }

    #[test]
    fn generated_packages_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for round in 0..20 {
            let host = random_structure(&host_sig(), 3, &mut rng);
            let dim = 1 + round % 2;
            let data = random_interpretation(&host_sig(), &target_sig(), dim, 3, &mut rng);
            assert!(data.admissible(&host).unwrap(), "round {round}");
        }
    }

    #[test]
    fn generated_sentences_are_sentences() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let alpha = random_sentence(&target_sig(), &mut rng, 3);
            assert!(alpha.is_sentence(), "{alpha}");
            assert!(alpha.well_formed(&target_sig()).is_ok());
        }
    }

    #[test]
    fn equivalence_on_generated_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..10 {
            let host = random_structure(&host_sig(), 3, &mut rng);
            let data =
                random_interpretation(&host_sig(), &target_sig(), 1 + round % 2, 3, &mut rng);
            for _ in 0..3 {
                let alpha = random_sentence(&target_sig(), &mut rng, 2);
                assert!(
                    data.equivalence_holds(&host, &alpha).unwrap(),
                    "round {round}: {alpha}"
                );
            }
        }
    }
}
