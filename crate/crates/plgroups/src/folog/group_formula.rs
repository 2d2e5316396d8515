//! The defining formula for the wreath-product copy inside the
//! homeomorphism group, kept as first-order data over the group signature
//! with constants `a`, `b`, plus bounded-witness demonstrations evaluated
//! directly at the group level (the group itself is never a finite model).

use crate::constructions::Generators;
use crate::folog::syntax::{Formula, Signature, Term};
use crate::plmap::PLMap;
use crate::wreath::WreathElement;

/// Group signature with named generator constants: `mul/2`, `inv/1`,
/// `a/0`, `b/0`.
pub fn group_signature() -> Signature {
    Signature::new()
        .with_func("mul", 2)
        .with_func("inv", 1)
        .with_func("a", 0)
        .with_func("b", 0)
}

fn mul(lhs: Term, rhs: Term) -> Term {
    Term::app("mul", vec![lhs, rhs])
}

fn inv(t: Term) -> Term {
    Term::app("inv", vec![t])
}

/// `t^k` for `k ≥ 1`, as a left-associated product.
fn pow(t: &Term, k: u32) -> Term {
    assert!(k >= 1);
    let mut acc = t.clone();
    for _ in 1..k {
        acc = mul(acc, t.clone());
    }
    acc
}

/// The membership formula for the subgroup generated by `a` and `b`, with
/// root exponents `s`, `t`:
///
/// `∃y,z (x = y^s z^t ∧ ya = ay ∧ ∀w (wa = aw → z·w⁻ˢbwˢ = w⁻ˢbwˢ·z))`
pub fn membership_formula(s: u32, t: u32) -> Formula {
    assert!(s >= 1 && t >= 1);
    let (x, y, z, w) = (
        Term::var("x"),
        Term::var("y"),
        Term::var("z"),
        Term::var("w"),
    );
    let a = Term::app("a", vec![]);
    let b = Term::app("b", vec![]);
    let value = mul(pow(&y, s), pow(&z, t));
    let y_central = Formula::Eq(mul(y.clone(), a.clone()), mul(a.clone(), y.clone()));
    let conj = mul(mul(pow(&inv(w.clone()), s), b), pow(&w, s));
    let guard = Formula::Eq(mul(w.clone(), a.clone()), mul(a, w));
    let commutes = Formula::Eq(mul(z.clone(), conj.clone()), mul(conj, z));
    Formula::exists(
        &["y", "z"],
        Formula::and_all(vec![
            Formula::Eq(x, value),
            y_central,
            Formula::forall(&["w"], Formula::implies(guard, commutes)),
        ]),
    )
}

/// For a member given by its normal form, builds the witnesses
/// `y = c^shift` and `z = Π d_{k+shift}^{e_k}` and checks the matrix of the
/// membership formula with the universal quantifier ranging over the pool
/// `{c^j : |j| ≤ pool_radius}`.
pub fn verify_membership_witness(gens: &Generators, u: &WreathElement, pool_radius: i64) -> bool {
    let x = u.embed(gens);
    let (s, t) = (gens.s as i64, gens.t as i64);
    let y = gens.c.power(u.shift());
    let mut z = PLMap::identity(gens.ctx());
    for (&k, &e) in u.coeffs() {
        z = z.compose(&gens.root_map(k + u.shift()).power(e));
    }
    if y.power(s).compose(&z.power(t)) != x {
        return false;
    }
    if !y.commutes(&gens.a) {
        return false;
    }
    for j in -pool_radius..=pool_radius {
        let w = gens.c.power(j);
        if w.commutes(&gens.a) {
            let conj = w.power(-s).compose(&gens.b).compose(&w.power(s));
            if !z.commutes(&conj) {
                return false;
            }
        }
    }
    true
}

/// Searches a bounded pool for witnesses `(y, z)` making the matrix of the
/// membership formula true for `x`. One-sided evidence: `None` means no
/// witness exists in the pool, not that `x` is a non-member.
pub fn search_witness_in_pool(gens: &Generators, x: &PLMap, radius: i64) -> Option<(PLMap, PLMap)> {
    let (s, t) = (gens.s as i64, gens.t as i64);
    // candidate base parts: short products of the root maps on rungs -1..1
    let mut zs = Vec::new();
    for e_lo in -radius..=radius {
        for e_mid in -radius..=radius {
            for e_hi in -radius..=radius {
                let z = gens
                    .root_map(-1)
                    .power(e_lo)
                    .compose(&gens.root_map(0).power(e_mid))
                    .compose(&gens.root_map(1).power(e_hi));
                zs.push(z);
            }
        }
    }
    for j in -radius..=radius {
        let y = gens.c.power(j);
        if !y.commutes(&gens.a) {
            continue;
        }
        for z in &zs {
            if &y.power(s).compose(&z.power(t)) == x {
                let universal = (-radius..=radius).all(|i| {
                    let w = gens.c.power(i);
                    let conj = w.power(-s).compose(&gens.b).compose(&w.power(s));
                    z.commutes(&conj)
                });
                if universal {
                    return Some((y, z.clone()));
                }
            }
        }
    }
    None
}
