//! The deterministic property campaign behind `selftest`: every check is a
//! named pass/fail with a detail line, reproducible from the seed alone.
//! Reports are sorted by check name, independent of execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::PLBijection;
use crate::constructions::{make_bump, Generators};
use crate::folog;
use crate::folog::random::{random_interpretation, random_sentence, random_structure};
use crate::interp;
use crate::numbers::{int, rat, GroupContext, Rational};
use crate::plmap::PLMap;
use crate::sampling::{random_bijection, random_plmap, random_plmap_product};
use crate::wreath::{self, WreathElement};
use crate::{commutators, IntervalSet};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Check {
            name: name.to_owned(),
            pass,
            detail,
        }
    }
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let salt: u64 = name
        .bytes()
        .fold(0u64, |acc, b| acc.wrapping_mul(131).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs only the logic checks (reduction soundness and relationalization).
pub fn run_logic_campaign(seed: u64, trials: usize) -> Vec<Check> {
    let mut checks = vec![
        reduce_equivalence(seed, trials),
        relationalize_truth(seed, trials),
    ];
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    checks
}

/// Runs the whole campaign; `trials` scales the randomized checks.
pub fn run_campaign(seed: u64, trials: usize) -> Vec<Check> {
    let mut checks = vec![
        group_axioms(seed, trials),
        chain_rule(seed, trials),
        conjugate_support(seed, trials),
        commuting_permutes_support(seed, trials),
        power_support(seed, trials),
        continuity_no_counterexample(seed, trials),
        bump_grid(),
        ladder_anchor(),
        wreath_round_trip(seed, trials),
        gadget_cosets(),
        gadget_multiplication(),
        gadget_four_squares(trials),
        arith_addition(),
        arith_divisibility(),
        code_kernel(seed, trials),
        predicate_partition(seed, trials),
        reduce_equivalence(seed, trials),
        relationalize_truth(seed, trials),
        commutator_decomposition(seed, trials),
    ];
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    checks
}

fn ctx() -> GroupContext {
    GroupContext::thompson()
}

fn group_axioms(seed: u64, trials: usize) -> Check {
    let name = "group-axioms";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let x = random_plmap(&c, &mut rng, 4);
        let y = random_plmap(&c, &mut rng, 3);
        let z = random_plmap(&c, &mut rng, 3);
        if x.compose(&y).compose(&z) != x.compose(&y.compose(&z))
            || !x.compose(&x.inverse()).is_identity()
            || x.compose(&PLMap::identity(&c)) != x
        {
            return Check::new(name, false, format!("violated at trial {i}"));
        }
    }
    Check::new(name, true, format!("{n} random word evaluations"))
}

fn chain_rule(seed: u64, trials: usize) -> Check {
    let name = "chain-rule";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let f = random_plmap_product(&c, &mut rng, 3);
        let g = random_plmap(&c, &mut rng, 3);
        let fg = f.compose(&g);
        for (x, _) in fg.breakpoints() {
            if x >= c.r() {
                continue;
            }
            let lhs = fg.slope_right(x);
            let rhs = f.slope_right(x) * g.slope_right(&f.evaluate(x));
            if lhs != rhs {
                return Check::new(name, false, format!("trial {i} at {x}: {lhs} vs {rhs}"));
            }
        }
    }
    Check::new(name, true, format!("{n} composed pairs, every breakpoint"))
}

fn conjugate_support(seed: u64, trials: usize) -> Check {
    let name = "conjugate-support";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let f = random_plmap(&c, &mut rng, 3);
        let g = random_plmap(&c, &mut rng, 3);
        let conj = f.conjugate(&g);
        if conj.support() != f.support().image_under(&g) {
            return Check::new(name, false, format!("support image failed at trial {i}"));
        }
        let fix_image: Vec<_> = f
            .fix_intervals()
            .iter()
            .map(|(lo, hi)| (g.evaluate(lo), g.evaluate(hi)))
            .collect();
        if fix_image != conj.fix_intervals() {
            return Check::new(name, false, format!("fix image failed at trial {i}"));
        }
    }
    Check::new(name, true, format!("{n} random pairs, both equalities"))
}

fn commuting_permutes_support(seed: u64, trials: usize) -> Check {
    let name = "commuting-permutes-support";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let (a1, b1, a2, b2) = (rat(1, 4), rat(3, 8), rat(1, 16), rat(7, 16));
    let exp = crate::constructions::largest_squeeze_exp(&c, &a1, &b1, &a2, &b2)
        .expect("nested windows admit a squeeze");
    let squeezer = crate::constructions::squeeze_conjugator(&c, &a1, &b1, &a2, &b2, exp)
        .expect("exponent chosen admissible");
    let n = trials.max(10);
    let mut commuting = 0usize;
    for i in 0..n {
        // commuting pairs: powers of one element, or disjoint supports
        let (f, g) = match i % 3 {
            0 => {
                let f = random_plmap(&c, &mut rng, 3);
                let g = f.power(rng.gen_range(2..=4));
                (f, g)
            }
            1 => {
                let f = random_plmap(&c, &mut rng, 3);
                let g = f.power(-(rng.gen_range(1..=3)));
                (f, g)
            }
            _ => {
                let f = crate::constructions::squeeze(&random_plmap(&c, &mut rng, 4), &squeezer);
                let g = make_bump(&c, &rat(1, 2), &int(1), rng.gen_range(1..=2), -1)
                    .expect("valid window");
                (f, g)
            }
        };
        if !f.commutes(&g) {
            return Check::new(
                name,
                false,
                format!("constructed pair fails to commute at {i}"),
            );
        }
        commuting += 1;
        if f.support().image_under(&g) != f.support() {
            return Check::new(name, false, format!("support not permuted at trial {i}"));
        }
    }
    Check::new(name, true, format!("{commuting} commuting pairs exercised"))
}

fn power_support(seed: u64, trials: usize) -> Check {
    let name = "power-support";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let f = random_plmap(&c, &mut rng, 3);
        let supp = f.support();
        for m in [-3i64, -2, -1, 1, 2, 3] {
            if f.power(m).support() != supp {
                return Check::new(name, false, format!("power {m} at trial {i}"));
            }
        }
    }
    Check::new(name, true, format!("{n} elements, powers -3..3"))
}

fn continuity_no_counterexample(seed: u64, trials: usize) -> Check {
    let name = "continuity-no-counterexample";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let z = make_bump(&c, &int(0), &int(1), 1, -1)
        .expect("full bump")
        .to_bijection();
    let n = trials.max(10);
    let mut commuting = 0usize;
    for i in 0..n {
        // random right-continuous bijections, plus structured candidates
        // biased toward commuting with the full bump
        let v = match i % 4 {
            0 | 1 => random_bijection(&c, &mut rng, 4),
            2 => {
                let w = random_bijection(&c, &mut rng, 3);
                w.inverse().compose(&z).compose(&w)
            }
            _ => {
                let rot = PLBijection::rotation(&c, &rat(1, 2)).expect("rotation");
                rot.compose(&random_bijection(&c, &mut rng, 2))
            }
        };
        if !v.commutes(&z) {
            continue;
        }
        commuting += 1;
        if !v.is_continuous() {
            return Check::new(
                name,
                false,
                format!("discontinuous commuting bijection found at trial {i}"),
            );
        }
    }
    // powers of the bump commute by construction; make sure the campaign
    // exercised at least those
    for m in 1..=3 {
        let mut p = z.clone();
        for _ in 1..m {
            p = p.compose(&z);
        }
        commuting += 1;
        if !p.commutes(&z) || !p.is_continuous() {
            return Check::new(name, false, format!("bump power {m} misbehaved"));
        }
    }
    Check::new(
        name,
        true,
        format!("{commuting} commuting candidates, all continuous"),
    )
}

fn bump_grid() -> Check {
    let name = "bump-grid";
    let c = ctx();
    let windows = [
        (int(0), int(1)),
        (int(0), rat(1, 2)),
        (rat(1, 2), int(1)),
        (rat(1, 4), rat(3, 4)),
        (rat(1, 8), rat(1, 2)),
    ];
    let mut count = 0;
    for p in 1..=3i64 {
        for q in 1..=3i64 {
            for (lo, hi) in &windows {
                let bump = match make_bump(&c, lo, hi, p, -q) {
                    Ok(b) => b,
                    Err(e) => return Check::new(name, false, format!("builder failed: {e}")),
                };
                let ok = bump.support() == IntervalSet::single(lo.clone(), hi.clone())
                    && bump.slope_right(lo) == c.slope(p)
                    && bump.slope_left(hi) == c.slope(-q)
                    && bump.is_upward()
                    && bump
                        .breakpoints()
                        .iter()
                        .all(|(x, y)| c.in_ring(x) && c.in_ring(y));
                if !ok {
                    return Check::new(name, false, format!("grid point p={p} q={q} [{lo};{hi}]"));
                }
                count += 1;
            }
        }
    }
    Check::new(name, true, format!("{count} grid points"))
}

fn ladder_anchor() -> Check {
    let name = "ladder-anchor";
    let gens = Generators::thompson();
    let expected = |k: i64| -> Rational {
        if k < 0 {
            // 2^(2k - 1)
            rat(1, 1 << (1 - 2 * k))
        } else {
            int(1) - rat(1, 1 << (1 + 2 * k))
        }
    };
    for k in -5..=6i64 {
        if gens.alpha(k) != expected(k) {
            return Check::new(name, false, format!("alpha({k}) = {}", gens.alpha(k)));
        }
    }
    for k in -5..=5i64 {
        let supp = gens.basis_map(k).support();
        if supp != IntervalSet::single(expected(k), expected(k + 1)) {
            return Check::new(name, false, format!("support of rung {k} is {supp}"));
        }
    }
    Check::new(name, true, "rungs -5..=5 match the closed forms".into())
}

fn wreath_round_trip(seed: u64, trials: usize) -> Check {
    let name = "wreath-round-trip";
    let gens = Generators::build(&ctx(), &rat(1, 2), 1, 1).expect("generators");
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let shift = rng.gen_range(-5..=5);
        let lo = rng.gen_range(-4..=0);
        let width = rng.gen_range(0..=6usize);
        let mut coeffs = std::collections::BTreeMap::new();
        for k in lo..lo + width as i64 {
            let e = rng.gen_range(-3..=3);
            if e != 0 {
                coeffs.insert(k, e);
            }
        }
        let u = WreathElement::new(shift, coeffs);
        let x = u.embed(&gens);
        if x.is_identity() != u.is_identity() {
            return Check::new(name, false, format!("injectivity failed at trial {i}"));
        }
        if wreath::wreath_decompose(&x, &gens) != Some(u) {
            return Check::new(name, false, format!("round trip failed at trial {i}"));
        }
    }
    Check::new(name, true, format!("{n} normal forms"))
}

fn gadget_cosets() -> Check {
    let name = "gadget-cosets";
    for m in -12i64..=12 {
        for k in -12i64..=12 {
            let g = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(k));
            let expected = if m == 0 { k == 0 } else { k % m == 0 };
            if g.in_shift_coset(m) != expected {
                return Check::new(name, false, format!("m={m} k={k}"));
            }
        }
    }
    Check::new(
        name,
        true,
        "divisibility via shifts for |m|,|k| <= 12".into(),
    )
}

fn gadget_multiplication() -> Check {
    let name = "gadget-multiplication";
    for k in -12i64..=12 {
        for l in -12i64..=12 {
            match wreath::mul_from_add_div(k, l, 12) {
                Ok(n) if n == k * l => {}
                other => return Check::new(name, false, format!("({k}, {l}) gave {other:?}")),
            }
        }
    }
    Check::new(
        name,
        true,
        "identity-based products for |k|,|l| <= 12".into(),
    )
}

fn gadget_four_squares(trials: usize) -> Check {
    let name = "gadget-four-squares";
    let top = (trials.max(10) * 10) as u64;
    for k in 0..=top {
        let w = wreath::four_squares(k);
        if w.iter().map(|v| v * v).sum::<u64>() != k {
            return Check::new(name, false, format!("k = {k}"));
        }
    }
    Check::new(name, true, format!("all k <= {top}"))
}

fn arith_addition() -> Check {
    let name = "arith-addition";
    let c = ctx();
    let encode = |k| interp::encode_nat(&c, k).expect("positive");
    for i in 1..=12i64 {
        for j in 1..=12i64 {
            let (x, y) = (encode(i), encode(j));
            let good = interp::add_bridge(&x, &y, &encode(i + j)).expect("in the coding set");
            let bad = interp::add_bridge(&x, &y, &encode(i + j + 1)).expect("in the coding set");
            if !good || bad {
                return Check::new(name, false, format!("({i}, {j})"));
            }
        }
    }
    Check::new(
        name,
        true,
        "agrees with integer addition on [1;12]^2".into(),
    )
}

fn arith_divisibility() -> Check {
    let name = "arith-divisibility";
    let c = ctx();
    let encode = |k| interp::encode_nat(&c, k).expect("positive");
    let mut witnesses = 0usize;
    for i in 1..=12i64 {
        for j in 1..=12i64 {
            let (x, y) = (encode(i), encode(j));
            let bridged = interp::divides_bridge(&x, &y).expect("in the coding set");
            if bridged != (j % i == 0) {
                return Check::new(name, false, format!("({i}, {j})"));
            }
            let witness = interp::divides_witness(&x, &y).expect("in the coding set");
            match witness {
                Some(w) => {
                    witnesses += 1;
                    if !interp::classify(&y.compose(&w.w)).in_f_circle() {
                        return Check::new(name, false, format!("witness failed at ({i}, {j})"));
                    }
                }
                None if bridged => {
                    return Check::new(name, false, format!("missing witness at ({i}, {j})"))
                }
                None => {}
            }
        }
    }
    Check::new(
        name,
        true,
        format!("{witnesses} divisible pairs with verified witnesses"),
    )
}

fn code_kernel(seed: u64, trials: usize) -> Check {
    let name = "code-kernel";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    let splits = [rat(1, 2), rat(1, 4), rat(3, 4), rat(7, 8)];
    for i in 0..n {
        let k1 = rng.gen_range(1..=6);
        let k2 = rng.gen_range(1..=6);
        let g1 = &splits[rng.gen_range(0..splits.len())];
        let g2 = &splits[rng.gen_range(0..splits.len())];
        let x = interp::encode_nat_at(&c, k1, g1).expect("positive");
        let y = interp::encode_nat_at(&c, k2, g2).expect("positive");
        let same_code = k1 == k2;
        let kernel = interp::classify(&x.compose(&y.inverse())).in_f_circle();
        if same_code != kernel {
            return Check::new(name, false, format!("trial {i}: k1={k1} k2={k2}"));
        }
    }
    Check::new(name, true, format!("{n} code pairs"))
}

fn predicate_partition(seed: u64, trials: usize) -> Check {
    let name = "predicate-partition";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let n = trials.max(10);
    for i in 0..n {
        let x = random_plmap_product(&c, &mut rng, 3);
        let cl = interp::classify(&x);
        let ok = (cl.in_f_circle() == !cl.in_e())
            && (!cl.in_e2() || cl.in_e())
            && !(cl.in_p_plus() && cl.in_p_minus())
            && (!cl.in_u() || (cl.in_e2() && !cl.in_p()));
        if !ok {
            return Check::new(name, false, format!("trial {i}: ({}, {})", cl.s0, cl.sr));
        }
        let y = random_plmap(&c, &mut rng, 3);
        if !interp::classify(&x.commutator(&y)).in_f_circle() {
            return Check::new(name, false, format!("commutator escaped at trial {i}"));
        }
    }
    Check::new(name, true, format!("{n} random elements"))
}

fn reduce_equivalence(seed: u64, trials: usize) -> Check {
    let name = "reduce-equivalence";
    let mut rng = rng_for(seed, name);
    let host_sig = folog::Signature::new().with_rel("p", 1).with_rel("e", 2);
    let target_sig = folog::Signature::new().with_rel("s", 2);
    let packages = (trials / 20).clamp(3, 10);
    let sentences = (trials / 10).clamp(5, 30);
    let mut cases = 0usize;
    for round in 0..packages {
        let size = rng.gen_range(2..=4);
        let host = random_structure(&host_sig, size, &mut rng);
        let dim = 1 + round % 2;
        let data = random_interpretation(&host_sig, &target_sig, dim, size, &mut rng);
        match data.admissible(&host) {
            Ok(true) => {}
            other => return Check::new(name, false, format!("package {round}: {other:?}")),
        }
        for _ in 0..sentences {
            let alpha = random_sentence(&target_sig, &mut rng, 2);
            match data.equivalence_holds(&host, &alpha) {
                Ok(true) => cases += 1,
                other => {
                    return Check::new(
                        name,
                        false,
                        format!("{alpha} on package {round}: {other:?}"),
                    )
                }
            }
        }
    }
    Check::new(name, true, format!("{cases} sentence/package instances"))
}

fn relationalize_truth(seed: u64, trials: usize) -> Check {
    let name = "relationalize-truth";
    let mut rng = rng_for(seed, name);
    let sig = folog::Signature::new()
        .with_rel("lt", 2)
        .with_func("f", 1)
        .with_func("c", 0);
    let corpus = [
        "forall x lt(x, f(x)) | x = f(x) | lt(f(x), x)",
        "exists x f(x) = x",
        "forall x, y (lt(x, y) -> lt(x, f(y)) | f(y) = y | lt(f(y), y))",
        "exists x f(f(x)) = c()",
        "forall x (x = c() -> lt(x, f(x)) | !lt(x, f(x)))",
        "exists x, y (lt(x, y) & f(x) = f(y))",
        "forall x exists y f(y) = x | !(f(y) = x)",
        "exists x !(f(x) = c())",
        "forall x f(x) = f(x)",
        "exists x lt(f(x), f(f(x)))",
        "forall x, y (f(x) = f(y) -> x = y) | exists x, y (!(x = y) & f(x) = f(y))",
        "exists x (lt(c(), x) <-> lt(x, c()))",
        "forall x exists y lt(x, y) | lt(y, x) | x = y",
        "exists x forall y (lt(y, x) -> lt(f(y), f(x)) | !lt(f(y), f(x)))",
        "forall x (f(x) = c() -> f(f(x)) = f(c()))",
        "exists x, y (f(x) = y & f(y) = x)",
        "forall x !lt(x, x) | exists y lt(y, y)",
        "exists x lt(c(), f(x)) & exists y lt(f(y), c()) | forall z f(z) = f(z)",
        "forall x, y (lt(x, y) & lt(y, x) -> x = y)",
        "exists x (f(x) = x <-> lt(x, c()))",
    ];
    let rounds = (trials / 40).clamp(2, 6);
    let mut cases = 0usize;
    for _ in 0..rounds {
        let size = rng.gen_range(2..=4);
        let mut m = folog::FiniteStructure::new(sig.clone(), size);
        let table: Vec<usize> = (0..size).map(|_| rng.gen_range(0..size)).collect();
        let cval = rng.gen_range(0..size);
        m.set_func("f", |args| table[args[0]]).expect("in range");
        m.set_func("c", |_| cval).expect("in range");
        let tuples: Vec<Vec<usize>> = (0..size)
            .flat_map(|a| (0..size).map(move |b| vec![a, b]))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        m.set_rel("lt", tuples).expect("in range");
        let m2 = match folog::relationalize_structure(&m) {
            Ok(m2) => m2,
            Err(e) => return Check::new(name, false, format!("structure transform: {e}")),
        };
        for text in corpus {
            let alpha = folog::parse(text).expect("corpus parses");
            let alpha2 = match folog::relationalize_sentence(&alpha, m.sig()) {
                Ok(a) => a,
                Err(e) => return Check::new(name, false, format!("sentence transform: {e}")),
            };
            let lhs = m.evaluate(&alpha, &folog::Assignment::new());
            let rhs = m2.evaluate(&alpha2, &folog::Assignment::new());
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => cases += 1,
                other => return Check::new(name, false, format!("{text}: {other:?}")),
            }
        }
    }
    Check::new(name, true, format!("{cases} sentence/structure instances"))
}

fn commutator_decomposition(seed: u64, trials: usize) -> Check {
    let name = "commutator-decomposition";
    let c = ctx();
    let mut rng = rng_for(seed, name);
    let lists = (trials / 20).clamp(3, 15);
    for i in 0..lists {
        let len = 3 + i % 4;
        let pairs: Vec<_> = (0..len)
            .map(|_| {
                commutators::CommutatorPair::new(
                    random_plmap(&c, &mut rng, 3),
                    random_plmap(&c, &mut rng, 3),
                )
            })
            .collect();
        let original = commutators::product(&pairs);
        match commutators::decompose_to_two(&pairs) {
            Ok((p, q)) => {
                if p.value().compose(&q.value()) != original {
                    return Check::new(name, false, format!("product mismatch at list {i}"));
                }
                let circle = [&p.x, &p.y, &q.x, &q.y]
                    .iter()
                    .all(|e| interp::classify(e).in_f_circle());
                if !circle {
                    return Check::new(name, false, format!("entry outside F-circle at list {i}"));
                }
            }
            Err(e) => return Check::new(name, false, format!("list {i}: {e}")),
        }
    }
    Check::new(name, true, format!("{lists} lists of length 3..6"))
}
