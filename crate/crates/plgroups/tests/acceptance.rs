//! End-to-end acceptance suite: one test per criterion, every comparison
//! exact (tolerance zero). Each criterion prints a PASS line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plgroups::commutators::{decompose_to_two, product, CommutatorPair};
use plgroups::constructions::{make_bump, standard_generators, Generators};
use plgroups::folog::random::{random_interpretation, random_sentence, random_structure};
use plgroups::folog::{parse, Formula, Signature, Term};
use plgroups::interp::{add_bridge, classify, divides_bridge, divides_witness, encode_nat};
use plgroups::numbers::{int, rat};
use plgroups::sampling::{random_bijection, random_plmap, random_plmap_product};
use plgroups::wreath::{four_squares, mul_from_add_div, wreath_decompose, WreathElement};
use plgroups::{GroupContext, IntervalSet, Rational};

fn report(criterion: &str, started: Instant, budget_secs: u64) {
    let elapsed = started.elapsed();
    println!(
        "CHECK acceptance-{criterion} PASS ({} ms)",
        elapsed.as_millis()
    );
    assert!(
        elapsed.as_secs() < budget_secs,
        "criterion {criterion} exceeded its {budget_secs}s budget"
    );
}

fn ctx() -> GroupContext {
    GroupContext::thompson()
}

/// Criterion 1: the standard-pair instance hits the closed-form ladder:
/// `α_k = 2^(2k-1)` below the base and `1 - 2^(-1-2k)` above, with the
/// conjugated basis elements supported on consecutive rungs.
#[test]
fn criterion_1_thompson_anchor() {
    let t0 = Instant::now();
    let c = ctx();
    let (x0, _) = standard_generators(&c);
    assert_eq!(x0.support(), IntervalSet::single(int(0), int(1)));
    let gens = Generators::thompson();
    let alpha = |k: i64| -> Rational {
        if k < 0 {
            rat(1, 1i64 << (1 - 2 * k))
        } else {
            int(1) - rat(1, 1i64 << (1 + 2 * k))
        }
    };
    assert_eq!(alpha(-1), rat(1, 8));
    assert_eq!(alpha(0), rat(1, 2));
    assert_eq!(alpha(1), rat(7, 8));
    for k in -5..=6i64 {
        assert_eq!(gens.alpha(k), alpha(k), "ladder point {k}");
    }
    for k in -5..=5i64 {
        let basis = gens.basis_map(k);
        assert_eq!(
            basis.support(),
            IntervalSet::single(alpha(k), alpha(k + 1)),
            "support of rung {k}"
        );
        assert!(basis.is_upward(), "rung {k} moves points up");
    }
    report("1-thompson-anchor", t0, 1);
}

/// Criterion 2: the one-sided chain rule holds exactly at every breakpoint
/// of 1000 random composed pairs.
#[test]
fn criterion_2_chain_rule() {
    let t0 = Instant::now();
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..1000 {
        let f = random_plmap_product(&c, &mut rng, 3);
        let g = random_plmap(&c, &mut rng, 3);
        let fg = f.compose(&g);
        for (x, _) in fg.breakpoints() {
            if x < c.r() {
                assert_eq!(
                    fg.slope_right(x),
                    f.slope_right(x) * g.slope_right(&f.evaluate(x)),
                    "trial {trial} at {x}"
                );
            }
            if x > &int(0) {
                assert_eq!(
                    fg.slope_left(x),
                    f.slope_left(x) * g.slope_left(&f.evaluate(x)),
                    "trial {trial} at {x}"
                );
            }
        }
    }
    report("2-chain-rule", t0, 5);
}

/// Criterion 3: the bump builder delivers exact support, boundary slopes,
/// and upward movement over the whole slope/window grid.
#[test]
fn criterion_3_bump_builder() {
    let t0 = Instant::now();
    let c = ctx();
    let windows = [
        (int(0), int(1)),
        (int(0), rat(1, 2)),
        (rat(1, 2), int(1)),
        (rat(1, 4), rat(3, 4)),
        (rat(1, 8), rat(1, 2)),
    ];
    for p in 1..=3i64 {
        for q in 1..=3i64 {
            for (lo, hi) in &windows {
                let bump = make_bump(&c, lo, hi, p, -q).unwrap();
                assert_eq!(bump.support(), IntervalSet::single(lo.clone(), hi.clone()));
                assert_eq!(bump.slope_right(lo), c.slope(p));
                assert_eq!(bump.slope_left(hi), c.slope(-q));
                assert!(bump.is_upward());
                for (x, y) in bump.breakpoints() {
                    assert!(c.in_ring(x) && c.in_ring(y));
                }
            }
        }
    }
    report("3-bump-builder", t0, 5);
}

/// Criterion 4: wreath normal forms round-trip through the embedding for
/// 1000 random elements (|shift| ≤ 5, |e_k| ≤ 3, support width ≤ 7), and
/// the embedding is injective.
#[test]
fn criterion_4_wreath_round_trip() {
    let t0 = Instant::now();
    let gens = Generators::build(&ctx(), &rat(1, 2), 1, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..1000 {
        let shift = rng.gen_range(-5..=5);
        let lo = rng.gen_range(-4..=0);
        let width = rng.gen_range(0..=7usize);
        let mut coeffs = BTreeMap::new();
        for k in lo..lo + width as i64 {
            let e = rng.gen_range(-3..=3);
            if e != 0 {
                coeffs.insert(k, e);
            }
        }
        let u = WreathElement::new(shift, coeffs);
        let x = u.embed(&gens);
        assert_eq!(
            x.is_identity(),
            u.is_identity(),
            "injectivity at trial {trial}"
        );
        assert_eq!(
            wreath_decompose(&x, &gens),
            Some(u),
            "round trip at trial {trial}"
        );
    }
    report("4-wreath-round-trip", t0, 30);
}

/// Criterion 5: the addition bridge matches integer addition on [1;30]^2
/// (and rejects off-by-one sums), and the divisibility bridge matches
/// integer divisibility with verified witnesses on 50 divisible pairs.
#[test]
fn criterion_5_arithmetic_interpretation() {
    let t0 = Instant::now();
    let c = ctx();
    let mut encoded = BTreeMap::new();
    for k in 1..=61i64 {
        encoded.insert(k, encode_nat(&c, k).unwrap());
    }
    for i in 1..=30i64 {
        for j in 1..=30i64 {
            let (x, y) = (&encoded[&i], &encoded[&j]);
            assert!(
                add_bridge(x, y, &encoded[&(i + j)]).unwrap(),
                "({i}) + ({j})"
            );
            assert!(!add_bridge(x, y, &encoded[&(i + j + 1)]).unwrap());
            if i + j > 1 {
                assert!(!add_bridge(x, y, &encoded[&(i + j - 1)]).unwrap());
            }
            assert_eq!(divides_bridge(x, y).unwrap(), j % i == 0, "({i}) | ({j})");
        }
    }
    let mut witnesses = 0;
    'outer: for i in 1..=30i64 {
        for j in 1..=30i64 {
            if j % i != 0 {
                assert!(divides_witness(&encoded[&i], &encoded[&j])
                    .unwrap()
                    .is_none());
                continue;
            }
            let w = divides_witness(&encoded[&i], &encoded[&j])
                .unwrap()
                .expect("divisible pair has a witness");
            // witness entries vanish at the ends after multiplying in
            assert!(classify(&encoded[&j].compose(&w.w)).in_f_circle());
            assert!(classify(&w.z).in_f_circle());
            assert!(w.w.commutes(&encoded[&i].compose(&w.z)));
            witnesses += 1;
            if witnesses == 50 {
                break 'outer;
            }
        }
    }
    assert_eq!(witnesses, 50);
    report("5-arithmetic-interpretation", t0, 60);
}

/// Criterion 6: shift cosets express divisibility for |m|,|k| ≤ 12,
/// multiplication is recovered from addition and divisibility for
/// |k|,|l| ≤ 30, and four-square witnesses exist for all k ≤ 10^4.
#[test]
fn criterion_6_wreath_gadgets() {
    let t0 = Instant::now();
    for m in -12i64..=12 {
        for k in -12i64..=12 {
            let g = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(k));
            let expected = if m == 0 { k == 0 } else { k % m == 0 };
            assert_eq!(g.in_shift_coset(m), expected, "m={m} k={k}");
        }
    }
    for k in -30i64..=30 {
        for l in -30i64..=30 {
            assert_eq!(mul_from_add_div(k, l, 30).unwrap(), k * l, "({k}, {l})");
        }
    }
    for k in 0..=10_000u64 {
        let w = four_squares(k);
        assert_eq!(w.iter().map(|v| v * v).sum::<u64>(), k, "k = {k}");
    }
    report("6-wreath-gadgets", t0, 30);
}

/// Criterion 7: reduction soundness — 30 random relational sentences times
/// 10 random admissible packages on hosts with at most 4 elements and
/// dimension at most 2, plus the worked reduction example reproduced
/// structurally.
#[test]
fn criterion_7_interpretation_compiler() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let host_sig = Signature::new().with_rel("p", 1).with_rel("e", 2);
    let target_sig = Signature::new().with_rel("s", 2);
    let mut packages = Vec::new();
    while packages.len() < 10 {
        let size = rng.gen_range(2..=4);
        let host = random_structure(&host_sig, size, &mut rng);
        let dim = 1 + packages.len() % 2;
        let data = random_interpretation(&host_sig, &target_sig, dim, size, &mut rng);
        assert!(data.admissible(&host).unwrap());
        packages.push((host, data));
    }
    let sentences: Vec<Formula> = (0..30)
        .map(|_| random_sentence(&target_sig, &mut rng, 2))
        .collect();
    for (pi, (host, data)) in packages.iter().enumerate() {
        for (si, alpha) in sentences.iter().enumerate() {
            assert!(
                data.equivalence_holds(host, alpha).unwrap(),
                "package {pi}, sentence {si}: {alpha}"
            );
        }
    }

    // the worked pair: functionality of a binary relation
    let alpha = parse("forall y1, y2, y3 (sigma(y1, y2) & sigma(y1, y3) -> y2 = y3)").unwrap();
    let sig = Signature::new().with_rel("sigma", 2);
    let data = plgroups::folog::InterpretationData {
        dim: 1,
        target_sig: sig,
        params: vec!["x1".into()],
        param_values: vec![0],
        phi_vars: vec!["u".into()],
        phi: Formula::rel("phi", vec![Term::var("x1"), Term::var("u")]),
        psi_vars: (vec!["u".into()], vec!["v".into()]),
        psi: Formula::rel("psi", vec![Term::var("x1"), Term::var("u"), Term::var("v")]),
        xi: BTreeMap::from([(
            "sigma".to_owned(),
            (
                vec![vec!["u".to_owned()], vec!["v".to_owned()]],
                Formula::rel(
                    "xi_sigma",
                    vec![Term::var("x1"), Term::var("u"), Term::var("v")],
                ),
            ),
        )]),
    };
    let reduced = data.reduce(&alpha).unwrap();
    let expected = parse(
        "forall y1@1, y2@1, y3@1 (phi(x1, y1@1) & phi(x1, y2@1) & phi(x1, y3@1) -> \
         (xi_sigma(x1, y1@1, y2@1) & xi_sigma(x1, y1@1, y3@1) -> psi(x1, y2@1, y3@1)))",
    )
    .unwrap();
    assert!(
        reduced.alpha_eq(&expected),
        "worked reduction differs:\n  got      {reduced}\n  expected {expected}"
    );
    report("7-interpretation-compiler", t0, 60);
}

/// Criterion 8: 100 random commutator lists of length 3 to 6 decompose
/// into two commutators with entries vanishing at the endpoints, with
/// exact product equality.
#[test]
fn criterion_8_two_commutators() {
    let t0 = Instant::now();
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..100 {
        let len = 3 + trial % 4;
        let pairs: Vec<CommutatorPair> = (0..len)
            .map(|_| {
                CommutatorPair::new(random_plmap(&c, &mut rng, 3), random_plmap(&c, &mut rng, 3))
            })
            .collect();
        let original = product(&pairs);
        let (p, q) = decompose_to_two(&pairs).unwrap();
        assert_eq!(p.value().compose(&q.value()), original, "trial {trial}");
        for entry in [&p.x, &p.y, &q.x, &q.y] {
            assert!(classify(entry).in_f_circle(), "trial {trial}");
        }
    }
    report("8-two-commutators", t0, 120);
}

/// Criterion 9: a 1000-trial hunt finds no discontinuous right-continuous
/// bijection that commutes with a full upward bump (continuity at 0 holds
/// for every right-continuous bijection, and all candidates have finitely
/// many discontinuities by construction).
#[test]
fn criterion_9_continuity_from_commutation() {
    let t0 = Instant::now();
    let c = ctx();
    let z = make_bump(&c, &int(0), &int(1), 1, -1)
        .unwrap()
        .to_bijection();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut commuting = 0usize;
    for trial in 0..1000 {
        let v = match trial % 4 {
            0 | 1 => random_bijection(&c, &mut rng, 4),
            2 => {
                let w = random_bijection(&c, &mut rng, 3);
                w.inverse().compose(&z).compose(&w)
            }
            _ => {
                let w = random_bijection(&c, &mut rng, 2);
                let mut p = z.clone();
                for _ in 0..trial % 3 {
                    p = p.compose(&z);
                }
                w.inverse().compose(&p).compose(&w)
            }
        };
        if v.commutes(&z) {
            commuting += 1;
            assert!(
                v.is_continuous(),
                "trial {trial}: discontinuous element commuting with the full bump"
            );
        }
    }
    assert!(
        commuting > 0,
        "the campaign must exercise commuting candidates"
    );
    report("9-continuity-from-commutation", t0, 30);
}
