//! Rewriting explicit products of commutators as a product of exactly two
//! commutators with entries that are the identity near both endpoints.
//!
//! The pipeline: squeeze each pair so its entries live in a window around
//! the commutator's support, push three consecutive commutators into
//! disjoint windows with a displacement bump `b`, merge the disjoint ones
//! into a single pair, and account for the bookkeeping with the extra
//! commutator `[c₂⁻¹c₃^{b⁻¹}, b]`. Every step is verified by exact
//! breakpoint equality.

use num::{One, Signed, Zero};

use crate::constructions::{largest_squeeze_exp, make_bump, squeeze, squeeze_conjugator};
use crate::interp::classify;
use crate::numbers::{GroupContext, Rational};
use crate::plmap::PLMap;
use crate::Error;

/// A pair `(x, y)` standing for the commutator `[x, y] = x⁻¹y⁻¹xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPair {
    pub x: PLMap,
    pub y: PLMap,
}

impl CommutatorPair {
    pub fn new(x: PLMap, y: PLMap) -> Self {
        assert_eq!(x.ctx(), y.ctx(), "context mismatch in commutator pair");
        CommutatorPair { x, y }
    }

    pub fn trivial(ctx: &GroupContext) -> Self {
        CommutatorPair {
            x: PLMap::identity(ctx),
            y: PLMap::identity(ctx),
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        self.x.ctx()
    }

    pub fn value(&self) -> PLMap {
        self.x.commutator(&self.y)
    }

    /// Closed hull of the union of the two entry supports, `None` when both
    /// entries are the identity.
    fn entry_hull(&self) -> Option<(Rational, Rational)> {
        match (self.x.support_hull(), self.y.support_hull()) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (Some(h), None) | (None, Some(h)) => Some(h),
            (None, None) => None,
        }
    }
}

pub fn product(pairs: &[CommutatorPair]) -> PLMap {
    let ctx = pairs.first().expect("nonempty list").ctx();
    pairs
        .iter()
        .fold(PLMap::identity(ctx), |acc, p| acc.compose(&p.value()))
}

/// The ring point in `]lo; hi[` with the smallest power-of-`n` denominator,
/// taking the candidate nearest `hi` (or nearest `lo`).
fn ring_point_between(
    ctx: &GroupContext,
    lo: &Rational,
    hi: &Rational,
    prefer_high: bool,
) -> Result<Rational, Error> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ]{lo}; {hi}[")));
    }
    for e in 0..512 {
        let scale = ctx.slope(e);
        let lo_s = lo * &scale;
        let hi_s = hi * &scale;
        let k_min = lo_s.floor() + Rational::one();
        let k_max = hi_s.ceil() - Rational::one();
        if k_min <= k_max {
            let k = if prefer_high { k_max } else { k_min };
            return Ok(k / scale);
        }
    }
    unreachable!("ring points are dense")
}

/// Rewrites the pair with entries supported strictly inside `]lo; hi[`,
/// preserving the commutator exactly. The commutator's support must already
/// sit strictly inside the window.
pub fn rewrite_in_window(
    pair: &CommutatorPair,
    lo: &Rational,
    hi: &Rational,
) -> Result<CommutatorPair, Error> {
    let ctx = pair.ctx().clone();
    let value = pair.value();
    let Some((slo, shi)) = value.support_hull() else {
        return Ok(CommutatorPair::trivial(&ctx));
    };
    if !(lo < &slo && &shi < hi) {
        return Err(Error::Domain(format!(
            "commutator support [{slo}; {shi}] does not sit inside ]{lo}; {hi}["
        )));
    }
    let a1 = ring_point_between(&ctx, lo, &slo, true)?;
    let b1 = ring_point_between(&ctx, &shi, hi, false)?;
    let p = largest_squeeze_exp(&ctx, &a1, &b1, lo, hi)
        .ok_or_else(|| Error::Domain("no admissible squeeze slope".into()))?;
    let inj = squeeze_conjugator(&ctx, &a1, &b1, lo, hi, p)?;
    let squeezed = CommutatorPair::new(squeeze(&pair.x, &inj), squeeze(&pair.y, &inj));
    assert_eq!(
        squeezed.value(),
        value,
        "squeezing must preserve the commutator"
    );
    assert!(squeezed.x.support().within(lo, hi));
    assert!(squeezed.y.support().within(lo, hi));
    Ok(squeezed)
}

/// Merges commutator pairs whose entry supports occupy pairwise separated
/// closed intervals into the single pair `(Πxᵢ, Πyᵢ)`. An empty list merges
/// to the trivial pair.
pub fn merge_disjoint(
    ctx: &GroupContext,
    pairs: &[CommutatorPair],
) -> Result<CommutatorPair, Error> {
    if pairs.is_empty() {
        return Ok(CommutatorPair::trivial(ctx));
    }
    let hulls: Vec<_> = pairs.iter().map(|p| p.entry_hull()).collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if let (Some((a, b)), Some((c, d))) = (&hulls[i], &hulls[j]) {
                if !(b < c || d < a) {
                    return Err(Error::Domain(format!(
                        "entry supports overlap: [{a}; {b}] meets [{c}; {d}]"
                    )));
                }
            }
        }
    }
    let merged = CommutatorPair {
        x: pairs
            .iter()
            .fold(PLMap::identity(ctx), |acc, p| acc.compose(&p.x)),
        y: pairs
            .iter()
            .fold(PLMap::identity(ctx), |acc, p| acc.compose(&p.y)),
    };
    assert_eq!(
        merged.value(),
        product(pairs),
        "disjoint pairs must merge exactly"
    );
    Ok(merged)
}

/// A bump on `]window_lo; window_hi[` displacing `alpha` beyond `beta`,
/// found by raising the slope pair `(n^m, n^{-m})` and, failing that, by
/// taking powers of the unit-slope bump (whose iterates converge to the
/// window top).
fn displacement_bump(
    ctx: &GroupContext,
    window_lo: &Rational,
    window_hi: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<PLMap, Error> {
    for m in 1..=24 {
        let bump = make_bump(ctx, window_lo, window_hi, m, -m)?;
        if &bump.evaluate(alpha) > beta {
            return Ok(bump);
        }
    }
    let base = make_bump(ctx, window_lo, window_hi, 1, -1)?;
    let mut g = base.clone();
    for _ in 0..4096 {
        if &g.evaluate(alpha) > beta {
            return Ok(g);
        }
        g = g.compose(&base);
    }
    Err(Error::Domain(format!(
        "no bump on ]{window_lo}; {window_hi}[ displaces {alpha} beyond {beta}"
    )))
}

/// Replaces three commutators supported in a common interior window by two:
/// `c₁c₂c₃ = (c₁ · c₂^b · c₃^{b⁻¹}) · [c₂⁻¹c₃^{b⁻¹}, b]` for a bump `b`
/// moving the window past itself. The first factor merges three pairs with
/// disjoint entry supports; equality is asserted exactly.
pub fn three_to_two(
    c1: &CommutatorPair,
    c2: &CommutatorPair,
    c3: &CommutatorPair,
) -> Result<(CommutatorPair, CommutatorPair), Error> {
    let ctx = c1.ctx().clone();
    let (v1, v2, v3) = (c1.value(), c2.value(), c3.value());
    let total = v1.compose(&v2).compose(&v3);
    let hulls: Vec<_> = [&v1, &v2, &v3]
        .iter()
        .filter_map(|v| v.support_hull())
        .collect();
    let Some(lo) = hulls.iter().map(|(a, _)| a).min().cloned() else {
        return Ok((CommutatorPair::trivial(&ctx), CommutatorPair::trivial(&ctx)));
    };
    let hi = hulls
        .iter()
        .map(|(_, b)| b)
        .max()
        .cloned()
        .expect("nonempty hull list");
    assert!(
        lo.is_positive() && &hi < ctx.r(),
        "commutators are the identity near the endpoints"
    );
    let alpha = ring_point_between(&ctx, &Rational::zero(), &lo, true)?;
    let beta = ring_point_between(&ctx, &hi, ctx.r(), false)?;
    let p1 = rewrite_in_window(c1, &alpha, &beta)?;
    let p2 = rewrite_in_window(c2, &alpha, &beta)?;
    let p3 = rewrite_in_window(c3, &alpha, &beta)?;
    let window_lo = ring_point_between(&ctx, &Rational::zero(), &alpha, true)?;
    let window_hi = ring_point_between(&ctx, &beta, ctx.r(), true)?;
    let b = displacement_bump(&ctx, &window_lo, &window_hi, &alpha, &beta)?;
    let b_inv = b.inverse();
    let p2b = CommutatorPair {
        x: p2.x.conjugate(&b),
        y: p2.y.conjugate(&b),
    };
    let p3b = CommutatorPair {
        x: p3.x.conjugate(&b_inv),
        y: p3.y.conjugate(&b_inv),
    };
    let merged = merge_disjoint(&ctx, &[p1, p2b, p3b])?;
    let second = CommutatorPair {
        x: v2.inverse().compose(&v3.conjugate(&b_inv)),
        y: b,
    };
    assert_eq!(
        merged.value().compose(&second.value()),
        total,
        "the three-to-two identity must hold exactly"
    );
    Ok((merged, second))
}

/// Rewrites a product of commutators as a product of exactly two commutators
/// with all four entries identity near the endpoints. The running product is
/// re-verified after every rewrite step.
pub fn decompose_to_two(
    pairs: &[CommutatorPair],
) -> Result<(CommutatorPair, CommutatorPair), Error> {
    if pairs.is_empty() {
        return Err(Error::Domain("nothing to decompose".into()));
    }
    let ctx = pairs[0].ctx().clone();
    let original = product(pairs);

    // first pass: entries squeezed into interior windows around each value
    let mut stack = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let value = pair.value();
        match value.support_hull() {
            None => stack.push(CommutatorPair::trivial(&ctx)),
            Some((lo, hi)) => {
                assert!(lo.is_positive() && &hi < ctx.r());
                let wlo = ring_point_between(&ctx, &Rational::zero(), &lo, true)?;
                let whi = ring_point_between(&ctx, &hi, ctx.r(), false)?;
                stack.push(rewrite_in_window(pair, &wlo, &whi)?);
            }
        }
    }
    assert_eq!(product(&stack), original);

    while stack.len() > 2 {
        let c3 = stack.pop().unwrap();
        let c2 = stack.pop().unwrap();
        let c1 = stack.pop().unwrap();
        let (merged, extra) = three_to_two(&c1, &c2, &c3)?;
        stack.push(merged);
        stack.push(extra);
        assert_eq!(product(&stack), original, "product must survive each round");
    }
    while stack.len() < 2 {
        stack.push(CommutatorPair::trivial(&ctx));
    }
    let second = stack.pop().unwrap();
    let first = stack.pop().unwrap();
    for entry in [&first.x, &first.y, &second.x, &second.y] {
        assert!(
            classify(entry).in_f_circle(),
            "decomposition entries must vanish near the endpoints"
        );
    }
    assert_eq!(first.value().compose(&second.value()), original);
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};
    use crate::sampling::random_plmap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> GroupContext {
        GroupContext::thompson()
    }

    fn pair_in(lo: (i64, i64), hi: (i64, i64)) -> CommutatorPair {
        let c = ctx();
        let (lo, hi) = (rat(lo.0, lo.1), rat(hi.0, hi.1));
        let mid = (&lo + &hi) / int(2);
        let x = make_bump(&c, &lo, &mid, 1, -1).unwrap();
        let y = make_bump(&c, &lo, &hi, 2, -1).unwrap();
        CommutatorPair::new(x, y)
    }

    #[test]
    fn trivial_cases() {
        let c = ctx();
        let t = CommutatorPair::trivial(&c);
        assert!(t.value().is_identity());
        assert_eq!(
            rewrite_in_window(&t, &rat(1, 8), &rat(7, 8)).unwrap(),
            CommutatorPair::trivial(&c)
        );
        let (a, b) = decompose_to_two(std::slice::from_ref(&t)).unwrap();
        assert!(a.value().is_identity() && b.value().is_identity());
        assert!(decompose_to_two(&[]).is_err());
    }

    #[test]
    fn rewrite_preserves_value_and_bounds_support() {
        let pair = pair_in((1, 4), (1, 2));
        let value = pair.value();
        assert!(!value.is_identity());
        let rewritten = rewrite_in_window(&pair, &rat(1, 8), &rat(3, 4)).unwrap();
        assert_eq!(rewritten.value(), value);
        assert!(rewritten.x.support().within(&rat(1, 8), &rat(3, 4)));
        assert!(rewritten.y.support().within(&rat(1, 8), &rat(3, 4)));
        assert!(classify(&rewritten.x).in_f_circle());
        assert!(classify(&rewritten.y).in_f_circle());
    }

    #[test]
    fn merge_two_separated_pairs() {
        let c = ctx();
        let p1 = pair_in((1, 16), (3, 16));
        let p2 = pair_in((1, 2), (3, 4));
        let merged = merge_disjoint(&c, &[p1.clone(), p2.clone()]).unwrap();
        assert_eq!(merged.value(), p1.value().compose(&p2.value()));
        let single = merge_disjoint(&c, std::slice::from_ref(&p1)).unwrap();
        assert_eq!(single, p1);
        assert_eq!(
            merge_disjoint(&c, &[]).unwrap(),
            CommutatorPair::trivial(&c)
        );
        // overlapping supports are rejected
        let q = pair_in((1, 8), (5, 8));
        assert!(merge_disjoint(&c, &[p1, q]).is_err());
    }

    #[test]
    fn short_lists_survive_circle_rewriting() {
        let p1 = pair_in((1, 4), (1, 2));
        let (a, b) = decompose_to_two(std::slice::from_ref(&p1)).unwrap();
        assert_eq!(a.value().compose(&b.value()), p1.value());
        assert!(b.value().is_identity());
        let p2 = pair_in((5, 8), (7, 8));
        let (a, b) = decompose_to_two(&[p1.clone(), p2.clone()]).unwrap();
        assert_eq!(
            a.value().compose(&b.value()),
            p1.value().compose(&p2.value())
        );
        for e in [&a.x, &a.y, &b.x, &b.y] {
            assert!(classify(e).in_f_circle());
        }
    }

    #[test]
    fn three_to_two_exact() {
        let c1 = pair_in((1, 4), (1, 2));
        let c2 = pair_in((5, 16), (5, 8));
        let c3 = pair_in((3, 8), (3, 4));
        let total = c1.value().compose(&c2.value()).compose(&c3.value());
        let (m, s) = three_to_two(&c1, &c2, &c3).unwrap();
        assert_eq!(m.value().compose(&s.value()), total);
        // trivial tail reduces to the head and a trivial commutator
        let t = CommutatorPair::trivial(&ctx());
        let (m, s) = three_to_two(&c1, &t.clone(), &t).unwrap();
        assert_eq!(m.value().compose(&s.value()), c1.value());
    }

    #[test]
    fn conjugated_supports_clear_the_window() {
        let c = ctx();
        let (alpha, beta) = (rat(1, 4), rat(3, 4));
        let inner = pair_in((5, 16), (11, 16)).value();
        assert!(inner.support().within(&alpha, &beta));
        let b = displacement_bump(&c, &rat(1, 8), &rat(15, 16), &alpha, &beta).unwrap();
        assert!(b.evaluate(&alpha) > beta);
        // upward conjugate lands above the image of the window base,
        // downward conjugate below the preimage of the window top
        let up = inner.conjugate(&b);
        assert!(up.support().within(&b.evaluate(&alpha), c.r()));
        let down = inner.conjugate(&b.inverse());
        assert!(down
            .support()
            .within(&rat(0, 1), &b.inverse().evaluate(&beta)));
        assert!(b.inverse().evaluate(&beta) < alpha);
    }

    #[test]
    fn decompose_random_lists() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..12 {
            let len = 3 + trial % 4;
            let pairs: Vec<_> = (0..len)
                .map(|_| {
                    CommutatorPair::new(
                        random_plmap(&c, &mut rng, 3),
                        random_plmap(&c, &mut rng, 3),
                    )
                })
                .collect();
            let original = product(&pairs);
            let (p, q) = decompose_to_two(&pairs).unwrap();
            assert_eq!(p.value().compose(&q.value()), original);
            for entry in [&p.x, &p.y, &q.x, &q.y] {
                assert!(classify(entry).in_f_circle());
            }
        }
    }
}
