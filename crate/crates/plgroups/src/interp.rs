//! Arithmetic read off boundary slopes: the slope-class predicates cutting
//! out the coding set, the encoding of positive integers as elements with
//! equal boundary slopes, and the witness constructions behind the addition
//! and divisibility bridges.

use num::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{make_bump, make_down_bump};
use crate::numbers::{GroupContext, Rational};
use crate::plmap::PLMap;
use crate::Error;

/// The pair of boundary slope exponents `(log_n (0)x′⁺, log_n (r)x′⁻)`.
/// Every coding set below is a function of this pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeClass {
    pub s0: i64,
    pub sr: i64,
}

/// Reads the boundary slope exponents of a map.
pub fn classify(x: &PLMap) -> SlopeClass {
    let ctx = x.ctx();
    let zero = Rational::from_integer(0.into());
    let s0 = ctx
        .log_slope(&x.slope_right(&zero))
        .expect("group slopes are powers of n");
    let sr = ctx
        .log_slope(&x.slope_left(ctx.r()))
        .expect("group slopes are powers of n");
    SlopeClass { s0, sr }
}

impl SlopeClass {
    /// Identity near both endpoints.
    pub fn in_f_circle(&self) -> bool {
        self.s0 == 0 && self.sr == 0
    }

    /// Nontrivial slope at at least one endpoint.
    pub fn in_e(&self) -> bool {
        !self.in_f_circle()
    }

    /// Nontrivial slope at both endpoints.
    pub fn in_e2(&self) -> bool {
        self.s0 != 0 && self.sr != 0
    }

    pub fn in_p_plus(&self) -> bool {
        self.s0 > 0 && self.sr > 0
    }

    pub fn in_p_minus(&self) -> bool {
        self.s0 < 0 && self.sr < 0
    }

    pub fn in_p(&self) -> bool {
        self.in_p_plus() || self.in_p_minus()
    }

    /// Boundary slopes `n^{±1}` that are inverse to each other.
    pub fn in_u(&self) -> bool {
        self.s0 == -self.sr && self.s0.abs() == 1
    }

    /// The coding set: equal boundary slopes, both above 1.
    pub fn in_b(&self) -> bool {
        self.s0 == self.sr && self.s0 >= 1
    }
}

/// The split point used by the witness constructions: `r/2` when it lies in
/// the coefficient ring, otherwise the nearest ring point of minimal
/// denominator.
pub fn default_split(ctx: &GroupContext) -> Rational {
    let half = ctx.r() / Rational::from_integer(2.into());
    if ctx.in_ring(&half) {
        return half;
    }
    for e in 0..256 {
        let scale = ctx.slope(e);
        let scaled = &half * &scale;
        let lo = scaled.floor();
        let candidates = [&lo, &(&lo + Rational::one())];
        let mut best: Option<Rational> = None;
        for c in candidates {
            let point = c / &scale;
            if point.is_positive() && &point < ctx.r() {
                let better = match &best {
                    Some(b) => {
                        let db = (b - &half).abs();
                        let dc = (&point - &half).abs();
                        dc < db || (dc == db && point < *b)
                    }
                    None => true,
                };
                if better {
                    best = Some(point);
                }
            }
        }
        if let Some(b) = best {
            return b;
        }
    }
    unreachable!("ring points are dense in ]0; r[")
}

/// Encodes `k ≥ 1` as the product of an up-bump on `]0; γ[` and a down-bump
/// on `]γ; r[`, both with boundary slope `n^k` on the outside. The result
/// lies in the coding set and decodes back to `k`.
pub fn encode_nat_at(ctx: &GroupContext, k: i64, gamma: &Rational) -> Result<PLMap, Error> {
    if k < 1 {
        return Err(Error::Domain(format!(
            "only positive integers are encoded, got {k}"
        )));
    }
    let lower = make_bump(ctx, &Rational::from_integer(0.into()), gamma, k, -1)?;
    let upper = make_down_bump(ctx, gamma, ctx.r(), -1, k)?;
    let x = lower.compose(&upper);
    debug_assert!(classify(&x).in_b());
    Ok(x)
}

/// [`encode_nat_at`] with the default split point.
pub fn encode_nat(ctx: &GroupContext, k: i64) -> Result<PLMap, Error> {
    encode_nat_at(ctx, k, &default_split(ctx))
}

/// The integer coded by an element of the coding set.
pub fn decode(x: &PLMap) -> Result<i64, Error> {
    let class = classify(x);
    if !class.in_b() {
        return Err(Error::Domain(format!(
            "boundary slope exponents ({}, {}) are outside the coding set",
            class.s0, class.sr
        )));
    }
    Ok(class.s0)
}

/// Whether `decode(x) + decode(y) = decode(z)`, decided at the group level:
/// the product `x·y·z⁻¹` must be the identity near both endpoints.
pub fn add_bridge(x: &PLMap, y: &PLMap, z: &PLMap) -> Result<bool, Error> {
    for v in [x, y, z] {
        decode(v)?;
    }
    let prod = x.compose(y).compose(&z.inverse());
    Ok(classify(&prod).in_f_circle())
}

/// Whether `decode(x)` divides `decode(y)`.
pub fn divides_bridge(x: &PLMap, y: &PLMap) -> Result<bool, Error> {
    let k = decode(x)?;
    let kk = decode(y)?;
    Ok(kk % k == 0)
}

/// The data certifying one divisible pair: a split `x·z = x₁·x₂` into bumps
/// on the two halves, and `w` in the centralizer lattice `⟨x₁⟩ × ⟨x₂⟩` whose
/// slope contribution cancels `y`'s boundary slopes exactly.
#[derive(Clone, Debug)]
pub struct DividesWitness {
    pub x1: PLMap,
    pub x2: PLMap,
    pub z: PLMap,
    pub w: PLMap,
}

/// Builds and verifies a witness when `decode(x) | decode(y)`; returns
/// `Ok(None)` when divisibility fails.
pub fn divides_witness(x: &PLMap, y: &PLMap) -> Result<Option<DividesWitness>, Error> {
    let k = decode(x)?;
    let kk = decode(y)?;
    if kk % k != 0 {
        return Ok(None);
    }
    let ctx = x.ctx();
    let gamma = default_split(ctx);
    let x1 = make_bump(ctx, &Rational::from_integer(0.into()), &gamma, k, -1)?;
    let x2 = make_down_bump(ctx, &gamma, ctx.r(), -1, k)?;
    let split = x1.compose(&x2);
    let z = x.inverse().compose(&split);
    assert!(
        classify(&z).in_f_circle(),
        "the correction term must vanish at both ends"
    );
    assert_eq!(x.compose(&z), split);
    let j = kk / k;
    let w = split.power(-j);
    assert!(w.commutes(&x.compose(&z)));
    let yw = y.compose(&w);
    assert!(
        classify(&yw).in_f_circle(),
        "witness slopes must cancel: got ({}, {})",
        classify(&yw).s0,
        classify(&yw).sr
    );
    Ok(Some(DividesWitness { x1, x2, z, w }))
}

/// The refutation data for one element outside the slope-inverse set: a
/// reference element `y` with unit boundary exponents, the split `x·z =
/// x₁·x₂`, and an exhaustive sweep of the bounded centralizer lattice
/// showing no pair `(w₁, w₂)` exhibits the defining pattern.
#[derive(Clone, Debug)]
pub struct UCounterexample {
    pub y: PLMap,
    pub x1: PLMap,
    pub x2: PLMap,
    pub z: PLMap,
    pub bound: i64,
    pub cases_checked: usize,
}

/// For `x` with nontrivial opposite-sign boundary exponents that is not in
/// the slope-inverse set, certifies over the lattice `x₁^{u} x₂^{v}`,
/// `|u|, |v| ≤ bound`, that no `(w₁, w₂)` satisfies
/// `w₁w₂⁻¹ ∈ E₂ ∧ yw₁ ∉ E₂ ∧ yw₂ ∉ E₂`.
///
/// Boundary exponents of lattice members follow the chain rule, so the sweep
/// runs on integer bookkeeping; a random sample of cases is re-verified by
/// exact composition.
pub fn u_counterexample(x: &PLMap, bound: i64) -> Result<UCounterexample, Error> {
    let class = classify(x);
    if !(class.in_e2() && !class.in_p() && !class.in_u()) {
        return Err(Error::Domain(format!(
            "slope exponents ({}, {}) do not match the refutation hypothesis",
            class.s0, class.sr
        )));
    }
    let ctx = x.ctx();
    let gamma = default_split(ctx);
    let (s0, sr) = (class.s0, class.sr);
    let x1 = if s0 >= 1 {
        make_bump(ctx, &Rational::from_integer(0.into()), &gamma, s0, -1)?
    } else {
        make_down_bump(ctx, &Rational::from_integer(0.into()), &gamma, s0, 1)?
    };
    let x2 = if sr >= 1 {
        make_down_bump(ctx, &gamma, ctx.r(), -1, sr)?
    } else {
        make_bump(ctx, &gamma, ctx.r(), 1, sr)?
    };
    let y = encode_nat(ctx, 1)?;
    let split = x1.compose(&x2);
    let z = x.inverse().compose(&split);
    assert!(classify(&z).in_f_circle());
    assert_eq!(x.compose(&z), split);

    let in_e2 = |e0: i64, er: i64| e0 != 0 && er != 0;
    let mut cases = 0usize;
    for u1 in -bound..=bound {
        for v1 in -bound..=bound {
            let yw1_out = !in_e2(1 + s0 * u1, 1 + sr * v1);
            for u2 in -bound..=bound {
                for v2 in -bound..=bound {
                    cases += 1;
                    let diff_in_e2 = in_e2(s0 * (u1 - u2), sr * (v1 - v2));
                    let yw2_out = !in_e2(1 + s0 * u2, 1 + sr * v2);
                    if diff_in_e2 && yw1_out && yw2_out {
                        return Err(Error::Domain(format!(
                            "refutation failed at (u1, v1, u2, v2) = ({u1}, {v1}, {u2}, {v2})"
                        )));
                    }
                }
            }
        }
    }

    // spot-check the bookkeeping against exact composition
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..24 {
        let u1 = rng.gen_range(-bound..=bound);
        let v1 = rng.gen_range(-bound..=bound);
        let u2 = rng.gen_range(-bound..=bound);
        let v2 = rng.gen_range(-bound..=bound);
        let w1 = x1.power(u1).compose(&x2.power(v1));
        let w2 = x1.power(u2).compose(&x2.power(v2));
        let diff = classify(&w1.compose(&w2.inverse()));
        assert_eq!((diff.s0, diff.sr), (s0 * (u1 - u2), sr * (v1 - v2)));
        let yw1 = classify(&y.compose(&w1));
        assert_eq!((yw1.s0, yw1.sr), (1 + s0 * u1, 1 + sr * v1));
        assert!(w1.commutes(&split));
    }

    Ok(UCounterexample {
        y,
        x1,
        x2,
        z,
        bound,
        cases_checked: cases,
    })
}
