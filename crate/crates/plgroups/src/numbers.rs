//! Exact rational arithmetic and the arithmetic context shared by every map:
//! a slope base `n` generating the multiplicative group Λ = ⟨n⟩ and an
//! interval length `r` lying in the coefficient ring A = ℤ[1/n].
//!
//! All quantities in this crate are exact rationals; nothing is ever rounded.

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;

/// Shorthand for a rational from small integers. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    text.trim().parse::<Rational>().map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("bad rational {text:?}: {e}"),
    })
}

/// Nearest double, for plotting and display scaling only; all group
/// computation stays exact.
pub fn approx_f64(q: &Rational) -> f64 {
    num::ToPrimitive::to_f64(q).unwrap_or(0.0)
}

/// The ambient arithmetic data: slope base `n ≥ 2` and interval length `r > 0`
/// with `r ∈ ℤ[1/n]`. Two maps interoperate only when their contexts are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    n: u32,
    r: Rational,
}

impl GroupContext {
    pub fn new(n: u32, r: Rational) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Context(format!(
                "slope base must be at least 2, got {n}"
            )));
        }
        if !r.is_positive() {
            return Err(Error::Context(format!(
                "interval length must be positive, got {r}"
            )));
        }
        let ctx = GroupContext { n, r };
        if !ctx.in_ring(&ctx.r.clone()) {
            return Err(Error::Context(format!(
                "interval length {} is outside Z[1/{n}]",
                ctx.r
            )));
        }
        Ok(ctx)
    }

    /// The unit-interval dyadic context `n = 2`, `r = 1`.
    pub fn thompson() -> Self {
        GroupContext {
            n: 2,
            r: Rational::one(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// True iff every prime factor of the reduced denominator of `q` divides `n`.
    pub fn in_ring(&self, q: &Rational) -> bool {
        let n = BigInt::from(self.n);
        let mut d = q.denom().clone();
        loop {
            let g = d.gcd(&n);
            if g.is_one() {
                break;
            }
            d /= g;
        }
        d.is_one()
    }

    /// `n^e` as an exact rational.
    pub fn slope(&self, e: i64) -> Rational {
        let p = BigInt::from(self.n).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    }

    /// The exponent `k` with `q = n^k`, or `None` when `q` is not a power of `n`.
    ///
    /// `q` must be positive; that is a caller contract, not a `None` case.
    pub fn log_slope(&self, q: &Rational) -> Option<i64> {
        assert!(
            q.is_positive(),
            "log_slope requires a positive argument, got {q}"
        );
        if q.is_one() {
            return Some(0);
        }
        let n = BigInt::from(self.n);
        if q.denom().is_one() {
            exact_log(&n, q.numer())
        } else if q.numer().is_one() {
            exact_log(&n, q.denom()).map(|k| -k)
        } else {
            None
        }
    }
}

/// Exponent `k ≥ 1` with `v = base^k`, for `v > 1`.
fn exact_log(base: &BigInt, v: &BigInt) -> Option<i64> {
    let mut v = v.clone();
    let mut k = 0i64;
    while v > BigInt::one() {
        let (q, rem) = v.div_rem(base);
        if !rem.is_zero() {
            return None;
        }
        v = q;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u32) -> GroupContext {
        GroupContext::new(n, Rational::one()).unwrap()
    }

    #[test]
    fn ring_membership() {
        assert!(ctx(2).in_ring(&rat(1, 2)));
        assert!(!ctx(2).in_ring(&rat(1, 3)));
        // 12 = 2^2 * 3 divides a power of 6.
        assert!(ctx(6).in_ring(&rat(5, 12)));
        assert!(ctx(2).in_ring(&int(-7)));
        assert!(!ctx(6).in_ring(&rat(1, 5)));
    }

    #[test]
    fn log_slope_examples() {
        assert_eq!(ctx(2).log_slope(&int(8)), Some(3));
        assert_eq!(ctx(2).log_slope(&int(1)), Some(0));
        assert_eq!(ctx(2).log_slope(&rat(3, 2)), None);
        assert_eq!(ctx(3).log_slope(&rat(1, 27)), Some(-3));
        assert_eq!(ctx(2).log_slope(&rat(1, 6)), None);
    }

    #[test]
    fn log_slope_round_trip() {
        for n in [2u32, 3, 6, 10] {
            let c = ctx(n);
            for k in -64..=64i64 {
                assert_eq!(c.log_slope(&c.slope(k)), Some(k), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn context_validation() {
        assert!(GroupContext::new(1, Rational::one()).is_err());
        assert!(GroupContext::new(2, int(0)).is_err());
        assert!(GroupContext::new(2, rat(1, 3)).is_err());
        assert!(GroupContext::new(2, rat(3, 4)).is_ok());
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-5").unwrap(), int(-5));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("x").is_err());
        assert_eq!(rat(7, 8).to_string(), "7/8");
        assert_eq!(int(3).to_string(), "3");
    }

    fn arb_ring_element(n: u32) -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 0u32..8)
            .prop_map(move |(m, e)| Rational::new(BigInt::from(m), BigInt::from(n).pow(e)))
    }

    proptest! {
        // Z[1/n] is closed under +, -, *, and scaling by n^{±1}.
        #[test]
        fn ring_closure(a in arb_ring_element(6), b in arb_ring_element(6), e in -3i64..=3) {
            let c = ctx(6);
            prop_assert!(c.in_ring(&a));
            prop_assert!(c.in_ring(&(&a + &b)));
            prop_assert!(c.in_ring(&(&a - &b)));
            prop_assert!(c.in_ring(&(&a * &b)));
            prop_assert!(c.in_ring(&(&a * c.slope(e))));
        }
    }
}
