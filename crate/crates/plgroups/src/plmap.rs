//! The group of piecewise-affine homeomorphisms of `[0; r]` with slopes in
//! `⟨n⟩` and breakpoints in `ℤ[1/n]`, represented by normalized breakpoint
//! lists. Every element fixes both endpoints; maps act on the right and
//! products compose left to right: `(α)(xy) = ((α)x)y`.

use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::interval::IntervalSet;
use crate::numbers::{parse_rational, GroupContext, Rational};
use crate::Error;

/// A piecewise-affine homeomorphism of `[0; r]` in normal form: breakpoints
/// strictly increasing in both coordinates, no interior breakpoint joining
/// two pieces of equal slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    ctx: GroupContext,
    points: Vec<(Rational, Rational)>,
}

impl PLMap {
    /// Validates breakpoints and brings them to normal form.
    pub fn new(ctx: GroupContext, points: Vec<(Rational, Rational)>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::Map(
                "need at least the two endpoint breakpoints".into(),
            ));
        }
        let zero = Rational::zero();
        let r = ctx.r().clone();
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if first.0 != zero || first.1 != zero || last.0 != r || last.1 != r {
            return Err(Error::Map(format!(
                "breakpoints must run from (0, 0) to ({r}, {r})"
            )));
        }
        for (x, y) in &points {
            if !ctx.in_ring(x) || !ctx.in_ring(y) {
                return Err(Error::Map(format!(
                    "breakpoint ({x}, {y}) is outside Z[1/{}]",
                    ctx.n()
                )));
            }
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::Map(format!(
                    "breakpoints must be strictly increasing, got ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            if ctx.log_slope(&slope).is_none() {
                return Err(Error::Map(format!(
                    "piece slope {slope} is not a power of {}",
                    ctx.n()
                )));
            }
        }
        Ok(PLMap {
            ctx,
            points: normalize(points),
        })
    }

    /// Internal constructor for points produced by exact algebra. Normalizes;
    /// revalidates only in debug builds.
    fn from_exact(ctx: GroupContext, points: Vec<(Rational, Rational)>) -> Self {
        let map = PLMap {
            ctx,
            points: normalize(points),
        };
        debug_assert!(
            PLMap::new(map.ctx.clone(), map.points.clone()).is_ok(),
            "internal breakpoint list failed validation"
        );
        map
    }

    pub fn identity(ctx: &GroupContext) -> Self {
        let r = ctx.r().clone();
        PLMap {
            ctx: ctx.clone(),
            points: vec![(Rational::zero(), Rational::zero()), (r.clone(), r)],
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    /// `(α)x ≥ α` everywhere; the minimum of `x − id` on a piece sits at a breakpoint.
    pub fn is_upward(&self) -> bool {
        self.points.iter().all(|(x, y)| y >= x)
    }

    pub fn is_downward(&self) -> bool {
        self.points.iter().all(|(x, y)| y <= x)
    }

    /// Exact image of `α ∈ [0; r]`.
    pub fn evaluate(&self, alpha: &Rational) -> Rational {
        assert!(
            !alpha.is_negative() && alpha <= self.ctx.r(),
            "point {alpha} outside [0; {}]",
            self.ctx.r()
        );
        let i = self.points.partition_point(|p| &p.0 <= alpha);
        if i == self.points.len() {
            return self.ctx.r().clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        y0 + (alpha - x0) * (y1 - y0) / (x1 - x0)
    }

    /// Exact preimage of `β ∈ [0; r]`.
    pub fn preimage(&self, beta: &Rational) -> Rational {
        assert!(
            !beta.is_negative() && beta <= self.ctx.r(),
            "point {beta} outside [0; {}]",
            self.ctx.r()
        );
        let i = self.points.partition_point(|p| &p.1 <= beta);
        if i == self.points.len() {
            return self.ctx.r().clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        x0 + (beta - y0) * (x1 - x0) / (y1 - y0)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        assert_eq!(self.ctx, other.ctx, "context mismatch in composition");
        let mut xs: Vec<Rational> = self.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(other.points.iter().map(|p| self.preimage(&p.0)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|t| {
                let mid = self.evaluate(&t);
                let y = other.evaluate(&mid);
                (t, y)
            })
            .collect();
        PLMap::from_exact(self.ctx.clone(), points)
    }

    pub fn inverse(&self) -> PLMap {
        let points = self
            .points
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        PLMap {
            ctx: self.ctx.clone(),
            points,
        }
    }

    pub fn power(&self, m: i64) -> PLMap {
        if m == 0 {
            return PLMap::identity(&self.ctx);
        }
        let mut base = if m < 0 { self.inverse() } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = PLMap::identity(&self.ctx);
        loop {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.compose(&base);
        }
        acc
    }

    /// Slope of the affine piece immediately right of `α`, for `0 ≤ α < r`.
    pub fn slope_right(&self, alpha: &Rational) -> Rational {
        assert!(
            !alpha.is_negative() && alpha < self.ctx.r(),
            "no piece right of {alpha}"
        );
        let i = self.points.partition_point(|p| &p.0 <= alpha);
        self.piece_slope(i - 1)
    }

    /// Slope of the affine piece immediately left of `β`, for `0 < β ≤ r`.
    pub fn slope_left(&self, beta: &Rational) -> Rational {
        assert!(
            beta.is_positive() && beta <= self.ctx.r(),
            "no piece left of {beta}"
        );
        let i = self.points.partition_point(|p| &p.0 < beta);
        self.piece_slope(i - 1)
    }

    fn piece_slope(&self, i: usize) -> Rational {
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        (y1 - y0) / (x1 - x0)
    }

    /// Maximal closed intervals of fixed points (single points degenerate to
    /// `lo = hi`). Always contains `0` and `r`.
    pub fn fix_intervals(&self) -> Vec<(Rational, Rational)> {
        let one = Rational::one();
        let mut items: Vec<(Rational, Rational)> = Vec::new();
        for w in self.points.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            let slope = (y1 - y0) / (x1 - x0);
            if slope == one {
                if y0 == x0 {
                    items.push((x0.clone(), x1.clone()));
                }
            } else {
                // t* solves y0 + s(t - x0) = t
                let t = (y0 - &slope * x0) / (&one - &slope);
                if &t >= x0 && &t <= x1 {
                    items.push((t.clone(), t));
                }
            }
        }
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in items {
            match merged.last_mut() {
                Some(last) if last.1 >= lo => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        debug_assert!(merged.first().is_some_and(|f| f.0.is_zero()));
        debug_assert!(merged.last().is_some_and(|l| &l.1 == self.ctx.r()));
        merged
    }

    /// The set of moved points, as a finite union of open intervals.
    pub fn support(&self) -> IntervalSet {
        let fix = self.fix_intervals();
        let mut gaps = Vec::new();
        for w in fix.windows(2) {
            gaps.push((w[0].1.clone(), w[1].0.clone()));
        }
        IntervalSet::new(gaps)
    }

    pub fn support_hull(&self) -> Option<(Rational, Rational)> {
        let s = self.support();
        s.hull().map(|(lo, hi)| (lo.clone(), hi.clone()))
    }

    /// `g⁻¹ · self · g`. The support of the result is the `g`-image of the
    /// support of `self`; this is asserted.
    pub fn conjugate(&self, g: &PLMap) -> PLMap {
        let result = g.inverse().compose(self).compose(g);
        debug_assert_eq!(result.support(), self.support().image_under(g));
        result
    }

    pub fn commutes(&self, other: &PLMap) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, other: &PLMap) -> PLMap {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// The fixed point the iterates `(α)x^n` converge to: the nearest fixed
    /// point of `x` in the direction `x` moves `α`.
    pub fn limit_of_iterates(&self, alpha: &Rational) -> Rational {
        let image = self.evaluate(alpha);
        if &image == alpha {
            return image;
        }
        let fix = self.fix_intervals();
        if image > *alpha {
            // fixed intervals are disjoint from the gap containing alpha
            fix.iter()
                .find(|(lo, _)| lo > alpha)
                .map(|(lo, _)| lo.clone())
                .expect("r is fixed and above every interior point")
        } else {
            fix.iter()
                .rev()
                .find(|(_, hi)| hi < alpha)
                .map(|(_, hi)| hi.clone())
                .expect("0 is fixed and below every interior point")
        }
    }

    /// Conjugation by `t ↦ t · (r′/r)`: an isomorphism onto the group over
    /// `[0; r′)`. Fails when a scaled breakpoint leaves the coefficient ring.
    pub fn rescale(&self, r_new: Rational) -> Result<PLMap, Error> {
        let ctx = GroupContext::new(self.ctx.n(), r_new.clone())?;
        let factor = &r_new / self.ctx.r();
        let mut points = Vec::with_capacity(self.points.len());
        for (x, y) in &self.points {
            let p = (x * &factor, y * &factor);
            if !ctx.in_ring(&p.0) || !ctx.in_ring(&p.1) {
                return Err(Error::Map(format!(
                    "rescaled breakpoint ({}, {}) leaves Z[1/{}]",
                    p.0,
                    p.1,
                    ctx.n()
                )));
            }
            points.push(p);
        }
        Ok(PLMap { ctx, points })
    }
}

impl IntervalSet {
    /// Image of the set under an increasing homeomorphism.
    pub fn image_under(&self, g: &PLMap) -> IntervalSet {
        IntervalSet::new(
            self.intervals()
                .iter()
                .map(|(lo, hi)| (g.evaluate(lo), g.evaluate(hi)))
                .collect(),
        )
    }
}

fn normalize(mut points: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    points.dedup();
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 {
            let b = &out[out.len() - 1];
            let a = &out[out.len() - 2];
            let collinear = (&b.1 - &a.1) * (&p.0 - &b.0) == (&p.1 - &b.1) * (&b.0 - &a.0);
            if collinear {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Map file format: a header line `n r`, then one `x y` breakpoint per line,
/// rationals written `p/q` (or `p` for integers).
impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.ctx.n(), self.ctx.r())?;
        for (x, y) in &self.points {
            writeln!(f, "{x} {y}")?;
        }
        Ok(())
    }
}

impl FromStr for PLMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            pos: 0,
            msg: "empty map file".into(),
        })?;
        let mut parts = header.split_whitespace();
        let (n, r) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(r), None) => (n, r),
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("bad header {header:?}, expected \"n r\""),
                })
            }
        };
        let n: u32 = n.parse().map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("bad slope base {n:?}: {e}"),
        })?;
        let ctx = GroupContext::new(n, parse_rational(r)?)?;
        let mut points = Vec::new();
        for (lineno, line) in lines {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some(x), Some(y), None) => {
                    points.push((parse_rational(x)?, parse_rational(y)?));
                }
                _ => {
                    return Err(Error::Parse {
                        pos: lineno,
                        msg: format!("bad breakpoint line {line:?}"),
                    })
                }
            }
        }
        PLMap::new(ctx, points)
    }
}
