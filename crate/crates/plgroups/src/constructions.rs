//! Explicit element builders: bumps with prescribed boundary slopes, the
//! generator pairs spanning a wreath-product copy, and the injective
//! squeeze maps that push supports into smaller windows.

use num::{One, Signed, Zero};

use crate::numbers::{rat, GroupContext, Rational};
use crate::plmap::PLMap;
use crate::Error;

/// An element supported exactly on `]alpha; beta[`, moving every interior
/// point up, with right slope `n^p_exp` at `alpha` and left slope `n^q_exp`
/// at `beta`. Requires `p_exp ≥ 1` and `q_exp ≤ -1`.
///
/// The interval is cut into five parts of lengths `s·l`, `q·s·l`,
/// `(1-(2+p+q)s)·l`, `p·s·l`, `s·l` and mapped affinely onto the cuts
/// `p·s·l`, `s·l`, `(1-(2+p+q)s)·l`, `s·l`, `q·s·l`, where `s` is the largest
/// power of `n` with `(2+p+q)s ≤ 1`.
pub fn make_bump(
    ctx: &GroupContext,
    alpha: &Rational,
    beta: &Rational,
    p_exp: i64,
    q_exp: i64,
) -> Result<PLMap, Error> {
    if p_exp < 1 || q_exp > -1 {
        return Err(Error::Domain(format!(
            "bump slopes need p > 1 > q, got exponents ({p_exp}, {q_exp})"
        )));
    }
    if alpha >= beta || alpha.is_negative() || beta > ctx.r() {
        return Err(Error::Domain(format!(
            "bad bump interval ]{alpha}; {beta}["
        )));
    }
    if !ctx.in_ring(alpha) || !ctx.in_ring(beta) {
        return Err(Error::Domain(format!(
            "bump endpoints ]{alpha}; {beta}[ must lie in Z[1/{}]",
            ctx.n()
        )));
    }
    let p = ctx.slope(p_exp);
    let q = ctx.slope(q_exp);
    let weight = &p + &q + rat(2, 1);
    let mut e = 0i64;
    while ctx.slope(-e) * &weight > Rational::one() {
        e += 1;
    }
    let s = ctx.slope(-e);
    let l = beta - alpha;
    let sl = &s * &l;
    let middle = (Rational::one() - &weight * &s) * &l;
    let domain_lengths = [sl.clone(), &q * &sl, middle.clone(), &p * &sl, sl.clone()];
    let image_lengths = [&p * &sl, sl.clone(), middle, sl.clone(), &q * &sl];

    let mut points = vec![(Rational::zero(), Rational::zero())];
    if alpha.is_positive() {
        points.push((alpha.clone(), alpha.clone()));
    }
    let mut x = alpha.clone();
    let mut y = alpha.clone();
    for (dx, dy) in domain_lengths.iter().zip(&image_lengths) {
        if dx.is_zero() {
            continue;
        }
        x += dx;
        y += dy;
        points.push((x.clone(), y.clone()));
    }
    if beta < ctx.r() {
        points.push((ctx.r().clone(), ctx.r().clone()));
    }
    let bump = PLMap::new(ctx.clone(), points)?;
    debug_assert!(bump.is_upward());
    Ok(bump)
}

/// The inverse shape: supported on `]alpha; beta[`, moving points down, with
/// right slope `n^q_exp < 1` at `alpha` and left slope `n^p_exp > 1` at
/// `beta`.
pub fn make_down_bump(
    ctx: &GroupContext,
    alpha: &Rational,
    beta: &Rational,
    q_exp: i64,
    p_exp: i64,
) -> Result<PLMap, Error> {
    Ok(make_bump(ctx, alpha, beta, -q_exp, -p_exp)?.inverse())
}

/// The standard generator pair over the dyadic unit interval: `x0` sends
/// `[0, 1/4, 1/2, 1]` to `[0, 1/2, 3/4, 1]`, and `x1` is the identity on
/// `[0; 1/2]` glued with a half-scale copy of `x0`. Both move points up.
pub fn standard_generators(ctx: &GroupContext) -> (PLMap, PLMap) {
    assert_eq!(
        (ctx.n(), ctx.r()),
        (2, &Rational::one()),
        "standard generators live over n = 2, r = 1"
    );
    let x0 = PLMap::new(
        ctx.clone(),
        vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 4), rat(1, 2)),
            (rat(1, 2), rat(3, 4)),
            (rat(1, 1), rat(1, 1)),
        ],
    )
    .expect("fixed breakpoint data");
    let x1 = PLMap::new(
        ctx.clone(),
        vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 2), rat(1, 2)),
            (rat(5, 8), rat(3, 4)),
            (rat(3, 4), rat(7, 8)),
            (rat(1, 1), rat(1, 1)),
        ],
    )
    .expect("fixed breakpoint data");
    (x0, x1)
}

/// A generating pair `(a, b)` for a wreath-product copy, kept together with
/// roots `c, d` satisfying `a = c^s` and `b = d^t`. `a` is supported on all
/// of `]0; r[`; `b` is supported on `]α₀; α₁[` where `α_k = (α₀)a^k`.
#[derive(Clone, Debug)]
pub struct Generators {
    ctx: GroupContext,
    pub c: PLMap,
    pub d: PLMap,
    pub a: PLMap,
    pub b: PLMap,
    a_inv: PLMap,
    pub s: u32,
    pub t: u32,
    pub alpha0: Rational,
}

impl Generators {
    /// Builds from bumps with the default slope pair `(n, 1/n)` for the
    /// roots: `c` a full bump on `]0; r[`, `a = c^s`, `d` a bump on
    /// `]α₀; α₁[`, `b = d^t`.
    pub fn build(ctx: &GroupContext, alpha0: &Rational, s: u32, t: u32) -> Result<Self, Error> {
        Self::build_with_slopes(ctx, alpha0, s, t, 1, -1)
    }

    /// [`Generators::build`] with a chosen slope pair for the root bumps.
    pub fn build_with_slopes(
        ctx: &GroupContext,
        alpha0: &Rational,
        s: u32,
        t: u32,
        p_exp: i64,
        q_exp: i64,
    ) -> Result<Self, Error> {
        if s == 0 || t == 0 {
            return Err(Error::Domain("root exponents must be positive".into()));
        }
        if !alpha0.is_positive() || alpha0 >= ctx.r() || !ctx.in_ring(alpha0) {
            return Err(Error::Domain(format!(
                "ladder base {alpha0} must lie in ]0; r[ ∩ Z[1/{}]",
                ctx.n()
            )));
        }
        let c = make_bump(ctx, &Rational::zero(), ctx.r(), p_exp, q_exp)?;
        let a = c.power(s as i64);
        let alpha1 = a.evaluate(alpha0);
        let d = make_bump(ctx, alpha0, &alpha1, p_exp, q_exp)?;
        let b = d.power(t as i64);
        let gens = Generators {
            ctx: ctx.clone(),
            a_inv: a.inverse(),
            c,
            d,
            a,
            b,
            s,
            t,
            alpha0: alpha0.clone(),
        };
        gens.check();
        Ok(gens)
    }

    /// The instance generated from the standard pair: `a = x0²`,
    /// `b = x1·x0⁻¹·x1⁻¹·x0`, ladder base `1/2`, roots `c = x0`, `d = b`.
    pub fn thompson() -> Self {
        let ctx = GroupContext::thompson();
        let (x0, x1) = standard_generators(&ctx);
        let a = x0.power(2);
        let b = x1
            .compose(&x0.inverse())
            .compose(&x1.inverse())
            .compose(&x0);
        let gens = Generators {
            ctx,
            a_inv: a.inverse(),
            c: x0,
            d: b.clone(),
            a,
            b,
            s: 2,
            t: 1,
            alpha0: rat(1, 2),
        };
        gens.check();
        gens
    }

    fn check(&self) {
        assert_eq!(self.c.power(self.s as i64), self.a);
        assert_eq!(self.d.power(self.t as i64), self.b);
        assert!(self.a.is_upward() && self.b.is_upward());
        let mut prev = Rational::zero();
        for k in -3..=3 {
            let cur = self.alpha(k);
            assert!(prev < cur, "ladder must increase strictly");
            prev = cur;
        }
        assert!(&prev < self.ctx.r());
        assert_eq!(
            self.a.support_hull(),
            Some((Rational::zero(), self.ctx.r().clone())),
            "a must be supported on all of ]0; r["
        );
        let expected = (self.alpha(0), self.alpha(1));
        assert_eq!(
            self.b.support_hull().expect("b is not the identity"),
            expected,
            "b must be supported on ]α₀; α₁["
        );
        assert_eq!(self.b.support().intervals().len(), 1);
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    /// The ladder point `α_k = (α₀)a^k`.
    pub fn alpha(&self, k: i64) -> Rational {
        let step = if k >= 0 { &self.a } else { &self.a_inv };
        let mut t = self.alpha0.clone();
        for _ in 0..k.unsigned_abs() {
            t = step.evaluate(&t);
        }
        t
    }

    /// `b_k = a^{-k} b a^k`, supported on `]α_k; α_{k+1}[`.
    pub fn basis_map(&self, k: i64) -> PLMap {
        self.b.conjugate(&self.a.power(k))
    }

    /// `d_k = a^{-k} d a^k`.
    pub fn root_map(&self, k: i64) -> PLMap {
        self.d.conjugate(&self.a.power(k))
    }
}

/// An injective increasing piecewise-affine self-map of `[0; r]` that fixes
/// `[a1; b1]` pointwise and contracts everything else toward it with slope
/// `n^{p_exp} < 1`. Its image is a proper subinterval of `[0; r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlInjection {
    ctx: GroupContext,
    points: Vec<(Rational, Rational)>,
}

/// Builds the squeeze conjugator for the windows `]a1; b1[ ⊂ ]a2; b2[`.
/// Fails, reporting the largest admissible exponent, when the slope is too
/// large for the image of `[0; r]` to land inside `]a2; b2[`.
pub fn squeeze_conjugator(
    ctx: &GroupContext,
    a1: &Rational,
    b1: &Rational,
    a2: &Rational,
    b2: &Rational,
    p_exp: i64,
) -> Result<PlInjection, Error> {
    if !(a2.is_positive() && a2 < a1 && a1 < b1 && b1 < b2 && b2 < ctx.r()) {
        return Err(Error::Domain(format!(
            "windows must nest as 0 < {a2} < {a1} < {b1} < {b2} < {}",
            ctx.r()
        )));
    }
    for v in [a1, b1, a2, b2] {
        if !ctx.in_ring(v) {
            return Err(Error::Domain(format!(
                "window endpoint {v} outside Z[1/{}]",
                ctx.n()
            )));
        }
    }
    if p_exp > -1 {
        return Err(Error::Domain(format!(
            "squeeze slope exponent must be negative, got {p_exp}"
        )));
    }
    let p = ctx.slope(p_exp);
    let image_lo = a1 * (Rational::one() - &p);
    let image_hi = b1 + &p * (ctx.r() - b1);
    if &image_lo <= a2 || &image_hi >= b2 {
        let bound = largest_squeeze_exp(ctx, a1, b1, a2, b2);
        return Err(Error::Domain(format!(
            "slope n^{p_exp} maps [0; r] onto [{image_lo}; {image_hi}], not inside ]{a2}; {b2}[; \
             largest admissible exponent is {bound:?}"
        )));
    }
    Ok(PlInjection {
        ctx: ctx.clone(),
        points: vec![
            (Rational::zero(), image_lo),
            (a1.clone(), a1.clone()),
            (b1.clone(), b1.clone()),
            (ctx.r().clone(), image_hi),
        ],
    })
}

/// The largest exponent accepted by [`squeeze_conjugator`] for these windows.
pub fn largest_squeeze_exp(
    ctx: &GroupContext,
    a1: &Rational,
    b1: &Rational,
    a2: &Rational,
    b2: &Rational,
) -> Option<i64> {
    // need p < (a1-a2)/a1 and p < (b2-b1)/(r-b1)
    let lim1 = (a1 - a2) / a1;
    let lim2 = (b2 - b1) / (ctx.r() - b1);
    let lim = lim1.min(lim2);
    if !lim.is_positive() {
        return None;
    }
    let mut e = -1i64;
    while ctx.slope(e) >= lim {
        e -= 1;
        if e < -4096 {
            return None;
        }
    }
    Some(e)
}

impl PlInjection {
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        assert!(!t.is_negative() && t <= self.ctx.r());
        let i = self.points.partition_point(|p| &p.0 <= t);
        if i == self.points.len() {
            return self.points[i - 1].1.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        y0 + (t - x0) * (y1 - y0) / (x1 - x0)
    }

    /// Preimage of a point of the image interval `[s(0); s(r)]`.
    pub fn preimage(&self, v: &Rational) -> Rational {
        assert!(
            v >= &self.points[0].1 && v <= &self.points[self.points.len() - 1].1,
            "{v} is outside the image"
        );
        let i = self.points.partition_point(|p| &p.1 <= v);
        if i == self.points.len() {
            return self.points[i - 1].0.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        x0 + (v - y0) * (x1 - x0) / (y1 - y0)
    }

    /// Interior cut points of the injection.
    fn cuts(&self) -> impl Iterator<Item = &Rational> {
        self.points[1..self.points.len() - 1].iter().map(|p| &p.0)
    }
}

/// Conjugation by the injection extended by the identity off its image:
/// a group endomorphism `x ↦ s⁻¹xs` that carries the support of `x` to its
/// `s`-image and fixes every element already supported in the window where
/// `s` is the identity.
pub fn squeeze(x: &PLMap, s: &PlInjection) -> PLMap {
    assert_eq!(x.ctx(), s.ctx(), "context mismatch in squeeze");
    let mut grid: Vec<Rational> = x.breakpoints().iter().map(|p| p.0.clone()).collect();
    for cut in s.cuts() {
        grid.push(cut.clone());
        grid.push(x.preimage(cut));
    }
    grid.sort();
    grid.dedup();
    let mut points = vec![(Rational::zero(), Rational::zero())];
    for u in grid {
        let v = x.evaluate(&u);
        points.push((s.evaluate(&u), s.evaluate(&v)));
    }
    points.push((x.ctx().r().clone(), x.ctx().r().clone()));
    PLMap::new(x.ctx().clone(), points).expect("squeezed breakpoints stay in the group")
}
