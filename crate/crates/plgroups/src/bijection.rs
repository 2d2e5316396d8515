//! Right-continuous piecewise-affine bijections of `[0; r)`: the ambient
//! group containing the homeomorphism group. Continuity predicates decide
//! membership in the interval-homeomorphism subgroup and in the circle
//! subgroup.

use num::{One, Signed, Zero};

use crate::numbers::{GroupContext, Rational};
use crate::plmap::PLMap;
use crate::Error;

/// One affine piece: `t ↦ slope·t + offset` on `[lo; hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Piece {
    lo: Rational,
    hi: Rational,
    slope: Rational,
    offset: Rational,
}

impl Piece {
    fn at(&self, t: &Rational) -> Rational {
        &self.slope * t + &self.offset
    }

    fn image_lo(&self) -> Rational {
        self.at(&self.lo)
    }

    /// Left limit of the image at `hi`; not attained on the half-open piece.
    fn image_hi(&self) -> Rational {
        self.at(&self.hi)
    }
}

/// A right-continuous piecewise-affine bijection of `[0; r)` with slopes in
/// `⟨n⟩`, cut points and their images in `ℤ[1/n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLBijection {
    ctx: GroupContext,
    pieces: Vec<Piece>,
}

impl PLBijection {
    /// Builds from `(lo, hi, image_lo, image_hi)` quadruples: each `[lo; hi)`
    /// is sent affinely onto `[image_lo; image_hi)`.
    pub fn from_interval_images(
        ctx: GroupContext,
        items: Vec<(Rational, Rational, Rational, Rational)>,
    ) -> Result<Self, Error> {
        let mut pieces = Vec::with_capacity(items.len());
        for (lo, hi, ilo, ihi) in items {
            if lo >= hi || ilo >= ihi {
                return Err(Error::Map(format!(
                    "degenerate piece [{lo}; {hi}) -> [{ilo}; {ihi})"
                )));
            }
            let slope = (&ihi - &ilo) / (&hi - &lo);
            let offset = &ilo - &slope * &lo;
            pieces.push(Piece {
                lo,
                hi,
                slope,
                offset,
            });
        }
        Self::validate(ctx, pieces)
    }

    fn validate(ctx: GroupContext, mut pieces: Vec<Piece>) -> Result<Self, Error> {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        if pieces.is_empty() {
            return Err(Error::Map("a bijection needs at least one piece".into()));
        }
        let r = ctx.r().clone();
        if !pieces[0].lo.is_zero() || pieces[pieces.len() - 1].hi != r {
            return Err(Error::Map("domain pieces must cover [0; r)".into()));
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::Map(format!(
                    "domain gap or overlap at {} vs {}",
                    w[0].hi, w[1].lo
                )));
            }
        }
        for p in &pieces {
            if ctx.log_slope(&p.slope).is_none() {
                return Err(Error::Map(format!(
                    "piece slope {} is not a power of {}",
                    p.slope,
                    ctx.n()
                )));
            }
            for v in [&p.lo, &p.hi, &p.image_lo(), &p.image_hi()] {
                if !ctx.in_ring(v) {
                    return Err(Error::Map(format!(
                        "cut data {v} is outside Z[1/{}]",
                        ctx.n()
                    )));
                }
            }
        }
        // images must tile [0; r) exactly
        let mut images: Vec<(Rational, Rational)> = pieces
            .iter()
            .map(|p| (p.image_lo(), p.image_hi()))
            .collect();
        images.sort();
        if !images[0].0.is_zero() || images[images.len() - 1].1 != r {
            return Err(Error::Map("images do not cover [0; r)".into()));
        }
        for w in images.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(Error::Map(format!(
                    "image gap or overlap at {} vs {}",
                    w[0].1, w[1].0
                )));
            }
        }
        Ok(PLBijection {
            ctx,
            pieces: merge(pieces),
        })
    }

    pub fn identity(ctx: &GroupContext) -> Self {
        PLBijection {
            ctx: ctx.clone(),
            pieces: vec![Piece {
                lo: Rational::zero(),
                hi: ctx.r().clone(),
                slope: Rational::one(),
                offset: Rational::zero(),
            }],
        }
    }

    /// The circle rotation `t ↦ t + c (mod r)` for `c ∈ ℤ[1/n] ∩ ]0; r[`.
    pub fn rotation(ctx: &GroupContext, c: &Rational) -> Result<Self, Error> {
        if !c.is_positive() || c >= ctx.r() || !ctx.in_ring(c) {
            return Err(Error::Map(format!("rotation amount {c} unusable")));
        }
        let r = ctx.r().clone();
        let cut = &r - c;
        PLBijection::from_interval_images(
            ctx.clone(),
            vec![
                (Rational::zero(), cut.clone(), c.clone(), r.clone()),
                (cut.clone(), r, Rational::zero(), c.clone()),
            ],
        )
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        assert!(
            !t.is_negative() && t < self.ctx.r(),
            "point {t} outside [0; {})",
            self.ctx.r()
        );
        let i = self.pieces.partition_point(|p| &p.lo <= t);
        self.pieces[i - 1].at(t)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &PLBijection) -> PLBijection {
        assert_eq!(self.ctx, other.ctx, "context mismatch in composition");
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let (ilo, ihi) = (p.image_lo(), p.image_hi());
            for q in &other.pieces {
                let lo = ilo.clone().max(q.lo.clone());
                let hi = ihi.clone().min(q.hi.clone());
                if lo >= hi {
                    continue;
                }
                // preimages of [lo; hi) inside p
                let dlo = (&lo - &p.offset) / &p.slope;
                let dhi = (&hi - &p.offset) / &p.slope;
                let slope = &p.slope * &q.slope;
                let offset = &q.slope * &p.offset + &q.offset;
                pieces.push(Piece {
                    lo: dlo,
                    hi: dhi,
                    slope,
                    offset,
                });
            }
        }
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        PLBijection {
            ctx: self.ctx.clone(),
            pieces: merge(pieces),
        }
    }

    pub fn inverse(&self) -> PLBijection {
        let mut pieces: Vec<Piece> = self
            .pieces
            .iter()
            .map(|p| {
                let slope = Rational::one() / &p.slope;
                let offset = -&p.offset / &p.slope;
                Piece {
                    lo: p.image_lo(),
                    hi: p.image_hi(),
                    slope,
                    offset,
                }
            })
            .collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        PLBijection {
            ctx: self.ctx.clone(),
            pieces: merge(pieces),
        }
    }

    pub fn commutes(&self, other: &PLBijection) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Continuity in the usual topology of `[0; r)`: at every interior cut
    /// the left limit equals the value.
    pub fn is_continuous(&self) -> bool {
        self.pieces
            .windows(2)
            .all(|w| w[0].image_hi() == w[1].image_lo())
    }

    /// Continuity in the circle topology obtained by gluing `0` to `r`:
    /// left limits match values modulo `r`, including across the seam.
    pub fn is_circle_continuous(&self) -> bool {
        let r = self.ctx.r();
        let wraps =
            |limit: &Rational, value: &Rational| limit == value || (limit == r && value.is_zero());
        let interior = self
            .pieces
            .windows(2)
            .all(|w| wraps(&w[0].image_hi(), &w[1].image_lo()));
        let seam = wraps(
            &self.pieces[self.pieces.len() - 1].image_hi(),
            &self.pieces[0].image_lo(),
        );
        interior && seam
    }
}

fn merge(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        match out.last_mut() {
            Some(last) if last.hi == p.lo && last.slope == p.slope && last.offset == p.offset => {
                last.hi = p.hi;
            }
            _ => out.push(p),
        }
    }
    out
}

impl PLMap {
    /// Views the homeomorphism as a right-continuous bijection of `[0; r)`.
    pub fn to_bijection(&self) -> PLBijection {
        let pts = self.breakpoints();
        let pieces = pts
            .windows(2)
            .map(|w| {
                let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                let offset = &w[0].1 - &slope * &w[0].0;
                Piece {
                    lo: w[0].0.clone(),
                    hi: w[1].0.clone(),
                    slope,
                    offset,
                }
            })
            .collect();
        PLBijection {
            ctx: self.ctx().clone(),
            pieces,
        }
    }
}
