//! Finite unions of disjoint open intervals, used for supports and fixed-point
//! complements. Endpoints are exact rationals but are not required to lie in
//! the coefficient ring: a fixed point of an affine piece can fall outside it.

use std::fmt;

use crate::numbers::Rational;

/// An ordered finite union of disjoint open intervals `]lo; hi[`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    items: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { items: Vec::new() }
    }

    pub fn single(lo: Rational, hi: Rational) -> Self {
        assert!(lo < hi, "degenerate interval ]{lo}; {hi}[");
        IntervalSet {
            items: vec![(lo, hi)],
        }
    }

    /// Builds from intervals that must already be ordered and separated.
    pub fn new(items: Vec<(Rational, Rational)>) -> Self {
        for (lo, hi) in &items {
            assert!(lo < hi, "degenerate interval ]{lo}; {hi}[");
        }
        for w in items.windows(2) {
            assert!(w[0].1 <= w[1].0, "intervals out of order or overlapping");
        }
        IntervalSet { items }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.items
    }

    /// Smallest closed interval containing the set, when nonempty.
    pub fn hull(&self) -> Option<(&Rational, &Rational)> {
        match (self.items.first(), self.items.last()) {
            (Some((lo, _)), Some((_, hi))) => Some((lo, hi)),
            _ => None,
        }
    }

    pub fn contains(&self, point: &Rational) -> bool {
        self.items.iter().any(|(lo, hi)| lo < point && point < hi)
    }

    pub fn is_disjoint_from(&self, other: &IntervalSet) -> bool {
        for (a, b) in &self.items {
            for (c, d) in &other.items {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    return false;
                }
            }
        }
        true
    }

    /// True when the closures of the two sets are disjoint.
    pub fn is_separated_from(&self, other: &IntervalSet) -> bool {
        match (self.hull(), other.hull()) {
            (Some((a, b)), Some((c, d))) => b < c || d < a,
            _ => true,
        }
    }

    /// True when every interval lies strictly inside `]lo; hi[`.
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        self.items.iter().all(|(a, b)| lo <= a && b <= hi)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "{{}}");
        }
        let mut first = true;
        for (lo, hi) in &self.items {
            if !first {
                write!(f, " u ")?;
            }
            write!(f, "]{lo}; {hi}[")?;
            first = false;
        }
        Ok(())
    }
}
