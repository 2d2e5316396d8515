//! The restricted wreath product ℤ≀ℤ in normal form `h·a^m`, where `h` lives
//! in the free abelian group on the conjugates `b_k = a^{-k} b a^k`. The
//! abstract group embeds into the homeomorphism group through a generator
//! pair, and membership in the embedded copy is decided exactly.

use std::collections::BTreeMap;
use std::fmt;

use crate::constructions::Generators;
use crate::numbers::Rational;
use crate::plmap::PLMap;
use crate::Error;

/// Normal form `(Π_k b_k^{e_k}) · a^shift` with finitely many nonzero `e_k`.
///
/// The multiplication law is `(h₁ a^{m₁})(h₂ a^{m₂}) = (h₁ · m₁▸h₂) a^{m₁+m₂}`
/// where `m▸` re-indexes `k ↦ k − m`, matching `a^m b_k a^{-m} = b_{k-m}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WreathElement {
    shift: i64,
    coeffs: BTreeMap<i64, i64>,
}

impl WreathElement {
    pub fn identity() -> Self {
        WreathElement::default()
    }

    pub fn gen_a() -> Self {
        WreathElement {
            shift: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn gen_b() -> Self {
        Self::basis(0)
    }

    /// `b_k = a^{-k} b a^k`.
    pub fn basis(k: i64) -> Self {
        WreathElement {
            shift: 0,
            coeffs: BTreeMap::from([(k, 1)]),
        }
    }

    pub fn new(shift: i64, coeffs: BTreeMap<i64, i64>) -> Self {
        let coeffs = coeffs.into_iter().filter(|&(_, e)| e != 0).collect();
        WreathElement { shift, coeffs }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        let mut coeffs = self.coeffs.clone();
        for (&k, &e) in &other.coeffs {
            let slot = coeffs.entry(k - self.shift).or_insert(0);
            *slot += e;
            if *slot == 0 {
                coeffs.remove(&(k - self.shift));
            }
        }
        WreathElement {
            shift: self.shift + other.shift,
            coeffs,
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, &e)| (k + self.shift, -e))
            .collect();
        WreathElement {
            shift: -self.shift,
            coeffs,
        }
    }

    pub fn pow(&self, e: i64) -> WreathElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = WreathElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn commutes(&self, other: &WreathElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Parses a whitespace-separated word over `a`, `b`, with optional
    /// integer exponents: `"a^-1 b a"`, `"b^3 a^2"`.
    pub fn from_word(word: &str) -> Result<WreathElement, Error> {
        let text = word.replace("⁻¹", "^-1");
        let mut acc = WreathElement::identity();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => {
                    let exp: i64 = e.parse().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("bad exponent in token {token:?}"),
                    })?;
                    (name, exp)
                }
                None => (token, 1),
            };
            let gen = match name {
                "a" => WreathElement::gen_a(),
                "b" => WreathElement::gen_b(),
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("unknown generator {name:?}, expected a or b"),
                    })
                }
            };
            acc = acc.mul(&gen.pow(exp));
        }
        Ok(acc)
    }

    /// Evaluates the normal form in the homeomorphism group:
    /// `Π_k b_k^{e_k} · a^shift`.
    pub fn embed(&self, gens: &Generators) -> PLMap {
        let mut acc = PLMap::identity(gens.ctx());
        if let Some((&k_min, _)) = self.coeffs.iter().next() {
            let mut k = k_min;
            let mut basis = gens.basis_map(k_min);
            for (&kk, &e) in &self.coeffs {
                while k < kk {
                    basis = basis.conjugate(&gens.a);
                    k += 1;
                }
                acc = acc.compose(&basis.power(e));
            }
        }
        acc.compose(&gens.a.power(self.shift))
    }

    /// True iff the shift is a multiple of `m`: the content of membership in
    /// the set `H·C(b a^m)`, which equals `H·⟨a^m⟩`. For `m = 0` this asks
    /// for shift zero.
    pub fn in_shift_coset(&self, m: i64) -> bool {
        if m == 0 {
            self.shift == 0
        } else {
            self.shift % m == 0
        }
    }
}

/// Whether `g` commutes with `b·a^m`. For `m ≠ 0` the elements passing this
/// test are exactly the powers of `b·a^m`.
pub fn commutes_with_shifted_generator(g: &WreathElement, m: i64) -> bool {
    let u = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(m));
    g.commutes(&u)
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} | {{", self.shift)?;
        let mut first = true;
        for (k, e) in &self.coeffs {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Decides membership of `x` in the embedded copy `⟨a, b⟩` and returns the
/// unique normal form when it exists.
///
/// The shift is read off from where `x` sends the ladder base (every base
/// coordinate fixes the ladder, so members send `α₀` to some `α_m`); the
/// remaining base part is compared block by block against powers of the
/// `b_k`, whose exponents are forced by right slopes at the ladder points.
pub fn wreath_decompose(x: &PLMap, gens: &Generators) -> Option<WreathElement> {
    assert_eq!(x.ctx(), gens.ctx(), "context mismatch");
    const WALK_CAP: i64 = 4096;
    let alpha0 = gens.alpha(0);
    let target = x.evaluate(&alpha0);
    let mut m = 0i64;
    let mut point = alpha0.clone();
    while point < target {
        m += 1;
        if m > WALK_CAP {
            return None;
        }
        point = gens.a.evaluate(&point);
    }
    while point > target {
        m -= 1;
        if m < -WALK_CAP {
            return None;
        }
        point = gens.a.inverse().evaluate(&point);
    }
    if point != target {
        return None;
    }

    let h = x.compose(&gens.a.power(-m));
    let mut coeffs = BTreeMap::new();
    if let Some((lo, hi)) = h.support_hull() {
        // a base-group element is supported strictly inside the ladder range
        if lo <= Rational::from_integer(0.into()) || &hi >= x.ctx().r() {
            return None;
        }
        // ladder indices whose block can meet the support
        let mut k_lo = 0i64;
        while gens.alpha(k_lo) > lo {
            k_lo -= 1;
            if k_lo < -WALK_CAP {
                return None;
            }
        }
        let mut k_hi = 0i64;
        while gens.alpha(k_hi + 1) < hi {
            k_hi += 1;
            if k_hi > WALK_CAP {
                return None;
            }
        }
        for k in k_lo..=k_hi {
            let ak = gens.alpha(k);
            if h.evaluate(&ak) != ak {
                return None;
            }
            let slope_exp = x.ctx().log_slope(&h.slope_right(&ak))?;
            let basis_exp = x
                .ctx()
                .log_slope(&gens.basis_map(k).slope_right(&ak))
                .expect("basis maps have slope in the group");
            if slope_exp % basis_exp != 0 {
                return None;
            }
            let e = slope_exp / basis_exp;
            if e != 0 {
                coeffs.insert(k, e);
            }
        }
    }
    let candidate = WreathElement::new(m, coeffs);
    if candidate.embed(gens) == *x {
        Some(candidate)
    } else {
        None
    }
}

/// A representation of `k ≥ 0` as a sum of four squares, by bounded search.
pub fn four_squares(k: u64) -> [u64; 4] {
    let isqrt = |v: u64| -> u64 {
        let mut s = (v as f64).sqrt() as u64;
        while s * s > v {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= v {
            s += 1;
        }
        s
    };
    for w in 0..=isqrt(k) {
        let rw = k - w * w;
        for x in w..=isqrt(rw) {
            let rx = rw - x * x;
            for y in x..=isqrt(rx) {
                let rest = rx - y * y;
                let z = isqrt(rest);
                if z * z == rest && z >= y {
                    return [w, x, y, z];
                }
            }
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

fn divides(a: i64, b: i64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// `k(k+1)` recovered from addition, divisibility and the constant 1 alone:
/// the unique `n` with `(∀m)(n|m ↔ k|m ∧ (k+1)|m)` and `(2k+1)|(2n−k)`.
/// The universal quantifier runs over `|m| ≤ 2|n| + radius`, which already
/// pins `n` down to `±k(k+1)` before the sign test.
fn pronic_from_identities(k: i64, cand_limit: i64, radius: i64) -> Result<i64, Error> {
    for n in -cand_limit..=cand_limit {
        // the instance m = n of the equivalence, as a cheap filter
        if !(divides(k, n) && divides(k + 1, n)) {
            continue;
        }
        let m_limit = 2 * n.abs() + radius;
        let lcm_like =
            (-m_limit..=m_limit).all(|m| divides(n, m) == (divides(k, m) && divides(k + 1, m)));
        if lcm_like && divides(2 * k + 1, 2 * n - k) {
            debug_assert_eq!(n, k * (k + 1));
            return Ok(n);
        }
    }
    Err(Error::Domain(format!(
        "no candidate within ±{cand_limit} satisfies the identities for k = {k}"
    )))
}

/// `k·l` computed using only addition, divisibility tests, and the constant
/// 1, through `(k+l)(k+l+1) = k(k+1) + l(l+1) + 2n`. Both arguments must be
/// bounded by `radius`.
pub fn mul_from_add_div(k: i64, l: i64, radius: i64) -> Result<i64, Error> {
    if k.abs() > radius || l.abs() > radius {
        return Err(Error::Domain(format!(
            "arguments ({k}, {l}) exceed the search radius {radius}"
        )));
    }
    let cand_limit = 2 * radius * (2 * radius + 1);
    let pk = pronic_from_identities(k, cand_limit, radius)?;
    let pl = pronic_from_identities(l, cand_limit, radius)?;
    let pkl = pronic_from_identities(k + l, cand_limit, radius)?;
    for n in -cand_limit..=cand_limit {
        if pk + pl + n + n == pkl {
            return Ok(n);
        }
    }
    Err(Error::Domain(format!(
        "product of ({k}, {l}) escapes the radius {radius}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, GroupContext};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gens() -> Generators {
        Generators::build(&GroupContext::thompson(), &rat(1, 2), 1, 1).unwrap()
    }

    fn random_element(rng: &mut ChaCha8Rng) -> WreathElement {
        let shift = rng.gen_range(-5..=5);
        let lo = rng.gen_range(-4..=0);
        let width = rng.gen_range(0..=6usize);
        let mut coeffs = BTreeMap::new();
        for k in lo..lo + width as i64 {
            let e = rng.gen_range(-3..=3);
            if e != 0 {
                coeffs.insert(k, e);
            }
        }
        WreathElement::new(shift, coeffs)
    }

    #[test]
    fn word_evaluation() {
        let b1 = WreathElement::from_word("a^-1 b a").unwrap();
        assert_eq!(b1, WreathElement::basis(1));
        assert_eq!(WreathElement::from_word("a⁻¹ b a").unwrap(), b1);
        let u = WreathElement::from_word("b^2 a^3 b^-1").unwrap();
        assert_eq!(u.shift(), 3);
        assert_eq!(u.coeffs(), &BTreeMap::from([(0, 2), (-3, -1)]));
        assert!(WreathElement::from_word("c").is_err());
        assert!(WreathElement::from_word("a^x").is_err());
    }

    #[test]
    fn group_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = random_element(&mut rng);
            let v = random_element(&mut rng);
            let w = random_element(&mut rng);
            assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
            assert!(u.mul(&u.inverse()).is_identity());
            assert_eq!(u.pow(3), u.mul(&u).mul(&u));
        }
        // base generators at disjoint indices commute
        assert!(WreathElement::basis(0).commutes(&WreathElement::basis(1)));
        assert!(!WreathElement::gen_a().commutes(&WreathElement::gen_b()));
    }

    #[test]
    fn conjugation_reindexes() {
        let a = WreathElement::gen_a();
        for k in -4..=4 {
            let bk = WreathElement::basis(k);
            let conj = a.mul(&bk).mul(&a.inverse());
            assert_eq!(conj, WreathElement::basis(k - 1));
        }
    }

    #[test]
    fn display_form() {
        let u = WreathElement::from_word("b a^-1 b^3 a^3").unwrap();
        assert_eq!(u.to_string(), "a^2 | {0: 1, 1: 3}");
        assert_eq!(WreathElement::identity().to_string(), "a^0 | {}");
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let g = gens();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let u = random_element(&mut rng);
            let v = random_element(&mut rng);
            assert_eq!(u.mul(&v).embed(&g), u.embed(&g).compose(&v.embed(&g)));
        }
        assert!(WreathElement::identity().embed(&g).is_identity());
    }

    #[test]
    fn basis_embeds_on_first_rung() {
        let g = gens();
        let b0 = WreathElement::gen_b().embed(&g);
        assert_eq!(b0, g.b);
        assert_eq!(b0.support_hull(), Some((g.alpha(0), g.alpha(1))));
    }

    #[test]
    fn decompose_round_trip() {
        let g = gens();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let u = random_element(&mut rng);
            let x = u.embed(&g);
            assert_eq!(wreath_decompose(&x, &g), Some(u));
        }
        assert_eq!(wreath_decompose(&g.a, &g), Some(WreathElement::gen_a()));
        assert_eq!(
            wreath_decompose(&PLMap::identity(g.ctx()), &g),
            Some(WreathElement::identity())
        );
    }

    #[test]
    fn decompose_rejects_non_members() {
        let g = gens();
        // a bump on the first rung whose slope pair is not a power of b's
        let a0 = g.alpha(0);
        let a1 = g.alpha(1);
        let impostor = crate::constructions::make_bump(g.ctx(), &a0, &a1, 1, -2).unwrap();
        assert_eq!(wreath_decompose(&impostor, &g), None);
        // an element fixing no ladder point
        let off = crate::constructions::make_bump(g.ctx(), &rat(0, 1), &rat(1, 4), 1, -1).unwrap();
        assert_eq!(wreath_decompose(&off, &g), None);
        // support reaching the interval ends cannot come from the base group
        let full = crate::constructions::make_bump(g.ctx(), &rat(0, 1), &rat(1, 1), 2, -2).unwrap();
        assert_eq!(wreath_decompose(&full, &g), None);
    }

    #[test]
    fn decompose_rejects_near_members() {
        // b distorted by a small correction inside its own rung: the slope
        // at the rung base still reads exponent 1, but the final equality
        // check must see through it
        let g = gens();
        let lo = rat(5, 8);
        let hi = rat(11, 16);
        let noise = crate::constructions::make_bump(g.ctx(), &lo, &hi, 1, -1).unwrap();
        let near = g.b.compose(&noise);
        assert_eq!(near.slope_right(&g.alpha(0)), g.b.slope_right(&g.alpha(0)));
        assert_eq!(wreath_decompose(&near, &g), None);
        // and the genuine element still round-trips
        assert_eq!(wreath_decompose(&g.b, &g), Some(WreathElement::gen_b()));
    }

    #[test]
    fn shift_cosets_express_divisibility() {
        let h = WreathElement::gen_b();
        assert!(h.in_shift_coset(0));
        assert!(h.in_shift_coset(5));
        assert!(!WreathElement::gen_a().pow(3).in_shift_coset(2));
        assert!(WreathElement::gen_a().pow(4).in_shift_coset(2));
        for m in -12i64..=12 {
            for k in -12i64..=12 {
                let witness = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(k));
                let div = if m == 0 { k == 0 } else { k % m == 0 };
                assert_eq!(witness.in_shift_coset(m), div, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn centralizer_of_b_a_m() {
        for m in [-3i64, -1, 1, 2, 3] {
            let u = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(m));
            for j in -3..=3 {
                assert!(commutes_with_shifted_generator(&u.pow(j), m));
            }
            assert!(!commutes_with_shifted_generator(&WreathElement::gen_b(), m));
            assert!(!commutes_with_shifted_generator(&WreathElement::gen_a(), m));
        }
        // bounded sweep: commuting elements are exactly the powers
        let m = 1i64;
        let u = WreathElement::gen_b().mul(&WreathElement::gen_a().pow(m));
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..300 {
            let g = random_element(&mut rng);
            if commutes_with_shifted_generator(&g, m) {
                let j = g.shift() / m;
                assert_eq!(g, u.pow(j), "commuting element must be a power of b a^{m}");
            }
        }
    }

    #[test]
    fn equal_words_embed_equally() {
        let g = gens();
        // relations of the group: conjugates at disjoint indices commute,
        // and a-conjugation shifts the index
        let pairs = [
            ("a^-1 b a b", "b a^-1 b a"),
            ("a a^-1 b", "b"),
            ("b^2 b^-1 a", "b a"),
            ("a^-2 b a^2 a^-1 b a", "a^-1 b a a^-2 b a^2"),
        ];
        for (w1, w2) in pairs {
            let u1 = WreathElement::from_word(w1).unwrap();
            let u2 = WreathElement::from_word(w2).unwrap();
            assert_eq!(u1, u2, "{w1} vs {w2}");
            assert_eq!(u1.embed(&g), u2.embed(&g));
        }
    }

    #[test]
    fn four_squares_small() {
        assert_eq!(four_squares(0), [0, 0, 0, 0]);
        let w = four_squares(7);
        assert_eq!(w.iter().map(|v| v * v).sum::<u64>(), 7);
        for k in 0..2000 {
            let w = four_squares(k);
            assert_eq!(w.iter().map(|v| v * v).sum::<u64>(), k, "k = {k}");
        }
    }

    #[test]
    fn multiplication_from_identities() {
        assert_eq!(mul_from_add_div(3, 4, 30).unwrap(), 12);
        assert_eq!(mul_from_add_div(5, 0, 30).unwrap(), 0);
        assert_eq!(mul_from_add_div(-7, 6, 30).unwrap(), -42);
        assert!(mul_from_add_div(40, 1, 30).is_err());
        // the sign-fixing divisibility, instantiated
        assert!(divides(2 * 3 + 1, 2 * 12 - 3));
        assert!(!divides(2 * 3 + 1, 2 * (-12) - 3));
    }
}
