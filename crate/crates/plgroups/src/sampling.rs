//! Deterministic random elements for property campaigns: homeomorphisms from
//! pairs of n-ary interval subdivisions, and right-continuous bijections from
//! subdivision pairs with a leaf permutation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bijection::PLBijection;
use crate::numbers::{GroupContext, Rational};
use crate::plmap::PLMap;

/// A subdivision of `[0; r]` obtained by repeatedly cutting one part into
/// `n` equal pieces. All cut points lie in `ℤ[1/n]·r ⊆ ℤ[1/n]`.
fn random_subdivision<R: Rng>(ctx: &GroupContext, rng: &mut R, splits: usize) -> Vec<Rational> {
    let mut cuts = vec![Rational::from_integer(0.into()), ctx.r().clone()];
    for _ in 0..splits {
        let gap = rng.gen_range(0..cuts.len() - 1);
        let lo = cuts[gap].clone();
        let width = (&cuts[gap + 1] - &lo) / Rational::from_integer(ctx.n().into());
        for i in 1..ctx.n() as i64 {
            cuts.push(&lo + &width * Rational::from_integer(i.into()));
        }
        cuts.sort();
    }
    cuts
}

/// A random homeomorphism: two equal-size subdivisions matched leaf by leaf.
pub fn random_plmap<R: Rng>(ctx: &GroupContext, rng: &mut R, splits: usize) -> PLMap {
    let dom = random_subdivision(ctx, rng, splits);
    let img = random_subdivision(ctx, rng, splits);
    let points = dom.into_iter().zip(img).collect();
    PLMap::new(ctx.clone(), points).expect("subdivision pairs are valid maps")
}

/// A random product of two subdivision-pair homeomorphisms, for samples with
/// richer breakpoint patterns.
pub fn random_plmap_product<R: Rng>(ctx: &GroupContext, rng: &mut R, splits: usize) -> PLMap {
    random_plmap(ctx, rng, splits).compose(&random_plmap(ctx, rng, splits))
}

/// A random right-continuous bijection: two equal-size subdivisions and a
/// random leaf permutation.
pub fn random_bijection<R: Rng>(ctx: &GroupContext, rng: &mut R, splits: usize) -> PLBijection {
    let dom = random_subdivision(ctx, rng, splits);
    let img = random_subdivision(ctx, rng, splits);
    let leaves = dom.len() - 1;
    let mut order: Vec<usize> = (0..leaves).collect();
    order.shuffle(rng);
    let items = (0..leaves)
        .map(|i| {
            let j = order[i];
            (
                dom[i].clone(),
                dom[i + 1].clone(),
                img[j].clone(),
                img[j + 1].clone(),
            )
        })
        .collect();
    PLBijection::from_interval_images(ctx.clone(), items)
        .expect("permuted subdivision pairs are valid bijections")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_maps_satisfy_group_axioms() {
        let ctx = GroupContext::thompson();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = random_plmap(&ctx, &mut rng, 4);
            let y = random_plmap(&ctx, &mut rng, 3);
            let z = random_plmap(&ctx, &mut rng, 2);
            assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
            assert!(x.compose(&x.inverse()).is_identity());
        }
    }

    #[test]
    fn random_maps_work_for_other_bases() {
        let ctx = GroupContext::new(3, Rational::from_integer(2.into())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let x = random_plmap(&ctx, &mut rng, 3);
            assert!(x.compose(&x.inverse()).is_identity());
        }
    }

    #[test]
    fn random_bijections_compose() {
        let ctx = GroupContext::thompson();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let v = random_bijection(&ctx, &mut rng, 3);
            let w = random_bijection(&ctx, &mut rng, 2);
            assert_eq!(v.compose(&v.inverse()), PLBijection::identity(&ctx));
            let _ = v.compose(&w);
        }
    }
}
