//! Morphisms between spiral sums.
//!
//! For bounded lifts `A`, `B`, adjunction along the covering gives
//! `Hom(π_! A, π_! B) = ⊕_k Hom(A, T_{kC} B)`, a finite sum because only
//! translates whose closure meets `A` contribute. A block `(i, j, k)`
//! is the coefficient of the canonical generator `A_i → B_j + kC`.

use std::collections::BTreeMap;

use super::{circle_thicken_tracked, CircleSheaf};
use crate::barcode::Bar;
use crate::error::{Error, Result};
use crate::hom::{hom_nonzero, structure_constant};
use crate::linalg::Fp;
use crate::scalar::Scalar;
use crate::thicken::restriction_coefficient;

/// Tags `(source spiral, target spiral, deck translate)`.
pub type Blocks = BTreeMap<(usize, usize, i64), u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CircleMorphism {
    source: CircleSheaf,
    target: CircleSheaf,
    blocks: Blocks,
}

fn deck(c: &Scalar, k: i64) -> Scalar {
    c * &Scalar::int(k)
}

fn translate(b: &Bar, by: &Scalar) -> Bar {
    Bar::new(b.interval.translate(by), b.degree)
}

/// Every `k` with `Hom(a, b + kC) ≠ 0`.
pub fn circle_hom_tags(a: &Bar, b: &Bar, c: &Scalar) -> Vec<i64> {
    let end = |b: &Bar, right: bool| {
        let e = if right { b.interval.right() } else { b.interval.left() };
        e.finite().expect("bounded lift").clone()
    };
    // Closures meet iff kC ∈ [a_l − b_r, a_r − b_l].
    let lo = (&end(a, false) - &end(b, true)) / c;
    let hi = (&end(a, true) - &end(b, false)) / c;
    let lo_k = -i64::try_from((-lo).floor()).expect("deck index fits");
    let hi_k = i64::try_from(hi.floor()).expect("deck index fits");
    (lo_k..=hi_k)
        .filter(|&k| hom_nonzero(a, &translate(b, &deck(c, k))))
        .collect()
}

fn spirals_only(x: &CircleSheaf) -> Result<()> {
    if x.has_bands() {
        return Err(Error::UnsupportedBands(format!(
            "morphisms are computed on spiral sums only, got {x}"
        )));
    }
    Ok(())
}

impl CircleMorphism {
    /// Builds a morphism, dropping zero blocks and rejecting blocks on
    /// vanishing Hom spaces.
    pub fn new(source: CircleSheaf, target: CircleSheaf, blocks: Blocks) -> Result<Self> {
        source.same_circle(&target)?;
        spirals_only(&source)?;
        spirals_only(&target)?;
        let p = source.characteristic();
        let c = source.circumference().clone();
        let mut clean = Blocks::new();
        for ((i, j, k), v) in blocks {
            let v = v % p;
            if v == 0 {
                continue;
            }
            let (Some(a), Some(b)) = (source.spirals().get(i), target.spirals().get(j)) else {
                return Err(Error::ShapeMismatch(format!("block ({i}, {j}, {k}) out of range")));
            };
            if !hom_nonzero(a, &translate(b, &deck(&c, k))) {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i}, {j}, {k}) on a zero Hom space"
                )));
            }
            *clean.entry((i, j, k)).or_insert(0) = v;
        }
        Ok(CircleMorphism {
            source,
            target,
            blocks: clean,
        })
    }

    pub fn zero(source: CircleSheaf, target: CircleSheaf) -> Result<Self> {
        Self::new(source, target, Blocks::new())
    }

    pub fn identity(x: &CircleSheaf) -> Result<Self> {
        let blocks = (0..x.spirals().len()).map(|i| ((i, i, 0), 1)).collect();
        Self::new(x.clone(), x.clone(), blocks)
    }

    pub fn source(&self) -> &CircleSheaf {
        &self.source
    }

    pub fn target(&self) -> &CircleSheaf {
        &self.target
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl std::fmt::Debug for CircleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} → {:?} {:?}", self.source, self.target, self.blocks)
    }
}

/// Diagrammatic composite: `m2 ∘ m1`.
pub fn circle_compose(m1: &CircleMorphism, m2: &CircleMorphism) -> Result<CircleMorphism> {
    if m1.target != m2.source {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose: {:?} then {:?}",
            m1.target, m2.source
        )));
    }
    let p = m1.source.characteristic();
    let fp = Fp::new(p);
    let c = m1.source.circumference();
    let (xs, ys, zs) = (m1.source.spirals(), m1.target.spirals(), m2.target.spirals());
    let mut out = Blocks::new();
    for (&(i, j, k1), &v1) in &m1.blocks {
        for (&(_, l, k2), &v2) in m2.blocks.range((j, 0, i64::MIN)..=(j, usize::MAX, i64::MAX)) {
            let b = translate(&ys[j], &deck(c, k1));
            let z = translate(&zs[l], &deck(c, k1 + k2));
            let s = structure_constant(&xs[i], &b, &z, p);
            if s != 0 {
                let e = out.entry((i, l, k1 + k2)).or_insert(0);
                *e = fp.add(*e, fp.mul(s, fp.mul(v1, v2)));
            }
        }
    }
    out.retain(|_, v| *v != 0);
    CircleMorphism::new(m1.source.clone(), m2.target.clone(), out)
}

/// `K_a` on a morphism: generators thicken to generators, with tags moved
/// by the deck indices gained in renormalizing the thickened lifts.
pub fn circle_thicken_morphism(m: &CircleMorphism, a: &Scalar) -> Result<CircleMorphism> {
    let (ks, ps, ms) = circle_thicken_tracked(&m.source, a);
    let (kt, pt, mt) = circle_thicken_tracked(&m.target, a);
    let blocks = m
        .blocks
        .iter()
        .map(|(&(i, j, k), &v)| ((ps[i], pt[j], k + mt[j] - ms[i]), v))
        .collect();
    CircleMorphism::new(ks, kt, blocks)
}

/// `ρ_{a,b}: K_b F → K_a F` for `a ≤ b`, spiralwise `ρ_{0,b−a}` on `K_a`.
pub fn circle_restriction(f: &CircleSheaf, a: &Scalar, b: &Scalar) -> Result<CircleMorphism> {
    if a > b {
        return Err(Error::BadRestriction {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let c = b - a;
    let (ka, pa, ma) = circle_thicken_tracked(f, a);
    let (kb, pb, mb) = circle_thicken_tracked(f, b);
    let p = f.characteristic();
    let circ = f.circumference();
    let mut blocks = Blocks::new();
    for k in 0..f.spirals().len() {
        let image = translate(&ka.spirals()[pa[k]], &deck(circ, ma[k]));
        let v = restriction_coefficient(&image, &c) % p;
        if v != 0 {
            blocks.insert((pb[k], pa[k], ma[k] - mb[k]), v);
        }
    }
    CircleMorphism::new(kb, ka, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_thicken, default_circumference, Band};

    fn arc(iv: &str, d: i64) -> Bar {
        Bar::new(iv.parse().unwrap(), d)
    }

    fn sheaf(bars: Vec<Bar>) -> CircleSheaf {
        CircleSheaf::spirals_only(default_circumference(), 3, bars).unwrap()
    }

    #[test]
    fn tags_count_deck_translates() {
        let c = default_circumference();
        // A winding spiral maps onto a short arc through two translates.
        assert_eq!(circle_hom_tags(&arc("[0,5]", 0), &arc("[0,1]", 0), &c), vec![0, 1]);
        assert_eq!(circle_hom_tags(&arc("[0,1]", 0), &arc("[3,7/2]", 0), &c), Vec::<i64>::new());
        // Sections of the closed arc over the open lift: [4,5) ⊂ (3,5).
        assert_eq!(circle_hom_tags(&arc("(3,5)", 0), &arc("[0,1]", 0), &c), vec![1]);
        // Ext¹ across the wrap, from 0 → k_[-1,0) → k_[-1,1] → k_[0,1] → 0.
        assert_eq!(circle_hom_tags(&arc("[0,1]", 1), &arc("[3,4)", 0), &c), vec![-1]);
        assert_eq!(circle_hom_tags(&arc("[3,4)", 1), &arc("[0,1]", 0), &c), Vec::<i64>::new());
    }

    #[test]
    fn identity_is_neutral() {
        let f = sheaf(vec![arc("[0,5]", 0), arc("(1,2)", 1), arc("[3,4)", 0)]);
        let id = CircleMorphism::identity(&f).unwrap();
        let r = circle_restriction(&f, &Scalar::zero(), &Scalar::half()).unwrap();
        assert_eq!(circle_compose(&id, &id).unwrap(), id);
        assert_eq!(circle_compose(&r, &id).unwrap(), r);
        let id_k = CircleMorphism::identity(r.source()).unwrap();
        assert_eq!(circle_compose(&id_k, &r).unwrap(), r);
    }

    #[test]
    fn restrictions_compose() {
        let f = sheaf(vec![arc("[0,1]", 0), arc("(3,9/2)", 0), arc("[1/2,3)", 1), arc("{2}", 0)]);
        let q = |n: i64, d: i64| Scalar::new(n, d);
        for (a, b, c) in [(q(0, 1), q(1, 2), q(1, 1)), (q(1, 4), q(1, 2), q(3, 1)), (q(0, 1), q(1, 3), q(1, 2))] {
            let rab = circle_restriction(&f, &a, &b).unwrap();
            let rbc = circle_restriction(&f, &b, &c).unwrap();
            let rac = circle_restriction(&f, &a, &c).unwrap();
            assert_eq!(circle_compose(&rbc, &rab).unwrap(), rac, "a = {a}, b = {b}, c = {c}");
        }
    }

    #[test]
    fn thickening_is_functorial() {
        let f = sheaf(vec![arc("[0,1]", 0), arc("[3,9/2]", 0)]);
        let r = circle_restriction(&f, &Scalar::zero(), &Scalar::one()).unwrap();
        let a = Scalar::new(3, 2);
        let kr = circle_thicken_morphism(&r, &a).unwrap();
        assert_eq!(kr.source(), &circle_thicken(r.source(), &a));
        let k_id = circle_thicken_morphism(&CircleMorphism::identity(&f).unwrap(), &a).unwrap();
        assert_eq!(k_id, CircleMorphism::identity(&circle_thicken(&f, &a)).unwrap());
    }

    #[test]
    fn bands_are_refused() {
        let k = CircleSheaf::new(default_circumference(), 3, vec![], vec![Band::trivial(0, 1)]).unwrap();
        assert!(matches!(CircleMorphism::identity(&k), Err(Error::UnsupportedBands(_))));
    }
}
