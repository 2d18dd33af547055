//! Compact-set surrogates and their algebra over a [`GroupCtx`]: Minkowski
//! products, Haar measure, erosion, greedy packings and measure evaluation.

use crate::boxes::BoxUnion;
use crate::error::{Error, Result};
use crate::group::{GElem, GroupCtx};
use crate::points::PointSet;
use crate::rat::{rat, Rat};
use num_traits::Zero;

/// A compact-set surrogate: a finite point set in the discrete groups, a
/// canonical disjoint box union in `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSet {
    Points(PointSet),
    Boxes(BoxUnion),
}

impl GSet {
    pub fn points(ps: PointSet) -> Self {
        GSet::Points(ps)
    }

    pub fn boxes(bu: BoxUnion) -> Self {
        GSet::Boxes(bu)
    }

    pub fn is_empty(&self) -> bool {
        match self {
            GSet::Points(p) => p.is_empty(),
            GSet::Boxes(b) => b.is_empty(),
        }
    }

    pub fn as_points(&self) -> Result<&PointSet> {
        match self {
            GSet::Points(p) => Ok(p),
            GSet::Boxes(_) => Err(Error::Unsupported("expected a discrete point set".into())),
        }
    }

    pub fn as_boxes(&self) -> Result<&BoxUnion> {
        match self {
            GSet::Boxes(b) => Ok(b),
            GSet::Points(_) => Err(Error::Unsupported("expected a box union".into())),
        }
    }

    /// Haar measure: cardinality for point sets, volume for box unions.
    pub fn measure(&self) -> Rat {
        match self {
            GSet::Points(p) => rat(p.len() as i64),
            GSet::Boxes(b) => b.volume(),
        }
    }

    pub fn union(&self, other: &GSet) -> GSet {
        match (self, other) {
            (GSet::Points(a), GSet::Points(b)) => GSet::Points(a.union(b)),
            (GSet::Boxes(a), GSet::Boxes(b)) => GSet::Boxes(a.union(b)),
            _ => panic!("mixed set kinds"),
        }
    }

    pub fn intersect(&self, other: &GSet) -> GSet {
        match (self, other) {
            (GSet::Points(a), GSet::Points(b)) => GSet::Points(a.intersect(b)),
            (GSet::Boxes(a), GSet::Boxes(b)) => GSet::Boxes(a.intersect(b)),
            _ => panic!("mixed set kinds"),
        }
    }

    pub fn difference(&self, other: &GSet) -> GSet {
        match (self, other) {
            (GSet::Points(a), GSet::Points(b)) => GSet::Points(a.difference(b)),
            (GSet::Boxes(a), GSet::Boxes(b)) => GSet::Boxes(a.difference(b)),
            _ => panic!("mixed set kinds"),
        }
    }

    pub fn symmetric_difference(&self, other: &GSet) -> GSet {
        match (self, other) {
            (GSet::Points(a), GSet::Points(b)) => GSet::Points(a.symmetric_difference(b)),
            (GSet::Boxes(a), GSet::Boxes(b)) => GSet::Boxes(a.symmetric_difference(b)),
            _ => panic!("mixed set kinds"),
        }
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        match (self, other) {
            (GSet::Points(a), GSet::Points(b)) => a.is_subset(b),
            (GSet::Boxes(a), GSet::Boxes(b)) => a.is_subset(b),
            _ => panic!("mixed set kinds"),
        }
    }
}

/// Minkowski product `KA = {k·a : k ∈ K, a ∈ A}`.
pub fn minkowski(ctx: &GroupCtx, k: &GSet, a: &GSet) -> Result<GSet> {
    if k.is_empty() || a.is_empty() {
        // the product over an empty factor is empty
        return Ok(if k.is_empty() { k.clone() } else { a.clone() });
    }
    match (k, a) {
        (GSet::Points(k), GSet::Points(a)) => Ok(GSet::Points(k.minkowski(ctx, a)?)),
        (GSet::Boxes(k), GSet::Boxes(a)) => Ok(GSet::Boxes(k.minkowski(a))),
        _ => Err(Error::Unsupported("mixed set kinds in minkowski".into())),
    }
}

/// Haar measure of a canonical set.
pub fn measure(_ctx: &GroupCtx, a: &GSet) -> Rat {
    a.measure()
}

/// Set inverse `A^{-1}`.
pub fn inverse(ctx: &GroupCtx, a: &GSet) -> Result<GSet> {
    match a {
        GSet::Points(p) => Ok(GSet::Points(p.inverse(ctx)?)),
        GSet::Boxes(b) => Ok(GSet::Boxes(b.reflect())),
    }
}

/// Erosion `{g : Kg ⊆ A}`.
///
/// Discrete kinds test membership over the candidates `K^{-1}A`; box unions
/// go through the frame-complement construction of [`BoxUnion::erode`].
pub fn erode(ctx: &GroupCtx, a: &GSet, k: &GSet) -> Result<GSet> {
    if k.is_empty() {
        return Err(Error::EmptySet);
    }
    match (a, k) {
        (GSet::Points(a), GSet::Points(k)) => {
            let kinv = k.inverse(ctx)?;
            let candidates = kinv.minkowski(ctx, a)?;
            let mut keep = Vec::new();
            for g in candidates.elems() {
                let kg = k.minkowski(ctx, &PointSet::from_elems([&g]))?;
                if kg.is_subset(a) {
                    keep.push(g.as_int().unwrap().to_vec());
                }
            }
            Ok(GSet::Points(PointSet::new(keep)))
        }
        (GSet::Boxes(a), GSet::Boxes(k)) => Ok(GSet::Boxes(a.erode(k))),
        _ => Err(Error::Unsupported("mixed set kinds in erode".into())),
    }
}

/// Greedy maximal packing: elements `a_1, …, a_n` of `A` in lexicographic
/// order with `Ba_i` pairwise disjoint. Discrete kinds only.
pub fn greedy_packing(ctx: &GroupCtx, a: &GSet, b: &GSet) -> Result<Vec<GElem>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let a = a.as_points()?;
    let b = b.as_points()?;
    let mut chosen: Vec<GElem> = Vec::new();
    let mut covered = PointSet::default();
    // Ba_i ∩ Ba_j = ∅ iff a_j ∉ B⁻¹Ba_i; track the union of the B-translates
    let binv_b = b.inverse(ctx)?.minkowski(ctx, b)?;
    let mut blocked = PointSet::default();
    for cand in a.elems() {
        if blocked.contains(cand.as_int().unwrap()) {
            continue;
        }
        let ball = b.minkowski(ctx, &PointSet::from_elems([&cand]))?;
        debug_assert!(ball.intersect(&covered).is_empty());
        covered = covered.union(&ball);
        blocked = blocked.union(&binv_b.minkowski(ctx, &PointSet::from_elems([&cand]))?);
        chosen.push(cand);
    }
    Ok(chosen)
}

/// A locally finite measure: a weighted Dirac comb over a point set, or Haar
/// restricted to a box union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PMeasure {
    DiracComb { points: PointSet, weights: Vec<Rat> },
    HaarOn(BoxUnion),
}

impl PMeasure {
    /// Unit-weight Dirac comb.
    pub fn comb(points: PointSet) -> Self {
        let weights = vec![rat(1); points.len()];
        PMeasure::DiracComb { points, weights }
    }

    pub fn weighted_comb(points: PointSet, weights: Vec<Rat>) -> Self {
        assert_eq!(points.len(), weights.len());
        assert!(weights.iter().all(|w| *w > Rat::zero()), "weights must be positive");
        PMeasure::DiracComb { points, weights }
    }

    /// Evaluate `ν(A)` as a finite weighted count or volume of intersection.
    pub fn eval(&self, a: &GSet) -> Rat {
        match (self, a) {
            (PMeasure::DiracComb { points, weights }, GSet::Points(a)) => {
                let mut total = Rat::zero();
                for (p, w) in points.iter().zip(weights) {
                    if a.contains(p) {
                        total += w;
                    }
                }
                total
            }
            (PMeasure::HaarOn(support), GSet::Boxes(a)) => support.intersect(a).volume(),
            _ => panic!("measure and set live in different group kinds"),
        }
    }

    /// Right-translate `ν ↦ ν * δ_s`, i.e. the comb supported on `points·s`.
    pub fn right_translate(&self, ctx: &GroupCtx, s: &GElem) -> Result<PMeasure> {
        match self {
            PMeasure::DiracComb { points, weights } => {
                let mut moved: Vec<(Vec<i64>, Rat)> = Vec::with_capacity(points.len());
                for (p, w) in points.iter().zip(weights) {
                    let q = ctx.multiply(&GElem::Int(p.to_vec()), s)?;
                    moved.push((q.as_int().unwrap().to_vec(), w.clone()));
                }
                moved.sort();
                let (pts, ws): (Vec<_>, Vec<_>) = moved.into_iter().unzip();
                Ok(PMeasure::DiracComb { points: PointSet::new(pts), weights: ws })
            }
            PMeasure::HaarOn(support) => match s {
                GElem::Real(t) => Ok(PMeasure::HaarOn(support.translate(t))),
                GElem::Int(_) => Err(Error::InvalidElement("real translate expected".into())),
            },
        }
    }
}
