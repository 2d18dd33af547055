//! The three boundary operators.
//!
//! For a set `K` and a set `A`:
//! - Følner boundary `δ^K A = KA △ A`,
//! - strong Følner boundary `∂_K A = K⁻¹A ∩ K⁻¹A^c
//!   = {g : Kg ∩ A ≠ ∅ and Kg ∩ A^c ≠ ∅}`,
//! - van Hove boundary `∂^K A = (KA ∩ cl(A^c)) ∪ (K⁻¹ cl(A^c) ∩ A)`.
//!
//! In the discrete groups all three are computed exactly. For box unions the
//! results are box unions correct up to measure zero (half-open endpoints
//! stand in for closures); densities only see measures, so callers compare
//! measures, never endpoint topology.

use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::points::PointSet;
use crate::sets::{self, GSet};

/// `δ^K A = KA △ A`.
pub fn folner_boundary(ctx: &GroupCtx, k: &GSet, a: &GSet) -> Result<GSet> {
    if k.is_empty() || a.is_empty() {
        return Err(Error::EmptySet);
    }
    let ka = sets::minkowski(ctx, k, a)?;
    Ok(ka.symmetric_difference(a))
}

/// `∂_K A = K⁻¹A ∩ K⁻¹A^c`, computed as `{g ∈ K⁻¹A : Kg ⊄ A}` in the
/// discrete groups and as dilation minus erosion for box unions.
pub fn strong_folner_boundary(ctx: &GroupCtx, k: &GSet, a: &GSet) -> Result<GSet> {
    if k.is_empty() || a.is_empty() {
        return Err(Error::EmptySet);
    }
    match (k, a) {
        (GSet::Points(kp), GSet::Points(_)) => {
            let kinv = GSet::Points(kp.inverse(ctx)?);
            let candidates = sets::minkowski(ctx, &kinv, a)?;
            let mut keep = Vec::new();
            let ap = a.as_points()?;
            for g in candidates.as_points()?.elems() {
                let kg = kp.minkowski(ctx, &PointSet::from_elems([&g]))?;
                if !kg.is_subset(ap) {
                    keep.push(g.as_int().unwrap().to_vec());
                }
            }
            Ok(GSet::Points(PointSet::new(keep)))
        }
        (GSet::Boxes(kb), GSet::Boxes(ab)) => {
            let dilated = kb.reflect().minkowski(ab);
            let eroded = ab.erode(kb);
            Ok(GSet::Boxes(dilated.difference(&eroded)))
        }
        _ => Err(Error::Unsupported("mixed set kinds in boundary".into())),
    }
}

/// `∂^K A = (KA ∩ cl(A^c)) ∪ (K⁻¹ cl(A^c) ∩ A)`.
///
/// Discrete groups: `(KA ∖ A) ∪ {a ∈ A : K⁻¹a ⊄ A}` exactly. Box unions:
/// `(KA ∖ A) ∪ (A ∖ erode(A, K⁻¹))`, correct up to measure zero since the
/// topological boundary of a box union is Haar-null.
pub fn van_hove_boundary(ctx: &GroupCtx, k: &GSet, a: &GSet) -> Result<GSet> {
    if k.is_empty() || a.is_empty() {
        return Err(Error::EmptySet);
    }
    match (k, a) {
        (GSet::Points(kp), GSet::Points(ap)) => {
            let ka = sets::minkowski(ctx, k, a)?;
            let outer = ka.difference(a);
            let kinv = kp.inverse(ctx)?;
            let mut inner = Vec::new();
            for g in ap.elems() {
                let kinv_g = kinv.minkowski(ctx, &PointSet::from_elems([&g]))?;
                if !kinv_g.is_subset(ap) {
                    inner.push(g.as_int().unwrap().to_vec());
                }
            }
            Ok(outer.union(&GSet::Points(PointSet::new(inner))))
        }
        (GSet::Boxes(kb), GSet::Boxes(ab)) => {
            let ka = kb.minkowski(ab);
            let outer = ka.difference(ab);
            // g ∈ K⁻¹ cl(A^c) iff K g meets A^c, i.e. g ∉ erode(A, K⁻¹);
            // K⁻¹ because the displayed formula dilates cl(A^c) by K⁻¹
            let inner = ab.difference(&ab.erode(&kb.reflect()));
            Ok(GSet::Boxes(outer.union(&inner)))
        }
        _ => Err(Error::Unsupported("mixed set kinds in boundary".into())),
    }
}
