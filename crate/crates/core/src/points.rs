//! Finite point sets in the discrete groups, kept sorted and deduplicated.

use crate::group::{GElem, GroupCtx};
use crate::error::Result;
use std::collections::BTreeSet;

/// A finite set of integer-coordinate group elements in canonical form:
/// lexicographically sorted, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<Vec<i64>>,
}

impl PointSet {
    pub fn new(mut points: Vec<Vec<i64>>) -> Self {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn from_elems<'a, I: IntoIterator<Item = &'a GElem>>(elems: I) -> Self {
        let points = elems
            .into_iter()
            .map(|e| e.as_int().expect("discrete element").to_vec())
            .collect();
        PointSet::new(points)
    }

    pub fn singleton(p: &[i64]) -> Self {
        PointSet { points: vec![p.to_vec()] }
    }

    /// The integer box `{lo_i ..= hi_i - 1}` in each coordinate (half-open).
    pub fn int_box(lo: &[i64], hi: &[i64]) -> Self {
        assert_eq!(lo.len(), hi.len());
        let mut points = vec![vec![]];
        for (l, h) in lo.iter().zip(hi) {
            let mut next = Vec::new();
            for p in &points {
                for v in *l..*h {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            points = next;
        }
        PointSet { points }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> {
        self.points.iter().map(|p| p.as_slice())
    }

    pub fn elems(&self) -> impl Iterator<Item = GElem> + '_ {
        self.points.iter().map(|p| GElem::Int(p.clone()))
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PointSet::new(points)
    }

    pub fn intersect(&self, other: &PointSet) -> PointSet {
        let set: BTreeSet<&[i64]> = other.iter().collect();
        PointSet {
            points: self.points.iter().filter(|p| set.contains(p.as_slice())).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let set: BTreeSet<&[i64]> = other.iter().collect();
        PointSet {
            points: self.points.iter().filter(|p| !set.contains(p.as_slice())).cloned().collect(),
        }
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// Minkowski product `{k·a : k ∈ self, a ∈ other}` under the group law of `ctx`.
    pub fn minkowski(&self, ctx: &GroupCtx, other: &PointSet) -> Result<PointSet> {
        let mut points = Vec::with_capacity(self.len() * other.len());
        for k in self.elems() {
            for a in other.elems() {
                let p = ctx.multiply(&k, &a)?;
                points.push(p.as_int().unwrap().to_vec());
            }
        }
        Ok(PointSet::new(points))
    }

    /// `{g^-1 : g ∈ self}`.
    pub fn inverse(&self, ctx: &GroupCtx) -> Result<PointSet> {
        let mut points = Vec::with_capacity(self.len());
        for g in self.elems() {
            points.push(ctx.inverse(&g)?.as_int().unwrap().to_vec());
        }
        Ok(PointSet::new(points))
    }

    /// Whether the set is symmetric (`S = S^-1`) and contains the identity.
    pub fn is_symmetric_unit_nbhd(&self, ctx: &GroupCtx) -> bool {
        let e = ctx.identity();
        self.contains(e.as_int().unwrap())
            && self.inverse(ctx).map(|inv| inv == *self).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_dedups_and_sorts() {
        let s = PointSet::new(vec![vec![3], vec![1], vec![3], vec![2]]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![&[1][..], &[2], &[3]]);
    }

    #[test]
    fn int_box_cardinality() {
        let s = PointSet::int_box(&[0, 0], &[6, 6]);
        assert_eq!(s.len(), 36);
    }

    #[test]
    fn heisenberg_minkowski_is_elementwise() {
        let ctx = GroupCtx::heisenberg();
        let k = PointSet::new(vec![vec![0, 0, 0], vec![1, 0, 0]]);
        let a = PointSet::singleton(&[0, 1, 0]);
        let prod = k.minkowski(&ctx, &a).unwrap();
        assert_eq!(prod, PointSet::new(vec![vec![0, 1, 0], vec![1, 1, 1]]));
    }

    #[test]
    fn symmetric_unit_nbhd_check() {
        let ctx = GroupCtx::int_lattice(1);
        assert!(PointSet::new(vec![vec![-1], vec![0], vec![1]]).is_symmetric_unit_nbhd(&ctx));
        assert!(!PointSet::new(vec![vec![0], vec![1]]).is_symmetric_unit_nbhd(&ctx));
        assert!(!PointSet::new(vec![vec![-1], vec![1]]).is_symmetric_unit_nbhd(&ctx));
    }
}
