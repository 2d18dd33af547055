//! Unions of half-open axis-aligned boxes with exact rational endpoints.
//!
//! The canonical form is a list of pairwise-disjoint boxes obtained by a
//! coordinate-sweep split against the arrangement grid of the union followed
//! by maximal merging, axis by axis from the last to the first, repeated to a
//! fixpoint. Output order is lexicographic, so serialization is reproducible.
//!
//! Half-open boxes `[lo, hi)` make tilings and comb examples measure-exact
//! without double counting. Reflection and erosion are correct up to measure
//! zero, which is all the density computations observe.

use crate::rat::{rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A single nonempty half-open box `[lo_1, hi_1) × … × [lo_d, hi_d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RBox {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
}

impl RBox {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Self {
        assert_eq!(lo.len(), hi.len());
        RBox { lo, hi }
    }

    pub fn interval(lo: Rat, hi: Rat) -> Self {
        RBox { lo: vec![lo], hi: vec![hi] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l >= h)
    }

    pub fn volume(&self) -> Rat {
        let mut v = rat(1);
        for (l, h) in self.lo.iter().zip(&self.hi) {
            v *= h - l;
        }
        v
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.lo.iter().zip(&self.hi).zip(p).all(|((l, h), x)| l <= x && x < h)
    }

    /// Minkowski sum of two half-open boxes, again half-open and exact.
    fn sum(&self, other: &RBox) -> RBox {
        RBox {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a + b).collect(),
        }
    }

    /// `-[lo, hi)` taken as `[-hi, -lo)`; exact up to measure zero.
    fn reflect(&self) -> RBox {
        RBox {
            lo: self.hi.iter().map(|h| -h).collect(),
            hi: self.lo.iter().map(|l| -l).collect(),
        }
    }
}

/// A finite union of pairwise-disjoint half-open boxes in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoxUnion {
    dim: usize,
    boxes: Vec<RBox>,
}

impl BoxUnion {
    pub fn empty(dim: usize) -> Self {
        BoxUnion { dim, boxes: Vec::new() }
    }

    pub fn new(dim: usize, boxes: Vec<RBox>) -> Self {
        for b in &boxes {
            assert_eq!(b.dim(), dim, "box dimension mismatch");
        }
        canonicalize(dim, boxes)
    }

    pub fn from_box(b: RBox) -> Self {
        BoxUnion::new(b.dim(), vec![b])
    }

    /// The interval `[lo, hi)` in `ℝ`.
    pub fn interval(lo: Rat, hi: Rat) -> Self {
        BoxUnion::new(1, vec![RBox::interval(lo, hi)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[RBox] {
        &self.boxes
    }

    pub fn volume(&self) -> Rat {
        self.boxes.iter().map(|b| b.volume()).fold(Rat::zero(), |a, v| a + v)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    pub fn union(&self, other: &BoxUnion) -> BoxUnion {
        let (cuts, ca, cb) = common_cells(self, other);
        assemble(self.dim, &cuts, ca.union(&cb).cloned().collect())
    }

    pub fn intersect(&self, other: &BoxUnion) -> BoxUnion {
        let (cuts, ca, cb) = common_cells(self, other);
        assemble(self.dim, &cuts, ca.intersection(&cb).cloned().collect())
    }

    pub fn difference(&self, other: &BoxUnion) -> BoxUnion {
        let (cuts, ca, cb) = common_cells(self, other);
        assemble(self.dim, &cuts, ca.difference(&cb).cloned().collect())
    }

    pub fn symmetric_difference(&self, other: &BoxUnion) -> BoxUnion {
        let (cuts, ca, cb) = common_cells(self, other);
        assemble(self.dim, &cuts, ca.symmetric_difference(&cb).cloned().collect())
    }

    pub fn is_subset(&self, other: &BoxUnion) -> bool {
        let (_, ca, cb) = common_cells(self, other);
        ca.is_subset(&cb)
    }

    pub fn translate(&self, by: &[Rat]) -> BoxUnion {
        let boxes = self
            .boxes
            .iter()
            .map(|b| RBox {
                lo: b.lo.iter().zip(by).map(|(x, t)| x + t).collect(),
                hi: b.hi.iter().zip(by).map(|(x, t)| x + t).collect(),
            })
            .collect();
        BoxUnion { dim: self.dim, boxes }
    }

    /// Minkowski sum: all pairwise box sums, re-canonicalized.
    pub fn minkowski(&self, other: &BoxUnion) -> BoxUnion {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                boxes.push(a.sum(b));
            }
        }
        canonicalize(self.dim, boxes)
    }

    pub fn reflect(&self) -> BoxUnion {
        canonicalize(self.dim, self.boxes.iter().map(|b| b.reflect()).collect())
    }

    /// Bounding box; `None` if empty.
    pub fn bounding_box(&self) -> Option<RBox> {
        let first = self.boxes.first()?;
        let mut lo = first.lo.clone();
        let mut hi = first.hi.clone();
        for b in &self.boxes[1..] {
            for i in 0..self.dim {
                if b.lo[i] < lo[i] {
                    lo[i] = b.lo[i].clone();
                }
                if b.hi[i] > hi[i] {
                    hi[i] = b.hi[i].clone();
                }
            }
        }
        Some(RBox { lo, hi })
    }

    /// `{g : K + g ⊆ self}` for a box union `K`, correct up to measure zero.
    ///
    /// Computed as a frame-bounded complement of the dilation of the
    /// complement by the reflection of `K`.
    pub fn erode(&self, k: &BoxUnion) -> BoxUnion {
        if self.is_empty() || k.is_empty() {
            return BoxUnion::empty(self.dim);
        }
        let ab = self.bounding_box().unwrap();
        let kb = k.bounding_box().unwrap();
        // margin per axis covering the full extent of K on either side
        let margin: Vec<Rat> = (0..self.dim)
            .map(|i| {
                let m = kb.lo[i].abs().max(kb.hi[i].abs());
                m + rat(1)
            })
            .collect();
        let inner = RBox {
            lo: (0..self.dim).map(|i| &ab.lo[i] - &margin[i]).collect(),
            hi: (0..self.dim).map(|i| &ab.hi[i] + &margin[i]).collect(),
        };
        let frame = RBox {
            lo: (0..self.dim).map(|i| &inner.lo[i] - &margin[i]).collect(),
            hi: (0..self.dim).map(|i| &inner.hi[i] + &margin[i]).collect(),
        };
        let complement = BoxUnion::from_box(frame).difference(self);
        let dilated = complement.minkowski(&k.reflect());
        BoxUnion::from_box(inner).difference(&dilated)
    }
}

/// Split all boxes against the per-axis arrangement grid, deduplicate the
/// atomic cells, then merge maximal runs axis by axis until nothing changes.
fn canonicalize(dim: usize, boxes: Vec<RBox>) -> BoxUnion {
    let boxes: Vec<RBox> = boxes.into_iter().filter(|b| !b.is_empty()).collect();
    if boxes.is_empty() {
        return BoxUnion::empty(dim);
    }
    let cuts = collect_cuts(dim, [&boxes[..]]);
    let cells = cells_of(dim, &boxes, &cuts);
    assemble(dim, &cuts, cells)
}

/// Per-axis sorted, deduplicated cut coordinates over several box lists.
fn collect_cuts<'a>(dim: usize, lists: impl IntoIterator<Item = &'a [RBox]>) -> Vec<Vec<Rat>> {
    let mut cuts: Vec<Vec<Rat>> = vec![Vec::new(); dim];
    for boxes in lists {
        for b in boxes {
            for i in 0..dim {
                cuts[i].push(b.lo[i].clone());
                cuts[i].push(b.hi[i].clone());
            }
        }
    }
    for c in &mut cuts {
        c.sort();
        c.dedup();
    }
    cuts
}

/// Atomic cells of the boxes, indexed per axis by grid-interval index. Every
/// box endpoint must be present in `cuts`.
fn cells_of(dim: usize, boxes: &[RBox], cuts: &[Vec<Rat>]) -> BTreeSet<Vec<u32>> {
    let mut cells: BTreeSet<Vec<u32>> = BTreeSet::new();
    for b in boxes {
        if b.is_empty() {
            continue;
        }
        let ranges: Vec<(u32, u32)> = (0..dim)
            .map(|i| {
                let lo = cuts[i].binary_search(&b.lo[i]).unwrap() as u32;
                let hi = cuts[i].binary_search(&b.hi[i]).unwrap() as u32;
                (lo, hi)
            })
            .collect();
        let mut idx: Vec<Vec<u32>> = vec![vec![]];
        for &(lo, hi) in &ranges {
            let mut next = Vec::new();
            for prefix in &idx {
                for j in lo..hi {
                    let mut p = prefix.clone();
                    p.push(j);
                    next.push(p);
                }
            }
            idx = next;
        }
        cells.extend(idx);
    }
    cells
}

/// Merge a set of atomic cells back into a canonical box union.
fn assemble(dim: usize, cuts: &[Vec<Rat>], cells: BTreeSet<Vec<u32>>) -> BoxUnion {
    if cells.is_empty() {
        return BoxUnion::empty(dim);
    }
    // index-range boxes, initially one cell each
    let mut ranged: Vec<(Vec<u32>, Vec<u32>)> = cells
        .into_iter()
        .map(|c| {
            let hi: Vec<u32> = c.iter().map(|j| j + 1).collect();
            (c, hi)
        })
        .collect();
    loop {
        let mut changed = false;
        for axis in (0..dim).rev() {
            // sort so that boxes identical on the other axes and adjacent on
            // this one become neighbors
            ranged.sort_by(|a, b| {
                let ka = sort_key(a, axis);
                let kb = sort_key(b, axis);
                ka.cmp(&kb)
            });
            let mut merged: Vec<(Vec<u32>, Vec<u32>)> = Vec::with_capacity(ranged.len());
            for item in ranged.drain(..) {
                if let Some(last) = merged.last_mut() {
                    if same_except(&last.0, &item.0, axis)
                        && same_except(&last.1, &item.1, axis)
                        && last.1[axis] == item.0[axis]
                    {
                        last.1[axis] = item.1[axis];
                        changed = true;
                        continue;
                    }
                }
                merged.push(item);
            }
            ranged = merged;
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<RBox> = ranged
        .into_iter()
        .map(|(lo, hi)| RBox {
            lo: lo.iter().enumerate().map(|(i, &j)| cuts[i][j as usize].clone()).collect(),
            hi: hi.iter().enumerate().map(|(i, &j)| cuts[i][j as usize].clone()).collect(),
        })
        .collect();
    out.sort();
    BoxUnion { dim, boxes: out }
}

/// Atomic-cell decompositions of two unions over their combined grid.
fn common_cells(a: &BoxUnion, b: &BoxUnion) -> (Vec<Vec<Rat>>, BTreeSet<Vec<u32>>, BTreeSet<Vec<u32>>) {
    let cuts = collect_cuts(a.dim, [&a.boxes[..], &b.boxes[..]]);
    let ca = cells_of(a.dim, &a.boxes, &cuts);
    let cb = cells_of(a.dim, &b.boxes, &cuts);
    (cuts, ca, cb)
}

fn sort_key(b: &(Vec<u32>, Vec<u32>), axis: usize) -> (Vec<u32>, Vec<u32>, u32) {
    let lo: Vec<u32> =
        b.0.iter().enumerate().filter(|(i, _)| *i != axis).map(|(_, v)| *v).collect();
    let hi: Vec<u32> =
        b.1.iter().enumerate().filter(|(i, _)| *i != axis).map(|(_, v)| *v).collect();
    (lo, hi, b.0[axis])
}

fn same_except(a: &[u32], b: &[u32], axis: usize) -> bool {
    a.iter().zip(b).enumerate().all(|(i, (x, y))| i == axis || x == y)
}
