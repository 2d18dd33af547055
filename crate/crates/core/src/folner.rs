//! Følner sequence generators, boundary-ratio diagnostics and the thickening
//! construction.
//!
//! Sequences are ℕ-indexed (nets over general directed posets are not needed
//! at desk scale). The comb family in `ℝ` is a box-union stand-in for the
//! classical nowhere-dense example: it is a Følner sequence whose strong
//! Følner ratios do not vanish, and thickening by a symmetric unit
//! neighborhood repairs that.

use crate::boundary;
use crate::boxes::{BoxUnion, RBox};
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::points::PointSet;
use crate::rat::{rat, ratio, Rat};
use crate::sets::{self, GSet, PMeasure};
use serde::{Deserialize, Serialize};

/// Which boundary operator a ratio refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    Folner,
    Strong,
    VanHove,
}

impl BoundaryKind {
    pub fn compute(&self, ctx: &GroupCtx, k: &GSet, a: &GSet) -> Result<GSet> {
        match self {
            BoundaryKind::Folner => boundary::folner_boundary(ctx, k, a),
            BoundaryKind::Strong => boundary::strong_folner_boundary(ctx, k, a),
            BoundaryKind::VanHove => boundary::van_hove_boundary(ctx, k, a),
        }
    }
}

/// An indexed generator `n ↦ GSet` with a declared family tag.
#[derive(Debug, Clone)]
pub enum FolnerSeq {
    /// `{0..n-1}^d` in `ℤ^d`.
    CubesZd { d: usize },
    /// `[0,n)^d` in `ℝ^d`.
    CubesRd { d: usize },
    /// `{(a,b,c) : 0 ≤ a,b < n, 0 ≤ c < n²}` in `H₃(ℤ)`, measure `n⁴`.
    HeisenbergBoxes,
    /// `A_n = ⋃_{k=0}^{n-1} [k, k+1-1/n)` in `ℝ`: Følner but not strong
    /// Følner. The tag records the scale `ε` of the probe neighborhood
    /// `[-ε, ε]` against which the strong ratio converges to `2ε`.
    CombR1 { eps: Rat },
    /// `n ↦ L·A_n` for a base sequence and a symmetric unit neighborhood `L`.
    Thickened { base: Box<FolnerSeq>, l: GSet },
    /// A caller-supplied finite list of sets; index is clamped to the list.
    Custom { ctx: GroupCtx, sets: Vec<GSet> },
}

impl FolnerSeq {
    pub fn ctx(&self) -> GroupCtx {
        match self {
            FolnerSeq::CubesZd { d } => GroupCtx::int_lattice(*d),
            FolnerSeq::CubesRd { d } => GroupCtx::real_boxes(*d),
            FolnerSeq::HeisenbergBoxes => GroupCtx::heisenberg(),
            FolnerSeq::CombR1 { .. } => GroupCtx::real_boxes(1),
            FolnerSeq::Thickened { base, .. } => base.ctx(),
            FolnerSeq::Custom { ctx, .. } => *ctx,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            FolnerSeq::CubesZd { d } => format!("cubes_Z{d}"),
            FolnerSeq::CubesRd { d } => format!("cubes_R{d}"),
            FolnerSeq::HeisenbergBoxes => "heisenberg_boxes".into(),
            FolnerSeq::CombR1 { eps } => format!("comb_R1({eps})"),
            FolnerSeq::Thickened { base, .. } => format!("thickened({})", base.tag()),
            FolnerSeq::Custom { .. } => "custom".into(),
        }
    }

    /// Generate `A_n`; every generated set is nonempty with positive measure.
    pub fn generate(&self, n: u64) -> Result<GSet> {
        assert!(n >= 1, "index must be at least 1");
        Ok(match self {
            FolnerSeq::CubesZd { d } => {
                let lo = vec![0i64; *d];
                let hi = vec![n as i64; *d];
                GSet::Points(PointSet::int_box(&lo, &hi))
            }
            FolnerSeq::CubesRd { d } => {
                let lo = vec![rat(0); *d];
                let hi = vec![rat(n as i64); *d];
                GSet::Boxes(BoxUnion::from_box(RBox::new(lo, hi)))
            }
            FolnerSeq::HeisenbergBoxes => {
                let n = n as i64;
                let mut pts = Vec::with_capacity((n * n * n * n) as usize);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n * n {
                            pts.push(vec![a, b, c]);
                        }
                    }
                }
                GSet::Points(PointSet::new(pts))
            }
            FolnerSeq::CombR1 { .. } => {
                let n = n as i64;
                let teeth: Vec<RBox> = (0..n)
                    .map(|k| RBox::interval(rat(k), rat(k) + rat(1) - ratio(1, n)))
                    .collect();
                GSet::Boxes(BoxUnion::new(1, teeth))
            }
            FolnerSeq::Thickened { base, l } => {
                let a = base.generate(n)?;
                sets::minkowski(&base.ctx(), l, &a)?
            }
            FolnerSeq::Custom { sets, .. } => {
                let idx = ((n - 1) as usize).min(sets.len() - 1);
                sets[idx].clone()
            }
        })
    }
}

/// Exact ratio `m(boundary(K, A_n)) / m(A_n)` for the requested boundary.
pub fn ratio_at(seq: &FolnerSeq, n: u64, k: &GSet, kind: BoundaryKind) -> Result<Rat> {
    let ctx = seq.ctx();
    let a = seq.generate(n)?;
    let b = kind.compute(&ctx, k, &a)?;
    Ok(b.measure() / a.measure())
}

/// Thicken a sequence by a compact symmetric unit neighborhood `L`.
pub fn thicken(seq: &FolnerSeq, l: &GSet) -> Result<FolnerSeq> {
    let ctx = seq.ctx();
    let symmetric = match l {
        GSet::Points(p) => p.is_symmetric_unit_nbhd(&ctx),
        GSet::Boxes(b) => {
            !b.is_empty()
                && b.contains(&vec![Rat::default(); b.dim()])
                && b.reflect().symmetric_difference(b).volume() == rat(0)
        }
    };
    if !symmetric {
        return Err(Error::NotSymmetric);
    }
    Ok(FolnerSeq::Thickened { base: Box::new(seq.clone()), l: l.clone() })
}

/// Certified upper bound for `sup_s ν(L ∂_K A_n s)/m(A_n)`:
/// `C_u/m(B_u) · m(B_u L ∂_K A_n)/m(A_n)` from the declared upper witness.
pub fn lattice_aligned_check(
    seq: &FolnerSeq,
    n: u64,
    k: &GSet,
    l: &GSet,
    _nu: &PMeasure,
    b_u: &GSet,
    c_u: &Rat,
) -> Result<Rat> {
    if b_u.is_empty() {
        return Err(Error::MissingWitness);
    }
    let ctx = seq.ctx();
    let a = seq.generate(n)?;
    let boundary = boundary::strong_folner_boundary(&ctx, k, &a)?;
    if boundary.is_empty() {
        return Ok(rat(0));
    }
    let l_boundary = sets::minkowski(&ctx, l, &boundary)?;
    let bu_l_boundary = sets::minkowski(&ctx, b_u, &l_boundary)?;
    Ok(c_u / b_u.measure() * bu_l_boundary.measure() / a.measure())
}

/// Exact closed form of the strong-boundary ratio of the comb sequence at
/// probe neighborhood `[-ε, ε]`, valid for `2εn ≥ 1` and `1 - 1/n ≥ 2ε`:
/// `(2εn + 1 + 2ε - 1/n) / (n - 1)`.
pub fn comb_strong_ratio_closed_form(eps: &Rat, n: u64) -> Rat {
    let n = rat(n as i64);
    let two_eps = rat(2) * eps;
    (&two_eps * &n + rat(1) + &two_eps - rat(1) / &n) / (&n - rat(1))
}
