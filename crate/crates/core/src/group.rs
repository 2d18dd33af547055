//! Group elements, multiplication, inversion and Haar normalization for the
//! three supported ambient groups.
//!
//! All supported groups are unimodular and amenable. The Haar normalization
//! is fixed per kind: counting measure for the discrete kinds (`ℤ^d`,
//! `H₃(ℤ)`), Lebesgue volume for `ℝ^d` box unions. Every report records it,
//! since covolumes and densities scale with this choice.

use crate::error::{Error, Result};
use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The supported ambient group kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    /// `ℤ^d` with componentwise addition, counting Haar measure.
    IntLattice(usize),
    /// The discrete Heisenberg group `H₃(ℤ)` with
    /// `(a,b,c)·(x,y,z) = (a+x, b+y, c+z+ay)`, counting Haar measure.
    HeisenbergInt,
    /// `ℝ^d`, represented through unions of half-open rational boxes,
    /// Lebesgue Haar measure.
    RealBoxes(usize),
}

/// Ambient group descriptor with its fixed Haar normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCtx {
    pub kind: GroupKind,
}

impl GroupCtx {
    pub fn int_lattice(d: usize) -> Self {
        assert!(d >= 1, "dimension must be at least 1");
        GroupCtx { kind: GroupKind::IntLattice(d) }
    }

    pub fn heisenberg() -> Self {
        GroupCtx { kind: GroupKind::HeisenbergInt }
    }

    pub fn real_boxes(d: usize) -> Self {
        assert!(d >= 1, "dimension must be at least 1");
        GroupCtx { kind: GroupKind::RealBoxes(d) }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            GroupKind::IntLattice(d) => d,
            GroupKind::HeisenbergInt => 3,
            GroupKind::RealBoxes(d) => d,
        }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self.kind, GroupKind::RealBoxes(_))
    }

    /// Name of the Haar normalization, echoed into reports.
    pub fn haar_norm(&self) -> &'static str {
        if self.is_discrete() {
            "counting"
        } else {
            "lebesgue"
        }
    }

    pub fn kind_name(&self) -> String {
        match self.kind {
            GroupKind::IntLattice(d) => format!("Z{d}"),
            GroupKind::HeisenbergInt => "H3Z".to_string(),
            GroupKind::RealBoxes(d) => format!("R{d}"),
        }
    }

    pub fn identity(&self) -> GElem {
        match self.kind {
            GroupKind::RealBoxes(d) => GElem::Real(vec![Rat::default(); d]),
            _ => GElem::Int(vec![0; self.dim()]),
        }
    }

    fn check(&self, g: &GElem) -> Result<()> {
        let ok = match (&self.kind, g) {
            (GroupKind::RealBoxes(d), GElem::Real(v)) => v.len() == *d,
            (GroupKind::IntLattice(d), GElem::Int(v)) => v.len() == *d,
            (GroupKind::HeisenbergInt, GElem::Int(v)) => v.len() == 3,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{g} in {}", self.kind_name())))
        }
    }

    /// Group product.
    pub fn multiply(&self, g: &GElem, h: &GElem) -> Result<GElem> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (&self.kind, g, h) {
            (GroupKind::HeisenbergInt, GElem::Int(p), GElem::Int(q)) => {
                let (a, b, c) = (p[0], p[1], p[2]);
                let (x, y, z) = (q[0], q[1], q[2]);
                GElem::Int(vec![a + x, b + y, c + z + a * y])
            }
            (_, GElem::Int(p), GElem::Int(q)) => {
                GElem::Int(p.iter().zip(q).map(|(a, b)| a + b).collect())
            }
            (_, GElem::Real(p), GElem::Real(q)) => {
                GElem::Real(p.iter().zip(q).map(|(a, b)| a + b).collect())
            }
            _ => unreachable!(),
        })
    }

    /// Group inverse; `multiply(g, inverse(g))` is the identity.
    pub fn inverse(&self, g: &GElem) -> Result<GElem> {
        self.check(g)?;
        Ok(match (&self.kind, g) {
            (GroupKind::HeisenbergInt, GElem::Int(p)) => {
                let (a, b, c) = (p[0], p[1], p[2]);
                GElem::Int(vec![-a, -b, -c + a * b])
            }
            (_, GElem::Int(p)) => GElem::Int(p.iter().map(|a| -a).collect()),
            (_, GElem::Real(p)) => GElem::Real(p.iter().map(|a| -a).collect()),
        })
    }
}

/// A group element: integer coordinates for the discrete kinds, exact
/// rationals for `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GElem {
    Int(Vec<i64>),
    Real(Vec<Rat>),
}

impl GElem {
    pub fn int(coords: &[i64]) -> Self {
        GElem::Int(coords.to_vec())
    }

    pub fn as_int(&self) -> Option<&[i64]> {
        match self {
            GElem::Int(v) => Some(v),
            GElem::Real(_) => None,
        }
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GElem::Int(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(","))
            }
            GElem::Real(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(","))
            }
        }
    }
}
