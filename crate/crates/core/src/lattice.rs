//! Uniform lattices, fundamental domains and lattice densities.
//!
//! Built-in lattices: integer sublattices `Bℤ^d ⊆ ℤ^d` given by a
//! nonsingular basis matrix, and the Heisenberg lattices
//! `Γ_n = {(k,l,m) : k,l ∈ nℤ, m ∈ n²ℤ}` with covolume `n⁴`. Canonical
//! reference fundamental domains are the half-open Hermite box for integer
//! sublattices and the box `{0 ≤ a,b < n, 0 ≤ c < n²}` for `Γ_n`.
//!
//! Cocompactness statements (`ΓU = G`, tilings) concern infinite groups; they
//! are verified exactly through residue systems for `ℤ^d` and coset reduction
//! for the Heisenberg lattices, and spot-checked on finite patches.

use crate::error::{Error, Result};
use crate::folner::FolnerSeq;
use crate::group::{GElem, GroupCtx};
use crate::points::PointSet;
use crate::rat::{rat, Rat};
use crate::sets::GSet;

/// A uniform lattice in one of the discrete ambient groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lattice {
    /// `B ℤ^d ⊆ ℤ^d` for a nonsingular integer basis matrix `B` (columns).
    IntSublattice { basis: Vec<Vec<i64>> },
    /// `Γ_n ⊆ H₃(ℤ)`.
    HeisenbergGamma { n: i64 },
}

impl Lattice {
    pub fn int_sublattice(basis: Vec<Vec<i64>>) -> Result<Lattice> {
        let d = basis.len();
        if d == 0 || basis.iter().any(|r| r.len() != d) {
            return Err(Error::SingularBasis);
        }
        let lat = Lattice::IntSublattice { basis };
        if lat.covolume()? == rat(0) {
            return Err(Error::SingularBasis);
        }
        Ok(lat)
    }

    pub fn heisenberg_gamma(n: i64) -> Result<Lattice> {
        if n < 1 {
            return Err(Error::SingularBasis);
        }
        Ok(Lattice::HeisenbergGamma { n })
    }

    pub fn ambient(&self) -> GroupCtx {
        match self {
            Lattice::IntSublattice { basis } => GroupCtx::int_lattice(basis.len()),
            Lattice::HeisenbergGamma { .. } => GroupCtx::heisenberg(),
        }
    }

    /// Exact covolume under the counting Haar normalization.
    pub fn covolume(&self) -> Result<Rat> {
        match self {
            Lattice::IntSublattice { basis } => {
                let det = det_int(basis);
                Ok(rat(det.abs()))
            }
            Lattice::HeisenbergGamma { n } => Ok(rat(n * n * n * n)),
        }
    }

    /// Hermite normal form of the basis (lower triangular, positive
    /// diagonal), used for membership and coset reduction.
    fn hnf(&self) -> Vec<Vec<i64>> {
        match self {
            Lattice::IntSublattice { basis } => hnf_columns(basis),
            Lattice::HeisenbergGamma { .. } => unreachable!(),
        }
    }

    /// Lattice membership.
    pub fn contains(&self, g: &[i64]) -> bool {
        match self {
            Lattice::IntSublattice { .. } => {
                self.reduce(g).iter().all(|x| *x == 0)
            }
            Lattice::HeisenbergGamma { n } => {
                g.len() == 3
                    && g[0].rem_euclid(*n) == 0
                    && g[1].rem_euclid(*n) == 0
                    && g[2].rem_euclid(n * n) == 0
            }
        }
    }

    /// Canonical coset representative of `g` modulo the lattice, lying in the
    /// canonical fundamental domain.
    pub fn reduce(&self, g: &[i64]) -> Vec<i64> {
        match self {
            Lattice::IntSublattice { .. } => {
                let h = self.hnf();
                let d = h.len();
                let mut v = g.to_vec();
                for j in 0..d {
                    let q = v[j].div_euclid(h[j][j]);
                    for i in j..d {
                        v[i] -= q * h[i][j];
                    }
                }
                v
            }
            Lattice::HeisenbergGamma { n } => {
                // unique γ = (k,l,m) ∈ Γ_n with γ⁻¹·g in the canonical box:
                // γ⁻¹·(a,b,c) = (a-k, b-l, c-m+kl-kb)
                let (a, b, c) = (g[0], g[1], g[2]);
                let k = a - a.rem_euclid(*n);
                let l = b - b.rem_euclid(*n);
                let t = c + k * l - k * b;
                vec![a - k, b - l, t.rem_euclid(n * n)]
            }
        }
    }

    /// Canonical reference fundamental domain as a point set.
    pub fn canonical_domain(&self) -> PointSet {
        match self {
            Lattice::IntSublattice { .. } => {
                let h = self.hnf();
                let lo = vec![0i64; h.len()];
                let hi: Vec<i64> = (0..h.len()).map(|j| h[j][j]).collect();
                PointSet::int_box(&lo, &hi)
            }
            Lattice::HeisenbergGamma { n } => {
                let mut pts = Vec::new();
                for a in 0..*n {
                    for b in 0..*n {
                        for c in 0..n * n {
                            pts.push(vec![a, b, c]);
                        }
                    }
                }
                PointSet::new(pts)
            }
        }
    }

    /// Count lattice points inside a finite set.
    pub fn count_in(&self, a: &GSet) -> Result<u64> {
        let pts = a.as_points()?;
        Ok(pts.iter().filter(|p| self.contains(p)).count() as u64)
    }
}

/// `card(Γ ∩ A_n) / m(A_n)`; exact `1/covol` on tiling-aligned indices.
pub fn lattice_density(lat: &Lattice, seq: &FolnerSeq, n: u64) -> Result<Rat> {
    let a = seq.generate(n)?;
    let count = lat.count_in(&a)?;
    Ok(rat(count as i64) / a.measure())
}

/// A fundamental domain extracted from a covering set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub cells: PointSet,
}

/// Construct a left-fundamental domain `F_U ⊆ U` from any set `U` with
/// `ΓU = G`, following the first-fit sweep against the canonical reference
/// domain: enumerate the finite `Γ_U = {γ : U ∩ γF ≠ ∅}`, form
/// `F_k = F ∩ γ_k⁻¹U`, then keep `γ_k F_k` minus everything already covered
/// by earlier pieces modulo `Γ`.
pub fn siegel_fundamental_domain(lat: &Lattice, u: &GSet) -> Result<FundamentalDomain> {
    let ctx = lat.ambient();
    let u = u.as_points()?;
    if u.is_empty() {
        return Err(Error::EmptySet);
    }
    // ΓU = G iff U covers every coset; exact via canonical representatives
    let covol = lat.covolume()?.to_integer();
    let mut residues: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for p in u.iter() {
        residues.insert(lat.reduce(p));
    }
    if rat(residues.len() as i64) != Rat::from_integer(covol.clone()) {
        return Err(Error::NotCovering(format!(
            "U meets {} of {} cosets",
            residues.len(),
            covol
        )));
    }
    let reference = lat.canonical_domain();
    // Γ_U = {γ ∈ Γ : U ∩ γF ≠ ∅}: γ = u·f⁻¹ for u ∈ U, f ∈ F
    let mut gamma_u: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for p in u.elems() {
        for f in reference.elems() {
            let finv = ctx.inverse(&f)?;
            let g = ctx.multiply(&p, &finv)?;
            let g = g.as_int().unwrap().to_vec();
            if lat.contains(&g) {
                gamma_u.insert(g);
            }
        }
    }
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut covered: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for gamma in &gamma_u {
        let gamma_e = GElem::Int(gamma.clone());
        let ginv = ctx.inverse(&gamma_e)?;
        for f in reference.elems() {
            // f ∈ F_k ⇔ γ_k f ∈ U
            let z = ctx.multiply(&gamma_e, &f)?;
            let z = z.as_int().unwrap().to_vec();
            if !u.contains(&z) {
                continue;
            }
            let _ = &ginv;
            let residue = lat.reduce(&z);
            if covered.insert(residue) {
                chosen.push(z);
            }
        }
    }
    let cells = PointSet::new(chosen);
    debug_assert_eq!(rat(cells.len() as i64), lat.covolume()?);
    Ok(FundamentalDomain { cells })
}

/// Verify equality `card(Γ ∩ F⁻¹γ) = 1` for a fundamental domain and a
/// lattice element γ.
pub fn fd_count(lat: &Lattice, fd: &PointSet, gamma: &[i64]) -> Result<u64> {
    let ctx = lat.ambient();
    let mut count = 0;
    for f in fd.elems() {
        let finv = ctx.inverse(&f)?;
        let x = ctx.multiply(&finv, &GElem::Int(gamma.to_vec()))?;
        if lat.contains(x.as_int().unwrap()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Check that the `Γ`-translates of `fd` tile a patch: every patch point is
/// covered exactly once. Exact via coset reduction.
pub fn verify_tiling(lat: &Lattice, fd: &PointSet, patch: &PointSet) -> Result<bool> {
    // fd must be a complete system of coset representatives
    let mut seen: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for f in fd.iter() {
        if !seen.insert(lat.reduce(f)) {
            return Ok(false);
        }
    }
    if rat(seen.len() as i64) != lat.covolume()? {
        return Ok(false);
    }
    // then every patch point lies in exactly one translate
    Ok(patch.iter().all(|p| seen.contains(&lat.reduce(p))))
}

fn det_int(m: &[Vec<i64>]) -> i64 {
    let d = m.len();
    match d {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            // cofactor expansion along the first row; desk-scale dimensions
            let mut det = 0i64;
            for j in 0..d {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                det += sign * m[0][j] * det_int(&minor);
            }
            det
        }
    }
}

/// Column-style Hermite normal form: lower triangular, positive diagonal,
/// entries below the diagonal reduced modulo it.
fn hnf_columns(basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = basis.len();
    // work on columns: cols[j][i] = entry in row i of column j
    let mut cols: Vec<Vec<i64>> = (0..d).map(|j| (0..d).map(|i| basis[i][j]).collect()).collect();
    for row in 0..d {
        // clear row `row` in all columns right of `row` via gcd steps
        for j in (row + 1)..d {
            while cols[j][row] != 0 {
                if cols[row][row] == 0 {
                    cols.swap(row, j);
                    continue;
                }
                let q = cols[j][row].div_euclid(cols[row][row]);
                for i in 0..d {
                    cols[j][i] -= q * cols[row][i];
                }
                if cols[j][row] != 0 {
                    cols.swap(row, j);
                }
            }
        }
        if cols[row][row] < 0 {
            for i in 0..d {
                cols[row][i] = -cols[row][i];
            }
        }
        assert!(cols[row][row] > 0, "singular basis");
        // reduce earlier columns' entries in this row
        for j in 0..row {
            let q = cols[j][row].div_euclid(cols[row][row]);
            if q != 0 {
                let pivot = cols[row].clone();
                for i in 0..d {
                    cols[j][i] -= q * pivot[i];
                }
            }
        }
    }
    // back to row-major
    (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect()
}
