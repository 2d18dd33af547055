//! The density hierarchy: averaged densities along a Følner sequence,
//! Beurling-type shift extrema, Leptin probes, translation-boundedness
//! witnesses, and the GKS densities relative to a lattice.
//!
//! Suprema and infima over uncountable families are not finitely computable,
//! so every reported value carries a one-sidedness flag. The exactness
//! mechanism is the periodic reduction: when the measure is invariant under a
//! declared translation lattice (validated on the data, `InvalidPeriod`
//! otherwise), shift extrema range over exactly one period cell and the
//! resulting values are exact. Everything else is flagged as a sampled
//! one-sided bound.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::folner::FolnerSeq;
use crate::group::{GElem, GroupCtx};
use crate::points::PointSet;
use crate::rat::{rat, Rat};
use crate::sets::{minkowski, GSet, PMeasure};

/// Certification status of a reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Exact,
    /// A sampled maximum: a lower bound of the true supremum.
    SampledLowerBound,
    /// A sampled minimum: an upper bound of the true infimum.
    SampledUpperBound,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Exact => "exact",
            Flag::SampledLowerBound => "sampled-lower-bound",
            Flag::SampledUpperBound => "sampled-upper-bound",
        }
    }
}

/// Averaged density at one index: `ν(A_n)/m(A_n)`, exact as a number; its
/// relation to the limit is the caller's concern.
pub fn a_density(nu: &PMeasure, seq: &FolnerSeq, n: u64) -> Result<Rat> {
    let a = seq.generate(n)?;
    Ok(nu.eval(&a) / a.measure())
}

/// Shift domain for Beurling-type extrema.
#[derive(Debug, Clone)]
pub enum ShiftSpec {
    /// A finite sample of shifts; extrema over it are one-sided bounds.
    Explicit(Vec<GElem>),
    /// The measure is declared invariant under `diag(p)ℤ^d`; extrema over
    /// one period cell are exact. Validated against the data.
    Periodic(Vec<i64>),
}

/// A comb reduced to one period cell of a validated translation lattice.
/// Evaluation of the periodic extension on any finite set is exact.
#[derive(Debug, Clone)]
pub struct PeriodicComb {
    pub period: Vec<i64>,
    cell: BTreeMap<Vec<i64>, Rat>,
}

impl PeriodicComb {
    /// Validate the declared period against the comb: wherever both a point
    /// and its translate lie in the comb's bounding span, weights must agree,
    /// and the span must contain a full period cell.
    pub fn reduce(nu: &PMeasure, period: &[i64]) -> Result<PeriodicComb> {
        let (points, weights) = match nu {
            PMeasure::DiracComb { points, weights } => (points, weights),
            PMeasure::HaarOn(_) => {
                return Err(Error::Unsupported(
                    "periodic reduction applies to Dirac combs".into(),
                ))
            }
        };
        if period.iter().any(|p| *p <= 0) {
            return Err(Error::InvalidPeriod("period entries must be positive".into()));
        }
        if points.is_empty() {
            return Ok(PeriodicComb {
                period: period.to_vec(),
                cell: BTreeMap::new(),
            });
        }
        let d = period.len();
        let weight_of: BTreeMap<Vec<i64>, Rat> = points
            .iter()
            .zip(weights)
            .map(|(p, w)| (p.to_vec(), w.clone()))
            .collect();
        let lo: Vec<i64> = (0..d)
            .map(|i| points.iter().map(|p| p[i]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|i| points.iter().map(|p| p[i]).max().unwrap() + 1)
            .collect();
        if (0..d).any(|i| hi[i] - lo[i] < 2 * period[i]) {
            return Err(Error::InvalidPeriod(
                "comb span does not cover two periods per axis".into(),
            ));
        }
        for (p, w) in &weight_of {
            for i in 0..d {
                let mut q = p.clone();
                q[i] += period[i];
                if q[i] < hi[i] {
                    match weight_of.get(&q) {
                        Some(wq) if wq == w => {}
                        _ => {
                            return Err(Error::InvalidPeriod(format!(
                                "translate of {p:?} along axis {i} breaks periodicity"
                            )))
                        }
                    }
                }
            }
        }
        // reverse direction: a cell point missing its negative-side preimage
        // inside the span would also violate periodicity
        for (p, _) in &weight_of {
            for i in 0..d {
                let mut q = p.clone();
                q[i] -= period[i];
                if q[i] >= lo[i] && !weight_of.contains_key(&q) {
                    return Err(Error::InvalidPeriod(format!(
                        "translate of {p:?} along axis -{i} breaks periodicity"
                    )));
                }
            }
        }
        let mut cell = BTreeMap::new();
        for (p, w) in weight_of {
            let r: Vec<i64> = p.iter().zip(period).map(|(x, pr)| x.rem_euclid(*pr)).collect();
            cell.entry(r).or_insert(w);
        }
        Ok(PeriodicComb {
            period: period.to_vec(),
            cell,
        })
    }

    /// Exact evaluation of the periodic extension on a finite point set.
    pub fn eval(&self, a: &PointSet) -> Rat {
        let mut total = rat(0);
        for p in a.iter() {
            let r: Vec<i64> = p
                .iter()
                .zip(&self.period)
                .map(|(x, pr)| x.rem_euclid(*pr))
                .collect();
            if let Some(w) = self.cell.get(&r) {
                total += w.clone();
            }
        }
        total
    }

    pub fn cell_mass(&self) -> Rat {
        self.cell.values().cloned().sum()
    }

    pub fn cell_volume(&self) -> Rat {
        rat(self.period.iter().product::<i64>())
    }

    /// The exact mean density `ν(cell)/m(cell)`. For a periodic measure this
    /// is the common value of the averaged, Beurling, and Leptin densities.
    pub fn mean_density(&self) -> Rat {
        self.cell_mass() / self.cell_volume()
    }
}

/// Beurling-type extrema of `ν(A_n s)/m(A_n)` over the shift domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeurlingValues {
    pub b_minus: Rat,
    pub b_plus: Rat,
    pub flag_minus: Flag,
    pub flag_plus: Flag,
}

pub fn beurling_density(
    ctx: &GroupCtx,
    nu: &PMeasure,
    seq: &FolnerSeq,
    n: u64,
    shifts: &ShiftSpec,
) -> Result<BeurlingValues> {
    let a = seq.generate(n)?;
    let vol = a.measure();
    match shifts {
        ShiftSpec::Periodic(period) => {
            let pc = PeriodicComb::reduce(nu, period)?;
            // ν(A_n s) depends only on s modulo the period lattice, so the
            // extrema over one cell equal the extrema over the whole group
            let base = a.as_points()?;
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            for s in cell_shifts(period) {
                let translated = PointSet::new(
                    base.iter()
                        .map(|p| p.iter().zip(&s).map(|(x, y)| x + y).collect())
                        .collect(),
                );
                let v = pc.eval(&translated) / vol.clone();
                lo = Some(lo.map_or(v.clone(), |l: Rat| l.min(v.clone())));
                hi = Some(hi.map_or(v.clone(), |h: Rat| h.max(v)));
            }
            Ok(BeurlingValues {
                b_minus: lo.unwrap(),
                b_plus: hi.unwrap(),
                flag_minus: Flag::Exact,
                flag_plus: Flag::Exact,
            })
        }
        ShiftSpec::Explicit(sample) => {
            if sample.is_empty() {
                return Err(Error::EmptyFamily);
            }
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            for s in sample {
                let shifted = right_translate_set(ctx, &a, s)?;
                let v = nu.eval(&shifted) / vol.clone();
                lo = Some(lo.map_or(v.clone(), |l: Rat| l.min(v.clone())));
                hi = Some(hi.map_or(v.clone(), |h: Rat| h.max(v)));
            }
            Ok(BeurlingValues {
                b_minus: lo.unwrap(),
                b_plus: hi.unwrap(),
                flag_minus: Flag::SampledUpperBound,
                flag_plus: Flag::SampledLowerBound,
            })
        }
    }
}

fn cell_shifts(period: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for p in period {
        let mut next = Vec::new();
        for prefix in &out {
            for r in 0..*p {
                let mut v = prefix.clone();
                v.push(r);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `A s` for a single shift.
pub fn right_translate_set(ctx: &GroupCtx, a: &GSet, s: &GElem) -> Result<GSet> {
    match (a, s) {
        (GSet::Points(_), GElem::Int(_)) => {
            let singleton = GSet::Points(PointSet::new(vec![s.as_int().unwrap().to_vec()]));
            minkowski(ctx, a, &singleton)
        }
        (GSet::Boxes(bu), GElem::Real(coords)) => Ok(GSet::Boxes(bu.translate(coords))),
        _ => Err(Error::Unsupported("shift kind does not match the set".into())),
    }
}

/// Finite-family Leptin probes; heuristic unless paired with the periodic
/// reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeptinProbe {
    /// `max_K min_A ν(KA)/m(A)` — a lower-families probe of `sup_K inf_A`;
    /// the inner sampled min is ≥ the true inf, so this is heuristic.
    pub lep_minus_probe: Rat,
    /// `min_K max_A ν(A)/m(KA)`.
    pub lep_plus_probe: Rat,
    pub flag_minus: Flag,
    pub flag_plus: Flag,
}

pub fn leptin_probe(
    ctx: &GroupCtx,
    nu: &PMeasure,
    k_family: &[GSet],
    a_family: &[GSet],
) -> Result<LeptinProbe> {
    if k_family.is_empty() || a_family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut lep_minus: Option<Rat> = None;
    let mut lep_plus: Option<Rat> = None;
    for k in k_family {
        let mut inner_min: Option<Rat> = None;
        let mut inner_max: Option<Rat> = None;
        for a in a_family {
            let ka = minkowski(ctx, k, a)?;
            let v_min = nu.eval(&ka) / a.measure();
            let v_max = nu.eval(a) / ka.measure();
            inner_min = Some(inner_min.map_or(v_min.clone(), |m: Rat| m.min(v_min)));
            inner_max = Some(inner_max.map_or(v_max.clone(), |m: Rat| m.max(v_max)));
        }
        let (imin, imax) = (inner_min.unwrap(), inner_max.unwrap());
        lep_minus = Some(lep_minus.map_or(imin.clone(), |m: Rat| m.max(imin)));
        lep_plus = Some(lep_plus.map_or(imax.clone(), |m: Rat| m.min(imax)));
    }
    Ok(LeptinProbe {
        lep_minus_probe: lep_minus.unwrap(),
        lep_plus_probe: lep_plus.unwrap(),
        flag_minus: Flag::SampledLowerBound,
        flag_plus: Flag::SampledUpperBound,
    })
}

/// Combined report at one index of the sequence.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub d_minus: Rat,
    pub d_plus: Rat,
    pub b_minus: Rat,
    pub b_plus: Rat,
    pub n: u64,
    pub seq_tag: String,
    pub flag_d: Flag,
    pub flag_b_minus: Flag,
    pub flag_b_plus: Flag,
}

/// At a single index the averaged value stands in for both `D⁻` and `D⁺`;
/// it is exact only under the periodic reduction, where the chain
/// `B⁻ ≤ D⁻ ≤ D⁺ ≤ B⁺` collapses to equalities.
pub fn density_report(
    ctx: &GroupCtx,
    nu: &PMeasure,
    seq: &FolnerSeq,
    n: u64,
    shifts: &ShiftSpec,
) -> Result<DensityReport> {
    let d = a_density(nu, seq, n)?;
    let b = beurling_density(ctx, nu, seq, n, shifts)?;
    let flag_d = match shifts {
        ShiftSpec::Periodic(_) => Flag::Exact,
        ShiftSpec::Explicit(_) => Flag::SampledLowerBound,
    };
    Ok(DensityReport {
        d_minus: d.clone(),
        d_plus: d,
        b_minus: b.b_minus,
        b_plus: b.b_plus,
        n,
        seq_tag: seq.tag(),
        flag_d,
        flag_b_minus: b.flag_minus,
        flag_b_plus: b.flag_plus,
    })
}

/// Translation-boundedness witness over a patch of shift centers.
#[derive(Debug, Clone)]
pub struct TBWitness {
    pub b_u: GSet,
    pub c_u: Rat,
    pub b_l: GSet,
    /// `None` when no positive lower witness exists on the patch.
    pub c_l: Option<Rat>,
    pub flag: Flag,
}

/// `C_u = max_x ν(B² x)`, `C_l = min_x ν(B x)` over the patch of centers.
/// Sampled unless the patch provably covers a period or fundamental domain.
pub fn tb_witness(ctx: &GroupCtx, nu: &PMeasure, b: &GSet, patch: &GSet, exact: bool) -> Result<TBWitness> {
    check_symmetric_unit_nbhd(ctx, b)?;
    let b2 = minkowski(ctx, b, b)?;
    let centers = patch.as_points()?;
    if centers.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut c_u: Option<Rat> = None;
    let mut c_l: Option<Rat> = None;
    for x in centers.elems() {
        let bx = right_translate_set(ctx, b, &x)?;
        let b2x = right_translate_set(ctx, &b2, &x)?;
        let vu = nu.eval(&b2x);
        let vl = nu.eval(&bx);
        c_u = Some(c_u.map_or(vu.clone(), |m: Rat| m.max(vu)));
        c_l = Some(c_l.map_or(vl.clone(), |m: Rat| m.min(vl)));
    }
    let c_l = c_l.filter(|v| v > &rat(0));
    Ok(TBWitness {
        b_u: b.clone(),
        c_u: c_u.unwrap(),
        b_l: b.clone(),
        c_l,
        flag: if exact { Flag::Exact } else { Flag::SampledLowerBound },
    })
}

fn check_symmetric_unit_nbhd(ctx: &GroupCtx, b: &GSet) -> Result<()> {
    match b {
        GSet::Points(ps) => {
            if !ps.is_symmetric_unit_nbhd(ctx) {
                return Err(Error::NotSymmetric);
            }
        }
        GSet::Boxes(bu) => {
            let zero = vec![rat(0); bu.dim()];
            if !bu.contains(&zero) || !bu.symmetric_difference(&bu.reflect()).is_empty() {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// The standard-estimate sandwich from a witness: every certified density of
/// ν lies in `[C_l/m(B_l²), C_u/m(B_u)]` (the amenability constant is 1 for
/// all built-in groups).
pub fn witness_sandwich(ctx: &GroupCtx, w: &TBWitness) -> Result<(Option<Rat>, Rat)> {
    let bl2 = minkowski(ctx, &w.b_l, &w.b_l)?;
    let lower = w.c_l.as_ref().map(|c| c / bl2.measure());
    let upper = &w.c_u / w.b_u.measure();
    Ok((lower, upper))
}

/// A `(ε, K)` certificate found by the GKS search.
#[derive(Debug, Clone)]
pub struct GksCertificate {
    pub eps: Rat,
    pub k_index: usize,
}

#[derive(Debug, Clone)]
pub struct GksReport {
    /// Certified lower bound for the lower lattice-relative density.
    pub d_minus_lo: Rat,
    /// Certified upper bound for the upper lattice-relative density.
    pub d_plus_hi: Rat,
    pub certificates: Vec<GksCertificate>,
    /// The candidate α, the exact mean density of ν relative to the lattice.
    pub alpha: Rat,
}

/// Lattice-relative densities: the candidate `α` comes from the exact
/// periodic reduction, and each ε in the schedule must be certified by some
/// `K` with `(1−ε)·α·δ_Γ(A) ≤ ν(KA)` (and dually `ν(A) ≤ (1+ε)·α·δ_Γ(KA)`)
/// for every `A` in the test family.
pub fn gks_density(
    ctx: &GroupCtx,
    nu: &PMeasure,
    lat: &crate::lattice::Lattice,
    period: &[i64],
    eps_schedule: &[Rat],
    k_search: &[GSet],
    a_family: &[GSet],
) -> Result<GksReport> {
    if eps_schedule.is_empty() || k_search.is_empty() || a_family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let pc = PeriodicComb::reduce(nu, period)?;
    let alpha = pc.mean_density() * lat.covolume()?;
    let delta_gamma = |a: &GSet| -> Result<Rat> {
        Ok(rat(lat.count_in(a)? as i64))
    };
    let mut certificates = Vec::new();
    let mut best_eps: Option<Rat> = None;
    for eps in eps_schedule {
        let mut found = None;
        for (ki, k) in k_search.iter().enumerate() {
            let mut ok = true;
            for a in a_family {
                let ka = minkowski(ctx, k, a)?;
                let nu_ka = pc.eval(ka.as_points()?);
                let lower = (rat(1) - eps) * &alpha * delta_gamma(a)?;
                let upper = (rat(1) + eps) * &alpha * delta_gamma(&ka)?;
                let nu_a = pc.eval(a.as_points()?);
                if nu_ka < lower || nu_a > upper {
                    ok = false;
                    break;
                }
            }
            if ok {
                found = Some(ki);
                break;
            }
        }
        match found {
            Some(ki) => {
                best_eps = Some(best_eps.map_or(eps.clone(), |b: Rat| b.min(eps.clone())));
                certificates.push(GksCertificate {
                    eps: eps.clone(),
                    k_index: ki,
                });
            }
            None => {
                let best = best_eps.map_or_else(|| "none".to_string(), |b| b.to_string());
                return Err(Error::NoCertificate { best });
            }
        }
    }
    Ok(GksReport {
        d_minus_lo: alpha.clone(),
        d_plus_hi: alpha.clone(),
        certificates,
        alpha,
    })
}

/// The product identity relating lattice-relative and plain densities:
/// `Lep_Γ · d⁻_ν = Lep⁻_ν`, with `Lep_Γ = 1/covol(Γ)` exactly.
pub fn gks_product_check(lat: &crate::lattice::Lattice, report: &GksReport, lep_nu: &Rat) -> Result<bool> {
    let lep_gamma = rat(1) / lat.covolume()?;
    Ok(&(lep_gamma * &report.d_minus_lo) == lep_nu)
}
