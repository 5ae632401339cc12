//! Monomial classes in the top local cohomology `H^n_𝔪(k[Q])` and the
//! Frobenius action on them.
//!
//! `H^n_𝔪(k[Q])` is `M`-graded. Its degree-`v` piece is a quotient of the
//! one-dimensional degree-`v` piece of `k[M]`, so it is spanned by the class
//! `[x^v]` or is zero, and `[x^v] = 0` exactly when some facet semigroup
//! `F_i = σ_i ∩ Q` contains a `w` with `v + w ∈ Q`.
//!
//! Frobenius sends `[x^v]` to `[x^{p·v}]`. Since `v ↦ p·v` is injective on
//! degrees and each graded piece is at most one-dimensional, a sum of
//! monomial classes is killed by `F^e` iff every summand is. The nilpotency
//! order of the nilpotent part restricted to a set of degrees is therefore
//! the maximum over the monomial classes in that set, which is what
//! [`TopCohomology::empirical_hsl`] measures.
//!
//! Zero verdicts carry a [`Witness`] that can be rechecked without the
//! search that produced it. Nonzero verdicts cite a sign or lattice argument.
//! Everything else is [`ZeroClassResult::Unknown`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::RegionTag;
use crate::lattice::{linear_combination, IntVector};
use crate::semigroup::{n_q, AffineSemigroup, FacetData, GammaCertificate};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// `v ∈ Q`, with `w = 0`.
    Membership,
    /// `v` lies in the group of a facet semigroup.
    FacetLattice,
    /// `v + λ·w*` lands in `γ + Q_sat`.
    Translate,
    /// Found by enumerating facet elements.
    Search,
    /// `p^e·(v + λ·w*)` with `p^e ≥ m_Q`.
    InteriorScaling,
    /// A witness for the previous Frobenius power, multiplied by `p`.
    FrobeniusScaled,
}

/// `w ∈ F_i` with `v + w ∈ Q`, both memberships given explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub facet: usize,
    /// Nonnegative coefficients over the facet's generators.
    #[serde(with = "crate::serde_int::vec")]
    pub facet_coefficients: Vec<BigInt>,
    pub w: IntVector,
    /// Nonnegative coefficients over all generators summing to `v + w`.
    #[serde(with = "crate::serde_int::vec")]
    pub expression: Vec<BigInt>,
    pub route: WitnessRoute,
}

impl Witness {
    /// Rechecks the witness from its recorded combinations alone.
    pub fn verify(&self, semigroup: &AffineSemigroup, facets: &[FacetData], v: &IntVector) -> bool {
        let Some(facet) = facets.get(self.facet) else { return false };
        let n = semigroup.rank();
        self.facet_coefficients.len() == facet.generators.len()
            && self.expression.len() == semigroup.generators().len()
            && self.facet_coefficients.iter().all(|c| !c.is_negative())
            && self.expression.iter().all(|c| !c.is_negative())
            && linear_combination(&self.facet_coefficients, &facet.generators, n) == self.w
            && linear_combination(&self.expression, semigroup.generators(), n) == v + &self.w
    }

    /// Witness for `p·v` from a witness for `v`.
    pub fn scaled(&self, p: &BigInt) -> Witness {
        Witness {
            facet: self.facet,
            facet_coefficients: self.facet_coefficients.iter().map(|c| c * p).collect(),
            w: self.w.scaled(p),
            expression: self.expression.iter().map(|c| c * p).collect(),
            route: WitnessRoute::FrobeniusScaled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonzeroCertificate {
    /// Every `u_i(v) < 0`, so `u_i(v + w) < 0` for all `w ∈ F_i`.
    NegInterior,
    /// All `u_i(v) ≤ 0` and `v ∉ gr(F_i)` for each listed facet with `u_i(v) = 0`.
    BoundaryLattice { facets_checked: Vec<usize> },
    /// `v ∉ Q`, and for every facet with `u_i(v) ≥ 0` either `F_i = {0}` or
    /// `u_i(v)` is not a value `u_i` takes on `Q`. A witness `w ∈ F_i` would
    /// give `u_i(v + w) = u_i(v)` with `v + w ∈ Q`.
    FacetObstruction { facets_checked: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroClassResult {
    Zero(Witness),
    Nonzero(NonzeroCertificate),
    /// No witness with grading at most `cap` exists.
    Unknown {
        #[serde(with = "crate::serde_int")]
        cap: BigInt,
    },
}

impl ZeroClassResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroClassResult::Zero(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ZeroClassResult::Zero(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    /// First Frobenius power with a zero class. `exact` is false when an
    /// earlier power was left undecided, making `order` an upper bound.
    Order { order: u32, exact: bool },
    NotNilpotent,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub v: IntVector,
    pub prime: u64,
    /// Verdict for `p^e·v`, `e = 0..=e_max`.
    pub statuses: Vec<ZeroClassResult>,
    pub nilpotency: Nilpotency,
    /// Set when the constructive witness for `p^e ≥ m_Q` could not be assembled.
    pub scaling_failure: bool,
}

/// Which part of `M` a degree falls in, relative to `−σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NegRegion {
    NegInterior,
    NegBoundary,
    OutsideNeg,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionStats {
    pub classes: usize,
    /// Already zero before any Frobenius power.
    pub zero: usize,
    /// Nonzero but killed by some power.
    pub nilpotent: usize,
    pub not_nilpotent: usize,
    pub undetermined: usize,
    pub max_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub v: IntVector,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HslReport {
    pub prime: u64,
    pub window: u32,
    pub e_max: u32,
    #[serde(with = "crate::serde_int")]
    pub cap: BigInt,
    /// `⌈log_p m_Q⌉`; absent when `p ≤ N_Q`.
    pub theoretical_bound: Option<u32>,
    /// Largest nilpotency order among nilpotent classes in the window.
    pub empirical_max: u32,
    pub classes: usize,
    pub neg_interior: RegionStats,
    pub neg_boundary: RegionStats,
    pub outside_neg: RegionStats,
    /// Nilpotent classes whose order exceeds the theoretical bound.
    pub violations: Vec<Violation>,
    /// Classes whose order is only an upper bound.
    pub inexact_orders: Vec<IntVector>,
    pub undetermined: Vec<IntVector>,
    pub scaling_failures: Vec<IntVector>,
    /// Boundary classes on a facet whose invariant factors `p` divides; only
    /// filled when `p ≤ N_Q`.
    pub small_characteristic: Vec<IntVector>,
}

impl HslReport {
    pub fn region(&self, r: NegRegion) -> &RegionStats {
        match r {
            NegRegion::NegInterior => &self.neg_interior,
            NegRegion::NegBoundary => &self.neg_boundary,
            NegRegion::OutsideNeg => &self.outside_neg,
        }
    }

    fn region_mut(&mut self, r: NegRegion) -> &mut RegionStats {
        match r {
            NegRegion::NegInterior => &mut self.neg_interior,
            NegRegion::NegBoundary => &mut self.neg_boundary,
            NegRegion::OutsideNeg => &mut self.outside_neg,
        }
    }
}

/// Least `e` with `p^e ≥ m_Q` (0 when `m_Q ≤ 1`), provided `p > N_Q`.
pub fn theoretical_bound(cert: &GammaCertificate, nq: &BigInt, p: u64) -> Option<u32> {
    let p = BigInt::from(p);
    if &p <= nq {
        return None;
    }
    let mut e = 0;
    let mut power = BigInt::one();
    while power < cert.m_q {
        power *= &p;
        e += 1;
    }
    Some(e)
}

/// Least `e` with `p^e·w ∈ Q`, `w` the generator of `M` inside `σ`. This is
/// the exact nilpotency order of the top cohomology for rank one.
pub fn hsl_exact_dim1(semigroup: &AffineSemigroup, p: u64) -> Result<u32> {
    if semigroup.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: semigroup.rank() });
    }
    assert!(p >= 2, "p must be prime");
    let sign = semigroup.cone().support_forms()[0][0].signum();
    let p = BigInt::from(p);
    let mut e = 0;
    let mut x = sign;
    while !semigroup.member(&IntVector::new(vec![x.clone()])) {
        x *= &p;
        e += 1;
    }
    Ok(e)
}

#[derive(Clone, Debug)]
struct FacetElement {
    facet: usize,
    w: IntVector,
    coefficients: Vec<BigInt>,
    level: BigInt,
}

/// Analysis context: a semigroup, a verified `γ`, and the facet data.
#[derive(Debug)]
pub struct TopCohomology<'a> {
    semigroup: &'a AffineSemigroup,
    certificate: &'a GammaCertificate,
    facets: Vec<FacetData>,
    n_q: BigInt,
    elements: Mutex<HashMap<BigInt, Arc<Vec<FacetElement>>>>,
}

impl<'a> TopCohomology<'a> {
    pub fn new(semigroup: &'a AffineSemigroup, certificate: &'a GammaCertificate) -> Self {
        let facets = semigroup.facets();
        let n_q = n_q(&facets);
        TopCohomology { semigroup, certificate, facets, n_q, elements: Mutex::new(HashMap::new()) }
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        self.semigroup
    }

    pub fn certificate(&self) -> &GammaCertificate {
        self.certificate
    }

    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn n_q(&self) -> &BigInt {
        &self.n_q
    }

    pub fn theoretical_bound(&self, p: u64) -> Option<u32> {
        theoretical_bound(self.certificate, &self.n_q, p)
    }

    /// `e_max` used when none is given: the bound plus two, or 10.
    pub fn default_e_max(&self, p: u64) -> u32 {
        self.theoretical_bound(p).map_or(10, |b| b + 2)
    }

    /// Witness-search cap used when none is given: `10·m_Q`.
    pub fn default_cap(&self) -> BigInt {
        &self.certificate.m_q * 10
    }

    fn witness_from_sum(&self, facet: usize, coefficients: Vec<BigInt>, sum: &IntVector, route: WitnessRoute) -> Option<Witness> {
        let f = &self.facets[facet];
        let expression = if self.certificate.covers(self.semigroup, sum) {
            self.certificate.express(self.semigroup, sum)?
        } else {
            self.semigroup.express(sum)?
        };
        let w = linear_combination(&coefficients, &f.generators, self.semigroup.rank());
        Some(Witness { facet, facet_coefficients: coefficients, w, expression, route })
    }

    fn membership_witness(&self, v: &IntVector) -> Option<Witness> {
        if self.facets.is_empty() {
            return None;
        }
        let zeros = vec![BigInt::zero(); self.facets[0].generators.len()];
        self.witness_from_sum(0, zeros, v, WitnessRoute::Membership)
    }

    /// Facet `i` with `u_i(v) ≥ u_i(γ)` and the least `λ` putting
    /// `v + λ·w*_i` into `γ + Q_sat`, choosing the smallest grading of `λ·w*_i`.
    fn translate_witness(&self, v: &IntVector) -> Option<Witness> {
        let values = self.semigroup.cone().facet_values(v);
        let targets = &self.certificate.facet_values;
        let best = self
            .facets
            .iter()
            .filter(|f| values[f.index] >= targets[f.index])
            .map(|f| (f.index, self.scale_into(f, &values, targets)))
            .min_by_key(|(i, lambda)| (lambda * self.semigroup.grading().dot(&self.facets[*i].interior_element), *i))?;
        let (i, lambda) = best;
        let f = &self.facets[i];
        let sum = v + &f.interior_element.scaled(&lambda);
        let coefficients = vec![lambda; f.generators.len()];
        self.witness_from_sum(i, coefficients, &sum, WitnessRoute::Translate)
    }

    /// Least `λ ≥ 0` with `values_j + λ·u_j(w*) ≥ targets_j` for `j ≠ i`.
    fn scale_into(&self, f: &FacetData, values: &[BigInt], targets: &[BigInt]) -> BigInt {
        let star = self.semigroup.cone().facet_values(&f.interior_element);
        let mut lambda = BigInt::zero();
        for j in 0..values.len() {
            if j == f.index {
                continue;
            }
            let gap = &targets[j] - &values[j];
            if gap.is_positive() {
                lambda = lambda.max(Integer::div_ceil(&gap, &star[j]));
            }
        }
        lambda
    }

    fn facet_elements(&self, cap: &BigInt) -> Arc<Vec<FacetElement>> {
        if let Some(found) = self.elements.lock().unwrap().get(cap) {
            return found.clone();
        }
        let grading = self.semigroup.grading();
        let mut all = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let k = f.generators.len();
            let mut seen = HashMap::new();
            let mut frontier = vec![(IntVector::zeros(self.semigroup.rank()), vec![BigInt::zero(); k])];
            while let Some((w, c)) = frontier.pop() {
                for (j, g) in f.generators.iter().enumerate() {
                    let next = &w + g;
                    if &grading.dot(&next) > cap || seen.contains_key(&next) {
                        continue;
                    }
                    let mut nc = c.clone();
                    nc[j] += 1;
                    seen.insert(next.clone(), nc.clone());
                    frontier.push((next, nc));
                }
            }
            all.extend(seen.into_iter().map(|(w, coefficients)| {
                let level = grading.dot(&w);
                FacetElement { facet: i, w, coefficients, level }
            }));
        }
        all.sort_by(|a, b| (&a.level, a.facet, &a.w).cmp(&(&b.level, b.facet, &b.w)));
        let arc = Arc::new(all);
        self.elements.lock().unwrap().insert(cap.clone(), arc.clone());
        arc
    }

    /// Decides whether `[x^v] = 0` in `H^n_𝔪(k[Q])`.
    ///
    /// Witness search outside `−σ` is bounded by `cap` on the grading of `w`
    /// once the translate shortcut fails.
    pub fn zero_class(&self, v: &IntVector, cap: &BigInt) -> ZeroClassResult {
        let s = self.semigroup;
        if self.certificate.covers(s, v) || s.member(v) {
            if let Some(w) = self.membership_witness(v) {
                return ZeroClassResult::Zero(w);
            }
        }
        match s.cone().classify(v).neg {
            RegionTag::NegInterior => ZeroClassResult::Nonzero(NonzeroCertificate::NegInterior),
            RegionTag::NegBoundary(zero_set) => {
                for &i in &zero_set {
                    let f = &self.facets[i];
                    let Some(c) = f.lattice_solve(v) else { continue };
                    let w_coeffs: Vec<BigInt> = c.iter().map(|x| (-x).max(BigInt::zero())).collect();
                    let w = linear_combination(&w_coeffs, &f.generators, s.rank());
                    if let Some(wit) = self.witness_from_sum(i, w_coeffs, &(v + &w), WitnessRoute::FacetLattice) {
                        return ZeroClassResult::Zero(wit);
                    }
                }
                ZeroClassResult::Nonzero(NonzeroCertificate::BoundaryLattice { facets_checked: zero_set })
            }
            _ => {
                if let Some(w) = self.translate_witness(v) {
                    return ZeroClassResult::Zero(w);
                }
                self.search(v, cap)
            }
        }
    }

    fn search(&self, v: &IntVector, cap: &BigInt) -> ZeroClassResult {
        let s = self.semigroup;
        let values = s.cone().facet_values(v);
        let candidates: Vec<usize> = (0..self.facets.len()).filter(|&i| !values[i].is_negative()).collect();
        let open: Vec<bool> = (0..self.facets.len())
            .map(|i| {
                !values[i].is_negative()
                    && !self.facets[i].generators.is_empty()
                    && value_reachable(&s.cone().facet_values_of_generators(i), &values[i])
            })
            .collect();
        if !open.contains(&true) {
            return ZeroClassResult::Nonzero(NonzeroCertificate::FacetObstruction { facets_checked: candidates });
        }
        for e in self.facet_elements(cap).iter() {
            let facet = e.facet;
            if !open[facet] {
                continue;
            }
            let sum = v + &e.w;
            if !s.sat_member(&sum) {
                continue;
            }
            if self.certificate.covers(s, &sum) || s.member(&sum) {
                if let Some(w) = self.witness_from_sum(facet, e.coefficients.clone(), &sum, WitnessRoute::Search) {
                    return ZeroClassResult::Zero(w);
                }
            }
        }
        ZeroClassResult::Unknown { cap: cap.clone() }
    }

    /// Constructive witness for `p^e·v` when `v` is outside `−σ` and
    /// `scale = p^e ≥ m_Q`: pick a facet with `u_i(v) > 0`, push
    /// `y = v + λ·w*_i` into the interior, and note that `scale·y ∈ γ + Q_sat`.
    fn scaling_witness(&self, v: &IntVector, scale: &BigInt) -> Option<Witness> {
        let values = self.semigroup.cone().facet_values(v);
        let ones = vec![BigInt::one(); values.len()];
        let (i, lambda) = self
            .facets
            .iter()
            .filter(|f| values[f.index].is_positive())
            .map(|f| (f.index, self.scale_into(f, &values, &ones)))
            .min_by_key(|(i, lambda)| (lambda * self.semigroup.grading().dot(&self.facets[*i].interior_element), *i))?;
        let f = &self.facets[i];
        let total = scale * &lambda;
        let sum = (v + &f.interior_element.scaled(&lambda)).scaled(scale);
        let expression = self.certificate.express(self.semigroup, &sum)?;
        Some(Witness {
            facet: i,
            facet_coefficients: vec![total.clone(); f.generators.len()],
            w: f.interior_element.scaled(&total),
            expression,
            route: WitnessRoute::InteriorScaling,
        })
    }

    /// Zero-class verdicts for `p^e·v`, `e = 0..=e_max`.
    ///
    /// Once a power is zero, later powers reuse its witness scaled by `p`.
    pub fn frobenius_orbit(&self, v: &IntVector, p: u64, e_max: u32, cap: &BigInt) -> OrbitReport {
        assert!(p >= 2, "p must be prime");
        let bp = BigInt::from(p);
        let region = self.semigroup.cone().classify(v).neg;
        let mut statuses: Vec<ZeroClassResult> = Vec::with_capacity(e_max as usize + 1);
        let mut scaling_failure = false;
        let mut scale = BigInt::one();
        for e in 0..=e_max {
            let status = match statuses.last() {
                Some(ZeroClassResult::Zero(prev)) => ZeroClassResult::Zero(prev.scaled(&bp)),
                _ => {
                    let x = v.scaled(&scale);
                    let mut direct = None;
                    if region == RegionTag::OutsideNeg && scale >= self.certificate.m_q {
                        direct = self.scaling_witness(v, &scale).map(ZeroClassResult::Zero);
                        scaling_failure |= direct.is_none();
                    }
                    direct.unwrap_or_else(|| self.zero_class(&x, cap))
                }
            };
            statuses.push(status);
            if e < e_max {
                scale *= &bp;
            }
        }
        let nilpotency = self.nilpotency(v, &region, p, &statuses);
        OrbitReport { v: v.clone(), prime: p, statuses, nilpotency, scaling_failure }
    }

    fn nilpotency(&self, v: &IntVector, region: &RegionTag, p: u64, statuses: &[ZeroClassResult]) -> Nilpotency {
        if let Some(e) = statuses.iter().position(ZeroClassResult::is_zero) {
            let exact = statuses[..e].iter().all(|s| matches!(s, ZeroClassResult::Nonzero(_)));
            return Nilpotency::Order { order: e as u32, exact };
        }
        match region {
            RegionTag::NegInterior => Nilpotency::NotNilpotent,
            // p^e·v ∈ gr(F_i) for some e iff the order of v modulo gr(F_i) is a power of p
            RegionTag::NegBoundary(zero_set) => {
                let reachable = zero_set.iter().any(|&i| {
                    self.facets[i].quotient_order(v).is_some_and(|o| is_power_of(&o, p))
                });
                if reachable {
                    Nilpotency::Undetermined
                } else {
                    Nilpotency::NotNilpotent
                }
            }
            _ => Nilpotency::Undetermined,
        }
    }

    /// Frobenius nilpotency over all degrees in `[−L, L]^n`.
    ///
    /// Classes are processed in parallel and merged in lexicographic order of
    /// degree, so reports are reproducible.
    pub fn empirical_hsl(&self, p: u64, window: u32, e_max: u32, cap: &BigInt) -> HslReport {
        let n = self.semigroup.rank();
        let bound = self.theoretical_bound(p);
        let degrees = window_points(n, window);
        let orbits: Vec<OrbitReport> =
            degrees.par_iter().map(|v| self.frobenius_orbit(v, p, e_max, cap)).collect();

        let mut report = HslReport {
            prime: p,
            window,
            e_max,
            cap: cap.clone(),
            theoretical_bound: bound,
            empirical_max: 0,
            classes: orbits.len(),
            neg_interior: RegionStats::default(),
            neg_boundary: RegionStats::default(),
            outside_neg: RegionStats::default(),
            violations: Vec::new(),
            inexact_orders: Vec::new(),
            undetermined: Vec::new(),
            scaling_failures: Vec::new(),
            small_characteristic: Vec::new(),
        };
        let bp = BigInt::from(p);
        for orbit in orbits {
            let tag = self.semigroup.cone().classify(&orbit.v).neg;
            let region = match &tag {
                RegionTag::NegInterior => NegRegion::NegInterior,
                RegionTag::NegBoundary(_) => NegRegion::NegBoundary,
                _ => NegRegion::OutsideNeg,
            };
            if bound.is_none() {
                if let RegionTag::NegBoundary(zero_set) = &tag {
                    let touched = zero_set
                        .iter()
                        .any(|&i| self.facets[i].invariant_factors.iter().any(|d| d.is_multiple_of(&bp)));
                    if touched {
                        report.small_characteristic.push(orbit.v.clone());
                    }
                }
            }
            if orbit.scaling_failure {
                report.scaling_failures.push(orbit.v.clone());
            }
            let stats = report.region_mut(region);
            stats.classes += 1;
            match orbit.nilpotency {
                Nilpotency::Order { order: 0, .. } => stats.zero += 1,
                Nilpotency::Order { order, exact } => {
                    stats.nilpotent += 1;
                    stats.max_order = stats.max_order.max(order);
                    report.empirical_max = report.empirical_max.max(order);
                    if !exact {
                        report.inexact_orders.push(orbit.v.clone());
                    }
                    if bound.is_some_and(|b| order > b) {
                        report.violations.push(Violation { v: orbit.v.clone(), order });
                    }
                }
                Nilpotency::NotNilpotent => stats.not_nilpotent += 1,
                Nilpotency::Undetermined => {
                    stats.undetermined += 1;
                    report.undetermined.push(orbit.v.clone());
                }
            }
        }
        report
    }
}

/// Whether `target` is a nonnegative integer combination of `values`
/// (all nonnegative). Uncertain cases answer `true`.
fn value_reachable(values: &[BigInt], target: &BigInt) -> bool {
    let steps: Vec<BigInt> = values.iter().filter(|x| x.is_positive()).cloned().collect();
    if target.is_zero() {
        return true;
    }
    if steps.is_empty() || target.is_negative() {
        return false;
    }
    let g = steps.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !target.is_multiple_of(&g) {
        return false;
    }
    let steps: Vec<BigInt> = steps.iter().map(|x| x / &g).collect();
    let target = target / &g;
    let (lo, hi) = (steps.iter().min().unwrap(), steps.iter().max().unwrap());
    // every integer at or above (lo - 1)(hi - 1) is representable once the gcd is 1
    if target >= (lo - 1) * (hi - 1) {
        return true;
    }
    let (Some(t), Some(steps)) = (
        usize::try_from(&target).ok(),
        steps.iter().map(|x| usize::try_from(x).ok()).collect::<Option<Vec<usize>>>(),
    ) else {
        return true;
    };
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for x in 1..=t {
        reach[x] = steps.iter().any(|&a| a <= x && reach[x - a]);
    }
    reach[t]
}

fn is_power_of(x: &BigInt, p: u64) -> bool {
    let p = BigInt::from(p);
    let mut x = x.clone();
    while x > BigInt::one() && x.is_multiple_of(&p) {
        x /= &p;
    }
    x.is_one()
}

/// All points of `[−radius, radius]^n` in lexicographic order.
pub fn window_points(n: usize, radius: u32) -> Vec<IntVector> {
    let r = i64::from(radius);
    let side = 2 * r + 1;
    let count = (side as usize).pow(n as u32);
    (0..count)
        .map(|mut idx| {
            let mut entries = vec![BigInt::zero(); n];
            for slot in entries.iter_mut().rev() {
                *slot = BigInt::from((idx % side as usize) as i64 - r);
                idx /= side as usize;
            }
            IntVector::new(entries)
        })
        .collect()
}

/// `p^e` as a big integer.
pub fn prime_power(p: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(p), e)
}
