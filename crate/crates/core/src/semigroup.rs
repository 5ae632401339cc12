//! The affine semigroup `Q`, its saturation `Q_sat = σ ∩ M`, conductor-type
//! translates `γ + Q_sat ⊆ Q`, and the facet semigroups `F_i = σ_i ∩ Q`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::lattice::{
    hermite_normal_form, kernel_basis, largest_prime_factor, linear_combination, smith_normal_form,
    solve_in_lattice, IntMatrix, IntVector,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Link {
    /// `v − g_k ∈ Q`
    Via(usize),
    Absent,
}

/// An affine pointed semigroup, stored in coordinates of `M = gr(Q)`.
///
/// Membership answers are cached; the cache sits behind a lock and may be
/// shared freely between threads.
#[derive(Debug)]
pub struct AffineSemigroup {
    raw_generators: Vec<IntVector>,
    source_indices: Vec<usize>,
    lattice_basis: Vec<IntVector>,
    generators: Vec<IntVector>,
    cone: Cone,
    descent_order: Vec<usize>,
    residues: OnceLock<SaturationData>,
    memo: RwLock<HashMap<IntVector, Link>>,
}

/// Residues `B`: every `s ∈ Q_sat` is `q + ρ` with `ρ ∈ B` and `q` a
/// nonnegative combination of extreme-ray generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationData {
    /// Sorted, deduplicated; always contains the origin.
    pub residues: Vec<IntVector>,
}

impl SaturationData {
    pub fn contains(&self, rho: &IntVector) -> bool {
        self.residues.binary_search(rho).is_ok()
    }
}

/// A verified `γ ∈ Q` with `γ + Q_sat ⊆ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCertificate {
    pub gamma: IntVector,
    /// Generator coefficients expressing `γ`.
    pub gamma_expression: Vec<BigInt>,
    /// For each residue `ρ` (sorted), generator coefficients expressing `γ + ρ`.
    pub residue_witnesses: Vec<(IntVector, Vec<BigInt>)>,
    /// `u_i(γ)` for every facet.
    pub facet_values: Vec<BigInt>,
    /// `max_i u_i(γ)`.
    pub m_q: BigInt,
}

impl GammaCertificate {
    /// `min_i u_i(γ)`. Reported for comparison only; it is not a certified
    /// bound exponent base.
    pub fn min_facet_value(&self) -> BigInt {
        self.facet_values.iter().min().cloned().unwrap_or_default()
    }

    /// Whether `x ∈ γ + Q_sat`, i.e. `u_i(x) ≥ u_i(γ)` for all `i`.
    pub fn covers(&self, semigroup: &AffineSemigroup, x: &IntVector) -> bool {
        semigroup
            .cone
            .support_forms()
            .iter()
            .zip(&self.facet_values)
            .all(|(u, g)| &u.dot(x) >= g)
    }

    /// Generator coefficients for `x ∈ γ + Q_sat`, assembled from the
    /// certificate: `x − γ = q + ρ` and `x = (γ + ρ) + q`.
    pub fn express(&self, semigroup: &AffineSemigroup, x: &IntVector) -> Option<Vec<BigInt>> {
        if !self.covers(semigroup, x) {
            return None;
        }
        let d = semigroup.cone.decompose(&(x - &self.gamma)).ok()?;
        let idx = self.residue_witnesses.binary_search_by(|(r, _)| r.cmp(&d.rho)).ok()?;
        let mut coeffs = semigroup.cone.generator_coefficients(&d);
        for (c, w) in coeffs.iter_mut().zip(&self.residue_witnesses[idx].1) {
            *c += w;
        }
        Some(coeffs)
    }
}

/// Result of [`AffineSemigroup::find_gamma`].
#[derive(Clone, Debug)]
pub struct GammaSearch {
    pub certificate: GammaCertificate,
    pub candidates_examined: usize,
    /// True when the search ran until no unexamined candidate could lower
    /// `m_Q`, so the returned value is minimal over all of `Q`.
    pub complete: bool,
}

/// Facet `σ_i` together with its semigroup `F_i` and the invariant factors of
/// `gr(σ_i ∩ M) / gr(F_i)`.
#[derive(Clone, Debug)]
pub struct FacetData {
    pub index: usize,
    pub form: IntVector,
    /// Indices into [`AffineSemigroup::generators`] of the generators with `u_i = 0`.
    pub generator_indices: Vec<usize>,
    pub generators: Vec<IntVector>,
    /// Basis of `{v ∈ M : u_i(v) = 0}`.
    pub hyperplane_basis: Vec<IntVector>,
    /// `d_1 | … | d_{n−1}`, all positive.
    pub invariant_factors: Vec<BigInt>,
    /// Sum of the facet generators: `u_i = 0` and `u_j > 0` for `j ≠ i`.
    pub interior_element: IntVector,
    quotient_transform: IntMatrix,
}

impl FacetData {
    /// Integer coefficients `c` over [`Self::generators`] with `Σ c_j g_j = v`,
    /// if `v ∈ gr(F_i)`.
    pub fn lattice_solve(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        if !self.form.dot(v).is_zero() {
            return None;
        }
        solve_in_lattice(&self.generators, v)
    }

    /// Order of `v` in `gr(σ_i ∩ M) / gr(F_i)`; `None` when `u_i(v) ≠ 0`.
    pub fn quotient_order(&self, v: &IntVector) -> Option<BigInt> {
        if !self.form.dot(v).is_zero() {
            return None;
        }
        let a = IntVector::new(solve_in_lattice(&self.hyperplane_basis, v)?);
        let b = self.quotient_transform.left_mul(&a);
        let mut order = BigInt::one();
        for (d, x) in self.invariant_factors.iter().zip(b.iter()) {
            debug_assert!(d.is_positive());
            order = order.lcm(&(d / d.gcd(x)));
        }
        Some(order)
    }
}

/// Largest prime dividing any facet invariant factor, or 0 if all are 1.
pub fn n_q(facets: &[FacetData]) -> BigInt {
    facets
        .iter()
        .flat_map(|f| &f.invariant_factors)
        .map(|d| largest_prime_factor(d).expect("invariant factors are positive"))
        .max()
        .unwrap_or_default()
}

impl AffineSemigroup {
    /// Reduces `raw_generators` to `M`-coordinates via the Hermite basis of
    /// their row lattice and builds the cone. Zero generators are dropped.
    pub fn build(raw_generators: Vec<IntVector>) -> Result<AffineSemigroup> {
        let ambient = raw_generators.first().ok_or(Error::EmptyInput)?.len();
        if let Some(g) = raw_generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
        }
        let (source_indices, nonzero): (Vec<usize>, Vec<IntVector>) = raw_generators
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (i, g.clone()))
            .unzip();
        if nonzero.is_empty() {
            return Err(Error::EmptyInput);
        }

        let lattice_basis = hermite_normal_form(&IntMatrix::from_rows(&nonzero, ambient)).basis();
        let n = lattice_basis.len();
        let generators: Vec<IntVector> = nonzero
            .iter()
            .map(|g| IntVector::new(solve_in_lattice(&lattice_basis, g).expect("generator lies in its own lattice")))
            .collect();

        let cone = Cone::new(generators.clone(), n)?;
        if !cone.is_pointed() || generators.iter().any(|g| !cone.grading().dot(g).is_positive()) {
            return Err(Error::NotPointed);
        }

        let mut descent_order: Vec<usize> = (0..generators.len()).collect();
        descent_order.sort_by_key(|&k| Reverse(cone.grading().dot(&generators[k])));

        Ok(AffineSemigroup {
            raw_generators,
            source_indices,
            lattice_basis,
            generators,
            cone,
            descent_order,
            residues: OnceLock::new(),
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn raw_generators(&self) -> &[IntVector] {
        &self.raw_generators
    }

    /// For each entry of [`Self::generators`], its index among the raw generators.
    pub fn source_indices(&self) -> &[usize] {
        &self.source_indices
    }

    /// Rows form a basis of `M` in ambient coordinates.
    pub fn lattice_basis(&self) -> &[IntVector] {
        &self.lattice_basis
    }

    /// Generators in `M`-coordinates.
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.cone.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.raw_generators[0].len()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn grading(&self) -> &IntVector {
        self.cone.grading()
    }

    pub fn to_lattice(&self, ambient: &IntVector) -> Option<IntVector> {
        solve_in_lattice(&self.lattice_basis, ambient).map(IntVector::new)
    }

    pub fn to_ambient(&self, v: &IntVector) -> IntVector {
        linear_combination(v.entries(), &self.lattice_basis, self.ambient_dim())
    }

    /// `v ∈ Q_sat`, i.e. `u_i(v) ≥ 0` for every facet form.
    pub fn sat_member(&self, v: &IntVector) -> bool {
        self.cone.contains(v)
    }

    pub fn member(&self, v: &IntVector) -> bool {
        self.sat_member(v) && self.resolve(v)
    }

    /// Nonnegative generator coefficients summing to `v`, if `v ∈ Q`.
    pub fn express(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        if !self.member(v) {
            return None;
        }
        let memo = self.memo.read().unwrap();
        let mut coeffs = vec![BigInt::zero(); self.generators.len()];
        let mut cur = v.clone();
        while !cur.is_zero() {
            let Some(Link::Via(k)) = memo.get(&cur) else {
                unreachable!("resolved members are linked down to the origin")
            };
            coeffs[*k] += 1;
            cur = &cur - &self.generators[*k];
        }
        Some(coeffs)
    }

    /// Memoized descent: `v ∈ Q` iff `v = 0` or some `v − g` is in `σ` and in
    /// `Q`. The grading drops by at least `min ℓ(g) > 0` per step, so the
    /// search is finite.
    fn resolve(&self, v: &IntVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let shared = self.memo.read().unwrap();
        if let Some(link) = shared.get(v) {
            return matches!(link, Link::Via(_));
        }
        let mut local: HashMap<IntVector, Link> = HashMap::new();
        let lookup = |x: &IntVector, local: &HashMap<IntVector, Link>| -> Option<bool> {
            if x.is_zero() {
                return Some(true);
            }
            local.get(x).or_else(|| shared.get(x)).map(|l| matches!(l, Link::Via(_)))
        };

        let ngens = self.descent_order.len();
        let mut stack: Vec<(IntVector, usize)> = vec![(v.clone(), 0)];
        let mut found = false;
        while let Some((x, next)) = stack.last_mut() {
            if *next == ngens {
                local.insert(x.clone(), Link::Absent);
                stack.pop();
                continue;
            }
            let k = self.descent_order[*next];
            *next += 1;
            let child = &*x - &self.generators[k];
            if !self.cone.contains(&child) {
                continue;
            }
            match lookup(&child, &local) {
                Some(true) => {
                    // every frame on the stack reaches the origin through its last step
                    for (y, step) in stack.drain(..) {
                        local.insert(y, Link::Via(self.descent_order[step - 1]));
                    }
                    found = true;
                    break;
                }
                Some(false) => {}
                None => stack.push((child, 0)),
            }
        }
        drop(shared);
        self.memo.write().unwrap().extend(local);
        found
    }

    pub fn saturation_residues(&self) -> &SaturationData {
        self.residues.get_or_init(|| {
            let mut residues: Vec<IntVector> = self
                .cone
                .triangulation()
                .iter()
                .flat_map(|s| s.parallelepiped_points())
                .collect();
            residues.sort();
            residues.dedup();
            SaturationData { residues }
        })
    }

    /// Certificate for `γ + Q_sat ⊆ Q`, checked on the finite residue set:
    /// every `s ∈ Q_sat` is `q + ρ` with `q ∈ Q`, so `γ + s = (γ + ρ) + q`.
    pub fn verify_gamma(&self, gamma: &IntVector) -> Option<GammaCertificate> {
        let gamma_expression = self.express(gamma)?;
        let mut residue_witnesses = Vec::new();
        for rho in &self.saturation_residues().residues {
            let w = self.express(&(gamma + rho))?;
            residue_witnesses.push((rho.clone(), w));
        }
        let facet_values = self.cone.facet_values(gamma);
        let m_q = facet_values.iter().max().cloned().unwrap_or_default();
        Some(GammaCertificate { gamma: gamma.clone(), gamma_expression, residue_witnesses, facet_values, m_q })
    }

    /// Breadth-first search over `Q` by grading level for a valid `γ`,
    /// continuing after the first hit to minimize `m_Q = max_i u_i(γ)`.
    ///
    /// Since `max_i u_i(x) ≥ ℓ(x)/r`, candidates at level `ℓ ≥ r·m` cannot beat
    /// a certificate with value `m`, which ends the search.
    pub fn find_gamma(&self, budget: usize) -> Result<GammaSearch> {
        let r = BigInt::from(self.cone.support_forms().len());
        let zero = IntVector::zeros(self.rank());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((BigInt::zero(), zero.clone())));
        let mut seen: HashSet<IntVector> = HashSet::from([zero]);
        let mut best: Option<GammaCertificate> = None;
        let mut examined = 0;

        let complete = loop {
            let Some(Reverse((level, x))) = heap.pop() else { break true };
            if let Some(b) = &best {
                if level >= &r * &b.m_q {
                    break true;
                }
            }
            if examined == budget {
                if best.is_none() {
                    return Err(Error::BudgetExhausted { budget, level });
                }
                break false;
            }
            examined += 1;

            let promising = best.as_ref().is_none_or(|b| {
                self.cone.facet_values(&x).iter().max().is_some_and(|m| m < &b.m_q)
            });
            if promising {
                if let Some(cert) = self.verify_gamma(&x) {
                    best = Some(cert);
                }
            }
            for g in &self.generators {
                let y = &x + g;
                if seen.insert(y.clone()) {
                    heap.push(Reverse((self.grading().dot(&y), y)));
                }
            }
        };

        let certificate = best.ok_or(Error::BudgetExhausted { budget, level: BigInt::zero() })?;
        Ok(GammaSearch { certificate, candidates_examined: examined, complete })
    }

    pub fn facet_data(&self, index: usize) -> Result<FacetData> {
        let forms = self.cone.support_forms();
        let form = forms
            .get(index)
            .ok_or(Error::FacetIndex { index, count: forms.len() })?
            .clone();
        let n = self.rank();
        let generator_indices = self.cone.facet_generator_sets()[index].clone();
        let generators: Vec<IntVector> =
            generator_indices.iter().map(|&k| self.generators[k].clone()).collect();
        let hyperplane_basis = kernel_basis(&IntMatrix::from_rows(std::slice::from_ref(&form), n));

        let coords: Vec<IntVector> = generators
            .iter()
            .map(|g| {
                IntVector::new(
                    solve_in_lattice(&hyperplane_basis, g).expect("facet generators lie on the facet hyperplane"),
                )
            })
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&coords, n - 1));
        let invariant_factors = snf.invariant_factors.clone();
        debug_assert_eq!(invariant_factors.len(), n - 1);

        let interior_element = generators.iter().fold(IntVector::zeros(n), |acc, g| &acc + g);
        Ok(FacetData {
            index,
            form,
            generator_indices,
            generators,
            hyperplane_basis,
            invariant_factors,
            interior_element,
            quotient_transform: snf.v,
        })
    }

    pub fn facets(&self) -> Vec<FacetData> {
        (0..self.cone.support_forms().len())
            .map(|i| self.facet_data(i).expect("index in range"))
            .collect()
    }

    pub fn n_q(&self) -> BigInt {
        n_q(&self.facets())
    }
}
