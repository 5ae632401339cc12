//! Rational polyhedral cones given by generators in `M = ℤ^n`.
//!
//! A [`Cone`] stores its irredundant inward facet forms `u_1, …, u_r`
//! (primitive, `u_i(g) ≥ 0` on every generator), the generators lying on each
//! facet, one representative generator per extreme ray, and a placing
//! triangulation into simplicial subcones over those representatives.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{hermite_normal_form, kernel_basis, linear_combination, primitive, IntMatrix, IntVector};
use crate::{Error, Result};

fn rank_of(vectors: &[&IntVector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<IntVector> = vectors.iter().map(|v| (*v).clone()).collect();
    IntMatrix::from_rows(&rows, n).rank()
}

/// Irredundant primitive inward normals of `cone(generators)`.
///
/// Computed by double description on the dual cone: start from the simplicial
/// cone cut out by `n` independent generators, then intersect with one
/// halfspace `g·u ≥ 0` per remaining generator, keeping only rays whose tight
/// constraints have rank `n − 1`.
///
/// Forms are ordered by the sorted index list of the generators they vanish on.
pub fn support_forms(generators: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: g.len() });
    }
    let gens: Vec<&IntVector> = generators.iter().filter(|g| !g.is_zero()).collect();
    let rank = rank_of(&gens, n);
    if rank != n || n == 0 {
        return Err(Error::NotFullRank { rank, dim: n });
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    for k in 0..gens.len() {
        let mut trial: Vec<&IntVector> = chosen.iter().map(|&j| gens[j]).collect();
        trial.push(gens[k]);
        if rank_of(&trial, n) == trial.len() {
            chosen.push(k);
            if chosen.len() == n {
                break;
            }
        }
    }

    // G · adj(G) = det · I, so the signed columns of adj(G) are the rays of
    // {u : g_k · u ≥ 0 for the chosen g_k}.
    let basis_rows: Vec<IntVector> = chosen.iter().map(|&j| gens[j].clone()).collect();
    let g0 = IntMatrix::from_rows(&basis_rows, n);
    let det = g0.determinant();
    let adj = g0.adjugate();
    let sign = BigInt::from(if det.is_negative() { -1 } else { 1 });
    let mut rays: Vec<IntVector> = (0..n)
        .map(|j| {
            let col = IntVector::new((0..n).map(|i| &adj[(i, j)] * &sign).collect());
            primitive(&col).expect("adjugate column of an invertible matrix is nonzero")
        })
        .collect();

    let mut processed: Vec<usize> = chosen.clone();
    for k in 0..gens.len() {
        if chosen.contains(&k) {
            continue;
        }
        let g = gens[k];
        let values: Vec<BigInt> = rays.iter().map(|r| g.dot(r)).collect();
        let mut next: Vec<IntVector> = Vec::new();
        for (r, val) in rays.iter().zip(&values) {
            if !val.is_negative() {
                next.push(r.clone());
            }
        }
        processed.push(k);
        for (p, vp) in rays.iter().zip(&values) {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in rays.iter().zip(&values) {
                if !vq.is_negative() {
                    continue;
                }
                let cand = &q.scaled(vp) - &p.scaled(vq);
                let Ok(cand) = primitive(&cand) else { continue };
                if next.contains(&cand) {
                    continue;
                }
                let tight: Vec<&IntVector> =
                    processed.iter().map(|&j| gens[j]).filter(|h| h.dot(&cand).is_zero()).collect();
                if rank_of(&tight, n) == n - 1 {
                    next.push(cand);
                }
            }
        }
        rays = next;
    }

    let mut keyed: Vec<(Vec<usize>, IntVector)> = rays
        .into_iter()
        .map(|u| {
            let zeros = generators
                .iter()
                .enumerate()
                .filter(|(_, g)| u.dot(g).is_zero())
                .map(|(i, _)| i)
                .collect();
            (zeros, u)
        })
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, u)| u).collect())
}

/// Position of a degree relative to `σ` or `−σ`, read off the signs of
/// `(u_1(v), …, u_r(v))`. Facet indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionTag {
    SigmaInterior,
    SigmaBoundary(Vec<usize>),
    OutsideSigma,
    NegInterior,
    NegBoundary(Vec<usize>),
    OutsideNeg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub sigma: RegionTag,
    pub neg: RegionTag,
}

/// A full-dimensional simplicial cone spanned by `n` extreme-ray generators.
#[derive(Clone, Debug)]
pub struct SimplicialSubcone {
    /// Indices into [`Cone::extreme_ray_reps`].
    pub ray_indices: Vec<usize>,
    /// The ray generators themselves, in `ray_indices` order.
    pub rays: Vec<IntVector>,
    /// `|det|` of the ray matrix.
    pub determinant: BigInt,
    // sign(det) · adj(R): v = Σ μ_k r_k  ⇔  μ = v · inverse_numerators / determinant
    inverse_numerators: IntMatrix,
}

impl SimplicialSubcone {
    pub fn new(ray_indices: Vec<usize>, rays: Vec<IntVector>) -> Option<Self> {
        let n = rays.first().map_or(0, |r| r.len());
        let r = IntMatrix::from_rows(&rays, n);
        let det = r.determinant();
        if det.is_zero() {
            return None;
        }
        let mut adj = r.adjugate();
        if det.is_negative() {
            adj = adj.mul(&IntMatrix::diagonal(&vec![BigInt::from(-1); n]));
        }
        Some(SimplicialSubcone { ray_indices, rays, determinant: det.abs(), inverse_numerators: adj })
    }

    /// Numerators of the coordinates of `v` in the ray basis; the coordinates
    /// themselves are these divided by [`Self::determinant`].
    pub fn coordinate_numerators(&self, v: &IntVector) -> Vec<BigInt> {
        self.inverse_numerators.left_mul(v).into_entries()
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.coordinate_numerators(v).iter().all(|x| !x.is_negative())
    }

    /// Lattice points `Σ μ_k r_k` with every `0 ≤ μ_k < 1`, sorted.
    /// There are exactly `determinant` of them, the origin included.
    pub fn parallelepiped_points(&self) -> Vec<IntVector> {
        let n = self.rays.len();
        // Upper-triangular HNF of the ray lattice: {y : 0 ≤ y_i < h_ii} is a
        // complete residue system of ℤ^n modulo that lattice.
        let hnf = hermite_normal_form(&IntMatrix::from_rows(&self.rays, n));
        let bounds: Vec<BigInt> = (0..n).map(|i| hnf.h[(i, i)].clone()).collect();
        let mut out = Vec::new();
        let mut y = IntVector::zeros(n);
        loop {
            let floors: Vec<BigInt> = self
                .coordinate_numerators(&y)
                .iter()
                .map(|x| x.div_floor(&self.determinant))
                .collect();
            out.push(&y - &linear_combination(&floors, &self.rays, n));

            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                y[i] += 1;
                if y[i] < bounds[i] {
                    break;
                }
                y[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

/// Half-open fundamental parallelepiped lattice points of linearly independent `rays`.
pub fn parallelepiped_points(rays: &[IntVector]) -> Vec<IntVector> {
    SimplicialSubcone::new((0..rays.len()).collect(), rays.to_vec())
        .map(|s| s.parallelepiped_points())
        .unwrap_or_default()
}

/// `s = q + ρ` with `q = Σ ⌊μ_k⌋ r_k` over a subcone containing `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub subcone: usize,
    /// `⌊μ_k⌋`, aligned with the subcone's `ray_indices`.
    pub ray_coefficients: Vec<BigInt>,
    pub q: IntVector,
    pub rho: IntVector,
}

#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
    support_forms: Vec<IntVector>,
    grading: IntVector,
    pointed: bool,
    extreme_ray_reps: Vec<usize>,
    facet_generator_sets: Vec<Vec<usize>>,
    subcones: Vec<SimplicialSubcone>,
}

impl Cone {
    /// Builds the cone over `generators`, which must span `ℤ^n` rationally.
    /// Non-pointed cones are accepted here (see [`Cone::is_pointed`]) but get
    /// no extreme rays and no triangulation.
    pub fn new(generators: Vec<IntVector>, n: usize) -> Result<Cone> {
        let support_forms = support_forms(&generators, n)?;
        let pointed = rank_of(&support_forms.iter().collect::<Vec<_>>(), n) == n;
        let facet_generator_sets = support_forms
            .iter()
            .map(|u| {
                generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !g.is_zero() && u.dot(g).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut grading = IntVector::zeros(n);
        for u in &support_forms {
            grading = &grading + u;
        }

        let mut cone = Cone {
            dim: n,
            generators,
            support_forms,
            grading,
            pointed,
            extreme_ray_reps: Vec::new(),
            facet_generator_sets,
            subcones: Vec::new(),
        };
        if pointed {
            cone.extreme_ray_reps = cone.find_extreme_ray_reps();
            cone.subcones = cone.triangulate();
        }
        Ok(cone)
    }

    fn find_extreme_ray_reps(&self) -> Vec<usize> {
        let n = self.dim;
        // (direction, representative) in order of first appearance
        let mut rays: Vec<(IntVector, usize)> = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let tight: Vec<&IntVector> =
                self.support_forms.iter().filter(|u| u.dot(g).is_zero()).collect();
            if rank_of(&tight, n) != n - 1 {
                continue;
            }
            let dir = primitive(g).expect("nonzero");
            match rays.iter_mut().find(|(d, _)| *d == dir) {
                Some((_, rep)) => {
                    let current = &self.generators[*rep];
                    let key = (self.grading.dot(g), g);
                    if key < (self.grading.dot(current), current) {
                        *rep = k;
                    }
                }
                None => rays.push((dir, k)),
            }
        }
        rays.into_iter().map(|(_, k)| k).collect()
    }

    /// Placing triangulation over the extreme-ray representatives, inserted in
    /// order after an initial simplex of the first `n` independent rays.
    pub fn triangulate(&self) -> Vec<SimplicialSubcone> {
        let n = self.dim;
        if !self.pointed {
            return Vec::new();
        }
        let rays: Vec<&IntVector> =
            self.extreme_ray_reps.iter().map(|&k| &self.generators[k]).collect();

        let mut initial: Vec<usize> = Vec::new();
        for k in 0..rays.len() {
            let mut trial: Vec<&IntVector> = initial.iter().map(|&j| rays[j]).collect();
            trial.push(rays[k]);
            if rank_of(&trial, n) == trial.len() {
                initial.push(k);
                if initial.len() == n {
                    break;
                }
            }
        }
        let mut simplices: Vec<Vec<usize>> = vec![initial.clone()];
        let mut placed = initial.clone();

        for k in 0..rays.len() {
            if initial.contains(&k) {
                continue;
            }
            let mut added = Vec::new();
            for s in &simplices {
                for drop in 0..n {
                    let face: Vec<usize> =
                        s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &j)| j).collect();
                    let face_rows: Vec<IntVector> = face.iter().map(|&j| rays[j].clone()).collect();
                    let Some(mut normal) =
                        kernel_basis(&IntMatrix::from_rows(&face_rows, n)).into_iter().next()
                    else {
                        continue;
                    };
                    if normal.dot(rays[s[drop]]).is_negative() {
                        normal = -&normal;
                    }
                    let on_boundary = placed.iter().all(|&j| !normal.dot(rays[j]).is_negative());
                    if on_boundary && normal.dot(rays[k]).is_negative() {
                        let mut simplex = face;
                        simplex.push(k);
                        simplex.sort_unstable();
                        added.push(simplex);
                    }
                }
            }
            simplices.extend(added);
            placed.push(k);
        }

        simplices
            .into_iter()
            .map(|s| {
                let rs = s.iter().map(|&j| rays[j].clone()).collect();
                SimplicialSubcone::new(s, rs).expect("placing triangulation produces full-rank simplices")
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn support_forms(&self) -> &[IntVector] {
        &self.support_forms
    }

    /// `ℓ = Σ_i u_i`, strictly positive on `σ \ {0}` when the cone is pointed.
    pub fn grading(&self) -> &IntVector {
        &self.grading
    }

    /// Generator indices, one per extreme ray, in order of first appearance.
    pub fn extreme_ray_reps(&self) -> &[usize] {
        &self.extreme_ray_reps
    }

    pub fn facet_generator_sets(&self) -> &[Vec<usize>] {
        &self.facet_generator_sets
    }

    pub fn triangulation(&self) -> &[SimplicialSubcone] {
        &self.subcones
    }

    /// True iff the forms span the dual space, i.e. `σ ∩ −σ = {0}`.
    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn facet_values(&self, v: &IntVector) -> Vec<BigInt> {
        self.support_forms.iter().map(|u| u.dot(v)).collect()
    }

    /// `u_i(g)` for every generator `g`.
    pub fn facet_values_of_generators(&self, i: usize) -> Vec<BigInt> {
        self.generators.iter().map(|g| self.support_forms[i].dot(g)).collect()
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.support_forms.iter().all(|u| !u.dot(v).is_negative())
    }

    pub fn classify(&self, v: &IntVector) -> Region {
        let values = self.facet_values(v);
        let zeros: Vec<usize> =
            values.iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(i, _)| i).collect();
        let sigma = if values.iter().all(Signed::is_positive) {
            RegionTag::SigmaInterior
        } else if values.iter().all(|x| !x.is_negative()) {
            RegionTag::SigmaBoundary(zeros.clone())
        } else {
            RegionTag::OutsideSigma
        };
        let neg = if values.iter().all(Signed::is_negative) {
            RegionTag::NegInterior
        } else if values.iter().all(|x| !x.is_positive()) {
            RegionTag::NegBoundary(zeros)
        } else {
            RegionTag::OutsideNeg
        };
        Region { sigma, neg }
    }

    pub fn decompose(&self, s: &IntVector) -> Result<Decomposition> {
        if !self.contains(s) {
            return Err(Error::OutsideCone(s.clone()));
        }
        for (idx, sub) in self.subcones.iter().enumerate() {
            let num = sub.coordinate_numerators(s);
            if num.iter().any(Signed::is_negative) {
                continue;
            }
            let floors: Vec<BigInt> = num.iter().map(|x| x.div_floor(&sub.determinant)).collect();
            let q = linear_combination(&floors, &sub.rays, self.dim);
            let rho = s - &q;
            return Ok(Decomposition { subcone: idx, ray_coefficients: floors, q, rho });
        }
        Err(Error::OutsideCone(s.clone()))
    }

    /// Maps a [`Decomposition`]'s ray coefficients onto generator indices.
    pub fn generator_coefficients(&self, d: &Decomposition) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.generators.len()];
        let sub = &self.subcones[d.subcone];
        for (&ray, c) in sub.ray_indices.iter().zip(&d.ray_coefficients) {
            out[self.extreme_ray_reps[ray]] += c;
        }
        out
    }
}

/// Zero-set of `v` as an ordered set, handy for tests and reports.
pub fn zero_facets(cone: &Cone, v: &IntVector) -> BTreeSet<usize> {
    cone.facet_values(v)
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| i)
        .collect()
}
