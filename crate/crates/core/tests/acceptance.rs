//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hsl_core::cohomology::{prime_power, window_points};
use hsl_core::lattice::{hermite_normal_form, smith_normal_form, IntMatrix};
use hsl_core::{
    hsl_exact_dim1, theoretical_bound, AffineSemigroup, IntVector, Nilpotency, TopCohomology, ZeroClassResult,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn semigroup(rows: &[&[i64]]) -> AffineSemigroup {
    AffineSemigroup::build(rows.iter().map(|r| IntVector::from_i64s(r)).collect()).unwrap()
}

fn fixture() -> AffineSemigroup {
    semigroup(&[&[5, 1], &[4, 1], &[1, 3], &[1, 4]])
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn v2(x: i64, y: i64) -> IntVector {
    IntVector::from([x, y])
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn geometry() -> Outcome {
    let s = fixture();
    let forms: BTreeSet<IntVector> = s.cone().support_forms().iter().cloned().collect();
    let expected: BTreeSet<IntVector> = [v2(-1, 5), v2(4, -1)].into_iter().collect();
    ensure(forms == expected, || format!("forms {forms:?}"))?;
    ensure(s.cone().is_pointed(), || "cone not pointed".into())?;
    Ok("forms {(-1,5),(4,-1)}, pointed".into())
}

fn gamma() -> Outcome {
    let s = fixture();
    let cert = s.verify_gamma(&v2(14, 9)).ok_or("verify_gamma((14,9)) failed")?;
    ensure(cert.facet_values == vec![big(31), big(47)], || format!("facet values {:?}", cert.facet_values))?;
    ensure(cert.m_q == big(47), || format!("m_Q = {}", cert.m_q))?;
    ensure(cert.min_facet_value() == big(31), || "min facet value".into())?;
    ensure(cert.residue_witnesses.len() == s.saturation_residues().residues.len(), || "residue witnesses".into())?;
    Ok(format!("facet values (31,47), certified m_Q = 47, uncertified min = 31, {} residues", cert.residue_witnesses.len()))
}

fn n_q() -> Outcome {
    let s = fixture();
    let facets = s.facets();
    ensure(facets.len() == 2, || "facet count".into())?;
    for f in &facets {
        ensure(f.invariant_factors.iter().all(One::is_one), || format!("facet {} factors {:?}", f.index, f.invariant_factors))?;
    }
    ensure(s.n_q().is_zero(), || format!("N_Q = {}", s.n_q()))?;
    Ok("invariant factors all 1 on both facets, N_Q = 0".into())
}

fn bound_conformance() -> Outcome {
    let s = fixture();
    let cert = s.verify_gamma(&v2(14, 9)).ok_or("gamma")?;
    let h = TopCohomology::new(&s, &cert);
    let cap = &cert.m_q * 10;
    let mut lines = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let start = Instant::now();
        let bound = h.theoretical_bound(p).ok_or("bound absent")?;
        let report = h.empirical_hsl(p, 10, bound + 2, &cap);
        let elapsed = start.elapsed();
        ensure(report.violations.is_empty(), || format!("p = {p}: violations {:?}", report.violations))?;
        ensure(report.empirical_max <= bound, || format!("p = {p}: max {} > {bound}", report.empirical_max))?;
        ensure(report.scaling_failures.is_empty(), || format!("p = {p}: scaling failures"))?;
        ensure(elapsed < Duration::from_secs(60), || format!("p = {p}: took {elapsed:?}"))?;
        lines.push(format!(
            "p={p} bound={bound} max={} undetermined={} ({:.1}s)",
            report.empirical_max,
            report.undetermined.len(),
            elapsed.as_secs_f64()
        ));
    }
    Ok(lines.join("; "))
}

const ONE_DIM: [&[i64]; 3] = [&[3, 5], &[2, 3], &[4, 7, 9]];
const ONE_DIM_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// Membership table of a numerical semigroup up to `limit`, by sieve.
fn numerical_members(gens: &[i64], limit: usize) -> Vec<bool> {
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for x in 1..=limit {
        member[x] = gens.iter().any(|&g| g as usize <= x && member[x - g as usize]);
    }
    member
}

fn brute_dim1(gens: &[i64], p: u64) -> u32 {
    let member = numerical_members(gens, 10_000);
    let mut e = 0;
    let mut x = 1usize;
    while !member[x] {
        x *= p as usize;
        e += 1;
    }
    e
}

fn dim1_equivalence() -> Outcome {
    let start = Instant::now();
    for gens in ONE_DIM {
        let rows: Vec<Vec<i64>> = gens.iter().map(|&g| vec![g]).collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let s = semigroup(&rows);
        let cert = s.find_gamma(10_000).map_err(|e| e.to_string())?.certificate;
        let h = TopCohomology::new(&s, &cert);
        for p in ONE_DIM_PRIMES {
            let exact = hsl_exact_dim1(&s, p).map_err(|e| e.to_string())?;
            let oracle = brute_dim1(gens, p);
            ensure(exact == oracle, || format!("{gens:?} p={p}: exact {exact} vs oracle {oracle}"))?;
            let report = h.empirical_hsl(p, 30, h.default_e_max(p), &h.default_cap());
            ensure(report.empirical_max == exact, || {
                format!("{gens:?} p={p}: empirical {} vs exact {exact}", report.empirical_max)
            })?;
            ensure(report.undetermined.is_empty() && report.inexact_orders.is_empty(), || {
                format!("{gens:?} p={p}: undecided classes")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("15 cases agree ({:.2}s)", elapsed.as_secs_f64()))
}

fn dim1_bound() -> Outcome {
    for gens in ONE_DIM {
        let rows: Vec<Vec<i64>> = gens.iter().map(|&g| vec![g]).collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let s = semigroup(&rows);
        let cert = s.find_gamma(10_000).map_err(|e| e.to_string())?.certificate;
        let nq = s.n_q();
        ensure(nq.is_zero(), || format!("{gens:?}: N_Q = {nq}"))?;
        for p in ONE_DIM_PRIMES {
            let exact = hsl_exact_dim1(&s, p).map_err(|e| e.to_string())?;
            let bound = theoretical_bound(&cert, &nq, p).ok_or("bound absent")?;
            ensure(exact <= bound, || format!("{gens:?} p={p}: {exact} > {bound}"))?;
        }
    }
    let s = semigroup(&[&[3], &[5]]);
    let cert = s.find_gamma(10_000).map_err(|e| e.to_string())?.certificate;
    ensure(cert.m_q == big(8), || format!("<3,5> m_Q = {}", cert.m_q))?;
    ensure(theoretical_bound(&cert, &BigInt::zero(), 2) == Some(3), || "<3,5> p=2 bound".into())?;
    ensure(hsl_exact_dim1(&s, 2).ok() == Some(3), || "<3,5> p=2 exact".into())?;
    Ok("exact ≤ bound for all 15 cases; <3,5> at p=2 is tight (3 = 3)".into())
}

/// Elements of the semigroup generated by `gens` with `(3,4)`-grading at most
/// `level`, by closure under addition.
fn enumerate(gens: &[IntVector], level: i64) -> HashSet<IntVector> {
    let grading = v2(3, 4);
    let level = big(level);
    let mut out = HashSet::from([v2(0, 0)]);
    let mut frontier = vec![v2(0, 0)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x + g;
            if grading.dot(&y) <= level && out.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let s = fixture();
    let cert = s.verify_gamma(&v2(14, 9)).ok_or("gamma")?;
    let h = TopCohomology::new(&s, &cert);
    let grading = v2(3, 4);
    let gens: Vec<IntVector> = [v2(5, 1), v2(4, 1), v2(1, 3), v2(1, 4)].into();
    let forms = [v2(-1, 5), v2(4, -1)];
    let level_cap = 60i64;

    // first pass: the library's verdicts and the largest witness grading
    let degrees = window_points(2, 8);
    let verdicts: Vec<ZeroClassResult> = degrees.iter().map(|v| h.zero_class(v, &big(level_cap))).collect();
    let mut witness_level = big(level_cap);
    for (v, r) in degrees.iter().zip(&verdicts) {
        if let ZeroClassResult::Zero(w) = r {
            ensure(w.verify(&s, h.facets(), v), || format!("witness for {v} fails verification"))?;
            witness_level = witness_level.max(grading.dot(&w.w));
        }
    }
    let oracle_level: i64 = witness_level.try_into().map_err(|_| "level overflow")?;

    let q = enumerate(&gens, 7 * 8 + oracle_level);
    let facet_elements: Vec<Vec<IntVector>> = forms
        .iter()
        .map(|u| {
            let mut f: Vec<IntVector> = enumerate(&gens, oracle_level).into_iter().filter(|x| u.dot(x).is_zero()).collect();
            f.sort_by_key(|x| grading.dot(x));
            f
        })
        .collect();

    // a witness at the nominal level must be found by the library's own search
    let strict_zero = |v: &IntVector| {
        facet_elements.iter().flatten().any(|w| grading.dot(w) <= big(level_cap) && q.contains(&(v + w)))
    };
    let (mut zero, mut nonzero, mut unknown, mut beyond) = (0, 0, 0, 0);
    for (v, r) in degrees.iter().zip(&verdicts) {
        let oracle_zero = facet_elements.iter().flatten().any(|w| q.contains(&(v + w)));
        match r {
            ZeroClassResult::Zero(w) => {
                zero += 1;
                if grading.dot(&w.w) > big(level_cap) {
                    beyond += 1;
                }
                ensure(oracle_zero, || format!("{v}: library zero, oracle finds no witness"))?;
            }
            ZeroClassResult::Nonzero(_) => {
                nonzero += 1;
                ensure(!oracle_zero, || format!("{v}: library nonzero, oracle finds a witness"))?;
            }
            ZeroClassResult::Unknown { .. } => {
                unknown += 1;
                ensure(!strict_zero(v), || format!("{v}: unknown, but a witness exists at level {level_cap}"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} degrees: {zero} zero ({beyond} with witness above level {level_cap}), {nonzero} nonzero, {unknown} unknown; oracle level {oracle_level} ({:.1}s)",
        degrees.len(),
        elapsed.as_secs_f64()
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let refs: Vec<&[i64]> = data.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64_rows(&refs)
}

fn is_hermite(h: &IntMatrix, rank: usize) -> bool {
    let mut last_pivot: Option<usize> = None;
    for i in 0..h.rows() {
        let row = h.row(i);
        let lead = row.iter().position(|x| !x.is_zero());
        match lead {
            None => {
                if i < rank {
                    return false;
                }
            }
            Some(c) => {
                if i >= rank || last_pivot.is_some_and(|p| c <= p) || !row[c].is_positive() {
                    return false;
                }
                for k in 0..i {
                    let above = &h[(k, c)];
                    if above.is_negative() || above >= &row[c] {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// gcd of all `k × k` minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let minor: Vec<IntVector> =
                rows.iter().map(|&i| IntVector::new(cols.iter().map(|&j| a[(i, j)].clone()).collect())).collect();
            g = g.gcd(&IntMatrix::from_rows(&minor, k).determinant());
        }
    }
    g
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_97ab);

    for case in 0..500 {
        let a = random_matrix(&mut rng);
        let snf = smith_normal_form(&a);
        ensure(snf.u.mul(&a).mul(&snf.v) == snf.d, || format!("case {case}: U·A·V ≠ D for {a}"))?;
        ensure(snf.u.is_unimodular() && snf.v.is_unimodular(), || format!("case {case}: transforms not unimodular"))?;
        let k = a.rows().min(a.cols());
        let mut product = BigInt::one();
        for i in 0..k {
            let d = &snf.d[(i, i)];
            ensure(!d.is_negative(), || format!("case {case}: negative diagonal"))?;
            if i + 1 < k {
                ensure(
                    d.is_zero() && snf.d[(i + 1, i + 1)].is_zero() || !d.is_zero() && snf.d[(i + 1, i + 1)].is_multiple_of(d),
                    || format!("case {case}: divisibility chain broken"),
                )?;
            }
            product *= d;
            ensure(product == determinantal_divisor(&a, i + 1), || format!("case {case}: determinantal divisor {i}"))?;
        }
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                ensure(i == j || snf.d[(i, j)].is_zero(), || format!("case {case}: off-diagonal entry"))?;
            }
        }
        let hnf = hermite_normal_form(&a);
        ensure(hnf.u.mul(&a) == hnf.h, || format!("case {case}: U·A ≠ H"))?;
        ensure(hnf.u.is_unimodular(), || format!("case {case}: HNF transform not unimodular"))?;
        ensure(is_hermite(&hnf.h, hnf.rank), || format!("case {case}: not in Hermite form: {}", hnf.h))?;
        ensure(hnf.rank == a.rank(), || format!("case {case}: rank"))?;
    }

    let s = fixture();
    let residues = s.saturation_residues();
    let cone = s.cone();
    let mut round_trips = 0;
    while round_trips < 500 {
        let v = v2(rng.gen_range(-40..=200), rng.gen_range(-40..=200));
        if !cone.contains(&v) {
            continue;
        }
        round_trips += 1;
        let d = cone.decompose(&v).map_err(|e| e.to_string())?;
        ensure(&d.q + &d.rho == v, || format!("{v}: q + ρ ≠ v"))?;
        ensure(d.ray_coefficients.iter().all(|c| !c.is_negative()), || format!("{v}: negative ray coefficient"))?;
        ensure(residues.contains(&d.rho), || format!("{v}: ρ = {} not a residue", d.rho))?;
        let coeffs = cone.generator_coefficients(&d);
        let rebuilt = hsl_core::lattice::linear_combination(&coeffs, s.generators(), 2);
        ensure(rebuilt == d.q, || format!("{v}: generator coefficients disagree"))?;
    }

    // the fixture's nilpotent classes are all zero already; the second
    // semigroup misses the value 1 on one facet form and has positive orders
    let gapped = semigroup(&[&[1, 0], &[0, 2], &[0, 3]]);
    let fixture_cert = s.verify_gamma(&v2(14, 9)).ok_or("gamma")?;
    let gapped_cert = gapped.find_gamma(10_000).map_err(|e| e.to_string())?.certificate;
    let mut positive = 0;
    for (sg, cert) in [(&s, &fixture_cert), (&gapped, &gapped_cert)] {
        let h = TopCohomology::new(sg, cert);
        let cap = h.default_cap();
        let mut checked = 0;
        while checked < 250 {
            let v = v2(rng.gen_range(-10..=10), rng.gen_range(-10..=10));
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let orbit = h.frobenius_orbit(&v, p, h.default_e_max(p), &cap);
            let Nilpotency::Order { order, .. } = orbit.nilpotency else { continue };
            checked += 1;
            if order > 0 {
                positive += 1;
            }
            let bp = BigInt::from(p);
            for e in order as usize..orbit.statuses.len() {
                let w = orbit.statuses[e].witness().ok_or_else(|| format!("{v} p={p}: zero lost at e={e}"))?;
                let degree = v.scaled(&prime_power(p, e as u32));
                ensure(w.verify(sg, h.facets(), &degree), || format!("{v} p={p} e={e}: witness fails"))?;
                let next = w.scaled(&bp);
                ensure(next.verify(sg, h.facets(), &degree.scaled(&bp)), || {
                    format!("{v} p={p} e={e}: scaled witness fails")
                })?;
            }
        }
    }
    Ok(format!("500 SNF/HNF, 500 decompositions, 500 nilpotent orbits ({positive} of positive order)"))
}

fn headline() -> Outcome {
    let s = fixture();
    let cert = s.verify_gamma(&v2(14, 9)).ok_or("gamma")?;
    let h = TopCohomology::new(&s, &cert);
    let bound = h.theoretical_bound(53);
    ensure(bound == Some(1), || format!("bound {bound:?}"))?;
    let report = h.empirical_hsl(53, 10, 3, &h.default_cap());
    ensure(report.empirical_max <= 1, || format!("empirical max {}", report.empirical_max))?;
    ensure(report.violations.is_empty(), || "violations".into())?;
    Ok(format!("p=53: bound 1, empirical max {}", report.empirical_max))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("fixture geometry", geometry, Duration::from_secs(1)),
        ("gamma verification", gamma, Duration::from_secs(5)),
        ("facet invariant factors", n_q, Duration::from_secs(1)),
        ("bound conformance", bound_conformance, Duration::from_secs(240)),
        ("rank-one exact order", dim1_equivalence, Duration::from_secs(5)),
        ("rank-one bound", dim1_bound, Duration::MAX),
        ("zero-class oracle", oracle_equivalence, Duration::from_secs(120)),
        ("property suites", property_suites, Duration::MAX),
        ("large characteristic", headline, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= *limit {
                Ok(msg)
            } else {
                Err(format!("exceeded {limit:?} (took {elapsed:?})"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
