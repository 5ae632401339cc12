use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector};

/// Row-style Hermite normal form `H = U · A`.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`; these come first.
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    /// The nonzero rows of `H`, a basis of the row lattice of `A`.
    pub fn basis(&self) -> Vec<IntVector> {
        (0..self.rank).map(|i| self.h.row(i)).collect()
    }
}

/// Computes `H = U·A` with `U` unimodular and `H` in row Hermite normal form:
/// pivots positive, pivot columns strictly increasing, entries above each
/// pivot reduced into `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteDecomposition {
    let m = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    let mut pivots = Vec::new();

    for c in 0..a.cols() {
        if r == m {
            break;
        }
        // Euclid down the column until only row r is nonzero.
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for k in 0..r {
            let q = -h[(k, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(k, r, &q);
            u.add_row_multiple(k, r, &q);
        }
        pivots.push(c);
        r += 1;
    }

    HermiteDecomposition { h, u, rank: r, pivots }
}

/// `U · A · V = D` with `D` diagonal and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `D`: nonnegative, `d_1 | d_2 | …`, zeros last.
    pub invariant_factors: Vec<BigInt>,
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    'diagonal: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                break 'diagonal;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole remaining block; otherwise fold the
            // offending row into row t and reduce again with a smaller pivot.
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SmithDecomposition { d, u, v, invariant_factors }
}

/// A basis of the integer kernel `{x : A·x = 0}`, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> Vec<IntVector> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    // U · Aᵀ = H; rows of U opposite the zero rows of H span the kernel.
    let hnf = hermite_normal_form(&a.transpose());
    let kernel: Vec<IntVector> = (hnf.rank..n).map(|i| hnf.u.row(i)).collect();
    if kernel.is_empty() {
        return kernel;
    }
    hermite_normal_form(&IntMatrix::from_rows(&kernel, n)).basis()
}

/// Integer coordinates `c` with `Σ c_j · basis_j = v`, or `None` if `v` is not
/// in the lattice spanned by `basis`.
///
/// `basis` may also be a linearly dependent generating set; in that case one
/// valid coefficient vector is returned.
pub fn solve_in_lattice(basis: &[IntVector], v: &IntVector) -> Option<Vec<BigInt>> {
    let n = v.len();
    if basis.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    let hnf = hermite_normal_form(&IntMatrix::from_rows(basis, n));
    let mut rest = v.clone();
    let mut y = IntVector::zeros(basis.len());
    for (t, &c) in hnf.pivots.iter().enumerate() {
        let (q, r) = rest[c].div_rem(&hnf.h[(t, c)]);
        if !r.is_zero() {
            return None;
        }
        for j in c..n {
            let s = &q * &hnf.h[(t, j)];
            rest[j] -= s;
        }
        y[t] = q;
    }
    if !rest.is_zero() {
        return None;
    }
    Some(hnf.u.left_mul(&y).into_entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::linear_combination;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Is `target` an integer combination of `rows` with coefficients in [-k, k]?
    fn brute_force_in_span(rows: &[[i64; 2]], target: [i64; 2], k: i64) -> bool {
        (-k..=k).any(|a| {
            (-k..=k).any(|b| {
                a * rows[0][0] + b * rows[1][0] == target[0] && a * rows[0][1] + b * rows[1][1] == target[1]
            })
        })
    }

    #[test]
    fn hnf_identity() {
        let hnf = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(hnf.h, IntMatrix::identity(2));
        assert_eq!(hnf.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_unimodular_rows_give_identity() {
        let rows = [[5, 1], [4, 1]];
        assert!(brute_force_in_span(&rows, [1, 0], 10));
        assert!(brute_force_in_span(&rows, [0, 1], 10));

        let a = m(&[&[5, 1], &[4, 1]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, IntMatrix::identity(2));
        assert_eq!(hnf.u.mul(&a), hnf.h);
        assert!(hnf.u.is_unimodular());
    }

    #[test]
    fn hnf_already_reduced() {
        let a = m(&[&[2, 0], &[0, 4]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, a);
        assert_eq!(hnf.pivots, vec![0, 1]);
    }

    #[test]
    fn hnf_rank_deficient() {
        let a = m(&[&[2, 4], &[3, 6], &[0, 0]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.rank, 1);
        assert_eq!(hnf.basis(), vec![IntVector::from([1, 2])]);
        assert_eq!(hnf.u.mul(&a), hnf.h);
    }

    #[test]
    fn snf_diag_2_3() {
        // Determinantal divisors: gcd of 1x1 minors is 1, |det| = 6.
        let a = m(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors, ints(&[1, 6]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
    }

    #[test]
    fn snf_identity_and_zero() {
        let snf = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(snf.invariant_factors, ints(&[1, 1, 1]));
        let snf = smith_normal_form(&IntMatrix::zeros(1, 1));
        assert_eq!(snf.invariant_factors, ints(&[0]));
    }

    #[test]
    fn snf_rectangular_and_empty() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = smith_normal_form(&a);
        // classic textbook example: diag(2, 6, 12)
        assert_eq!(snf.invariant_factors, ints(&[2, 6, 12]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);

        let snf = smith_normal_form(&m(&[&[3], &[6], &[9]]));
        assert_eq!(snf.invariant_factors, ints(&[3]));

        let snf = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert!(snf.invariant_factors.is_empty());
    }

    fn brute_force_kernel(a: &[i64; 2], bound: i64) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                if (x, y) != (0, 0) && a[0] * x + a[1] * y == 0 {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    #[test]
    fn kernel_of_support_forms() {
        // Smallest positive brute-force solution must be the basis vector.
        let sols = brute_force_kernel(&[-1, 5], 12);
        assert!(sols.contains(&[5, 1]));
        assert!(sols.iter().all(|s| s[0] % 5 == 0 && s[1] == s[0] / 5));
        assert_eq!(kernel_basis(&m(&[&[-1, 5]])), vec![IntVector::from([5, 1])]);

        let sols = brute_force_kernel(&[4, -1], 12);
        assert!(sols.iter().all(|s| s[1] == 4 * s[0]));
        assert_eq!(kernel_basis(&m(&[&[4, -1]])), vec![IntVector::from([1, 4])]);

        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_count_is_corank() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 3);
        for x in &k {
            assert!(a.row_vectors().iter().all(|r| r.dot(x).is_zero()));
        }
    }

    #[test]
    fn solve_examples() {
        let basis = [IntVector::from([5, 1]), IntVector::from([1, 4])];
        assert_eq!(solve_in_lattice(&basis, &IntVector::from([6, 5])), Some(ints(&[1, 1])));
        assert_eq!(solve_in_lattice(&[IntVector::from([2, 0])], &IntVector::from([3, 0])), None);
        assert_eq!(
            solve_in_lattice(&[IntVector::from([5, 1])], &IntVector::from([15, 3])),
            Some(ints(&[3]))
        );
        assert_eq!(solve_in_lattice(&[], &IntVector::zeros(2)), Some(vec![]));
        assert_eq!(solve_in_lattice(&[], &IntVector::from([1, 0])), None);
    }

    #[test]
    fn solve_with_dependent_generators() {
        let gens = [IntVector::from([2, 0]), IntVector::from([3, 0]), IntVector::from([0, 5])];
        let v = IntVector::from([7, 10]);
        let c = solve_in_lattice(&gens, &v).unwrap();
        assert_eq!(linear_combination(&c, &gens, 2), v);
        assert_eq!(solve_in_lattice(&gens, &IntVector::from([1, 1])), None);
    }
}
