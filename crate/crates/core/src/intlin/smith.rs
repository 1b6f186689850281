//! Smith normal form with unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `u * a * v == s` with `s` diagonal and `d_1 | d_2 | ... | d_r`, all `d_i > 0`.
///
/// The inverses of `u` and `v` are tracked alongside so that callers can move
/// between the original and the diagonal coordinates without a second
/// inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        let k = self.s.rows().min(self.s.cols());
        (0..k).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        self.u.add_row_multiple(target, source, f);
        self.u_inv.add_col_multiple(source, target, &-f);
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        self.v.add_col_multiple(target, source, f);
        self.v_inv.add_row_multiple(source, target, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        let minus = -BigInt::one();
        for r in 0..self.u_inv.rows() {
            let x = &self.u_inv[(r, i)] * &minus;
            self.u_inv[(r, i)] = x;
        }
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t);
    /// ties go to the lowest row-major index.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                    best = Some((m, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivoting is deterministic: at each stage the smallest nonzero absolute
/// value in the remaining block is moved to the diagonal, ties broken by the
/// lowest row-major position.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = r.pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = r.a[(i, t)].div_floor(&r.a[(t, t)]);
                r.add_row(i, t, &-q);
                if !r.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = r.a[(t, j)].div_floor(&r.a[(t, t)]);
                r.add_col(j, t, &-q);
                if !r.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is now smaller than the pivot; re-pivot within
                // row t and column t.
                let (pi, pj) = smallest_in_cross(&r.a, t);
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = r.a[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !r.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }
    SmithDecomposition {
        u: r.u,
        s: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    }
}

fn smallest_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (a[(t, t)].abs(), t, t);
    for i in t + 1..a.rows() {
        let x = a[(i, t)].abs();
        if !x.is_zero() && x < best.0 {
            best = (x, i, t);
        }
    }
    for j in t + 1..a.cols() {
        let x = a[(t, j)].abs();
        if !x.is_zero() && x < best.0 {
            best = (x, t, j);
        }
    }
    if best.0.is_zero() {
        // Pivot itself was zero: fall back to any nonzero in the cross.
        for i in t..a.rows() {
            if !a[(i, t)].is_zero() {
                return (i, t);
            }
        }
        for j in t..a.cols() {
            if !a[(t, j)].is_zero() {
                return (t, j);
            }
        }
    }
    (best.1, best.2)
}

/// A basis (as rows) of the integer solutions of `a * x = 0`.
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// A basis (as rows) of the lattice spanned by the rows of `generators`.
pub fn row_lattice_basis(generators: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(generators);
    (0..snf.rank())
        .map(|i| {
            let d = &snf.s[(i, i)];
            snf.v_inv.row(i).iter().map(|x| x * d).collect()
        })
        .collect()
}

/// A basis (as rows) of the saturation `QL ∩ Z^n` of the row lattice `L`.
pub fn row_lattice_saturation(generators: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(generators);
    (0..snf.rank()).map(|i| snf.v_inv.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert_eq!(&d.u * &d.u_inv, IntegerMatrix::identity(a.rows()));
        assert_eq!(&d.v * &d.v_inv, IntegerMatrix::identity(a.cols()));
        assert!(d.u.determinant().unwrap().abs().is_one());
        assert!(d.v.determinant().unwrap().abs().is_one());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let f = d.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        d
    }

    #[test]
    fn already_diagonal() {
        let a = IntegerMatrix::diagonal(&[2, 6]);
        let d = check(&a);
        assert_eq!(d.s, a);
        assert_eq!(d.u, IntegerMatrix::identity(2));
        assert_eq!(d.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_by_two() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let d = check(&a);
        assert_eq!(d.s, IntegerMatrix::diagonal(&[2, 4]));
    }

    #[test]
    fn zero_matrix() {
        let d = check(&IntegerMatrix::zeros(2, 2));
        assert_eq!(d.rank(), 0);
        assert!(d.s.is_zero());
    }

    #[test]
    fn non_coprime_diagonal_is_fixed() {
        let d = check(&IntegerMatrix::diagonal(&[4, 6]));
        assert_eq!(
            d.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
    }

    #[test]
    fn kernel_and_saturation() {
        let a = IntegerMatrix::from_rows(&[vec![2, -2, 0]]).unwrap();
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let sat = row_lattice_saturation(&a);
        assert_eq!(sat.len(), 1);
        let g: Vec<i64> = sat[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(g == vec![1, -1, 0] || g == vec![-1, 1, 0]);
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 5..i * 5 + cols].to_vec()).collect();
            let a = IntegerMatrix::from_rows(&data).unwrap();
            check(&a);
        }
    }
}
