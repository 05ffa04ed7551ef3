//! Smith normal form over the integers.
//!
//! `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
//! `d_1 | d_2 | ... | d_r`. The inverses of both transforms are carried along
//! because homology needs kernel coordinates (`V^-1`) and changes of basis in
//! both directions.
//!
//! Pivoting is deterministic: the entry of minimal absolute value in the
//! active block, ties broken by (row, column) lexicographically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Columns `rank..` of `V`: a basis of the integer kernel of `A`.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.v.cols();
        self.v.submatrix(0..n, self.rank..n)
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn row_add(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        self.u_inv.add_col_multiple(source, target, &-c);
    }

    fn col_add(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        self.v_inv.add_row_multiple(source, target, &-c);
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..m {
            for j in t..n {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Minimal nonzero entry in row `t` and column `t` beyond the pivot.
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize, BigInt)> = None;
        let mut consider = |i: usize, j: usize, x: &BigInt| {
            if x.is_zero() {
                return;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((bi, bj, b)) => ax < *b || (ax == *b && (i, j) < (*bi, *bj)),
            };
            if better {
                best = Some((i, j, ax));
            }
        };
        for i in t..m {
            consider(i, t, &self.a[(i, t)]);
        }
        for j in t + 1..n {
            consider(t, j, &self.a[(t, j)]);
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn bring_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row and column `t` by Euclidean steps. Returns false if a
    /// nonzero remainder is left behind.
    fn sweep(&mut self, t: usize) -> bool {
        let (m, n) = self.a.shape();
        let mut clean = true;
        for i in t + 1..m {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.row_add(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.col_add(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let (m, n) = self.a.shape();
        let p = &self.a[(t, t)];
        for i in t + 1..m {
            for j in t + 1..n {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some(pivot) = r.min_in_block(t) else {
            break;
        };
        r.bring_to(t, pivot);
        loop {
            if !r.sweep(t) {
                let next = r.min_in_cross(t).expect("remainder exists");
                r.bring_to(t, next);
                continue;
            }
            if let Some(i) = r.first_non_multiple(t) {
                r.row_add(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        u: r.u,
        u_inv: r.u_inv,
        d: r.a,
        v: r.v,
        v_inv: r.v_inv,
        rank: t,
    }
}

/// Solves `A x = b` over the integers; `None` if no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(a), b)
}

/// As [`solve_integer`], reusing a precomputed decomposition of `A`.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let n = snf.v.rows();
    let mut y = vec![BigInt::zero(); n];
    for (i, entry) in ub.iter().enumerate() {
        if i < snf.rank() {
            let d = &snf.d[(i, i)];
            let (q, rem) = entry.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !entry.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Determinant of a square matrix, by Bareiss fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = val;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// True when the square matrix has determinant ±1.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.rows() == a.cols() && determinant(a).abs().is_one()
}
