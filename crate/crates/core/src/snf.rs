//! Dense big-integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self[(i, j)].clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

/// `U · M · V = S` with `S` diagonal, `d1 | d2 | …`, and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Transforms {
    u: IntMatrix,
    v: IntMatrix,
}

/// Core elimination. With `track` the row and column operations are
/// mirrored into `U` and `V`.
fn reduce(m: &mut IntMatrix, mut t: Option<&mut Transforms>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot = 0;
    while pivot < rows.min(cols) {
        // smallest non-zero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in pivot..rows {
            for j in pivot..cols {
                let x = &m[(i, j)];
                if !x.is_zero()
                    && best.map_or(true, |(bi, bj)| x.abs() < m[(bi, bj)].abs())
                {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(pivot, bi);
        m.swap_cols(pivot, bj);
        if let Some(t) = t.as_deref_mut() {
            t.u.swap_rows(pivot, bi);
            t.v.swap_cols(pivot, bj);
        }

        let mut restart = false;
        for i in pivot + 1..rows {
            if m[(i, pivot)].is_zero() {
                continue;
            }
            let q = -(m[(i, pivot)].div_floor(&m[(pivot, pivot)]));
            m.add_row(i, pivot, &q);
            if let Some(t) = t.as_deref_mut() {
                t.u.add_row(i, pivot, &q);
            }
            if !m[(i, pivot)].is_zero() {
                restart = true;
            }
        }
        for j in pivot + 1..cols {
            if m[(pivot, j)].is_zero() {
                continue;
            }
            let q = -(m[(pivot, j)].div_floor(&m[(pivot, pivot)]));
            m.add_col(j, pivot, &q);
            if let Some(t) = t.as_deref_mut() {
                t.v.add_col(j, pivot, &q);
            }
            if !m[(pivot, j)].is_zero() {
                restart = true;
            }
        }
        if restart {
            // a smaller remainder now sits in the pivot row or column
            continue;
        }

        // divisibility: fold an offending row into the pivot row and retry
        let d = m[(pivot, pivot)].clone();
        let offending = (pivot + 1..rows)
            .find(|&i| (pivot + 1..cols).any(|j| !m[(i, j)].is_multiple_of(&d)));
        if let Some(i) = offending {
            let one = BigInt::one();
            m.add_row(pivot, i, &one);
            if let Some(t) = t.as_deref_mut() {
                t.u.add_row(pivot, i, &one);
            }
            continue;
        }

        if m[(pivot, pivot)].is_negative() {
            m.negate_row(pivot);
            if let Some(t) = t.as_deref_mut() {
                t.u.negate_row(pivot);
            }
        }
        pivot += 1;
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut s = m.clone();
    let mut t = Transforms { u: IntMatrix::identity(m.rows), v: IntMatrix::identity(m.cols) };
    reduce(&mut s, Some(&mut t));
    let out = SnfResult { u: t.u, s, v: t.v };
    if cfg!(debug_assertions) {
        assert_eq!(out.u.mul(m).mul(&out.v), out.s, "SNF postcondition U·M·V = S");
    }
    out
}

/// Non-zero diagonal of the Smith form (`d1 | d2 | …`), without transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut s = m.clone();
    reduce(&mut s, None);
    (0..s.rows.min(s.cols)).map(|i| s[(i, i)].clone()).filter(|d| !d.is_zero()).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Lattice basis of `{x ∈ ℤ^cols : M x = 0}`, returned as rows in Hermite
/// normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let basis: Vec<Vec<BigInt>> = (r..m.cols).map(|j| snf.v.column(j)).collect();
    hermite_rows(basis)
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`; zero
/// rows are dropped, so the result is a basis.
pub fn hermite_rows(vectors: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vectors;
    }
    let width = vectors[0].len();
    let mut rows = vectors;
    let mut out_rank = 0;
    for col in 0..width {
        if out_rank == rows.len() {
            break;
        }
        loop {
            // least non-zero |entry| at or below out_rank
            let pick = (out_rank..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pick else { break };
            rows.swap(out_rank, p);
            let mut done = true;
            for i in out_rank + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[out_rank][col]);
                let pivot_row = rows[out_rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if out_rank < rows.len() && !rows[out_rank][col].is_zero() {
            if rows[out_rank][col].is_negative() {
                for x in rows[out_rank].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            // reduce entries above the pivot into [0, pivot)
            let pivot_row = rows[out_rank].clone();
            for i in 0..out_rank {
                let q = rows[i][col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            out_rank += 1;
        }
    }
    rows.truncate(out_rank);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn det2(m: &IntMatrix) -> BigInt {
        &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)]
    }

    fn check(m: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(m);
        assert_eq!(r.u.mul(m).mul(&r.v), r.s);
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s[(i, j)].is_zero());
                }
            }
        }
        let d = r.diagonal();
        for w in d.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero() && w[1].is_multiple_of(&w[0]), "{d:?}");
            }
            assert!(!w[0].is_negative());
        }
        r
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        let r = check(&m);
        assert_eq!(r.diagonal(), vec![big(2), big(4)]);
        assert_eq!(det2(&r.u).abs(), big(1));
        assert_eq!(det2(&r.v).abs(), big(1));
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(3, 2);
        assert!(check(&z).s.is_zero());
        let id = IntMatrix::identity(4);
        assert_eq!(check(&id).s, id);
        assert!(check(&IntMatrix::zeros(0, 3)).s.is_zero());
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6)
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(check(&m).diagonal(), vec![big(1), big(6)]);
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let m = IntMatrix::from_rows(&[vec![2i64, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        // saturated: (1,1,-1) is in the kernel lattice
        assert_eq!(
            hermite_rows(vec![k[0].clone(), k[1].clone(), vec![big(1), big(1), big(-1)]]).len(),
            2
        );
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(vec![vec![big(2), big(1)], vec![big(0), big(3)]]);
        let b = hermite_rows(vec![vec![big(2), big(4)], vec![big(2), big(1)]]);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn snf_postconditions(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 5..i * 5 + cols].to_vec()).collect();
            let m = IntMatrix::from_rows(&data);
            let r = check(&m);
            prop_assert_eq!(invariant_factors(&m), r.diagonal().into_iter().filter(|d| !d.is_zero()).collect::<Vec<_>>());
            for v in integer_kernel(&m) {
                prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(integer_kernel(&m).len(), cols - r.rank());
        }
    }
}
