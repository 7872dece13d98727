//! Dense exact linear algebra over ℚ: ranks, determinants and linear solves.
//!
//! Ranks use fraction-free elimination on integer rows, with an `i128` fast path
//! that falls back to big integers on overflow. Solves use Gauss-Jordan with the
//! first available pivot and free variables set to zero, so results are
//! deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::Rational;

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize { self.rows }

    pub fn cols(&self) -> usize { self.cols }

    pub fn get(&self, r: usize, c: usize) -> &Rational { &self.data[r * self.cols + c] }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) { self.data[r * self.cols + c] = v; }

    pub fn row(&self, r: usize) -> &[Rational] { &self.data[r * self.cols..(r + 1) * self.cols] }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool { self.data.iter().all(|x| x.is_zero()) }

    pub fn rank(&self) -> usize { rank(self) }
}

/// Clears denominators row by row, giving an integer matrix of equal rank.
fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
        .collect()
}

fn bareiss_rank_i128(mut a: Vec<Vec<i128>>, cols: usize) -> Option<usize> {
    let rows = a.len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = a[rank][c].checked_mul(a[r][j])?.checked_sub(a[r][c].checked_mul(a[rank][j])?)?;
                a[r][j] = v / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j];
                a[r][j] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix.
pub fn rank(m: &QMatrix) -> usize {
    let rows = integer_rows(m);
    if rows.is_empty() {
        return 0;
    }
    let small: Option<Vec<Vec<i128>>> =
        rows.iter().map(|row| row.iter().map(|x| x.to_i128().filter(|v| v.abs() < (1i128 << 60))).collect()).collect();
    if let Some(small) = small {
        if let Some(r) = bareiss_rank_i128(small, m.cols) {
            return r;
        }
    }
    bareiss_rank_big(rows, m.cols)
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &QMatrix) -> Rational {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
        }
    }
    det
}

/// Reduced row echelon form of `[A | B]` restricted to the pivots of `A`.
struct Reduction {
    b: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn reduce(a: &QMatrix, b: &QMatrix) -> Reduction {
    assert_eq!(a.rows, b.rows, "right hand side has the wrong height");
    let mut ra: Vec<Vec<Rational>> = (0..a.rows).map(|r| a.row(r).to_vec()).collect();
    let mut rb: Vec<Vec<Rational>> = (0..b.rows).map(|r| b.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !ra[r][c].is_zero()) else { continue };
        ra.swap(row, p);
        rb.swap(row, p);
        let inv = ra[row][c].recip();
        for x in ra[row].iter_mut().chain(rb[row].iter_mut()) {
            *x *= &inv;
        }
        for r in 0..a.rows {
            if r == row || ra[r][c].is_zero() {
                continue;
            }
            let f = ra[r][c].clone();
            for j in 0..a.cols {
                if !ra[row][j].is_zero() {
                    let v = &f * &ra[row][j];
                    ra[r][j] -= v;
                }
            }
            for j in 0..b.cols {
                if !rb[row][j].is_zero() {
                    let v = &f * &rb[row][j];
                    rb[r][j] -= v;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    Reduction { b: rb, pivots }
}

/// Solves `A X = B` column by column. Returns `None` if some column of `B` is
/// not in the column space of `A`.
pub fn solve(a: &QMatrix, b: &QMatrix) -> Option<QMatrix> {
    let red = reduce(a, b);
    let rank = red.pivots.len();
    for r in rank..a.rows {
        if red.b[r].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut x = QMatrix::zeros(a.cols, b.cols);
    for (i, &c) in red.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(c, j, red.b[i][j].clone());
        }
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let red = reduce(m, &QMatrix::identity(m.rows));
    if red.pivots.len() < m.rows {
        return None;
    }
    Some(QMatrix::from_rows(red.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&m(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]])), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let a = QMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(3), rat(2)]]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn rank_survives_large_entries() {
        let big = 1i64 << 40;
        let a = m(&[&[big, 1, 0], &[1, big, 1], &[0, 1, big]]);
        assert_eq!(rank(&a), 3);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&a), rat(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_picks_zero_free_variables() {
        let a = m(&[&[1, 1, 0]]);
        let b = m(&[&[5]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, m(&[&[5], &[0], &[0]]));
        assert!(solve(&m(&[&[1], &[1]]), &m(&[&[1], &[2]])).is_none());
    }
}
