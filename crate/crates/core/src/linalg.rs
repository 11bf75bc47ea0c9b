//! Dense linear algebra over an arbitrary scalar.
//!
//! Everything here is generic: [`Field`] covers exact rationals
//! (`BigRational`, `Ratio<i64>`) as well as `f32`/`f64`, and [`Ring`] covers
//! integral domains with exact division (`BigInt`, `i64`, `i128`) for the
//! fraction-free routines. Zero tests are exact comparisons, so results are
//! exact for exact types and carry the usual rounding caveats for floats.

use num_traits::{Num, Signed};

/// Scalar supporting field operations and ordering.
pub trait Field: Clone + Num + Signed + PartialOrd {}
impl<T: Clone + Num + Signed + PartialOrd> Field for T {}

/// Integral domain with exact division, for fraction-free elimination.
pub trait Ring: Clone + Num {}
impl<T: Clone + Num> Ring for T {}

pub fn dot<T: Ring>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn sub<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn add<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn scale<T: Ring>(a: &[T], c: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

/// Reduces `rows` in place to row echelon form and returns the pivot columns.
fn echelon<T: Field>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Largest magnitude pivot; for exact scalars any nonzero entry would do.
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .max_by(|&a, &b| {
                rows[a][c]
                    .abs()
                    .partial_cmp(&rows[b][c].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / rows[r][c].clone();
            let (top, bottom) = rows.split_at_mut(i);
            for (x, p) in bottom[0][c..ncols].iter_mut().zip(&top[r][c..ncols]) {
                *x = x.clone() - p.clone() * f.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Pivot columns of the row echelon form: a maximal set of columns on which
/// the rows have full rank.
pub fn pivot_columns<T: Field>(rows: &[Vec<T>]) -> Vec<usize> {
    let mut m = rows.to_vec();
    echelon(&mut m)
}

pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant<T: Field>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = det * m[c][c].clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / m[c][c].clone();
            let (top, bottom) = m.split_at_mut(i);
            for (x, p) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *x = x.clone() - p.clone() * f.clone();
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn bareiss_determinant<T: Ring>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    let mut m = rows.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            sign = T::zero() - sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() < n || pivots.last().is_some_and(|&c| c >= n) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = m[i][n].clone();
        for j in i + 1..n {
            s = s - m[i][j].clone() * x[j].clone();
        }
        x[i] = s / m[i][i].clone();
    }
    Some(x)
}

/// Generalized cross product of `n - 1` vectors in `R^n`: the vector of signed
/// maximal minors, orthogonal to every input row.
pub fn cross<T: Ring>(rows: &[Vec<T>]) -> Vec<T> {
    let n = rows.len() + 1;
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = bareiss_determinant(&minor);
            if j % 2 == 0 {
                d
            } else {
                T::zero() - d
            }
        })
        .collect()
}
