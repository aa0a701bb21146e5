//! Small dense exact-rational matrix helpers.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::rat;

pub type Vector = Vec<BigRational>;
pub type Matrix = Vec<Vec<BigRational>>;

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[BigRational]) -> Vector {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `aᵀ·G·b`.
pub fn bilinear(g: &Matrix, a: &[BigRational], b: &[BigRational]) -> BigRational {
    let gb = mat_vec(g, b);
    a.iter().zip(&gb).map(|(x, y)| x * y).sum()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| row.iter().zip(col).map(|(x, y)| x * y).sum()).collect()).collect()
}

/// Solves `m·x = rhs` by Gauss–Jordan elimination.
pub fn solve(m: &Matrix, rhs: &[BigRational]) -> Result<Vector> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularGram)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

pub fn determinant(m: &Matrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    det
}

/// Sylvester's criterion on leading principal minors.
pub fn is_positive_definite(m: &Matrix) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Matrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&minor) > BigRational::zero()
    })
}

pub fn is_symmetric(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == m[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;

    #[test]
    fn solve_and_determinant() {
        let m = vec![vec![ratio(2, 3), rat(-1)], vec![rat(-1), rat(2)]];
        assert_eq!(determinant(&m), ratio(1, 3));
        let x = solve(&m, &[rat(1), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(9), rat(5)]);
        assert!(is_positive_definite(&m));
        let singular = from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&singular, &[rat(1), rat(0)]), Err(Error::SingularGram));
    }
}
