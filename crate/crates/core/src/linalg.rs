//! Small exact linear algebra: fraction-free determinants and rational
//! matrix inverses.

use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::scalar::{Gaussian, Rational};
use crate::univariate::UniPoly;

pub type Matrix = Vec<Vec<Rational>>;

/// An integral domain with exact division, as needed by Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / o`, where `o` is known to divide `self`.
    fn div_exact(&self, o: &Self) -> Self;
}

impl ExactRing for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_elem(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl ExactRing for Gaussian {
    fn zero_like(&self) -> Self {
        Gaussian::zero()
    }
    fn one_like(&self) -> Self {
        Gaussian::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn neg_elem(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.clone() / o.clone()
    }
}

impl ExactRing for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o).expect("Bareiss division is exact")
    }
}

impl ExactRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.vars(), Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o).expect("Bareiss division is exact")
    }
}

/// Determinant by fraction-free (Bareiss) elimination. `zero` fixes the
/// ring element type for the empty matrix, whose determinant is one.
pub fn bareiss_det<R: ExactRing>(matrix: &[Vec<R>], zero: &R) -> R {
    let n = matrix.len();
    if n == 0 {
        return zero.one_like();
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut sign_neg = false;
    let mut prev = zero.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return zero.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul_elem(&m[k][k]).sub_elem(&m[i][k].mul_elem(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg_elem()
    } else {
        det
    }
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    bareiss_det(m, &Rational::zero())
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        s += &a[i][k] * &bk[j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Block-diagonal `diag(a, 1)`.
pub fn extend_identity(a: &[Vec<Rational>]) -> Matrix {
    let n = a.len();
    let mut out = identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    out
}
