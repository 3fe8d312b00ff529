//! Sylvester resultants.
//!
//! Convention: for `p` of degree `m` and `q` of degree `n` in the eliminated
//! variable, the Sylvester matrix has the coefficients of `p` (leading first)
//! in its first `n` rows and those of `q` in the last `m` rows. With this
//! convention `Res(y - a, y - b) = a - b`.

use crate::error::PolyError;
use crate::linalg::{bareiss_det, ExactRing};
use crate::poly::MultiPoly;
use crate::univariate::UniPoly;

/// Sylvester matrix from ascending coefficient lists.
pub fn sylvester_matrix<R: ExactRing>(p: &[R], q: &[R], zero: &R) -> Vec<Vec<R>> {
    let m = p.len().saturating_sub(1);
    let n = q.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.zero_like(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.zero_like(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of ascending coefficient lists; zero if either list is empty.
pub fn resultant_of<R: ExactRing>(p: &[R], q: &[R], zero: &R) -> R {
    if p.is_empty() || q.is_empty() {
        return zero.zero_like();
    }
    bareiss_det(&sylvester_matrix(p, q, zero), zero)
}

/// Coefficients, ascending in the eliminated variable, of the `k`-th
/// subresultant of ascending lists `p` and `q`, for `k < min(deg p, deg q)`.
/// `k = 0` gives `[Res(p, q)]`; the last entry is the `k`-th principal
/// subresultant coefficient.
pub fn subresultant_of<R: ExactRing>(p: &[R], q: &[R], k: usize, zero: &R) -> Vec<R> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    assert!(k < m.min(n), "subresultant index out of range");
    let width = m + n - k;
    let size = m + n - 2 * k;
    let mut rows = Vec::with_capacity(size);
    for (poly, count) in [(p, n - k), (q, m - k)] {
        for i in 0..count {
            let shift = count - 1 - i;
            let mut row = vec![zero.zero_like(); width];
            for (e, c) in poly.iter().enumerate() {
                row[width - 1 - (e + shift)] = c.clone();
            }
            rows.push(row);
        }
    }
    (0..=k)
        .map(|j| {
            let minor: Vec<Vec<R>> = rows
                .iter()
                .map(|row| {
                    let mut r: Vec<R> = row[..size - 1].to_vec();
                    r.push(row[width - 1 - j].clone());
                    r
                })
                .collect();
            bareiss_det(&minor, zero)
        })
        .collect()
}

/// `Res_var(p, q)` as a polynomial in the remaining variables (same arity;
/// `var` does not occur in the result).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly, PolyError> {
    p.check_compatible(q)?;
    if var >= p.arity() {
        return Err(PolyError::UnknownVariable(format!("#{var}")));
    }
    let zero = MultiPoly::zero(p.vars());
    if p.is_zero() || q.is_zero() {
        return Ok(zero);
    }
    if p.arity() == 2 {
        let other = 1 - var;
        let r = resultant_bivariate(p, q, var)?;
        return Ok(MultiPoly::from_univariate(&r, p.vars(), other));
    }
    Ok(resultant_of(&p.coefficients_in(var), &q.coefficients_in(var), &zero))
}

/// Bivariate resultant with the other variable kept as a dense univariate
/// polynomial.
pub fn resultant_bivariate(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<UniPoly, PolyError> {
    p.check_compatible(q)?;
    if p.arity() != 2 {
        return Err(PolyError::ArityMismatch { expected: 2, found: p.arity() });
    }
    let other = 1 - var;
    if p.is_zero() || q.is_zero() {
        return Ok(UniPoly::zero());
    }
    let a = p.to_bivariate(var, other)?;
    let b = q.to_bivariate(var, other)?;
    Ok(resultant_of(&a, &b, &UniPoly::zero()))
}

/// `Res_y(P, ∂P/∂y)` for a plane curve in `(x, y)`, as a polynomial in `x`.
pub fn discriminant_y(p: &MultiPoly) -> Result<UniPoly, PolyError> {
    resultant_bivariate(p, &p.derivative(1), 1)
}
