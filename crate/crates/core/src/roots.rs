//! Numeric root location for univariate polynomials: Aberth–Ehrlich in double
//! precision, Newton polishing, and an exact residual certificate.
//!
//! Inputs are expected to be squarefree; distinctness of the roots is the
//! caller's (exact) responsibility. A root `z` is accepted when
//! `|r(z)| < 1e-10 · Σ |a_i| |z|^i`, with `r(z)` evaluated exactly at the
//! Gaussian rational nearest `z`. Failures are retried after exact Newton
//! refinement on the grids 2^-64, 2^-128 and 2^-256.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::RootError;
use crate::scalar::{to_f64, Field, Gaussian, Rational};
use crate::univariate::UniPoly;

pub const CERTIFY_TOLERANCE: f64 = 1e-10;
const MAX_ITER: usize = 2000;
const REFINE_BITS: [u32; 3] = [64, 128, 256];

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `coeffs` (ascending, leading coefficient nonzero) by
/// simultaneous Aberth–Ehrlich iteration from a perturbed circle.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = coeffs[n];
    let a: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    if n == 1 {
        return Ok(vec![-a[0]]);
    }
    let radius = (0..n)
        .filter(|&k| a[k].norm() > 0.0)
        .map(|k| a[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let center = -a[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * k as f64 / n as f64);
            center + Complex64::from_polar(r, theta)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&a, z[k]);
            let scale: f64 = a.iter().rev().fold(0.0, |acc, c| acc * z[k].norm() + c.norm());
            if p.norm() <= 8.0 * f64::EPSILON * scale {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.is_finite() {
                let bump = Complex64::from_polar(radius * 1e-3, k as f64 + 1.0);
                z[k] += bump;
                all_done = false;
                continue;
            }
            z[k] -= step;
            if step.norm() <= 1e-14 * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            for zk in z.iter_mut() {
                for _ in 0..3 {
                    let (p, dp) = horner(&a, *zk);
                    let s = p / dp;
                    if s.is_finite() {
                        *zk -= s;
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(RootError::NoConvergence { degree: n, iterations: MAX_ITER })
}

fn exact_eval<C: Field>(coeffs: &[C], z: &Gaussian) -> (Gaussian, Gaussian) {
    let mut p = Gaussian::zero();
    let mut dp = Gaussian::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + c.to_gaussian();
    }
    (p, dp)
}

fn certified<C: Field>(coeffs: &[C], z: &Gaussian) -> bool {
    let zc = z.to_complex();
    let scale: f64 = coeffs.iter().enumerate().map(|(i, c)| c.to_complex().norm() * zc.norm().powi(i as i32)).sum();
    let (p, _) = exact_eval(coeffs, z);
    let res2 = to_f64(&p.norm_sqr());
    let bound = CERTIFY_TOLERANCE * scale;
    res2.sqrt() < bound || (res2 == 0.0)
}

/// Certified numeric roots of a squarefree polynomial given by ascending
/// exact coefficients.
pub fn certified_roots<C: Field>(coeffs: &[C]) -> Result<Vec<Complex64>, RootError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let approx: Vec<Complex64> = coeffs.iter().map(|c| c.to_complex()).collect();
    let mut roots = aberth(&approx)?;
    for k in 0..roots.len() {
        for j in 0..k {
            if (roots[k] - roots[j]).norm() <= 1e-12 * (1.0 + roots[k].norm()) {
                return Err(RootError::Cluster { center: (roots[k].re, roots[k].im) });
            }
        }
    }
    for r in roots.iter_mut() {
        let mut z = Gaussian::from_complex(*r);
        if certified(&coeffs, &z) {
            continue;
        }
        let mut ok = false;
        for &bits in &REFINE_BITS {
            for _ in 0..6 {
                let (p, dp) = exact_eval(&coeffs, &z);
                if dp.is_zero() {
                    break;
                }
                z = (z.clone() - p / dp).round_to_bits(bits);
            }
            if certified(&coeffs, &z) {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(RootError::Certification { root: (r.re, r.im), bits: *REFINE_BITS.last().unwrap() });
        }
        *r = z.to_complex();
    }
    sort_roots(&mut roots);
    Ok(roots)
}

/// Distinct roots of `p`, certified, in a fixed order.
pub fn roots(p: &UniPoly) -> Result<Vec<Complex64>, RootError> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    certified_roots(p.squarefree().coeffs())
}

/// Exact test whether `l` vanishes at the root near `value` of the
/// squarefree `factor` (or at `exact` when the root is rational).
pub fn vanishes_at_root(l: &UniPoly, factor: &UniPoly, value: Complex64, exact: Option<&Rational>) -> Result<bool, RootError> {
    if l.is_zero() {
        return Ok(true);
    }
    if let Some(r) = exact {
        return Ok(l.eval(r).is_zero());
    }
    let g = l.gcd(factor);
    if g.is_constant() {
        return Ok(false);
    }
    if g.degree() == factor.degree() {
        return Ok(true);
    }
    // The roots of g are among the (separated) roots of the factor.
    let all = roots(factor)?;
    let sep = all
        .iter()
        .enumerate()
        .flat_map(|(i, a)| all[i + 1..].iter().map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min);
    Ok(roots(&g)?.iter().any(|z| (z - value).norm() < sep / 2.0))
}

/// Sorts by real part, then imaginary part, treating values within 1e-9 as
/// equal so the order is stable under roundoff.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        let key = |z: &Complex64| ((z.re * 1e9).round(), (z.im * 1e9).round());
        let (ka, kb) = (key(a), key(b));
        ka.0.partial_cmp(&kb.0).unwrap().then(ka.1.partial_cmp(&kb.1).unwrap())
    });
}

/// Groups approximations that lie within `tol` of each other; returns the
/// number of groups.
pub fn count_clusters(values: &[Complex64], tol: f64) -> usize {
    let mut reps: Vec<Complex64> = Vec::new();
    for v in values {
        if !reps.iter().any(|r| (r - v).norm() <= tol * (1.0 + v.norm())) {
            reps.push(*v);
        }
    }
    reps.len()
}

/// Rounded display of a complex number, e.g. `-1`, `0.5+0.866i`.
pub fn format_complex(z: Complex64, digits: usize) -> String {
    let clean = |v: f64| {
        let s = 10f64.powi(digits as i32);
        let r = (v * s).round() / s;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let (re, im) = (clean(z.re), clean(z.im));
    let fmt = |v: f64| {
        let s = format!("{:.*}", digits, v);
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s == "-0" {
            "0".to_string()
        } else {
            s
        }
    };
    if im == 0.0 {
        fmt(re)
    } else if re == 0.0 {
        format!("{}i", fmt(im))
    } else if im > 0.0 {
        format!("{}+{}i", fmt(re), fmt(im))
    } else {
        format!("{}{}i", fmt(re), fmt(im))
    }
}

/// Nearest integer to a real root, if it is one.
pub fn as_small_integer(z: Complex64, tol: f64) -> Option<i64> {
    if z.im.abs() > tol {
        return None;
    }
    let r = z.re.round();
    ((z.re - r).abs() <= tol).then(|| r.to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn quadratic_and_cubic() {
        let r = roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let r = roots(&(UniPoly::from_ints(&[-1, 1]) * UniPoly::from_ints(&[2, 1]).pow(3))).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].re + 2.0).abs() < 1e-12 && (r[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wilkinson_like() {
        let mut p = UniPoly::one();
        for k in 1..=12 {
            p = &p * &UniPoly::new(vec![int(-k), int(1)]);
        }
        let r = roots(&p).unwrap();
        for (k, z) in r.iter().enumerate() {
            assert_eq!(as_small_integer(*z, 1e-6), Some(k as i64 + 1));
        }
    }

    #[test]
    fn close_roots_are_refined() {
        // (x - 1)(x - 1 - 1e-9)
        let e = rat(1, 1_000_000_000);
        let p = &UniPoly::linear_root(int(1)) * &UniPoly::linear_root(int(1) + e);
        let r = roots(&p);
        match r {
            Ok(r) => assert_eq!(r.len(), 2),
            Err(RootError::Cluster { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn gaussian_coefficients() {
        // y^2 - i
        let c = vec![Gaussian::new(int(0), int(-1)), Gaussian::zero(), Gaussian::real(int(1))];
        let r = certified_roots(&c).unwrap();
        for z in r {
            assert!((z * z - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_complex(Complex64::new(-1.0, 1e-17), 6), "-1");
        assert_eq!(format_complex(Complex64::new(0.0, -1.0), 6), "-1i");
        assert_eq!(format_complex(Complex64::new(0.5, 0.25), 6), "0.5+0.25i");
    }

    proptest! {
        #[test]
        fn roots_have_small_residuals(v in prop::collection::vec(-9i64..=9, 2..8)) {
            let p = UniPoly::from_ints(&v);
            prop_assume!(!p.is_constant());
            let sf = p.squarefree();
            let r = roots(&p).unwrap();
            prop_assert_eq!(r.len(), sf.degree().unwrap());
            for z in r {
                let scale: f64 = sf.coeffs().iter().enumerate().map(|(i, c)| to_f64(c).abs() * z.norm().powi(i as i32)).sum();
                prop_assert!(sf.eval_complex(z).norm() <= 1e-9 * scale);
            }
        }
    }
}
